#ifndef ADMWEX_VERSION_HPP
#define ADMWEX_VERSION_HPP

#define ADMWEX_VERSION "0.1.0"
#define ADMWEX_REPORT_SCHEMA 1

#endif  // ADMWEX_VERSION_HPP
