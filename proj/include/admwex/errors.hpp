#ifndef ADMWEX_ERRORS_HPP
#define ADMWEX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace admwex {

// Exact-mode antiderivative hit a log((t+a)) term with nonzero coefficient;
// the moment is not a rational number.
class ExactLogObstruction : public std::domain_error {
 public:
  explicit ExactLogObstruction(const std::string& what) : std::domain_error(what) {}
};

// An internal identity failed (degenerate moment system, endpoint residual
// above tolerance, singular ansatz system). Signals a defect, not bad input.
class MathInconsistency : public std::runtime_error {
 public:
  explicit MathInconsistency(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace admwex

#endif  // ADMWEX_ERRORS_HPP
