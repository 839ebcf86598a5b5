#ifndef HYPAM_ERRORS_HPP
#define HYPAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hypam {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonPositiveParameter : Error {
  using Error::Error;
};

struct OrderMismatch : Error {
  using Error::Error;
};

struct OrderTooSmall : Error {
  using Error::Error;
};

struct NonzeroConstantTerm : Error {
  using Error::Error;
};

struct ConstantTermNotOne : Error {
  using Error::Error;
};

struct HypothesisViolated : Error {
  using Error::Error;
};

struct NonpositiveDenominatorCoefficient : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct NonconvergentAtTolerance : Error {
  using Error::Error;
};

/// Thrown when bound evaluators are called outside every supported
/// parameter regime; the message names the failed condition.
struct RegimeViolation : Error {
  using Error::Error;
};

}  // namespace hypam

#endif  // HYPAM_ERRORS_HPP
