#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace expobs {

enum class ErrorCode {
  MalformedRational,
  MalformedDocument,
  MetricViolation,
  NotABijection,
  DegenerateSpace,
  UnknownPoint,
  DomainMismatch,
  InvalidArgument,
  ArithmeticOnInfinity,
  NonConvergent,
  NotAConjugacy,
  AlphabetMismatch,
  NoPairFound,
  InconsistentRotationNumber,
  NoPeriodicOrbit,
  NotWandering,
  NoWanderingInterval,
  HorizonExceeded,
  NotRigid,
  AllFixed,
  MalformedReport,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `code()` identifies the condition;
/// the message carries the offending data (pair, triple, point id, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace expobs
