#pragma once

#include <stdexcept>
#include <string>

namespace bcdual {

enum class ErrorCode {
  kInvalidInput,
  kInvalidParameter,
  kChamberViolation,
  kSingularity,
  kDomain,
  kNotHermitian,
  kNotPositiveDefinite,
  kConvergence,
  kSpectrumNotReal,
  kSpectrumSymmetry,
  kImaginaryResidual,
  kNewtonFailure,
  kSeedFailure,
  kIntegrationFailure,
  kInsufficientSamples,
  kOrderingViolation,
};

const char* to_string(ErrorCode code);

// True for failures caused by the numerics rather than by bad input.
bool is_numeric_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double last_good_time);
  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace bcdual
