#include "bcdual/errors.hpp"

#include <sstream>

namespace bcdual {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kInvalidParameter: return "invalid-parameter";
    case ErrorCode::kChamberViolation: return "chamber-violation";
    case ErrorCode::kSingularity: return "singularity";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kNotHermitian: return "not-hermitian";
    case ErrorCode::kNotPositiveDefinite: return "not-positive-definite";
    case ErrorCode::kConvergence: return "convergence";
    case ErrorCode::kSpectrumNotReal: return "spectrum-not-real";
    case ErrorCode::kSpectrumSymmetry: return "spectrum-symmetry";
    case ErrorCode::kImaginaryResidual: return "imaginary-residual";
    case ErrorCode::kNewtonFailure: return "newton-failure";
    case ErrorCode::kSeedFailure: return "seed-failure";
    case ErrorCode::kIntegrationFailure: return "integration-failure";
    case ErrorCode::kInsufficientSamples: return "insufficient-samples";
    case ErrorCode::kOrderingViolation: return "ordering-violation";
  }
  return "unknown";
}

bool is_numeric_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
    case ErrorCode::kInvalidParameter:
    case ErrorCode::kOrderingViolation:
      return false;
    default:
      return true;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

static std::string with_time(const std::string& what, double t) {
  std::ostringstream os;
  os << what << " (last good time " << t << ")";
  return os.str();
}

IntegrationError::IntegrationError(const std::string& what, double last_good_time)
    : Error(ErrorCode::kIntegrationFailure, with_time(what, last_good_time)),
      last_good_time_(last_good_time) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace bcdual
