#pragma once

#include "bcdual/core.hpp"

namespace bcdual::detail {

// Unvalidated right-hand sides, safe to call at intermediate Runge–Kutta stages.
Vector sutherland_force(const Vector& q, const Couplings& c);
Vector rsvd_lambda_gradient(const Vector& lambda, const Vector& theta, const Couplings& c);
Vector rsvd_lambda_velocity(const Vector& lambda, const Vector& theta, const Couplings& c);

}  // namespace bcdual::detail
