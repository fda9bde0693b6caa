#pragma once

#include <boost/multiprecision/float128.hpp>
#include <Eigen/Core>

namespace bcdual::detail {
using quad = boost::multiprecision::float128;
}

namespace Eigen {
template <>
struct NumTraits<bcdual::detail::quad> : GenericNumTraits<bcdual::detail::quad> {
  using Real = bcdual::detail::quad;
  using NonInteger = bcdual::detail::quad;
  using Nested = bcdual::detail::quad;
  using Literal = bcdual::detail::quad;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 16
  };
  static inline Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static inline Real dummy_precision() { return Real(1e-30); }
  static inline Real highest() { return std::numeric_limits<Real>::max(); }
  static inline Real lowest() { return -std::numeric_limits<Real>::max(); }
  static inline Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static inline Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static inline int digits10() { return 33; }
};
}  // namespace Eigen
