#ifndef SKV_BACKEND_HPP
#define SKV_BACKEND_HPP

#include <cmath>
#include <cstdlib>

#include "skv/complexfield.hpp"
#include "skv/quadfield.hpp"
#include "skv/rational.hpp"

namespace skv {

/// Double-precision embedding of an exact scalar together with the
/// relative tolerance its consumers should use.
struct FloatScalar {
  double value = 0.0;
  double rel_tol = 1e-9;
};

inline FloatScalar to_float(const QuadScalar& x, double rel_tol = 1e-9) {
  return FloatScalar{x.to_double(), rel_tol};
}

/// Scalar backend traits. T = QuadScalar is the exact reference,
/// T = double the floating fallback.
template <class T>
struct Backend;

template <>
struct Backend<QuadScalar> {
  static constexpr bool exact = true;
  static const char* name() { return "exact"; }
  static QuadScalar from_rational(const Rational& r) { return QuadScalar(r); }
  static QuadScalar from_long(long v) { return QuadScalar(v); }
  static QuadScalar embed(const QuadScalar& x) { return x; }
};

template <>
struct Backend<double> {
  static constexpr bool exact = false;
  static const char* name() { return "float"; }
  static double from_rational(const Rational& r) { return r.get_d(); }
  static double from_long(long v) { return static_cast<double>(v); }
  static double embed(const QuadScalar& x) { return x.to_double(); }
};

template <class T>
T from_rational(const Rational& r) {
  return Backend<T>::from_rational(r);
}

/// Pass/fail policy for residuals: exact backends demand exact zero,
/// the float backend compares against a relative tolerance.
struct Tolerance {
  double rel = 1e-9;
  bool accept(double residual, double scale = 1.0) const {
    double bound = rel * (scale < 1.0 ? 1.0 : scale);
    return std::abs(residual) <= bound;
  }
};

template <class T>
bool residual_ok(const T& value, const Tolerance& tol, double scale = 1.0) {
  if constexpr (Backend<T>::exact)
    return is_zero(value);
  else
    return tol.accept(to_double(value), scale);
}

}  // namespace skv

#endif
