#ifndef SKV_COMPLEXFIELD_HPP
#define SKV_COMPLEXFIELD_HPP

#include <string>

#include "skv/quadfield.hpp"

namespace skv {

inline bool is_zero(double x) { return x == 0.0; }
inline double to_double(double x) { return x; }

/// Complexification over a real scalar backend T (QuadScalar or double).
/// Multiplication short-circuits on zero so that products of the sparse
/// Clifford generator matrices stay cheap in exact arithmetic.
template <class T>
struct Complex {
  T re{};
  T im{};

  Complex() = default;
  Complex(T r) : re(std::move(r)) {}  // NOLINT: implicit by design
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  static Complex i() { return Complex(T(0), T(1)); }

  bool is_zero() const { return skv::is_zero(re) && skv::is_zero(im); }
  Complex conj() const { return Complex(re, -im); }
  T norm_sq() const { return re * re + im * im; }

  Complex operator-() const { return Complex(-re, -im); }
  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend Complex operator+(Complex x, const Complex& y) { return x += y; }
  friend Complex operator-(Complex x, const Complex& y) { return x -= y; }
  friend Complex operator*(const Complex& x, const Complex& y) {
    if (x.is_zero() || y.is_zero()) return Complex();
    return Complex(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
  }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  friend bool operator==(const Complex& x, const Complex& y) {
    return x.re == y.re && x.im == y.im;
  }
  friend bool operator!=(const Complex& x, const Complex& y) { return !(x == y); }

  Complex inverse() const {
    T n = norm_sq();
    return Complex(re / n, -im / n);
  }
  friend Complex operator/(const Complex& x, const Complex& y) {
    return x * y.inverse();
  }
};

using CScalar = Complex<QuadScalar>;

template <class T>
bool is_zero(const Complex<T>& z) {
  return z.is_zero();
}

template <class T>
double abs_approx(const Complex<T>& z) {
  double r = to_double(z.re), i = to_double(z.im);
  return std::abs(r) > std::abs(i) ? std::abs(r) : std::abs(i);
}

/// Complex literal: "<quad>" or "<quad> + i*(<quad>)" (or bare "i*(<quad>)").
std::string cscalar_to_string(const CScalar& z);
Expected<CScalar> parse_cscalar(std::string_view text);

}  // namespace skv

#endif
