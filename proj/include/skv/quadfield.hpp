#ifndef SKV_QUADFIELD_HPP
#define SKV_QUADFIELD_HPP

#include <iosfwd>
#include <string>
#include <string_view>

#include "skv/expected.hpp"
#include "skv/rational.hpp"

namespace skv {

/// Element of the real quadratic field Q(sqrt2, sqrt3), stored on the
/// basis (1, sqrt2, sqrt3, sqrt6) with rational coefficients kept in
/// lowest terms by GMP. Representation is unique, so operator== is
/// coefficientwise.
class QuadScalar {
 public:
  QuadScalar() = default;
  QuadScalar(long v) : a_(v) {}  // NOLINT: implicit by design
  QuadScalar(Rational a) : a_(std::move(a)) {}
  QuadScalar(Rational a, Rational b, Rational c, Rational d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

  static QuadScalar sqrt2() { return QuadScalar(0, 1, 0, 0); }
  static QuadScalar sqrt3() { return QuadScalar(0, 0, 1, 0); }
  static QuadScalar sqrt6() { return QuadScalar(0, 0, 0, 1); }

  const Rational& one_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }
  const Rational& sqrt3_part() const { return c_; }
  const Rational& sqrt6_part() const { return d_; }

  bool is_zero() const;
  bool is_rational() const;

  // Galois conjugations: flip the sign of sqrt2 resp. sqrt3.
  QuadScalar conj2() const { return QuadScalar(a_, -b_, c_, -d_); }
  QuadScalar conj3() const { return QuadScalar(a_, b_, -c_, -d_); }

  QuadScalar inverse() const;  // throws std::domain_error on zero
  int sign() const;            // exact: -1, 0, +1
  QuadScalar abs() const { return sign() >= 0 ? *this : -*this; }
  double to_double() const;

  QuadScalar operator-() const { return QuadScalar(-a_, -b_, -c_, -d_); }
  QuadScalar& operator+=(const QuadScalar& o);
  QuadScalar& operator-=(const QuadScalar& o);
  QuadScalar& operator*=(const QuadScalar& o);
  QuadScalar& operator/=(const QuadScalar& o);

  friend QuadScalar operator+(QuadScalar x, const QuadScalar& y) { return x += y; }
  friend QuadScalar operator-(QuadScalar x, const QuadScalar& y) { return x -= y; }
  friend QuadScalar operator*(const QuadScalar& x, const QuadScalar& y);
  friend QuadScalar operator/(QuadScalar x, const QuadScalar& y) { return x /= y; }
  friend bool operator==(const QuadScalar& x, const QuadScalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }
  friend bool operator!=(const QuadScalar& x, const QuadScalar& y) { return !(x == y); }

  /// Literal grammar "p/q + p/q*r2 + p/q*r3 + p/q*r6" (terms optional,
  /// any order, '-' allowed) plus the shorthand "sqrt(p/q)".
  std::string to_string() const;
  static Expected<QuadScalar> parse(std::string_view text);

  /// sqrt(q) for rational q when the root lies in the field, i.e. q is
  /// r^2, 2r^2, 3r^2 or 6r^2 for rational r. Returns the nonnegative root.
  static Expected<QuadScalar> sqrt_of_rational(const Rational& q);

 private:
  Rational a_, b_, c_, d_;
};

inline bool is_zero(const QuadScalar& x) { return x.is_zero(); }
inline double to_double(const QuadScalar& x) { return x.to_double(); }

enum class QfOp { add, sub, mul, div };

/// Field arithmetic with division-by-zero reported as an error value.
Expected<QuadScalar> qf_arith(const QuadScalar& x, const QuadScalar& y, QfOp op);

std::ostream& operator<<(std::ostream& os, const QuadScalar& x);

}  // namespace skv

#endif
