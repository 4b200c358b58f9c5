#include "skv/quadfield.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace skv {

std::optional<Rational> parse_rational(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  s = s.substr(b, e - b);
  if (s.empty()) return std::nullopt;
  std::string num, den = "1";
  size_t slash = s.find('/');
  if (slash == std::string_view::npos) {
    num = std::string(s);
  } else {
    num = std::string(s.substr(0, slash));
    den = std::string(s.substr(slash + 1));
  }
  auto valid = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (!valid(num) || !valid(den)) return std::nullopt;
  Rational r;
  try {
    r = Rational(BigInt(num), BigInt(den));
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  if (r.get_den() == 0) return std::nullopt;
  r.canonicalize();
  return r;
}

bool QuadScalar::is_zero() const {
  return sgn(a_) == 0 && sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0;
}

bool QuadScalar::is_rational() const {
  return sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0;
}

QuadScalar& QuadScalar::operator+=(const QuadScalar& o) {
  a_ += o.a_;
  b_ += o.b_;
  c_ += o.c_;
  d_ += o.d_;
  return *this;
}

QuadScalar& QuadScalar::operator-=(const QuadScalar& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  c_ -= o.c_;
  d_ -= o.d_;
  return *this;
}

QuadScalar operator*(const QuadScalar& x, const QuadScalar& y) {
  if (x.is_zero() || y.is_zero()) return QuadScalar();
  // Basis products: r2*r2=2, r3*r3=3, r6*r6=6, r2*r3=r6, r2*r6=2*r3, r3*r6=3*r2.
  QuadScalar r;
  r.a_ = x.a_ * y.a_ + 2 * x.b_ * y.b_ + 3 * x.c_ * y.c_ + 6 * x.d_ * y.d_;
  r.b_ = x.a_ * y.b_ + x.b_ * y.a_ + 3 * (x.c_ * y.d_ + x.d_ * y.c_);
  r.c_ = x.a_ * y.c_ + x.c_ * y.a_ + 2 * (x.b_ * y.d_ + x.d_ * y.b_);
  r.d_ = x.a_ * y.d_ + x.d_ * y.a_ + x.b_ * y.c_ + x.c_ * y.b_;
  return r;
}

QuadScalar& QuadScalar::operator*=(const QuadScalar& o) { return *this = *this * o; }

QuadScalar QuadScalar::inverse() const {
  if (is_zero()) throw std::domain_error("QuadScalar: division by zero");
  // x * conj2(x) * conj3(x) * conj2(conj3(x)) is the rational field norm.
  QuadScalar p = conj2() * conj3() * conj2().conj3();
  QuadScalar norm = *this * p;
  if (!norm.is_rational() || sgn(norm.a_) == 0)
    throw std::logic_error("QuadScalar: norm must be a nonzero rational");
  Rational inv_norm = 1 / norm.a_;
  return QuadScalar(p.a_ * inv_norm, p.b_ * inv_norm, p.c_ * inv_norm,
                    p.d_ * inv_norm);
}

QuadScalar& QuadScalar::operator/=(const QuadScalar& o) {
  return *this = *this * o.inverse();
}

namespace {

// sign of a + b*sqrt2, exact.
int sign_q2(const Rational& a, const Rational& b) {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: multiply by the conjugate a - b*sqrt2, whose sign is sa.
  return sgn(a * a - 2 * b * b) * sa;
}

}  // namespace

int QuadScalar::sign() const {
  // x = A + B*sqrt3 with A = a + b*sqrt2 and B = c + d*sqrt2.
  int sA = sign_q2(a_, b_);
  int sB = sign_q2(c_, d_);
  if (sB == 0) return sA;
  if (sA == 0) return sB;
  if (sA == sB) return sA;
  // Opposite signs: x * (A - B*sqrt3) = A^2 - 3B^2 lives in Q(sqrt2),
  // and A - B*sqrt3 carries the sign of A.
  Rational pa = a_ * a_ + 2 * b_ * b_ - 3 * (c_ * c_ + 2 * d_ * d_);
  Rational pb = 2 * a_ * b_ - 6 * c_ * d_;
  return sign_q2(pa, pb) * sA;
}

double QuadScalar::to_double() const {
  static const double kS2 = std::sqrt(2.0);
  static const double kS3 = std::sqrt(3.0);
  static const double kS6 = std::sqrt(6.0);
  return a_.get_d() + b_.get_d() * kS2 + c_.get_d() * kS3 + d_.get_d() * kS6;
}

std::string QuadScalar::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  auto term = [&out](const Rational& coeff, const char* radical) {
    if (sgn(coeff) == 0) return;
    Rational c = coeff;
    if (out.empty()) {
      if (sgn(c) < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
      if (sgn(c) < 0) c = -c;
    }
    if (radical[0] == '\0') {
      out += skv::to_string(c);
    } else if (c == 1) {
      out += radical;
    } else {
      out += skv::to_string(c) + "*" + radical;
    }
  };
  term(a_, "");
  term(b_, "r2");
  term(c_, "r3");
  term(d_, "r6");
  return out;
}

Expected<QuadScalar> QuadScalar::parse(std::string_view text) {
  auto fail = [](const std::string& why) { return Expected<QuadScalar>::failure(why); };
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) return fail("empty scalar literal");

  // Shorthand sqrt(p/q), optionally negated.
  bool neg_sqrt = false;
  std::string_view sv = s;
  if (sv.size() > 1 && (sv[0] == '-' || sv[0] == '+')) {
    neg_sqrt = sv[0] == '-';
    if (sv.substr(1).starts_with("sqrt(")) sv = sv.substr(1);
  }
  if (sv.starts_with("sqrt(") && sv.ends_with(")")) {
    auto q = parse_rational(sv.substr(5, sv.size() - 6));
    if (!q) return fail("bad rational inside sqrt(): '" + s + "'");
    auto root = sqrt_of_rational(*q);
    if (!root) return root;
    return neg_sqrt ? Expected<QuadScalar>(-*root) : root;
  }

  // Split into signed terms at top level.
  std::vector<std::string> terms;
  std::string cur;
  for (size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if ((ch == '+' || ch == '-') && i > 0 && s[i - 1] != '/' && s[i - 1] != '*' &&
        s[i - 1] != '+' && s[i - 1] != '-') {
      terms.push_back(cur);
      cur.clear();
    }
    cur.push_back(ch);
  }
  terms.push_back(cur);

  QuadScalar result;
  for (const std::string& t : terms) {
    if (t.empty()) return fail("empty term in '" + s + "'");
    std::string body = t;
    Rational sign_r(1);
    if (body[0] == '+') body = body.substr(1);
    else if (body[0] == '-') {
      sign_r = -1;
      body = body.substr(1);
    }
    if (body.empty()) return fail("dangling sign in '" + s + "'");

    std::string coeff_str = body, radical;
    size_t star = body.rfind('*');
    if (star != std::string::npos) {
      coeff_str = body.substr(0, star);
      radical = body.substr(star + 1);
    } else if (body == "r2" || body == "r3" || body == "r6") {
      coeff_str = "1";
      radical = body;
    }
    auto coeff = parse_rational(coeff_str);
    if (!coeff) return fail("bad coefficient '" + coeff_str + "' in '" + s + "'");
    Rational c = sign_r * *coeff;
    if (radical.empty()) result += QuadScalar(c);
    else if (radical == "r2") result += QuadScalar(c) * sqrt2();
    else if (radical == "r3") result += QuadScalar(c) * sqrt3();
    else if (radical == "r6") result += QuadScalar(c) * sqrt6();
    else return fail("unknown radical '" + radical + "' in '" + s + "'");
  }
  return result;
}

Expected<QuadScalar> QuadScalar::sqrt_of_rational(const Rational& q) {
  if (sgn(q) < 0) return Expected<QuadScalar>::failure("no real solution");
  if (sgn(q) == 0) return QuadScalar();
  if (auto r = rational_sqrt(q)) return QuadScalar(*r);
  if (auto r = rational_sqrt(q / 2)) return QuadScalar(0, *r, 0, 0);
  if (auto r = rational_sqrt(q / 3)) return QuadScalar(0, 0, *r, 0);
  if (auto r = rational_sqrt(q / 6)) return QuadScalar(0, 0, 0, *r);
  return Expected<QuadScalar>::failure("not representable");
}

Expected<QuadScalar> qf_arith(const QuadScalar& x, const QuadScalar& y, QfOp op) {
  switch (op) {
    case QfOp::add: return x + y;
    case QfOp::sub: return x - y;
    case QfOp::mul: return x * y;
    case QfOp::div:
      if (y.is_zero()) return Expected<QuadScalar>::failure("division by zero");
      return x / y;
  }
  return Expected<QuadScalar>::failure("unknown operation");
}

std::ostream& operator<<(std::ostream& os, const QuadScalar& x) {
  return os << x.to_string();
}

}  // namespace skv
