#ifndef SKV_FORMS_HPP
#define SKV_FORMS_HPP

#include <bit>
#include <cassert>
#include <cstdint>
#include <map>

#include "skv/frame.hpp"

namespace skv {

/// Number of sign flips needed to merge two disjoint ascending index sets.
inline int merge_sign(uint32_t lo, uint32_t hi) {
  int inversions = 0;
  for (uint32_t m = hi; m; m &= m - 1) {
    int j = std::countr_zero(m);
    // bits of `lo` strictly above j
    inversions += std::popcount(lo >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

/// Invariant differential form on the (2n+1)-dimensional model, stored as
/// the pair (base_part, eta_part) representing  pi*alpha0 + eta ^ pi*alpha1.
/// Monomials are bitmasks over the horizontal coframe labels 0..2n-1 in
/// strictly increasing order; the eta factor always sits in front.
template <class T>
class ModelForm {
 public:
  using TermMap = std::map<uint32_t, T>;

  ModelForm() : n_(0), deg_(0) {}
  ModelForm(int n, int deg) : n_(n), deg_(deg) { assert(deg >= 0); }

  int n() const { return n_; }
  int deg() const { return deg_; }
  const TermMap& base_part() const { return base_; }
  const TermMap& eta_part() const { return eta_; }

  void add_base(uint32_t mask, const T& coeff) {
    assert(std::popcount(mask) == deg_ && mask < (1u << (2 * n_)));
    accumulate(base_, mask, coeff);
  }
  void add_eta(uint32_t mask, const T& coeff) {
    assert(deg_ >= 1 && std::popcount(mask) == deg_ - 1 && mask < (1u << (2 * n_)));
    accumulate(eta_, mask, coeff);
  }

  T base_coeff(uint32_t mask) const {
    auto it = base_.find(mask);
    return it == base_.end() ? T{} : it->second;
  }
  T eta_coeff(uint32_t mask) const {
    auto it = eta_.find(mask);
    return it == eta_.end() ? T{} : it->second;
  }

  bool is_zero() const { return base_.empty() && eta_.empty(); }

  double max_abs() const {
    double m = 0.0;
    for (const auto& [mask, c] : base_) m = std::max(m, std::abs(to_double(c)));
    for (const auto& [mask, c] : eta_) m = std::max(m, std::abs(to_double(c)));
    return m;
  }

  ModelForm operator-() const {
    ModelForm f(n_, deg_);
    for (const auto& [mask, c] : base_) f.base_[mask] = -c;
    for (const auto& [mask, c] : eta_) f.eta_[mask] = -c;
    return f;
  }
  ModelForm& operator+=(const ModelForm& o) {
    assert(n_ == o.n_ && (deg_ == o.deg_ || is_zero() || o.is_zero()));
    if (is_zero() && !o.is_zero()) deg_ = o.deg_;
    for (const auto& [mask, c] : o.base_) accumulate(base_, mask, c);
    for (const auto& [mask, c] : o.eta_) accumulate(eta_, mask, c);
    return *this;
  }
  ModelForm& operator-=(const ModelForm& o) { return *this += -o; }
  friend ModelForm operator+(ModelForm x, const ModelForm& y) { return x += y; }
  friend ModelForm operator-(ModelForm x, const ModelForm& y) { return x -= y; }
  ModelForm& scale(const T& s) {
    if (skv::is_zero(s)) {
      base_.clear();
      eta_.clear();
      return *this;
    }
    for (auto& [mask, c] : base_) c = c * s;
    for (auto& [mask, c] : eta_) c = c * s;
    return *this;
  }
  friend ModelForm operator*(const T& s, ModelForm f) { return f.scale(s); }

  friend bool operator==(const ModelForm& x, const ModelForm& y) {
    return (x - y).is_zero();
  }
  friend bool operator!=(const ModelForm& x, const ModelForm& y) { return !(x == y); }

 private:
  static void accumulate(TermMap& map, uint32_t mask, const T& coeff) {
    if (skv::is_zero(coeff)) return;
    auto [it, inserted] = map.try_emplace(mask, coeff);
    if (!inserted) {
      it->second += coeff;
      if (skv::is_zero(it->second)) map.erase(it);
    }
  }

  int n_;
  int deg_;
  TermMap base_;
  TermMap eta_;
};

template <class T>
ModelForm<T> zero_form(int n, int deg) {
  return ModelForm<T>(n, deg);
}

/// pi*omega = sum_i e^i ^ e^{i+n}.
template <class T>
ModelForm<T> kahler_form(int n) {
  ModelForm<T> w(n, 2);
  for (int i = 0; i < n; ++i)
    w.add_base((1u << i) | (1u << (i + n)), Backend<T>::from_long(1));
  return w;
}

template <class T>
ModelForm<T> eta_form(int n) {
  ModelForm<T> e(n, 1);
  e.add_eta(0, Backend<T>::from_long(1));
  return e;
}

/// Graded-commutative wedge; degrees past the model dimension collapse
/// to the zero form rather than raising an error.
template <class T>
ModelForm<T> wedge(const ModelForm<T>& a, const ModelForm<T>& b) {
  assert(a.n() == b.n());
  const int n = a.n();
  ModelForm<T> r(n, a.deg() + b.deg());
  if (a.deg() + b.deg() > 2 * n + 1) return r;
  const int sign_a0 = (a.deg() % 2 == 0) ? 1 : -1;
  for (const auto& [ma, ca] : a.base_part()) {
    for (const auto& [mb, cb] : b.base_part()) {
      if (ma & mb) continue;
      int s = merge_sign(ma, mb);
      r.add_base(ma | mb, s < 0 ? -(ca * cb) : ca * cb);
    }
    // a0 ^ (eta ^ b1) = (-1)^{|a0|} eta ^ (a0 ^ b1)
    for (const auto& [mb, cb] : b.eta_part()) {
      if (ma & mb) continue;
      int s = sign_a0 * merge_sign(ma, mb);
      r.add_eta(ma | mb, s < 0 ? -(ca * cb) : ca * cb);
    }
  }
  // (eta ^ a1) ^ b0 = eta ^ (a1 ^ b0); (eta ^ a1) ^ (eta ^ b1) = 0
  for (const auto& [ma, ca] : a.eta_part())
    for (const auto& [mb, cb] : b.base_part()) {
      if (ma & mb) continue;
      int s = merge_sign(ma, mb);
      r.add_eta(ma | mb, s < 0 ? -(ca * cb) : ca * cb);
    }
  return r;
}

template <class T>
ModelForm<T> wedge_power(const ModelForm<T>& a, int k) {
  assert(k >= 1);
  ModelForm<T> r = a;
  for (int i = 1; i < k; ++i) r = wedge(r, a);
  return r;
}

/// Interior product with a frame vector; antiderivation of degree -1.
template <class T>
ModelForm<T> interior(const FrameSpace& fs, const FrameVector<T>& x,
                      const ModelForm<T>& a) {
  assert(x.dim() == fs.dim() && a.n() == fs.n);
  ModelForm<T> r(a.n(), a.deg() > 0 ? a.deg() - 1 : 0);
  if (a.deg() == 0) return r;
  auto contract_base = [&](uint32_t mask, const T& c, auto&& emit) {
    int pos = 0;
    for (uint32_t m = mask; m; m &= m - 1, ++pos) {
      int idx = std::countr_zero(m);
      const T& xi = x.c[idx];
      if (skv::is_zero(xi)) continue;
      T term = xi * c;
      emit(mask & ~(1u << idx), (pos & 1) ? -term : term);
    }
  };
  for (const auto& [mask, c] : a.base_part())
    contract_base(mask, c, [&](uint32_t m, const T& v) { r.add_base(m, v); });
  const T& x_xi = x.c[fs.xi()];
  for (const auto& [mask, c] : a.eta_part()) {
    // iota_X(eta ^ beta) = eta(X) beta - eta ^ iota_X beta
    if (!skv::is_zero(x_xi)) r.add_base(mask, x_xi * c);
    if (a.deg() >= 2)
      contract_base(mask, c, [&](uint32_t m, const T& v) { r.add_eta(m, -v); });
  }
  return r;
}

/// Pointwise inner product of equal-degree forms; monomials are
/// orthonormal with g(eta,eta) = eps.
template <class T>
T inner(const FrameSpace& fs, const ModelForm<T>& a, const ModelForm<T>& b) {
  assert(a.n() == b.n() && a.deg() == b.deg());
  T g{};
  for (const auto& [mask, c] : a.base_part()) {
    T other = b.base_coeff(mask);
    if (!skv::is_zero(other)) g += c * other;
  }
  T ge{};
  for (const auto& [mask, c] : a.eta_part()) {
    T other = b.eta_coeff(mask);
    if (!skv::is_zero(other)) ge += c * other;
  }
  return fs.epsilon < 0 ? g - ge : g + ge;
}

/// Volume form: eps * eta ^ pi*vol_h (so -eta ^ pi*vol_h in the
/// Lorentzian signature, +eta ^ pi*vol_h in the Riemannian one).
template <class T>
ModelForm<T> volume_form(const FrameSpace& fs) {
  ModelForm<T> v(fs.n, fs.dim());
  v.add_eta((1u << (2 * fs.n)) - 1, Backend<T>::from_long(fs.epsilon));
  return v;
}

/// Hodge star determined by a ^ star(b) = g(a,b) vol.
template <class T>
ModelForm<T> hodge(const FrameSpace& fs, const ModelForm<T>& a) {
  const int n2 = 2 * fs.n;
  const uint32_t full = (1u << n2) - 1;
  ModelForm<T> r(fs.n, fs.dim() - a.deg());
  // Inversion parity of (labels of m, labels of complement), with the eta
  // label sorting first. For m = e^I the complement contains eta; for
  // m = eta ^ e^J it does not.
  auto inv_pairs = [](uint32_t first, uint32_t second) {
    int inv = 0;
    for (uint32_t m = second; m; m &= m - 1) {
      int j = std::countr_zero(m);
      inv += std::popcount(first >> (j + 1));
    }
    return inv;
  };
  for (const auto& [mask, c] : a.base_part()) {
    uint32_t comp = full & ~mask;
    // sequence: (mask bits, xi, comp bits); xi precedes every horizontal
    // label canonically, so it contributes one inversion per mask bit.
    int inv = std::popcount(mask) + inv_pairs(mask, comp);
    int s = fs.epsilon * ((inv & 1) ? -1 : 1);
    r.add_eta(comp, s < 0 ? -c : c);
  }
  for (const auto& [mask, c] : a.eta_part()) {
    uint32_t comp = full & ~mask;
    int inv = inv_pairs(mask, comp);  // xi already leads the sequence
    int s = fs.epsilon * fs.epsilon * ((inv & 1) ? -1 : 1);  // g(m,m) = eps
    r.add_base(comp, s < 0 ? -c : c);
  }
  return r;
}

/// Model differential: base parts are constant-coefficient (closed) and
/// d eta = -2 pi*omega, so d(a0 + eta^a1) = -2 pi*omega ^ a1.
template <class T>
ModelForm<T> model_d(const ModelForm<T>& a) {
  const int n = a.n();
  ModelForm<T> a1(n, a.deg() >= 1 ? a.deg() - 1 : 0);
  for (const auto& [mask, c] : a.eta_part()) a1.add_base(mask, c);
  ModelForm<T> r = wedge(kahler_form<T>(n), a1);
  r.scale(Backend<T>::from_long(-2));
  return r;
}

/// Musical isomorphisms: X^flat(Y) = g(X,Y), so xi^flat = eps * eta.
template <class T>
ModelForm<T> flat(const FrameSpace& fs, const FrameVector<T>& x) {
  assert(x.dim() == fs.dim());
  ModelForm<T> r(fs.n, 1);
  for (int i = 0; i < 2 * fs.n; ++i)
    if (!skv::is_zero(x.c[i])) r.add_base(1u << i, x.c[i]);
  const T& xv = x.c[fs.xi()];
  if (!skv::is_zero(xv))
    r.add_eta(0, fs.epsilon < 0 ? -xv : xv);
  return r;
}

template <class T>
FrameVector<T> sharp(const FrameSpace& fs, const ModelForm<T>& a) {
  assert(a.deg() == 1 && a.n() == fs.n);
  FrameVector<T> x(fs.dim());
  for (const auto& [mask, c] : a.base_part())
    x.c[std::countr_zero(mask)] = c;
  for (const auto& [mask, c] : a.eta_part())
    x.c[fs.xi()] = fs.epsilon < 0 ? -c : c;
  return x;
}

template <class T, class U, class Fn>
ModelForm<T> form_map(const ModelForm<U>& a, Fn&& fn) {
  ModelForm<T> r(a.n(), a.deg());
  for (const auto& [mask, c] : a.base_part()) r.add_base(mask, fn(c));
  for (const auto& [mask, c] : a.eta_part()) r.add_eta(mask, fn(c));
  return r;
}

/// Embed an exact form into another backend.
template <class T>
ModelForm<T> form_cast(const ModelForm<QuadScalar>& a) {
  return form_map<T>(a, [](const QuadScalar& c) { return Backend<T>::embed(c); });
}

}  // namespace skv

#endif
