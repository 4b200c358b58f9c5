#ifndef SKV_FRAME_HPP
#define SKV_FRAME_HPP

#include <cassert>
#include <vector>

#include "skv/backend.hpp"
#include "skv/matrix.hpp"

namespace skv {

/// Signed frame index: a frame vector times +-1 (or 0 for the zero vector).
struct SignedIndex {
  int index = 0;
  int sign = 0;
};

/// The adapted orthonormal frame (e_1 .. e_2n, xi) of the (2n+1)-model.
/// Horizontal labels are 0-based 0..2n-1 with e_{i+n} = J e_i; the last
/// slot is xi with g(xi,xi) = epsilon. The metric is diag(1,..,1,eps).
struct FrameSpace {
  int n = 5;
  int epsilon = -1;

  FrameSpace() = default;
  FrameSpace(int n_, int eps) : n(n_), epsilon(eps) {
    assert(n >= 1 && (eps == 1 || eps == -1));
  }

  int dim() const { return 2 * n + 1; }
  int xi() const { return 2 * n; }
  bool horizontal(int a) const { return a >= 0 && a < 2 * n; }
  int metric_sign(int a) const { return a == xi() ? epsilon : 1; }

  /// Complex structure on horizontal labels: J e_i = e_{i+n}, J e_{i+n} = -e_i.
  SignedIndex J(int a) const {
    assert(horizontal(a));
    return a < n ? SignedIndex{a + n, 1} : SignedIndex{a - n, -1};
  }

  /// Phi(e_a) = eps * (J e_a)^ on horizontal labels, Phi(xi) = 0.
  SignedIndex phi(int a) const {
    if (a == xi()) return SignedIndex{0, 0};
    SignedIndex j = J(a);
    return SignedIndex{j.index, epsilon * j.sign};
  }

  /// omega(e_a, e_b) for horizontal labels, as an integer in {-1,0,1}.
  int omega(int a, int b) const {
    assert(horizontal(a) && horizontal(b));
    if (a < n && b == a + n) return 1;
    if (b < n && a == b + n) return -1;
    return 0;
  }
};

template <class T>
struct FrameVector {
  std::vector<T> c;

  FrameVector() = default;
  explicit FrameVector(int dim) : c(dim) {}
  static FrameVector basis(int dim, int a, T coeff = T(1)) {
    FrameVector v(dim);
    v.c[a] = std::move(coeff);
    return v;
  }

  int dim() const { return static_cast<int>(c.size()); }
  bool is_zero() const {
    for (const T& x : c)
      if (!skv::is_zero(x)) return false;
    return true;
  }
  FrameVector operator-() const {
    FrameVector v = *this;
    for (T& x : v.c) x = -x;
    return v;
  }
  FrameVector& operator+=(const FrameVector& o) {
    assert(dim() == o.dim());
    for (int i = 0; i < dim(); ++i) c[i] += o.c[i];
    return *this;
  }
  FrameVector& operator-=(const FrameVector& o) {
    assert(dim() == o.dim());
    for (int i = 0; i < dim(); ++i) c[i] -= o.c[i];
    return *this;
  }
  friend FrameVector operator+(FrameVector x, const FrameVector& y) { return x += y; }
  friend FrameVector operator-(FrameVector x, const FrameVector& y) { return x -= y; }
  FrameVector& scale(const T& s) {
    for (T& x : c) x = x * s;
    return *this;
  }
  friend FrameVector operator*(const T& s, FrameVector v) { return v.scale(s); }
  friend bool operator==(const FrameVector& x, const FrameVector& y) {
    return x.c == y.c;
  }

  double max_abs() const {
    double m = 0.0;
    for (const T& x : c) m = std::max(m, std::abs(to_double(x)));
    return m;
  }
};

template <class T>
T metric_pairing(const FrameSpace& fs, const FrameVector<T>& x,
                 const FrameVector<T>& y) {
  assert(x.dim() == fs.dim() && y.dim() == fs.dim());
  T g{};
  for (int a = 0; a < fs.dim(); ++a) {
    if (skv::is_zero(x.c[a]) || skv::is_zero(y.c[a])) continue;
    T term = x.c[a] * y.c[a];
    g += fs.metric_sign(a) < 0 ? -term : term;
  }
  return g;
}

/// Phi as an endomorphism matrix in the adapted frame.
template <class T>
Matrix<T> phi_matrix(const FrameSpace& fs) {
  Matrix<T> m(fs.dim(), fs.dim());
  for (int a = 0; a < 2 * fs.n; ++a) {
    SignedIndex p = fs.phi(a);
    if (p.sign != 0) m.at(p.index, a) = Backend<T>::from_long(p.sign);
  }
  return m;
}

template <class T>
FrameVector<T> apply_endo(const Matrix<T>& m, const FrameVector<T>& x) {
  assert(m.cols() == x.dim());
  FrameVector<T> y(m.rows());
  for (int c = 0; c < m.cols(); ++c) {
    if (skv::is_zero(x.c[c])) continue;
    for (int r = 0; r < m.rows(); ++r) {
      if (skv::is_zero(m.at(r, c))) continue;
      y.c[r] += m.at(r, c) * x.c[c];
    }
  }
  return y;
}

}  // namespace skv

#endif
