#ifndef SKV_KAHLER_HPP
#define SKV_KAHLER_HPP

#include <random>
#include <string>

#include "skv/traceforms.hpp"

namespace skv {

/// Algebraic curvature tensor of a Kaehler metric on the 2n-dimensional
/// base, stored as all components R_{abcd} = g(R(e_a,e_b)e_c, e_d) over
/// the orthonormal frame with e_{i+n} = J e_i.
template <class T>
class KahlerCurvature {
 public:
  explicit KahlerCurvature(int n) : n_(n), d_(2 * n), r_(size_t(d_) * d_ * d_ * d_) {}

  int n() const { return n_; }
  int dim() const { return d_; }

  T& at(int a, int b, int c, int d) {
    return r_[((size_t(a) * d_ + b) * d_ + c) * d_ + d];
  }
  const T& at(int a, int b, int c, int d) const {
    return r_[((size_t(a) * d_ + b) * d_ + c) * d_ + d];
  }

  bool is_flat() const {
    for (const T& x : r_)
      if (!skv::is_zero(x)) return false;
    return true;
  }

  SignedIndex J(int a) const {
    return a < n_ ? SignedIndex{a + n_, 1} : SignedIndex{a - n_, -1};
  }
  Matrix<T> J_matrix() const {
    Matrix<T> j(d_, d_);
    for (int a = 0; a < d_; ++a) {
      SignedIndex s = J(a);
      j.at(s.index, a) = Backend<T>::from_long(s.sign);
    }
    return j;
  }

  /// Endomorphism matrix of R(e_a, e_b).
  Matrix<T> curvature_op(int a, int b) const {
    Matrix<T> m(d_, d_);
    for (int c = 0; c < d_; ++c)
      for (int x = 0; x < d_; ++x) m.at(x, c) = at(a, b, c, x);
    return m;
  }

  CurvatureOps<T> curvature_ops() const {
    auto ops = CurvatureOps<T>::make(n_, d_, -1);
    for (int a = 0; a < d_; ++a)
      for (int b = a + 1; b < d_; ++b) ops.set(a, b, curvature_op(a, b));
    return ops;
  }

 private:
  int n_, d_;
  std::vector<T> r_;
};

struct SymmetryReport {
  struct Entry {
    std::string name;
    double max_residual = 0.0;
    bool exact_zero = true;
  };
  std::vector<Entry> entries;

  bool pass(double tol) const {
    for (const Entry& e : entries)
      if (e.max_residual > tol) return false;
    return true;
  }
  bool pass_exact() const {
    for (const Entry& e : entries)
      if (!e.exact_zero) return false;
    return true;
  }
};

template <class T>
SymmetryReport validate(const KahlerCurvature<T>& R) {
  const int d = R.dim();
  SymmetryReport rep;
  auto scan = [&](const std::string& name, auto&& residual) {
    SymmetryReport::Entry e{name, 0.0, true};
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int x = 0; x < d; ++x) {
            T r = residual(a, b, c, x);
            if (!skv::is_zero(r)) {
              e.exact_zero = false;
              e.max_residual = std::max(e.max_residual, std::abs(to_double(r)));
            }
          }
    rep.entries.push_back(std::move(e));
  };
  scan("antisymmetry_first_pair",
       [&](int a, int b, int c, int x) { return R.at(a, b, c, x) + R.at(b, a, c, x); });
  scan("antisymmetry_second_pair",
       [&](int a, int b, int c, int x) { return R.at(a, b, c, x) + R.at(a, b, x, c); });
  scan("pair_symmetry",
       [&](int a, int b, int c, int x) { return R.at(a, b, c, x) - R.at(c, x, a, b); });
  scan("first_bianchi", [&](int a, int b, int c, int x) {
    return R.at(a, b, c, x) + R.at(b, c, a, x) + R.at(c, a, b, x);
  });
  scan("kahler_first_pair", [&](int a, int b, int c, int x) {
    SignedIndex ja = R.J(a), jb = R.J(b);
    T v = R.at(ja.index, jb.index, c, x);
    if (ja.sign * jb.sign < 0) v = -v;
    return v - R.at(a, b, c, x);
  });
  scan("kahler_second_pair", [&](int a, int b, int c, int x) {
    SignedIndex jc = R.J(c), jx = R.J(x);
    T v = R.at(a, b, jc.index, jx.index);
    if (jc.sign * jx.sign < 0) v = -v;
    return v - R.at(a, b, c, x);
  });
  return rep;
}

/// Ric(X,Y) = sum_a g(R(e_a,X)Y, e_a); positive-definite base metric.
template <class T>
Matrix<T> ricci(const KahlerCurvature<T>& R) {
  const int d = R.dim();
  Matrix<T> ric(d, d);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      T s{};
      for (int a = 0; a < d; ++a) s += R.at(a, x, y, a);
      ric.at(x, y) = s;
    }
  return ric;
}

template <class T>
T scalar_curvature(const KahlerCurvature<T>& R) {
  return ricci(R).trace();
}

/// Ricci form rho_1(U,V) = Ric(JU, V), as a base two-form.
template <class T>
ModelForm<T> rho1_from_ricci(const KahlerCurvature<T>& R) {
  const int d = R.dim();
  Matrix<T> ric = ricci(R);
  ModelForm<T> rho(R.n(), 2);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      SignedIndex ja = R.J(a);
      T v = ric.at(ja.index, b);
      if (ja.sign < 0) v = -v;
      rho.add_base((1u << a) | (1u << b), v);
    }
  return rho;
}

/// The same form computed as (1/2) Tr(J o R(U,V)).
template <class T>
ModelForm<T> rho1_from_trace(const KahlerCurvature<T>& R) {
  const int d = R.dim();
  Matrix<T> j = R.J_matrix();
  const T half = from_rational<T>(rat(1, 2));
  ModelForm<T> rho(R.n(), 2);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      rho.add_base((1u << a) | (1u << b), half * j.trace_product(R.curvature_op(a, b)));
  return rho;
}

enum class TracePath { permutation, wedge };

/// Trace form Tr R^{2k}, a 4k-form on the base.
template <class T>
ModelForm<T> trace_form(const KahlerCurvature<T>& R, int k,
                        TracePath path = TracePath::wedge) {
  auto ops = R.curvature_ops();
  return path == TracePath::permutation ? alt_trace_form_perm(ops, 2 * k, nullptr)
                                        : alt_trace_form_wedge(ops, 2 * k);
}

/// Second Ricci form rho_2 = 1/6! sum eps(sigma) Tr(J o R R R), a 6-form.
template <class T>
ModelForm<T> rho2(const KahlerCurvature<T>& R, TracePath path = TracePath::wedge) {
  auto ops = R.curvature_ops();
  Matrix<T> j = R.J_matrix();
  return path == TracePath::permutation ? alt_trace_form_perm(ops, 3, &j)
                                        : alt_trace_form_wedge(ops, 3, &j);
}

struct AdmissibleReport {
  bool admissible = false;
  bool exact = false;
  double rho1 = 0.0, tr2 = 0.0, rho2 = 0.0, tr4 = 0.0;
};

/// A 10-dimensional base is admissible when rho_1, Tr R^2, rho_2 and
/// Tr R^4 all vanish; flat bases qualify.
template <class T>
AdmissibleReport admissible(const KahlerCurvature<T>& R, double tol = 1e-9) {
  AdmissibleReport rep;
  ModelForm<T> r1 = rho1_from_ricci(R);
  ModelForm<T> t2 = trace_form(R, 1);
  ModelForm<T> r2 = rho2(R);
  ModelForm<T> t4 = trace_form(R, 2);
  rep.rho1 = r1.max_abs();
  rep.tr2 = t2.max_abs();
  rep.rho2 = r2.max_abs();
  rep.tr4 = t4.max_abs();
  rep.exact = r1.is_zero() && t2.is_zero() && r2.is_zero() && t4.is_zero();
  rep.admissible = Backend<T>::exact
                       ? rep.exact
                       : (rep.rho1 <= tol && rep.tr2 <= tol && rep.rho2 <= tol &&
                          rep.tr4 <= tol);
  return rep;
}

namespace detail {

// Deterministic small rationals; plain modulo keeps the stream identical
// across standard libraries.
inline Rational random_rational(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 19) - 9;
  static const int dens[4] = {1, 1, 2, 3};
  return rat(num, dens[rng() % 4]);
}

}  // namespace detail

/// Random Kaehler curvature tensor. A Hermitian form H on Sym^2(C^n)
/// prescribes the holomorphic components R_{i jbar k lbar} = H_{(ik),(jl)};
/// every curvature symmetry (antisymmetries, pair symmetry, first
/// Bianchi, J-invariance, reality) then holds identically, and realising
/// the real frame components is linear, hence exact over rationals.
template <class T>
KahlerCurvature<T> random_kahler_curvature(uint64_t seed, int n) {
  using CR = Complex<Rational>;
  const int npairs = n * (n + 1) / 2;
  std::vector<std::vector<int>> pidx(n, std::vector<int>(n));
  {
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) pidx[i][j] = pidx[j][i] = k++;
  }

  std::mt19937_64 rng(seed ^ 0x5a5a5a5a5a5a5a5aULL);
  std::vector<std::vector<CR>> H(npairs, std::vector<CR>(npairs));
  for (int p = 0; p < npairs; ++p)
    for (int q = p; q < npairs; ++q) {
      Rational re = detail::random_rational(rng);
      Rational im = p == q ? Rational(0) : detail::random_rational(rng);
      H[p][q] = CR(re, im);
      H[q][p] = CR(re, -im);
    }

  // e_a = sum_i c10[a] e_i^{10} + c01[a] e_i^{01} with support at i = a mod n.
  auto c10 = [&](int a) { return a < n ? CR(Rational(1)) : CR(Rational(0), Rational(1)); };
  auto c01 = [&](int a) {
    return a < n ? CR(Rational(1)) : CR(Rational(0), Rational(-1));
  };
  auto hom_index = [&](int a) { return a < n ? a : a - n; };

  KahlerCurvature<T> R(n);
  const int d = 2 * n;

  // Expand R(e_a,e_b,e_c,e_d) = sum M^{ab}_{ij} M^{cd}_{kl} H_{(ik),(jl)}
  // with M^{ab}_{ij} = c10_{a,i} c01_{b,j} - c10_{b,i} c01_{a,j}.
  auto mcoeff = [&](int x, int y, int i, int j) -> CR {
    CR v;
    if (hom_index(x) == i && hom_index(y) == j) v += c10(x) * c01(y);
    if (hom_index(y) == i && hom_index(x) == j) v -= c10(y) * c01(x);
    return v;
  };
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          CR sum;
          int is[2] = {hom_index(a), hom_index(b)};
          int ks[2] = {hom_index(c), hom_index(e)};
          for (int i : is)
            for (int j : is)
              for (int k : ks)
                for (int l : ks) {
                  CR m1 = mcoeff(a, b, i, j);
                  if (m1.is_zero()) continue;
                  CR m2 = mcoeff(c, e, k, l);
                  if (m2.is_zero()) continue;
                  sum += m1 * m2 * H[pidx[i][k]][pidx[j][l]];
                }
          // Hermitian symmetry of H makes the result real.
          R.at(a, b, c, e) = from_rational<T>(sum.re);
        }
  return R;
}

/// Constant-holomorphic-sectional-curvature tensor scaled so that
/// Ric = c * h exactly; used to inject synthetic Einstein bases.
template <class T>
KahlerCurvature<T> cp_like_curvature(int n, const Rational& c) {
  KahlerCurvature<T> R(n);
  const int d = 2 * n;
  FrameSpace fs(n, 1);  // only for omega on horizontal labels
  Rational c0 = c / (2 * n + 2);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int w = 0; w < d; ++w) {
          long hYZ = y == z, hXW = x == w, hXZ = x == z, hYW = y == w;
          long oYZ = fs.omega(y, z), oXW = fs.omega(x, w);
          long oXZ = fs.omega(x, z), oYW = fs.omega(y, w);
          long oXY = fs.omega(x, y), oZW = fs.omega(z, w);
          long val = hYZ * hXW - hXZ * hYW + oYZ * oXW - oXZ * oYW - 2 * oXY * oZW;
          if (val != 0) R.at(x, y, z, w) = from_rational<T>(c0 * val);
        }
  return R;
}

template <class T>
KahlerCurvature<T> flat_curvature(int n) {
  return KahlerCurvature<T>(n);
}

template <class T>
KahlerCurvature<T> curvature_cast(const KahlerCurvature<QuadScalar>& R) {
  KahlerCurvature<T> out(R.n());
  const int d = R.dim();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int x = 0; x < d; ++x)
          out.at(a, b, c, x) = Backend<T>::embed(R.at(a, b, c, x));
  return out;
}

}  // namespace skv

#endif
