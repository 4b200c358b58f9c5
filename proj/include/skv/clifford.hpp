#ifndef SKV_CLIFFORD_HPP
#define SKV_CLIFFORD_HPP

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <vector>

#include "skv/forms.hpp"

namespace skv {

template <class T>
struct Spinor {
  std::vector<Complex<T>> c;

  Spinor() = default;
  explicit Spinor(int dim) : c(dim) {}

  int dim() const { return static_cast<int>(c.size()); }
  bool is_zero() const {
    return std::all_of(c.begin(), c.end(),
                       [](const Complex<T>& z) { return z.is_zero(); });
  }
  double max_abs() const {
    double m = 0.0;
    for (const Complex<T>& z : c) m = std::max(m, abs_approx(z));
    return m;
  }
  Spinor operator-() const {
    Spinor s = *this;
    for (auto& z : s.c) z = -z;
    return s;
  }
  Spinor& operator+=(const Spinor& o) {
    for (int i = 0; i < dim(); ++i) c[i] += o.c[i];
    return *this;
  }
  Spinor& operator-=(const Spinor& o) {
    for (int i = 0; i < dim(); ++i) c[i] -= o.c[i];
    return *this;
  }
  friend Spinor operator+(Spinor x, const Spinor& y) { return x += y; }
  friend Spinor operator-(Spinor x, const Spinor& y) { return x -= y; }
  Spinor& scale(const Complex<T>& s) {
    for (auto& z : c) z = z * s;
    return *this;
  }
  friend Spinor operator*(const Complex<T>& s, Spinor v) { return v.scale(s); }
  friend bool operator==(const Spinor& x, const Spinor& y) { return x.c == y.c; }

  Spinor conj() const {
    Spinor s = *this;
    for (auto& z : s.c) z = z.conj();
    return s;
  }
};

template <class T>
Spinor<T> apply(const Matrix<Complex<T>>& m, const Spinor<T>& v) {
  Spinor<T> r(m.rows());
  for (int c = 0; c < m.cols(); ++c) {
    if (v.c[c].is_zero()) continue;
    for (int rr = 0; rr < m.rows(); ++rr) {
      const Complex<T>& e = m.at(rr, c);
      if (e.is_zero()) continue;
      r.c[rr] += e * v.c[c];
    }
  }
  return r;
}

/// The Dirac module Lambda^* U* for the (2n,eps)-frame, with basis
/// monomials u_S indexed by subsets S of {0..n-1} ordered by
/// (cardinality, lexicographic tuple). The Clifford action is generated
/// by  v.phi = -2 iota_v phi  on U-directions,  w.phi = w^flat ^ phi  on
/// the conjugate directions, and xi acting through the volume element,
/// so that e_a e_b + e_b e_a = -2 g_ab.
template <class T>
class SpinorModule {
 public:
  using C = Complex<T>;
  using Op = Matrix<C>;

  explicit SpinorModule(const FrameSpace& fs) : fs_(fs), dim_(1 << fs.n) {
    build_basis();
    build_generators();
  }

  const FrameSpace& frame() const { return fs_; }
  int n() const { return fs_.n; }
  int dim() const { return dim_; }

  uint32_t basis_mask(int index) const { return basis_[index]; }
  int index_of(uint32_t mask) const { return index_of_[mask]; }
  int grade(int index) const { return std::popcount(basis_[index]); }

  /// Clifford generator for a frame label (0..2n-1 horizontal, 2n = xi).
  const Op& generator(int label) const { return gen_[label]; }
  const Op& volume_element() const { return vol2n_; }

  Spinor<T> basis_spinor(int index) const {
    Spinor<T> s(dim_);
    s.c[index] = C(Backend<T>::from_long(1));
    return s;
  }
  /// Weyl representatives: phi_+ spans Lambda^0, phi_- spans Lambda^n.
  Spinor<T> phi_plus() const { return basis_spinor(0); }
  Spinor<T> phi_minus() const { return basis_spinor(dim_ - 1); }

  Op act_vector(const FrameVector<T>& x) const {
    Op m(dim_, dim_);
    for (int a = 0; a < fs_.dim(); ++a)
      if (!skv::is_zero(x.c[a])) m += C(x.c[a]) * gen_[a];
    return m;
  }

  /// Monomial e^{i1}^..^e^{ik} acts as the product e_{i1}...e_{ik};
  /// the eta factor acts through eta^sharp = eps * xi.
  Op act_form(const ModelForm<T>& f) const {
    Op m(dim_, dim_);
    for (const auto& [mask, c] : f.base_part())
      m += C(c) * monomial_op(mask);
    if (!f.eta_part().empty()) {
      Op eta_op = fs_.epsilon < 0 ? -gen_[fs_.xi()] : gen_[fs_.xi()];
      for (const auto& [mask, c] : f.eta_part())
        m += C(c) * (eta_op * monomial_op(mask));
    }
    return m;
  }

  /// Spin representation of a g-skew endomorphism:
  /// rho(A) = 1/4 sum_{a,b} g^aa g^bb g(A e_a, e_b) e_a e_b.
  Op act_so(const Matrix<T>& A) const {
    const int d = fs_.dim();
    if (A.rows() != d || A.cols() != d)
      throw std::invalid_argument("act_so: endomorphism has wrong size");
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        T lhs = fs_.metric_sign(b) < 0 ? -A.at(b, a) : A.at(b, a);
        T rhs = fs_.metric_sign(a) < 0 ? A.at(a, b) : -A.at(a, b);
        if (!skv::is_zero(lhs - rhs))
          throw std::invalid_argument("act_so: endomorphism is not g-skew");
      }
    Op m(dim_, dim_);
    const T quarter = from_rational<T>(rat(1, 4));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        if (skv::is_zero(A.at(b, a))) continue;
        T coeff = quarter * A.at(b, a);
        if (fs_.metric_sign(a) < 0) coeff = -coeff;
        m += C(coeff) * (gen_[a] * gen_[b]);
      }
    return m;
  }

  /// Both sides of the horizontal commutator identity
  /// X^flat . pi*omega . phi - pi*omega . X^flat . phi = 2 Phi(X) . phi.
  std::pair<Spinor<T>, Spinor<T>> phi_commutator_identity(
      const FrameVector<T>& x, const Spinor<T>& phi) const {
    FrameVector<T> xh = x;
    xh.c[fs_.xi()] = T{};
    Op xf = act_vector(xh);
    Op w = act_form(kahler_form<T>(fs_.n));
    Spinor<T> lhs = apply(xf, apply(w, phi)) - apply(w, apply(xf, phi));
    FrameVector<T> phix = apply_endo(phi_matrix<T>(fs_), xh);
    Spinor<T> rhs = C(Backend<T>::from_long(2)) * apply(act_vector(phix), phi);
    return {lhs, rhs};
  }

  /// Antilinear spinor star fixed by phi ^ star(phi') = g(phi, conj phi') phi_-
  /// with the metric-induced pairing g(u_S, u_S) = 2^{|S|} (the monomials
  /// u_S are orthogonal but not unit: their factors have norm 2) and phi_-
  /// normalised to g(phi_-, conj phi_-) = 1. This gives
  /// star(u_S) = sgn(S,S^c) 2^{|S|} / sqrt(2^n) u_{S^c}. Apply as M * conj(phi).
  Op star_matrix() const {
    const uint32_t full = (1u << fs_.n) - 1;
    auto norm = QuadScalar::sqrt_of_rational(rat(1 << fs_.n));
    QuadScalar inv_norm = norm->inverse();
    Op m(dim_, dim_);
    for (int idx = 0; idx < dim_; ++idx) {
      uint32_t mask = basis_[idx];
      uint32_t comp = full & ~mask;
      QuadScalar scale = inv_norm;
      for (int p = 0; p < std::popcount(mask); ++p) scale *= QuadScalar(2);
      if (merge_sign(mask, comp) < 0) scale = -scale;
      m.at(index_of_[comp], idx) = C(Backend<T>::embed(scale));
    }
    return m;
  }

  /// Pseudo-Majorana conjugation j = (-1)^{p(p-1)/2} 2^p / sqrt(32) * star
  /// on Lambda^p; antilinear with j^2 = Id. Only defined for n = 5.
  Op j_matrix() const {
    if (fs_.n != 5)
      throw std::invalid_argument("j_matrix: the conjugation is specific to n = 5");
    Op star = star_matrix();
    std::vector<T> scale(fs_.n + 1);
    for (int p = 0; p <= fs_.n; ++p) {
      // 2^p / sqrt(32) = 2^p * sqrt2 / 8, exact in the field.
      QuadScalar s = QuadScalar(rat(1, 8)) * QuadScalar::sqrt2();
      for (int k = 0; k < p; ++k) s *= QuadScalar(2);
      if ((p * (p - 1) / 2) % 2 == 1) s = -s;
      scale[p] = Backend<T>::embed(s);
    }
    Op m(dim_, dim_);
    for (int col = 0; col < dim_; ++col) {
      int p = grade(col);
      for (int row = 0; row < dim_; ++row) {
        const C& e = star.at(row, col);
        if (!e.is_zero()) m.at(row, col) = C(scale[p]) * e;
      }
    }
    return m;
  }

  Spinor<T> apply_antilinear(const Op& m, const Spinor<T>& phi) const {
    return apply(m, phi.conj());
  }

  /// c+ phi_+ + c- phi_- fixed by j, for phi_+ in Lambda^0 and phi_- in
  /// Lambda^5, both nonzero.
  Expected<Spinor<T>> pseudo_majorana_combination(const Spinor<T>& phip,
                                                  const Spinor<T>& phim) const {
    if (fs_.n != 5)
      return Expected<Spinor<T>>::failure("combination requires n = 5");
    if (phip.is_zero() || phim.is_zero())
      return Expected<Spinor<T>>::failure("input spinor is zero");
    for (int i = 1; i < dim_; ++i)
      if (!phip.c[i].is_zero())
        return Expected<Spinor<T>>::failure("phi_+ must lie in Lambda^0");
    for (int i = 0; i + 1 < dim_; ++i)
      if (!phim.c[i].is_zero())
        return Expected<Spinor<T>>::failure("phi_- must lie in Lambda^5");
    Op j = j_matrix();
    // j(phi_+) lies in Lambda^5; the antilinear fixed-point system
    // c- = kappa conj(c+) with kappa from j(phi_+) = kappa phi_-.
    Spinor<T> jp = apply_antilinear(j, phip);
    C kappa = jp.c[dim_ - 1] / phim.c[dim_ - 1];
    Spinor<T> phi = phip + kappa * phim;
    Spinor<T> residual = apply_antilinear(j, phi) - phi;
    bool bad = Backend<T>::exact ? !residual.is_zero() : residual.max_abs() > 1e-12;
    if (bad) return Expected<Spinor<T>>::failure("no j-real combination found");
    return phi;
  }

 private:
  void build_basis() {
    basis_.resize(dim_);
    index_of_.assign(dim_, 0);
    std::vector<uint32_t> masks(dim_);
    for (int m = 0; m < dim_; ++m) masks[m] = static_cast<uint32_t>(m);
    std::sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
      int pa = std::popcount(a), pb = std::popcount(b);
      if (pa != pb) return pa < pb;
      // lexicographic on increasing index tuples
      uint32_t x = a, y = b;
      while (x && y) {
        int ix = std::countr_zero(x), iy = std::countr_zero(y);
        if (ix != iy) return ix < iy;
        x &= x - 1;
        y &= y - 1;
      }
      return false;
    });
    for (int i = 0; i < dim_; ++i) {
      basis_[i] = masks[i];
      index_of_[masks[i]] = i;
    }
  }

  // -2 iota_{e_i^{10}} and (1/2) u^i ^ . on the monomial basis.
  Op interior_op(int i) const {
    Op m(dim_, dim_);
    const T minus_two = Backend<T>::from_long(-2);
    for (int col = 0; col < dim_; ++col) {
      uint32_t mask = basis_[col];
      if (!(mask & (1u << i))) continue;
      int before = std::popcount(mask & ((1u << i) - 1));
      T v = (before & 1) ? -minus_two : minus_two;
      m.at(index_of_[mask & ~(1u << i)], col) = C(v);
    }
    return m;
  }
  Op wedge_op(int i) const {
    Op m(dim_, dim_);
    const T half = from_rational<T>(rat(1, 2));
    for (int col = 0; col < dim_; ++col) {
      uint32_t mask = basis_[col];
      if (mask & (1u << i)) continue;
      int before = std::popcount(mask & ((1u << i) - 1));
      T v = (before & 1) ? -half : half;
      m.at(index_of_[mask | (1u << i)], col) = C(v);
    }
    return m;
  }

  void build_generators() {
    const int n = fs_.n;
    gen_.reserve(fs_.dim());
    std::vector<Op> io, wo;
    for (int i = 0; i < n; ++i) {
      io.push_back(interior_op(i));
      wo.push_back(wedge_op(i));
    }
    for (int i = 0; i < n; ++i) gen_.push_back(io[i] + wo[i]);
    for (int i = 0; i < n; ++i) {
      Op m = io[i] - wo[i];
      gen_.push_back(C::i() * m);
    }
    // vol_2n = (-1)^{n(n+1)/2} i^n e_1 ... e_2n
    Op vol = gen_[0];
    for (int a = 1; a < 2 * n; ++a) vol = vol * gen_[a];
    C phase(Backend<T>::from_long((n * (n + 1) / 2) % 2 == 1 ? -1 : 1));
    for (int k = 0; k < n; ++k) phase *= C::i();
    vol2n_ = phase * vol;
    // xi acts as i^{(eps+1)/2} vol_2n
    gen_.push_back(fs_.epsilon == 1 ? C::i() * vol2n_ : vol2n_);
  }

  Op monomial_op(uint32_t mask) const {
    Op m = Op::identity(dim_);
    bool first = true;
    for (uint32_t bits = mask; bits; bits &= bits - 1) {
      int a = std::countr_zero(bits);
      m = first ? gen_[a] : m * gen_[a];
      first = false;
    }
    return m;
  }

  FrameSpace fs_;
  int dim_;
  std::vector<uint32_t> basis_;
  std::vector<int> index_of_;
  std::vector<Op> gen_;
  Op vol2n_;
};

}  // namespace skv

#endif
