#ifndef SKV_TRACEFORMS_HPP
#define SKV_TRACEFORMS_HPP

#include <algorithm>
#include <type_traits>
#include <functional>
#include <map>
#include <vector>

#include "skv/forms.hpp"
#include "skv/rational.hpp"

namespace skv {

/// Curvature endomorphisms R(e_a, e_b), a < b, over a frame of size dim.
/// If xi >= 0 that label is the Reeb direction of the ambient model and
/// output forms acquire eta parts; otherwise all labels are horizontal
/// base directions (dim = 2n) and outputs are pullback forms.
template <class T>
struct CurvatureOps {
  int model_n = 0;  // complex dimension n of the underlying model
  int dim = 0;      // number of frame labels
  int xi = -1;      // index of the Reeb label, or -1
  std::vector<Matrix<T>> ops;  // indexed by pair_index(a,b), a < b

  int pair_index(int a, int b) const { return a * dim + b; }
  void set(int a, int b, Matrix<T> m) { ops[pair_index(a, b)] = std::move(m); }
  const Matrix<T>& op(int a, int b) const { return ops[pair_index(a, b)]; }

  static CurvatureOps make(int model_n, int dim, int xi) {
    CurvatureOps c;
    c.model_n = model_n;
    c.dim = dim;
    c.xi = xi;
    c.ops.assign(static_cast<size_t>(dim) * dim, Matrix<T>());
    return c;
  }
};

namespace detail {

inline int inversion_sign(const std::vector<int>& seq) {
  int inv = 0;
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  return (inv & 1) ? -1 : 1;
}

inline void for_each_tuple(int dim, int len,
                           const std::function<void(const std::vector<int>&)>& fn) {
  if (len > dim) return;
  std::vector<int> t(len);
  for (int i = 0; i < len; ++i) t[i] = i;
  while (true) {
    fn(t);
    int i = len - 1;
    while (i >= 0 && t[i] == dim - len + i) --i;
    if (i < 0) break;
    ++t[i];
    for (int j = i + 1; j < len; ++j) t[j] = t[j - 1] + 1;
  }
}

/// Adds component `value` for the ascending frame tuple to a form,
/// routing xi-carrying tuples to the eta part. Stored monomials put eta
/// first while the tuple lists xi last, hence the parity factor.
template <class T>
void add_component(ModelForm<T>& form, const std::vector<int>& tuple, int xi,
                   const T& value) {
  if (skv::is_zero(value)) return;
  uint32_t mask = 0;
  bool has_xi = false;
  for (int a : tuple) {
    if (a == xi) has_xi = true;
    else mask |= 1u << a;
  }
  if (!has_xi) {
    form.add_base(mask, value);
  } else {
    int d = static_cast<int>(tuple.size());
    form.add_eta(mask, ((d - 1) & 1) ? -value : value);
  }
}

}  // namespace detail

/// Literal alternating trace over the full symmetric group on one tuple:
/// 1/(2m)! sum_sigma eps(sigma) Tr(P R(s1,s2)...R(s_{2m-1},s_{2m})).
/// Exponential cost; meant for cross-checks on single tuples.
template <class T>
T alt_trace_component_full(const CurvatureOps<T>& R, int m,
                           std::type_identity_t<const Matrix<T>*> prefix,
                           std::vector<int> tuple) {
  std::sort(tuple.begin(), tuple.end());
  const int len = 2 * m;
  std::vector<int> perm(len);
  for (int i = 0; i < len; ++i) perm[i] = i;
  T total{};
  do {
    std::vector<int> seq(len);
    for (int i = 0; i < len; ++i) seq[i] = tuple[perm[i]];
    int sign = detail::inversion_sign(seq);
    Matrix<T> prod = prefix ? *prefix : Matrix<T>::identity(R.op(0, 1).rows());
    bool zero = false;
    for (int f = 0; f + 1 < len; f += 2) {
      int a = seq[f], b = seq[f + 1];
      Matrix<T> factor = a < b ? R.op(a, b) : -R.op(b, a);
      prod = prod * factor;
      if (prod.is_zero()) {
        zero = true;
        break;
      }
    }
    if (zero) continue;
    T tr = prod.trace();
    total += sign < 0 ? -tr : tr;
  } while (std::next_permutation(perm.begin(), perm.end()));
  Rational pref(1);
  for (int i = 2; i <= len; ++i) pref *= i;
  return total * from_rational<T>(1 / pref);
}

/// Permutation-sum path for 1/(2m)! sum_sigma eps(sigma) Tr(P R..R).
/// Swapping the two slots of one factor flips both eps(sigma) and the
/// factor, so the 2^m intra-pair orderings contribute equally and the
/// sum runs over ordered sequences of disjoint ascending pairs. Without
/// a prefix the trace is cyclic in the m factors, so sequences are
/// further grouped by anchoring the first pair at the minimal label.
template <class T>
ModelForm<T> alt_trace_form_perm(const CurvatureOps<T>& R, int m,
                                 std::type_identity_t<const Matrix<T>*> prefix) {
  const int len = 2 * m;
  ModelForm<T> out(R.model_n, len);
  if (len > R.dim) return out;
  const bool cyclic = prefix == nullptr && m >= 2;

  Rational scale = 1;
  for (int i = 0; i < m; ++i) scale *= 2;
  if (cyclic) scale *= m;
  Rational fact = 1;
  for (int i = 2; i <= len; ++i) fact *= i;
  const T overall = from_rational<T>(scale / fact);

  std::map<std::pair<int, int>, Matrix<T>> prod2;  // per-tuple product cache

  detail::for_each_tuple(R.dim, len, [&](const std::vector<int>& tuple) {
    prod2.clear();
    auto pair_product = [&](int pa, int pb) -> const Matrix<T>& {
      auto key = std::make_pair(pa, pb);
      auto it = prod2.find(key);
      if (it == prod2.end()) {
        it = prod2
                 .emplace(key, R.op(pa / R.dim, pa % R.dim) *
                                   R.op(pb / R.dim, pb % R.dim))
                 .first;
      }
      return it->second;
    };
    auto factor = [&](int p) -> const Matrix<T>& {
      return R.op(p / R.dim, p % R.dim);
    };

    T total{};
    std::vector<int> pairs;
    std::vector<int> seq;
    std::vector<char> used(len, 0);

    std::function<void()> recurse = [&]() {
      if (static_cast<int>(pairs.size()) == m) {
        int sign = detail::inversion_sign(seq);
        T tr{};
        if (m == 1) {
          tr = prefix ? prefix->trace_product(factor(pairs[0]))
                      : factor(pairs[0]).trace();
        } else if (m == 2) {
          if (prefix)
            tr = (*prefix * factor(pairs[0])).trace_product(factor(pairs[1]));
          else
            tr = factor(pairs[0]).trace_product(factor(pairs[1]));
        } else if (m == 3) {
          Matrix<T> head = prefix ? (*prefix * factor(pairs[0]))
                                  : factor(pairs[0]);
          tr = head.trace_product(pair_product(pairs[1], pairs[2]));
        } else {  // m == 4
          if (prefix)
            tr = (*prefix * pair_product(pairs[0], pairs[1]))
                     .trace_product(pair_product(pairs[2], pairs[3]));
          else
            tr = pair_product(pairs[0], pairs[1])
                     .trace_product(pair_product(pairs[2], pairs[3]));
        }
        total += sign < 0 ? -tr : tr;
        return;
      }
      const bool anchor_min = cyclic && pairs.empty();
      for (int first = 0; first < len; ++first) {
        if (used[first]) continue;
        for (int second = first + 1; second < len; ++second) {
          if (used[second]) continue;
          used[first] = used[second] = 1;
          pairs.push_back(tuple[first] * R.dim + tuple[second]);
          seq.push_back(tuple[first]);
          seq.push_back(tuple[second]);
          recurse();
          seq.pop_back();
          seq.pop_back();
          pairs.pop_back();
          used[first] = used[second] = 0;
        }
        if (anchor_min) break;  // first factor pinned to the minimal label
      }
    };
    recurse();
    detail::add_component(out, tuple, R.xi, total * overall);
  });
  return out;
}

/// Wedge path: the same alternating trace computed through the exterior
/// algebra as 2^m/(2m)! Tr(P o Omega^{^m}), with Omega the curvature
/// two-form matrix (Omega^a_b)(e_p,e_q) = [R(e_p,e_q)]^a_b.
template <class T>
ModelForm<T> alt_trace_form_wedge(const CurvatureOps<T>& R, int m,
                                  std::type_identity_t<const Matrix<T>*> prefix = nullptr) {
  const int n = R.model_n;
  using FormMat = std::vector<std::vector<ModelForm<T>>>;
  FormMat omega(R.dim, std::vector<ModelForm<T>>(R.dim, ModelForm<T>(n, 2)));
  for (int p = 0; p < R.dim; ++p)
    for (int q = p + 1; q < R.dim; ++q) {
      const Matrix<T>& rm = R.op(p, q);
      for (int a = 0; a < R.dim; ++a)
        for (int b = 0; b < R.dim; ++b) {
          const T& v = rm.at(a, b);
          if (skv::is_zero(v)) continue;
          if (q == R.xi)
            omega[a][b].add_eta(1u << p, -v);  // e^p ^ eta = -eta ^ e^p
          else
            omega[a][b].add_base((1u << p) | (1u << q), v);
        }
    }

  // Right-multiplication by the prefix: Tr(P o M) = Tr(M P).
  auto times_prefix = [&](const FormMat& x, int deg) {
    if (!prefix) return x;
    FormMat r(R.dim, std::vector<ModelForm<T>>(R.dim, ModelForm<T>(n, deg)));
    for (int a = 0; a < R.dim; ++a)
      for (int b = 0; b < R.dim; ++b)
        for (int c = 0; c < R.dim; ++c) {
          const T& pcb = prefix->at(c, b);
          if (skv::is_zero(pcb) || x[a][c].is_zero()) continue;
          r[a][b] += pcb * x[a][c];
        }
    return r;
  };

  ModelForm<T> w(n, 2 * m);
  if (m == 1) {
    FormMat right = times_prefix(omega, 2);
    for (int a = 0; a < R.dim; ++a) w += right[a][a];
  } else if (m == 2) {
    FormMat right = times_prefix(omega, 2);
    for (int a = 0; a < R.dim; ++a)
      for (int b = 0; b < R.dim; ++b) {
        if (omega[a][b].is_zero() || right[b][a].is_zero()) continue;
        w += wedge(omega[a][b], right[b][a]);
      }
  } else {
    FormMat sq(R.dim, std::vector<ModelForm<T>>(R.dim, ModelForm<T>(n, 4)));
    for (int a = 0; a < R.dim; ++a)
      for (int c = 0; c < R.dim; ++c)
        for (int b = 0; b < R.dim; ++b) {
          if (omega[a][b].is_zero() || omega[b][c].is_zero()) continue;
          sq[a][c] += wedge(omega[a][b], omega[b][c]);
        }
    const FormMat& left = sq;
    FormMat right = times_prefix(m == 3 ? omega : sq, m == 3 ? 2 : 4);
    for (int a = 0; a < R.dim; ++a)
      for (int b = 0; b < R.dim; ++b) {
        if (left[a][b].is_zero() || right[b][a].is_zero()) continue;
        w += wedge(left[a][b], right[b][a]);
      }
  }

  Rational scale = 1;
  for (int i = 0; i < m; ++i) scale *= 2;
  Rational fact = 1;
  for (int i = 2; i <= 2 * m; ++i) fact *= i;
  w.scale(from_rational<T>(scale / fact));
  return w;
}

}  // namespace skv

#endif
