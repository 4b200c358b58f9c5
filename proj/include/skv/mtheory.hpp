#ifndef SKV_MTHEORY_HPP
#define SKV_MTHEORY_HPP

#include "skv/sasaki.hpp"

namespace skv {

/// Flux four-form F = lambda pi*omega^2; closed by construction and
/// annihilated by iota_xi.
template <class T>
struct FluxAnsatz {
  T lambda{};
  ModelForm<T> F;

  static FluxAnsatz make(const FrameSpace& fs, const T& lambda) {
    FluxAnsatz f;
    f.lambda = lambda;
    f.F = lambda * wedge_power(kahler_form<T>(fs.n), 2);
    return f;
  }
};

/// Constants of the corrected spinor connection.
template <class T>
struct ConnectionConstants {
  T beta{};
  T mu1{};
  T mu2{};
};

/// The printed constants, exact. beta = (105/6688)(sqrt6/3 + 3/4),
/// mu1 = 1 - (1 + 489 sqrt6)/1200, mu2 = (1/12)(sqrt3-sqrt2)/(3 sqrt3 + 4 sqrt2).
inline QuadScalar paper_beta() {
  return QuadScalar(rat(105, 6688)) *
         (QuadScalar(rat(1, 3)) * QuadScalar::sqrt6() + QuadScalar(rat(3, 4)));
}
inline QuadScalar paper_mu1() {
  return QuadScalar(1) -
         (QuadScalar(1) + QuadScalar(489) * QuadScalar::sqrt6()) * QuadScalar(rat(1, 1200));
}
inline QuadScalar paper_mu2() {
  QuadScalar num = QuadScalar::sqrt3() - QuadScalar::sqrt2();
  QuadScalar den = QuadScalar(3) * QuadScalar::sqrt3() + QuadScalar(4) * QuadScalar::sqrt2();
  return QuadScalar(rat(1, 12)) * num / den;
}

/// lambda with lambda^2 = -6 eps/(n-1). Fails with "no real solution"
/// for eps = +1 (the Lorentzian-necessity statement) and with "not
/// representable" when the root leaves Q(sqrt2,sqrt3).
inline Expected<QuadScalar> solve_lambda(int n, int eps) {
  if (n < 2) return Expected<QuadScalar>::failure("n must be at least 2");
  Rational lam_sq = Rational(-6 * eps) / (n - 1);
  auto root = QuadScalar::sqrt_of_rational(lam_sq);
  if (!root && sgn(lam_sq) < 0)
    return Expected<QuadScalar>::failure(
        "no real solution: the metric must be Lorentzian");
  return root;
}

/// Einstein residual Ric(X,Y) - 1/2 g(i_X F, i_Y F) + 1/6 g(X,Y) g(F,F)
/// on all frame pairs. Only lambda^2 enters, so the flux is passed by its
/// square and n = 6 (root outside the field) still works exactly.
template <class T>
Matrix<T> einstein_residual_sq(const SasakiModel<T>& m, const T& lambda_sq) {
  const FrameSpace& fs = m.frame();
  ModelForm<T> w2 = wedge_power(kahler_form<T>(fs.n), 2);
  T g_w2 = inner(fs, w2, w2);
  std::vector<ModelForm<T>> contr;
  contr.reserve(fs.dim());
  for (int a = 0; a < fs.dim(); ++a)
    contr.push_back(interior(fs, FrameVector<T>::basis(fs.dim(), a), w2));
  Matrix<T> res = m.ricci_closed();
  const T half = from_rational<T>(rat(1, 2));
  const T sixth = from_rational<T>(rat(1, 6));
  for (int a = 0; a < fs.dim(); ++a)
    for (int b = 0; b < fs.dim(); ++b) {
      T quad = half * inner(fs, contr[a], contr[b]);
      if (a == b) {
        T gg = sixth * g_w2;
        quad -= fs.metric_sign(a) < 0 ? -gg : gg;
      }
      res.at(a, b) -= lambda_sq * quad;
    }
  return res;
}

template <class T>
Matrix<T> einstein_residual(const SasakiModel<T>& m, const FluxAnsatz<T>& f) {
  return einstein_residual_sq(m, f.lambda * f.lambda);
}

/// d star F + 1/2 F ^ F; nonzero at the Einstein point.
template <class T>
ModelForm<T> maxwell_residual(const FrameSpace& fs, const FluxAnsatz<T>& f) {
  ModelForm<T> lhs = model_d(hodge(fs, f.F));
  ModelForm<T> ff = wedge(f.F, f.F);
  ff.scale(from_rational<T>(rat(1, 2)));
  return lhs + ff;
}

enum class MTracePath { wedge, permutation, closed };

/// Trace forms of the full (2n+1)-curvature. The closed path combines
/// the base invariants:
///   Tr R^2 = pi*( Tr R_h^2 - 4/3 rho1 ^ omega - 8 omega^2 )
///   Tr R^4 = pi*( Tr R_h^4 - 2/7 rho2 ^ omega - 2/35 Tr R_h^2 ^ omega^2
///                 + 8/315 rho1 ^ omega^3 + 8/105 omega^4 ).
template <class T>
ModelForm<T> trace_form_on_m(const SasakiModel<T>& m, int k,
                             MTracePath path = MTracePath::wedge) {
  if (path == MTracePath::closed) {
    const int n = m.frame().n;
    ModelForm<T> w = kahler_form<T>(n);
    const KahlerCurvature<T>& base = m.base();
    if (k == 1) {
      ModelForm<T> out = trace_form(base, 1);
      out += from_rational<T>(rat(-4, 3)) * wedge(rho1_from_ricci(base), w);
      out += from_rational<T>(rat(-8, 1)) * wedge_power(w, 2);
      return out;
    }
    ModelForm<T> out = trace_form(base, 2);
    out += from_rational<T>(rat(-2, 7)) * wedge(rho2(base), w);
    out += from_rational<T>(rat(-2, 35)) * wedge(trace_form(base, 1), wedge_power(w, 2));
    out += from_rational<T>(rat(8, 315)) * wedge(rho1_from_ricci(base), wedge_power(w, 3));
    out += from_rational<T>(rat(8, 105)) * wedge_power(w, 4);
    return out;
  }
  auto ops = m.curvature_ops();
  return path == MTracePath::permutation ? alt_trace_form_perm(ops, 2 * k, nullptr)
                                         : alt_trace_form_wedge(ops, 2 * k);
}

template <class T>
struct PFormResult {
  ModelForm<T> p;          // 4 Tr R^4 - (Tr R^2)^2
  bool identity_exact = false;  // 64 pi^4 (p1^2 - 4 p2) matches it
  double identity_residual = 0.0;
};

/// Pontryagin combination p(M,g). The 1/8pi^2 and 1/128pi^4 weights are
/// carried as a formal pi^2 unit, so p1 and p2 stay exact; the unit
/// cancels in 64 pi^4 (p1^2 - 4 p2), which is compared against
/// 4 Tr R^4 - (Tr R^2)^2 computed without ever forming p1, p2.
template <class T>
PFormResult<T> p_form(const SasakiModel<T>& m,
                      MTracePath path = MTracePath::wedge) {
  ModelForm<T> tr2 = trace_form_on_m(m, 1, path);
  ModelForm<T> tr4 = trace_form_on_m(m, 2, path);

  // p1 = -1/8 Tr R^2 at pi-power -2; p2 = 1/128 ((Tr R^2)^2 - 2 Tr R^4)
  // at pi-power -4.
  ModelForm<T> p1 = from_rational<T>(rat(-1, 8)) * tr2;
  ModelForm<T> tr2sq = wedge(tr2, tr2);
  ModelForm<T> p2 = from_rational<T>(rat(1, 128)) * (tr2sq - (from_rational<T>(rat(2, 1)) * tr4));
  // 64 pi^4 (p1 ^ p1 - 4 p2): pi-powers -2-2 and -4 cancel against pi^4.
  ModelForm<T> combo = from_rational<T>(rat(64, 1)) *
                       (wedge(p1, p1) - (from_rational<T>(rat(4, 1)) * p2));

  PFormResult<T> out;
  out.p = (from_rational<T>(rat(4, 1)) * tr4) - tr2sq;
  ModelForm<T> diff = combo - out.p;
  out.identity_exact = diff.is_zero();
  out.identity_residual = diff.max_abs();
  return out;
}

/// Residual of the corrected flux equation d star F + 1/2 F^F = -beta p.
template <class T>
ModelForm<T> corrected_maxwell_residual(const SasakiModel<T>& m,
                                        const FluxAnsatz<T>& f, const T& beta,
                                        const ModelForm<T>& p) {
  ModelForm<T> res = maxwell_residual(m.frame(), f);
  res += beta * p;
  return res;
}

template <class T>
struct BetaSolution {
  T beta{};
  bool nonnegative = false;
};

/// The unique beta with d star F + 1/2 F^F + beta p = 0, when the two
/// sides are proportional; admissibility failures surface as
/// non-proportional forms.
template <class T>
Expected<BetaSolution<T>> solve_beta(const SasakiModel<T>& m,
                                     const FluxAnsatz<T>& f,
                                     const ModelForm<T>& p) {
  ModelForm<T> lhs = maxwell_residual(m.frame(), f);
  if (p.is_zero()) {
    if (lhs.is_zero())
      return BetaSolution<T>{T{}, true};
    return Expected<BetaSolution<T>>::failure(
        "correction form vanishes but the flux equation residual does not");
  }
  // beta = -lhs_c / p_c on some nonvanishing component of p.
  T beta{};
  bool found = false;
  for (const auto& [mask, c] : p.base_part()) {
    T l = lhs.base_coeff(mask);
    beta = -(l / c);
    found = true;
    break;
  }
  if (!found)
    for (const auto& [mask, c] : p.eta_part()) {
      T l = lhs.eta_coeff(mask);
      beta = -(l / c);
      found = true;
      break;
    }
  ModelForm<T> residual = lhs + beta * p;
  bool bad = Backend<T>::exact ? !residual.is_zero() : residual.max_abs() > 1e-9;
  if (bad)
    return Expected<BetaSolution<T>>::failure(
        "flux equation residual is not proportional to the correction form");
  BetaSolution<T> sol;
  sol.beta = beta;
  if constexpr (Backend<T>::exact)
    sol.nonnegative = beta.sign() >= 0;
  else
    sol.nonnegative = to_double(beta) >= 0.0;
  return sol;
}

/// Supergravity spinor derivative
/// nabla^o_a phi = nabla_a phi + i (1/6 iota_a F + 1/12 e_a^flat ^ F) . phi.
template <class T>
Spinor<T> nabla_o(const SpinorModule<T>& sm, const SasakiModel<T>& m,
                  const FluxAnsatz<T>& f, int a, const Spinor<T>& phi) {
  const FrameSpace& fs = m.frame();
  Spinor<T> out = m.spinor_cov_deriv(sm, a, phi);
  FrameVector<T> ea = FrameVector<T>::basis(fs.dim(), a);
  ModelForm<T> term = from_rational<T>(rat(1, 6)) * interior(fs, ea, f.F);
  term += from_rational<T>(rat(1, 12)) * wedge(flat(fs, ea), f.F);
  Spinor<T> corr = apply(sm.act_form(term), phi);
  out += Complex<T>::i() * corr;
  return out;
}

/// First-order corrected derivative
/// nabla^beta_a phi = nabla^o_a phi + i beta (mu1 iota_a p + mu2 e_a^flat ^ p) . phi.
template <class T>
Spinor<T> nabla_beta(const SpinorModule<T>& sm, const SasakiModel<T>& m,
                     const FluxAnsatz<T>& f, const ConnectionConstants<T>& cc,
                     const ModelForm<T>& p, int a, const Spinor<T>& phi) {
  const FrameSpace& fs = m.frame();
  Spinor<T> out = nabla_o(sm, m, f, a, phi);
  FrameVector<T> ea = FrameVector<T>::basis(fs.dim(), a);
  ModelForm<T> term = cc.mu1 * interior(fs, ea, p);
  term += cc.mu2 * wedge(flat(fs, ea), p);
  Spinor<T> corr = apply(sm.act_form(term), phi);
  out += (Complex<T>::i() * Complex<T>(cc.beta)) * corr;
  return out;
}

template <class T>
struct MuSolution {
  T mu1{};
  T mu2{};
  bool consistent = false;       // solved constants kill all residuals
  double residual_solved = 0.0;  // max residual over directions and phi+-
};

namespace detail {

/// Solve r0 + t * slope = 0 for a real scalar t, requiring the full
/// spinor equation to admit one consistent solution.
template <class T>
Expected<T> solve_linear_spinor(const Spinor<T>& r0, const Spinor<T>& slope) {
  for (int i = 0; i < slope.dim(); ++i) {
    if (slope.c[i].is_zero()) continue;
    Complex<T> t = -(r0.c[i] / slope.c[i]);
    bool imag = Backend<T>::exact ? !skv::is_zero(t.im)
                                  : std::abs(to_double(t.im)) > 1e-12;
    if (imag) return Expected<T>::failure("solution is not real");
    return t.re;
  }
  return Expected<T>::failure("degenerate linear system: zero slope");
}

}  // namespace detail

/// Re-derive (mu1, mu2) from the two cancellation conditions: the Reeb
/// direction pins mu2, a horizontal direction then pins mu1. The
/// residual of nabla^beta is affine in the constants, so slopes come
/// from evaluations at unit constants; nothing is assumed about the
/// printed values.
template <class T>
Expected<MuSolution<T>> solve_mu_constants(const SpinorModule<T>& sm,
                                           const SasakiModel<T>& m,
                                           const FluxAnsatz<T>& f, const T& beta,
                                           const ModelForm<T>& p) {
  const int xi = m.frame().xi();
  Spinor<T> phip = sm.phi_plus();
  auto residual = [&](int dir, const T& mu1, const T& mu2, const Spinor<T>& phi) {
    ConnectionConstants<T> cc{beta, mu1, mu2};
    return nabla_beta(sm, m, f, cc, p, dir, phi);
  };
  const T zero{}, one = Backend<T>::from_long(1);

  // Reeb direction: mu1 enters through iota_xi p = 0, so only mu2 acts.
  Spinor<T> r0 = residual(xi, zero, zero, phip);
  Spinor<T> slope2 = residual(xi, zero, one, phip) - r0;
  auto mu2 = detail::solve_linear_spinor(r0, slope2);
  if (!mu2) return Expected<MuSolution<T>>::failure("mu2: " + mu2.error());

  // Horizontal direction with mu2 fixed.
  Spinor<T> h0 = residual(0, zero, *mu2, phip);
  Spinor<T> slope1 = residual(0, one, *mu2, phip) - h0;
  auto mu1 = detail::solve_linear_spinor(h0, slope1);
  if (!mu1) return Expected<MuSolution<T>>::failure("mu1: " + mu1.error());

  MuSolution<T> sol;
  sol.mu1 = *mu1;
  sol.mu2 = *mu2;
  sol.consistent = true;
  for (const Spinor<T>& phi : {sm.phi_plus(), sm.phi_minus()})
    for (int dir = 0; dir < m.dim(); ++dir) {
      Spinor<T> r = residual(dir, *mu1, *mu2, phi);
      if (!r.is_zero()) sol.consistent = false;
      sol.residual_solved = std::max(sol.residual_solved, r.max_abs());
    }
  if constexpr (!Backend<T>::exact)
    sol.consistent = sol.residual_solved <= 1e-9;
  return sol;
}

template <class T>
struct SusyReport {
  bool ok = false;                   // nonzero, j-real and parallel
  bool combination_found = false;
  double j_residual = 0.0;           // of j(phi) - phi
  double parallel_residual = 0.0;    // of nabla^beta phi over all directions
  bool parallel_exact = false;
  std::string error;
};

/// Builds the pseudo-Majorana combination of the Weyl representatives and
/// checks that it stays parallel for the corrected connection.
template <class T>
SusyReport<T> susy_verify(const SpinorModule<T>& sm, const SasakiModel<T>& m,
                          const FluxAnsatz<T>& f, const ConnectionConstants<T>& cc,
                          const ModelForm<T>& p) {
  SusyReport<T> rep;
  auto combo = sm.pseudo_majorana_combination(sm.phi_plus(), sm.phi_minus());
  if (!combo) {
    rep.error = combo.error();
    return rep;
  }
  rep.combination_found = true;
  Spinor<T> phi = *combo;
  Spinor<T> jres = sm.apply_antilinear(sm.j_matrix(), phi) - phi;
  rep.j_residual = jres.max_abs();
  bool exact = jres.is_zero();
  bool parallel = true;
  for (int a = 0; a < m.dim(); ++a) {
    Spinor<T> r = nabla_beta(sm, m, f, cc, p, a, phi);
    if (!r.is_zero()) parallel = false;
    rep.parallel_residual = std::max(rep.parallel_residual, r.max_abs());
  }
  rep.parallel_exact = parallel;
  if constexpr (Backend<T>::exact)
    rep.ok = !phi.is_zero() && exact && parallel;
  else
    rep.ok = !phi.is_zero() && rep.j_residual <= 1e-9 && rep.parallel_residual <= 1e-9;
  return rep;
}

}  // namespace skv

#endif
