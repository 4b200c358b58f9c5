#include <doctest.h>

#include "skv/json_io.hpp"
#include "skv/kahler.hpp"

using namespace skv;

TEST_SUITE_BEGIN("kahler");

TEST_CASE("flat curvature validates and is admissible") {
  auto R = flat_curvature<QuadScalar>(5);
  CHECK(validate(R).pass_exact());
  auto adm = admissible(R);
  CHECK(adm.admissible);
  CHECK(adm.exact);
  CHECK(ricci(R).is_zero());
  CHECK(rho1_from_ricci(R).is_zero());
}

TEST_CASE("random generator: deterministic, valid, both backends") {
  auto r1 = random_kahler_curvature<QuadScalar>(0, 5);
  auto r2 = random_kahler_curvature<QuadScalar>(0, 5);
  const int d = r1.dim();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) CHECK(r1.at(a, b, c, e) == r2.at(a, b, c, e));
  CHECK(!r1.is_flat());
  CHECK(validate(r1).pass_exact());

  auto small = random_kahler_curvature<QuadScalar>(1, 2);
  CHECK(validate(small).pass_exact());
  CHECK(!small.is_flat());

  auto rf = random_kahler_curvature<double>(3, 5);
  CHECK(validate(rf).pass(1e-12));
  // float draw agrees with the exact draw of the same seed
  auto rq = random_kahler_curvature<QuadScalar>(3, 5);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      CHECK(rf.at(a, b, 0, 1) == doctest::Approx(to_double(rq.at(a, b, 0, 1))).epsilon(1e-14));
}

TEST_CASE("injected violation is flagged") {
  auto R = random_kahler_curvature<QuadScalar>(2, 2);
  R.at(0, 1, 2, 3) += QuadScalar(rat(1, 7));
  SymmetryReport rep = validate(R);
  bool bianchi_flagged = false;
  for (const auto& e : rep.entries)
    if (e.name == "first_bianchi" && !e.exact_zero) bianchi_flagged = true;
  CHECK(bianchi_flagged);
  CHECK(!rep.pass(1e-12));
}

TEST_CASE("the two rho1 computations agree") {
  for (uint64_t seed : {0ull, 7ull, 42ull}) {
    auto R = random_kahler_curvature<QuadScalar>(seed, 5);
    CHECK(rho1_from_ricci(R) == rho1_from_trace(R));
  }
  auto small = random_kahler_curvature<QuadScalar>(5, 2);
  CHECK(rho1_from_ricci(small) == rho1_from_trace(small));
}

TEST_CASE("constant-Einstein base: Ric = c h and rho1 = c omega") {
  for (int n : {2, 5}) {
    Rational c = rat(-7, 3);
    auto R = cp_like_curvature<QuadScalar>(n, c);
    CHECK(validate(R).pass_exact());
    Matrix<QuadScalar> ric = ricci(R);
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b)
        CHECK(ric.at(a, b) == (a == b ? QuadScalar(c) : QuadScalar()));
    ModelForm<QuadScalar> expect = QuadScalar(c) * kahler_form<QuadScalar>(n);
    CHECK(rho1_from_ricci(R) == expect);
    CHECK(!admissible(R).admissible);
  }
}

TEST_CASE("trace of rho1 against omega is half the scalar curvature") {
  // constant fixed by brute force on the small instance, then checked at n=5
  for (auto [seed, n] : {std::pair{9ull, 2}, std::pair{11ull, 5}}) {
    auto R = random_kahler_curvature<QuadScalar>(seed, n);
    ModelForm<QuadScalar> rho = rho1_from_ricci(R);
    QuadScalar pair{};
    ModelForm<QuadScalar> w = kahler_form<QuadScalar>(n);
    for (const auto& [mask, c] : rho.base_part()) {
      QuadScalar wc = w.base_coeff(mask);
      if (!wc.is_zero()) pair += c * wc;
    }
    CHECK(QuadScalar(2) * pair == scalar_curvature(R));
  }
}

TEST_CASE("trace-form paths agree exactly: permutation vs wedge") {
  for (auto [seed, n] : {std::pair{1ull, 2}, std::pair{4ull, 5}}) {
    auto R = random_kahler_curvature<QuadScalar>(seed, n);
    CHECK(trace_form(R, 1, TracePath::permutation) == trace_form(R, 1, TracePath::wedge));
    if (n >= 3)
      CHECK(rho2(R, TracePath::permutation) == rho2(R, TracePath::wedge));
  }
  // the heavy 8-form case, exact, on the full-size base
  auto R5 = random_kahler_curvature<QuadScalar>(4, 5);
  CHECK(trace_form(R5, 2, TracePath::permutation) == trace_form(R5, 2, TracePath::wedge));
  auto r2p = rho2(R5, TracePath::permutation);
  CHECK(r2p == rho2(R5, TracePath::wedge));
  CHECK(!r2p.is_zero());
}

TEST_CASE("reduced permutation sum matches the literal full sum") {
  // Tr R^2 at n=2: all S_4 permutations, exact
  auto R = random_kahler_curvature<QuadScalar>(6, 2);
  auto ops = R.curvature_ops();
  ModelForm<QuadScalar> t2 = trace_form(R, 1, TracePath::permutation);
  CHECK(alt_trace_component_full(ops, 2, nullptr, {0, 1, 2, 3}) ==
        t2.base_coeff(0b1111));

  // rho2 at n=3: all S_6 permutations with the J prefix, exact
  auto R3 = random_kahler_curvature<QuadScalar>(8, 3);
  auto ops3 = R3.curvature_ops();
  Matrix<QuadScalar> j3 = R3.J_matrix();
  ModelForm<QuadScalar> r2 = rho2(R3, TracePath::permutation);
  CHECK(alt_trace_component_full(ops3, 3, &j3, {0, 1, 2, 3, 4, 5}) ==
        r2.base_coeff(0b111111));

  // Tr R^4 in the float backend: one full S_8 sum on an 8-tuple, n=5
  auto Rf = random_kahler_curvature<double>(4, 5);
  auto opsf = Rf.curvature_ops();
  ModelForm<double> t4 = trace_form(Rf, 2, TracePath::permutation);
  std::vector<int> tuple = {0, 1, 2, 3, 5, 6, 7, 8};
  uint32_t mask = 0;
  for (int i : tuple) mask |= 1u << i;
  double full = alt_trace_component_full(opsf, 4, nullptr, tuple);
  CHECK(t4.base_coeff(mask) == doctest::Approx(full).epsilon(1e-9));
}

TEST_CASE("J-invariance of the derived forms") {
  auto R = random_kahler_curvature<QuadScalar>(13, 5);
  ModelForm<QuadScalar> rho = rho1_from_ricci(R);
  // rho1(J e_a, J e_b) = rho1(e_a, e_b)
  for (int a = 0; a < 10; ++a)
    for (int b = a + 1; b < 10; ++b) {
      SignedIndex ja = R.J(a), jb = R.J(b);
      uint32_t m1 = (1u << a) | (1u << b);
      uint32_t m2 = (1u << ja.index) | (1u << jb.index);
      QuadScalar lhs = rho.base_coeff(m1);
      int order = ja.index < jb.index ? 1 : -1;
      QuadScalar rhs = rho.base_coeff(m2);
      if (ja.sign * jb.sign * order < 0) rhs = -rhs;
      CHECK(lhs == rhs);
    }
}

TEST_CASE("curvature JSON loader symmetrises and rejects conflicts") {
  auto R = random_kahler_curvature<QuadScalar>(21, 2);
  auto back = curvature_from_json(curvature_to_json(R));
  REQUIRE(back.ok());
  const int d = R.dim();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) CHECK(back->at(a, b, c, e) == R.at(a, b, c, e));

  json good = {{"n", 2},
               {"components", {{{"idx", {1, 2, 1, 2}}, {"value", "3/2"}}}}};
  auto g = curvature_from_json(good);
  REQUIRE(g.ok());
  CHECK(g->at(1, 0, 0, 1) == QuadScalar(rat(3, 2)));  // orbit image

  json bad = {{"n", 2},
              {"components",
               {{{"idx", {1, 2, 1, 2}}, {"value", "3/2"}},
                {{"idx", {2, 1, 1, 2}}, {"value", "3/2"}}}}};
  CHECK(!curvature_from_json(bad).ok());
}

TEST_SUITE_END();
