#include <doctest.h>

#include <random>

#include "skv/forms.hpp"
#include "skv/json_io.hpp"

using namespace skv;
using Form = ModelForm<QuadScalar>;
using Vec = FrameVector<QuadScalar>;

namespace {

const FrameSpace kLor(5, -1);

Form random_form(std::mt19937_64& rng, int n, int deg) {
  Form f(n, deg);
  const int n2 = 2 * n;
  auto random_mask = [&](int len) {
    uint32_t mask = 0;
    while (std::popcount(mask) < len) mask |= 1u << (rng() % n2);
    return mask;
  };
  auto random_coeff = [&]() {
    return QuadScalar(rat(static_cast<long>(rng() % 11) - 5, 1 + rng() % 3));
  };
  for (int t = 0; t < 6 && deg <= n2; ++t) f.add_base(random_mask(deg), random_coeff());
  if (deg >= 1)
    for (int t = 0; t < 6 && deg - 1 <= n2; ++t)
      f.add_eta(random_mask(deg - 1), random_coeff());
  return f;
}

Vec random_vector(std::mt19937_64& rng, const FrameSpace& fs) {
  Vec v(fs.dim());
  for (int a = 0; a < fs.dim(); ++a)
    v.c[a] = QuadScalar(rat(static_cast<long>(rng() % 9) - 4, 1 + rng() % 2));
  return v;
}

// Independent base Hodge star on the positive-definite 2n-space with
// volume e^1 ^ .. ^ e^{2n}; used as the oracle for the model relations.
Form base_hodge(int n, const Form& a) {
  REQUIRE(a.eta_part().empty());
  const uint32_t full = (1u << (2 * n)) - 1;
  Form r(n, 2 * n - a.deg());
  for (const auto& [mask, c] : a.base_part()) {
    uint32_t comp = full & ~mask;
    int s = merge_sign(mask, comp);
    r.add_base(comp, s < 0 ? -c : c);
  }
  return r;
}

}  // namespace

TEST_SUITE_BEGIN("forms");

TEST_CASE("omega^2 has pairing norm 2n(n-1) = 40") {
  Form w = kahler_form<QuadScalar>(5);
  Form w2 = wedge(w, w);
  CHECK(inner(kLor, w2, w2) == QuadScalar(40));
  // same in the Riemannian frame: pure pullback forms ignore epsilon
  CHECK(inner(FrameSpace(5, 1), w2, w2) == QuadScalar(40));
}

TEST_CASE("eta ^ pi*omega^5 ^ eta vanishes") {
  Form w5 = wedge_power(kahler_form<QuadScalar>(5), 5);
  Form e = eta_form<QuadScalar>(5);
  CHECK(wedge(wedge(e, w5), e).is_zero());
  CHECK(!wedge(e, w5).is_zero());
}

TEST_CASE("F ^ F at lambda = sqrt6/2 is (3/2) omega^4") {
  QuadScalar lambda(0, 0, 0, rat(1, 2));
  Form f = lambda * wedge_power(kahler_form<QuadScalar>(5), 2);
  Form expect = QuadScalar(rat(3, 2)) * wedge_power(kahler_form<QuadScalar>(5), 4);
  CHECK(wedge(f, f) == expect);
}

TEST_CASE("wedge degree overflow collapses to the zero form") {
  Form w5 = wedge_power(kahler_form<QuadScalar>(5), 5);
  Form top = wedge(eta_form<QuadScalar>(5), w5);  // degree 11
  CHECK(wedge(top, kahler_form<QuadScalar>(5)).is_zero());
}

TEST_CASE("interior product basics") {
  Form w = kahler_form<QuadScalar>(5);
  QuadScalar lambda(0, 0, 0, rat(1, 2));
  Form f = lambda * wedge(w, w);

  Vec xi = Vec::basis(11, kLor.xi());
  CHECK(interior(kLor, xi, f).is_zero());

  // iota_{e1}(pi*omega) = e^6
  Vec e1 = Vec::basis(11, 0);
  Form want(5, 1);
  want.add_base(1u << 5, QuadScalar(1));
  CHECK(interior(kLor, e1, w) == want);

  // g(iota_U F, iota_U F) = 4(n-1) lambda^2 = 24 at lambda^2 = 3/2
  Form iuf = interior(kLor, e1, f);
  CHECK(inner(kLor, iuf, iuf) == QuadScalar(24));

  // iota_xi(eta ^ alpha) = alpha
  Form ea = wedge(eta_form<QuadScalar>(5), w);
  CHECK(interior(kLor, xi, ea) == w);
}

TEST_CASE("interior is an antiderivation and squares to zero") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 40; ++iter) {
    int da = 1 + static_cast<int>(rng() % 4);
    int db = static_cast<int>(rng() % 4);
    Form a = random_form(rng, 5, da);
    Form b = random_form(rng, 5, db);
    Vec x = random_vector(rng, kLor);
    Form lhs = interior(kLor, x, wedge(a, b));
    Form rhs = wedge(interior(kLor, x, a), b);
    Form second = wedge(a, interior(kLor, x, b));
    if (da % 2 == 1) second = -second;
    rhs += second;
    CHECK(lhs == rhs);
    CHECK(interior(kLor, x, interior(kLor, x, a)).is_zero());
  }
}

TEST_CASE("hodge: star(1) = -eta ^ vol_h in the Lorentzian model") {
  Form one(5, 0);
  one.add_base(0, QuadScalar(1));
  Form star1 = hodge(kLor, one);
  Form expect(5, 11);
  expect.add_eta((1u << 10) - 1, QuadScalar(-1));
  CHECK(star1 == expect);
  CHECK(star1 == volume_form<QuadScalar>(kLor));

  Form vol = volume_form<QuadScalar>(kLor);
  Form starvol = hodge(kLor, vol);
  CHECK(starvol.base_coeff(0) == QuadScalar(-1));  // eps per signature
  FrameSpace riem(5, 1);
  CHECK(hodge(riem, volume_form<QuadScalar>(riem)).base_coeff(0) == QuadScalar(1));
}

TEST_CASE("hodge: star(pi*omega^2) = -eta ^ pi*(omega^3/3)") {
  Form w = kahler_form<QuadScalar>(5);
  Form w2 = wedge(w, w);
  Form w3 = QuadScalar(rat(1, 3)) * wedge(w2, w);
  Form expect = -wedge(eta_form<QuadScalar>(5), w3);
  CHECK(hodge(kLor, w2) == expect);
}

TEST_CASE("hodge squares to +-Id, exhaustively over degrees 0..11") {
  for (int eps : {-1, 1}) {
    FrameSpace fs(5, eps);
    for (int deg = 0; deg <= 11; ++deg) {
      Form probe(5, deg);
      if (deg <= 10) probe.add_base((1u << deg) - 1, QuadScalar(1));
      if (deg >= 1) {
        // a staggered eta monomial when it fits, the low mask otherwise
        uint32_t mask = deg + 1 <= 10 ? ((1u << (deg - 1)) - 1) << 2
                                      : (1u << (deg - 1)) - 1;
        probe.add_eta(mask, QuadScalar(1));
      }
      if (probe.is_zero()) continue;
      Form twice = hodge(fs, hodge(fs, probe));
      // in odd dimension 11 the double star is eps * Id for every degree
      Form expect = QuadScalar(eps) * probe;
      CHECK(twice == expect);
    }
  }
}

TEST_CASE("hodge pairing a ^ star b = g(a,b) vol on the monomial basis") {
  const Form vol = volume_form<QuadScalar>(kLor);
  for (int deg = 0; deg <= 6; ++deg) {
    std::vector<Form> monomials;
    // all base monomials of this degree
    for (uint32_t mask = 0; mask < (1u << 10); ++mask) {
      if (std::popcount(mask) != deg) continue;
      Form m(5, deg);
      m.add_base(mask, QuadScalar(1));
      monomials.push_back(std::move(m));
    }
    // eta monomials
    if (deg >= 1)
      for (uint32_t mask = 0; mask < (1u << 10); ++mask) {
        if (std::popcount(mask) != deg - 1) continue;
        Form m(5, deg);
        m.add_eta(mask, QuadScalar(1));
        monomials.push_back(std::move(m));
      }
    for (const Form& a : monomials)
      for (const Form& b : monomials) {
        Form lhs = wedge(a, hodge(kLor, b));
        Form rhs = inner(kLor, a, b) * vol;
        CHECK(lhs == rhs);
      }
    if (deg >= 3) break;  // degrees 4..6 are covered by the spot check below
  }
  // spot check the heavy degrees on random forms
  std::mt19937_64 rng(5);
  for (int deg : {4, 5, 6})
    for (int iter = 0; iter < 10; ++iter) {
      Form a = random_form(rng, 5, deg);
      Form b = random_form(rng, 5, deg);
      CHECK(wedge(a, hodge(kLor, b)) == inner(kLor, a, b) * vol);
    }
}

TEST_CASE("pullback relation: star(pi*beta) = -(-1)^p eta ^ pi*(star_h beta)") {
  std::mt19937_64 rng(31);
  for (int p = 0; p <= 10; ++p) {
    Form beta(5, p);
    if (p == 0)
      beta.add_base(0, QuadScalar(2));
    else
      for (int t = 0; t < 5; ++t) {
        uint32_t mask = 0;
        while (std::popcount(mask) < p) mask |= 1u << (rng() % 10);
        beta.add_base(mask, QuadScalar(rat(static_cast<long>(rng() % 7) - 3, 1)));
      }
    Form lhs = hodge(kLor, beta);
    Form rhs = wedge(eta_form<QuadScalar>(5), base_hodge(5, beta));
    if (p % 2 == 0) rhs = -rhs;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("model differential") {
  Form w = kahler_form<QuadScalar>(5);
  CHECK(model_d(eta_form<QuadScalar>(5)) == QuadScalar(-2) * w);
  CHECK(model_d(wedge_power(w, 4)).is_zero());

  // d(star F) = (2/3) lambda omega^4 at F = lambda omega^2
  QuadScalar lambda(0, 0, 0, rat(1, 2));
  Form f = lambda * wedge_power(w, 2);
  Form dsf = model_d(hodge(kLor, f));
  Form expect = (QuadScalar(rat(2, 3)) * lambda) * wedge_power(w, 4);
  CHECK(dsf == expect);

  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 30; ++iter) {
    Form a = random_form(rng, 5, 1 + static_cast<int>(rng() % 6));
    CHECK(model_d(model_d(a)).is_zero());
  }
}

TEST_CASE("musical isomorphisms") {
  Vec xi = Vec::basis(11, kLor.xi());
  Form xif = flat(kLor, xi);
  CHECK(xif == -eta_form<QuadScalar>(5));

  Vec e1 = Vec::basis(11, 0);
  Form e1f(5, 1);
  e1f.add_base(1, QuadScalar(1));
  CHECK(flat(kLor, e1) == e1f);

  // (Phi(e1))^flat = -e^6 at eps = -1
  SignedIndex p = kLor.phi(0);
  Vec phie1 = Vec::basis(11, p.index, QuadScalar(p.sign));
  Form want(5, 1);
  want.add_base(1u << 5, QuadScalar(-1));
  CHECK(flat(kLor, phie1) == want);

  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 20; ++iter) {
    Vec x = random_vector(rng, kLor);
    CHECK(sharp(kLor, flat(kLor, x)) == x);
    Vec y = random_vector(rng, kLor);
    // X^flat(Y) = g(X,Y): pair the one-form against Y via interior
    Form xf = flat(kLor, x);
    Form val = interior(kLor, y, xf);
    CHECK(val.base_coeff(0) == metric_pairing(kLor, x, y));
  }
}

TEST_CASE("form JSON literal round trip") {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 20; ++iter) {
    Form a = random_form(rng, 5, static_cast<int>(rng() % 7));
    auto back = form_from_json(form_to_json(a), 5);
    REQUIRE(back.ok());
    CHECK(*back == a);
  }
  auto bad = form_from_json(json{{"deg", 2}, {"terms", {{{"idx", {6, 1}}, {"coeff", "1"}}}}}, 5);
  CHECK(!bad.ok());
}

TEST_SUITE_END();
