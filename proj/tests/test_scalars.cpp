#include <doctest.h>

#include <random>

#include "skv/backend.hpp"
#include "skv/quadfield.hpp"

using namespace skv;

namespace {

QuadScalar random_scalar(std::mt19937_64& rng, long range = 9) {
  auto r = [&]() {
    long num = static_cast<long>(rng() % (2 * range + 1)) - range;
    long den = 1 + static_cast<long>(rng() % 6);
    return rat(num, den);
  };
  return QuadScalar(r(), r(), r(), r());
}

}  // namespace

TEST_SUITE_BEGIN("scalars");

TEST_CASE("basis multiplication: sqrt2 * sqrt3 = sqrt6") {
  CHECK(QuadScalar::sqrt2() * QuadScalar::sqrt3() == QuadScalar::sqrt6());
  CHECK(QuadScalar::sqrt2() * QuadScalar::sqrt2() == QuadScalar(2));
  CHECK(QuadScalar::sqrt3() * QuadScalar::sqrt3() == QuadScalar(3));
  CHECK(QuadScalar::sqrt6() * QuadScalar::sqrt6() == QuadScalar(6));
  CHECK(QuadScalar::sqrt2() * QuadScalar::sqrt6() == QuadScalar(2) * QuadScalar::sqrt3());
  CHECK(QuadScalar::sqrt3() * QuadScalar::sqrt6() == QuadScalar(3) * QuadScalar::sqrt2());
}

TEST_CASE("inverse of 3 sqrt3 + 4 sqrt2 is (4 sqrt2 - 3 sqrt3)/5") {
  QuadScalar x = QuadScalar(3) * QuadScalar::sqrt3() + QuadScalar(4) * QuadScalar::sqrt2();
  QuadScalar inv = x.inverse();
  QuadScalar expected(0, rat(4, 5), rat(-3, 5), 0);
  CHECK(inv == expected);
  CHECK(x * inv == QuadScalar(1));
}

TEST_CASE("rationalisation of (1/12)(sqrt3 - sqrt2)/(3 sqrt3 + 4 sqrt2)") {
  QuadScalar num = QuadScalar::sqrt3() - QuadScalar::sqrt2();
  QuadScalar den = QuadScalar(3) * QuadScalar::sqrt3() + QuadScalar(4) * QuadScalar::sqrt2();
  QuadScalar v = QuadScalar(rat(1, 12)) * num / den;
  // lies in Q(sqrt6): (7 sqrt6 - 17)/60
  QuadScalar expected(rat(-17, 60), 0, 0, rat(7, 60));
  CHECK(v == expected);
  CHECK(v * den * QuadScalar(12) == num);
}

TEST_CASE("qf_arith reports division by zero as a value") {
  auto bad = qf_arith(QuadScalar(1), QuadScalar(), QfOp::div);
  CHECK(!bad.ok());
  CHECK(bad.error() == "division by zero");
  auto good = qf_arith(QuadScalar(1), QuadScalar(2), QfOp::div);
  CHECK(good.ok());
  CHECK(*good == QuadScalar(rat(1, 2)));
}

TEST_CASE("sqrt_of_rational") {
  auto s = QuadScalar::sqrt_of_rational(rat(3, 2));
  REQUIRE(s.ok());
  CHECK(*s == QuadScalar(0, 0, 0, rat(1, 2)));  // sqrt6 / 2
  CHECK(*s * *s == QuadScalar(rat(3, 2)));

  auto zero = QuadScalar::sqrt_of_rational(rat(0));
  REQUIRE(zero.ok());
  CHECK(zero->is_zero());

  auto five = QuadScalar::sqrt_of_rational(rat(5));
  CHECK(!five.ok());
  CHECK(five.error() == "not representable");

  auto neg = QuadScalar::sqrt_of_rational(rat(-3, 2));
  CHECK(!neg.ok());
  CHECK(neg.error() == "no real solution");

  for (long q : {1L, 2L, 3L, 4L, 6L, 8L, 9L, 12L, 18L, 24L, 27L, 50L}) {
    auto r = QuadScalar::sqrt_of_rational(rat(q));
    REQUIRE(r.ok());
    CHECK(*r * *r == QuadScalar(q));
    CHECK(r->sign() > 0);
  }
}

TEST_CASE("to_float values") {
  QuadScalar s6h(0, 0, 0, rat(1, 2));
  CHECK(to_float(s6h).value == doctest::Approx(1.224744871391589).epsilon(1e-14));
  QuadScalar mu2(rat(-17, 60), 0, 0, rat(7, 60));
  CHECK(to_float(mu2).value == doctest::Approx(0.0024404765).epsilon(1e-7));
  CHECK(to_float(QuadScalar()).value == 0.0);
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(12345);
  for (int iter = 0; iter < 200; ++iter) {
    QuadScalar x = random_scalar(rng), y = random_scalar(rng), z = random_scalar(rng);
    CHECK((x + y) + z == x + (y + z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x * y == y * x);
    CHECK((x * y) * z == x * (y * z));
    if (!x.is_zero()) CHECK(x * x.inverse() == QuadScalar(1));
  }
}

TEST_CASE("to_float is a ring homomorphism to 1e-12 on bounded products") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 100; ++iter) {
    QuadScalar prod(1);
    double fprod = 1.0;
    for (int k = 0; k < 8; ++k) {
      QuadScalar f = random_scalar(rng, 9);
      prod *= f;
      fprod *= f.to_double();
    }
    double exact = prod.to_double();
    // conditioning scale: the coefficient mass of the exact result, since
    // the four basis terms can cancel far below their own magnitudes
    double mass = std::abs(to_double(prod.one_part())) +
                  std::abs(to_double(prod.sqrt2_part())) * std::sqrt(2.0) +
                  std::abs(to_double(prod.sqrt3_part())) * std::sqrt(3.0) +
                  std::abs(to_double(prod.sqrt6_part())) * std::sqrt(6.0);
    double scale = std::max(1.0, mass);
    CHECK(std::abs(exact - fprod) <= 1e-12 * scale);
  }
}

TEST_CASE("exact sign") {
  CHECK(QuadScalar::sqrt2().sign() == 1);
  CHECK((-QuadScalar::sqrt6()).sign() == -1);
  CHECK(QuadScalar().sign() == 0);
  // 7 sqrt6 - 17 > 0 but barely (0.146...)
  CHECK((QuadScalar(7) * QuadScalar::sqrt6() - QuadScalar(17)).sign() == 1);
  // sqrt2 + sqrt3 - sqrt6 - 17/24 < 0  (approx -0.0116)
  QuadScalar tight = QuadScalar::sqrt2() + QuadScalar::sqrt3() - QuadScalar::sqrt6() -
                     QuadScalar(rat(17, 24));
  CHECK(tight.sign() == -1);
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 300; ++iter) {
    QuadScalar x = random_scalar(rng);
    double d = x.to_double();
    if (std::abs(d) > 1e-6) CHECK(x.sign() == (d > 0 ? 1 : -1));
    CHECK((x * x).sign() == (x.is_zero() ? 0 : 1));
  }
}

TEST_CASE("literal grammar round trip") {
  auto roundtrip = [](const QuadScalar& x) {
    auto back = QuadScalar::parse(x.to_string());
    REQUIRE(back.ok());
    CHECK(*back == x);
  };
  roundtrip(QuadScalar());
  roundtrip(QuadScalar(rat(-17, 60), 0, 0, rat(7, 60)));
  roundtrip(QuadScalar(rat(1), rat(-2, 3), rat(4, 7), rat(-5, 11)));
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 100; ++iter) roundtrip(random_scalar(rng));

  auto parsed = QuadScalar::parse("1/2 + 3/4*r2 - r3 + 2*r6");
  REQUIRE(parsed.ok());
  CHECK(*parsed == QuadScalar(rat(1, 2), rat(3, 4), rat(-1), rat(2)));

  auto shorthand = QuadScalar::parse("sqrt(3/2)");
  REQUIRE(shorthand.ok());
  CHECK(*shorthand == QuadScalar(0, 0, 0, rat(1, 2)));

  CHECK(!QuadScalar::parse("sqrt(5)").ok());
  CHECK(!QuadScalar::parse("1 + bogus").ok());
  CHECK(!QuadScalar::parse("").ok());
}

TEST_SUITE_END();
