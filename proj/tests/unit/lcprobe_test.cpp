#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ringlab/lcprobe/lcprobe.hpp"
#include "ringlab/series/permutation.hpp"

using namespace ringlab;
using namespace ringlab::lcprobe;
using ringlab::series::SeededRng;
using ringlab::series::TermStream;

namespace {

ProductPoint random_point(SeededRng& rng, std::size_t p, std::size_t q) {
  ProductPoint x = ProductPoint::zero(p, q);
  for (auto& t : x.torus) t = TorusPoint((rng.unit() * 2 - 1) * kPi);
  for (auto& r : x.reals) r = (rng.unit() * 2 - 1) * 10;
  return x;
}

TermStream<ProductPoint> real_stream(std::vector<double> values) {
  const std::size_t n = values.size();
  return TermStream<ProductPoint>(
             [values = std::move(values)](std::size_t i) {
               ProductPoint x = ProductPoint::zero(0, 1);
               x.reals[0] = i <= values.size() ? values[i - 1] : 0.0;
               return x;
             })
      .with_length(n);
}

// One torus coordinate with angle pi / 2^(i+1).
TermStream<ProductPoint> halving_angles() {
  return TermStream<ProductPoint>([](std::size_t i) {
    ProductPoint x = ProductPoint::zero(1, 0);
    x.torus[0] = TorusPoint(std::ldexp(kPi, -static_cast<int>(i + 1)));
    return x;
  });
}

}  // namespace

TEST_CASE("torus norm") {
  CHECK(torus_norm(TorusPoint(0)) == 0);
  CHECK(torus_norm(TorusPoint(kPi / 3)) == doctest::Approx(kPi / 3).epsilon(1e-15));
  const TorusPoint s = TorusPoint(kPi / 2) + TorusPoint(3 * kPi / 4);
  CHECK(s.angle() == doctest::Approx(-3 * kPi / 4).epsilon(1e-15));
  CHECK(torus_norm(s) == doctest::Approx(3 * kPi / 4).epsilon(1e-15));
  CHECK(TorusPoint(kPi).angle() == kPi);
  CHECK(TorusPoint(-kPi).angle() == kPi);
  CHECK(TorusPoint(5 * kPi).norm() == doctest::Approx(kPi));

  const ExactTorusPoint e = ExactTorusPoint(fraction(1, 2)) + ExactTorusPoint(fraction(3, 4));
  CHECK(e.units() == fraction(-3, 4));
  CHECK(torus_norm(e) == fraction(3, 4));
  CHECK(ExactTorusPoint(Rational(-1)).units() == 1);
  CHECK(ExactTorusPoint(fraction(7, 2)).units() == fraction(-1, 2));
  CHECK(ExactTorusPoint(fraction(1, 3)).times(4).units() == fraction(-2, 3));
}

TEST_CASE("doubling law") {
  CHECK(doubling_check(TorusPoint(kPi / 4)) == std::optional<bool>(true));
  CHECK(doubling_check(TorusPoint(kPi / 2)) == std::optional<bool>(true));
  CHECK_FALSE(doubling_check(TorusPoint(2 * kPi / 3)));
  CHECK(doubling_check(ExactTorusPoint(fraction(1, 4))) == std::optional<bool>(true));
  CHECK(doubling_check(ExactTorusPoint(fraction(-1, 2))) == std::optional<bool>(true));
  CHECK_FALSE(doubling_check(ExactTorusPoint(fraction(2, 3))));

  // every rational angle in the domain, exactly
  for (long den = 1; den <= 60; ++den)
    for (long num = -den; num <= den; ++num) {
      const ExactTorusPoint g(fraction(num, 2 * den));
      const auto r = doubling_check(g);
      REQUIRE(r);
      REQUIRE(*r);
    }
}

TEST_CASE("gamma seminorm") {
  const GammaSeminorm all = GammaSeminorm::all_coordinates(2, 1);
  ProductPoint x = ProductPoint::zero(2, 1);
  x.torus[1] = TorusPoint(-kPi / 3);
  x.reals[0] = 0.5;
  CHECK(all(x) == doctest::Approx(kPi / 3));
  CHECK(GammaSeminorm({})(x) == 0);
  CHECK(GammaSeminorm({{Character::Kind::Real, 0}})(x) == 0.5);
  CHECK_THROWS_AS(GammaSeminorm({{Character::Kind::Real, 3}})(x), Error);

  SeededRng rng(6);
  for (int k = 0; k < 100000; ++k) {
    const ProductPoint a = random_point(rng, 2, 2), b = random_point(rng, 2, 2);
    const GammaSeminorm g = GammaSeminorm::all_coordinates(2, 2);
    REQUIRE(g(a + b) <= g(a) + g(b) + 1e-12);
    REQUIRE(g(-a) == doctest::Approx(g(a)).epsilon(1e-15));
    REQUIRE(g(a) >= 0);
  }
  // exact torus norm is subadditive with no tolerance
  for (int k = 0; k < 100000; ++k) {
    const ExactTorusPoint a(fraction(rng.between(-500, 500), rng.between(1, 97)));
    const ExactTorusPoint b(fraction(rng.between(-500, 500), rng.between(1, 97)));
    REQUIRE(torus_norm(a + b) <= torus_norm(a) + torus_norm(b));
    REQUIRE(torus_norm(a) <= 1);
  }
}

TEST_CASE("enlarging gamma never decreases the seminorm") {
  SeededRng rng(10);
  std::vector<Character> all;
  for (std::size_t k = 0; k < 3; ++k) all.push_back({Character::Kind::Torus, k});
  for (std::size_t k = 0; k < 3; ++k) all.push_back({Character::Kind::Real, k});
  for (int trial = 0; trial < 20000; ++trial) {
    const ProductPoint x = random_point(rng, 3, 3);
    std::vector<Character> small, big;
    for (const auto& c : all) {
      const auto pick = rng.below(3);
      if (pick == 0) small.push_back(c);
      if (pick <= 1) big.push_back(c);
    }
    REQUIRE(GammaSeminorm(small)(x) <= GammaSeminorm(big)(x));
  }
}

TEST_CASE("compute M and pick delta") {
  const GammaSeminorm g = GammaSeminorm::all_coordinates(0, 1);
  CHECK(compute_M(real_stream({0.5, -0.5}), g, 0.5, 2) == 3.0);
  CHECK(compute_M(real_stream({}), g, 0.7, 0) == 1.0);
  CHECK(compute_M(real_stream({0.25, 0.25}), g, 0.5, 2) == 2.0);
  // tail bound for an undeclared stream
  const TermStream<ProductPoint> geo([](std::size_t i) {
    ProductPoint x = ProductPoint::zero(0, 1);
    x.reals[0] = std::ldexp(1.0, -static_cast<int>(i));
    return x;
  });
  CHECK(compute_M(geo, g, 0.5, 10, std::ldexp(1.0, -10)) == 3.0);
  CHECK(compute_M(geo, g, 0.5, 10, 0.25) > compute_M(geo, g, 0.5, 10, 0.0));
  CHECK_THROWS_AS(compute_M(geo, g, 0.5, 10), Error);
  CHECK_THROWS_AS(compute_M(real_stream({1.0, 1.0, 1.0}), g, 0.5, 2), Error);

  const std::vector<Rational> norms{fraction(1, 2), fraction(1, 4), fraction(1, 8), fraction(1, 8)};
  CHECK(compute_M(std::span<const Rational>(norms), fraction(1, 2)) == 3);
  CHECK(compute_M(std::span<const Rational>(), Rational(5)) == 1);
  CHECK(compute_M(std::span<const Rational>(norms), Rational(1)) == 2);

  CHECK(pick_delta(fraction(1, 2), Rational(3)) == fraction(1, 12));
  CHECK(pick_delta(Rational(1), Rational(1)) == fraction(1, 2));
  CHECK(pick_delta(kPi, 2.0) == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK_THROWS_AS(pick_delta(0.5, 0.5), Error);
}

TEST_CASE("containment chain") {
  SUBCASE("zero endomorphisms") {
    const auto a = halving_angles();
    const std::vector<DiagonalEndo> f(12, DiagonalEndo::zero(1, 0));
    const auto r = containment_check(a, GammaSeminorm::all_coordinates(1, 0), std::span<const DiagonalEndo>(f), 0.5,
                                     12, 5.0);
    CHECK(r.pass);
    CHECK(r.x_norm == 0);
  }
  SUBCASE("real line with scalar 1/M") {
    const TermStream<ProductPoint> a([](std::size_t i) {
      ProductPoint x = ProductPoint::zero(0, 1);
      x.reals[0] = std::ldexp(1.0, -static_cast<int>(i));
      return x;
    });
    const GammaSeminorm g = GammaSeminorm::all_coordinates(0, 1);
    const double M = compute_M(a, g, 1.0, 40, std::ldexp(1.0, -40));
    CHECK(M == 2.0);
    const std::vector<DiagonalEndo> f(40, DiagonalEndo::scalar(0, 1, 0, fraction(1, 2)));
    const auto r = containment_check(a, g, std::span<const DiagonalEndo>(f), 1.0, 40, M);
    CHECK(r.pass);
    CHECK(r.x_norm <= 0.5);
    CHECK(r.triangle.holds(1e-12));
    CHECK(r.certificates.holds(1e-12));
    CHECK(r.budget.holds(1e-12));
    CHECK(r.worst_certificate_ratio == doctest::Approx(1.0));
  }
  SUBCASE("torus angles pi/2^(i+1) with factors 0 or 1") {
    const auto a = halving_angles();
    const GammaSeminorm g = GammaSeminorm::all_coordinates(1, 0);
    const double eps = 0.5;
    const double M = compute_M(a, g, eps, 30, std::ldexp(kPi, -31));
    CHECK(M == doctest::Approx(1 + kPi).epsilon(1e-12));

    // M > 1, so factor 1 on a nonzero term breaks its certificate
    std::vector<DiagonalEndo> f(30, DiagonalEndo::zero(1, 0));
    f[4] = DiagonalEndo::scalar(1, 0, 1, Rational(0));
    try {
      containment_check(a, g, std::span<const DiagonalEndo>(f), eps, 30, M);
      FAIL("expected an exception");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precondition);
      CHECK(std::string(e.what()).find("certificate violated at i = 5") != std::string::npos);
    }

    const std::vector<DiagonalEndo> zeros(30, DiagonalEndo::zero(1, 0));
    const auto r = containment_check(a, g, std::span<const DiagonalEndo>(zeros), eps, 30, M);
    CHECK(r.pass);
    CHECK(r.triangle.holds(1e-12));
    CHECK(r.certificates.holds(1e-12));
    CHECK(r.budget.holds(1e-12));
  }
  SUBCASE("a wrapped integer multiple can meet the certificate") {
    // 3 * (2pi/3 + tiny) wraps to 3 * tiny
    const TermStream<ProductPoint> a([](std::size_t) {
      ProductPoint x = ProductPoint::zero(1, 0);
      x.torus[0] = TorusPoint(2 * kPi / 3 + 1e-3);
      return x;
    });
    const std::vector<DiagonalEndo> f(1, DiagonalEndo::scalar(1, 0, 3, Rational(0)));
    const auto r = containment_check(a, GammaSeminorm::all_coordinates(1, 0), std::span<const DiagonalEndo>(f), 3.0,
                                     1, 4.0);
    CHECK(r.x_norm == doctest::Approx(3e-3).epsilon(1e-6));
    CHECK(r.pass);
  }
}

TEST_CASE("chain soundness on seeded instances") {
  const auto b = lc_batch(200, 3, 24, 0.5);
  CHECK(b.instances == 200);
  CHECK(b.passed == 200);
  CHECK_FALSE(b.first_failure);
  CHECK(b.min_slack >= 0);

  SeededRng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = make_lc_instance(rng.next(), 16, 0.5);
    const GammaSeminorm g = GammaSeminorm::all_coordinates(inst.p, inst.q);
    const auto terms = inst.terms;
    TermStream<ProductPoint> stream([terms](std::size_t i) { return terms[i - 1]; });
    stream.with_length(terms.size());
    const double M = compute_M(stream, g, inst.eps, terms.size());
    const auto r = containment_check(stream, g, std::span<const DiagonalEndo>(inst.multipliers), inst.eps,
                                     terms.size(), M);
    REQUIRE(r.pass);
    REQUIRE(r.triangle.holds(1e-12));
    REQUIRE(r.certificates.holds(1e-12));
    REQUIRE(r.budget.holds(1e-12));
  }
}
