#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ringlab/oplab/counterexample.hpp"
#include "ringlab/oplab/lp_vec.hpp"
#include "ringlab/oplab/structured_op.hpp"
#include "ringlab/oplab/sup_ring.hpp"

using namespace ringlab;
using namespace ringlab::oplab;
using ringlab::series::PermutationPlan;
using ringlab::series::SeededRng;
using ringlab::series::TermStream;

namespace {

constexpr LpExponent kAll[] = {LpExponent::One, LpExponent::Two, LpExponent::Infinity};

Rational random_rational(SeededRng& rng) { return fraction(rng.between(-20, 20), rng.between(1, 12)); }

// Random operator on indices 1..dim: scalar part, diagonal entries and
// coordinate maps.
StructuredOp random_op(SeededRng& rng, std::size_t dim) {
  StructuredOp op = StructuredOp::scaled_identity(rng.below(3) == 0 ? random_rational(rng) : Rational(0));
  const auto entries = rng.below(5);
  for (std::uint64_t k = 0; k < entries; ++k) {
    const std::size_t i = 1 + rng.below(dim), j = 1 + rng.below(dim);
    op += i == j ? StructuredOp::diagonal_entry(i, random_rational(rng))
                 : StructuredOp::coordinate_map(j, i, random_rational(rng));
  }
  return op;
}

// Diagonal or a single coordinate map: shapes with exact l_2 norms.
StructuredOp random_monomial(SeededRng& rng, std::size_t dim) {
  const std::size_t i = 1 + rng.below(dim), j = 1 + rng.below(dim);
  if (rng.below(2) == 0) {
    std::map<std::size_t, Rational> d;
    for (std::size_t k = 1; k <= dim; ++k)
      if (rng.below(2)) d[k] = random_rational(rng);
    return StructuredOp::diagonal(d);
  }
  return StructuredOp::coordinate_map(j, i, random_rational(rng));
}

LpVec random_vec(SeededRng& rng, LpExponent p, std::size_t window, std::size_t dim) {
  LpVec v(p, window);
  for (std::size_t i = 1; i <= dim; ++i) v.set(i, random_rational(rng));
  return v;
}

Rational squared_if_two(LpExponent p, const Rational& x) { return p == LpExponent::Two ? Rational(x * x) : x; }

}  // namespace

TEST_CASE("lp vectors") {
  LpVec v(LpExponent::One, 4);
  v.set(1, fraction(-1, 2));
  v.set(3, fraction(1, 3));
  CHECK(v.norm().value == fraction(5, 6));
  LpVec w(LpExponent::Two, 4);
  w.set(1, Rational(3));
  w.set(2, Rational(4));
  CHECK(w.norm().value == 25);
  CHECK(w.norm().to_string() == "25/1 (squared)");
  CHECK(w.norm().approx() == doctest::Approx(5.0));
  CHECK(w.norm().exceeds(Rational(4)));
  CHECK(w.norm().at_most(Rational(5)));
  LpVec u(LpExponent::Infinity, 4);
  u.set(2, fraction(-7, 3));
  CHECK(u.norm().value == fraction(7, 3));
  CHECK_THROWS_AS(v.set(5, Rational(1)), Error);
  v.set(1, Rational(0));
  CHECK(v.coords().size() == 1);
}

TEST_CASE("apply") {
  LpVec x(LpExponent::Two, 8);
  x.set(1, Rational(3));
  CHECK(apply(StructuredOp::zero(), x).coords().empty());

  LpVec six(LpExponent::One, 8);
  six.set(3, Rational(6));
  const LpVec img = apply(series_term(3), six);
  CHECK(img.coords().size() == 1);
  CHECK(img.get(3) == 2);

  LpVec ones(LpExponent::Infinity, 4);
  ones.set(1, Rational(1));
  ones.set(2, Rational(1));
  const LpVec both = apply(series_term(1) + series_term(2), ones);
  CHECK(both.get(1) == 1);
  CHECK(both.get(2) == fraction(1, 2));

  CHECK_THROWS_AS(apply(StructuredOp::coordinate_map(1, 9, Rational(1)), ones), Error);
}

TEST_CASE("apply is linear") {
  SeededRng rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto p = kAll[rng.below(3)];
    const StructuredOp op = random_op(rng, 6);
    const LpVec x = random_vec(rng, p, 6, 6), y = random_vec(rng, p, 6, 6);
    const Rational a = random_rational(rng), b = random_rational(rng);
    REQUIRE(apply(op, a * x + b * y) == a * apply(op, x) + b * apply(op, y));
  }
}

TEST_CASE("operator product") {
  const StructuredOp b = StructuredOp::coordinate_map(2, 5, fraction(3, 7)) + StructuredOp::diagonal_entry(1, Rational(4));
  CHECK(op_mul(StructuredOp::identity(), b) == b);
  CHECK(op_mul(b, StructuredOp::identity()) == b);
  CHECK(op_mul(series_term(2), series_term(3)) == StructuredOp::zero());

  const StructuredOp sq = op_mul(series_term(4), series_term(4));
  CHECK(sq == StructuredOp::diagonal_entry(4, fraction(1, 16)));
  const LpVec e4 = LpVec::unit(LpExponent::One, 8, 4);
  CHECK(apply(sq, e4) == apply(series_term(4), apply(series_term(4), e4)));

  // (ab)(x) = b(a(x))
  const StructuredOp f = fan_out_multiplier(3, fraction(1, 2));
  const StructuredOp a = series_term(3);
  const LpVec e1 = LpVec::unit(LpExponent::One, 8, 1);
  CHECK(apply(op_mul(f, a), e1) == apply(a, apply(f, e1)));
  CHECK(apply(op_mul(f, a), e1).get(3) == fraction(1, 6));
  CHECK(op_mul(a, f) == StructuredOp::zero());
}

TEST_CASE("ring laws on random operators") {
  SeededRng rng(17);
  for (int trial = 0; trial < 3000; ++trial) {
    const StructuredOp a = random_op(rng, 5), b = random_op(rng, 5), c = random_op(rng, 5);
    REQUIRE(op_mul(op_mul(a, b), c) == op_mul(a, op_mul(b, c)));
    REQUIRE(op_mul(a, b + c) == op_mul(a, b) + op_mul(a, c));
    REQUIRE(op_mul(a + b, c) == op_mul(a, c) + op_mul(b, c));
    REQUIRE(a + b == b + a);
    REQUIRE(a - a == StructuredOp::zero());
  }
}

TEST_CASE("operator norms") {
  const StructuredOp d = StructuredOp::diagonal({{1, Rational(1)}, {2, fraction(1, 2)}, {3, fraction(1, 3)}});
  for (auto p : kAll) {
    const auto n = op_norm(d, p);
    CHECK(n.exact());
    CHECK(n.upper == 1);

    const auto c = op_norm(StructuredOp::coordinate_map(4, 2, fraction(-3, 5)), p);
    CHECK(c.exact());
    CHECK(c.upper == squared_if_two(p, fraction(3, 5)));
  }
  // tail of sum a_i after n terms
  for (std::size_t n : {1, 5, 12}) {
    std::map<std::size_t, Rational> tail;
    for (std::size_t i = n + 1; i <= 3 * n + 4; ++i) tail[i] = Rational(1, i);
    const StructuredOp t = StructuredOp::diagonal(tail);
    for (auto p : kAll) CHECK(op_norm(t, p).upper == squared_if_two(p, Rational(1, n + 1)));
    CHECK(apply(t, LpVec::unit(LpExponent::One, 3 * n + 4, n + 1)).norm().value == Rational(1, n + 1));
  }
  // fan-out sums: l_1 column sum, l_inf row max, l_2 rank one
  StructuredOp fan;
  for (std::size_t i = 1; i <= 4; ++i) fan += fan_out_multiplier(i, fraction(1, 2));
  CHECK(op_norm(fan, LpExponent::One).upper == 2);
  CHECK(op_norm(fan, LpExponent::Infinity).upper == fraction(1, 2));
  CHECK(op_norm(fan, LpExponent::Two).upper == 1);
  // a general 2x2 block with a certified enclosure
  const StructuredOp g = StructuredOp::diagonal_entry(1, Rational(1)) + StructuredOp::diagonal_entry(2, Rational(1)) +
                         StructuredOp::coordinate_map(2, 1, Rational(1));
  const auto gn = op_norm(g, LpExponent::Two);
  CHECK(gn.lower <= gn.upper);
  // ||[[1,1],[0,1]]||^2 = (3 + sqrt 5) / 2
  CHECK(gn.lower.get_d() == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-9));
}

TEST_CASE("norm submultiplicativity") {
  SeededRng rng(23);
  for (int trial = 0; trial < 2000; ++trial) {
    const StructuredOp a = random_op(rng, 5), b = random_op(rng, 5);
    for (auto p : {LpExponent::One, LpExponent::Infinity}) {
      const auto nab = op_norm(op_mul(a, b), p);
      REQUIRE(nab.exact());
      REQUIRE(nab.upper <= op_norm(a, p).upper * op_norm(b, p).upper);
    }
    const StructuredOp x = random_monomial(rng, 5), y = random_monomial(rng, 5);
    const auto nxy = op_norm(op_mul(x, y), LpExponent::Two);
    REQUIRE(nxy.exact());
    REQUIRE(nxy.upper <= op_norm(x, LpExponent::Two).upper * op_norm(y, LpExponent::Two).upper);
  }
}

TEST_CASE("counterexample for l_1") {
  const auto half = build_counterexample(fraction(1, 2), LpExponent::One);
  CHECK(half.N == 4);
  CHECK(half.harmonic_N == fraction(25, 12));
  CHECK(half.output_norm.value == fraction(25, 24));
  CHECK(half.exceeds_one);
  CHECK(half.falsified());
  CHECK(half.max_multiplier_norm == fraction(1, 2));
  CHECK(half.multipliers_in_ball);
  CHECK(half.distinct_multipliers == 5);
  CHECK(half.window == 24);

  const auto one = build_counterexample(Rational(1), LpExponent::One);
  CHECK(one.N == 2);
  CHECK(one.output_norm.value == fraction(3, 2));

  CHECK_THROWS_AS(build_counterexample(Rational(2), LpExponent::One), Error);
  CHECK_THROWS_AS(build_counterexample(Rational(0), LpExponent::One), Error);
}

TEST_CASE("counterexample invariant over random epsilon") {
  SeededRng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const auto den = rng.between(1, 12);
    const Rational eps = fraction(rng.between((den + 3) / 4, den), den);  // eps >= 1/4 keeps N small
    const auto r = build_counterexample(eps, LpExponent::One);
    // N from direct summation
    Rational h = 0;
    std::size_t N = 0;
    while (eps * h <= 1) {
      ++N;
      h += Rational(1, N);
      h.canonicalize();
    }
    REQUIRE(r.N == N);
    REQUIRE(r.max_multiplier_norm <= eps);
    REQUIRE(r.output_norm.value == eps * h);
    REQUIRE(r.output_norm.exceeds(Rational(1)));
  }
}

TEST_CASE("counterexample for l_inf and l_2") {
  const auto inf = build_counterexample(fraction(1, 2), LpExponent::Infinity);
  CHECK(inf.N == 4);
  CHECK(inf.output_norm.value == fraction(1, 2));
  CHECK_FALSE(inf.exceeds_one);
  CHECK(inf.verbatim_gap);
  REQUIRE(inf.witness);
  CHECK(inf.witness->found);
  CHECK(inf.falsified());

  const auto w = witness_search(fraction(1, 2), LpExponent::Infinity);
  CHECK(w.found);
  CHECK(w.output_norm.value == fraction(25, 24));
  CHECK(w.order == WordOrder::AThenF);
  CHECK(w.pattern == MultiplierPattern::FanIn);
  CHECK(w.vector_family == "flat");
  CHECK(w.N == 4);
  CHECK(w.max_multiplier_norm <= fraction(1, 2));

  const auto two = witness_search(Rational(1), LpExponent::Two);
  CHECK(two.found);
  CHECK(two.output_norm.value == fraction(5, 4));
  CHECK(two.output_norm.exceeds(Rational(1)));

  // at eps = 1/2 the certified bound on every multiplier choice stays below 1
  const auto none = witness_search(fraction(1, 2), LpExponent::Two);
  CHECK_FALSE(none.found);
  REQUIRE(none.l2_supremum_bound_squared);
  Rational bound = 0;
  for (long i = 1; i <= 16; ++i) bound += Rational(1, i * i);
  bound += fraction(1, 16);
  bound *= fraction(1, 4);
  bound.canonicalize();
  CHECK(*none.l2_supremum_bound_squared == bound);
  CHECK(bound < 1);
  CHECK(none.output_norm.at_most(Rational(1)));

  CHECK_THROWS_AS(witness_search(Rational(2), LpExponent::Infinity), Error);
}

TEST_CASE("series a under permutations") {
  const std::vector<PermutationPlan> plans{PermutationPlan::identity()};
  const auto id = series_a_unconditional_check(9, std::span<const PermutationPlan>(plans));
  REQUIRE(id.size() == 1);
  CHECK(id[0].distance == fraction(1, 10));
  CHECK(id[0].least_excluded == 10);
  CHECK(id[0].verified_on_unit_vector);
  CHECK(id[0].initial_segment);

  const std::vector<PermutationPlan> same_set{PermutationPlan::explicit_prefix({3, 1, 2, 4}),
                                              PermutationPlan::block_swap(2)};
  const auto s = series_a_unconditional_check(4, std::span<const PermutationPlan>(same_set));
  CHECK(s[0].distance == fraction(1, 5));
  CHECK(s[1].distance == fraction(1, 5));

  const auto gap = series_a_unconditional_check(
      3, std::span<const PermutationPlan>(std::vector<PermutationPlan>{PermutationPlan::explicit_prefix({1, 3, 4})}));
  CHECK(gap[0].distance == fraction(1, 2));
  CHECK_FALSE(gap[0].initial_segment);

  const auto empty = series_a_unconditional_check(0, std::span<const PermutationPlan>(plans));
  CHECK(empty[0].distance == 1);
}

TEST_CASE("sup ring bound") {
  SUBCASE("two-point ground set") {
    const TermStream<SupRingElem> a(
        [](std::size_t i) { return SupRingElem(std::vector<Rational>{inverse_power(2, i), inverse_power(3, i)}); });
    const std::size_t n = 30;
    const std::vector<Rational> tail{inverse_power(2, n), inverse_power(3, n) / 2};
    const std::vector<SupRingElem> f(n, SupRingElem(std::vector<Rational>{fraction(1, 4), fraction(-1, 4)}));
    const auto r = sup_ring_bound_verify(a, fraction(1, 4), std::span<const SupRingElem>(f), n, tail);
    CHECK(r.A == 1);
    CHECK(r.A_lower == 1 - inverse_power(2, n));
    CHECK(r.delta == fraction(1, 4));
    CHECK(r.containment);
    CHECK(r.max_partial_norm <= fraction(1, 4));

    const std::vector<SupRingElem> zero(n, SupRingElem(2));
    const auto z = sup_ring_bound_verify(a, fraction(1, 4), std::span<const SupRingElem>(zero), n, tail);
    CHECK(z.containment);
    CHECK(z.max_partial_norm == 0);

    std::vector<SupRingElem> big = f;
    big[6] = SupRingElem(std::vector<Rational>{fraction(1, 3), Rational(0)});
    try {
      sup_ring_bound_verify(a, fraction(1, 4), std::span<const SupRingElem>(big), n, tail);
      FAIL("expected an exception");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precondition);
      CHECK(std::string(e.what()).find("f_7") != std::string::npos);
    }
  }
  SUBCASE("pointwise product norm") {
    SeededRng rng(4);
    for (int k = 0; k < 5000; ++k) {
      std::vector<Rational> x(4), y(4);
      for (auto& v : x) v = random_rational(rng);
      for (auto& v : y) v = random_rational(rng);
      const SupRingElem a(x), b(y);
      REQUIRE((a * b).norm() <= a.norm() * b.norm());
      REQUIRE((a + b).norm() <= a.norm() + b.norm());
    }
  }
  SUBCASE("seeded batch") {
    const auto b = sup_ring_batch(500, 5, 16, 24, fraction(1, 2));
    CHECK(b.instances == 500);
    CHECK(b.contained == 500);
    CHECK_FALSE(b.first_failure);
    CHECK(b.worst_ratio <= 1);
    const auto inst = make_sup_ring_instance(9, 16, 24, fraction(1, 2));
    CHECK(inst.value_set.size() <= 4);
    CHECK(inst.ground_size <= 16);
    CHECK(inst.labels.size() == 24);
  }
}

TEST_CASE("unconditional but not absolute in l_2") {
  const auto four = dr_witness(4);
  CHECK(four.absolute_partial == fraction(25, 12));
  CHECK(four.l2_tail_bound_squared == fraction(1, 4));
  const auto one = dr_witness(1);
  CHECK(one.absolute_partial == 1);
  CHECK(one.l2_tail_bound_squared == 1);
  const auto w = dr_witness(12367);
  CHECK(w.absolute_partial > 10);
  CHECK(dr_witness(12366).absolute_partial <= 10);
  // sum_{n < i <= 4n} 1/i^2 stays below 1/n
  for (long n : {1, 3, 10}) {
    Rational s = 0;
    for (long i = n + 1; i <= 4 * n; ++i) s += Rational(1, i * i);
    CHECK(s < dr_witness(static_cast<std::size_t>(n)).l2_tail_bound_squared);
  }
  CHECK_THROWS_AS(dr_witness(0), Error);
}
