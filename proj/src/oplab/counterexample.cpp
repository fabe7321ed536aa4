#include "ringlab/oplab/counterexample.hpp"

#include <algorithm>
#include <set>

#include "ringlab/error.hpp"
#include "ringlab/parallel.hpp"

namespace ringlab::oplab {

std::string to_string(WordOrder w) { return w == WordOrder::FThenA ? "f-then-a" : "a-then-f"; }

WordOrder parse_word_order(const std::string& s) {
  if (s == "f-then-a") return WordOrder::FThenA;
  if (s == "a-then-f") return WordOrder::AThenF;
  fail(ErrorKind::InvalidArgument, "unknown word order '" + s + "' (expected f-then-a or a-then-f)");
}

std::string to_string(MultiplierPattern m) { return m == MultiplierPattern::FanOut ? "fan-out" : "fan-in"; }

StructuredOp series_term(std::size_t i) { return StructuredOp::diagonal_entry(i, Rational(1, i)); }

StructuredOp fan_out_multiplier(std::size_t i, const Rational& eps) { return StructuredOp::coordinate_map(1, i, eps); }

StructuredOp fan_in_multiplier(std::size_t i, const Rational& eps) { return StructuredOp::coordinate_map(i, 1, eps); }

StructuredOp word(const StructuredOp& f, const StructuredOp& a, WordOrder order) {
  return order == WordOrder::FThenA ? op_mul(f, a) : op_mul(a, f);
}

namespace {

void require_epsilon(const Rational& eps) {
  require(eps > 0 && eps <= 1, ErrorKind::Precondition,
          "epsilon must satisfy 0 < eps <= 1, got " + to_fraction_string(eps));
}

// The norm itself from an OpNorm known to be exact (sqrt for p = 2, which
// is rational for every single coordinate map).
Rational exact_norm(const OpNorm& n) {
  require(n.exact(), ErrorKind::Internal, "exact_norm on an interval");
  if (!n.squared()) return n.upper;
  BigInt num = n.upper.get_num(), den = n.upper.get_den();
  require(mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t()), ErrorKind::Internal,
          "multiplier norm is irrational");
  BigInt rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn, rd);
}

StructuredOp multiplier(MultiplierPattern pattern, std::size_t i, const Rational& eps) {
  return pattern == MultiplierPattern::FanOut ? fan_out_multiplier(i, eps) : fan_in_multiplier(i, eps);
}

struct TestVector {
  std::string family;
  LpVec x;
};

std::vector<TestVector> test_vectors(LpExponent p, std::size_t N, std::size_t window) {
  std::vector<TestVector> out;
  out.push_back({"e1", LpVec::unit(p, window, 1)});
  if (p == LpExponent::Infinity) {
    LpVec ones(p, window);
    for (std::size_t i = 1; i <= N; ++i) ones.set(i, Rational(1));
    out.push_back({"flat", ones});
  } else if (p == LpExponent::Two) {
    LpVec flat(p, window);
    const Rational c = sqrt_lower(Rational(1, N));
    for (std::size_t i = 1; i <= N; ++i) flat.set(i, c);
    out.push_back({"flat", flat});

    Rational s(0);
    for (std::size_t i = 1; i <= N; ++i) s += Rational(1, i * i);
    const Rational r = sqrt_lower(1 / s);
    LpVec harm(p, window);
    for (std::size_t i = 1; i <= N; ++i) harm.set(i, r / i);
    out.push_back({"harmonic", harm});
  }
  return out;
}

struct Candidate {
  bool found = false;
  WitnessResult best;  // witness when found, else best value at this N
  std::size_t examined = 0;
};

Candidate search_at(const Rational& eps, LpExponent p, std::size_t N) {
  Candidate c;
  const std::size_t window = 2 * N + 16;
  const auto vectors = test_vectors(p, N, window);
  bool have_best = false;
  for (WordOrder order : {WordOrder::FThenA, WordOrder::AThenF}) {
    for (MultiplierPattern pattern : {MultiplierPattern::FanOut, MultiplierPattern::FanIn}) {
      StructuredOp sum;
      Rational max_mult(0);
      for (std::size_t i = 1; i <= N; ++i) {
        const StructuredOp f = multiplier(pattern, i, eps);
        max_mult = std::max(max_mult, exact_norm(op_norm(f, p)));
        sum += word(f, series_term(i), order);
      }
      for (const auto& tv : vectors) {
        ++c.examined;
        const NormMeasure xn = tv.x.norm();
        require(xn.at_most(Rational(1)), ErrorKind::Internal, "test vector outside the unit ball");
        const NormMeasure out = apply(sum, tv.x).norm();
        if (!have_best || out.value > c.best.output_norm.value || out.exceeds(Rational(1))) {
          have_best = true;
          auto& w = c.best;
          w.order = order;
          w.pattern = pattern;
          w.vector_family = tv.family;
          w.N = N;
          w.test_vector = tv.x;
          w.test_norm = xn;
          w.output_norm = out;
          w.max_multiplier_norm = max_mult;
        }
        if (out.exceeds(Rational(1))) {
          c.found = true;
          return c;
        }
      }
    }
  }
  return c;
}

}  // namespace

WitnessResult witness_search(const Rational& eps, LpExponent p, std::size_t budget) {
  require_epsilon(eps);
  require(budget >= 1, ErrorKind::Precondition, "witness_search needs budget >= 1");
  auto per_n = parallel_map(budget, [&](std::size_t k) { return search_at(eps, p, k + 1); });

  WitnessResult r;
  std::size_t examined = 0;
  const Candidate* pick = nullptr;
  for (const auto& c : per_n) {
    examined += c.examined;
    if (c.found) {
      pick = &c;
      break;
    }
    if (!pick || c.best.output_norm.value > pick->best.output_norm.value) pick = &c;
  }
  r = pick->best;
  r.found = pick->found;
  r.epsilon = eps;
  r.p = p;
  r.budget = budget;
  r.candidates = examined;
  if (p == LpExponent::Two) {
    Rational s(0);
    for (std::size_t i = 1; i <= 16; ++i) s += Rational(1, i * i);
    r.l2_supremum_bound_squared = eps * eps * (s + Rational(1, 16));
  }
  return r;
}

CounterexampleReport build_counterexample(const Rational& eps, LpExponent p, WordOrder order,
                                          std::size_t witness_budget) {
  require_epsilon(eps);
  CounterexampleReport r;
  r.epsilon = eps;
  r.p = p;
  r.order = order;
  r.N = first_harmonic_exceeding(1 / eps);
  r.harmonic_N = harmonic(r.N);
  r.window = 2 * r.N + 16;
  r.distinct_multipliers = r.N + 1;

  StructuredOp sum;
  r.max_multiplier_norm = 0;
  for (std::size_t i = 1; i <= r.N; ++i) {
    const StructuredOp f = fan_out_multiplier(i, eps);
    r.max_multiplier_norm = std::max(r.max_multiplier_norm, exact_norm(op_norm(f, p)));
    sum += word(f, series_term(i), order);
  }
  r.multipliers_in_ball = r.max_multiplier_norm <= eps;

  r.output = apply(sum, LpVec::unit(p, r.window, 1));
  r.output_norm = r.output.norm();
  r.exceeds_one = r.output_norm.exceeds(Rational(1));
  if (p != LpExponent::One) {
    r.verbatim_gap = !r.exceeds_one;
    r.witness = witness_search(eps, p, witness_budget);
  }
  return r;
}

std::vector<TailDistance> series_a_unconditional_check(std::size_t n, std::span<const series::PermutationPlan> plans) {
  return parallel_map(plans.size(), [&](std::size_t k) {
    TailDistance t;
    t.plan = plans[k].describe();
    t.n = n;
    const auto prefix = plans[k].prefix(n);
    const std::set<std::size_t> included(prefix.begin(), prefix.end());
    const std::size_t top = included.empty() ? 0 : *included.rbegin();
    const std::size_t window = top + 1;  // never included

    StructuredOp partial;
    for (std::size_t i : prefix) partial += series_term(i);
    std::map<std::size_t, Rational> limit_diag;
    for (std::size_t i = 1; i <= window; ++i) limit_diag[i] = Rational(1, i);
    // diag(1/i) - S_n inside the window; entries beyond it are below 1/window
    const StructuredOp diff = StructuredOp::diagonal(limit_diag) - partial;
    t.distance = std::max(op_norm(diff, LpExponent::One).upper, Rational(1, window + 1));

    while (included.count(t.least_excluded)) ++t.least_excluded;
    t.initial_segment = top == n;
    const auto image = apply(diff, LpVec::unit(LpExponent::Infinity, window, t.least_excluded)).norm();
    t.verified_on_unit_vector = image.value == t.distance && t.distance == Rational(1, t.least_excluded);
    return t;
  });
}

DrWitness dr_witness(std::size_t n) {
  require(n >= 1, ErrorKind::Precondition, "dr_witness needs n >= 1");
  DrWitness w;
  w.n = n;
  w.absolute_partial = harmonic(n);
  w.l2_tail_bound_squared = Rational(1, n);
  return w;
}

}  // namespace ringlab::oplab
