#pragma once

// The operator ring R_p on l_p (p in {1, 2, inf}) with product
// (ab)(x) = b(a(x)), the series a_i = (x -> (x_i / i) e_i) and the
// multiplier families used to show that R_p is not a dch ring.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ringlab/oplab/structured_op.hpp"
#include "ringlab/series/permutation.hpp"

namespace ringlab::oplab {

// f-then-a: x -> a_i(f_i(x)), the ring product f_i a_i.
// a-then-f: x -> f_i(a_i(x)), the ring product a_i f_i.
enum class WordOrder { FThenA, AThenF };
std::string to_string(WordOrder w);
WordOrder parse_word_order(const std::string& s);

// a_i: the only nonzero output coordinate is the i-th, equal to x_i / i.
StructuredOp series_term(std::size_t i);

// f'_i: x -> eps * x_1 * e_i ("fan-out").
StructuredOp fan_out_multiplier(std::size_t i, const Rational& eps);
// x -> eps * x_i * e_1 ("fan-in").
StructuredOp fan_in_multiplier(std::size_t i, const Rational& eps);

// The product of multiplier and series term under the given order.
StructuredOp word(const StructuredOp& f, const StructuredOp& a, WordOrder order);

// Multiplier families searched for witnesses.
enum class MultiplierPattern { FanOut, FanIn };
std::string to_string(MultiplierPattern m);

struct WitnessResult {
  bool found = false;
  Rational epsilon;
  LpExponent p = LpExponent::Infinity;
  std::size_t budget = 0;
  std::size_t candidates = 0;
  // the witness, or the best candidate when nothing exceeded 1
  WordOrder order = WordOrder::FThenA;
  MultiplierPattern pattern = MultiplierPattern::FanOut;
  std::string vector_family;
  std::size_t N = 0;
  LpVec test_vector{LpExponent::Infinity, 1};
  NormMeasure test_norm;
  NormMeasure output_norm;
  Rational max_multiplier_norm;  // actual operator norm, <= epsilon
  // p = 2 only: eps^2 * (sum_{i<=16} 1/i^2 + 1/16), an upper bound for
  // ||(sum f_i a_i)||^2 over every multiplier sequence in the eps-ball, in
  // either order. Below 1 it certifies that no witness exists.
  std::optional<Rational> l2_supremum_bound_squared;
};

// Searches N = 1..budget, both word orders, both multiplier patterns and the
// test vectors {e_1, flat, harmonic-weighted} (each of l_p norm <= 1) for a
// combination whose output norm exceeds 1. Enumeration order decides ties,
// so the lexicographically least witness is returned. 0 < eps <= 1.
WitnessResult witness_search(const Rational& eps, LpExponent p, std::size_t budget = 64);

struct CounterexampleReport {
  Rational epsilon;
  LpExponent p = LpExponent::One;
  WordOrder order = WordOrder::FThenA;
  std::size_t N = 0;  // least N with eps * H_N > 1
  Rational harmonic_N;
  std::size_t window = 0;  // 2N + 16
  Rational max_multiplier_norm;
  bool multipliers_in_ball = false;
  std::size_t distinct_multipliers = 0;  // {f'_1, ..., f'_N, 0}
  LpVec output{LpExponent::One, 1};      // (sum_i f_i a_i)(e_1)
  NormMeasure output_norm;
  bool exceeds_one = false;           // the construction as written
  bool verbatim_gap = false;          // p in {2, inf} and the construction stays <= 1
  std::optional<WitnessResult> witness;  // run for p in {2, inf}

  bool falsified() const { return exceeds_one || (witness && witness->found); }
};

CounterexampleReport build_counterexample(const Rational& eps, LpExponent p, WordOrder order = WordOrder::FThenA,
                                          std::size_t witness_budget = 64);

// Distance in operator norm between the permuted n-term partial sum of
// sum a_i and its limit diag(1/i).
struct TailDistance {
  std::string plan;
  std::size_t n = 0;
  Rational distance;
  std::size_t least_excluded = 1;       // distance == 1 / least_excluded
  bool initial_segment = false;         // the included indices are exactly {1..n}
  bool verified_on_unit_vector = false; // |(diag - S_n) e_m| == distance
};

std::vector<TailDistance> series_a_unconditional_check(std::size_t n, std::span<const series::PermutationPlan> plans);

// The l_2 stream e_i / i: unconditionally but not absolutely convergent.
struct DrWitness {
  std::size_t n = 0;
  Rational absolute_partial;      // H_n
  Rational l2_tail_bound_squared; // 1/n >= sum_{i>n} 1/i^2 (telescoping)
};

DrWitness dr_witness(std::size_t n);

}  // namespace ringlab::oplab
