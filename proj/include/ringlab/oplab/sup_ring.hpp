#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ringlab/rational.hpp"
#include "ringlab/series/stream.hpp"

namespace ringlab::oplab {

// An element of l_inf(X) for a finite ground set X = {0, ..., |X|-1}, with
// pointwise operations and the supremum norm.
class SupRingElem {
 public:
  explicit SupRingElem(std::size_t ground_size) : values_(ground_size, Rational(0)) {}
  explicit SupRingElem(std::vector<Rational> values) : values_(std::move(values)) {}

  std::size_t ground_size() const { return values_.size(); }
  const Rational& at(std::size_t x) const { return values_.at(x); }
  const std::vector<Rational>& values() const { return values_; }

  Rational norm() const;  // max_x |a(x)|

  friend SupRingElem operator+(const SupRingElem& a, const SupRingElem& b);
  friend SupRingElem operator*(const SupRingElem& a, const SupRingElem& b);
  friend bool operator==(const SupRingElem& a, const SupRingElem& b) { return a.values_ == b.values_; }

 private:
  std::vector<Rational> values_;
};

struct SupRingReport {
  // max_x sum_{i<=n} |a_i(x)|, a lower bound for A = sup_x sum_i |a_i(x)|
  Rational A_lower;
  // A_lower plus the declared per-point tail bounds (equal to A_lower when
  // no tail is declared); delta is computed from this value
  Rational A;
  Rational delta;  // eps / A (eps when A = 0)
  bool containment = true;
  std::size_t first_violation = 0;  // first partial sum with sup-norm > eps
  Rational max_partial_norm;
};

// Checks the chain |sum_{i<=k} f_i(x) a_i(x)| <= delta * sum_i |a_i(x)| <= delta * A <= eps
// at the level of partial sums: every f_i must lie in the delta-ball and
// every partial sum of sum f_i a_i must have sup-norm <= eps. tail, when
// given, bounds sum_{i>n} |a_i(x)| per point x.
SupRingReport sup_ring_bound_verify(const series::TermStream<SupRingElem>& a, const Rational& eps,
                                    std::span<const SupRingElem> f, std::size_t n,
                                    const std::optional<std::vector<Rational>>& tail = std::nullopt);

struct SupRingInstance {
  std::size_t ground_size = 0;
  std::vector<SupRingElem> terms;  // finite stream: a_i = 0 beyond n
  std::vector<SupRingElem> value_set;  // F, |F| <= 4
  std::vector<std::size_t> labels;     // f_i = F[labels[i]]
};

// Seeded instance with |X| <= max_ground, |a_i(x)| <= 2^-i and multipliers
// drawn from a finite set inside the delta-ball, delta = eps / A.
SupRingInstance make_sup_ring_instance(std::uint64_t seed, std::size_t max_ground, std::size_t n, const Rational& eps);

struct SupRingBatch {
  std::size_t instances = 0;
  std::size_t contained = 0;
  std::optional<std::size_t> first_failure;
  Rational worst_ratio;  // max over instances of max_partial_norm / eps
};

SupRingBatch sup_ring_batch(std::size_t instances, std::uint64_t seed, std::size_t max_ground, std::size_t n,
                            const Rational& eps);

}  // namespace ringlab::oplab
