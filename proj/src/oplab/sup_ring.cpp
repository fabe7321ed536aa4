#include "ringlab/oplab/sup_ring.hpp"

#include <algorithm>
#include <memory>

#include "ringlab/error.hpp"
#include "ringlab/parallel.hpp"
#include "ringlab/series/permutation.hpp"

namespace ringlab::oplab {

Rational SupRingElem::norm() const {
  Rational m(0);
  for (const auto& v : values_) m = std::max(m, ringlab::abs(v));
  return m;
}

namespace {

void same_ground(const SupRingElem& a, const SupRingElem& b) {
  require(a.ground_size() == b.ground_size(), ErrorKind::InvalidArgument, "ground sets differ");
}

}  // namespace

SupRingElem operator+(const SupRingElem& a, const SupRingElem& b) {
  same_ground(a, b);
  std::vector<Rational> v(a.values_.size());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = a.values_[x] + b.values_[x];
  return SupRingElem(std::move(v));
}

SupRingElem operator*(const SupRingElem& a, const SupRingElem& b) {
  same_ground(a, b);
  std::vector<Rational> v(a.values_.size());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = a.values_[x] * b.values_[x];
  return SupRingElem(std::move(v));
}

SupRingReport sup_ring_bound_verify(const series::TermStream<SupRingElem>& a, const Rational& eps,
                                    std::span<const SupRingElem> f, std::size_t n,
                                    const std::optional<std::vector<Rational>>& tail) {
  require(eps > 0, ErrorKind::Precondition, "sup_ring_bound_verify needs eps > 0");
  require(f.size() >= n, ErrorKind::Precondition, "sup_ring_bound_verify: fewer multipliers than terms");

  std::vector<SupRingElem> terms;
  terms.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) terms.push_back(a.term(i));
  const std::size_t X = n > 0 ? terms.front().ground_size() : (f.empty() ? 0 : f.front().ground_size());
  if (tail) require(tail->size() == X, ErrorKind::InvalidArgument, "tail bound size differs from |X|");

  SupRingReport r;
  r.A_lower = 0;
  r.A = 0;
  for (std::size_t x = 0; x < X; ++x) {
    Rational s(0);
    for (const auto& t : terms) s += ringlab::abs(t.at(x));
    r.A_lower = std::max(r.A_lower, s);
    if (tail) {
      require((*tail)[x] >= 0, ErrorKind::InvalidArgument, "negative tail bound");
      s += (*tail)[x];
    }
    r.A = std::max(r.A, s);
  }
  r.delta = r.A == 0 ? eps : Rational(eps / r.A);

  for (std::size_t i = 0; i < n; ++i)
    require(f[i].norm() <= r.delta, ErrorKind::Precondition,
            "multiplier f_" + std::to_string(i + 1) + " has sup-norm " + to_fraction_string(f[i].norm()) +
                " > delta = " + to_fraction_string(r.delta));

  SupRingElem partial(X);
  r.max_partial_norm = 0;
  for (std::size_t i = 0; i < n; ++i) {
    partial = partial + f[i] * terms[i];
    const Rational m = partial.norm();
    r.max_partial_norm = std::max(r.max_partial_norm, m);
    if (m > eps && r.containment) {
      r.containment = false;
      r.first_violation = i + 1;
    }
  }
  return r;
}

SupRingInstance make_sup_ring_instance(std::uint64_t seed, std::size_t max_ground, std::size_t n, const Rational& eps) {
  require(max_ground >= 1, ErrorKind::InvalidArgument, "max_ground must be >= 1");
  series::SeededRng rng(seed);
  SupRingInstance inst;
  inst.ground_size = 1 + rng.below(max_ground);
  const std::size_t X = inst.ground_size;
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Rational> v(X);
    for (auto& val : v) {
      // k / 16 * 2^-min(i, 60), k in [-16, 16]
      val = fraction(rng.between(-16, 16), 16) * inverse_power(2, std::min<std::size_t>(i, 60));
      val.canonicalize();
    }
    inst.terms.emplace_back(std::move(v));
  }
  Rational A(0);
  for (std::size_t x = 0; x < X; ++x) {
    Rational s(0);
    for (const auto& t : inst.terms) s += ringlab::abs(t.at(x));
    A = std::max(A, s);
  }
  const Rational delta = A == 0 ? eps : Rational(eps / A);
  const std::size_t F = 1 + rng.below(4);
  for (std::size_t k = 0; k < F; ++k) {
    std::vector<Rational> v(X);
    for (auto& val : v) {
      val = delta * fraction(rng.between(-8, 8), 8);
      val.canonicalize();
    }
    inst.value_set.emplace_back(std::move(v));
  }
  inst.labels.resize(n);
  for (auto& l : inst.labels) l = rng.below(F);
  return inst;
}

SupRingBatch sup_ring_batch(std::size_t instances, std::uint64_t seed, std::size_t max_ground, std::size_t n,
                            const Rational& eps) {
  series::SeededRng seeds(seed);
  std::vector<std::uint64_t> s(instances);
  for (auto& v : s) v = seeds.next();
  auto reports = parallel_map(instances, [&](std::size_t k) {
    auto inst = make_sup_ring_instance(s[k], max_ground, n, eps);
    auto terms = std::make_shared<std::vector<SupRingElem>>(inst.terms);
    series::TermStream<SupRingElem> stream([terms](std::size_t i) { return (*terms)[i - 1]; },
                                           series::SeriesClass::AbsolutelyConvergent, "random sup-ring terms");
    stream.with_length(n);
    std::vector<SupRingElem> f;
    f.reserve(n);
    for (auto l : inst.labels) f.push_back(inst.value_set[l]);
    return sup_ring_bound_verify(stream, eps, f, n);
  });
  SupRingBatch b;
  b.instances = instances;
  b.worst_ratio = 0;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    if (reports[k].containment)
      ++b.contained;
    else if (!b.first_failure)
      b.first_failure = k;
    b.worst_ratio = std::max(b.worst_ratio, Rational(reports[k].max_partial_norm / eps));
  }
  return b;
}

}  // namespace ringlab::oplab
