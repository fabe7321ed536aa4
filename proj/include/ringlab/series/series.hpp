#pragma once

// Generic series machinery over any NormedGroup: partial sums, Cauchy
// detection, rearrangement probes, grouped summation and the greedy
// Riemann rearrangement.
//
// A probe never proves unconditional convergence; it can only falsify it or
// collect supporting evidence. Verdicts say so through their status.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ringlab/error.hpp"
#include "ringlab/parallel.hpp"
#include "ringlab/series/group.hpp"
#include "ringlab/series/permutation.hpp"
#include "ringlab/series/stream.hpp"

namespace ringlab::series {

enum class Status { Converged, Diverged, Undecided };
std::string to_string(Status s);

struct Witness {
  std::string description;
  std::size_t plan_a = 0;
  std::size_t plan_b = 0;
  double separation = 0.0;
};

template <class V>
struct ConvergenceVerdict {
  Status status = Status::Undecided;
  std::optional<V> limit;  // present iff converged
  double tail_bound = std::numeric_limits<double>::infinity();
  std::optional<Witness> witness;  // present iff diverged
  std::size_t terms_used = 0;
  std::string note;
};

// ---------------------------------------------------------------------------
// partial sums

// [S_1, ..., S_n]. The empty sum S_0 is g.zero().
template <NormedGroup G>
std::vector<typename G::value_type> partial_sums(const G& g, const TermStream<typename G::value_type>& s,
                                                 std::size_t n) {
  std::vector<typename G::value_type> out;
  out.reserve(n);
  auto acc = g.zero();
  for (std::size_t i = 1; i <= n; ++i) {
    accumulate(g, acc, s.term(i));
    out.push_back(acc);
  }
  return out;
}

template <NormedGroup G>
typename G::value_type partial_sum(const G& g, const TermStream<typename G::value_type>& s, std::size_t n) {
  auto acc = g.zero();
  for (std::size_t i = 1; i <= n; ++i) accumulate(g, acc, s.term(i));
  return acc;
}

// ---------------------------------------------------------------------------
// Cauchy detection

template <class N>
struct CauchyResult {
  bool ok = true;
  // 1-based positions (i < j) into the full trace.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
  N diameter{};  // max pairwise distance inside the window (when ok)
};

// Checks norm(trace[i] - trace[j]) <= tol for all i, j among the last
// `window` entries; reports the lexicographically first violating pair.
template <NormedGroup G>
CauchyResult<typename G::norm_type> cauchy_check(const G& g, std::span<const typename G::value_type> trace,
                                                 const typename G::norm_type& tol, std::size_t window) {
  require(!trace.empty(), ErrorKind::Precondition, "cauchy_check on an empty trace");
  require(!(tol < typename G::norm_type(0)), ErrorKind::Precondition, "cauchy_check tolerance must be >= 0");
  require(window >= 1, ErrorKind::Precondition, "cauchy_check window must be >= 1");
  require(window <= trace.size(), ErrorKind::Precondition,
          "cauchy_check window " + std::to_string(window) + " exceeds trace length " + std::to_string(trace.size()));
  CauchyResult<typename G::norm_type> r;
  r.diameter = typename G::norm_type(0);
  const std::size_t first = trace.size() - window;
  for (std::size_t i = first; i < trace.size(); ++i) {
    for (std::size_t j = i + 1; j < trace.size(); ++j) {
      auto d = g.norm(sub(g, trace[i], trace[j]));
      if (tol < d) {
        r.ok = false;
        r.violation = std::make_pair(i + 1, j + 1);
        return r;
      }
      if (r.diameter < d) r.diameter = d;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// permuted runs

template <class V>
struct PlanRun {
  V final_sum{};
  std::vector<V> tail;        // the last `keep` partial sums, oldest first
  std::vector<double> norms;  // norm of every partial sum, if recorded
};

template <NormedGroup G>
PlanRun<typename G::value_type> run_plan(const G& g, const TermStream<typename G::value_type>& s,
                                         const PermutationPlan& plan, std::size_t n, std::size_t keep,
                                         bool record_norms) {
  PlanRun<typename G::value_type> run;
  const auto order = plan.prefix(n);
  auto acc = g.zero();
  run.tail.reserve(std::min(keep, n));
  if (record_norms) run.norms.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    accumulate(g, acc, s.term(order[k]));
    if (k + keep >= n) run.tail.push_back(acc);
    if (record_norms) run.norms.push_back(to_double(g.norm(acc)));
  }
  run.final_sum = std::move(acc);
  return run;
}

template <class N>
struct ProbeOptions {
  N tol{};
  std::size_t window = 0;         // 0: n/8 clamped to [1, 32]
  double separation_factor = 10;  // divergence needs separation > factor * tol
  bool record_norms = false;
};

template <class N>
struct PlanSummary {
  std::string plan;
  bool cauchy_ok = false;
  std::optional<std::pair<std::size_t, std::size_t>> violation;
  N diameter{};
  double final_norm = 0.0;
};

template <NormedGroup G>
struct ProbeResult {
  ConvergenceVerdict<typename G::value_type> verdict;
  std::vector<PlanSummary<typename G::norm_type>> plans;
  std::vector<std::vector<double>> norm_traces;  // per plan, when recorded
};

// Runs every plan for n terms. Converged iff every trace passes cauchy_check
// and all final sums agree within tol. Diverged iff every trace passes and
// some pair of final sums is separated by more than separation_factor * tol
// (two rearrangements settling on different values). Otherwise undecided.
template <NormedGroup G>
ProbeResult<G> unconditional_probe(const G& g, const TermStream<typename G::value_type>& s,
                                   std::span<const PermutationPlan> plans, std::size_t n,
                                   const ProbeOptions<typename G::norm_type>& opts) {
  using N = typename G::norm_type;
  require(!plans.empty(), ErrorKind::Precondition, "unconditional_probe needs at least one plan");
  require(n >= 1, ErrorKind::Precondition, "unconditional_probe needs n >= 1");
  require(!(opts.tol < N(0)), ErrorKind::Precondition, "unconditional_probe tolerance must be >= 0");
  const std::size_t window =
      opts.window == 0 ? std::clamp<std::size_t>(n / 8, 1, 32) : std::min(opts.window, n);

  auto runs = parallel_map(plans.size(), [&](std::size_t p) {
    return run_plan(g, s, plans[p], n, window, opts.record_norms);
  });

  ProbeResult<G> out;
  bool all_cauchy = true;
  double tail = 0.0;
  for (std::size_t p = 0; p < plans.size(); ++p) {
    auto c = cauchy_check(g, std::span<const typename G::value_type>(runs[p].tail), opts.tol, window);
    PlanSummary<N> ps;
    ps.plan = plans[p].describe();
    ps.cauchy_ok = c.ok;
    if (c.violation) {
      // report positions relative to the full trace
      const std::size_t shift = n - runs[p].tail.size();
      ps.violation = std::make_pair(c.violation->first + shift, c.violation->second + shift);
    }
    ps.diameter = c.diameter;
    ps.final_norm = to_double(g.norm(runs[p].final_sum));
    all_cauchy = all_cauchy && c.ok;
    if (c.ok) tail = std::max(tail, to_double(c.diameter));
    out.plans.push_back(std::move(ps));
    if (opts.record_norms) out.norm_traces.push_back(std::move(runs[p].norms));
  }

  N max_sep(0);
  std::optional<std::pair<std::size_t, std::size_t>> far_pair;
  const double sep_threshold = opts.separation_factor * to_double(opts.tol);
  for (std::size_t a = 0; a < runs.size(); ++a) {
    for (std::size_t b = a + 1; b < runs.size(); ++b) {
      N d = g.norm(sub(g, runs[a].final_sum, runs[b].final_sum));
      if (max_sep < d) max_sep = d;
      if (!far_pair && to_double(d) > sep_threshold && opts.tol < d) far_pair = std::make_pair(a, b);
    }
  }

  auto& v = out.verdict;
  v.terms_used = n * plans.size();
  if (all_cauchy && !(opts.tol < max_sep)) {
    std::size_t ref = 0;
    for (std::size_t p = 0; p < plans.size(); ++p)
      if (std::holds_alternative<PermutationPlan::Identity>(plans[p].kind())) {
        ref = p;
        break;
      }
    v.status = Status::Converged;
    v.limit = runs[ref].final_sum;
    v.tail_bound = std::max(tail, to_double(max_sep));
    v.note = "evidence only: a finite probe cannot establish unconditional convergence";
  } else if (all_cauchy && far_pair) {
    v.status = Status::Diverged;
    Witness w;
    w.plan_a = far_pair->first;
    w.plan_b = far_pair->second;
    w.separation = to_double(g.norm(sub(g, runs[w.plan_a].final_sum, runs[w.plan_b].final_sum)));
    w.description = "plans " + out.plans[w.plan_a].plan + " and " + out.plans[w.plan_b].plan +
                    " settle on sums separated by " + std::to_string(w.separation);
    v.witness = std::move(w);
    v.note = "rearrangements stabilized on different values";
  } else {
    v.status = Status::Undecided;
    v.note = all_cauchy ? "final sums disagree by less than the divergence separation"
                        : "some rearranged trace failed the Cauchy check within the budget";
  }
  return out;
}

// ---------------------------------------------------------------------------
// grouped summation

template <class V>
struct Endomorphism {
  std::string name;
  std::function<V(const V&)> apply;
};

template <class V>
struct GroupedSum {
  V direct;
  V grouped;
  bool equal = false;
};

// direct  = sum_{i<=n} f_{labels[i]}(a_i)
// grouped = sum_{f in F} f(x^f_n),  x^f_n = sum_{k<=n, labels[k]=f} a_k
// Each endomorphism that occurs is spot-checked for additivity on (a_1, a_2)
// and for f(0) = 0 before summing.
template <NormedGroup G>
GroupedSum<typename G::value_type> grouped_sum(const G& g, const TermStream<typename G::value_type>& a,
                                               std::span<const Endomorphism<typename G::value_type>> tags,
                                               std::span<const std::size_t> labels, std::size_t n) {
  using V = typename G::value_type;
  require(labels.size() >= n, ErrorKind::Precondition, "grouped_sum: fewer labels than terms");
  std::vector<bool> used(tags.size(), false);
  for (std::size_t i = 0; i < n; ++i) {
    require(labels[i] < tags.size(), ErrorKind::Precondition,
            "grouped_sum: label " + std::to_string(labels[i]) + " at position " + std::to_string(i + 1) +
                " is outside F");
    used[labels[i]] = true;
  }

  auto same = [&](const V& x, const V& y) {
    if constexpr (G::exact) {
      return g.equal(x, y);
    } else {
      double scale = 1.0 + std::max(to_double(g.norm(x)), to_double(g.norm(y)));
      return to_double(g.norm(sub(g, x, y))) <= 1e-9 * scale;
    }
  };
  if (n > 0) {
    const V x = a.term(1);
    const V y = n > 1 ? a.term(2) : g.zero();
    for (std::size_t t = 0; t < tags.size(); ++t) {
      if (!used[t]) continue;
      const auto& f = tags[t].apply;
      bool additive = same(f(g.add(x, y)), g.add(f(x), f(y))) && same(f(g.zero()), g.zero());
      require(additive, ErrorKind::Precondition, "grouped_sum: tag '" + tags[t].name + "' is not additive");
    }
  }

  V direct = g.zero();
  std::vector<V> bucket(tags.size(), g.zero());
  for (std::size_t i = 1; i <= n; ++i) {
    const V term = a.term(i);
    const auto tag = labels[i - 1];
    accumulate(g, direct, tags[tag].apply(term));
    accumulate(g, bucket[tag], term);
  }
  V grouped = g.zero();
  for (std::size_t t = 0; t < tags.size(); ++t)
    if (used[t]) accumulate(g, grouped, tags[t].apply(bucket[t]));
  const bool eq = same(direct, grouped);
  return {std::move(direct), std::move(grouped), eq};
}

// ---------------------------------------------------------------------------
// greedy rearrangement of a conditionally convergent real series

struct RearrangeResult {
  bool reached = false;
  std::vector<std::size_t> prefix;  // emitted sigma(1), sigma(2), ...
  std::vector<double> trace;        // partial sums along the prefix
  double final_sum = 0.0;
  double closest_gap = std::numeric_limits<double>::infinity();
  std::size_t closest_step = 0;
  std::size_t first_crossing = 0;  // 1-based step, 0 if the target was never crossed
  std::size_t scanned = 0;         // stream indices examined
  // Band property: after the first crossing every |S_k - target| is at most
  // the magnitude of the term that made the most recent crossing.
  std::size_t band_violations = 0;
  double worst_band_ratio = 0.0;

  PermutationPlan plan() const { return PermutationPlan::explicit_prefix(prefix); }
};

// Consumes unused non-negative terms while the running sum is <= target and
// unused negative terms while it is > target. Stops once the target has been
// crossed and the running sum is within tol of it.
RearrangeResult riemann_rearrange(const TermStream<double>& s, double target, std::size_t budget, double tol);

// The same greedy order with no stopping rule: the first count terms, or fewer
// if the needed sign does not show up among the first 64 * count indices.
RearrangeResult greedy_rearrangement(const TermStream<double>& s, double target, std::size_t count);

// Checks the band property of a finished rearrangement against the stream.
bool band_property_holds(const TermStream<double>& s, const RearrangeResult& r, double target, double slack = 1e-12);

// ---------------------------------------------------------------------------
// absolute vs. unconditional

enum class ConvergenceCombination {
  AbsoluteAndUnconditional,
  UnconditionalNotAbsolute,  // the Dvoretzky-Rogers situation
  AbsoluteNotUnconditional,  // only possible in an incomplete group
  Neither,
};
std::string to_string(ConvergenceCombination c);

template <NormedGroup G>
struct AbsoluteReport {
  double absolute_partial = 0.0;  // sum_{i<=n} norm(a_i)
  double absolute_half_gap = 0.0; // sum_{n/2 < i <= n} norm(a_i)
  bool absolute_settled = false;  // half gap <= tol
  ConvergenceVerdict<typename G::value_type> verdict;
  ConvergenceCombination combination = ConvergenceCombination::Neither;
};

// Identity, block-swap(1) and six seeded-random plans.
std::vector<PermutationPlan> default_probe_plans(std::uint64_t seed = 0x5eedULL);

// absolute_partial is the n-term sum of norms; the norm series is taken as
// settled when its second half contributes at most tol. The unconditional
// verdict comes from unconditional_probe with the default plans.
template <NormedGroup G>
AbsoluteReport<G> absolute_vs_unconditional_report(const G& g, const TermStream<typename G::value_type>& s,
                                                   std::size_t n, const ProbeOptions<typename G::norm_type>& opts) {
  require(n >= 1, ErrorKind::Precondition, "absolute_vs_unconditional_report needs n >= 1");
  AbsoluteReport<G> r;
  for (std::size_t i = 1; i <= n; ++i) {
    double v = to_double(g.norm(s.term(i)));
    r.absolute_partial += v;
    if (i > n / 2) r.absolute_half_gap += v;
  }
  r.absolute_settled = r.absolute_half_gap <= to_double(opts.tol);
  auto plans = default_probe_plans();
  r.verdict = unconditional_probe(g, s, std::span<const PermutationPlan>(plans), n, opts).verdict;
  const bool unc = r.verdict.status == Status::Converged;
  if (r.absolute_settled && unc)
    r.combination = ConvergenceCombination::AbsoluteAndUnconditional;
  else if (unc)
    r.combination = ConvergenceCombination::UnconditionalNotAbsolute;
  else if (r.absolute_settled)
    r.combination = ConvergenceCombination::AbsoluteNotUnconditional;
  else
    r.combination = ConvergenceCombination::Neither;
  return r;
}

// CSV with header "index,norm_of_partial[,c1,c2,...]".
void write_trace_csv(std::ostream& os, std::span<const double> norms,
                     const std::vector<std::vector<double>>& coordinates = {});

}  // namespace ringlab::series
