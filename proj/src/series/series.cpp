#include "ringlab/series/series.hpp"

#include <deque>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace ringlab::series {

std::string to_string(Status s) {
  switch (s) {
    case Status::Converged: return "converged";
    case Status::Diverged: return "diverged";
    case Status::Undecided: return "undecided";
  }
  return "undecided";
}

std::string to_string(ConvergenceCombination c) {
  switch (c) {
    case ConvergenceCombination::AbsoluteAndUnconditional: return "absolute-and-unconditional";
    case ConvergenceCombination::UnconditionalNotAbsolute: return "unconditional-not-absolute";
    case ConvergenceCombination::AbsoluteNotUnconditional: return "absolute-not-unconditional";
    case ConvergenceCombination::Neither: return "neither";
  }
  return "neither";
}

std::vector<PermutationPlan> default_probe_plans(std::uint64_t seed) {
  std::vector<PermutationPlan> plans;
  plans.push_back(PermutationPlan::identity());
  plans.push_back(PermutationPlan::block_swap(1));
  for (auto& p : default_plans(6, seed)) plans.push_back(std::move(p));
  return plans;
}

namespace {

// Without tol the loop runs until budget terms are emitted or scan_budget
// indices have been examined.
RearrangeResult greedy(const TermStream<double>& s, double target, std::size_t budget, std::size_t scan_budget,
                       std::optional<double> tol) {

  RearrangeResult r;
  std::deque<std::pair<std::size_t, double>> pos, neg;  // unused terms by sign, in index order
  std::size_t seen_pos = 0, seen_neg = 0;
  double min_magnitude = std::numeric_limits<double>::infinity();

  // Pulls the next stream index into its sign queue; false once the budget is spent.
  auto scan_one = [&]() {
    if (r.scanned >= scan_budget) return false;
    const std::size_t i = ++r.scanned;
    const double v = s.term(i);
    require(std::isfinite(v), ErrorKind::Precondition, "term " + std::to_string(i) + " is not finite");
    min_magnitude = std::min(min_magnitude, std::fabs(v));
    if (v >= 0) {
      pos.emplace_back(i, v);
      ++seen_pos;
    } else {
      neg.emplace_back(i, v);
      ++seen_neg;
    }
    return true;
  };

  double sum = 0.0;
  bool above = sum > target;
  double crossing_mag = 0.0;
  while (r.prefix.size() < budget) {
    auto& queue = above ? neg : pos;
    while (queue.empty() && scan_one()) {
    }
    if (queue.empty()) break;
    const auto [index, value] = queue.front();
    queue.pop_front();
    sum += value;
    r.prefix.push_back(index);
    r.trace.push_back(sum);
    const std::size_t step = r.prefix.size();

    const bool now_above = sum > target;
    if (now_above != above) {
      crossing_mag = std::fabs(value);
      if (r.first_crossing == 0) r.first_crossing = step;
    }
    above = now_above;

    const double gap = std::fabs(sum - target);
    if (r.first_crossing != 0) {
      if (gap > crossing_mag + 1e-12) ++r.band_violations;
      if (crossing_mag > 0) r.worst_band_ratio = std::max(r.worst_band_ratio, gap / crossing_mag);
    }
    if (gap < r.closest_gap) {
      r.closest_gap = gap;
      r.closest_step = step;
    }
    if (tol && r.first_crossing != 0 && gap <= *tol) {
      r.reached = true;
      break;
    }
  }
  r.final_sum = sum;

  if (!r.reached) {
    // Make the sign precondition decidable on the scanned prefix.
    while ((seen_pos == 0 || seen_neg == 0) && scan_one()) {
    }
    if (seen_pos == 0 || seen_neg == 0)
      fail(ErrorKind::Precondition, "riemann_rearrange: budget of " + std::to_string(scan_budget) +
                                        " exhausted before terms of both signs appeared");
    if (tol && !(min_magnitude < *tol))
      fail(ErrorKind::Precondition, "riemann_rearrange: term magnitudes stay above tol on the sampled prefix");
  }
  return r;
}

}  // namespace

RearrangeResult riemann_rearrange(const TermStream<double>& s, double target, std::size_t budget, double tol) {
  require(tol > 0, ErrorKind::Precondition, "riemann_rearrange needs tol > 0");
  require(budget >= 1, ErrorKind::Precondition, "riemann_rearrange needs budget >= 1");
  return greedy(s, target, budget, budget, tol);
}

RearrangeResult greedy_rearrangement(const TermStream<double>& s, double target, std::size_t count) {
  require(count >= 1, ErrorKind::Precondition, "greedy_rearrangement needs count >= 1");
  std::size_t scan = count > std::numeric_limits<std::size_t>::max() / 64 ? count : 64 * count;
  if (const auto len = s.declared_length()) scan = std::min(scan, std::max<std::size_t>(*len, 1));
  return greedy(s, target, count, scan, std::nullopt);
}

bool band_property_holds(const TermStream<double>& s, const RearrangeResult& r, double target, double slack) {
  double sum = 0.0, crossing_mag = 0.0;
  bool above = sum > target, crossed = false;
  for (std::size_t k = 0; k < r.prefix.size(); ++k) {
    const double v = s.term(r.prefix[k]);
    sum += v;
    const bool now_above = sum > target;
    if (now_above != above) {
      crossing_mag = std::fabs(v);
      crossed = true;
    }
    above = now_above;
    if (crossed && std::fabs(sum - target) > crossing_mag + slack) return false;
  }
  return true;
}

void write_trace_csv(std::ostream& os, std::span<const double> norms,
                     const std::vector<std::vector<double>>& coordinates) {
  os << "index,norm_of_partial";
  const std::size_t dims = coordinates.empty() ? 0 : coordinates.front().size();
  for (std::size_t d = 1; d <= dims; ++d) os << ",c" << d;
  os << '\n';
  std::ostringstream cell;
  cell << std::setprecision(17);
  for (std::size_t k = 0; k < norms.size(); ++k) {
    cell.str({});
    cell << (k + 1) << ',' << norms[k];
    if (k < coordinates.size())
      for (double c : coordinates[k]) cell << ',' << c;
    os << cell.str() << '\n';
  }
}

}  // namespace ringlab::series
