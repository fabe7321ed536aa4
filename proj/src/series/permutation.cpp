#include "ringlab/series/permutation.hpp"

#include <algorithm>
#include <unordered_set>

#include "ringlab/error.hpp"
#include "ringlab/series/group.hpp"
#include "ringlab/series/stream.hpp"

namespace ringlab::series {

std::uint64_t SeededRng::below(std::uint64_t bound) {
  require(bound > 0, ErrorKind::InvalidArgument, "SeededRng::below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::int64_t SeededRng::between(std::int64_t lo, std::int64_t hi) {
  require(lo <= hi, ErrorKind::InvalidArgument, "SeededRng::between with lo > hi");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  return lo + static_cast<std::int64_t>(below(span));
}

double SeededRng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

PermutationPlan::PermutationPlan(Kind kind) : kind_(std::move(kind)) {
  if (auto* b = std::get_if<BlockSwap>(&kind_))
    require(b->block > 0, ErrorKind::InvalidArgument, "block-swap plan needs block >= 1");
  if (auto* e = std::get_if<Explicit>(&kind_)) {
    std::unordered_set<std::size_t> seen;
    for (std::size_t i : e->prefix) {
      require(i > 0, ErrorKind::InvalidArgument, "explicit plan contains index 0");
      require(seen.insert(i).second, ErrorKind::InvalidArgument,
              "explicit plan repeats index " + std::to_string(i));
    }
  }
}

std::vector<std::size_t> PermutationPlan::prefix(std::size_t n) const {
  std::vector<std::size_t> out;
  out.reserve(n);
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Identity>) {
          for (std::size_t i = 1; i <= n; ++i) out.push_back(i);
        } else if constexpr (std::is_same_v<K, SeededRandom>) {
          const std::size_t w = k.window == 0 ? std::max<std::size_t>(1, n / 8) : k.window;
          SeededRng rng(k.seed);
          std::vector<std::size_t> block(w);
          for (std::size_t start = 1; out.size() < n; start += w) {
            for (std::size_t j = 0; j < w; ++j) block[j] = start + j;
            for (std::size_t j = w; j > 1; --j) std::swap(block[j - 1], block[rng.below(j)]);
            for (std::size_t j = 0; j < w && out.size() < n; ++j) out.push_back(block[j]);
          }
        } else if constexpr (std::is_same_v<K, BlockSwap>) {
          const std::size_t b = k.block;
          for (std::size_t pair = 0; out.size() < n; ++pair) {
            const std::size_t base = 2 * pair * b;
            for (std::size_t j = 1; j <= b && out.size() < n; ++j) out.push_back(base + b + j);
            for (std::size_t j = 1; j <= b && out.size() < n; ++j) out.push_back(base + j);
          }
        } else {
          std::unordered_set<std::size_t> used;
          for (std::size_t i : k.prefix) {
            if (out.size() == n) break;
            out.push_back(i);
            used.insert(i);
          }
          for (std::size_t i = 1; out.size() < n; ++i)
            if (!used.count(i)) out.push_back(i);
        }
      },
      kind_);
  return out;
}

std::string PermutationPlan::describe() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Identity>)
          return "identity";
        else if constexpr (std::is_same_v<K, SeededRandom>)
          return "seeded-random(seed=" + std::to_string(k.seed) + ",window=" +
                 (k.window == 0 ? std::string("auto") : std::to_string(k.window)) + ")";
        else if constexpr (std::is_same_v<K, BlockSwap>)
          return "block-swap(" + std::to_string(k.block) + ")";
        else
          return "explicit(prefix=" + std::to_string(k.prefix.size()) + ")";
      },
      kind_);
}

std::vector<PermutationPlan> default_plans(std::size_t count, std::uint64_t base_seed, std::size_t window) {
  std::vector<PermutationPlan> plans;
  plans.reserve(count);
  SeededRng rng(base_seed);
  for (std::size_t i = 0; i < count; ++i) plans.push_back(PermutationPlan::seeded_random(rng.next(), window));
  return plans;
}

std::string to_string(SeriesClass c) {
  switch (c) {
    case SeriesClass::AbsolutelyConvergent: return "absolutely-convergent";
    case SeriesClass::UnconditionallyConvergent: return "unconditionally-convergent";
    case SeriesClass::ConditionallyConvergent: return "conditionally-convergent";
    case SeriesClass::Divergent: return "divergent";
    case SeriesClass::Unknown: return "unknown";
  }
  return "unknown";
}

LpExponent parse_lp_exponent(const std::string& text) {
  if (text == "1") return LpExponent::One;
  if (text == "2") return LpExponent::Two;
  if (text == "inf" || text == "infinity" || text == "oo") return LpExponent::Infinity;
  fail(ErrorKind::InvalidArgument, "unsupported l_p exponent '" + text + "' (expected 1, 2 or inf)");
}

std::string to_string(LpExponent p) {
  switch (p) {
    case LpExponent::One: return "1";
    case LpExponent::Two: return "2";
    case LpExponent::Infinity: return "inf";
  }
  return "?";
}

}  // namespace ringlab::series
