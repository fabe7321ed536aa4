#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace ringlab::series {

// A bijection sigma of the positive integers, of which only finite prefixes
// are ever materialized.
class PermutationPlan {
 public:
  struct Identity {};
  // Fisher-Yates shuffle of each consecutive block of `window` indices.
  // window == 0 selects max(1, n/8) for a prefix of length n.
  struct SeededRandom {
    std::uint64_t seed = 0;
    std::size_t window = 0;
  };
  // Emits block 2, block 1, block 4, block 3, ...
  struct BlockSwap {
    std::size_t block = 1;
  };
  // Emits the listed indices, then every unused index in increasing order.
  struct Explicit {
    std::vector<std::size_t> prefix;
  };
  using Kind = std::variant<Identity, SeededRandom, BlockSwap, Explicit>;

  PermutationPlan() = default;
  explicit PermutationPlan(Kind kind);

  static PermutationPlan identity() { return PermutationPlan(Identity{}); }
  static PermutationPlan seeded_random(std::uint64_t seed, std::size_t window = 0) {
    return PermutationPlan(SeededRandom{seed, window});
  }
  static PermutationPlan block_swap(std::size_t block) { return PermutationPlan(BlockSwap{block}); }
  static PermutationPlan explicit_prefix(std::vector<std::size_t> prefix) {
    return PermutationPlan(Explicit{std::move(prefix)});
  }

  // sigma(1), ..., sigma(n); n distinct positive indices.
  std::vector<std::size_t> prefix(std::size_t n) const;

  const Kind& kind() const { return kind_; }
  std::string describe() const;

 private:
  Kind kind_;
};

// `count` seeded-random plans with seeds derived from base_seed.
std::vector<PermutationPlan> default_plans(std::size_t count, std::uint64_t base_seed, std::size_t window = 0);

// Draws from std::mt19937_64 with our own range reduction. The standard
// distributions are implementation-defined; this keeps seeded scenarios
// bit-reproducible across standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t bound);            // [0, bound)
  std::int64_t between(std::int64_t lo, std::int64_t hi);  // [lo, hi]
  double unit();                                        // [0, 1)

 private:
  std::mt19937_64 engine_;
};

}  // namespace ringlab::series
