#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ringlab/nonarch/padic.hpp"
#include "ringlab/nonarch/verify.hpp"
#include "ringlab/series/permutation.hpp"

namespace ringlab::nonarch {

// Uniform residue in [0, bound), bound > 0.
BigInt random_below(series::SeededRng& rng, const BigInt& bound);

// Seeded instance: a_i = c_i * p^i with random c_i, and multipliers
// f_i = p^level * u_i with random u_i (any sequence in the ideal).
struct PadicDchInstance {
  std::uint64_t seed = 0;
  std::vector<PadicInt> multipliers;
  series::TermStream<PadicInt> stream;
};
PadicDchInstance make_padic_dch_instance(std::uint32_t p, std::uint32_t m, std::uint32_t level, std::size_t n,
                                         std::uint64_t seed);

struct DchBatchSummary {
  std::size_t instances = 0;
  std::size_t contained = 0;
  std::optional<std::size_t> first_failure;  // instance index
  // max over instances of the observed Cauchy index per level
  std::vector<std::size_t> worst_cauchy_level;
};

DchBatchSummary dch_batch_padic(std::uint32_t p, std::uint32_t m, std::uint32_t level, std::size_t n,
                                std::size_t instances, std::uint64_t seed);

}  // namespace ringlab::nonarch
