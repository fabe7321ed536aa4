#include "ringlab/nonarch/batch.hpp"

#include "ringlab/parallel.hpp"

namespace ringlab::nonarch {

BigInt random_below(series::SeededRng& rng, const BigInt& bound) {
  require(bound > 0, ErrorKind::InvalidArgument, "random_below needs a positive bound");
  const std::size_t words = mpz_sizeinbase(bound.get_mpz_t(), 2) / 64 + 2;
  BigInt x = 0;
  for (std::size_t w = 0; w < words; ++w) {
    x <<= 64;
    BigInt word;
    const std::uint64_t v = rng.next();
    mpz_import(word.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
    x += word;
  }
  return x % bound;
}

PadicDchInstance make_padic_dch_instance(std::uint32_t p, std::uint32_t m, std::uint32_t level, std::size_t n,
                                         std::uint64_t seed) {
  require(level <= m, ErrorKind::InvalidArgument, "ideal level beyond precision");
  auto ring = PadicRing::get(p, m);
  series::SeededRng rng(seed);
  PadicDchInstance inst;
  inst.seed = seed;
  const BigInt unit_bound = ring->power(m - level);
  const BigInt scale = ring->power(level);
  inst.multipliers.reserve(n);
  for (std::size_t i = 0; i < n; ++i) inst.multipliers.emplace_back(p, m, scale * random_below(rng, unit_bound));

  auto coeffs = std::make_shared<std::vector<BigInt>>();
  coeffs->reserve(n);
  for (std::size_t i = 0; i < n; ++i) coeffs->push_back(random_below(rng, ring->modulus()));
  inst.stream = series::TermStream<PadicInt>(
      [p, m, coeffs](std::size_t i) {
        const BigInt c = i <= coeffs->size() ? (*coeffs)[i - 1] : BigInt(1);
        return PadicInt(p, m, c) * PadicInt::prime_power(p, m, static_cast<std::uint32_t>(std::min<std::size_t>(i, m)));
      },
      series::SeriesClass::UnconditionallyConvergent, "c_i p^i");
  return inst;
}

DchBatchSummary dch_batch_padic(std::uint32_t p, std::uint32_t m, std::uint32_t level, std::size_t n,
                                std::size_t instances, std::uint64_t seed) {
  series::SeededRng seeds(seed);
  std::vector<std::uint64_t> instance_seeds(instances);
  for (auto& s : instance_seeds) s = seeds.next();

  auto reports = parallel_map(instances, [&](std::size_t k) {
    auto inst = make_padic_dch_instance(p, m, level, n, instance_seeds[k]);
    return dch_verify_open_ideal(inst.stream, level, std::span<const PadicInt>(inst.multipliers), n);
  });

  DchBatchSummary out;
  out.instances = instances;
  out.worst_cauchy_level.assign(m, 0);
  for (std::size_t k = 0; k < reports.size(); ++k) {
    if (reports[k].containment)
      ++out.contained;
    else if (!out.first_failure)
      out.first_failure = k;
    for (const auto& [lvl, N] : reports[k].cauchy_levels)
      out.worst_cauchy_level[lvl - 1] = std::max(out.worst_cauchy_level[lvl - 1], N);
  }
  return out;
}

}  // namespace ringlab::nonarch
