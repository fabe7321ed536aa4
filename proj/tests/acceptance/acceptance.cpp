// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 125).

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ringlab/error.hpp"
#include "ringlab/lcprobe/lcprobe.hpp"
#include "ringlab/nonarch/batch.hpp"
#include "ringlab/nonarch/padic.hpp"
#include "ringlab/nonarch/verify.hpp"
#include "ringlab/oplab/counterexample.hpp"
#include "ringlab/oplab/sup_ring.hpp"
#include "ringlab/rational.hpp"
#include "ringlab/series/group.hpp"
#include "ringlab/series/series.hpp"

using namespace ringlab;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// --- 1 -------------------------------------------------------------------
Outcome exact_l1_counterexample() {
  auto t0 = Clock::now();
  auto r = oplab::build_counterexample(Rational(1, 2), series::LpExponent::One);
  double s = seconds_since(t0);
  std::ostringstream os;
  os << "N=" << r.N << " max|f_i|=" << to_fraction_string(r.max_multiplier_norm)
     << " |out|=" << to_fraction_string(r.output_norm.value) << " t=" << s << "s";
  bool ok = r.N == 4 && r.max_multiplier_norm == Rational(1, 2) && r.multipliers_in_ball &&
            r.output_norm.value == Rational(25, 24) && r.exceeds_one && s < 1.0;
  return {ok, os.str()};
}

// --- 2 -------------------------------------------------------------------
Outcome witness_l2_linf() {
  bool ok = true;
  std::ostringstream os;
  for (auto p : {series::LpExponent::Two, series::LpExponent::Infinity}) {
    for (const Rational eps : {Rational(1, 2), Rational(1)}) {
      auto t0 = Clock::now();
      auto r = oplab::build_counterexample(eps, p);
      double s = seconds_since(t0);
      const auto& w = *r.witness;
      const bool in_ball = w.max_multiplier_norm <= eps;
      const bool case_ok = w.found && in_ball && w.output_norm.exceeds(Rational(1)) && s < 30.0 &&
                           r.verbatim_gap == !r.exceeds_one;
      ok = ok && case_ok;
      os << "[p=" << series::to_string(p) << " eps=" << to_fraction_string(eps) << ": "
         << (case_ok ? "ok" : "no witness") << " best="
         << (w.found ? w.output_norm.to_string() : "~" + std::to_string(w.output_norm.approx())) << " via "
         << oplab::to_string(w.order) << "/" << oplab::to_string(w.pattern) << "/" << w.vector_family
         << " N=" << w.N << " verbatim_gap=" << (r.verbatim_gap ? "yes" : "no");
      if (w.l2_supremum_bound_squared)
        os << " sup_bound^2=" << w.l2_supremum_bound_squared->get_d();
      os << " t=" << s << "s] ";
    }
  }
  return {ok, os.str()};
}

// --- 3 -------------------------------------------------------------------
Outcome padic_containment() {
  auto t0 = Clock::now();
  auto a = nonarch::dch_batch_padic(2, 32, 3, 100, 1000, 0x2b0b);
  auto b = nonarch::dch_batch_padic(3, 20, 2, 100, 1000, 0x3c0c);
  double s = seconds_since(t0);
  std::ostringstream os;
  os << "Z_2: " << a.contained << "/" << a.instances << " Z_3: " << b.contained << "/" << b.instances << " t=" << s
     << "s";
  return {a.contained == 1000 && b.contained == 1000 && s < 10.0, os.str()};
}

// --- 4 -------------------------------------------------------------------
template <class G, class MakeTerm, class MakeTag>
std::size_t grouped_batch(const G& g, std::size_t instances, std::uint64_t seed, MakeTerm make_term, MakeTag make_tag,
                          std::size_t& max_n) {
  using V = typename G::value_type;
  series::SeededRng seeds(seed);
  std::size_t equal = 0;
  for (std::size_t k = 0; k < instances; ++k) {
    series::SeededRng rng(seeds.next());
    const std::size_t n = 1 + rng.below(10000);
    max_n = std::max(max_n, n);
    const std::size_t F = 1 + rng.below(8);
    std::vector<series::Endomorphism<V>> tags;
    for (std::size_t t = 0; t < F; ++t) tags.push_back(make_tag(rng));
    auto terms = std::make_shared<std::vector<V>>();
    std::vector<std::size_t> labels;
    for (std::size_t i = 0; i < n; ++i) {
      terms->push_back(make_term(rng, i + 1));
      labels.push_back(rng.below(F));
    }
    series::TermStream<V> s([terms](std::size_t i) { return (*terms)[i - 1]; });
    auto r = series::grouped_sum(g, s, std::span<const series::Endomorphism<V>>(tags),
                                 std::span<const std::size_t>(labels), n);
    equal += r.equal && g.equal(r.direct, r.grouped);
  }
  return equal;
}

Outcome grouped_identity() {
  std::size_t max_q = 0, max_z = 0;
  const auto q = grouped_batch(
      series::RationalGroup{}, 500, 0x41,
      [](series::SeededRng& rng, std::size_t) { return fraction(rng.between(-99, 99), 1 + rng.below(12)); },
      [](series::SeededRng& rng) {
        const Rational c = fraction(rng.between(-20, 20), 1 + rng.below(9));
        return series::Endomorphism<Rational>{"x*" + to_fraction_string(c), [c](const Rational& x) {
                                                Rational y = c * x;
                                                return y;
                                              }};
      },
      max_q);
  const auto z = grouped_batch(
      nonarch::PadicGroup{5, 20}, 500, 0x42,
      [](series::SeededRng& rng, std::size_t i) {
        return nonarch::PadicInt(5, 20, static_cast<long>(rng.below(1000000))) *
               nonarch::PadicInt::prime_power(5, 20, static_cast<std::uint32_t>(std::min<std::size_t>(i % 25, 20)));
      },
      [](series::SeededRng& rng) {
        const nonarch::PadicInt c(5, 20, static_cast<long>(rng.below(1000000)));
        return series::Endomorphism<nonarch::PadicInt>{"x*" + c.to_string(),
                                                       [c](const nonarch::PadicInt& x) { return c * x; }};
      },
      max_z);
  std::ostringstream os;
  os << "Q: " << q << "/500 (max n " << max_q << ") Z_5: " << z << "/500 (max n " << max_z << ")";
  return {q == 500 && z == 500, os.str()};
}

// --- 5 -------------------------------------------------------------------
Outcome sup_ring_bound() {
  auto b = oplab::sup_ring_batch(500, 0x55, 16, 24, Rational(1, 2));
  std::ostringstream os;
  os << b.contained << "/" << b.instances << " within eps, worst |partial|/eps=" << b.worst_ratio.get_d();
  return {b.contained == 500 && b.worst_ratio <= 1, os.str()};
}

// --- 6 -------------------------------------------------------------------
Outcome series_a_tail() {
  bool ok = true;
  std::ostringstream os;
  for (std::size_t n : {1u, 10u, 100u, 10000u}) {
    std::vector<series::PermutationPlan> plans{series::PermutationPlan::identity()};
    for (std::uint64_t k = 0; k < 8; ++k) plans.push_back(series::PermutationPlan::seeded_random(0xa0 + k, n));
    auto d = oplab::series_a_unconditional_check(n, plans);
    std::size_t good = 0;
    for (const auto& t : d) good += t.distance == Rational(1, n + 1) && t.verified_on_unit_vector;
    ok = ok && good == plans.size();
    os << "n=" << n << ":" << good << "/" << plans.size() << " ";
  }
  return {ok, os.str()};
}

// --- 7 -------------------------------------------------------------------
Outcome riemann() {
  series::TermStream<double> alt([](std::size_t i) { return (i % 2 ? 1.0 : -1.0) / static_cast<double>(i); },
                                 series::SeriesClass::ConditionallyConvergent, "alternating harmonic");
  auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream os;
  for (double target : {0.0, 1.0, -2.0}) {
    auto r = series::riemann_rearrange(alt, target, 10000000, 1e-6);
    const bool band = series::band_property_holds(alt, r, target);
    ok = ok && r.reached && band && r.band_violations == 0;
    os << "target " << target << ": " << (r.reached ? "reached" : "missed") << " in " << r.prefix.size()
       << " terms, band " << (band ? "ok" : "broken") << "; ";
  }
  double s = seconds_since(t0);
  os << "t=" << s << "s";
  return {ok && s < 60.0, os.str()};
}

// --- 8 -------------------------------------------------------------------
Outcome dvoretzky_rogers() {
  const auto n = first_harmonic_exceeding(Rational(10));
  auto w = oplab::dr_witness(12367);
  const bool ok = n == 12367 && harmonic(12366) <= 10 && w.absolute_partial > 10 &&
                  w.l2_tail_bound_squared <= Rational(1, 12367);
  std::ostringstream os;
  os << "first n with H_n > 10: " << n << ", l2 tail^2 bound " << to_fraction_string(w.l2_tail_bound_squared);
  return {ok, os.str()};
}

// --- 9 -------------------------------------------------------------------
Outcome lemma_chain() {
  const std::vector<Rational> norms{Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)};
  const Rational M = lcprobe::compute_M(norms, Rational(1, 2));
  const Rational delta = lcprobe::pick_delta(Rational(1, 2), M);
  auto b = lcprobe::lc_batch(200, 0x99, 24, 0.5);
  std::size_t checked = 0, held = 0;
  series::SeededRng rng(0x9a);
  while (checked < 10000) {
    const auto den = 1 + rng.below(720);
    lcprobe::ExactTorusPoint g(fraction(rng.between(-static_cast<std::int64_t>(den), den), den));
    if (auto r = lcprobe::doubling_check(g)) {
      ++checked;
      held += *r;
    }
  }
  std::ostringstream os;
  os << "M=" << to_fraction_string(M) << " delta=" << to_fraction_string(delta) << " chain " << b.passed << "/"
     << b.instances << " (" << b.nonzero_torus_factors << " nonzero torus factors) doubling " << held << "/"
     << checked;
  return {M == 3 && delta == Rational(1, 12) && b.passed == 200 && held == checked, os.str()};
}

// --- 10 ------------------------------------------------------------------
Outcome nonarch_criterion() {
  series::TermStream<nonarch::PadicInt> pow2(
      [](std::size_t i) { return nonarch::PadicInt::prime_power(2, 64, static_cast<std::uint32_t>(i - 1)); });
  auto sums = series::partial_sums(nonarch::PadicGroup{}, pow2, 64);
  bool residues = true;
  for (std::size_t n = 1; n <= 64; ++n) {
    BigInt expect = (BigInt(1) << n) - 1;
    residues = residues && sums[n - 1].residue() == expect;
  }
  residues = residues && sums.back() == nonarch::PadicInt(2, 64, -1L);

  static const std::uint32_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  series::SeededRng rng(0x10);
  std::size_t right = 0;
  for (int k = 0; k < 100; ++k) {
    const std::uint32_t p = primes[rng.below(std::size(primes))];
    const std::uint32_t m = 1 + static_cast<std::uint32_t>(rng.below(40));
    const std::size_t n = m + 5 + rng.below(20);
    series::TermStream<nonarch::PadicInt> pi([p, m](std::size_t i) {
      return nonarch::PadicInt::prime_power(p, m, static_cast<std::uint32_t>(std::min<std::size_t>(i, m)));
    });
    series::TermStream<nonarch::PadicInt> one([p, m](std::size_t) { return nonarch::PadicInt(p, m, 1L); });
    right += nonarch::criterion_terms_vanish(pi, n).converges && !nonarch::criterion_terms_vanish(one, n).converges;
  }
  std::ostringstream os;
  os << "2^n - 1 residues " << (residues ? "ok" : "wrong") << ", classification " << right << "/100";
  return {residues && right == 100, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"1 l1 counterexample exact (eps=1/2)", exact_l1_counterexample},
      {"2 l2/linf witnesses (eps in {1/2,1})", witness_l2_linf},
      {"3 p-adic open-ideal containment", padic_containment},
      {"4 grouped-sum identity", grouped_identity},
      {"5 sup-ring delta=eps/A bound", sup_ring_bound},
      {"6 diag(1/i) tail distance", series_a_tail},
      {"7 Riemann rearrangement", riemann},
      {"8 harmonic threshold 12367", dvoretzky_rogers},
      {"9 seminorm chain on T x R", lemma_chain},
      {"10 non-archimedean terms criterion", nonarch_criterion},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %-40s %8.3fs  %s\n", o.pass ? "PASS" : "FAIL", c.name, seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed > 125 ? 125 : failed;
}
