#pragma once

// Convergence checks in rings whose zero has a base of open ideals
// (Z_p and F_q[[t]]). Everything here is exact: membership in the ideal of
// level k is the test valuation >= k.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ringlab/error.hpp"
#include "ringlab/series/stream.hpp"

namespace ringlab::nonarch {

template <class E>
concept ValuedElement = requires(const E& x, const E& y) {
  { x.valuation() } -> std::convertible_to<std::uint32_t>;
  { x.precision() } -> std::convertible_to<std::uint32_t>;
  { x + y } -> std::convertible_to<E>;
  { x - y } -> std::convertible_to<E>;
  { x * y } -> std::convertible_to<E>;
};

struct TermsVanishReport {
  std::uint32_t precision = 0;
  std::size_t n = 0;
  // last_below[k-1]: last index i <= n with valuation(a_i) < k, 0 if none.
  std::vector<std::size_t> last_below;
  // tail_min_valuation[j-1] = min_{j <= i <= n} valuation(a_i); the max tail
  // norm per prefix is p^-tail_min_valuation.
  std::vector<std::uint32_t> tail_min_valuation;
  bool converges = false;  // terms reach level `precision` before index n
};

// Sampled form of: a series converges iff its terms tend to zero.
template <ValuedElement E>
TermsVanishReport criterion_terms_vanish(const series::TermStream<E>& s, std::size_t n) {
  TermsVanishReport r;
  r.n = n;
  std::vector<std::uint32_t> vals;
  vals.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    E t = s.term(i);
    if (i == 1)
      r.precision = t.precision();
    else
      require(t.precision() == r.precision, ErrorKind::Precondition,
              "criterion_terms_vanish: term " + std::to_string(i) + " has a different precision");
    vals.push_back(t.valuation());
  }
  r.last_below.assign(r.precision, 0);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::uint32_t k = vals[i - 1] + 1; k <= r.precision; ++k) r.last_below[k - 1] = i;
  r.tail_min_valuation.assign(n, 0);
  std::uint32_t m = r.precision;
  for (std::size_t i = n; i >= 1; --i) {
    m = std::min(m, vals[i - 1]);
    r.tail_min_valuation[i - 1] = m;
  }
  r.converges = n > 0 && r.precision > 0 && r.last_below[r.precision - 1] < n;
  return r;
}

struct OpenIdealReport {
  std::uint32_t level = 0;
  bool containment = true;
  std::size_t first_escape = 0;  // first partial sum outside the ideal, 0 if none
  // cauchy_levels[k]: least N such that all partial sums S_j, j >= N, agree
  // modulo the ideal of level k.
  std::map<std::uint32_t, std::size_t> cauchy_levels;
  // term_levels[k]: least N such that a_j lies in level k for all j >= N.
  std::map<std::uint32_t, std::size_t> term_levels;
};

// Multiplies a convergent series termwise by multipliers taken from the ideal
// of level `level` and checks that every partial sum of sum f_i a_i stays in
// that ideal. Multipliers may be any sequence from the ideal.
template <ValuedElement E>
OpenIdealReport dch_verify_open_ideal(const series::TermStream<E>& a, std::uint32_t level, std::span<const E> f,
                                      std::size_t n) {
  require(f.size() >= n, ErrorKind::Precondition, "dch_verify_open_ideal: fewer multipliers than terms");
  require(n >= 1, ErrorKind::Precondition, "dch_verify_open_ideal needs n >= 1");
  for (std::size_t i = 0; i < n; ++i)
    require(f[i].valuation() >= level, ErrorKind::Precondition,
            "dch_verify_open_ideal: multiplier f_" + std::to_string(i + 1) + " lies outside the ideal of level " +
                std::to_string(level));

  OpenIdealReport r;
  r.level = level;
  std::vector<E> sums;
  std::vector<std::uint32_t> term_vals;
  sums.reserve(n);
  term_vals.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    E t = a.term(i);
    term_vals.push_back(t.valuation());
    E prod = f[i - 1] * t;
    sums.push_back(i == 1 ? prod : sums.back() + prod);
    if (r.containment && sums.back().valuation() < level) {
      r.containment = false;
      r.first_escape = i;
    }
  }
  const std::uint32_t m = sums.back().precision();
  // suffix minima of valuation(S_j - S_n) and valuation(a_j)
  std::vector<std::uint32_t> diff_min(n + 1, m), term_min(n + 1, m);
  for (std::size_t j = n; j >= 1; --j) {
    diff_min[j - 1] = std::min(diff_min[j], (sums[j - 1] - sums[n - 1]).valuation());
    term_min[j - 1] = std::min(term_min[j], term_vals[j - 1]);
  }
  for (std::uint32_t k = 1; k <= m; ++k) {
    std::size_t N = n;
    while (N > 1 && diff_min[N - 2] >= k) --N;
    r.cauchy_levels[k] = N;
    std::size_t T = n + 1;
    while (T > 1 && term_min[T - 2] >= k) --T;
    r.term_levels[k] = T;
  }
  return r;
}

// The limit of a level-wise Cauchy trace: for every k <= m the last
// `confirm` entries must agree modulo the ideal of level k, and the final
// entry is returned. Throws Undecided naming the first level that has not
// stabilized.
template <ValuedElement E>
E limit_by_digit_stabilization(std::span<const E> trace, std::size_t confirm = 2) {
  require(confirm >= 1, ErrorKind::InvalidArgument, "confirm must be >= 1");
  require(!trace.empty(), ErrorKind::Precondition, "limit_by_digit_stabilization on an empty trace");
  if (trace.size() < confirm)
    fail(ErrorKind::Undecided, "limit_by_digit_stabilization: trace shorter than the confirmation run at level 1");
  const E& last = trace.back();
  std::uint32_t stable = last.precision();
  for (std::size_t j = trace.size() - confirm; j + 1 < trace.size(); ++j)
    stable = std::min(stable, (trace[j] - last).valuation());
  if (stable < last.precision())
    fail(ErrorKind::Undecided, "digits not stabilized at level " + std::to_string(stable + 1));
  return last;
}

}  // namespace ringlab::nonarch
