#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <map>
#include <string>

#include "ringlab/error.hpp"
#include "ringlab/rational.hpp"

namespace ringlab::series {

// A normed abelian group, described by a small context object. Values are
// plain immutable data; the context carries whatever parameters the group
// needs (prime and precision, dimension, ...).
//
//   zero(), add(a,b), neg(a), norm(a), equal(a,b)
//   norm_type   Rational for exact groups, double for float groups
//   exact       true when add/equal are exact
template <class G>
concept NormedGroup = requires(const G& g, const typename G::value_type& a, const typename G::value_type& b) {
  typename G::value_type;
  typename G::norm_type;
  { g.zero() } -> std::convertible_to<typename G::value_type>;
  { g.add(a, b) } -> std::convertible_to<typename G::value_type>;
  { g.neg(a) } -> std::convertible_to<typename G::value_type>;
  { g.norm(a) } -> std::convertible_to<typename G::norm_type>;
  { g.equal(a, b) } -> std::convertible_to<bool>;
  { G::exact } -> std::convertible_to<bool>;
};

template <NormedGroup G>
typename G::value_type sub(const G& g, const typename G::value_type& a, const typename G::value_type& b) {
  return g.add(a, g.neg(b));
}

// acc += t, in place when the group offers add_assign.
template <NormedGroup G>
void accumulate(const G& g, typename G::value_type& acc, const typename G::value_type& t) {
  if constexpr (requires(typename G::value_type& x) { g.add_assign(x, t); })
    g.add_assign(acc, t);
  else
    acc = g.add(acc, t);
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

// Exact rationals, |x|.
struct RationalGroup {
  using value_type = Rational;
  using norm_type = Rational;
  static constexpr bool exact = true;

  Rational zero() const { return Rational(0); }
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  void add_assign(Rational& a, const Rational& b) const { a += b; }
  Rational neg(const Rational& a) const { return -a; }
  Rational norm(const Rational& a) const { return ringlab::abs(a); }
  bool equal(const Rational& a, const Rational& b) const { return a == b; }
};

// Doubles, |x|.
struct RealGroup {
  using value_type = double;
  using norm_type = double;
  static constexpr bool exact = false;

  double zero() const { return 0.0; }
  double add(double a, double b) const { return a + b; }
  void add_assign(double& a, double b) const { a += b; }
  double neg(double a) const { return -a; }
  double norm(double a) const { return std::fabs(a); }
  bool equal(double a, double b) const { return a == b; }
};

enum class LpExponent { One, Two, Infinity };

LpExponent parse_lp_exponent(const std::string& text);
std::string to_string(LpExponent p);

// Finitely supported real sequences (1-based coordinates) with the l_p norm.
struct SparseRealVecGroup {
  using value_type = std::map<std::size_t, double>;
  using norm_type = double;
  static constexpr bool exact = false;

  LpExponent p = LpExponent::Two;

  value_type zero() const { return {}; }
  value_type add(const value_type& a, const value_type& b) const {
    value_type r = a;
    add_assign(r, b);
    return r;
  }
  void add_assign(value_type& a, const value_type& b) const {
    for (const auto& [i, v] : b) {
      double& slot = a[i];
      slot += v;
      if (slot == 0.0) a.erase(i);
    }
  }
  value_type neg(const value_type& a) const {
    value_type r = a;
    for (auto& kv : r) kv.second = -kv.second;
    return r;
  }
  double norm(const value_type& a) const {
    double acc = 0.0;
    for (const auto& kv : a) {
      double m = std::fabs(kv.second);
      switch (p) {
        case LpExponent::One: acc += m; break;
        case LpExponent::Two: acc += m * m; break;
        case LpExponent::Infinity: acc = std::max(acc, m); break;
      }
    }
    return p == LpExponent::Two ? std::sqrt(acc) : acc;
  }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
};

}  // namespace ringlab::series
