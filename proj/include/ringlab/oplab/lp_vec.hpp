#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "ringlab/rational.hpp"
#include "ringlab/series/group.hpp"

namespace ringlab::oplab {

using series::LpExponent;

// An l_p norm carried exactly. For p = 2 the stored value is the squared
// norm; comparisons against rational thresholds square the threshold.
struct NormMeasure {
  LpExponent p = LpExponent::One;
  Rational value;  // norm, or norm^2 when p == Two

  bool squared() const { return p == LpExponent::Two; }
  double approx() const;                        // the norm itself, as a double
  bool exceeds(const Rational& threshold) const;  // norm > threshold
  bool at_most(const Rational& threshold) const { return !exceeds(threshold); }
  std::string to_string() const;                // "25/24" or "5/4 (squared)"
};

// Finitely supported sequence with exact rational coordinates, 1-based,
// supported inside [1, window].
class LpVec {
 public:
  LpVec(LpExponent p, std::size_t window) : p_(p), window_(window) {}

  static LpVec unit(LpExponent p, std::size_t window, std::size_t i);

  LpExponent exponent() const { return p_; }
  std::size_t window() const { return window_; }
  const std::map<std::size_t, Rational>& coords() const { return coords_; }

  Rational get(std::size_t i) const;
  void set(std::size_t i, const Rational& v);

  NormMeasure norm() const;

  friend LpVec operator+(const LpVec& a, const LpVec& b);
  friend LpVec operator-(const LpVec& a, const LpVec& b);
  friend LpVec operator*(const Rational& s, const LpVec& v);
  friend bool operator==(const LpVec& a, const LpVec& b) { return a.coords_ == b.coords_; }

 private:
  LpExponent p_;
  std::size_t window_;
  std::map<std::size_t, Rational> coords_;  // no explicit zeros
};

}  // namespace ringlab::oplab
