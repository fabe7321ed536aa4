#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ringlab/oplab/lp_vec.hpp"

namespace ringlab::oplab {

struct CoordinateMap {
  std::size_t source = 1;  // j
  std::size_t target = 1;  // i
  Rational scalar;         // contributes scalar * x_j to output coordinate i
};

// x -> lambda * x + A x with A finitely supported. Diagonal entries of A are
// the "diagonal part" (y_i = d_i x_i); off-diagonal entries are coordinate
// maps. The family is closed under sums and products.
class StructuredOp {
 public:
  StructuredOp() = default;

  static StructuredOp zero() { return {}; }
  static StructuredOp identity() { return scaled_identity(Rational(1)); }
  static StructuredOp scaled_identity(const Rational& lambda);
  static StructuredOp diagonal(const std::map<std::size_t, Rational>& d);
  static StructuredOp diagonal_entry(std::size_t i, const Rational& d);
  static StructuredOp coordinate_map(std::size_t source, std::size_t target, const Rational& s);

  const Rational& scalar_part() const { return scalar_; }
  // (row i, column j) -> entry; never holds zeros.
  const std::map<std::pair<std::size_t, std::size_t>, Rational>& entries() const { return entries_; }
  std::map<std::size_t, Rational> diagonal_part() const;
  std::vector<CoordinateMap> coordinate_maps() const;
  std::size_t max_index() const;  // 0 for a pure scalar operator

  friend StructuredOp operator+(const StructuredOp& a, const StructuredOp& b);
  friend StructuredOp operator-(const StructuredOp& a, const StructuredOp& b);
  friend StructuredOp operator*(const Rational& s, const StructuredOp& a);
  StructuredOp& operator+=(const StructuredOp& b);
  friend bool operator==(const StructuredOp& a, const StructuredOp& b) {
    return a.scalar_ == b.scalar_ && a.entries_ == b.entries_;
  }

 private:
  Rational scalar_{0};
  std::map<std::pair<std::size_t, std::size_t>, Rational> entries_;
  void add_entry(std::size_t i, std::size_t j, const Rational& v);
  friend StructuredOp op_mul(const StructuredOp& a, const StructuredOp& b);
};

// Exact evaluation. Throws if the output would leave v's window.
LpVec apply(const StructuredOp& op, const LpVec& v);

// The ring product (ab)(x) = b(a(x)).
StructuredOp op_mul(const StructuredOp& a, const StructuredOp& b);

// Operator norm on l_p as a certified interval [lower, upper]; both are
// squared for p = 2. For p = 1 and p = inf the maximal column and row
// sums are exact. For p = 2 the exact shapes are: monomial, at most one
// entry per row (A^T A diagonal), at most one entry per column (A A^T
// diagonal) and rank one, each per connected block. Any other block gets a
// power-iteration Rayleigh quotient as lower bound and a Collatz-Wielandt
// bound on |A^T A| as upper bound; if their relative gap exceeds rel_gap
// after `budget` iterations the result is Undecided.
struct OpNorm {
  LpExponent p = LpExponent::One;
  Rational lower;
  Rational upper;
  std::string method;

  bool exact() const { return lower == upper; }
  bool squared() const { return p == LpExponent::Two; }
  NormMeasure upper_measure() const { return {p, upper}; }
};

OpNorm op_norm(const StructuredOp& op, LpExponent p, std::size_t budget = 500, double rel_gap = 1e-9);

}  // namespace ringlab::oplab
