#pragma once

// Seminorm bookkeeping on T^p x R^q: torus angles, the Gamma-seminorm, the
// constants M and delta and the partial-sum containment chain.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ringlab/rational.hpp"
#include "ringlab/series/stream.hpp"

namespace ringlab::lcprobe {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Angle in radians, kept in (-pi, pi].
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(double angle);
  double angle() const { return angle_; }
  double norm() const { return angle_ < 0 ? -angle_ : angle_; }
  TorusPoint times(std::int64_t k) const;

  friend TorusPoint operator+(TorusPoint a, TorusPoint b) { return TorusPoint(a.angle_ + b.angle_); }
  friend TorusPoint operator-(TorusPoint a) { return TorusPoint(-a.angle_); }

 private:
  double angle_ = 0;
};

// Angle as an exact rational multiple of pi, kept in (-1, 1].
class ExactTorusPoint {
 public:
  ExactTorusPoint() = default;
  explicit ExactTorusPoint(Rational units_of_pi);
  const Rational& units() const { return units_; }
  Rational norm() const { return ringlab::abs(units_); }  // in units of pi
  ExactTorusPoint times(std::int64_t k) const;
  TorusPoint to_float() const { return TorusPoint(units_.get_d() * kPi); }

  friend ExactTorusPoint operator+(const ExactTorusPoint& a, const ExactTorusPoint& b) {
    return ExactTorusPoint(a.units_ + b.units_);
  }
  friend bool operator==(const ExactTorusPoint& a, const ExactTorusPoint& b) { return a.units_ == b.units_; }

 private:
  Rational units_{0};
};

double torus_norm(const TorusPoint& g);
Rational torus_norm(const ExactTorusPoint& g);

// nullopt when ||g|| > pi/2 (outside the law's domain).
std::optional<bool> doubling_check(const TorusPoint& g, double tol = 1e-12);
std::optional<bool> doubling_check(const ExactTorusPoint& g);

struct ProductPoint {
  std::vector<TorusPoint> torus;
  std::vector<double> reals;

  static ProductPoint zero(std::size_t p, std::size_t q);
  std::size_t p() const { return torus.size(); }
  std::size_t q() const { return reals.size(); }
};

ProductPoint operator+(const ProductPoint& a, const ProductPoint& b);
ProductPoint operator-(const ProductPoint& a);

// A coordinate character: projection onto torus coordinate k or real
// coordinate k.
struct Character {
  enum class Kind { Torus, Real } kind = Kind::Torus;
  std::size_t index = 0;
};

class GammaSeminorm {
 public:
  explicit GammaSeminorm(std::vector<Character> gamma) : gamma_(std::move(gamma)) {}
  // Every coordinate projection of T^p x R^q.
  static GammaSeminorm all_coordinates(std::size_t p, std::size_t q);

  const std::vector<Character>& characters() const { return gamma_; }
  double operator()(const ProductPoint& x) const;  // max_gamma ||gamma(x)||, 0 for empty Gamma

 private:
  std::vector<Character> gamma_;
};

// Integer multiplication on each torus coordinate, rational scaling on each
// real coordinate. Both are continuous endomorphisms.
struct DiagonalEndo {
  std::vector<std::int64_t> torus_factors;
  std::vector<Rational> real_factors;

  static DiagonalEndo zero(std::size_t p, std::size_t q);
  static DiagonalEndo scalar(std::size_t p, std::size_t q, std::int64_t k, const Rational& s);
  ProductPoint operator()(const ProductPoint& x) const;
  std::string describe() const;
};

// M = 1 + (sum_{i<=n} ||a_i|| + tail) / eps. Without tail the stream must
// declare a length <= n.
double compute_M(const series::TermStream<ProductPoint>& a, const GammaSeminorm& gamma, double eps, std::size_t n,
                 std::optional<double> tail = std::nullopt);
// Exact form from the term norms themselves.
Rational compute_M(std::span<const Rational> term_norms, const Rational& eps, const Rational& tail = Rational(0));

double pick_delta(double eps, double M);
Rational pick_delta(const Rational& eps, const Rational& M);

struct ChainLink {
  double lhs = 0;
  double rhs = 0;
  double slack() const { return rhs - lhs; }
  bool holds(double tol) const { return lhs <= rhs + tol; }
};

struct ContainmentReport {
  double M = 1;
  double eps = 0;
  std::size_t n = 0;
  double x_norm = 0;               // ||sum f_i(a_i)||_Gamma
  ChainLink triangle;              // ||x|| <= sum ||f_i(a_i)||
  ChainLink certificates;          // sum ||f_i(a_i)|| <= sum ||a_i|| / M
  ChainLink budget;                // sum ||a_i|| / M <= eps
  double worst_certificate_ratio = 0;  // max_i ||f_i(a_i)|| * M / ||a_i||
  bool pass = false;               // ||x|| <= eps (+ tol)
};

// Checks ||f_i(a_i)|| <= ||a_i|| / M for every i <= n (throws naming the
// first violating i and its ratio), then the three links of the chain for
// x = sum_{i<=n} f_i(a_i).
ContainmentReport containment_check(const series::TermStream<ProductPoint>& a, const GammaSeminorm& gamma,
                                    std::span<const DiagonalEndo> f, double eps, std::size_t n, double M,
                                    double tol = 1e-12);

struct LcInstance {
  std::size_t p = 0, q = 0;
  std::vector<ProductPoint> terms;
  std::vector<DiagonalEndo> multipliers;
  double eps = 0;
};

// T^p x R^q with p, q in [1, 3]: torus angles are random rational multiples
// of pi, reals are scaled by 2^-i. Each multiplier uses a rational scale
// <= 1/M on the reals and, on each torus coordinate, a random integer whose
// product lands inside the certificate bound (0 if none is found).
LcInstance make_lc_instance(std::uint64_t seed, std::size_t n, double eps);

struct LcBatch {
  std::size_t instances = 0;
  std::size_t passed = 0;
  std::size_t nonzero_torus_factors = 0;
  std::optional<std::size_t> first_failure;
  double min_slack = 0;  // min over instances of eps - ||x||
};

LcBatch lc_batch(std::size_t instances, std::uint64_t seed, std::size_t n, double eps);

}  // namespace ringlab::lcprobe
