#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ringlab/rational.hpp"

namespace ringlab::nonarch {

// F_q[[t]] truncated at order m: c_0 + c_1 t + ... + c_{m-1} t^{m-1}, q prime.
// Valuation is the least index with a nonzero coefficient (m for zero).
class FormalPowerSeries {
 public:
  FormalPowerSeries(std::uint32_t q, std::uint32_t m, std::vector<std::uint32_t> coeffs = {});

  static FormalPowerSeries zero(std::uint32_t q, std::uint32_t m) { return FormalPowerSeries(q, m); }
  static FormalPowerSeries monomial(std::uint32_t q, std::uint32_t m, std::uint32_t k, std::uint32_t c = 1);

  std::uint32_t field_size() const { return q_; }
  std::uint32_t precision() const { return static_cast<std::uint32_t>(c_.size()); }
  const std::vector<std::uint32_t>& coefficients() const { return c_; }
  std::uint32_t valuation() const { return valuation_; }
  bool is_zero() const { return valuation_ == precision(); }

  Rational norm() const;  // q^-valuation
  bool in_level(std::uint32_t k) const;
  FormalPowerSeries truncate(std::uint32_t k) const;

  friend FormalPowerSeries operator+(const FormalPowerSeries& a, const FormalPowerSeries& b);
  friend FormalPowerSeries operator-(const FormalPowerSeries& a, const FormalPowerSeries& b);
  friend FormalPowerSeries operator*(const FormalPowerSeries& a, const FormalPowerSeries& b);
  FormalPowerSeries operator-() const;
  friend bool operator==(const FormalPowerSeries& a, const FormalPowerSeries& b) {
    return a.q_ == b.q_ && a.c_ == b.c_;
  }

  std::string to_string() const;

 private:
  std::uint32_t q_;
  std::vector<std::uint32_t> c_;
  std::uint32_t valuation_ = 0;
  void normalize();
};

struct PowerSeriesGroup {
  using value_type = FormalPowerSeries;
  using norm_type = Rational;
  static constexpr bool exact = true;

  std::uint32_t q = 2;
  std::uint32_t m = 32;

  FormalPowerSeries zero() const { return FormalPowerSeries::zero(q, m); }
  FormalPowerSeries add(const FormalPowerSeries& a, const FormalPowerSeries& b) const { return a + b; }
  FormalPowerSeries neg(const FormalPowerSeries& a) const { return -a; }
  Rational norm(const FormalPowerSeries& a) const { return a.is_zero() ? Rational(0) : a.norm(); }
  bool equal(const FormalPowerSeries& a, const FormalPowerSeries& b) const { return a == b; }
};

}  // namespace ringlab::nonarch
