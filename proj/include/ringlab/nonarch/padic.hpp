#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "ringlab/rational.hpp"

namespace ringlab::nonarch {

// Z/p^m Z viewed as Z_p truncated to m digits. Shared by all elements of the
// same (p, m); obtained through PadicRing::get.
class PadicRing {
 public:
  static std::shared_ptr<const PadicRing> get(std::uint32_t p, std::uint32_t m);

  std::uint32_t prime() const { return p_; }
  std::uint32_t precision() const { return m_; }
  const BigInt& modulus() const { return modulus_; }  // p^m
  BigInt power(std::uint32_t k) const;                // p^k, k <= m

  PadicRing(std::uint32_t p, std::uint32_t m);

 private:
  std::uint32_t p_;
  std::uint32_t m_;
  BigInt modulus_;
};

bool is_prime(std::uint64_t n);

// An element of Z_p known modulo p^m. The valuation of zero is m
// ("below resolution"), so its norm is p^-m rather than 0.
class PadicInt {
 public:
  PadicInt(std::uint32_t p, std::uint32_t m, const BigInt& value);
  PadicInt(std::uint32_t p, std::uint32_t m, long value) : PadicInt(p, m, BigInt(value)) {}

  static PadicInt zero(std::uint32_t p, std::uint32_t m) { return PadicInt(p, m, 0L); }
  // p^k (zero when k >= m).
  static PadicInt prime_power(std::uint32_t p, std::uint32_t m, std::uint32_t k);

  std::uint32_t prime() const { return ring_->prime(); }
  std::uint32_t precision() const { return ring_->precision(); }
  const BigInt& residue() const { return residue_; }
  std::uint32_t valuation() const { return valuation_; }
  bool is_zero() const { return residue_ == 0; }
  const std::shared_ptr<const PadicRing>& ring() const { return ring_; }

  // p^-valuation, exact.
  Rational norm() const;

  // Membership in the ideal p^k Z_p; decidable only for k <= precision.
  bool in_level(std::uint32_t k) const;

  // Image under Z/p^m -> Z/p^k, k <= m.
  PadicInt truncate(std::uint32_t k) const;

  // Arithmetic at the smaller of the two precisions; mixed primes throw.
  friend PadicInt operator+(const PadicInt& a, const PadicInt& b);
  friend PadicInt operator-(const PadicInt& a, const PadicInt& b);
  friend PadicInt operator*(const PadicInt& a, const PadicInt& b);
  PadicInt operator-() const;

  friend bool operator==(const PadicInt& a, const PadicInt& b);

  std::string to_string() const;  // "residue (mod p^m)"

 private:
  PadicInt(std::shared_ptr<const PadicRing> ring, BigInt residue);
  std::shared_ptr<const PadicRing> ring_;
  BigInt residue_;
  std::uint32_t valuation_ = 0;
};

// NormedGroup adapter for the additive group of Z/p^m.
struct PadicGroup {
  using value_type = PadicInt;
  using norm_type = Rational;
  static constexpr bool exact = true;

  std::uint32_t p = 2;
  std::uint32_t m = 64;

  PadicInt zero() const { return PadicInt::zero(p, m); }
  PadicInt add(const PadicInt& a, const PadicInt& b) const { return a + b; }
  PadicInt neg(const PadicInt& a) const { return -a; }
  // Exact zero has norm 0 here so that the group norm axiom holds.
  Rational norm(const PadicInt& a) const { return a.is_zero() ? Rational(0) : a.norm(); }
  bool equal(const PadicInt& a, const PadicInt& b) const { return a == b; }
};

}  // namespace ringlab::nonarch
