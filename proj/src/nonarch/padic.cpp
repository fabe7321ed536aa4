#include "ringlab/nonarch/padic.hpp"

#include <map>
#include <mutex>

#include "ringlab/error.hpp"

namespace ringlab::nonarch {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PadicRing::PadicRing(std::uint32_t p, std::uint32_t m) : p_(p), m_(m) {
  mpz_ui_pow_ui(modulus_.get_mpz_t(), p, m);
}

std::shared_ptr<const PadicRing> PadicRing::get(std::uint32_t p, std::uint32_t m) {
  require(is_prime(p), ErrorKind::InvalidArgument, "p-adic prime must be prime, got " + std::to_string(p));
  require(m >= 1, ErrorKind::InvalidArgument, "p-adic precision must be >= 1");
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const PadicRing>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{p, m}];
  if (!slot) slot = std::make_shared<const PadicRing>(p, m);
  return slot;
}

BigInt PadicRing::power(std::uint32_t k) const {
  require(k <= m_, ErrorKind::InvalidArgument, "p^k requested beyond precision");
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), p_, k);
  return r;
}

PadicInt::PadicInt(std::shared_ptr<const PadicRing> ring, BigInt residue)
    : ring_(std::move(ring)), residue_(std::move(residue)) {
  mpz_mod(residue_.get_mpz_t(), residue_.get_mpz_t(), ring_->modulus().get_mpz_t());
  if (residue_ == 0) {
    valuation_ = ring_->precision();
  } else {
    BigInt rest;
    BigInt prime(ring_->prime());
    valuation_ = static_cast<std::uint32_t>(mpz_remove(rest.get_mpz_t(), residue_.get_mpz_t(), prime.get_mpz_t()));
  }
}

PadicInt::PadicInt(std::uint32_t p, std::uint32_t m, const BigInt& value) : PadicInt(PadicRing::get(p, m), value) {}

PadicInt PadicInt::prime_power(std::uint32_t p, std::uint32_t m, std::uint32_t k) {
  auto ring = PadicRing::get(p, m);
  if (k >= m) return PadicInt(ring, BigInt(0));
  return PadicInt(ring, ring->power(k));
}

Rational PadicInt::norm() const { return inverse_power(prime(), valuation_); }

bool PadicInt::in_level(std::uint32_t k) const {
  require(k <= precision(), ErrorKind::Precondition,
          "ideal level " + std::to_string(k) + " is beyond precision " + std::to_string(precision()));
  return valuation_ >= k;
}

PadicInt PadicInt::truncate(std::uint32_t k) const {
  require(k >= 1 && k <= precision(), ErrorKind::InvalidArgument, "truncation precision out of range");
  return PadicInt(PadicRing::get(prime(), k), residue_);
}

namespace {

std::shared_ptr<const PadicRing> common_ring(const PadicInt& a, const PadicInt& b) {
  if (a.prime() == b.prime() && a.precision() <= b.precision()) return a.ring();
  if (a.prime() == b.prime()) return b.ring();
  fail(ErrorKind::InvalidArgument, "mixed primes " + std::to_string(a.prime()) + " and " + std::to_string(b.prime()));
}

}  // namespace

PadicInt operator+(const PadicInt& a, const PadicInt& b) { return PadicInt(common_ring(a, b), a.residue_ + b.residue_); }
PadicInt operator-(const PadicInt& a, const PadicInt& b) { return PadicInt(common_ring(a, b), a.residue_ - b.residue_); }
PadicInt operator*(const PadicInt& a, const PadicInt& b) { return PadicInt(common_ring(a, b), a.residue_ * b.residue_); }
PadicInt PadicInt::operator-() const { return PadicInt(ring_, -residue_); }

bool operator==(const PadicInt& a, const PadicInt& b) {
  return a.prime() == b.prime() && a.precision() == b.precision() && a.residue_ == b.residue_;
}

std::string PadicInt::to_string() const {
  return residue_.get_str() + " (mod " + std::to_string(prime()) + "^" + std::to_string(precision()) + ")";
}

}  // namespace ringlab::nonarch
