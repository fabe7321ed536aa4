#include "ringlab/nonarch/power_series.hpp"

#include <algorithm>

#include "ringlab/error.hpp"
#include "ringlab/nonarch/padic.hpp"

namespace ringlab::nonarch {

FormalPowerSeries::FormalPowerSeries(std::uint32_t q, std::uint32_t m, std::vector<std::uint32_t> coeffs)
    : q_(q), c_(std::move(coeffs)) {
  require(is_prime(q), ErrorKind::InvalidArgument, "power series field size must be prime, got " + std::to_string(q));
  require(m >= 1, ErrorKind::InvalidArgument, "power series precision must be >= 1");
  require(c_.size() <= m, ErrorKind::InvalidArgument, "more coefficients than the truncation order");
  c_.resize(m, 0);
  normalize();
}

void FormalPowerSeries::normalize() {
  for (auto& c : c_) c %= q_;
  auto it = std::find_if(c_.begin(), c_.end(), [](std::uint32_t c) { return c != 0; });
  valuation_ = static_cast<std::uint32_t>(it - c_.begin());
}

FormalPowerSeries FormalPowerSeries::monomial(std::uint32_t q, std::uint32_t m, std::uint32_t k, std::uint32_t c) {
  FormalPowerSeries r(q, m);
  if (k < m) {
    r.c_[k] = c % q;
    r.normalize();
  }
  return r;
}

Rational FormalPowerSeries::norm() const { return inverse_power(q_, valuation_); }

bool FormalPowerSeries::in_level(std::uint32_t k) const {
  require(k <= precision(), ErrorKind::Precondition,
          "ideal level " + std::to_string(k) + " is beyond precision " + std::to_string(precision()));
  return valuation_ >= k;
}

FormalPowerSeries FormalPowerSeries::truncate(std::uint32_t k) const {
  require(k >= 1 && k <= precision(), ErrorKind::InvalidArgument, "truncation order out of range");
  return FormalPowerSeries(q_, k, std::vector<std::uint32_t>(c_.begin(), c_.begin() + k));
}

namespace {

std::uint32_t common_order(const FormalPowerSeries& a, const FormalPowerSeries& b) {
  require(a.field_size() == b.field_size(), ErrorKind::InvalidArgument,
          "mixed coefficient fields " + std::to_string(a.field_size()) + " and " + std::to_string(b.field_size()));
  return std::min(a.precision(), b.precision());
}

}  // namespace

FormalPowerSeries operator+(const FormalPowerSeries& a, const FormalPowerSeries& b) {
  const std::uint32_t m = common_order(a, b);
  std::vector<std::uint32_t> c(m);
  for (std::uint32_t i = 0; i < m; ++i) c[i] = (a.c_[i] + b.c_[i]) % a.q_;
  return FormalPowerSeries(a.q_, m, std::move(c));
}

FormalPowerSeries operator-(const FormalPowerSeries& a, const FormalPowerSeries& b) { return a + (-b); }

FormalPowerSeries operator*(const FormalPowerSeries& a, const FormalPowerSeries& b) {
  const std::uint32_t m = common_order(a, b);
  const std::uint64_t q = a.q_;
  std::vector<std::uint64_t> acc(m, 0);
  for (std::uint32_t i = a.valuation_; i < m; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::uint32_t j = b.valuation_; i + j < m; ++j) acc[i + j] = (acc[i + j] + std::uint64_t(a.c_[i]) * b.c_[j]) % q;
  }
  return FormalPowerSeries(a.q_, m, std::vector<std::uint32_t>(acc.begin(), acc.end()));
}

FormalPowerSeries FormalPowerSeries::operator-() const {
  FormalPowerSeries r = *this;
  for (auto& c : r.c_) c = (q_ - c) % q_;
  return r;
}

std::string FormalPowerSeries::to_string() const {
  std::string s;
  for (std::uint32_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += std::to_string(c_[i]);
    if (i > 0) s += "t^" + std::to_string(i);
  }
  return (s.empty() ? "0" : s) + " + O(t^" + std::to_string(c_.size()) + ")";
}

}  // namespace ringlab::nonarch
