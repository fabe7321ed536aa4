#include "ringlab/oplab/lp_vec.hpp"

#include <cmath>

#include "ringlab/error.hpp"

namespace ringlab::oplab {

double NormMeasure::approx() const { return squared() ? std::sqrt(value.get_d()) : value.get_d(); }

bool NormMeasure::exceeds(const Rational& threshold) const {
  if (threshold < 0) return true;
  return squared() ? value > threshold * threshold : value > threshold;
}

std::string NormMeasure::to_string() const {
  return to_fraction_string(value) + (squared() ? " (squared)" : "");
}

LpVec LpVec::unit(LpExponent p, std::size_t window, std::size_t i) {
  LpVec v(p, window);
  v.set(i, Rational(1));
  return v;
}

Rational LpVec::get(std::size_t i) const {
  auto it = coords_.find(i);
  return it == coords_.end() ? Rational(0) : it->second;
}

void LpVec::set(std::size_t i, const Rational& v) {
  require(i >= 1 && i <= window_, ErrorKind::InvalidArgument,
          "coordinate " + std::to_string(i) + " outside window [1, " + std::to_string(window_) + "]");
  if (v == 0)
    coords_.erase(i);
  else
    coords_[i] = v;
}

NormMeasure LpVec::norm() const {
  NormMeasure m{p_, Rational(0)};
  for (const auto& [i, v] : coords_) {
    switch (p_) {
      case LpExponent::One: m.value += ringlab::abs(v); break;
      case LpExponent::Two: m.value += v * v; break;
      case LpExponent::Infinity:
        if (ringlab::abs(v) > m.value) m.value = ringlab::abs(v);
        break;
    }
  }
  return m;
}

namespace {

LpVec combine(const LpVec& a, const LpVec& b, int sign) {
  require(a.exponent() == b.exponent(), ErrorKind::InvalidArgument, "l_p exponents differ");
  LpVec r(a.exponent(), std::max(a.window(), b.window()));
  for (const auto& [i, v] : a.coords()) r.set(i, v);
  for (const auto& [i, v] : b.coords()) r.set(i, r.get(i) + (sign > 0 ? v : Rational(-v)));
  return r;
}

}  // namespace

LpVec operator+(const LpVec& a, const LpVec& b) { return combine(a, b, +1); }
LpVec operator-(const LpVec& a, const LpVec& b) { return combine(a, b, -1); }

LpVec operator*(const Rational& s, const LpVec& v) {
  LpVec r(v.exponent(), v.window());
  for (const auto& [i, x] : v.coords()) r.set(i, s * x);
  return r;
}

}  // namespace ringlab::oplab
