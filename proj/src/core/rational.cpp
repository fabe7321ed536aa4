#include "ringlab/rational.hpp"

#include <cctype>
#include <string>

#include "ringlab/error.hpp"

namespace ringlab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Undecided: return "undecided";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Io: return "io";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

std::string to_fraction_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parse_signed_int(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) fail(ErrorKind::InvalidArgument, "not a rational number: '" + std::string(whole) + "'");
  BigInt v(std::string(s), 10);
  return neg ? BigInt(-v) : v;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    BigInt ev = parse_signed_int(s.substr(e + 1), text);
    if (!ev.fits_slong_p() || abs(ev) > 100000) fail(ErrorKind::InvalidArgument, "exponent out of range: '" + std::string(text) + "'");
    exponent = ev.get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      fail(ErrorKind::InvalidArgument, "not a rational number: '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) fail(ErrorKind::InvalidArgument, "not a rational number: '" + std::string(text) + "'");
    digits = std::string(s);
  }
  Rational r{BigInt(digits, 10)};
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0)
    r /= Rational(scale);
  else
    r *= Rational(scale);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) fail(ErrorKind::InvalidArgument, "empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_signed_int(text.substr(0, slash), text);
    BigInt den = parse_signed_int(text.substr(slash + 1), text);
    if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator: '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  return parse_decimal(text);
}

Rational fraction(std::int64_t num, std::int64_t den) {
  require(den != 0, ErrorKind::InvalidArgument, "zero denominator");
  Rational q{BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den))};
  q.canonicalize();
  return q;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational inverse_power(std::uint64_t base, std::uint64_t k) {
  BigInt d;
  mpz_ui_pow_ui(d.get_mpz_t(), base, k);
  return Rational(BigInt(1), d);
}

namespace {

// sum_{i=a}^{b-1} 1/i = num/den
void harmonic_split(std::uint64_t a, std::uint64_t b, BigInt& num, BigInt& den) {
  if (b - a == 1) {
    num = 1;
    den = BigInt(std::to_string(a));
    return;
  }
  std::uint64_t mid = a + (b - a) / 2;
  BigInt n1, d1, n2, d2;
  harmonic_split(a, mid, n1, d1);
  harmonic_split(mid, b, n2, d2);
  num = n1 * d2 + n2 * d1;
  den = d1 * d2;
}

}  // namespace

Rational harmonic(std::uint64_t n) {
  if (n == 0) return Rational(0);
  BigInt num, den;
  harmonic_split(1, n + 1, num, den);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::uint64_t first_harmonic_exceeding(const Rational& threshold) {
  require(threshold >= 0, ErrorKind::InvalidArgument, "harmonic threshold must be non-negative");
  // H_n = num/den kept unreduced; den = n!.
  BigInt num = 0, den = 1;
  const BigInt& a = threshold.get_num();
  const BigInt& b = threshold.get_den();
  for (std::uint64_t n = 1;; ++n) {
    num = num * n + den;
    den *= n;
    if (num * b > a * den) return n;
  }
}

Rational sqrt_lower(const Rational& x, unsigned bits) {
  require(x >= 0, ErrorKind::InvalidArgument, "sqrt_lower of a negative number");
  BigInt scale = BigInt(1) << (2 * bits);
  BigInt y = (x.get_num() * scale) / x.get_den();
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), y.get_mpz_t());
  Rational r(root, BigInt(1) << bits);
  r.canonicalize();
  return r;
}

}  // namespace ringlab
