#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace ringlab {

using Rational = mpq_class;
using BigInt = mpz_class;

// "num/den" with den > 0, also for integers ("3/1").
std::string to_fraction_string(const Rational& q);

// Accepts "a/b", "a" and decimal literals such as "0.25" or "-1e-3".
Rational parse_rational(std::string_view text);

// num/den in canonical form (mpq_class(num, den) is left unreduced).
Rational fraction(std::int64_t num, std::int64_t den);

Rational abs(const Rational& q);

// 1/base^k as an exact rational.
Rational inverse_power(std::uint64_t base, std::uint64_t k);

// Exact H_n = 1 + 1/2 + ... + 1/n (binary splitting). H_0 = 0.
Rational harmonic(std::uint64_t n);

// Least n with H_n > threshold, by exact incremental summation.
// threshold must be non-negative.
std::uint64_t first_harmonic_exceeding(const Rational& threshold);

// Largest rational r = k/2^bits with r <= sqrt(x), x >= 0.
Rational sqrt_lower(const Rational& x, unsigned bits = 40);

}  // namespace ringlab
