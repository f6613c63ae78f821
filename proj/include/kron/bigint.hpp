#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace kron {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt parse_bigint(std::string_view text);
Rational parse_rational(std::string_view text);  // "3", "-2/5", "0.25"

inline std::string to_string(const BigInt& v) { return v.get_str(); }
std::string to_string(const Rational& v);

BigInt pow(const BigInt& base, unsigned long exponent);

// Smallest integer c with c^k >= v (v >= 0, k >= 1).
BigInt ceil_root(const BigInt& v, unsigned long k);

// Narrowing conversions; throw InvalidArgument when out of range.
long to_long(const BigInt& v);
int to_int(const BigInt& v);

// Exact value of a rational that is known to be an integer.
BigInt exact_integer(const Rational& q);

}  // namespace kron
