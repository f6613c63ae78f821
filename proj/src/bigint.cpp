#include "kron/bigint.hpp"

#include <climits>

#include "kron/errors.hpp"

namespace kron {

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidArgument("parse_error", "empty integer literal");
  BigInt v;
  if (v.set_str(s, 10) != 0)
    throw InvalidArgument("parse_error", "not an integer: '" + s + "'");
  return v;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidArgument("parse_error", "empty rational literal");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (negative) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos ||
        whole.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidArgument("parse_error", "not a decimal: '" + s + "'");
    BigInt num = parse_bigint(whole + frac);
    Rational q(num, pow(BigInt(10), frac.size()));
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw InvalidArgument("parse_error", "not a rational: '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& v) { return v.get_str(); }

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

BigInt ceil_root(const BigInt& v, unsigned long k) {
  if (v < 0 || k == 0) throw InvalidArgument("domain_error", "ceil_root of negative value");
  BigInt r;
  mpz_root(r.get_mpz_t(), v.get_mpz_t(), k);
  if (pow(r, k) < v) ++r;
  return r;
}

long to_long(const BigInt& v) {
  if (!v.fits_slong_p())
    throw InvalidArgument("out_of_range", "integer " + v.get_str() + " exceeds machine range");
  return v.get_si();
}

int to_int(const BigInt& v) {
  long l = to_long(v);
  if (l > INT_MAX || l < INT_MIN)
    throw InvalidArgument("out_of_range", "integer " + v.get_str() + " exceeds int range");
  return static_cast<int>(l);
}

BigInt exact_integer(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  if (q.get_den() != 1)
    throw InvalidArgument("not_integral", "value " + q.get_str() + " is not an integer");
  return q.get_num();
}

}  // namespace kron
