#pragma once

// Arbitrary-precision integers and rationals, plus the 2-local bookkeeping
// used throughout (a "2-local integer" is a Rational with odd denominator).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tafd {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// Raised for division by zero and other arithmetic precondition failures.
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  return Rational(num) / Rational(den);
}

inline Rational inverse(const Rational& a) {
  if (a == 0) throw ArithmeticError("division by zero");
  return Rational(1) / a;
}

inline Rational divide(const Rational& a, const Rational& b) { return a * inverse(b); }

/// p-adic valuation of a nonzero integer.
inline int valuation(Integer n, const Integer& p) {
  if (n == 0) throw ArithmeticError("valuation of zero");
  if (n < 0) n = -n;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// v with a = 2^v * (odd/odd).
inline int two_valuation(const Rational& a) {
  if (a == 0) throw ArithmeticError("two_valuation of zero");
  return valuation(numerator(a), 2) - valuation(denominator(a), 2);
}

/// True when a lies in Z_(2), i.e. its denominator is odd.
inline bool is_two_local(const Rational& a) { return denominator(a) % 2 != 0; }

/// Reduction of a 2-local integer modulo 2.
inline int mod2(const Rational& a) {
  if (!is_two_local(a)) throw ArithmeticError("mod2 of a non 2-local rational");
  Integer n = numerator(a) % 2;
  return n == 0 ? 0 : 1;
}

inline Integer abs(const Integer& n) { return n < 0 ? Integer(-n) : n; }

/// Prime divisors of |n| in increasing order (trial division; inputs are small).
inline std::vector<Integer> prime_divisors(Integer n) {
  if (n == 0) throw ArithmeticError("prime_divisors of zero");
  n = abs(n);
  std::vector<Integer> out;
  for (Integer p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// True when every prime dividing the numerator or denominator of r is in `allowed`.
inline bool supported_on(const Rational& r, const std::vector<Integer>& allowed) {
  if (r == 0) return false;
  auto ok = [&](const Integer& n) {
    for (const auto& p : prime_divisors(n)) {
      bool found = false;
      for (const auto& q : allowed) found = found || (p == q);
      if (!found) return false;
    }
    return true;
  };
  return ok(numerator(r)) && ok(denominator(r));
}

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline std::string to_string(const Integer& n) { return n.str(); }

}  // namespace tafd
