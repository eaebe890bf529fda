#pragma once

// Closed rational intervals, enough for certified enclosures of sums of
// rational multiples of square roots.

#include "tafd/rational.hpp"

#include <algorithm>

namespace tafd {

struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
  friend Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
  friend Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

  friend Interval operator*(const Rational& c, const Interval& a) {
    if (c >= 0) return {c * a.lo, c * a.hi};
    return {c * a.hi, c * a.lo};
  }

  friend Interval operator*(const Interval& a, const Interval& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
  }
};

inline Interval point_interval(const Rational& x) { return {x, x}; }

/// Enclosure of sqrt(n), n >= 0, with width at most 2^-bits.
inline Interval sqrt_enclosure(const Integer& n, unsigned bits) {
  if (n < 0) throw ArithmeticError("sqrt_enclosure of a negative integer");
  Integer scale = Integer(1) << bits;
  Integer s = boost::multiprecision::sqrt(Integer(n * scale * scale));
  Rational lo(s, scale);
  Rational hi = (s * s == n * scale * scale) ? lo : Rational(s + 1, scale);
  return {lo, hi};
}

}  // namespace tafd
