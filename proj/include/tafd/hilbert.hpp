#pragma once

// Local Hilbert symbols over Q and the intersection test for pairs of CM
// divisors: two CM divisors can only meet in characteristic p when the
// discriminant Delta(m) of a common order has nonvanishing symbols exactly
// at {p, inf, 3, 5}.

#include "tafd/rational.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tafd {

/// A place of Q: a prime p, or the infinite place (stored as p = 0).
struct Place {
  Integer p;

  static Place infinity() { return {0}; }
  bool is_infinite() const { return p == 0; }
  std::string str() const { return is_infinite() ? "inf" : p.str(); }

  // finite primes ascending, infinity last
  friend bool operator<(const Place& a, const Place& b) {
    if (a.is_infinite() != b.is_infinite()) return b.is_infinite();
    return a.p < b.p;
  }
  friend bool operator==(const Place& a, const Place& b) { return a.p == b.p; }
};

using PlaceSet = std::set<Place>;

inline PlaceSet make_places(std::initializer_list<int> primes, bool with_infinity = true) {
  PlaceSet out;
  for (int p : primes) out.insert({p});
  if (with_infinity) out.insert(Place::infinity());
  return out;
}

inline std::string to_string(const PlaceSet& s) {
  std::string out = "{";
  for (const auto& pl : s) out += (out.size() > 1 ? ", " : "") + pl.str();
  return out + "}";
}

namespace detail {

/// Legendre symbol (a/p) for odd prime p and a prime to p.
inline int legendre(const Integer& a, const Integer& p) {
  Integer r = ((a % p) + p) % p;
  Integer e = boost::multiprecision::powm(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

/// Square-class representative of a nonzero rational as an integer.
inline Integer integral_representative(const Rational& a) { return numerator(a) * denominator(a); }

inline int mod_int(const Integer& a, int m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return static_cast<int>(r);
}

}  // namespace detail

/// (a, b)_q in {+1, -1}.
inline int hilbert_symbol(const Rational& a_in, const Rational& b_in, const Place& place) {
  if (a_in == 0 || b_in == 0) throw ArithmeticError("Hilbert symbol of zero");
  if (place.is_infinite()) return (a_in < 0 && b_in < 0) ? -1 : 1;
  const Integer& p = place.p;
  Integer a = detail::integral_representative(a_in), b = detail::integral_representative(b_in);
  int alpha = 0, beta = 0;
  while (a % p == 0) a /= p, ++alpha;
  while (b % p == 0) b /= p, ++beta;
  if (p == 2) {
    auto eps = [](const Integer& u) { return detail::mod_int((u - 1) / 2, 2); };
    auto omg = [](const Integer& u) { return detail::mod_int((u * u - 1) / 8, 2); };
    int e = eps(a) * eps(b) + alpha * omg(b) + beta * omg(a);
    return e % 2 == 0 ? 1 : -1;
  }
  int sign = 1;
  if ((alpha * beta) % 2 == 1 && detail::mod_int((p - 1) / 2, 2) == 1) sign = -sign;
  if (beta % 2 == 1) sign *= detail::legendre(a, p);
  if (alpha % 2 == 1) sign *= detail::legendre(b, p);
  return sign;
}

/// Places where (a, b) is -1: only 2, inf and primes dividing a or b can occur.
inline PlaceSet ramified_places(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) throw ArithmeticError("ramified_places of zero");
  std::set<Integer> candidates{2};
  for (const Rational& r : {a, b})
    for (const Integer& n : {numerator(r), denominator(r)})
      for (const auto& p : prime_divisors(n)) candidates.insert(p);
  PlaceSet out;
  for (const auto& p : candidates)
    if (hilbert_symbol(a, b, {p}) == -1) out.insert({p});
  if (hilbert_symbol(a, b, Place::infinity()) == -1) out.insert(Place::infinity());
  return out;
}

struct CMOrder {
  std::string label;
  int trace;
  int norm;
  int discriminant() const { return trace * trace - 4 * norm; }
};

namespace cm_orders {
inline CMOrder P6() { return {"P6", -1, 1}; }
inline CMOrder Q() { return {"Q", -1, 2}; }
inline CMOrder P2prime() { return {"P2'", -1, 4}; }
}  // namespace cm_orders

struct IntersectionRow {
  std::vector<int> m;  // the pair {m, -m - Tr(x)Tr(y)}, the member with 2m + Tr(x)Tr(y) >= 0 first
  Integer delta;
  PlaceSet places;
  bool symbols_agree = true;  // (Delta, d_x)_q = (Delta, d_y)_q at every place
};

/// Delta(m) = (2m + Tr(x)Tr(y))^2 - d_x d_y over every m with Delta(m) < 0.
inline std::vector<IntersectionRow> cm_intersection_rows(const CMOrder& ox, const CMOrder& oy) {
  const int dx = ox.discriminant(), dy = oy.discriminant();
  if (dx >= 0 || dy >= 0) throw std::invalid_argument("CM orders need negative discriminant");
  if (dx == dy) throw std::invalid_argument("CM orders need distinct discriminants");
  const int tt = ox.trace * oy.trace;
  const long long dd = static_cast<long long>(dx) * dy;
  std::vector<IntersectionRow> rows;
  // Each pair {m, -m - tt} is listed once, from its member with 2m + tt >= 0.
  for (int m = tt <= 0 ? (-tt + 1) / 2 : -(tt / 2);; ++m) {
    const long long c = 2LL * m + tt;
    const long long delta = c * c - dd;
    if (delta >= 0) break;
    IntersectionRow row;
    const int partner = -m - tt;
    row.m = partner == m ? std::vector<int>{m} : std::vector<int>{m, partner};
    row.delta = delta;
    row.places = ramified_places(Rational(row.delta), Rational(dx));
    row.symbols_agree = row.places == ramified_places(Rational(row.delta), Rational(dy));
    rows.push_back(row);
  }
  return rows;
}

/// The prime p at which the divisors may meet, if some row has symbol set {p, inf, 3, 5}.
inline std::optional<Integer> intersection_verdict(const std::vector<IntersectionRow>& rows) {
  for (const auto& row : rows) {
    if (row.places.size() != 4) continue;
    if (!row.places.count(Place::infinity()) || !row.places.count({3}) || !row.places.count({5})) continue;
    for (const auto& pl : row.places)
      if (!pl.is_infinite() && pl.p != 3 && pl.p != 5) return pl.p;
  }
  return std::nullopt;
}

struct IntersectionTable {
  std::string x_label, y_label;
  std::vector<IntersectionRow> rows;
  std::optional<Integer> verdict;
};

/// The three pairs among the divisors of discriminant -3, -7, -15.
inline std::vector<IntersectionTable> intersection_tables() {
  using namespace cm_orders;
  std::vector<IntersectionTable> out;
  for (auto [x, y] : {std::pair{P6(), Q()}, std::pair{P6(), P2prime()}, std::pair{Q(), P2prime()}}) {
    IntersectionTable t{x.label, y.label, cm_intersection_rows(x, y), std::nullopt};
    t.verdict = intersection_verdict(t.rows);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace tafd
