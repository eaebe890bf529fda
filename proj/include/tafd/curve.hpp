#pragma once

// The coordinate tower of the Shimura curve: from (t, s, y) with t = -3s^2 and
// y^2 = -(1 - t)(27 - t/3) to (w, u, v) with
//   w = (t - 1)/4,  u = (s - 3)/6,  v = (3y - (t - 81)) / (2(t - 81)),
// satisfying (u^2 + u + 1)(v^2 + v + 1) = 5/9. Values live in
// Q(sqrt-3, sqrt-7); an empty optional is the point at infinity.

#include "tafd/multiquad.hpp"
#include "tafd/polynomial.hpp"
#include "tafd/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tafd {

using Coord = std::optional<CMField>;

inline const Coord kInfinity = std::nullopt;

inline std::string to_string(const Coord& c) { return c ? c->str() : "inf"; }

struct CurvePoint {
  Coord u;
  Coord v;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

namespace detail {
inline CMField quadratic_form(const CMField& z) { return z * z + z + CMField(1); }
}  // namespace detail

/// (u^2 + u + 1)(v^2 + v + 1) = 5/9 in the bihomogeneous form, so that either
/// coordinate may be infinite.
inline bool on_curve(const CurvePoint& p) {
  if (p.u && p.v) return detail::quadratic_form(*p.u) * detail::quadratic_form(*p.v) == CMField(Rational(5, 9));
  if (!p.u && !p.v) return false;  // leading form U^2 V^2 = 0 fails
  const CMField& finite = p.u ? *p.u : *p.v;
  return detail::quadratic_form(finite).is_zero();
}

struct TowerCoords {
  Coord w, u, v;
};

/// (w, u, v) from (t, s, y). At t = 81 the v-coordinate is infinite; at t = inf
/// the limit of v is a root of v^2 + v + 1 and the branch omega3 is taken.
inline TowerCoords coords_from_tsy(const Coord& t, const Coord& s, const Coord& y) {
  TowerCoords out;
  if (!t) {
    if (s || y) throw ArithmeticError("t = inf forces s = y = inf");
    return {kInfinity, kInfinity, cm::omega3()};
  }
  if (!s || !y) throw ArithmeticError("finite t needs finite s and y");
  out.w = (*t - CMField(1)).scaled(Rational(1, 4));
  out.u = (*s - CMField(3)).scaled(Rational(1, 6));
  CMField d = *t - CMField(81);
  if (d.is_zero()) {
    if (!y->is_zero()) throw ArithmeticError("t = 81 with y != 0");
    out.v = kInfinity;
  } else {
    out.v = (CMField(3) * *y - d) / (CMField(2) * d);
  }
  return out;
}

/// Inverse relations t = 4w + 1, s = 6u + 3, y = 4(2v + 1)(w - 20)/3.
inline CMField t_from_w(const CMField& w) { return CMField(4) * w + CMField(1); }
inline CMField s_from_u(const CMField& u) { return CMField(6) * u + CMField(3); }
inline CMField y_from_wv(const CMField& w, const CMField& v) {
  return (CMField(2) * v + CMField(1)) * (w - CMField(20)).scaled(Rational(4, 3));
}

enum class AtkinLehner { w3, w5, w15 };

/// w3: v -> -1 - v; w15: u -> -1 - u; w5 = w3 w15.
inline CurvePoint atkin_lehner_coords(const CurvePoint& p, AtkinLehner which) {
  auto flip = [](const Coord& c) -> Coord { return c ? Coord(CMField(-1) - *c) : kInfinity; };
  switch (which) {
    case AtkinLehner::w3: return {p.u, flip(p.v)};
    case AtkinLehner::w15: return {flip(p.u), p.v};
    case AtkinLehner::w5: return {flip(p.u), flip(p.v)};
  }
  return p;
}

struct CMPointRecord {
  std::string label;
  int cm_disc;
  Coord t, s, y, w, u, v;
};

/// The five CM points with the coordinates as tabulated.
inline std::vector<CMPointRecord> cm_points() {
  using cm::omega3;
  using cm::sqrt_m3;
  using cm::sqrt_m7;
  const CMField inv_sqrt_m3 = sqrt_m3().inverse();
  return {
      {"P6", -3, kInfinity, kInfinity, kInfinity, kInfinity, kInfinity, omega3()},
      {"P2", -12, CMField(0), CMField(0), CMField(3) * sqrt_m3(), CMField(Rational(-1, 4)), CMField(Rational(-1, 2)),
       (CMField(-3) + inv_sqrt_m3).scaled(Rational(1, 6))},
      {"P2'", -15, CMField(81), CMField(3) * sqrt_m3(), CMField(0), CMField(20), omega3(), kInfinity},
      {"P2''", -60, CMField(1), inv_sqrt_m3, CMField(0), CMField(0), (omega3() - CMField(4)).scaled(Rational(1, 9)),
       CMField(Rational(-1, 2))},
      {"Q", -7, CMField(-27), CMField(3), CMField(12) * sqrt_m7(), CMField(-7), CMField(0),
       (sqrt_m7() - CMField(3)).scaled(Rational(1, 6))},
  };
}

namespace detail {

inline bool same(const Coord& a, const Coord& b) { return a.has_value() == b.has_value() && (!a || *a == *b); }

/// Equal, or equal after complex conjugation (the Galois action on the radicals).
enum class Match { exact, conjugate, none };
inline Match match(const Coord& a, const Coord& b) {
  if (same(a, b)) return Match::exact;
  if (a && b && a->complex_conjugate() == *b) return Match::conjugate;
  return Match::none;
}
inline std::string describe(Match m) {
  return m == Match::exact ? "exact" : m == Match::conjugate ? "up to the conjugation of the radical" : "mismatch";
}

}  // namespace detail

inline Report verify_cm_table() {
  Report r("CM points");
  for (const auto& row : cm_points()) {
    const std::string L = row.label + ": ";
    if (row.t) {
      const CMField &t = *row.t, &s = *row.s, &y = *row.y;
      r.add(L + "t = -3s^2", "t = -3 s^2", t == CMField(-3) * s * s);
      r.add(L + "y^2", "y^2 = -(1 - t)(27 - t/3)",
            y * y == -(CMField(1) - t) * (CMField(27) - t.scaled(Rational(1, 3))));
      r.add(L + "w = (t-1)/4", "w = (t - 1)/4", row.w && *row.w == (t - CMField(1)).scaled(Rational(1, 4)));
    } else {
      r.add(L + "t, s, y, w at infinity", "t = s = y = w = inf", !row.s && !row.y && !row.w);
    }
    if (row.u && row.w) {
      const CMField& u = *row.u;
      r.add(L + "w from u", "w = -27u^2 - 27u - 7", *row.w == CMField(-27) * u * u - CMField(27) * u - CMField(7));
    } else {
      r.add(L + "w from u", "w = inf exactly when u = inf", !row.u && !row.w);
    }
    // v^2 + v = (w - 5)/(20 - w), read projectively in both coordinates.
    bool vw = false;
    if (row.v && row.w && *row.w != CMField(20)) {
      const CMField& v = *row.v;
      vw = v * v + v == (*row.w - CMField(5)) / (CMField(20) - *row.w);
    } else if (!row.v) {
      vw = row.w && *row.w == CMField(20);
    } else if (!row.w) {
      vw = (*row.v * *row.v + *row.v + CMField(1)).is_zero();
    }
    r.add(L + "v from w", "v^2 + v = (w - 5)/(20 - w)", vw);
    r.add(L + "curve equation", "(u^2 + u + 1)(v^2 + v + 1) = 5/9", on_curve({row.u, row.v}));

    TowerCoords c = coords_from_tsy(row.t, row.s, row.y);
    auto mu = detail::match(c.u, row.u), mv = detail::match(c.v, row.v);
    r.add(L + "u = (s-3)/6", "u = (s - 3)/6", mu != detail::Match::none, detail::describe(mu));
    r.add(L + "v from (t, y)", "v = (3y - (t - 81)) / (2(t - 81))", mv != detail::Match::none, detail::describe(mv));
    if (row.t && row.v) {
      auto my = detail::match(y_from_wv(*row.w, *row.v), row.y);
      r.add(L + "y from (w, v)", "y = 4(2v + 1)(w - 20)/3", my != detail::Match::none, detail::describe(my));
      r.add(L + "t = 4w + 1", "t = 4w + 1", t_from_w(*row.w) == *row.t);
    }
  }
  auto rows = cm_points();
  r.add("P2': t = 81", "t(P2') = 81", rows[2].t && *rows[2].t == CMField(81));
  return r;
}

/// Integral over Z[1/15]: characteristic polynomial coefficients in Z[1/15].
inline bool is_integral_away_from_15(const CMField& z) {
  for (const auto& c : z.characteristic_polynomial())
    if (!supported_on(Rational(denominator(c)), {3, 5})) return false;
  return true;
}

/// A unit of the integral closure of Z[1/15]: integral with norm supported on {3, 5}.
inline bool is_unit_away_from_15(const CMField& z) {
  return is_integral_away_from_15(z) && supported_on(z.norm(), {3, 5});
}

/// Resultant of two monic polynomials given by coefficient vectors (constant
/// term first), via the Sylvester determinant.
inline Rational resultant(const std::vector<Rational>& f, const std::vector<Rational>& g) {
  const std::size_t m = f.size() - 1, n = g.size() - 1, N = m + n;
  std::vector<std::vector<Rational>> a(N, std::vector<Rational>(N));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) a[r][r + k] = f[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) a[n + r][r + k] = g[n - k];
  Rational det = 1;
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t piv = c;
    while (piv < N && a[piv][c] == 0) ++piv;
    if (piv == N) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < N; ++r) {
      Rational f2 = a[r][c] / a[c][c];
      for (std::size_t k = c; k < N; ++k) a[r][k] -= f2 * a[c][k];
    }
  }
  return det;
}

inline Report verify_unit_distinctness() {
  using cm::omega3;
  Report r("units over Z[1/15]");
  const auto rows = cm_points();
  const CMField vQ = *rows[4].v;
  r.add("v(Q) minimal polynomial", "v(Q)^2 + v(Q) + 4/9 = 0", (vQ * vQ + vQ + CMField(Rational(4, 9))).is_zero());
  CMField prod = (vQ - omega3()) * (vQ - omega3().complex_conjugate());
  r.add("v(Q) against omega3", "(v(Q) - w)(v(Q) - w^2) = 5/9", prod == CMField(Rational(5, 9)), prod.str());
  Rational res = resultant({1, 1, 1}, {Rational(4, 9), 1, 1});
  r.add("resultant", "Res(x^2 + x + 1, x^2 + x + 4/9) is supported on {3, 5}", supported_on(res, {3, 5}),
        to_string(res));

  // Pairwise separation of the u- and v-values of P6, P2', Q.
  for (bool use_u : {true, false}) {
    const std::string name = use_u ? "u" : "v";
    for (std::size_t a : {0U, 2U, 4U})
      for (std::size_t b : {0U, 2U, 4U}) {
        if (b <= a) continue;
        const Coord& x = use_u ? rows[a].u : rows[a].v;
        const Coord& y = use_u ? rows[b].u : rows[b].v;
        const std::string label = name + "(" + rows[a].label + ") vs " + name + "(" + rows[b].label + ")";
        bool ok;
        if (x && y) {
          ok = !(*x == *y) && is_unit_away_from_15(*x - *y);
        } else if (x || y) {
          ok = is_integral_away_from_15(x ? *x : *y);
        } else {
          ok = false;
        }
        r.add(label, "values stay distinct modulo every prime outside {3, 5}", ok);
      }
  }
  return r;
}

inline Report verify_one_form() {
  Report r("one-form");
  const Polynomial u = Polynomial::variable(2, 0), v = Polynomial::variable(2, 1), one(2, 1);
  const Polynomial U = u * u + u + one, V = v * v + v + one;
  const Polynomial F = U * V - Polynomial(2, Rational(5, 9));
  const Polynomial Fu = (Polynomial(2, 2) * u + one) * V, Fv = U * (Polynomial(2, 2) * v + one);
  r.add("d/du", "dF/du = (2u + 1)(v^2 + v + 1)", F.derivative(0) == Fu);
  r.add("d/dv", "dF/dv = (u^2 + u + 1)(2v + 1)", F.derivative(1) == Fv);
  Polynomial swapped(2);
  for (const auto& [e, c] : F.terms()) swapped += Polynomial::monomial({e[1], e[0]}, c);
  r.add("symmetry", "the curve equation is symmetric in u and v", swapped == F);
  const CMField vQ = *cm_points()[4].v;
  CMField fu = Fu.evaluate<CMField>({CMField(0), vQ}), fv = Fv.evaluate<CMField>({CMField(0), vQ});
  r.add("regular at Q", "both partial derivatives are nonzero at Q (u = 0)", !fu.is_zero() && !fv.is_zero(),
        "dF/du = " + fu.str() + ", dF/dv = " + fv.str());
  r.add("value at Q", "v^2 + v + 1 = 5/9 at Q", detail::quadratic_form(vQ) == CMField(Rational(5, 9)));
  return r;
}

}  // namespace tafd
