#pragma once

// Exact Moebius geometry on the upper half-plane over the tower field: the
// hexagonal fundamental domain of the norm-1 group of Lambda, its edge
// pairings, the group presentation, and the Gauss-Bonnet angle check.

#include "tafd/multiquad.hpp"
#include "tafd/quaternion.hpp"
#include "tafd/report.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tafd {

using Decimal = boost::multiprecision::cpp_dec_float_100;

inline Decimal to_decimal(const Rational& r) {
  return Decimal(numerator(r).str()) / Decimal(denominator(r).str());
}

/// Point of the upper half-plane with certified positive imaginary part.
class UHPoint {
 public:
  explicit UHPoint(TowerElement z) : z_(std::move(z)) {
    if (tower::imag_part(z_).certified_sign() <= 0) throw ArithmeticError("point is not in the upper half-plane");
  }
  static UHPoint i() { return UHPoint(tower::i()); }

  const TowerElement& z() const { return z_; }
  TowerElement re() const { return tower::real_part(z_); }
  TowerElement im() const { return tower::imag_part(z_); }
  TowerElement abs2() const { return z_ * tower::conj_i(z_); }

  friend bool operator==(const UHPoint& a, const UHPoint& b) { return a.z_ == b.z_; }

 private:
  TowerElement z_;
};

class MoebiusMap {
 public:
  explicit MoebiusMap(QuatMatrix m) : m_(std::move(m)) {
    if (m_.det().certified_sign() <= 0) throw ArithmeticError("Moebius map needs positive determinant");
  }
  explicit MoebiusMap(const QuatElement& q) : MoebiusMap(embed(q)) {}

  const QuatMatrix& matrix() const { return m_; }
  friend MoebiusMap operator*(const MoebiusMap& a, const MoebiusMap& b) { return MoebiusMap(a.m_ * b.m_); }

  /// Equality in PGL2: the matrices differ by a scalar.
  bool same_as(const MoebiusMap& o) const { return m_.projectively_equal(o.m_); }
  bool is_identity() const { return m_.is_scalar(); }

 private:
  QuatMatrix m_;
};

inline UHPoint act(const MoebiusMap& g, const UHPoint& p) {
  const QuatMatrix& m = g.matrix();
  TowerElement den = m(1, 0) * p.z() + m(1, 1);
  if (den.is_zero()) throw ArithmeticError("Moebius denominator vanishes");
  return UHPoint((m(0, 0) * p.z() + m(0, 1)) / den);
}

inline UHPoint act(const QuatElement& g, const UHPoint& p) { return act(MoebiusMap(g), p); }

/// Quaternion words whose action on i gives the six vertices, in clockwise order.
inline QuatElement vertex_word(int k) {
  using namespace named;
  switch (k) {
    case 1: return h() * omega() * w5();
    case 2: return h();
    case 3: return h() * omega2() * w5().inverse();
    case 4: return omega() * w5().inverse();
    case 5: return QuatElement(1);
    case 6: return omega2() * w5();
    default: throw std::out_of_range("vertex index must be 1..6");
  }
}

inline UHPoint vertex(int k) { return act(vertex_word(k), UHPoint::i()); }

/// The three side pairings, each with the two vertex pairs it carries.
struct EdgePairing {
  std::string name;
  QuatElement g;
  std::array<std::pair<int, int>, 2> moves;
};

inline std::vector<EdgePairing> edge_pairings() {
  using namespace named;
  return {{"h w^2", h() * omega2(), {{{5, 2}, {6, 1}}}},
          {"h w", h() * omega(), {{{5, 2}, {4, 3}}}},
          {"gamma", gamma(), {{{4, 6}, {3, 1}}}}};
}

/// Orbits of the vertices under the side pairings.
inline std::vector<std::vector<int>> vertex_orbits() {
  std::array<int, 7> parent{};
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& e : edge_pairings())
    for (auto [a, b] : e.moves) parent[find(a)] = find(b);
  std::map<int, std::vector<int>> groups;
  for (int k = 1; k <= 6; ++k) groups[find(k)].push_back(k);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(members);
  std::sort(out.begin(), out.end());
  return out;
}

inline Report verify_edge_identifications() {
  using namespace named;
  Report r("edge identifications");
  std::array<std::optional<UHPoint>, 7> v;
  for (int k = 1; k <= 6; ++k) v[k] = vertex(k);
  auto check = [&](const std::string& name, const std::string& anchor, const QuatElement& g, int from, int to) {
    UHPoint img = act(g, *v[from]);
    bool ok = img == *v[to];
    r.add(name, anchor, ok, ok ? std::string{} : "difference " + (img.z() - v[to]->z()).str());
  };
  for (const auto& e : edge_pairings())
    for (auto [a, b] : e.moves)
      check("pairing " + e.name + ": v" + std::to_string(a) + "->v" + std::to_string(b),
            e.name + " carries v" + std::to_string(a) + " to v" + std::to_string(b), e.g, a, b);
  const QuatElement L = ladder();
  for (auto [a, b] : {std::pair{4, 5}, std::pair{5, 6}, std::pair{3, 2}, std::pair{2, 1}})
    check("ladder v" + std::to_string(a) + "->v" + std::to_string(b),
          "w^2 w5 w^2 carries v" + std::to_string(a) + " to v" + std::to_string(b), L, a, b);
  r.add("vertex v5", "v5 = i", *v[5] == UHPoint::i());
  r.add("vertex v2", "v2 = h i = (4 + sqrt15)^2 i",
        v[2]->z() == (TowerElement(4) + tower::sqrt15()) * (TowerElement(4) + tower::sqrt15()) * tower::i());
  r.add("mirror v1 v3", "v1 = -conj(v3)", v[1]->z() == -tower::conj_i(v[3]->z()));
  r.add("mirror v6 v4", "v6 = -conj(v4)", v[6]->z() == -tower::conj_i(v[4]->z()));
  auto orbits = vertex_orbits();
  bool orbit_ok = orbits == std::vector<std::vector<int>>{{1, 3, 4, 6}, {2, 5}};
  r.add("vertex orbits", "vertex cycles {v2, v5} and {v1, v3, v4, v6}", orbit_ok);
  for (int k = 1; k <= 6; ++k) {
    QuatElement g = vertex_word(k);
    QuatElement s = g * omega() * g.inverse();
    bool ok = act(s, *v[k]) == *v[k] && pow(s, 3) == QuatElement(1) && !(s == QuatElement(1));
    r.add("stabilizer v" + std::to_string(k), "g w g^-1 fixes v" + std::to_string(k) + " and has order 3", ok);
  }
  return r;
}

inline Report verify_presentation() {
  using namespace named;
  Report r("presentation");
  auto scalar = [](const QuatElement& q) { return embed(q).is_scalar(); };
  const QuatElement a = h() * omega2(), b = h() * omega();
  const QuatElement g = gamma(), gi = gamma().inverse(), hi = h().inverse();
  r.add("omega order", "w^3 = 1", pow(omega(), 3) == QuatElement(1) && scalar(pow(omega(), 3)));
  r.add("relation b^-1 a", "(b^-1 a)^3 = 1", scalar(pow(b.inverse() * a, 3)));
  r.add("relation b^-1 gamma^-1 a gamma", "(b^-1 gamma^-1 a gamma)^3 = 1",
        scalar(pow(b.inverse() * gi * a * g, 3)));
  r.add("relation in h, w, gamma", "(w^2 h^-1 gamma^-1 h w^2 gamma)^3 = 1",
        scalar(pow(omega2() * hi * gi * h() * omega2() * g, 3)));
  r.add("b^-1 a = w", "b^-1 a = w", b.inverse() * a == omega());
  return r;
}

/// Geodesic through two points: a half-circle centered on the real axis, or a
/// vertical line.
struct Geodesic {
  bool vertical = false;
  TowerElement center;   // real, meaningful when !vertical
  TowerElement radius2;  // real, meaningful when !vertical
};

inline Geodesic geodesic_through(const UHPoint& p, const UHPoint& q) {
  TowerElement dx = q.re() - p.re();
  if (dx.is_zero()) return {true, {}, {}};
  TowerElement c = (q.abs2() - p.abs2()) / (TowerElement(2) * dx);
  TowerElement d = p.z() - c;
  return {false, c, d * tower::conj_i(d)};
}

/// Unit-free tangent vector at p of the geodesic segment from p towards q.
inline TowerElement tangent_towards(const UHPoint& p, const UHPoint& q) {
  Geodesic g = geodesic_through(p, q);
  TowerElement t = g.vertical ? tower::i() : tower::i() * (p.z() - g.center);
  TowerElement chord = q.z() - p.z();
  int s = tower::real_part(t * tower::conj_i(chord)).certified_sign();
  if (s == 0) throw ArithmeticError("degenerate tangent");
  return s > 0 ? t : -t;
}

/// Angle in [0, pi] between two tangent directions, evaluated to `digits` digits.
inline Decimal angle_between(const TowerElement& t1, const TowerElement& t2, int digits) {
  ComplexEnclosure e = (t2 * tower::conj_i(t1)).numeric_eval(digits + 10);
  Decimal re = to_decimal(e.re.mid()), im = to_decimal(e.im.mid());
  return boost::multiprecision::abs(boost::multiprecision::atan2(im, re));
}

inline Decimal interior_angle(int k, int digits) {
  int prev = k == 1 ? 6 : k - 1, next = k == 6 ? 1 : k + 1;
  UHPoint p = vertex(k);
  return angle_between(tangent_towards(p, vertex(prev)), tangent_towards(p, vertex(next)), digits);
}

inline Report verify_geodesic_claims(int digits) {
  if (digits < 10 || digits > 80) throw std::invalid_argument("digits must lie in 10..80");
  using namespace named;
  Report r("geodesics and angles");
  const Decimal pi = boost::math::constants::pi<Decimal>();
  const Decimal tol = boost::multiprecision::pow(Decimal(10), -(digits - 2));
  auto fmt = [](const Decimal& x) { return x.str(20); };

  UHPoint w_v5 = act(omega(), vertex(5)), w_v6 = act(omega(), vertex(6)), w2_v4 = act(omega2(), vertex(4));
  r.add("unit circle w v5", "|w v5| = 1", w_v5.abs2() == TowerElement(1));
  r.add("unit circle w v6", "|w v6| = 1", w_v6.abs2() == TowerElement(1));
  r.add("unit circle w^2 v4", "|w^2 v4| = 1", w2_v4.abs2() == TowerElement(1));
  Geodesic g = geodesic_through(w_v5, w_v6);
  r.add("geodesic w(v5 v6)", "w(v5 v6) lies on the unit circle",
        !g.vertical && g.center.is_zero() && g.radius2 == TowerElement(1));

  const std::array<Decimal, 7> expected{0, pi / 6, pi / 3, pi / 6, pi / 6, pi / 3, pi / 6};
  Decimal sum = 0;
  for (int k = 1; k <= 6; ++k) {
    Decimal a = interior_angle(k, digits);
    sum += a;
    bool ok = boost::multiprecision::abs(a - expected[k]) < tol;
    r.add("angle v" + std::to_string(k), (k == 2 || k == 5) ? "interior angle pi/3" : "interior angle pi/6",
          ok, fmt(a));
  }
  r.add("angle sum", "sum of interior angles = 4 pi / 3", boost::multiprecision::abs(sum - 4 * pi / 3) < tol, fmt(sum));
  Decimal area = 4 * pi - sum;
  r.add("area", "hyperbolic area = 8 pi / 3", boost::multiprecision::abs(area - 8 * pi / 3) < tol, fmt(area));

  UHPoint v5 = vertex(5);
  TowerElement up = tower::i();
  for (int k : {4, 6}) {
    Decimal a = angle_between(up, tangent_towards(v5, vertex(k)), digits);
    r.add("axis angle v5 v" + std::to_string(k), "edge v5 v" + std::to_string(k) + " meets the imaginary axis at pi/6",
          boost::multiprecision::abs(a - pi / 6) < tol, fmt(a));
  }
  UHPoint v2 = vertex(2);
  for (int k : {1, 3}) {
    Decimal a = angle_between(-up, tangent_towards(v2, vertex(k)), digits);
    r.add("axis angle v2 v" + std::to_string(k), "edge v2 v" + std::to_string(k) + " meets the imaginary axis at pi/6",
          boost::multiprecision::abs(a - pi / 6) < tol, fmt(a));
  }
  return r;
}

inline Report verify_domain(int digits) {
  Report r("fundamental domain");
  r.append(verify_edge_identifications());
  r.append(verify_geodesic_claims(digits));
  return r;
}

}  // namespace tafd
