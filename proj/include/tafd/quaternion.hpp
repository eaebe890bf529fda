#pragma once

// The quaternion algebra D = (-3, 5)_Q with basis {1, x, y, xy}, x^2 = -3,
// y^2 = 5, xy = -yx, its maximal order Lambda = Z{1, w, y, wy} with
// w = (-1 + x)/2, and the embedding of D into 2x2 matrices over Q(sqrt3, sqrt5).

#include "tafd/multiquad.hpp"
#include "tafd/rational.hpp"
#include "tafd/report.hpp"

#include <array>
#include <ostream>
#include <string>
#include <variant>

namespace tafd {

class QuatElement {
 public:
  static constexpr int alpha = -3;  // x^2
  static constexpr int beta = 5;    // y^2

  QuatElement() = default;
  QuatElement(Rational a, Rational b, Rational c, Rational d)
      : c_{std::move(a), std::move(b), std::move(c), std::move(d)} {}
  QuatElement(int a) : c_{Rational(a), 0, 0, 0} {}              // NOLINT(google-explicit-constructor)
  QuatElement(const Rational& a) : c_{a, 0, 0, 0} {}  // NOLINT(google-explicit-constructor)

  static QuatElement x() { return {0, 1, 0, 0}; }
  static QuatElement y() { return {0, 0, 1, 0}; }
  static QuatElement xy() { return {0, 0, 0, 1}; }

  const Rational& a() const { return c_[0]; }
  const Rational& b() const { return c_[1]; }
  const Rational& c() const { return c_[2]; }
  const Rational& d() const { return c_[3]; }
  const Rational& operator[](std::size_t k) const { return c_[k]; }

  friend QuatElement operator+(const QuatElement& p, const QuatElement& q) {
    return {p.c_[0] + q.c_[0], p.c_[1] + q.c_[1], p.c_[2] + q.c_[2], p.c_[3] + q.c_[3]};
  }
  friend QuatElement operator-(const QuatElement& p, const QuatElement& q) {
    return {p.c_[0] - q.c_[0], p.c_[1] - q.c_[1], p.c_[2] - q.c_[2], p.c_[3] - q.c_[3]};
  }
  friend QuatElement operator-(const QuatElement& p) { return {-p.c_[0], -p.c_[1], -p.c_[2], -p.c_[3]}; }

  friend QuatElement operator*(const QuatElement& p, const QuatElement& q) {
    const auto& [a1, b1, c1, d1] = p.c_;
    const auto& [a2, b2, c2, d2] = q.c_;
    return {a1 * a2 + alpha * b1 * b2 + beta * c1 * c2 - alpha * beta * d1 * d2,
            a1 * b2 + b1 * a2 - beta * c1 * d2 + beta * d1 * c2,
            a1 * c2 + c1 * a2 + alpha * b1 * d2 - alpha * d1 * b2,
            a1 * d2 + d1 * a2 + b1 * c2 - c1 * b2};
  }
  QuatElement scaled(const Rational& s) const { return {s * c_[0], s * c_[1], s * c_[2], s * c_[3]}; }

  friend bool operator==(const QuatElement& p, const QuatElement& q) { return p.c_ == q.c_; }

  QuatElement conjugate() const { return {c_[0], -c_[1], -c_[2], -c_[3]}; }
  Rational reduced_norm() const {
    return c_[0] * c_[0] - alpha * c_[1] * c_[1] - beta * c_[2] * c_[2] + alpha * beta * c_[3] * c_[3];
  }
  Rational reduced_trace() const { return 2 * c_[0]; }

  QuatElement inverse() const {
    Rational n = reduced_norm();
    if (n == 0) throw ArithmeticError("inverse of zero quaternion");
    return conjugate().scaled(tafd::inverse(n));
  }

  bool is_scalar() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

  std::string str() const {
    return "(" + to_string(c_[0]) + ") + (" + to_string(c_[1]) + ")x + (" + to_string(c_[2]) + ")y + (" +
           to_string(c_[3]) + ")xy";
  }

 private:
  std::array<Rational, 4> c_{};
};

inline std::ostream& operator<<(std::ostream& os, const QuatElement& q) { return os << q.str(); }

inline QuatElement pow(const QuatElement& q, int n) {
  QuatElement base = n < 0 ? q.inverse() : q;
  QuatElement out(1);
  for (int k = 0; k < (n < 0 ? -n : n); ++k) out = out * base;
  return out;
}

/// Integral element of Lambda in the basis {1, w, y, wy}.
struct OrderElement {
  std::array<Integer, 4> e{};

  QuatElement to_quat() const {
    return {Rational(e[0]) - Rational(e[1], 2), Rational(e[1], 2), Rational(e[2]) - Rational(e[3], 2),
            Rational(e[3], 2)};
  }
  friend bool operator==(const OrderElement&, const OrderElement&) = default;
  std::string str() const {
    return "(" + e[0].str() + ", " + e[1].str() + ", " + e[2].str() + ", " + e[3].str() + ")";
  }
};

/// Result of a failed membership test: the first coordinate that is not integral.
struct NotInOrder {
  int coordinate;
  Rational value;
};

/// Rational coordinates of p in the basis {1, w, y, wy}.
inline std::array<Rational, 4> lambda_rational_coordinates(const QuatElement& p) {
  return {p.a() + p.b(), 2 * p.b(), p.c() + p.d(), 2 * p.d()};
}

inline std::variant<OrderElement, NotInOrder> lambda_coordinates(const QuatElement& p) {
  auto r = lambda_rational_coordinates(p);
  OrderElement out;
  for (int k = 0; k < 4; ++k) {
    if (denominator(r[k]) != 1) return NotInOrder{k, r[k]};
    out.e[k] = numerator(r[k]);
  }
  return out;
}

inline bool in_order(const QuatElement& p) { return std::holds_alternative<OrderElement>(lambda_coordinates(p)); }

/// 2x2 matrix over the real subfield Q(sqrt3, sqrt5) of the tower.
struct QuatMatrix {
  std::array<TowerElement, 4> m{};  // row-major

  static QuatMatrix identity() { return {{TowerElement(1), TowerElement(0), TowerElement(0), TowerElement(1)}}; }

  const TowerElement& operator()(int r, int c) const { return m[2 * r + c]; }

  friend QuatMatrix operator*(const QuatMatrix& p, const QuatMatrix& q) {
    return {{p.m[0] * q.m[0] + p.m[1] * q.m[2], p.m[0] * q.m[1] + p.m[1] * q.m[3], p.m[2] * q.m[0] + p.m[3] * q.m[2],
             p.m[2] * q.m[1] + p.m[3] * q.m[3]}};
  }
  friend bool operator==(const QuatMatrix& p, const QuatMatrix& q) { return p.m == q.m; }

  TowerElement det() const { return m[0] * m[3] - m[1] * m[2]; }
  TowerElement trace() const { return m[0] + m[3]; }

  bool is_scalar() const { return m[1].is_zero() && m[2].is_zero() && m[0] == m[3]; }

  /// True when p = lambda q for some nonzero scalar lambda.
  bool projectively_equal(const QuatMatrix& q) const {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (!(m[a] * q.m[b] == m[b] * q.m[a])) return false;
    return true;
  }

  std::string str() const {
    return "[[" + m[0].str() + ", " + m[1].str() + "], [" + m[2].str() + ", " + m[3].str() + "]]";
  }
};

/// x -> [[0, sqrt3], [-sqrt3, 0]], y -> [[0, sqrt5], [sqrt5, 0]], extended linearly.
inline QuatMatrix embed(const QuatElement& p) {
  using tower::sqrt15;
  using tower::sqrt3;
  using tower::sqrt5;
  TowerElement a(p.a()), b(p.b()), c(p.c()), d(p.d());
  return {{a + d * sqrt15(), b * sqrt3() + c * sqrt5(), c * sqrt5() - b * sqrt3(), a - d * sqrt15()}};
}

/// Named elements of Lambda.
namespace named {
inline QuatElement omega() { return {Rational(-1, 2), Rational(1, 2), 0, 0}; }
inline QuatElement omega2() { return omega() * omega(); }
inline QuatElement h() { return {4, 0, 0, 1}; }
inline QuatElement gamma() { return QuatElement(4) + QuatElement(5) * omega2() - QuatElement(2) * QuatElement::y(); }
inline QuatElement w3() { return QuatElement::x(); }
inline QuatElement w5() { return {5, 0, 2, 0}; }
inline QuatElement w15() { return {0, 5, 0, 2}; }
/// The ladder element w^2 w5 w^2.
inline QuatElement ladder() { return omega2() * w5() * omega2(); }
}  // namespace named

inline Report verify_order_identities() {
  using namespace named;
  Report r("order identities");
  auto check = [&r](const std::string& name, const std::string& anchor, const QuatElement& lhs,
                    const QuatElement& rhs) {
    bool ok = lhs == rhs;
    r.add(name, anchor, ok, ok ? std::string{} : "lhs = " + lhs.str() + ", rhs = " + rhs.str());
  };
  const QuatElement y = QuatElement::y();
  const QuatElement L = ladder();
  check("omega-relation", "w^2 + w + 1 = 0", omega2() + omega() + QuatElement(1), QuatElement(0));
  check("omega-cube", "w^3 = 1", omega2() * omega(), QuatElement(1));
  check("y-omega", "y w = w^2 y", y * omega(), omega2() * y);
  check("ladder-conjugation", "(w^2 w5 w^2) h = h (w w5 w)", L * h(), h() * (omega() * w5() * omega()));
  check("ladder-square", "(w^2 w5 w^2)^2 = 5 gamma", L * L, gamma().scaled(5));
  check("h-from-ladder", "5h = (2 w^2 w5 w^2 + 5) y", h().scaled(5), (L.scaled(2) + QuatElement(5)) * y);
  check("gamma-norm", "N(gamma) = 1", QuatElement(gamma().reduced_norm()), QuatElement(1));
  check("h-norm", "N(h) = 1", QuatElement(h().reduced_norm()), QuatElement(1));
  check("w3-norm", "N(x) = 3", QuatElement(w3().reduced_norm()), QuatElement(3));
  check("w5-norm", "N(5 + 2y) = 5", QuatElement(w5().reduced_norm()), QuatElement(5));
  check("w15-norm", "N(5x + 2xy) = 15", QuatElement(w15().reduced_norm()), QuatElement(15));
  for (const auto& [name, q] : {std::pair{"h", h()}, std::pair{"gamma", gamma()}, std::pair{"w5", w5()},
                                std::pair{"w15", w15()}, std::pair{"ladder", L}}) {
    r.add(std::string(name) + "-in-order", std::string(name) + " lies in Lambda", in_order(q));
  }
  return r;
}

}  // namespace tafd
