#pragma once

// Exact multiquadratic number fields Q(sqrt(d_0), ..., sqrt(d_{n-1})), stored as
// flat 2^n-dimensional algebras over Q. The basis element with index `mask` is
// the product of the generators whose bit is set in `mask`, so the product of
// two basis elements is a rational multiple of the basis element `a ^ b`.
//
// Under the fixed complex embedding every generator goes to its principal
// square root (sqrt(d) > 0 for d > 0, sqrt(d) = i*sqrt(-d) for d < 0).

#include "tafd/interval.hpp"
#include "tafd/rational.hpp"

#include <array>
#include <bit>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace tafd {

/// Certified enclosure of a complex value.
struct ComplexEnclosure {
  Interval re;
  Interval im;

  std::complex<double> approx() const {
    return {static_cast<double>(re.mid()), static_cast<double>(im.mid())};
  }
  Rational width() const { return re.width() > im.width() ? re.width() : im.width(); }
};

template <int... Squares>
class MultiQuad {
 public:
  static constexpr std::size_t num_generators = sizeof...(Squares);
  static constexpr std::size_t dim = std::size_t{1} << num_generators;
  static constexpr std::array<int, num_generators> squares{Squares...};

  MultiQuad() = default;
  MultiQuad(const Rational& r) { c_[0] = r; }  // NOLINT(google-explicit-constructor)
  MultiQuad(int r) { c_[0] = r; }              // NOLINT(google-explicit-constructor)

  static MultiQuad basis(std::size_t mask) {
    MultiQuad out;
    out.c_.at(mask) = 1;
    return out;
  }
  static MultiQuad generator(std::size_t k) { return basis(std::size_t{1} << k); }

  const Rational& operator[](std::size_t mask) const { return c_[mask]; }
  Rational& operator[](std::size_t mask) { return c_[mask]; }
  const std::array<Rational, dim>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t m = 1; m < dim; ++m)
      if (c_[m] != 0) return false;
    return true;
  }
  const Rational& rational_part() const { return c_[0]; }

  friend MultiQuad operator+(MultiQuad a, const MultiQuad& b) {
    for (std::size_t m = 0; m < dim; ++m) a.c_[m] += b.c_[m];
    return a;
  }
  friend MultiQuad operator-(MultiQuad a, const MultiQuad& b) {
    for (std::size_t m = 0; m < dim; ++m) a.c_[m] -= b.c_[m];
    return a;
  }
  friend MultiQuad operator-(MultiQuad a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend MultiQuad operator*(const MultiQuad& a, const MultiQuad& b) {
    MultiQuad out;
    for (std::size_t i = 0; i < dim; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (b.c_[j] == 0) continue;
        out.c_[i ^ j] += basis_product_factor(i, j) * a.c_[i] * b.c_[j];
      }
    }
    return out;
  }
  MultiQuad scaled(const Rational& s) const {
    MultiQuad a = *this;
    for (auto& x : a.c_) x *= s;
    return a;
  }
  friend MultiQuad operator/(const MultiQuad& a, const MultiQuad& b) { return a * b.inverse(); }

  MultiQuad& operator+=(const MultiQuad& b) { return *this = *this + b; }
  MultiQuad& operator-=(const MultiQuad& b) { return *this = *this - b; }
  MultiQuad& operator*=(const MultiQuad& b) { return *this = *this * b; }

  friend bool operator==(const MultiQuad& a, const MultiQuad& b) { return a.c_ == b.c_; }

  /// Galois conjugate flipping the signs of the generators in `flip`.
  MultiQuad galois(std::size_t flip) const {
    MultiQuad out = *this;
    for (std::size_t m = 0; m < dim; ++m)
      if (std::popcount(m & flip) % 2 == 1) out.c_[m] = -out.c_[m];
    return out;
  }

  /// Complex conjugation under the fixed embedding.
  MultiQuad complex_conjugate() const { return galois(negative_mask()); }

  /// Field norm to Q (product of all Galois conjugates).
  Rational norm() const {
    MultiQuad p = *this;
    for (std::size_t s = 1; s < dim; ++s) p = p * galois(s);
    return p.c_[0];
  }

  MultiQuad inverse() const {
    if (is_zero()) throw ArithmeticError("inverse of zero in multiquadratic field");
    MultiQuad p(1);
    for (std::size_t s = 1; s < dim; ++s) p = p * galois(s);
    Rational n = (p * *this).c_[0];
    return p.scaled(inverse_of(n));
  }

  /// Coefficients (constant term first) of prod over conjugates of (X - sigma(z)).
  std::vector<Rational> characteristic_polynomial() const {
    std::vector<MultiQuad> poly{MultiQuad(1)};
    for (std::size_t s = 0; s < dim; ++s) {
      MultiQuad root = galois(s);
      std::vector<MultiQuad> next(poly.size() + 1);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] += poly[k];
        next[k] -= root * poly[k];
      }
      poly = std::move(next);
    }
    std::vector<Rational> out;
    for (const auto& q : poly) {
      if (!q.is_rational()) throw ArithmeticError("characteristic polynomial is not rational");
      out.push_back(q.rational_part());
    }
    return out;
  }

  /// Basis elements with an even number of negative-square factors are real.
  static bool is_real_basis(std::size_t mask) { return std::popcount(mask & negative_mask()) % 2 == 0; }

  bool is_real() const {
    for (std::size_t m = 0; m < dim; ++m)
      if (!is_real_basis(m) && c_[m] != 0) return false;
    return true;
  }

  /// Real and imaginary parts, as elements whose support is on real basis vectors.
  /// The imaginary part is only representable when some product of generators
  /// equals i (true for the tower field, which contains i itself).
  MultiQuad real_part() const {
    MultiQuad out;
    for (std::size_t m = 0; m < dim; ++m)
      if (is_real_basis(m)) out.c_[m] = c_[m];
    return out;
  }

  /// Enclosure of the value under the fixed embedding with width <= 2^-bits * sum|c|.
  ComplexEnclosure enclose(unsigned bits) const {
    ComplexEnclosure e{point_interval(0), point_interval(0)};
    for (std::size_t m = 0; m < dim; ++m) {
      if (c_[m] == 0) continue;
      Integer radicand = 1;
      int negatives = 0;
      for (std::size_t k = 0; k < num_generators; ++k) {
        if ((m >> k) & 1U) {
          radicand *= (squares[k] < 0 ? -squares[k] : squares[k]);
          negatives += squares[k] < 0 ? 1 : 0;
        }
      }
      Interval term = c_[m] * sqrt_enclosure(radicand, bits);
      // i^negatives
      switch (negatives % 4) {
        case 0: e.re = e.re + term; break;
        case 1: e.im = e.im + term; break;
        case 2: e.re = e.re - term; break;
        default: e.im = e.im - term; break;
      }
    }
    return e;
  }

  /// Enclosure with both widths at most 10^-digits.
  ComplexEnclosure numeric_eval(int digits) const {
    if (digits < 1) throw ArithmeticError("numeric_eval needs digits >= 1");
    Rational target(1, boost::multiprecision::pow(Integer(10), static_cast<unsigned>(digits)));
    unsigned bits = static_cast<unsigned>(digits * 3.33) + 8;
    for (;;) {
      ComplexEnclosure e = enclose(bits);
      if (e.re.width() <= target && e.im.width() <= target) return e;
      bits *= 2;
    }
  }

  /// Sign of a real element under the fixed embedding. Zero is detected exactly
  /// (the basis is linearly independent over Q); otherwise intervals are refined
  /// until they exclude zero.
  int certified_sign() const {
    if (!is_real()) throw ArithmeticError("certified_sign of a non-real element");
    if (is_zero()) return 0;
    for (unsigned bits = 32;; bits *= 2) {
      Interval re = enclose(bits).re;
      if (re.lo > 0) return 1;
      if (re.hi < 0) return -1;
    }
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t m = 0; m < dim; ++m) {
      if (c_[m] == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (m == 0) {
        os << to_string(c_[m]);
      } else {
        if (c_[m] != 1) os << "(" << to_string(c_[m]) << ")*";
        os << basis_name(m);
      }
    }
    if (first) os << "0";
    return os.str();
  }

  static std::string basis_name(std::size_t mask) {
    std::string out;
    for (std::size_t k = 0; k < num_generators; ++k) {
      if (!((mask >> k) & 1U)) continue;
      if (!out.empty()) out += "*";
      out += squares[k] == -1 ? std::string("i") : "sqrt(" + std::to_string(squares[k]) + ")";
    }
    return out;
  }

  static constexpr std::size_t negative_mask() {
    std::size_t m = 0;
    for (std::size_t k = 0; k < num_generators; ++k)
      if (squares[k] < 0) m |= std::size_t{1} << k;
    return m;
  }

  static Integer basis_product_factor(std::size_t a, std::size_t b) {
    Integer f = 1;
    std::size_t both = a & b;
    for (std::size_t k = 0; k < num_generators; ++k)
      if ((both >> k) & 1U) f *= squares[k];
    return f;
  }

 private:
  static Rational inverse_of(const Rational& r) { return tafd::inverse(r); }

  std::array<Rational, dim> c_{};
};

/// Q(i, sqrt3, sqrt5) with basis {1, i, sqrt3, i sqrt3, sqrt5, i sqrt5, sqrt15, i sqrt15}.
using TowerElement = MultiQuad<-1, 3, 5>;

/// Q(sqrt(-3), sqrt(-7)), where the complex multiplication coordinates live.
using CMField = MultiQuad<-3, -7>;

namespace tower {
inline TowerElement i() { return TowerElement::basis(1); }
inline TowerElement sqrt3() { return TowerElement::basis(2); }
inline TowerElement sqrt5() { return TowerElement::basis(4); }
inline TowerElement sqrt15() { return TowerElement::basis(6); }

/// i -> -i.
inline TowerElement conj_i(const TowerElement& a) { return a.complex_conjugate(); }

/// Imaginary part of a tower element, as a real tower element.
inline TowerElement imag_part(const TowerElement& a) {
  TowerElement out;
  for (std::size_t m = 0; m < TowerElement::dim; ++m)
    if (m & 1U) out[m ^ 1U] = a[m];
  return out;
}
inline TowerElement real_part(const TowerElement& a) { return a.real_part(); }
}  // namespace tower

namespace cm {
inline CMField sqrt_m3() { return CMField::basis(1); }
inline CMField sqrt_m7() { return CMField::basis(2); }
/// Primitive cube root of unity (-1 + sqrt(-3)) / 2.
inline CMField omega3() { return Rational(-1, 2) + Rational(1, 2) * sqrt_m3(); }
}  // namespace cm

}  // namespace tafd
