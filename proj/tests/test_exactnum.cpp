#include "tafd/multiquad.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace tafd;

namespace {

TowerElement random_tower(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  TowerElement z;
  for (std::size_t m = 0; m < TowerElement::dim; ++m) z[m] = Rational(num(rng), den(rng));
  return z;
}

// Floating point value of a tower element computed independently of the
// interval code.
std::complex<double> float_value(const TowerElement& z) {
  const std::complex<double> gens[3] = {{0, 1}, {std::sqrt(3.0), 0}, {std::sqrt(5.0), 0}};
  std::complex<double> out = 0;
  for (std::size_t m = 0; m < TowerElement::dim; ++m) {
    std::complex<double> b = 1;
    for (int k = 0; k < 3; ++k)
      if ((m >> k) & 1U) b *= gens[k];
    out += static_cast<double>(z[m]) * b;
  }
  return out;
}

}  // namespace

TEST(Rational, Valuations) {
  EXPECT_EQ(two_valuation(Rational(12, 5)), 2);
  EXPECT_EQ(two_valuation(Rational(3, 8)), -3);
  EXPECT_TRUE(is_two_local(Rational(7, 3)));
  EXPECT_FALSE(is_two_local(Rational(1, 6)));
  EXPECT_EQ(mod2(Rational(5, 3)), 1);
  EXPECT_THROW(inverse(Rational(0)), ArithmeticError);
  EXPECT_TRUE(supported_on(Rational(-45, 2), {2, 3, 5}));
  EXPECT_FALSE(supported_on(Rational(7, 1), {2, 3, 5}));
}

TEST(Interval, SqrtEnclosure) {
  Interval s = sqrt_enclosure(2, 40);
  EXPECT_TRUE(s.lo * s.lo <= 2 && s.hi * s.hi >= 2);
  EXPECT_LE(s.width(), Rational(1, Integer(1) << 40));
  Interval exact = sqrt_enclosure(49, 10);
  EXPECT_EQ(exact.lo, 7);
  EXPECT_EQ(exact.hi, 7);
}

TEST(Tower, GeneratorsSquare) {
  EXPECT_EQ(tower::i() * tower::i(), TowerElement(-1));
  EXPECT_EQ(tower::sqrt3() * tower::sqrt3(), TowerElement(3));
  EXPECT_EQ(tower::sqrt15() * tower::sqrt15(), TowerElement(15));
  EXPECT_EQ(tower::sqrt3() * tower::sqrt5(), tower::sqrt15());
}

TEST(Tower, FieldAxiomsRandom) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    TowerElement a = random_tower(rng), b = random_tower(rng), c = random_tower(rng);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inverse(), TowerElement(1));
    }
    EXPECT_EQ((a * b).norm(), a.norm() * b.norm());
  }
}

TEST(Tower, EmbeddingMatchesFloat) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    TowerElement a = random_tower(rng);
    ComplexEnclosure e = a.numeric_eval(30);
    std::complex<double> f = float_value(a);
    EXPECT_NEAR(e.approx().real(), f.real(), 1e-9);
    EXPECT_NEAR(e.approx().imag(), f.imag(), 1e-9);
    EXPECT_LE(e.width(), Rational(1, boost::multiprecision::pow(Integer(10), 30)));
    EXPECT_EQ(float_value(a.complex_conjugate()), std::conj(f));
  }
}

TEST(Tower, CertifiedSign) {
  // sqrt15 = 3.8729833...
  EXPECT_EQ((TowerElement(4) - tower::sqrt15()).certified_sign(), 1);
  EXPECT_EQ((tower::sqrt3() + tower::sqrt5() - tower::sqrt15()).certified_sign(), 1);
  EXPECT_EQ((tower::sqrt15() - TowerElement(Rational(3872, 1000))).certified_sign(), 1);
  EXPECT_EQ((tower::sqrt15() - TowerElement(Rational(3873, 1000))).certified_sign(), -1);
  EXPECT_EQ((tower::sqrt15() - TowerElement(Rational(38729833, 10000000))).certified_sign(), 1);
  EXPECT_EQ((tower::sqrt15() - TowerElement(Rational(38729834, 10000000))).certified_sign(), -1);
  EXPECT_EQ((tower::sqrt3() * tower::sqrt5() - tower::sqrt15()).certified_sign(), 0);
  EXPECT_THROW(tower::i().certified_sign(), ArithmeticError);
}

TEST(Tower, CharacteristicPolynomialOfSqrt3PlusSqrt5) {
  // (X^2 - 8)^2 - 60 = X^4 - 16X^2 + 4, squared since the tower has degree 8.
  auto p = (tower::sqrt3() + tower::sqrt5()).characteristic_polynomial();
  std::vector<Rational> expected = {16, 0, -128, 0, 264, 0, -32, 0, 1};
  EXPECT_EQ(p, expected);
}

TEST(CM, OmegaIsCubeRoot) {
  CMField w = cm::omega3();
  EXPECT_EQ(w * w * w, CMField(1));
  EXPECT_EQ(w * w + w + CMField(1), CMField(0));
  EXPECT_EQ(cm::sqrt_m7() * cm::sqrt_m7(), CMField(-7));
  EXPECT_EQ(cm::sqrt_m7().complex_conjugate(), -cm::sqrt_m7());
  // sqrt(-3) sqrt(-7) = -sqrt(21) is real.
  EXPECT_TRUE((cm::sqrt_m3() * cm::sqrt_m7()).is_real());
  EXPECT_EQ((cm::sqrt_m3() * cm::sqrt_m7()).certified_sign(), -1);
}
