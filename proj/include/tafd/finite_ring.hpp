#pragma once

// The three finite rings that receive the order under reduction mod 2, 3, 5:
// M2(F2), F9 = F3[Y]/(Y^2 + 1) and F25 = F5[W]/(W^2 + W + 1).

#include <array>
#include <cstdint>
#include <string>

namespace tafd {

/// 2x2 matrix over F2; entry (r, c) is bit 2r + c.
class M2F2 {
 public:
  constexpr M2F2() = default;
  constexpr M2F2(int a, int b, int c, int d)
      : bits_(static_cast<std::uint8_t>((a & 1) | (b & 1) << 1 | (c & 1) << 2 | (d & 1) << 3)) {}

  static constexpr M2F2 identity() { return {1, 0, 0, 1}; }
  static constexpr M2F2 zero() { return {}; }

  constexpr int at(int r, int c) const { return (bits_ >> (2 * r + c)) & 1; }

  friend constexpr M2F2 operator+(M2F2 x, M2F2 y) {
    M2F2 out;
    out.bits_ = static_cast<std::uint8_t>(x.bits_ ^ y.bits_);
    return out;
  }
  friend constexpr M2F2 operator*(M2F2 x, M2F2 y) {
    return {x.at(0, 0) * y.at(0, 0) + x.at(0, 1) * y.at(1, 0), x.at(0, 0) * y.at(0, 1) + x.at(0, 1) * y.at(1, 1),
            x.at(1, 0) * y.at(0, 0) + x.at(1, 1) * y.at(1, 0), x.at(1, 0) * y.at(0, 1) + x.at(1, 1) * y.at(1, 1)};
  }
  friend constexpr bool operator==(M2F2 x, M2F2 y) { return x.bits_ == y.bits_; }

  constexpr int det() const { return (at(0, 0) * at(1, 1) + at(0, 1) * at(1, 0)) & 1; }

  /// Image of the nonzero vector with index k (1 = e1, 2 = e2, 3 = e1 + e2).
  constexpr int apply(int k) const {
    int v0 = k & 1, v1 = (k >> 1) & 1;
    int w0 = (at(0, 0) * v0 + at(0, 1) * v1) & 1;
    int w1 = (at(1, 0) * v0 + at(1, 1) * v1) & 1;
    return w0 | (w1 << 1);
  }

  /// Sign (0 even, 1 odd) of the permutation of the three nonzero vectors.
  /// Requires an invertible matrix.
  constexpr int permutation_parity() const {
    int img[3] = {apply(1), apply(2), apply(3)};
    int inversions = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) inversions += img[a] > img[b] ? 1 : 0;
    return inversions & 1;
  }

  std::string str() const {
    return "[[" + std::to_string(at(0, 0)) + "," + std::to_string(at(0, 1)) + "],[" + std::to_string(at(1, 0)) +
           "," + std::to_string(at(1, 1)) + "]]";
  }

 private:
  std::uint8_t bits_ = 0;
};

namespace detail {
constexpr int mod(int a, int p) { return ((a % p) + p) % p; }
}  // namespace detail

/// a + bY in F3[Y]/(Y^2 + 1).
class GF9 {
 public:
  constexpr GF9() = default;
  constexpr GF9(int a, int b) : a_(detail::mod(a, 3)), b_(detail::mod(b, 3)) {}

  static constexpr GF9 Y() { return {0, 1}; }

  constexpr int re() const { return a_; }
  constexpr int im() const { return b_; }

  friend constexpr GF9 operator+(GF9 x, GF9 y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
  friend constexpr GF9 operator-(GF9 x, GF9 y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
  friend constexpr GF9 operator*(GF9 x, GF9 y) { return {x.a_ * y.a_ - x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_}; }
  friend constexpr bool operator==(GF9 x, GF9 y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  std::string str() const { return std::to_string(a_) + "+" + std::to_string(b_) + "Y"; }

 private:
  int a_ = 0;
  int b_ = 0;
};

/// a + bW in F5[W]/(W^2 + W + 1).
class GF25 {
 public:
  constexpr GF25() = default;
  constexpr GF25(int a, int b) : a_(detail::mod(a, 5)), b_(detail::mod(b, 5)) {}

  static constexpr GF25 W() { return {0, 1}; }

  constexpr int c0() const { return a_; }
  constexpr int c1() const { return b_; }

  friend constexpr GF25 operator+(GF25 x, GF25 y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
  friend constexpr GF25 operator-(GF25 x, GF25 y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
  // W^2 = -1 - W
  friend constexpr GF25 operator*(GF25 x, GF25 y) {
    int bb = x.b_ * y.b_;
    return {x.a_ * y.a_ - bb, x.a_ * y.b_ + x.b_ * y.a_ - bb};
  }
  friend constexpr bool operator==(GF25 x, GF25 y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  std::string str() const { return std::to_string(a_) + "+" + std::to_string(b_) + "W"; }

 private:
  int a_ = 0;
  int b_ = 0;
};

template <class R>
constexpr R ring_pow(R base, unsigned e, R one) {
  R out = one;
  while (e) {
    if (e & 1U) out = out * base;
    base = base * base;
    e >>= 1U;
  }
  return out;
}

}  // namespace tafd
