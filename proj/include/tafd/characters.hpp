#pragma once

// The characters sigma_2, sigma_3, sigma_5 on the norm-one units of the order,
// read off from the reductions
//   Lambda -> M2(F2):  omega -> [[0,1],[1,1]], y -> [[0,1],[1,0]]
//   Lambda -> F9:      omega -> 1, y -> Y (a square root of -1)
//   Lambda -> F25:     omega -> W (a third root of unity), y -> 0
// An element e0 + e1 omega + e2 y + e3 omega y maps to e0 + e1 W + e2 Y + e3 W Y.

#include "tafd/finite_ring.hpp"
#include "tafd/quaternion.hpp"
#include "tafd/report.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <variant>

namespace tafd {

namespace detail {

inline int int_mod(const Integer& a, int p) {
  Integer r = a % p;
  if (r < 0) r += p;
  return static_cast<int>(r);
}

inline OrderElement order_coordinates(const QuatElement& g) {
  auto c = lambda_coordinates(g);
  if (std::holds_alternative<NotInOrder>(c))
    throw ArithmeticError("element outside the order: " + g.str());
  return std::get<OrderElement>(c);
}

template <class R>
struct RingImage {
  R one, omega, y;
  R operator()(const OrderElement& x, int p) const {
    auto sc = [&](const Integer& n) {
      R out{};
      for (int k = 0; k < int_mod(n, p); ++k) out = out + one;
      return out;
    };
    return sc(x.e[0]) * one + sc(x.e[1]) * omega + sc(x.e[2]) * y + sc(x.e[3]) * (omega * y);
  }
  bool relations_hold(int p) const {
    R five{};
    for (int k = 0; k < 5 % p; ++k) five = five + one;
    return omega * omega + omega + one == R{} && y * omega == omega * omega * y && y * y == five;
  }
};

inline RingImage<M2F2> mod2_image() { return {M2F2::identity(), {0, 1, 1, 1}, {0, 1, 1, 0}}; }
inline RingImage<GF9> mod3_image() { return {{1, 0}, {1, 0}, GF9::Y()}; }
inline RingImage<GF25> mod5_image() { return {{1, 0}, GF25::W(), {0, 0}}; }

}  // namespace detail

inline M2F2 reduce_mod2(const QuatElement& g) { return detail::mod2_image()(detail::order_coordinates(g), 2); }
inline GF9 reduce_mod3(const QuatElement& g) { return detail::mod3_image()(detail::order_coordinates(g), 3); }
inline GF25 reduce_mod5(const QuatElement& g) { return detail::mod5_image()(detail::order_coordinates(g), 5); }

/// The relations omega^2 + omega + 1 = 0, y omega = omega^2 y, y^2 = 5 in each target.
inline Report verify_character_ring_maps() {
  Report r("reduction maps");
  r.add("M2(F2)", "omega^2 + omega + 1 = 0, y omega = omega^2 y, y^2 = 5", detail::mod2_image().relations_hold(2));
  r.add("F9", "omega^2 + omega + 1 = 0, y omega = omega^2 y, y^2 = 5", detail::mod3_image().relations_hold(3));
  r.add("F25", "omega^2 + omega + 1 = 0, y omega = omega^2 y, y^2 = 5", detail::mod5_image().relations_hold(5));
  return r;
}

/// sigma_p(g) in {0, 1} for g of reduced norm 1 and p in {2, 3, 5}.
inline int sigma_character(const QuatElement& g, int p) {
  static const bool ring_maps_ok = verify_character_ring_maps().all_passed();
  if (!ring_maps_ok) throw ArithmeticError("reduction map relations fail");
  if (g.reduced_norm() != 1) throw ArithmeticError("sigma_character needs reduced norm 1: " + g.str());
  switch (p) {
    case 2: return reduce_mod2(g).permutation_parity();
    case 3: {
      GF9 z = reduce_mod3(g);
      return z * z == GF9(1, 0) ? 0 : 1;
    }
    case 5: {
      GF25 z = reduce_mod5(g);
      return ring_pow(z, 3, GF25(1, 0)) == GF25(-1, 0) ? 1 : 0;
    }
    default: throw std::invalid_argument("sigma_character: p must be 2, 3 or 5");
  }
}

struct CharacterRow {
  std::string label;
  QuatElement g;
  std::array<int, 3> sigma;  // (sigma_2, sigma_3, sigma_5)
};

inline std::vector<CharacterRow> character_table() {
  std::vector<CharacterRow> rows;
  for (auto [label, g] : {std::pair{"h", named::h()}, {"gamma", named::gamma()}, {"-1", QuatElement(-1)}})
    rows.push_back({label, g, {sigma_character(g, 2), sigma_character(g, 3), sigma_character(g, 5)}});
  return rows;
}

inline Report verify_characters() {
  Report r = verify_character_ring_maps();
  const std::array<std::array<int, 3>, 3> expected{{{1, 0, 1}, {0, 1, 1}, {0, 0, 1}}};
  auto rows = character_table();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& s = rows[k].sigma;
    r.add("sigma(" + rows[k].label + ")", "(sigma2, sigma3, sigma5)", s == expected[k],
          "(" + std::to_string(s[0]) + ", " + std::to_string(s[1]) + ", " + std::to_string(s[2]) + ")");
  }
  const int s35 = (sigma_character(QuatElement(-1), 3) + sigma_character(QuatElement(-1), 5)) % 2;
  r.add("character of a1 at -1", "sigma3 sigma5 (-1) is nontrivial, so -1 negates weight-one forms", s35 == 1);
  return r;
}

}  // namespace tafd
