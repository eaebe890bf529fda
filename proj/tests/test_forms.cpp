#include "tafd/characters.hpp"
#include "tafd/forms.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tafd;

namespace {

// Oracle for reduce: a6^n = alpha_n a6 + beta_n with
// alpha_{n+1} = beta_n - G alpha_n, beta_{n+1} = -c alpha_n, c = G^2 - (5/9) a1^6 G,
// carried out in the generic polynomial class.
Polynomial P(int i, int j, int e, Rational c = 1) { return Polynomial::monomial({i, j, e}, c); }

Polynomial oracle_reduce(const Polynomial& p) {
  const Polynomial G = P(6, 0, 0) + P(3, 1, 0) + P(0, 2, 0);
  const Polynomial c = G * G - Rational(5, 9) * P(6, 0, 0) * G;
  Polynomial out(3);
  for (const auto& [e, coef] : p.terms()) {
    Polynomial alpha(3), beta(3, 1);
    for (int n = 0; n < e[2]; ++n) {
      Polynomial a2 = beta - G * alpha;
      beta = -(c * alpha);
      alpha = a2;
    }
    Polynomial rest = P(e[0], e[1], 0, coef);
    out += rest * (alpha * P(0, 0, 1) + beta);
  }
  return out;
}

Polynomial to_generic(const AutomorphicPoly& p) {
  Polynomial out(3);
  for (const auto& [m, c] : p.terms()) out += P(m.i, m.j, m.e, c);
  return out;
}

AutomorphicPoly random_poly(std::mt19937& rng, int max_e) {
  std::uniform_int_distribution<int> exp(0, 4), e6(0, max_e), coef(-5, 5), nterms(1, 4);
  AutomorphicPoly p;
  for (int k = nterms(rng); k > 0; --k)
    p += AutomorphicPoly::monomial({exp(rng), exp(rng), e6(rng)}, Rational(coef(rng), 1 + 2 * exp(rng)));
  return p;
}

int stars_and_bars(int t) {
  int n = 0;
  for (int e = 0; e <= 1; ++e)
    for (int j = 0; 3 * j + 6 * e <= t; ++j) ++n;
  return n;
}

int count_ab(int w) { return w < 0 ? 0 : w / 3 + 1; }  // #{i + 3j = w}

}  // namespace

TEST(IntLinAlg, SmithNormalFormKnownExample) {
  IntMatrix A(3, 3);
  const int v[3][3] = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) A(r, c) = v[r][c];
  SmithForm s = smith_normal_form(A);
  EXPECT_EQ(s.diagonal, (std::vector<Integer>{2, 6, 12}));
}

TEST(IntLinAlg, KernelIsSaturated) {
  IntMatrix A(1, 3);
  A(0, 0) = 2;
  A(0, 1) = 4;
  A(0, 2) = 6;
  IntMatrix K = integer_kernel(A);
  ASSERT_EQ(K.cols(), 2U);
  EXPECT_TRUE((A * K).is_zero());
  SmithForm s = smith_normal_form(K);
  EXPECT_EQ(s.diagonal, (std::vector<Integer>{1, 1}));
}

TEST(IntLinAlg, KernelModImage) {
  // sigma = -1 on Z: H^odd = ker(1 + sigma)/im(1 - sigma) = Z/2.
  IntMatrix plus(1, 1), minus(1, 1);
  minus(0, 0) = 2;
  Subquotient q = kernel_mod_image(plus, minus);
  EXPECT_EQ(q.free_rank, 0U);
  EXPECT_EQ(q.torsion, (std::vector<Integer>{2}));
}

TEST(IntLinAlg, RankModTwo) {
  IntMatrix A(2, 2);
  A(0, 0) = 2;
  A(1, 1) = 3;
  EXPECT_EQ(rank_over_q(A), 2U);
  EXPECT_EQ(rank_mod2(A), 1U);
}

TEST(FiniteRings, GroupOrders) {
  int order9 = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      GF9 z(a, b);
      if (z == GF9(0, 0)) continue;
      EXPECT_EQ(ring_pow(z, 8, GF9(1, 0)), GF9(1, 0));
      ++order9;
    }
  EXPECT_EQ(order9, 8);
  EXPECT_EQ(ring_pow(GF25::W(), 3, GF25(1, 0)), GF25(1, 0));
  EXPECT_EQ(GF9::Y() * GF9::Y(), GF9(-1, 0));
  M2F2 swap(0, 1, 1, 0), rot(0, 1, 1, 1);
  EXPECT_EQ(swap.permutation_parity(), 1);
  EXPECT_EQ(rot.permutation_parity(), 0);
  EXPECT_EQ(rot * rot * rot, M2F2::identity());
}

TEST(Reduce, A6Squared) {
  const AutomorphicPoly a6 = AutomorphicPoly::a6(), G = forms::G();
  AutomorphicPoly expected = -(a6 * G) - G * G + (AutomorphicPoly::a1(6) * G).scaled(Rational(5, 9));
  EXPECT_EQ(reduce(multiply_unreduced(a6, a6)), expected);
  EXPECT_TRUE(reduce(forms::f()).is_zero());
  EXPECT_EQ(reduce(multiply_unreduced(multiply_unreduced(a6, a6), a6)),
            reduce(multiply_unreduced(reduce(multiply_unreduced(a6, a6)), a6)));
}

TEST(Reduce, AgreesWithRecurrenceOracle) {
  std::mt19937 rng(7);
  for (int k = 0; k < 40; ++k) {
    AutomorphicPoly p = random_poly(rng, 5);
    EXPECT_EQ(to_generic(reduce(p)), oracle_reduce(to_generic(p))) << p.str();
  }
}

TEST(Reduce, IdempotentRingSection) {
  std::mt19937 rng(11);
  for (int k = 0; k < 30; ++k) {
    AutomorphicPoly p = random_poly(rng, 3), q = random_poly(rng, 3);
    EXPECT_EQ(reduce(reduce(p)), reduce(p));
    EXPECT_LE(reduce(p).a6_degree(), 1);
    EXPECT_EQ(reduce(multiply_unreduced(p, q)), reduce(multiply_unreduced(reduce(p), reduce(q))));
    EXPECT_TRUE(reduce(p).is_two_local());
  }
}

TEST(Forms, FDerivation) {
  Report r = verify_f_derivation();
  EXPECT_TRUE(r.all_passed()) << r.text();
}

TEST(Involutions, Examples) {
  const AutomorphicPoly a6 = AutomorphicPoly::a6(), G = forms::G();
  EXPECT_EQ(w15_involution(a6), -a6 - G);
  EXPECT_EQ(w15_involution(w15_involution(a6)), a6);
  EXPECT_EQ(deck_involution(AutomorphicPoly::monomial({1, 1, 0})), AutomorphicPoly::monomial({1, 1, 0}));
  EXPECT_EQ(deck_involution(AutomorphicPoly::a1()), -AutomorphicPoly::a1());
  // Both roots of f: sum -G, product G^2 - (5/9) a1^6 G.
  AutomorphicPoly other = w15_involution(a6);
  EXPECT_EQ(a6 + other, -G);
  EXPECT_EQ(a6 * other, G * G - (AutomorphicPoly::a1(6) * G).scaled(Rational(5, 9)));
  EXPECT_TRUE(reduce(w15_involution(forms::f())).is_zero());
  EXPECT_TRUE(reduce(deck_involution(forms::f())).is_zero());
  // 2 a6 + G is anti-invariant.
  AutomorphicPoly v = a6.scaled(2) + G;
  EXPECT_EQ(w15_involution(v), -v);
}

TEST(Involutions, RingMapsThatCommute) {
  std::mt19937 rng(3);
  for (int k = 0; k < 25; ++k) {
    AutomorphicPoly p = reduce(random_poly(rng, 1)), q = reduce(random_poly(rng, 1));
    for (Involution a : {Involution::deck, Involution::w15}) {
      EXPECT_EQ(apply_involution(a, apply_involution(a, p)), p);
      EXPECT_EQ(apply_involution(a, p * q), apply_involution(a, p) * apply_involution(a, q));
    }
    EXPECT_EQ(deck_involution(w15_involution(p)), w15_involution(deck_involution(p)));
  }
}

TEST(WeightSlice, DimensionsAndTrace) {
  for (int t = 0; t <= 40; ++t) EXPECT_EQ(WeightSlice(t).dimension(), static_cast<std::size_t>(stars_and_bars(t)));
  EXPECT_EQ(w15_trace(2), 1);
  EXPECT_EQ(w15_trace(4), 2);
  EXPECT_EQ(w15_trace(6), 2);
  for (int t = 2; t <= 40; t += 2) EXPECT_EQ(w15_trace(t), count_ab(t) - count_ab(t - 6));
  EXPECT_THROW(w15_trace(3), std::invalid_argument);
  EXPECT_THROW(w15_trace(0), std::invalid_argument);
}

TEST(GroupCohomology, Examples) {
  CohomologyGroup h = group_cohomology(Involution::deck, 0, 6);
  EXPECT_EQ(h.free_rank, 4U);
  EXPECT_TRUE(h.torsion_generators.empty());

  h = group_cohomology(Involution::deck, 1, 1);
  ASSERT_EQ(h.torsion_generators.size(), 1U);
  EXPECT_EQ(h.torsion_generators[0].first, "a1");
  EXPECT_EQ(h.torsion_generators[0].second, 2);

  h = group_cohomology(Involution::w15, 2, 0);
  EXPECT_EQ(h.free_rank, 0U);
  ASSERT_EQ(h.torsion_generators.size(), 1U);
  EXPECT_EQ(h.torsion_generators[0].first, "1");
}

TEST(GroupCohomology, DeckMatchesMonomialCount) {
  for (int t = 0; t <= 30; ++t)
    for (int s = 1; s <= 4; ++s) {
      CohomologyGroup h = group_cohomology(Involution::deck, s, t);
      std::size_t expected = 0;
      const WeightSlice slice(t);
      for (const auto& m : slice.basis()) expected += (m.i + m.j - s) % 2 == 0 ? 1 : 0;
      EXPECT_EQ(h.free_rank, 0U);
      EXPECT_EQ(h.f2_dimension(), expected) << s << "," << t;
      for (const auto& g : h.torsion_generators) EXPECT_EQ(g.second, 2);
    }
}

TEST(GroupCohomology, W15MatchesTauPresentation) {
  // Z2[a1, a3, tau]/(2 tau, G tau): free Z2[a1, a3] at s = 0, nothing in odd s,
  // F2[a1, a3]_t / G F2[a1, a3]_{t-6} in even s > 0.
  for (int t = 0; t <= 30; ++t) {
    EXPECT_EQ(group_cohomology(Involution::w15, 0, t).free_rank, static_cast<std::size_t>(count_ab(t)));
    for (int s = 1; s <= 4; ++s) {
      CohomologyGroup h = group_cohomology(Involution::w15, s, t);
      std::size_t expected = s % 2 ? 0 : static_cast<std::size_t>(count_ab(t) - count_ab(t - 6));
      EXPECT_EQ(h.f2_dimension(), expected) << s << "," << t;
      EXPECT_EQ(h.free_rank, 0U);
    }
  }
  EXPECT_EQ(group_cohomology(Involution::w15, 2, 6).f2_dimension(), 2U);
}

TEST(MayerVietoris, Examples) {
  H1Basis h = h1_mayer_vietoris(2);
  ASSERT_EQ(h.basis.size(), 1U);
  EXPECT_EQ(h.basis[0], (FormMonomial{-1, -1, 1}));
  EXPECT_TRUE(h.stable);
  EXPECT_TRUE(h1_mayer_vietoris(3).basis.empty());
  for (int t = -20; t <= 20; ++t) {
    std::size_t expected = 0;
    for (int e = 0; e <= 1; ++e)
      for (int j = -1; j >= -40; --j) {
        int i = t - 6 * e - 3 * j;
        if (i <= -1) ++expected;
      }
    H1Basis b = h1_mayer_vietoris(t);
    EXPECT_EQ(b.basis.size(), expected) << t;
    EXPECT_TRUE(b.stable && b.torsion_free);
    std::size_t dual = 2 - t >= 0 ? WeightSlice(2 - t).dimension() : 0;
    EXPECT_EQ(b.basis.size(), dual) << t;
  }
}

TEST(MayerVietoris, SmallWindowIsFlaggedUnstable) { EXPECT_FALSE(h1_mayer_vietoris(-20, 3).stable); }

TEST(SerreDuality, SmallWeightsArePermutations) {
  for (int t : {-3, 0, 1, 2, 3, 4, 5}) {
    Report r = serre_duality_check(t);
    EXPECT_TRUE(r.all_passed()) << r.text();
  }
}

TEST(SerreDuality, A6RowIsUnitriangularFromWeightSix) {
  EXPECT_TRUE(serre_duality_check(7).find("dual monomials")->passed);
  // <a6, a1^-7 a3^-1 a6> picks up -1 from a6^2 = -a6 G + ...
  SerrePairing p = serre_pairing(6, 20);
  auto row = std::find(p.h0.begin(), p.h0.end(), FormMonomial{0, 0, 1}) - p.h0.begin();
  auto col = std::find(p.h1.begin(), p.h1.end(), FormMonomial{-7, -1, 1}) - p.h1.begin();
  EXPECT_EQ(p.matrix(row, col), -1);
  Report r = serre_duality_check(6);
  EXPECT_TRUE(r.find("perfect")->passed);
  EXPECT_TRUE(r.find("dual monomials")->passed);
  EXPECT_FALSE(r.find("permutation")->passed);
  for (int t = -20; t <= 20; ++t) EXPECT_TRUE(serre_duality_check(t).find("perfect")->passed) << t;
}

TEST(StackCohomology, Examples) {
  CohomologyGroup h = stack_cohomology(0, 2);
  EXPECT_EQ(h.free_rank, 1U);
  EXPECT_EQ(h.free_generators.at(0), "a1^2");
  h = stack_cohomology(1, 1);
  EXPECT_EQ(h.free_rank, 0U);
  ASSERT_EQ(h.torsion_generators.size(), 1U);
  EXPECT_EQ(h.torsion_generators[0].first, "z a1");
  // At (1, 2) the zeta-part vanishes; the H^1(Y) class D remains.
  h = stack_cohomology(1, 2);
  EXPECT_TRUE(h.torsion_generators.empty());
  EXPECT_EQ(h.free_rank, 1U);
}

TEST(StackCohomology, TwoComputationsAgree) {
  for (int s = 0; s <= 5; ++s)
    for (int t = -8; t <= 20; ++t) EXPECT_NO_THROW(stack_cohomology(s, t)) << s << "," << t;
}

TEST(Characters, TableAndRingMaps) {
  Report r = verify_characters();
  EXPECT_TRUE(r.all_passed()) << r.text();
  EXPECT_EQ(reduce_mod2(named::h()), M2F2(0, 1, 1, 0));
  EXPECT_EQ(reduce_mod2(named::gamma()), M2F2(1, 1, 1, 0));
  EXPECT_EQ(reduce_mod3(named::h()), GF9(1, 0));
  EXPECT_EQ(reduce_mod3(named::gamma()), GF9::Y());
  EXPECT_EQ(reduce_mod5(named::h()), GF25(-1, 0));
  EXPECT_EQ(reduce_mod5(named::gamma()), GF25(-1, 0));
  EXPECT_THROW(sigma_character(named::w5(), 2), ArithmeticError);
}

TEST(Characters, Homomorphisms) {
  const std::vector<QuatElement> gens{named::omega(), named::h(), named::gamma(), QuatElement(9, 0, 4, 0),
                                      QuatElement(-1)};
  for (const auto& g : gens) ASSERT_EQ(g.reduced_norm(), 1) << g.str();
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1), len(1, 5);
  auto word = [&] {
    QuatElement w(1);
    for (std::size_t k = len(rng); k > 0; --k) w = w * gens[pick(rng)];
    return w;
  };
  for (int k = 0; k < 40; ++k) {
    QuatElement g = word(), h = word();
    for (int p : {2, 3, 5})
      EXPECT_EQ(sigma_character(g * h, p), (sigma_character(g, p) + sigma_character(h, p)) % 2) << p;
  }
}
