#include "tafd/specseq.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tafd;

namespace {

// d3 through the product rule on a greedy factorization, built one generator at a time.
std::map<SSMonomial, int> leibniz_oracle(SSMonomial m) {
  struct Gen {
    SSMonomial g;
    std::optional<SSMonomial> d;
  };
  const std::vector<Gen> table{{ss(0, 0, 0, 1), ss(3, 1, 0, 1)}, {ss(1, 1, 0), std::nullopt},
                               {ss(1, 0, 1), ss(4, 1, 1)},      {ss(2, 0, 0), ss(5, 1, 0)},
                               {ss(0, 1, 1), std::nullopt},     {ss(0, 2, 0), ss(3, 3, 0)},
                               {ss(0, 0, 2), ss(3, 1, 2)}};
  auto divides = [](const SSMonomial& g, const SSMonomial& x) {
    return g.k <= x.k && g.i <= x.i && g.j <= x.j && g.e <= x.e;
  };
  // x = product so far, dx = its d3 as a mod-2 sum
  SSMonomial x = ss(0, 0, 0);
  std::map<SSMonomial, int> dx;
  while (!(m == ss(0, 0, 0))) {
    bool found = false;
    for (const auto& [g, d] : table) {
      if (!divides(g, m)) continue;
      SSMonomial rest{m.k - g.k, m.i - g.i, m.j - g.j, m.e - g.e, 0, 0};
      if ((rest.i + rest.j - rest.k) % 2) continue;
      std::map<SSMonomial, int> next;
      for (const auto& [t, c] : dx) next[t * g] ^= c;
      if (d) next[x * *d] ^= 1;
      dx = next;
      x = x * g;
      m = rest;
      found = true;
      break;
    }
    if (!found) ADD_FAILURE() << "no generator divides " << m.str();
    if (!found) break;
  }
  std::map<SSMonomial, int> out;
  for (const auto& [t, c] : dx)
    if (c) out[t] = 1;
  return out;
}

// d7 on E7 classes z^k a3^l a6^e (i = 0): write the class as nu^l z^{k - 3l} (times z^2 a6) formally,
// with d7(z^4) = nu z^8, d7(nu) = 0 and d7(z^2 a6) = nu z^4 z^2 a6.
bool d7_oracle_nonzero(const SSMonomial& m) {
  int k = m.k, parity = 0;
  if (m.e) {
    k -= 2;
    parity ^= 1;
  }
  const int zeta_power = k - 3 * m.j;
  EXPECT_EQ(floor_mod(zeta_power, 4), 0) << m.str();
  parity ^= floor_mod(zeta_power / 4, 2);
  return parity == 1;
}

std::size_t count_monomials(int s, int stem) {
  std::size_t n = 0;
  const int t = stem + s;
  if (t % 2) return 0;
  for (int e = 0; e <= 1; ++e)
    for (int j = 0; 6 * j <= t; ++j)
      for (int i = 0; 2 * (i + 3 * j + 6 * e) <= t; ++i)
        if (2 * (i + 3 * j + 6 * e) == t && (i + j - s) % 2 == 0) ++n;
  return n;
}

std::vector<std::string> labels(const SpectralSequence& e, int s, int stem) {
  std::vector<std::string> out;
  for (const auto& c : e.classes(s, stem)) out.push_back((c.coefficient == 2 ? "2 " : "") + c.label);
  return out;
}

const SpectralSequence& plain() {
  static const SpectralSequence e = compute_Einfty({-16, 64, 40});
  return e;
}

}  // namespace

TEST(Z2LatticeTest, ContainsAndEquality) {
  Z2Lattice a(2), b(2);
  a.add({Rational(2), Rational(0)});
  a.add({Rational(0), Rational(2)});
  a.add({Rational(1), Rational(1)});
  b.add({Rational(1), Rational(1)});
  b.add({Rational(2), Rational(0)});
  EXPECT_TRUE(a == b);
  EXPECT_EQ(a.index_exponent(), 1);
  EXPECT_TRUE(a.contains({Rational(3), Rational(1)}));
  EXPECT_FALSE(a.contains({Rational(1), Rational(0)}));
  EXPECT_TRUE(a.contains({Rational(1, 3), Rational(1, 3)}));
  Z2Lattice c(2);
  c.add({Rational(1), Rational(0)});
  EXPECT_FALSE(c == a);
  EXPECT_THROW(c.add({Rational(1, 2), Rational(0)}), ArithmeticError);
}

TEST(E2, MonomialCountsMatchEnumeration) {
  DeckModel m;
  for (int s = 0; s <= 12; ++s)
    for (int n = -12; n <= 40; ++n) EXPECT_EQ(m.basis(s, n).size(), count_monomials(s, n)) << s << " " << n;
}

TEST(E2, Examples) {
  DeckModel m;
  EXPECT_EQ(m.basis(1, 1), (std::vector<SSMonomial>{ss(1, 1, 0)}));
  auto b = m.basis(3, 3);
  EXPECT_EQ(b.size(), 2u);
  EXPECT_NE(std::find(b.begin(), b.end(), ss(3, 0, 1)), b.end());
  EXPECT_NE(std::find(b.begin(), b.end(), ss(3, 3, 0)), b.end());
  EXPECT_EQ(m.basis(2, -2), (std::vector<SSMonomial>{ss(2, 0, 0)}));
  EXPECT_TRUE(m.basis(1, 0).empty());
}

TEST(E2, CrossCheckAgainstGroupCohomology) {
  Report r = verify_E2({-16, 64, 40});
  EXPECT_TRUE(r.all_passed()) << r.text();
}

TEST(D3, ExamplesAndGenerators) {
  EXPECT_FALSE(d3(ss(0, 4, 0)));
  EXPECT_EQ(d3(ss(8, 3, 1)), ss(11, 4, 1));
  EXPECT_EQ(d3(ss(4, 0, 0, 1)), ss(7, 1, 0, 1));
  EXPECT_EQ(d3(ss(2, 0, 0)), ss(5, 1, 0));
  EXPECT_EQ(d3(ss(0, 2, 0)), ss(3, 3, 0));
  EXPECT_EQ(d3(ss(0, 0, 2)), ss(3, 1, 2));
  EXPECT_FALSE(d3(ss(0, 1, 1)));
  EXPECT_FALSE(d3(ss(1, 1, 0)));
  EXPECT_EQ(d3(ss(1, 0, 1)), ss(4, 1, 1));
  EXPECT_EQ(d3(ss(0, 0, 0, 1)), ss(3, 1, 0, 1));
  // d3(z^{4k+2}) = eta z^{4k+4}
  for (int k = 0; k < 5; ++k) EXPECT_EQ(d3(ss(4 * k + 2, 0, 0)), gens::eta() * gens::zeta(4 * k + 4));
}

TEST(D3, ClosedFormMatchesProductRule) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> small(0, 9);
  for (int trial = 0; trial < 400; ++trial) {
    SSMonomial m = ss(small(rng), small(rng), small(rng), small(rng) % 2);
    if ((m.i + m.j - m.k) % 2) m.k += 1;
    std::map<SSMonomial, int> expected;
    if (auto d = d3(m)) expected[*d] = 1;
    EXPECT_EQ(leibniz_oracle(m), expected) << m.str();
  }
}

TEST(D3, WellDefinedOnEveryFactorization) {
  std::size_t multi = 0;
  for (int k = 0; k <= 8; ++k)
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; j <= 8; ++j)
        for (int e = 0; e <= 1; ++e) {
          if ((i + j - k) % 2) continue;
          SSMonomial m = ss(k, i, j, e);
          auto fs = factorizations(m);
          ASSERT_FALSE(fs.empty()) << m.str();
          if (fs.size() > 1) ++multi;
          for (const auto& f : fs) {
            std::set<SSMonomial> want;
            if (auto d = d3(m)) want.insert(*d);
            EXPECT_EQ(d3_leibniz(m, f), want) << m.str();
          }
        }
  EXPECT_GT(multi, 100u);
}

TEST(D7, Examples) {
  EXPECT_EQ(d7(gens::zeta(4)), ss(11, 0, 1));
  EXPECT_EQ(d7(ss(2, 0, 0, 1)), ss(9, 0, 1, 1));
  EXPECT_FALSE(d7(gens::zeta(8)));
  EXPECT_FALSE(d7(gens::nu()));
  EXPECT_FALSE(d7(ss(6, 0, 0, 1)));
  EXPECT_EQ(d7(ss(0, 0, 4)), ss(7, 0, 5));
}

TEST(D7, ClosedFormMatchesLeibnizOracle) {
  const auto& e = plain();
  const auto& page = e.page(4);
  std::size_t checked = 0;
  for (const auto& [key, bc] : page) {
    if (key.first > 30) continue;
    const auto* c = e.cell(key.first, key.second);
    for (const auto& z : bc.second.rows()) {
      if (z.count() != 1) continue;
      const SSMonomial m = c->basis[z.find_first()];
      if (m.i != 0 || e.tainted(m)) continue;
      ++checked;
      EXPECT_EQ(d7(m).has_value(), d7_oracle_nonzero(m)) << m.str();
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(Pages, SparsityAndSquareZero) {
  DeckModel m;
  for (int s = 0; s <= 20; ++s)
    for (int n = -10; n <= 40; ++n) {
      if (floor_mod(n + s, 2)) {
        EXPECT_TRUE(m.basis(s, n).empty()) << s << " " << n;
      }
    }
  for (auto v : {Variant::plain, Variant::no_a6, Variant::loc_a1, Variant::loc_a3, Variant::loc_a1a3})
    EXPECT_NO_THROW(compute_Einfty({-8, 24, 16}, v, 8)) << to_string(v);
}

namespace {

// z^k with d(z^k) = z^{k+3} for every k: d o d != 0.
class BrokenModel : public SSModel {
 public:
  std::string name() const override { return "broken"; }
  int stem(const SSMonomial& m) const override { return -m.k; }
  std::vector<int> pages() const override { return {3}; }
  bool in_universe(const SSMonomial& m) const override { return m.k >= 0 && !m.i && !m.j && !m.e; }
  std::vector<SSMonomial> basis(int s, int stem) const override {
    if (s >= 0 && stem == -s) return {ss(s, 0, 0)};
    return {};
  }
  std::optional<SSMonomial> differential(int, const SSMonomial& m) const override { return ss(m.k + 3, 0, 0); }
  std::optional<SSMonomial> preimage(int, const SSMonomial& m) const override {
    if (m.k >= 3) return ss(m.k - 3, 0, 0);
    return std::nullopt;
  }
};

}  // namespace

TEST(Pages, SquareNonzeroIsAnError) {
  // stems of consecutive classes differ by 3, so shift them to match d_r: (s, n) -> (s + 3, n - 1)
  class Shifted : public BrokenModel {
    int stem(const SSMonomial& m) const override { return -m.k / 3; }
    std::vector<SSMonomial> basis(int s, int stem) const override {
      if (s >= 0 && s % 3 == 0 && stem == -s / 3) return {ss(s, 0, 0)};
      return {};
    }
  };
  SpectralSequence e(std::make_shared<Shifted>(), {-8, 0, 12});
  EXPECT_ANY_THROW(e.step(3));
}

TEST(Pages, E4ZeroLineExamples) {
  SpectralSequence e = build_E2({-4, 40, 20});
  e.step(3);
  EXPECT_EQ(labels(e, 0, 8), (std::vector<std::string>{"z^0 a1^1 a3^1 a6^0", "z^0 a1^4 a3^0 a6^0"}));
  EXPECT_EQ(labels(e, 0, 4), (std::vector<std::string>{"2 z^0 a1^2 a3^0 a6^0"}));
  auto twelve = labels(e, 0, 12);
  EXPECT_EQ(twelve.size(), 4u);
  EXPECT_NE(std::find(twelve.begin(), twelve.end(), "2 z^0 a1^0 a3^0 a6^1"), twelve.end());
  EXPECT_NE(std::find(twelve.begin(), twelve.end(), "2 z^0 a1^0 a3^2 a6^0"), twelve.end());
  auto tf = labels(e, 0, 24);
  EXPECT_NE(std::find(tf.begin(), tf.end(), "z^0 a1^0 a3^4 a6^0"), tf.end());
  EXPECT_NE(std::find(tf.begin(), tf.end(), "z^0 a1^0 a3^2 a6^1"), tf.end());
  // 1- and 2-line residue contains z^2 a3^2, z a3^3, eta z a3^3, z a3 a6, z^2 a6, eta z a3 a6
  for (const auto& m : {ss(2, 0, 2), ss(1, 0, 3), ss(2, 1, 3), ss(1, 0, 1, 1), ss(2, 0, 0, 1), ss(2, 1, 1, 1)}) {
    auto z = vanishes(e, m);
    ASSERT_TRUE(z.has_value()) << m.str();
    EXPECT_FALSE(*z) << m.str();
  }
}

TEST(Pages, DifferentialLedger) {
  Report r = verify_differentials({-16, 64, 40});
  EXPECT_TRUE(r.all_passed()) << r.text();
}

TEST(Einfty, LowStems) {
  const auto& e = plain();
  EXPECT_EQ(labels(e, 0, 0), (std::vector<std::string>{"z^0 a1^0 a3^0 a6^0"}));
  for (int s = 1; s <= 40; ++s) EXPECT_EQ(e.dimension(s, 0), 0u) << s;
  EXPECT_EQ(labels(e, 8, -8), (std::vector<std::string>{"z^8 a1^0 a3^0 a6^0"}));
  EXPECT_EQ(labels(e, 16, -16), (std::vector<std::string>{"z^16 a1^0 a3^0 a6^0"}));
  std::size_t stem1 = 0, stem3 = 0;
  for (int s = 0; s <= 40; ++s) {
    stem1 += e.dimension(s, 1);
    stem3 += e.dimension(s, 3);
  }
  EXPECT_EQ(stem1, 1u);
  EXPECT_EQ(labels(e, 1, 1), (std::vector<std::string>{"z^1 a1^1 a3^0 a6^0"}));
  EXPECT_EQ(stem3, 1u);
  EXPECT_EQ(labels(e, 3, 3), (std::vector<std::string>{"z^3 a1^0 a3^1 a6^0"}));
  auto six = labels(e, 6, 6);
  EXPECT_EQ(six, (std::vector<std::string>{"z^6 a1^0 a3^0 a6^1", "z^6 a1^0 a3^2 a6^0"}));
  EXPECT_EQ(make_chart(e, "plain").inconclusive(), 0u);
}

TEST(Einfty, EdgeClassesAreFlagged) {
  SpectralSequence e = compute_Einfty({0, 20, 6}, Variant::plain);
  SSWindow tight{0, 20, 6, 0, 0};
  SpectralSequence t(std::make_shared<DeckModel>(), tight);
  t.run();
  EXPECT_GT(make_chart(t, "plain").inconclusive(), 0u);
  EXPECT_EQ(make_chart(e, "plain").inconclusive(), 0u);
}

TEST(RKTheorem, MatchesAwayFromTheTwoGaps) {
  Report r = verify_RK_theorem({0, 48, 40});
  for (const auto& c : r.claims()) {
    if (c.name == "stem 6" || c.name == "stem 42") {
      EXPECT_FALSE(c.passed) << c.name;
      continue;
    }
    EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
  }
  EXPECT_NE(r.find("stem 6")->detail.find("z^6 a1^0 a3^0 a6^1"), std::string::npos);
  EXPECT_NE(r.find("stem 42")->detail.find("z^2 a1^1 a3^7 a6^0"), std::string::npos);
  EXPECT_NE(r.find("stem 42")->detail.find("z^2 a1^1 a3^5 a6^1"), std::string::npos);
}

TEST(RKTheorem, PullbackSubringMod2) {
  F2Subring S(pullback_subring_generators());
  EXPECT_EQ(S.basis(0).size(), 1u);
  EXPECT_EQ(S.basis(2).size(), 0u);
  EXPECT_EQ(S.basis(4).size(), 2u);  // a1^4, a1 a3
  EXPECT_EQ(S.basis(6).size(), 0u);
  // weight 8: a1^8, a1^5 a3, a1^2 a3^2, a1^2 a6
  EXPECT_EQ(S.basis(8).size(), 4u);
}

TEST(Localization, InvertingA1) {
  Report r = localize({-16, 40, 24}, Variant::loc_a1);
  EXPECT_TRUE(r.all_passed()) << r.text();
  Report s = localize({-16, 40, 24}, Variant::loc_a1a3);
  EXPECT_TRUE(s.all_passed()) << s.text();
}

TEST(Localization, InvertingA3) {
  Report r = localize({-16, 48, 24}, Variant::loc_a3);
  EXPECT_TRUE(r.find("z^{8k}, z^{8k+6} a6 destroyed")->passed);
  EXPECT_TRUE(r.find("free on {1, y}")->passed);
  const Claim* c = r.find("localized E-infinity");
  EXPECT_FALSE(c->passed);
  EXPECT_NE(c->detail.find("z^2 a1^1 a3^-1 a6^0"), std::string::npos);
  // the extra classes are exactly eta z a3^{8m+7} and their y-multiples
  auto pos = c->detail.find("unexpected: ");
  ASSERT_NE(pos, std::string::npos);
  std::string rest = c->detail.substr(pos);
  for (const char* name : {"z^2 a1^1 a3^-3 a6^1", "z^2 a1^1 a3^5 a6^1", "z^2 a1^1 a3^7 a6^0"})
    EXPECT_NE(rest.find(name), std::string::npos) << name;
}

TEST(W15, Degeneration) {
  Report r = w15_page(24);
  EXPECT_TRUE(r.all_passed()) << r.text();
  EXPECT_EQ(group_cohomology(Involution::w15, 2, 0).f2_dimension(), 1u);
}

TEST(TauIdeal, TwoCopiesOfKO) {
  ChartReport chart;
  Report r = tau_ideal_ss({-8, 40, 12}, &chart);
  EXPECT_TRUE(r.all_passed()) << r.text();
  // stem 2: rank-2 lattice; stem 3: two F2 classes
  SpectralSequence tau(std::make_shared<TauIdealModel>(), SSWindow{-8, 40, 12});
  tau.run();
  EXPECT_EQ(stem_dimensions(tau, 2), (std::pair<std::size_t, std::size_t>{2, 0}));
  EXPECT_EQ(stem_dimensions(tau, 3), (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_EQ(tau.cell(0, -2)->dim(), 0u);
}

TEST(TauIdeal, KOReference) {
  SpectralSequence ko(std::make_shared<KOModel>(), SSWindow{-8, 16, 12});
  ko.run();
  // pi_n KO for n = 0..8: Z, Z/2, Z/2, 0, Z, 0, 0, 0, Z
  const std::vector<std::pair<std::size_t, std::size_t>> want{{1, 0}, {0, 1}, {0, 1}, {0, 0}, {1, 0},
                                                              {0, 0}, {0, 0}, {0, 0}, {1, 0}};
  for (int n = 0; n <= 8; ++n) EXPECT_EQ(stem_dimensions(ko, n), want[n]) << n;
  EXPECT_EQ(labels(ko, 0, 4), (std::vector<std::string>{"2 z^0 v^2"}));
}

TEST(FinalComparison, ImageAndKernel) {
  Report r = final_comparison({-8, 40, 24});
  EXPECT_TRUE(r.all_passed()) << r.text();
}

TEST(Chart, AsciiIsDeterministic) {
  auto a = make_chart(compute_Einfty({-4, 12, 8}), "plain").ascii();
  auto b = make_chart(compute_Einfty({-4, 12, 8}), "plain").ascii();
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("Z1"), std::string::npos);
}
