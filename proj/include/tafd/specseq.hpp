#pragma once

// The C2 homotopy fixed-point spectral sequence for the deck action on the
// weakly holomorphic forms, its d3 and d7, the E-infinity comparison with the
// ring R and the module K, the localizations, the w15 tower and the tau ideal.
//
// Bidegrees: s = k for z^k a1^i a3^j a6^e, t = 2(i + 3j + 6e), stem = t - s.

#include "tafd/forms.hpp"
#include "tafd/intlinalg.hpp"
#include "tafd/report.hpp"
#include "tafd/ss_engine.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tafd {

inline SSMonomial ss(int k, int i, int j, int e = 0) { return {k, i, j, e, 0, 0}; }

inline int ss_weight(const SSMonomial& m) { return m.i + 3 * m.j + 6 * m.e; }
inline int ss_stem(const SSMonomial& m) { return 2 * ss_weight(m) - m.k; }

inline SSMonomial operator*(const SSMonomial& a, const SSMonomial& b) {
  return {a.k + b.k, a.i + b.i, a.j + b.j, a.e + b.e, a.tau + b.tau, a.copy};
}

/// Parity of the number of generators z^2, a1^2, a3^2, z a3, a6 in any factorization.
inline int d3_parity(const SSMonomial& m) { return floor_mod((m.k + m.i + m.j) / 2 + m.i + m.e, 2); }

namespace gens {
inline SSMonomial zeta(int k = 1) { return ss(k, 0, 0); }
inline SSMonomial eta() { return ss(1, 1, 0); }
inline SSMonomial nu() { return ss(3, 0, 1); }
}  // namespace gens

enum class Variant { plain, no_a6, loc_a1, loc_a3, loc_a1a3 };

inline std::string to_string(Variant v) {
  switch (v) {
    case Variant::plain: return "plain";
    case Variant::no_a6: return "no-a6";
    case Variant::loc_a1: return "loc-a1";
    case Variant::loc_a3: return "loc-a3";
    case Variant::loc_a1a3: return "loc-a1a3";
  }
  return "?";
}

/// E2 = H*(C2; forms) for the deck action, with the d3 and d7 of the sequence.
class DeckModel : public SSModel {
 public:
  explicit DeckModel(Variant v = Variant::plain, int laurent = 12) : variant_(v), laurent_(laurent) {}

  Variant variant() const { return variant_; }
  int laurent() const { return laurent_; }
  bool a1_inverted() const { return variant_ == Variant::loc_a1 || variant_ == Variant::loc_a1a3; }
  bool a3_inverted() const { return variant_ == Variant::loc_a3 || variant_ == Variant::loc_a1a3; }

  std::string name() const override { return "deck " + to_string(variant_); }
  int stem(const SSMonomial& m) const override { return ss_stem(m); }
  std::vector<int> pages() const override { return {3, 7}; }

  bool in_universe(const SSMonomial& m) const override {
    if (m.tau || m.copy || m.k < 0 || m.e < 0 || m.e > 1) return false;
    if (variant_ == Variant::no_a6 && m.e) return false;
    if (floor_mod(m.i + m.j - m.k, 2)) return false;
    if (m.i < 0 && !a1_inverted()) return false;
    if (m.j < 0 && !a3_inverted()) return false;
    return true;
  }
  bool in_truncation(const SSMonomial& m) const override {
    if (!in_universe(m)) return false;
    switch (variant_) {
      case Variant::loc_a1: return m.j <= laurent_;
      case Variant::loc_a3: return m.i <= laurent_;
      case Variant::loc_a1a3: return m.j >= -laurent_ && m.j <= laurent_;
      default: return true;
    }
  }

  std::vector<SSMonomial> basis(int s, int stem) const override {
    std::vector<SSMonomial> out;
    const int t = stem + s;
    if (s < 0 || floor_mod(t, 2)) return out;
    const int w = t / 2;
    for (int e = 0; e <= 1; ++e) {
      if (a3_inverted() && !a1_inverted()) {
        for (int i = 0; i <= laurent_; ++i) {
          if (floor_mod(w - i - 6 * e, 3)) continue;
          SSMonomial m = ss(s, i, (w - i - 6 * e) / 3, e);
          if (in_truncation(m)) out.push_back(m);
        }
        continue;
      }
      const int jmin = variant_ == Variant::loc_a1a3 ? -laurent_ : 0;
      const int jmax = a1_inverted() ? laurent_ : (w - 6 * e) / 3;
      for (int j = jmin; j <= jmax; ++j) {
        SSMonomial m = ss(s, w - 3 * j - 6 * e, j, e);
        if (in_truncation(m)) out.push_back(m);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<SSMonomial> differential(int r, const SSMonomial& m) const override {
    if (r == 3) {
      if (d3_parity(m)) return m * ss(3, 1, 0);
      return std::nullopt;
    }
    if (r == 7) {
      if (m.i != 0) return std::nullopt;
      const int c = floor_mod(3 * m.j - m.k, 8);
      if ((m.e == 0 && c == 4) || (m.e == 1 && c == 6)) return m * ss(7, 0, 1);
      return std::nullopt;
    }
    return std::nullopt;
  }
  std::optional<SSMonomial> preimage(int r, const SSMonomial& m) const override {
    if (r == 3) {
      SSMonomial p = ss(m.k - 3, m.i - 1, m.j, m.e);
      if (p.k >= 0 && d3_parity(p)) return p;
    }
    if (r == 7 && m.i == 0 && m.k >= 7) {
      SSMonomial p = ss(m.k - 7, 0, m.j - 1, m.e);
      if (differential(7, p) == m) return p;
    }
    return std::nullopt;
  }

 private:
  Variant variant_;
  int laurent_;
};

/// The tau ideal: coefficients Z4[a1^{+-1}] tau with a1 -> -a1, Z4 = Z2{1, w} fixed,
/// tau in degree -2, and d3(tau) = eta^3 a1^{-2} tau.
class TauIdealModel : public SSModel {
 public:
  std::string name() const override { return "tau ideal"; }
  int stem(const SSMonomial& m) const override { return 2 * m.i - 2 - m.k; }
  std::vector<int> pages() const override { return {3}; }
  bool in_universe(const SSMonomial& m) const override {
    return m.tau == 1 && m.j == 0 && m.e == 0 && m.k >= 0 && (m.copy == 0 || m.copy == 1) &&
           floor_mod(m.i - m.k, 2) == 0;
  }
  std::vector<SSMonomial> basis(int s, int stem) const override {
    if (s < 0 || floor_mod(stem + 2 + s, 2)) return {};
    const int i = (stem + 2 + s) / 2;
    if (floor_mod(i - s, 2)) return {};
    return {{s, i, 0, 0, 1, 0}, {s, i, 0, 0, 1, 1}};
  }
  std::optional<SSMonomial> differential(int r, const SSMonomial& m) const override {
    if (r != 3 || floor_mod((m.i - m.k) / 2, 2) != 0) return std::nullopt;
    SSMonomial out = m;
    out.k += 3;
    out.i += 1;
    return out;
  }
  std::optional<SSMonomial> preimage(int r, const SSMonomial& m) const override {
    if (r != 3 || m.k < 3) return std::nullopt;
    SSMonomial p = m;
    p.k -= 3;
    p.i -= 1;
    if (differential(3, p)) return p;
    return std::nullopt;
  }
  std::string label(const SSMonomial& m) const override {
    return "z^" + std::to_string(m.k) + " a1^" + std::to_string(m.i) + (m.copy ? " w tau" : " tau");
  }
};

/// The standard sequence for KO as the C2 fixed points of KU: z^k v^i, v in
/// degree 2 with the sign action, d3(v^2) = eta^3.
class KOModel : public SSModel {
 public:
  std::string name() const override { return "KO"; }
  int stem(const SSMonomial& m) const override { return 2 * m.i - m.k; }
  std::vector<int> pages() const override { return {3}; }
  bool in_universe(const SSMonomial& m) const override {
    return !m.tau && !m.copy && m.j == 0 && m.e == 0 && m.k >= 0 && floor_mod(m.i - m.k, 2) == 0;
  }
  std::vector<SSMonomial> basis(int s, int stem) const override {
    if (s < 0 || floor_mod(stem + s, 2) || floor_mod((stem + s) / 2 - s, 2)) return {};
    return {ss(s, (stem + s) / 2, 0)};
  }
  std::optional<SSMonomial> differential(int r, const SSMonomial& m) const override {
    if (r != 3 || floor_mod((m.i - m.k) / 2, 2) != 1) return std::nullopt;
    return ss(m.k + 3, m.i + 1, 0);
  }
  std::optional<SSMonomial> preimage(int r, const SSMonomial& m) const override {
    if (r != 3 || m.k < 3) return std::nullopt;
    SSMonomial p = ss(m.k - 3, m.i - 1, 0);
    if (differential(3, p)) return p;
    return std::nullopt;
  }
  std::string label(const SSMonomial& m) const override {
    return "z^" + std::to_string(m.k) + " v^" + std::to_string(m.i);
  }
};

/// d3 of a basis monomial by the closed form, or nothing when it vanishes.
inline std::optional<SSMonomial> d3(const SSMonomial& m) { return DeckModel().differential(3, m); }

/// d7 of an E7 monomial by the closed form, or nothing when it vanishes.
inline std::optional<SSMonomial> d7(const SSMonomial& m) { return DeckModel().differential(7, m); }

/// The seven E2 generators and their d3.
struct SSGenerator {
  std::string name;
  SSMonomial m;
  std::optional<SSMonomial> d3;
};

inline const std::vector<SSGenerator>& e2_generators() {
  static const std::vector<SSGenerator> g{
      {"z^2", ss(2, 0, 0), ss(5, 1, 0)},    {"a1^2", ss(0, 2, 0), ss(3, 3, 0)},
      {"a3^2", ss(0, 0, 2), ss(3, 1, 2)},   {"a1 a3", ss(0, 1, 1), std::nullopt},
      {"z a1", ss(1, 1, 0), std::nullopt},  {"z a3", ss(1, 0, 1), ss(4, 1, 1)},
      {"a6", ss(0, 0, 0, 1), ss(3, 1, 0, 1)},
  };
  return g;
}

/// Exponent vectors x with m = prod g_n^{x_n} over e2_generators().
inline std::vector<std::array<int, 7>> factorizations(const SSMonomial& m) {
  std::vector<std::array<int, 7>> out;
  if (m.k < 0 || m.i < 0 || m.j < 0 || m.e < 0 || m.e > 1) return out;
  for (int x4 = 0; x4 <= std::min(m.i, m.j); ++x4)
    for (int x5 = 0; x5 <= std::min(m.k, m.i - x4); ++x5)
      for (int x6 = 0; x6 <= std::min(m.k - x5, m.j - x4); ++x6) {
        const int r1 = m.k - x5 - x6, r2 = m.i - x4 - x5, r3 = m.j - x4 - x6;
        if (r1 % 2 || r2 % 2 || r3 % 2) continue;
        out.push_back({r1 / 2, r2 / 2, r3 / 2, x4, x5, x6, m.e});
      }
  return out;
}

/// d3 by the Leibniz rule along one factorization, as the set of monomials with odd coefficient.
inline std::set<SSMonomial> d3_leibniz(const SSMonomial& m, const std::array<int, 7>& x) {
  std::map<SSMonomial, int> sum;
  const auto& g = e2_generators();
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (!x[n] || !g[n].d3) continue;
    SSMonomial term = m;
    term.k += g[n].d3->k - g[n].m.k;
    term.i += g[n].d3->i - g[n].m.i;
    term.j += g[n].d3->j - g[n].m.j;
    term.e += g[n].d3->e - g[n].m.e;
    sum[term] += x[n];
  }
  std::set<SSMonomial> out;
  for (const auto& [t, c] : sum)
    if (c % 2) out.insert(t);
  return out;
}

/// The spectral sequence at E2 over the window.
inline SpectralSequence build_E2(SSWindow w, Variant v = Variant::plain, int laurent = 12) {
  return SpectralSequence(std::make_shared<DeckModel>(v, laurent), w);
}

/// Runs d3 and d7; the result holds E8 = E-infinity.
inline SpectralSequence compute_Einfty(SSWindow w, Variant v = Variant::plain, int laurent = 12) {
  SpectralSequence e = build_E2(w, v, laurent);
  e.run();
  return e;
}

/// Monomial model of E2 against the Smith-form group cohomology of the deck action.
inline Report verify_E2(SSWindow w) {
  Report r("E2 cross-check");
  DeckModel model;
  std::map<std::pair<int, int>, CohomologyGroup> cache;
  auto group = [&](int s, int weight) -> const CohomologyGroup& {
    const int cls = s == 0 ? 0 : (s % 2 ? 1 : 2);
    auto it = cache.find({cls, weight});
    if (it == cache.end()) it = cache.emplace(std::pair{cls, weight}, group_cohomology(Involution::deck, cls, weight)).first;
    return it->second;
  };
  std::size_t checked = 0;
  std::vector<std::string> bad;
  for (int s = 0; s <= w.fil_cap; ++s)
    for (int n = w.stem_min; n <= w.stem_max; ++n) {
      const auto basis = model.basis(s, n);
      const int t = n + s;
      CohomologyGroup g;
      if (t % 2 == 0) g = group(s, t / 2);
      bool ok;
      if (s == 0) {
        ok = g.free_rank == basis.size() && g.torsion_generators.empty();
      } else {
        ok = g.free_rank == 0 && g.torsion_generators.size() == basis.size() &&
             std::all_of(g.torsion_generators.begin(), g.torsion_generators.end(),
                         [](const auto& p) { return p.second == 2; });
      }
      ++checked;
      if (!ok)
        bad.push_back("(" + std::to_string(s) + ", " + std::to_string(t) + "): model " + std::to_string(basis.size()) +
                      ", group cohomology " + g.str());
    }
  std::string detail = std::to_string(checked) + " bidegrees";
  for (const auto& b : bad) detail += "; " + b;
  r.add("E2 model = group cohomology",
        "z^k a1^i a3^j a6^e with i + j = k mod 2, lattice on the zero-line and F2 above", bad.empty(), detail);
  auto has = [&](int s, int stem, const SSMonomial& m) {
    auto b = model.basis(s, stem);
    return std::find(b.begin(), b.end(), m) != b.end();
  };
  r.add("eta in (1, 2)", "z a1 in stem 1", model.basis(1, 1) == std::vector<SSMonomial>{ss(1, 1, 0)});
  r.add("nu in (3, 6)", "z^3 a3 and z^3 a1^3 span stem 3 filtration 3",
        model.basis(3, 3).size() == 2 && has(3, 3, ss(3, 0, 1)) && has(3, 3, ss(3, 3, 0)));
  r.add("z^2 in (2, 0)", "stem -2 filtration 2 is z^2", model.basis(2, -2) == std::vector<SSMonomial>{ss(2, 0, 0)});
  return r;
}

/// Classes of a page cell that a list of representatives accounts for.
struct CellMatch {
  std::size_t dimension = 0;   // F2 dimension of the page cell
  std::size_t rank = 0;        // rank of the representatives in page coordinates
  std::size_t count = 0;       // number of representatives
  std::vector<std::string> not_cycles;
  std::vector<std::string> zero;
  bool exact() const { return not_cycles.empty() && zero.empty() && rank == count && rank == dimension; }
};

inline CellMatch match_cell(const SpectralSequence& e, int s, int stem,
                            const std::vector<std::vector<SSMonomial>>& reps) {
  CellMatch out;
  const auto* c = e.cell(s, stem);
  if (!c) return out;
  out.dimension = c->dim();
  std::vector<F2Vector> cols;
  for (const auto& rep : reps) {
    ++out.count;
    std::string name;
    for (const auto& m : rep) name += (name.empty() ? "" : " + ") + m.str();
    if (std::any_of(rep.begin(), rep.end(), [&](const SSMonomial& m) { return !c->index.count(m); })) {
      out.not_cycles.push_back(name + " (outside E2)");
      continue;
    }
    auto coords = e.coordinates(*c, e.vector_of(*c, rep));
    if (!coords) {
      out.not_cycles.push_back(name);
      continue;
    }
    if (coords->none()) out.zero.push_back(name);
    cols.push_back(*coords);
  }
  out.rank = f2_rank(cols, out.dimension);
  return out;
}

/// Whether a single monomial is zero on the current page (a cycle that is a boundary).
inline std::optional<bool> vanishes(const SpectralSequence& e, const SSMonomial& m) {
  const auto* c = e.cell(m.k, e.model().stem(m));
  if (!c || !c->index.count(m)) return std::nullopt;
  auto coords = e.coordinates(*c, e.vector_of(*c, {m}));
  if (!coords) return std::nullopt;
  return coords->none();
}

/// Generators of the last page over the interior of the window, stem by stem.
struct ChartStem {
  int stem = 0;
  std::vector<SSClassRecord> classes;
};

struct ChartReport {
  std::string variant;
  SSWindow window;
  int page = 0;
  std::vector<ChartStem> stems;
  std::vector<std::string> notes;

  std::size_t inconclusive() const {
    std::size_t n = 0;
    for (const auto& st : stems)
      for (const auto& c : st.classes) n += c.inconclusive ? 1 : 0;
    return n;
  }

  /// Rows are filtrations from the cap down to 0, columns are stems. A digit is
  /// the F2 dimension, 'Z' marks the lattice (with its rank), '?' an inconclusive cell.
  std::string ascii() const {
    std::string out = "# " + variant + ", E" + std::to_string(page) + "\n";
    std::map<std::pair<int, int>, std::pair<std::size_t, bool>> grid;
    for (const auto& st : stems)
      for (const auto& c : st.classes) {
        auto& g = grid[{c.s, c.stem}];
        ++g.first;
        g.second = g.second || c.inconclusive;
      }
    for (int s = window.fil_cap; s >= 0; --s) {
      std::string line = (s < 10 ? " " : "") + std::to_string(s) + " |";
      for (int n = window.stem_min; n <= window.stem_max; ++n) {
        auto it = grid.find({s, n});
        std::string cell = ".";
        if (it != grid.end()) {
          cell = it->second.second ? "?" : std::to_string(it->second.first);
          if (s == 0 && !it->second.second) cell = "Z" + cell;
        }
        line += std::string(cell.size() < 3 ? 3 - cell.size() : 0, ' ') + cell;
      }
      out += line + "\n";
    }
    std::string axis = "    ";
    for (int n = window.stem_min; n <= window.stem_max; ++n) {
      std::string lab = n % 4 == 0 ? std::to_string(n) : "";
      axis += std::string(lab.size() < 3 ? 3 - lab.size() : 0, ' ') + lab;
    }
    out += axis + "\n";
    for (const auto& n : notes) out += "note: " + n + "\n";
    return out;
  }
};

inline ChartReport make_chart(const SpectralSequence& e, std::string variant) {
  ChartReport out;
  out.variant = std::move(variant);
  out.window = e.window();
  out.page = e.current_page();
  for (int n = e.window().stem_min; n <= e.window().stem_max; ++n) {
    ChartStem st;
    st.stem = n;
    for (int s = 0; s <= e.window().fil_cap; ++s)
      for (auto& c : e.classes(s, n)) st.classes.push_back(std::move(c));
    out.stems.push_back(std::move(st));
  }
  return out;
}

/// Sums of forms a1^i a3^j a6^e (e <= 1) over F2.
using F2Poly = std::set<FormMonomial>;

/// Product in R / 2, with a6^2 rewritten by the relation.
inline F2Poly f2_product(const F2Poly& a, const F2Poly& b) {
  AutomorphicPoly pa, pb;
  for (const auto& m : a) pa += AutomorphicPoly::monomial(m);
  for (const auto& m : b) pb += AutomorphicPoly::monomial(m);
  const AutomorphicPoly prod = pa * pb;
  F2Poly out;
  for (const auto& [m, c] : prod.terms())
    if (mod2(c)) out.insert(m);
  return out;
}

inline F2Poly f2_monomial(int i, int j, int e = 0) { return {FormMonomial{i, j, e}}; }

/// Basis, weight by weight, of the F2 subring generated by homogeneous elements of positive weight.
class F2Subring {
 public:
  explicit F2Subring(std::vector<F2Poly> generators) : gens_(std::move(generators)) {
    for (const auto& g : gens_)
      if (g.empty() || g.begin()->weight() <= 0) throw std::invalid_argument("generators need positive weight");
  }
  const std::vector<F2Poly>& basis(int w) {
    if (w < 0) return empty_;
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    std::vector<F2Poly> out;
    if (w == 0) {
      out.push_back({FormMonomial{}});
    } else {
      std::map<FormMonomial, std::size_t> index;
      std::vector<F2Poly> candidates;
      for (const auto& g : gens_)
        for (const auto& b : basis(w - g.begin()->weight())) candidates.push_back(f2_product(g, b));
      for (const auto& p : candidates)
        for (const auto& m : p) index.emplace(m, 0);
      std::size_t n = 0;
      for (auto& [m, k] : index) k = n++;
      F2Echelon ech(n);
      for (const auto& p : candidates) {
        F2Vector v(n);
        for (const auto& m : p) v.set(index[m]);
        ech.insert(v);
      }
      std::vector<FormMonomial> names(n);
      for (const auto& [m, k] : index) names[k] = m;
      for (const auto& row : ech.rows()) {
        F2Poly p;
        for (std::size_t q = row.find_first(); q != F2Vector::npos; q = row.find_next(q)) p.insert(names[q]);
        out.push_back(std::move(p));
      }
    }
    return memo_.emplace(w, std::move(out)).first->second;
  }

 private:
  std::vector<F2Poly> gens_;
  std::map<int, std::vector<F2Poly>> memo_;
  std::vector<F2Poly> empty_;
};

/// z^k eta^n x for a form x, as E2 monomials.
inline std::vector<SSMonomial> lift(const F2Poly& x, int k, int eta = 0) {
  std::vector<SSMonomial> out;
  for (const auto& m : x) out.push_back(ss(k + eta, m.i + eta, m.j, m.e));
  return out;
}

namespace detail {

inline std::string join(const std::vector<std::string>& v, std::size_t limit = 12) {
  std::string out;
  for (std::size_t n = 0; n < v.size() && n < limit; ++n) out += (n ? "; " : "") + v[n];
  if (v.size() > limit) out += "; ... (" + std::to_string(v.size()) + " in all)";
  return out;
}

inline std::string cell_name(int s, int stem) { return "(" + std::to_string(s) + ", stem " + std::to_string(stem) + ")"; }

/// Zero-line lattice of a page cell: lifts of the F2 classes and twice the rest.
inline Z2Lattice zero_line_lattice(const SpectralSequence::Cell& c, const F2Echelon& cycles) {
  Z2Lattice out(c.basis.size());
  for (const auto& row : cycles.rows()) {
    Z2Lattice::Vector v(c.basis.size(), Rational(0));
    for (std::size_t p = row.find_first(); p != F2Vector::npos; p = row.find_next(p)) v[p] = 1;
    out.add(v);
  }
  for (std::size_t p = 0; p < c.basis.size(); ++p) {
    Z2Lattice::Vector v(c.basis.size(), Rational(0));
    v[p] = 2;
    out.add(v);
  }
  return out;
}

/// Coordinates of an integral form in the zero-line basis of a cell.
inline std::optional<Z2Lattice::Vector> zero_line_coordinates(const SpectralSequence::Cell& c, const AutomorphicPoly& p) {
  Z2Lattice::Vector v(c.basis.size(), Rational(0));
  for (const auto& [m, coeff] : p.terms()) {
    auto it = c.index.find(ss(0, m.i, m.j, m.e));
    if (it == c.index.end()) return std::nullopt;
    v[it->second] = coeff;
  }
  return v;
}

}  // namespace detail

/// d3 well-definedness, the E4 zero-line, d7, sparsity, injectivity, the E7
/// relation and the permanent classes of high filtration.
inline Report verify_differentials(SSWindow w) {
  Report r("differentials");
  DeckModel model;
  SpectralSequence e = build_E2(w);

  std::size_t multi = 0, monomials = 0;
  std::vector<std::string> bad_d3, bad_sparse;
  for (int s = 0; s <= w.fil_cap; ++s)
    for (int n = w.stem_min; n <= w.stem_max; ++n)
      for (const auto& m : model.basis(s, n)) {
        ++monomials;
        const int t = n + s;
        if (floor_mod(t - 2 * s, 4) != 0) bad_sparse.push_back(m.str());
        auto fs = factorizations(m);
        if (fs.size() > 1) ++multi;
        std::set<SSMonomial> closed;
        if (auto d = d3(m)) closed.insert(*d);
        for (const auto& f : fs)
          if (d3_leibniz(m, f) != closed) {
            bad_d3.push_back(m.str());
            break;
          }
        if (fs.empty()) bad_d3.push_back(m.str() + " has no factorization");
      }
  r.add("d3 well-defined", "Leibniz over every factorization into z^2, a1^2, a3^2, a1 a3, z a1, z a3, a6 agrees",
        bad_d3.empty(),
        std::to_string(monomials) + " monomials, " + std::to_string(multi) + " with several factorizations" +
            (bad_d3.empty() ? "" : ": " + detail::join(bad_d3)));
  r.add("sparsity", "t - 2s = 0 mod 4 on E2, so only d_{4k+3} can be nonzero", bad_sparse.empty(),
        detail::join(bad_sparse));
  r.add("d3(a1^4) = 0", "a1^4 survives", !d3(ss(0, 4, 0)));
  r.add("d3(z^8 a1^3 a3)", "z^11 a1^4 a3", d3(ss(8, 3, 1)) == ss(11, 4, 1));
  r.add("d3(z^4 a6)", "eta z^6 a6 = z^7 a1 a6", d3(ss(4, 0, 0, 1)) == ss(7, 1, 0, 1));

  e.step(3);

  // zero-line of E4 against the subring generated by the listed survivors
  {
    const std::vector<std::pair<AutomorphicPoly, int>> gens{
        {AutomorphicPoly::a1(4), 4},
        {AutomorphicPoly::monomial({1, 1, 0}), 4},
        {AutomorphicPoly::a3(4), 12},
        {AutomorphicPoly::monomial({2, 0, 1}), 8},
        {AutomorphicPoly::monomial({0, 2, 1}), 12},
        {AutomorphicPoly::monomial({2, 0, 0}, 2), 2},
        {AutomorphicPoly::monomial({0, 2, 0}, 2), 6},
        {AutomorphicPoly::monomial({0, 0, 1}, 2), 6},
    };
    std::map<int, std::vector<AutomorphicPoly>> sub{{0, {AutomorphicPoly(1)}}};
    std::vector<std::string> bad;
    int checked = 0;
    for (int wt = 0; 2 * wt <= w.stem_max; ++wt) {
      if (wt > 0) {
        auto& here = sub[wt];
        for (const auto& [g, gw] : gens)
          if (gw <= wt)
            for (const auto& b : sub[wt - gw]) here.push_back(g * b);
      }
      if (2 * wt < w.stem_min) continue;
      const auto* c = e.cell(0, 2 * wt);
      if (!c) continue;
      Z2Lattice survivors = detail::zero_line_lattice(*c, c->cycles);
      Z2Lattice generated(c->basis.size());
      bool inside = true;
      for (const auto& p : sub[wt]) {
        auto v = detail::zero_line_coordinates(*c, p);
        if (!v) {
          inside = false;
          break;
        }
        generated.add(*v);
      }
      ++checked;
      if (!inside || !(generated == survivors) || (c->basis.size() && survivors.rank() != c->basis.size()))
        bad.push_back("weight " + std::to_string(wt));
      // keep the generating sets small: replace by a spanning set of the lattice
      if (sub[wt].size() > 64) {
        std::vector<AutomorphicPoly> trimmed;
        Z2Lattice span(c->basis.size());
        for (const auto& p : sub[wt]) {
          auto v = detail::zero_line_coordinates(*c, p);
          if (v && !span.contains(*v)) {
            span.add(*v);
            trimmed.push_back(p);
          }
        }
        sub[wt] = trimmed;
      }
    }
    r.add("E4 zero-line", "lattice generated by a1^4, a1 a3, a3^4, a1^2 a6, a3^2 a6, 2a1^2, 2a3^2, 2a6",
          bad.empty(), std::to_string(checked) + " weights" + (bad.empty() ? "" : ": " + detail::join(bad)));
  }

  // multiplicative checks on E4
  {
    std::vector<std::string> bad, exceptions;
    const std::vector<std::pair<std::string, SSMonomial>> mults{
        {"a3^4", ss(0, 0, 4)}, {"z^4", gens::zeta(4)}, {"nu", gens::nu()}};
    for (const auto& [name, g] : mults)
      for (int s = 2; s + g.k <= w.fil_cap; ++s)
        for (int n = w.stem_min; n <= w.stem_max; ++n) {
          const auto* c = e.cell(s, n);
          const auto* d = e.cell(s + g.k, n + ss_stem(g));
          if (!c || !d || !c->dim() || !w.interior(s + g.k, n + ss_stem(g))) continue;
          std::vector<F2Vector> cols;
          std::size_t eta_multiples = 0;
          for (const auto& z : c->cycles.rows()) {
            std::vector<SSMonomial> prod;
            bool divisible = true;
            for (std::size_t p = z.find_first(); p != F2Vector::npos; p = z.find_next(p)) {
              prod.push_back(c->basis[p] * g);
              divisible = divisible && c->basis[p].i > 0;
            }
            if (divisible && g.k > 0) {
              ++eta_multiples;
              continue;
            }
            auto coords = e.coordinates(*d, e.vector_of(*d, prod));
            if (!coords) {
              bad.push_back(name + " times a class in " + detail::cell_name(s, n) + " is not a cycle");
              continue;
            }
            cols.push_back(*coords);
          }
          if (f2_rank(cols, d->dim()) != cols.size())
            bad.push_back(name + " on " + detail::cell_name(s, n));
          if (eta_multiples) exceptions.push_back(name + " on " + std::to_string(eta_multiples) + " eta-multiples in " +
                                                  detail::cell_name(s, n));
        }
    r.add("injectivity on E4", "a3^4, z^4 and nu act injectively in filtrations >= 2 (eta-multiples excepted)",
          bad.empty(), bad.empty() ? std::to_string(exceptions.size()) + " cells with eta-multiples set aside"
                                   : detail::join(bad));
    // z^4 kills eta^2 a1^4 = z^2 a1^6 on E4
    auto v = vanishes(e, ss(6, 6, 0));
    r.add("z^4 eta^2 a1^4 = 0 on E4", "z^6 a1^6 = d3(z^3 a1^5)", v && *v);

    // (z^2 a6)^2 + (z^2 a3^2)(z^2 a6) + (z^2 a3^2)^2 = 0
    F2Poly rel = f2_product(f2_monomial(0, 0, 1), f2_monomial(0, 0, 1));
    for (const auto& m : f2_product(f2_monomial(0, 2), f2_monomial(0, 0, 1))) {
      if (!rel.erase(m)) rel.insert(m);
    }
    for (const auto& m : f2_monomial(0, 4)) {
      if (!rel.erase(m)) rel.insert(m);
    }
    const auto* c = e.cell(4, 24 - 4);
    bool ok = c != nullptr;
    std::string detail;
    if (c) {
      auto coords = e.coordinates(*c, e.vector_of(*c, lift(rel, 4)));
      ok = coords && coords->none();
      for (const auto& m : rel) detail += (detail.empty() ? "z^4 (" : " + ") + m.str();
      detail += ")";
    }
    r.add("E7 relation", "(z^2 a6)^2 + (z^2 a3^2)(z^2 a6) + (z^2 a3^2)^2 = 0", ok, detail);
  }

  // d7
  r.add("d7(z^4)", "z^11 a3", d7(gens::zeta(4)) == ss(11, 0, 1));
  r.add("d7(z^2 a6)", "nu z^4 (z^2 a6) = z^9 a3 a6", d7(ss(2, 0, 0, 1)) == ss(9, 0, 1, 1));
  r.add("d7(z^8) = 0", "z^8 is permanent", !d7(gens::zeta(8)));
  r.add("d7(nu) = 0", "nu is a permanent cycle", !d7(gens::nu()));
  e.step(7);

  // permanent classes of high filtration
  {
    std::vector<std::string> extra, missing;
    std::size_t inconclusive = 0;
    for (int s = 7; s <= w.fil_cap; ++s)
      for (int n = w.stem_min; n <= w.stem_max; ++n)
        for (const auto& c : e.classes(s, n)) {
          if (c.inconclusive) {
            ++inconclusive;
            continue;
          }
          const bool ok = c.terms.size() == 1 && c.terms[0].i == 0 && c.terms[0].j == 0 &&
                          ((c.terms[0].e == 0 && c.s % 8 == 0) || (c.terms[0].e == 1 && c.s % 8 == 6));
          if (!ok) extra.push_back(c.label);
        }
    for (int s = 7; s <= w.fil_cap; ++s) {
      const SSMonomial m = s % 8 == 0 ? ss(s, 0, 0) : ss(s, 0, 0, 1);
      if (s % 8 != 0 && s % 8 != 6) continue;
      if (!w.interior(s, ss_stem(m))) continue;
      auto v = vanishes(e, m);
      if (!v || *v) missing.push_back(m.str());
    }
    r.add("permanent classes in filtration >= 7", "exactly z^{8k} and z^{8k+6} a6", extra.empty() && missing.empty(),
          (extra.empty() ? "" : "unexpected: " + detail::join(extra)) +
              (missing.empty() ? "" : " missing: " + detail::join(missing)) + " (" + std::to_string(inconclusive) +
              " at the window edge)");
  }
  // no room for d_r, r >= 11
  {
    std::vector<std::string> room;
    for (int s = 0; s <= w.fil_cap; ++s)
      for (int n = w.stem_min + 1; n <= w.stem_max; ++n) {
        if (!e.dimension(s, n) || e.cell_tainted(s, n)) continue;
        for (int rr = 11; s + rr <= w.fil_cap; rr += 4)
          if (e.dimension(s + rr, n - 1) && !e.cell_tainted(s + rr, n - 1))
            room.push_back(detail::cell_name(s, n) + " -> " + detail::cell_name(s + rr, n - 1));
      }
    r.add("no room for d_r, r >= 11", "E8 = E-infinity", room.empty(), detail::join(room));
  }
  return r;
}

/// The 18 generators of K as a free Z/2[a3^8]-module.
inline const std::vector<std::pair<std::string, SSMonomial>>& k_generators() {
  static const std::vector<std::pair<std::string, SSMonomial>> g{
      {"nu", ss(3, 0, 1)},
      {"nu^2", ss(6, 0, 2)},
      {"nu (a3^6 a6)", ss(3, 0, 7, 1)},
      {"nu^2 (a3^6 a6)", ss(6, 0, 8, 1)},
      {"z a3^3", ss(1, 0, 3)},
      {"eta (z a3^3)", ss(2, 1, 3)},
      {"nu (z a3^3)", ss(4, 0, 4)},
      {"z a3 a6", ss(1, 0, 1, 1)},
      {"eta (z a3 a6)", ss(2, 1, 1, 1)},
      {"nu (z a3 a6)", ss(4, 0, 2, 1)},
      {"eta (a3^4)", ss(1, 1, 4)},
      {"eta^2 (a3^4)", ss(2, 2, 4)},
      {"eta (a3^2 a6)", ss(1, 1, 2, 1)},
      {"eta^2 (a3^2 a6)", ss(2, 2, 2, 1)},
      {"z^2 a3^6", ss(2, 0, 6)},
      {"nu (z^2 a3^6)", ss(5, 0, 7)},
      {"z^2 a3^4 a6", ss(2, 0, 4, 1)},
      {"nu (z^2 a3^4 a6)", ss(5, 0, 5, 1)},
  };
  return g;
}

/// Generators of the subring S of R / 2 in the lower left corner of the pullback.
inline std::vector<F2Poly> pullback_subring_generators() {
  return {f2_monomial(4, 0),    f2_monomial(1, 1),    f2_monomial(1, 5),   f2_monomial(0, 8),
          f2_monomial(2, 0, 1), f2_monomial(1, 3, 1), f2_monomial(0, 6, 1)};
}

/// Per-stem comparison of E-infinity with gr(R) + K, where R is the pullback
/// {x : x mod 2 in S} plus eta S and eta^2 S, and K is free over Z/2[a3^8].
inline Report verify_RK_theorem(SSWindow w) {
  Report r("R and K");
  SpectralSequence e = compute_Einfty(w);
  F2Subring S(pullback_subring_generators());
  std::size_t k_classes = 0;
  std::vector<std::string> k_bad;
  for (int n = w.stem_min; n <= w.stem_max; ++n) {
    std::size_t einf = 0, expected = 0;
    std::vector<std::string> problems;
    bool inconclusive = false;
    for (int s = 0; s <= w.fil_cap; ++s) {
      if (e.cell_tainted(s, n)) inconclusive = true;
      const auto* c = e.cell(s, n);
      einf += e.dimension(s, n);
      std::vector<std::vector<SSMonomial>> reps;
      if (s <= 2 && (n - s) % 2 == 0 && n - s >= 0)
        for (const auto& x : S.basis((n - s) / 2)) reps.push_back(lift(x, 0, s));
      std::size_t from_r = reps.size();
      for (const auto& [name, g] : k_generators())
        for (int m = 0; g.k == s; ++m) {
          SSMonomial x = g * ss(0, 0, 8 * m);
          if (ss_stem(x) > n) break;
          if (ss_stem(x) == n) {
            reps.push_back({x});
            ++k_classes;
          }
        }
      if (s == 0) {
        // the lattice {x : x mod 2 in S_w} has full rank; compare the F2 images
        if (!c) continue;
        expected += c->basis.size();
        auto m = match_cell(e, s, n, reps);
        if (!m.exact())
          problems.push_back("zero-line of stem " + std::to_string(n) + ": E-infinity mod 2 has dimension " +
                             std::to_string(m.dimension) + ", S has " + std::to_string(m.rank));
        continue;
      }
      expected += reps.size();
      auto m = match_cell(e, s, n, reps);
      if (!m.exact()) {
        std::string p = detail::cell_name(s, n) + ": E-infinity " + std::to_string(m.dimension) + ", R " +
                        std::to_string(from_r) + " + K " + std::to_string(reps.size() - from_r);
        if (!m.not_cycles.empty()) p += ", not cycles: " + detail::join(m.not_cycles, 4);
        if (!m.zero.empty()) p += ", zero: " + detail::join(m.zero, 4);
        if (m.rank < m.dimension && c) {
          // name the classes left over
          std::vector<F2Vector> cols;
          for (const auto& rep : reps)
            if (auto v = e.coordinates(*c, e.vector_of(*c, rep))) cols.push_back(*v);
          std::vector<std::string> left;
          for (const auto& cls : e.classes(s, n)) {
            auto v = e.coordinates(*c, e.vector_of(*c, cls.terms));
            cols.push_back(*v);
            if (f2_rank(cols, c->dim()) == cols.size()) left.push_back(cls.label);
            else cols.pop_back();
          }
          p += ", unaccounted: " + detail::join(left, 4);
        }
        problems.push_back(p);
        for (const auto& z : m.zero) k_bad.push_back(z);
      }
    }
    std::string detail = "E-infinity " + std::to_string(einf) + ", gr(R) + K " + std::to_string(expected);
    if (inconclusive) detail += " (touches the window edge)";
    if (!problems.empty()) detail += "; " + detail::join(problems, 6);
    r.add("stem " + std::to_string(n), "dim E-infinity = dim gr(R) + dim K", problems.empty() && einf == expected,
          detail);
  }
  r.add("K free over Z/2[a3^8]", "the 18 generators times a3^{8m} are nonzero and independent in E-infinity",
        k_bad.empty(), std::to_string(k_classes) + " classes in the window" +
                           (k_bad.empty() ? "" : "; zero: " + detail::join(k_bad)));
  return r;
}

namespace detail {

/// Single-monomial generators of the last page in one bidegree, with the edge flag.
inline std::map<SSMonomial, bool> monomial_classes(const SpectralSequence& e, int s, int stem,
                                                   std::vector<std::string>& sums) {
  std::map<SSMonomial, bool> out;
  for (const auto& c : e.classes(s, stem)) {
    if (c.coefficient != 1) continue;
    if (c.terms.size() != 1) {
      sums.push_back(c.label);
      continue;
    }
    out[c.terms[0]] = c.inconclusive;
  }
  return out;
}

}  // namespace detail

/// E-infinity after inverting a1 (through a1^4), a3 (through a3^8) or a1 a3.
inline Report localize(SSWindow w, Variant v, int laurent = 12) {
  if (v != Variant::loc_a1 && v != Variant::loc_a3 && v != Variant::loc_a1a3)
    throw std::invalid_argument("localize needs loc-a1, loc-a3 or loc-a1a3");
  Report r("localization " + to_string(v));
  SpectralSequence e = compute_Einfty(w, v, laurent);
  const auto& model = static_cast<const DeckModel&>(e.model());

  std::vector<std::string> survivors;
  for (int s = 7; s <= w.fil_cap; ++s) {
    if (s % 8 != 0 && s % 8 != 6) continue;
    const SSMonomial m = s % 8 == 0 ? ss(s, 0, 0) : ss(s, 0, 0, 1);
    if (!w.interior(s, ss_stem(m))) continue;
    auto z = vanishes(e, m);
    if (!z || !*z) survivors.push_back(m.str());
  }
  r.add("z^{8k}, z^{8k+6} a6 destroyed", "zero in the localized E-infinity for k >= 1", survivors.empty(),
        detail::join(survivors));

  // expected monomials, bidegree by bidegree
  std::function<bool(const SSMonomial&)> expected;
  std::string anchor;
  if (v == Variant::loc_a1 || v == Variant::loc_a1a3) {
    anchor = v == Variant::loc_a1 ? "eta^n <a1^{+-4}, a1 a3, a1^2 a6>, n <= 2"
                                  : "eta^n <a1^{+-4}, (a1 a3)^{+-1}, a1^2 a6>, n <= 2";
    expected = [v](const SSMonomial& m) {
      if (m.k > 2) return false;
      // m = eta^k (a1^4)^a (a1 a3)^b (a1^2 a6)^e
      const int b = m.j, rest = m.i - m.k - b - 2 * m.e;
      if (b < 0 && v == Variant::loc_a1) return false;
      return floor_mod(rest, 4) == 0;
    };
  } else {
    anchor = "M + M y with y = a3^{-2} a6, M = eta^n <a1 a3, a1 a3^5, a3^{+-8}> + L";
    expected = [](const SSMonomial& m0) {
      SSMonomial m = m0;
      if (m.e) m = ss(m.k, m.i, m.j + 2, 0);  // divide by y
      // L: the K generators without a6, times a3^{8m}
      for (const auto& [name, g] : k_generators())
        if (!g.e && g.k == m.k && g.i == m.i && floor_mod(m.j - g.j, 8) == 0) return true;
      if (m.k > 2 || m.i < m.k) return false;
      // m = eta^k (a1 a3)^b (a1 a3^5)^c a3^{8n}
      const int i = m.i - m.k, j = m.j;
      for (int c = 0; c <= i; ++c)
        if (floor_mod(j - (i - c) - 5 * c, 8) == 0) return true;
      return false;
    };
  }
  std::vector<std::string> extra, missing, sums;
  std::size_t compared = 0, skipped = 0;
  for (int s = 0; s <= w.fil_cap; ++s)
    for (int n = w.stem_min; n <= w.stem_max; ++n) {
      auto found = detail::monomial_classes(e, s, n, sums);
      for (const auto& [m, edge] : found) {
        if (edge) {
          ++skipped;
          continue;
        }
        ++compared;
        if (!expected(m)) extra.push_back(m.str());
      }
      for (const auto& m : model.basis(s, n)) {
        if (!expected(m) || found.count(m) || e.tainted(m)) continue;
        // a genuine element of the ring outside the cycles that survive
        missing.push_back(m.str());
      }
    }
  r.add("localized E-infinity", anchor, extra.empty() && missing.empty() && sums.empty(),
        std::to_string(compared) + " classes compared, " + std::to_string(skipped) + " at the truncation edge" +
            (extra.empty() ? "" : "; unexpected: " + detail::join(extra)) +
            (missing.empty() ? "" : "; missing: " + detail::join(missing)) +
            (sums.empty() ? "" : "; not monomial: " + detail::join(sums)));

  if (v == Variant::loc_a3) {
    // multiplication by y = a3^{-2} a6 matches the a6-free and a6 parts
    std::vector<std::string> bad;
    for (int s = 0; s <= w.fil_cap; ++s)
      for (int n = w.stem_min; n <= w.stem_max; ++n) {
        std::vector<std::string> ignore;
        auto found = detail::monomial_classes(e, s, n, ignore);
        for (const auto& [m, edge] : found) {
          const SSMonomial partner = m.e ? ss(m.k, m.i, m.j + 2, 0) : ss(m.k, m.i, m.j - 2, 1);
          auto it = found.find(partner);
          if (edge || e.tainted(partner)) continue;
          if (it == found.end()) bad.push_back(m.str());
        }
      }
    r.add("free on {1, y}", "every stem splits as M + M y", bad.empty(), detail::join(bad));
  }
  return r;
}

/// H*(C2; R) for w15 against Z2[a1, a3, tau] / (2 tau, G tau), tau in (s, t) = (2, 0).
inline Report w15_page(int max_weight = 24, int max_s = 6) {
  Report r("w15 degeneration");
  auto N = [](int wt) { return wt < 0 ? 0 : wt / 3 + 1; };
  std::vector<std::string> bad;
  std::size_t checked = 0;
  for (int wt = 0; wt <= max_weight; ++wt)
    for (int s = 0; s <= max_s; ++s) {
      const CohomologyGroup g = group_cohomology(Involution::w15, s, wt);
      bool ok;
      if (s == 0) {
        ok = g.free_rank == static_cast<std::size_t>(N(wt)) && g.torsion_generators.empty();
      } else if (s % 2) {
        ok = g.free_rank == 0 && g.torsion_generators.empty();
      } else {
        ok = g.free_rank == 0 && g.torsion_generators.size() == static_cast<std::size_t>(N(wt) - N(wt - 6)) &&
             std::all_of(g.torsion_generators.begin(), g.torsion_generators.end(),
                         [](const auto& p) { return p.second == 2; });
      }
      ++checked;
      if (!ok) bad.push_back("(" + std::to_string(s) + ", " + std::to_string(2 * wt) + "): " + g.str());
    }
  r.add("presentation", "H* = Z2[a1, a3, tau] / (2 tau, G tau) in weights <= " + std::to_string(max_weight),
        bad.empty(), std::to_string(checked) + " bidegrees" + (bad.empty() ? "" : "; " + detail::join(bad)));
  const CohomologyGroup tau = group_cohomology(Involution::w15, 2, 0);
  r.add("tau", "(s, t) = (2, 0) is F2 tau", tau.f2_dimension() == 1 && tau.free_rank == 0, tau.str());
  const CohomologyGroup six = group_cohomology(Involution::w15, 2, 6);
  r.add("(2, 12)", "tau times the weight-6 slice modulo G tau", six.f2_dimension() == 2, six.str());

  std::vector<std::string> traces;
  bool traces_ok = w15_trace(2) == 1;
  traces.push_back("2: " + std::to_string(w15_trace(2)));
  for (int wt = 4; wt <= max_weight; wt += 2) {
    traces_ok = traces_ok && w15_trace(wt) == 2;
    traces.push_back(std::to_string(wt) + ": " + std::to_string(w15_trace(wt)));
  }
  r.add("traces", "trace of w15 is 1 in weight 2 and 2 in even weights 4..24", traces_ok, detail::join(traces, 20));

  // localizations of the tau-part F2[a1, a3] / G: stable ranks of x^m
  auto quotient_basis = [](int wt) {
    // a1^i a3^j with j in {0, 1} is a basis of F2[a1, a3] / G in weight wt
    std::vector<FormMonomial> b;
    for (int j = 0; j <= 1; ++j)
      if (wt - 3 * j >= 0) b.push_back({wt - 3 * j, j, 0});
    return b;
  };
  auto normal_form = [](F2Poly p) {
    // a3^2 = a1^6 + a1^3 a3 mod G
    F2Poly out;
    while (!p.empty()) {
      FormMonomial m = *p.rbegin();
      p.erase(m);
      if (m.j < 2) {
        if (!out.erase(m)) out.insert(m);
        continue;
      }
      for (FormMonomial t : {FormMonomial{m.i + 6, m.j - 2, 0}, FormMonomial{m.i + 3, m.j - 1, 0}})
        if (!p.erase(t)) p.insert(t);
    }
    return out;
  };
  for (const auto& [name, x] : std::vector<std::pair<std::string, FormMonomial>>{
           {"a1", {1, 0, 0}}, {"a3", {0, 1, 0}}, {"a1 a3", {1, 1, 0}}}) {
    bool ok = true;
    std::string detail;
    for (int wt = 30; wt < 36; ++wt) {
      const int shift = 4 * x.weight();
      auto src = quotient_basis(wt), dst = quotient_basis(wt + shift);
      std::map<FormMonomial, std::size_t> idx;
      for (std::size_t q = 0; q < dst.size(); ++q) idx[dst[q]] = q;
      std::vector<F2Vector> cols;
      for (const auto& m : src) {
        F2Vector col(dst.size());
        for (const auto& t : normal_form({{m.i + 4 * x.i, m.j + 4 * x.j, 0}})) col.flip(idx.at(t));
        cols.push_back(col);
      }
      const auto rk = f2_rank(cols, dst.size());
      ok = ok && rk == 2;
      detail += (detail.empty() ? "" : ", ") + std::to_string(rk);
    }
    r.add("localized at " + name, "tau-part of the localization has dimension 2 in each weight", ok,
          "stable ranks " + detail);
  }
  return r;
}

/// Stem-by-stem F2 dimensions of the last page: (lattice rank, F2 dimension above the zero-line).
inline std::pair<std::size_t, std::size_t> stem_dimensions(const SpectralSequence& e, int stem) {
  std::pair<std::size_t, std::size_t> out{e.dimension(0, stem), 0};
  for (int s = 1; s <= e.window().fil_cap; ++s) out.second += e.dimension(s, stem);
  return out;
}

/// E-infinity of the tau ideal against two copies of the KO sequence shifted by 2.
inline Report tau_ideal_ss(SSWindow w, ChartReport* chart = nullptr) {
  Report r("tau ideal");
  SpectralSequence tau(std::make_shared<TauIdealModel>(), w);
  tau.run();
  SSWindow kw = w;
  kw.stem_min -= 2;
  kw.stem_max -= 2;
  SpectralSequence ko(std::make_shared<KOModel>(), kw);
  ko.run();
  if (chart) *chart = make_chart(tau, "tau");
  std::vector<std::string> bad, bad_pi;
  for (int n = w.stem_min; n <= w.stem_max; ++n) {
    for (int s = 0; s <= w.fil_cap; ++s)
      if (tau.dimension(s, n) != 2 * ko.dimension(s, n - 2))
        bad.push_back(detail::cell_name(s, n) + ": " + std::to_string(tau.dimension(s, n)) + " vs 2 x " +
                      std::to_string(ko.dimension(s, n - 2)));
    // pi_{n-2} KO tensor Z4
    const int q = floor_mod(n - 2, 8);
    const std::pair<std::size_t, std::size_t> want =
        q == 0 || q == 4 ? std::pair<std::size_t, std::size_t>{2, 0}
                         : (q == 1 || q == 2 ? std::pair<std::size_t, std::size_t>{0, 2}
                                             : std::pair<std::size_t, std::size_t>{0, 0});
    if (stem_dimensions(tau, n) != want) bad_pi.push_back("stem " + std::to_string(n));
  }
  r.add("two copies of KO", "E-infinity(tau ideal) in (s, n) = 2 x E-infinity(KO) in (s, n - 2)", bad.empty(),
        detail::join(bad));
  r.add("kernel pattern", "pi_*(Sigma^2 KO) tensor Z4 stem by stem", bad_pi.empty(), detail::join(bad_pi));
  auto d = TauIdealModel().differential(3, {0, 0, 0, 0, 1, 0});
  r.add("d3(tau)", "eta^3 a1^{-2} tau = z^3 a1 tau", d && d->k == 3 && d->i == 1);
  if (const auto* c = tau.cell(0, -2); c && w.interior(0, -2))
    r.add("tau is not a permanent cycle", "tau supports d3; only 2 tau survives in stem -2", c->dim() == 0);
  return r;
}

/// Image part (classes that are not multiples of a6) and kernel part (the tau ideal), stem by stem.
inline Report final_comparison(SSWindow w) {
  Report r("final comparison");
  SpectralSequence plain = compute_Einfty(w);
  SpectralSequence image = compute_Einfty(w, Variant::no_a6);
  std::vector<std::string> bad;
  for (int n = w.stem_min; n <= w.stem_max; ++n)
    for (int s = 0; s <= w.fil_cap; ++s) {
      std::vector<std::string> sums;
      auto all = detail::monomial_classes(plain, s, n, sums);
      auto img = detail::monomial_classes(image, s, n, sums);
      std::set<SSMonomial> a, b;
      for (const auto& [m, edge] : all)
        if (!m.e && !edge) a.insert(m);
      for (const auto& [m, edge] : img)
        if (!edge) b.insert(m);
      if (a != b || !sums.empty()) bad.push_back(detail::cell_name(s, n));
    }
  r.add("image part", "E-infinity of the a6-free tower = classes that are not multiples of a6", bad.empty(),
        detail::join(bad));
  Report k = tau_ideal_ss(w);
  r.add("kernel part", "tau ideal = two copies of shifted KO", k.all_passed(), k.all_passed() ? "" : k.text());
  return r;
}

}  // namespace tafd
