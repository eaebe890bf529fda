#pragma once

// The graded ring R = Z_2[a1, a3, a6]/f(a6) of automorphic forms on the
// double cover, with
//   G = a1^6 + a1^3 a3 + a3^2,   f(a6) = a6^2 + a6 G + G^2 - (5/9) a1^6 G,
// weights 1, 3, 6. Monomials may carry negative powers of a1 and a3 so that
// the localizations and Cech classes live in the same type.

#include "tafd/intlinalg.hpp"
#include "tafd/polynomial.hpp"
#include "tafd/rational.hpp"
#include "tafd/report.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tafd {

struct FormMonomial {
  int i = 0;  // power of a1
  int j = 0;  // power of a3
  int e = 0;  // power of a6

  int weight() const { return i + 3 * j + 6 * e; }
  std::string str() const {
    std::string out;
    auto put = [&out](const char* name, int p) {
      if (p == 0) return;
      if (!out.empty()) out += " ";
      out += name;
      if (p != 1) out += "^" + std::to_string(p);
    };
    put("a1", i);
    put("a3", j);
    put("a6", e);
    return out.empty() ? "1" : out;
  }
  friend FormMonomial operator*(const FormMonomial& a, const FormMonomial& b) {
    return {a.i + b.i, a.j + b.j, a.e + b.e};
  }
  friend auto operator<=>(const FormMonomial&, const FormMonomial&) = default;
};

class AutomorphicPoly {
 public:
  AutomorphicPoly() = default;
  AutomorphicPoly(const Rational& c) { add_term({}, c); }  // NOLINT(google-explicit-constructor)
  AutomorphicPoly(int c) : AutomorphicPoly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static AutomorphicPoly monomial(const FormMonomial& m, const Rational& c = 1) {
    AutomorphicPoly p;
    p.add_term(m, c);
    return p;
  }
  static AutomorphicPoly a1(int power = 1) { return monomial({power, 0, 0}); }
  static AutomorphicPoly a3(int power = 1) { return monomial({0, power, 0}); }
  static AutomorphicPoly a6() { return monomial({0, 0, 1}); }

  const std::map<FormMonomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const FormMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  int a6_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.e);
    return d;
  }
  bool is_two_local() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return tafd::is_two_local(t.second); });
  }
  /// The common weight of all terms, or nullopt for the zero or an inhomogeneous polynomial.
  std::optional<int> weight() const {
    if (terms_.empty()) return std::nullopt;
    int w = terms_.begin()->first.weight();
    for (const auto& [m, c] : terms_)
      if (m.weight() != w) return std::nullopt;
    return w;
  }

  friend AutomorphicPoly operator+(AutomorphicPoly a, const AutomorphicPoly& b) {
    for (const auto& [m, c] : b.terms_) a.add_term(m, c);
    return a;
  }
  friend AutomorphicPoly operator-(AutomorphicPoly a, const AutomorphicPoly& b) {
    for (const auto& [m, c] : b.terms_) a.add_term(m, -c);
    return a;
  }
  friend AutomorphicPoly operator-(const AutomorphicPoly& a) { return AutomorphicPoly() - a; }
  AutomorphicPoly scaled(const Rational& s) const {
    AutomorphicPoly out;
    for (const auto& [m, c] : terms_) out.add_term(m, c * s);
    return out;
  }
  AutomorphicPoly& operator+=(const AutomorphicPoly& b) { return *this = *this + b; }

  /// Product without applying the relation f(a6) = 0.
  friend AutomorphicPoly multiply_unreduced(const AutomorphicPoly& a, const AutomorphicPoly& b) {
    AutomorphicPoly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }
  /// Product in R: the unreduced product followed by reduce.
  friend AutomorphicPoly operator*(const AutomorphicPoly& a, const AutomorphicPoly& b);

  friend bool operator==(const AutomorphicPoly&, const AutomorphicPoly&) = default;

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      std::string mono = m.str();
      bool neg = c < 0;
      Rational a = neg ? Rational(-c) : c;
      if (!out.empty()) out += neg ? " - " : " + ";
      else if (neg) out += "-";
      if (mono == "1") {
        out += to_string(a);
      } else {
        out += (a == 1 ? "" : (denominator(a) == 1 ? to_string(a) : "(" + to_string(a) + ")") + " ") + mono;
      }
    }
    return out;
  }

 private:
  void add_term(const FormMonomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<FormMonomial, Rational> terms_;
};

namespace forms {

/// G = a1^6 + a1^3 a3 + a3^2.
inline AutomorphicPoly G() {
  return AutomorphicPoly::monomial({6, 0, 0}) + AutomorphicPoly::monomial({3, 1, 0}) +
         AutomorphicPoly::monomial({0, 2, 0});
}

/// The value of a6^2 modulo f: -a6 G - G^2 + (5/9) a1^6 G.
inline AutomorphicPoly a6_squared() {
  const AutomorphicPoly g = G();
  return -multiply_unreduced(AutomorphicPoly::a6(), g) - multiply_unreduced(g, g) +
         multiply_unreduced(AutomorphicPoly::a1(6), g).scaled(Rational(5, 9));
}

/// f(a6) as an unreduced polynomial.
inline AutomorphicPoly f() {
  const AutomorphicPoly g = G(), a6 = AutomorphicPoly::a6();
  return multiply_unreduced(a6, a6) + multiply_unreduced(a6, g) + multiply_unreduced(g, g) -
         multiply_unreduced(AutomorphicPoly::a1(6), g).scaled(Rational(5, 9));
}

}  // namespace forms

/// Rewrites a6^2 by the relation until every term has a6-degree at most 1.
inline AutomorphicPoly reduce(const AutomorphicPoly& p) {
  static const AutomorphicPoly sq = forms::a6_squared();
  AutomorphicPoly cur = p;
  while (cur.a6_degree() >= 2) {
    AutomorphicPoly next;
    for (const auto& [m, c] : cur.terms()) {
      if (m.e < 2) {
        next += AutomorphicPoly::monomial(m, c);
      } else {
        next += multiply_unreduced(AutomorphicPoly::monomial({m.i, m.j, m.e - 2}, c), sq);
      }
    }
    cur = next;
  }
  return cur;
}

inline AutomorphicPoly operator*(const AutomorphicPoly& a, const AutomorphicPoly& b) {
  return reduce(multiply_unreduced(a, b));
}

inline AutomorphicPoly power(const AutomorphicPoly& p, int n) {
  AutomorphicPoly out(1);
  for (int k = 0; k < n; ++k) out = out * p;
  return out;
}

enum class Involution { deck, w15 };

inline std::string to_string(Involution a) { return a == Involution::deck ? "deck" : "w15"; }

/// a1 -> -a1, a3 -> -a3, a6 -> a6.
inline AutomorphicPoly deck_involution(const AutomorphicPoly& p) {
  AutomorphicPoly out;
  for (const auto& [m, c] : p.terms()) out += AutomorphicPoly::monomial(m, (m.i + m.j) % 2 == 0 ? c : Rational(-c));
  return out;
}

/// a1 -> a1, a3 -> a3, a6 -> -a6 - G, then reduce.
inline AutomorphicPoly w15_involution(const AutomorphicPoly& p) {
  const AutomorphicPoly image = -AutomorphicPoly::a6() - forms::G();
  AutomorphicPoly out;
  for (const auto& [m, c] : p.terms())
    out += AutomorphicPoly::monomial({m.i, m.j, 0}, c) * power(image, m.e);
  return out;
}

inline AutomorphicPoly apply_involution(Involution a, const AutomorphicPoly& p) {
  return a == Involution::deck ? deck_involution(p) : w15_involution(p);
}

inline Report verify_f_derivation() {
  Report r("f(a6) from the curve equation");
  // Variables (a1, a3, a6) are reused as (a1, u, v) after the substitution.
  const Polynomial a1 = Polynomial::variable(3, 0), u = Polynomial::variable(3, 1), v = Polynomial::variable(3, 2);
  const Polynomial one(3, 1);
  const Polynomial G = a1.pow(6) + a1.pow(3) * u + u.pow(2);
  const Polynomial fpoly = v.pow(2) + v * G + G.pow(2) - Rational(5, 9) * a1.pow(6) * G;
  const Polynomial U = one + u + u.pow(2);
  const Polynomial substituted = fpoly.substitute(1, u * a1.pow(3)).substitute(2, U * v * a1.pow(6));
  const Polynomial expected = a1.pow(12) * U * (U * (v.pow(2) + v + one) - Polynomial(3, Rational(5, 9)));
  const Polynomial residual = substituted - expected;
  const std::vector<std::string> names{"a1", "u", "v"};
  r.add("identity", "f(u a1^3, (1+u+u^2) v a1^6) = a1^12 (1+u+u^2)[(u^2+u+1)(v^2+v+1) - 5/9]", residual.is_zero(),
        residual.is_zero() ? "" : "residual " + residual.str(names));

  auto v2_coefficient = [&](const Polynomial& p) {
    Polynomial out(3);
    for (const auto& [e, c] : p.terms())
      if (e[2] == 2) out += Polynomial::monomial({e[0], e[1], 0}, c);
    return out;
  };
  r.add("v^2 coefficient", "a1^12 (1+u+u^2)^2", v2_coefficient(substituted) == a1.pow(12) * U.pow(2));

  const Polynomial at_q = substituted.substitute(1, Polynomial(3));
  r.add("u = 0", "f becomes a1^12 (v^2 + v + 4/9)",
        at_q == a1.pow(12) * (v.pow(2) + v + Polynomial(3, Rational(4, 9))));

  r.add("f reduces to 0", "reduce(f(a6)) = 0", reduce(forms::f()).is_zero());
  const AutomorphicPoly a6 = AutomorphicPoly::a6();
  r.add("confluence", "reduce(a6^3) = reduce(reduce(a6^2) a6)",
        reduce(multiply_unreduced(multiply_unreduced(a6, a6), a6)) == reduce(multiply_unreduced(reduce(multiply_unreduced(a6, a6)), a6)));
  return r;
}

/// All monomials a1^i a3^j a6^e (i, j >= 0, e in {0, 1}) of weight t.
class WeightSlice {
 public:
  explicit WeightSlice(int t) : weight_(t) {
    for (int e = 0; e <= 1; ++e)
      for (int j = 0; 3 * j + 6 * e <= t; ++j) basis_.push_back({t - 3 * j - 6 * e, j, e});
  }
  WeightSlice(int t, std::vector<FormMonomial> basis) : weight_(t), basis_(std::move(basis)) {}

  int weight() const { return weight_; }
  const std::vector<FormMonomial>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }

  /// Integer coordinates of p; throws when p leaves the span or is not integral.
  IntVector coordinates(const AutomorphicPoly& p) const {
    IntVector v(basis_.size());
    for (const auto& [m, c] : p.terms()) {
      auto it = std::find(basis_.begin(), basis_.end(), m);
      if (it == basis_.end()) throw ArithmeticError("term " + m.str() + " outside the weight slice");
      if (denominator(c) != 1) throw ArithmeticError("non-integral coefficient in weight slice");
      v[static_cast<std::size_t>(it - basis_.begin())] = numerator(c);
    }
    return v;
  }
  AutomorphicPoly element(const IntVector& v) const {
    AutomorphicPoly out;
    for (std::size_t k = 0; k < basis_.size(); ++k) out += AutomorphicPoly::monomial(basis_[k], Rational(v.at(k)));
    return out;
  }
  /// Matrix (columns = images of basis elements) of an endomorphism.
  IntMatrix matrix_of(const std::function<AutomorphicPoly(const AutomorphicPoly&)>& map) const {
    std::vector<IntVector> cols;
    for (const auto& m : basis_) cols.push_back(coordinates(map(AutomorphicPoly::monomial(m))));
    return IntMatrix::from_columns(basis_.size(), cols);
  }
  IntMatrix involution_matrix(Involution a) const {
    return matrix_of([a](const AutomorphicPoly& p) { return apply_involution(a, p); });
  }

 private:
  int weight_;
  std::vector<FormMonomial> basis_;
};

inline long long w15_trace(int t) {
  if (t < 2 || t % 2 != 0) throw std::invalid_argument("w15_trace needs an even weight t >= 2");
  IntMatrix m = WeightSlice(t).involution_matrix(Involution::w15);
  Integer tr = 0;
  for (std::size_t k = 0; k < m.rows(); ++k) tr += m(k, k);
  return static_cast<long long>(tr);
}

struct CohomologyGroup {
  int s = 0;
  int t = 0;
  std::size_t free_rank = 0;
  std::vector<std::pair<std::string, Integer>> torsion_generators;  // (generator, order)
  std::vector<std::string> free_generators;

  std::size_t f2_dimension() const { return torsion_generators.size(); }
  std::string str() const {
    std::string out;
    if (free_rank) out += "Z2^" + std::to_string(free_rank);
    for (const auto& [g, n] : torsion_generators) out += (out.empty() ? "" : " + ") + ("Z/" + n.str() + "<" + g + ">");
    return out.empty() ? "0" : out;
  }
  /// Same free rank and the same torsion orders.
  bool isomorphic_to(const CohomologyGroup& o) const {
    auto orders = [](const CohomologyGroup& c) {
      std::vector<Integer> v;
      for (const auto& [g, n] : c.torsion_generators) v.push_back(n);
      std::sort(v.begin(), v.end());
      return v;
    };
    return free_rank == o.free_rank && orders(*this) == orders(o);
  }
};

namespace detail {

inline std::string combination_name(const IntVector& v, const std::vector<FormMonomial>& basis, bool mod2) {
  AutomorphicPoly p;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Integer c = v[k];
    if (mod2) c = c % 2 == 0 ? Integer(0) : Integer(1);
    p += AutomorphicPoly::monomial(basis[k], Rational(c));
  }
  return p.str();
}

}  // namespace detail

/// H^s(C2; M) for an involution sigma on the lattice M with the given basis.
inline CohomologyGroup group_cohomology_of(const IntMatrix& sigma, const std::vector<FormMonomial>& basis, int s,
                                           int t) {
  if (s < 0) throw std::invalid_argument("negative cohomological degree");
  const std::size_t n = basis.size();
  const IntMatrix one = IntMatrix::identity(n);
  if (!(sigma * sigma == one)) throw ArithmeticError("action is not an involution");
  CohomologyGroup out;
  out.s = s;
  out.t = t;
  if (n == 0) return out;
  const IntMatrix minus = one - sigma, plus = one + sigma;
  Subquotient q;
  if (s == 0) {
    q = kernel_mod_image(minus, IntMatrix(n, 0));
  } else if (s % 2 == 0) {
    q = kernel_mod_image(minus, plus);
  } else {
    q = kernel_mod_image(plus, minus);
  }
  out.free_rank = q.free_rank;
  for (const auto& g : q.free_generators) out.free_generators.push_back(detail::combination_name(g, basis, false));
  for (std::size_t k = 0; k < q.torsion.size(); ++k) {
    Integer order = q.torsion[k];
    while (order % 2 == 0) order /= 2;
    if (order != 1) throw ArithmeticError("odd torsion " + q.torsion[k].str() + " in group cohomology");
    out.torsion_generators.emplace_back(detail::combination_name(q.torsion_generators[k], basis, true), q.torsion[k]);
  }
  return out;
}

/// H^s(C2; R_t) for the deck or w15 action on the weight-t forms.
inline CohomologyGroup group_cohomology(Involution a, int s, int t) {
  if (t < 0) return {s, t, 0, {}, {}};
  WeightSlice slice(t);
  return group_cohomology_of(slice.involution_matrix(a), slice.basis(), s, t);
}

struct H1Basis {
  int t = 0;
  int window = 0;
  std::vector<FormMonomial> basis;
  bool torsion_free = true;
  bool stable = true;  // same answer at the next window
};

namespace detail {

/// Cokernel of a1^{-1}R + a3^{-1}R -> (a1 a3)^{-1}R in weight t with |i|, |j| <= L.
inline std::pair<std::vector<FormMonomial>, bool> cech_cokernel(int t, int L) {
  std::vector<FormMonomial> target;
  for (int e = 0; e <= 1; ++e)
    for (int j = -L; j <= L; ++j) {
      int i = t - 3 * j - 6 * e;
      if (i >= -L && i <= L) target.push_back({i, j, e});
    }
  std::vector<IntVector> cols;
  for (std::size_t k = 0; k < target.size(); ++k) {
    const auto& m = target[k];
    IntVector col(target.size());
    col[k] = 1;
    if (m.j >= 0) cols.push_back(col);  // from a1^{-1} R
    col[k] = -1;
    if (m.i >= 0) cols.push_back(col);  // from a3^{-1} R
  }
  IntMatrix image = IntMatrix::from_columns(target.size(), cols);
  SmithForm snf = smith_normal_form(image);
  bool torsion_free = std::all_of(snf.diagonal.begin(), snf.diagonal.end(), [](const Integer& d) { return d == 1; });
  // Monomials extending a basis of the image span the cokernel.
  RationalSpan span(target.size());
  for (const auto& c : cols) span.add(c);
  std::vector<FormMonomial> basis;
  for (std::size_t k = 0; k < target.size(); ++k) {
    IntVector col(target.size());
    col[k] = 1;
    if (span.add(col)) basis.push_back(target[k]);
  }
  return {basis, torsion_free};
}

}  // namespace detail

inline int default_window(int t) { return std::abs(t) + 12; }

/// Basis of H^1(Y; omega^t) from the Mayer-Vietoris (Cech) cokernel.
inline H1Basis h1_mayer_vietoris(int t, int window) {
  auto [basis, torsion_free] = detail::cech_cokernel(t, window);
  auto [next, next_free] = detail::cech_cokernel(t, window + 3);
  return {t, window, basis, torsion_free && next_free, basis == next};
}
inline H1Basis h1_mayer_vietoris(int t) { return h1_mayer_vietoris(t, default_window(t)); }

struct SerrePairing {
  int t = 0;
  std::vector<FormMonomial> h0;  // rows
  std::vector<FormMonomial> h1;  // columns, H^1(omega^{2-t})
  IntMatrix matrix;
};

/// Pairing H^0(omega^t) x H^1(omega^{2-t}) -> H^1(omega^2) = Z_2 D, D = (a1 a3)^{-1} a6.
inline SerrePairing serre_pairing(int t, int window) {
  SerrePairing out;
  out.t = t;
  if (t >= 0) out.h0 = WeightSlice(t).basis();
  out.h1 = h1_mayer_vietoris(2 - t, window).basis;
  out.matrix = IntMatrix(out.h0.size(), out.h1.size());
  const FormMonomial D{-1, -1, 1};
  for (std::size_t a = 0; a < out.h0.size(); ++a)
    for (std::size_t b = 0; b < out.h1.size(); ++b) {
      Rational c = (AutomorphicPoly::monomial(out.h0[a]) * AutomorphicPoly::monomial(out.h1[b])).coefficient(D);
      if (denominator(c) != 1) throw ArithmeticError("non-integral pairing value");
      out.matrix(a, b) = numerator(c);
    }
  return out;
}

namespace detail {
inline bool is_permutation_matrix(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    int ones = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) == 1) ++ones;
      else if (m(r, c) != 0) return false;
    }
    if (ones != 1) return false;
  }
  for (std::size_t c = 0; c < m.cols(); ++c) {
    int ones = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) ones += m(r, c) == 1 ? 1 : 0;
    if (ones != 1) return false;
  }
  return true;
}
}  // namespace detail

inline Report serre_duality_check(int t, int window) {
  Report r("Serre duality, t = " + std::to_string(t));
  const H1Basis h1_2 = h1_mayer_vietoris(2, window);
  r.add("H1(omega^2)", "H^1(Y; omega^2) is free of rank 1 on D = (a1 a3)^-1 a6",
        h1_2.basis == std::vector<FormMonomial>{{-1, -1, 1}} && h1_2.torsion_free && h1_2.stable);
  const H1Basis h1 = h1_mayer_vietoris(2 - t, window);
  r.add("window stable", "the Cech cokernel is unchanged at a larger window", h1.stable && h1.torsion_free);
  SerrePairing p = serre_pairing(t, window);
  r.add("ranks", "rank H^0(omega^t) = rank H^1(omega^(2-t))", p.h0.size() == p.h1.size(),
        std::to_string(p.h0.size()) + " vs " + std::to_string(p.h1.size()));
  bool bijection = p.h0.size() == p.h1.size();
  for (const auto& m : p.h0)
    bijection = bijection && std::count(p.h1.begin(), p.h1.end(), FormMonomial{-1 - m.i, -1 - m.j, 1 - m.e}) == 1;
  r.add("dual monomials", "(k, l, e) -> (-1-k, -1-l, 1-e) is a bijection of bases", bijection);
  bool unimodular = false;
  if (p.h0.size() == p.h1.size()) {
    if (p.h0.empty()) {
      unimodular = true;
    } else {
      SmithForm snf = smith_normal_form(p.matrix);
      unimodular = snf.diagonal.size() == p.h0.size() &&
                   std::all_of(snf.diagonal.begin(), snf.diagonal.end(), [](const Integer& d) { return d == 1; });
    }
  }
  r.add("perfect", "the pairing matrix is invertible over Z_2", unimodular);
  // Entries off the monomial correspondence, if any.
  std::string off;
  for (std::size_t a = 0; a < p.h0.size(); ++a)
    for (std::size_t b = 0; b < p.h1.size(); ++b) {
      const auto& m = p.h0[a];
      bool partner = p.h1[b] == FormMonomial{-1 - m.i, -1 - m.j, 1 - m.e};
      if ((partner && p.matrix(a, b) != 1) || (!partner && p.matrix(a, b) != 0))
        off += (off.empty() ? "" : ", ") + ("<" + m.str() + ", " + p.h1[b].str() + "> = " + p.matrix(a, b).str());
    }
  r.add("permutation", "the pairing matrix in monomial bases is a permutation matrix",
        detail::is_permutation_matrix(p.matrix) || p.h0.empty(), off);
  return r;
}
inline Report serre_duality_check(int t) { return serre_duality_check(t, default_window(2 - t)); }

/// H^s(X^D; omega^t), computed as the even part of H(Y)[zeta]/(2 zeta) and as
/// group cohomology of the deck action on H^0(Y) and H^1(Y); throws if they differ.
inline CohomologyGroup stack_cohomology(int s, int t) {
  if (s < 0) throw std::invalid_argument("negative cohomological degree");
  const std::vector<FormMonomial> h0 = t >= 0 ? WeightSlice(t).basis() : std::vector<FormMonomial>{};
  const std::vector<FormMonomial> h1 = h1_mayer_vietoris(t).basis;

  // (a) parity: a1, a3, zeta odd; a6, D even.
  CohomologyGroup parity{s, t, 0, {}, {}};
  auto take = [&parity](const FormMonomial& m, int zeta, const std::string& suffix) {
    if ((zeta + m.i + m.j) % 2 != 0) return;
    std::string name = (zeta ? (zeta == 1 ? "z " : "z^" + std::to_string(zeta) + " ") : "") + m.str() + suffix;
    if (zeta == 0) {
      ++parity.free_rank;
      parity.free_generators.push_back(name);
    } else {
      parity.torsion_generators.emplace_back(name, Integer(2));
    }
  };
  for (const auto& m : h0) take(m, s, "");
  if (s >= 1)
    for (const auto& m : h1) take(m, s - 1, " [H1]");

  // (b) group cohomology of the deck action.
  CohomologyGroup direct = group_cohomology(Involution::deck, s, t);
  if (s >= 1 && !h1.empty()) {
    WeightSlice cls(t, h1);
    CohomologyGroup extra = group_cohomology_of(cls.involution_matrix(Involution::deck), h1, s - 1, t);
    direct.free_rank += extra.free_rank;
    for (auto& g : extra.free_generators) direct.free_generators.push_back(g + " [H1]");
    for (auto& [g, n] : extra.torsion_generators) direct.torsion_generators.emplace_back(g + " [H1]", n);
  }
  direct.s = s;
  if (!parity.isomorphic_to(direct))
    throw ArithmeticError("stack cohomology: parity count " + parity.str() + " != group cohomology " + direct.str());
  return parity;
}

}  // namespace tafd
