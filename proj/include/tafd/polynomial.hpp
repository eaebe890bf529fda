#pragma once

// Sparse multivariate Laurent polynomials with rational coefficients.

#include "tafd/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tafd {

class Polynomial {
 public:
  using Exponent = std::vector<int>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  Polynomial(std::size_t nvars, const Rational& c) : nvars_(nvars) {
    if (c != 0) terms_[Exponent(nvars, 0)] = c;
  }

  static Polynomial variable(std::size_t nvars, std::size_t k, int power = 1) {
    Polynomial p(nvars);
    Exponent e(nvars, 0);
    e.at(k) = power;
    p.terms_[e] = 1;
    return p;
  }
  static Polynomial monomial(const Exponent& e, const Rational& c = 1) {
    Polynomial p(e.size());
    if (c != 0) p.terms_[e] = c;
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    a.check(b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    a.check(b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial(a.nvars_) - a; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e = ea;
        for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend Polynomial operator*(const Rational& s, const Polynomial& a) { return Polynomial(a.nvars_, s) * a; }
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial pow(unsigned n) const {
    Polynomial out(nvars_, 1);
    for (unsigned k = 0; k < n; ++k) out = out * *this;
    return out;
  }

  /// Formal partial derivative in variable k.
  Polynomial derivative(std::size_t k) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[k] == 0) continue;
      Exponent d = e;
      d[k] -= 1;
      out.add_term(d, c * e[k]);
    }
    return out;
  }

  /// Replace variable k by q (non-negative powers of variable k only).
  Polynomial substitute(std::size_t k, const Polynomial& q) const {
    check(q);
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[k] < 0) throw std::invalid_argument("substitute into a negative power");
      Exponent rest = e;
      rest[k] = 0;
      out += monomial(rest, c) * q.pow(static_cast<unsigned>(e[k]));
    }
    return out;
  }

  /// Evaluate with values in any ring constructible from Rational.
  template <class T>
  T evaluate(const std::vector<T>& values) const {
    if (values.size() != nvars_) throw std::invalid_argument("evaluate: wrong number of values");
    T out(Rational(0));
    for (const auto& [e, c] : terms_) {
      T term(c);
      for (std::size_t k = 0; k < nvars_; ++k) {
        if (e[k] < 0) throw std::invalid_argument("evaluate: negative exponent");
        for (int j = 0; j < e[k]; ++j) term = term * values[k];
      }
      out = out + term;
    }
    return out;
  }

  /// Degree in variable k (max exponent), or a very negative number for zero.
  int degree(std::size_t k) const {
    int d = -1000000;
    for (const auto& [e, c] : terms_) d = std::max(d, e[k]);
    return d;
  }

  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string mono;
      for (std::size_t k = 0; k < nvars_; ++k) {
        if (e[k] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names.at(k);
        if (e[k] != 1) mono += "^" + std::to_string(e[k]);
      }
      std::string coef = to_string(c);
      if (!out.empty()) out += " + ";
      if (mono.empty()) {
        out += coef;
      } else {
        out += (c == 1 ? "" : "(" + coef + ")*") + mono;
      }
    }
    return out;
  }

 private:
  void check(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials over different variable sets");
  }
  void add_term(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::size_t nvars_ = 0;
  std::map<Exponent, Rational> terms_;
};

}  // namespace tafd
