#pragma once

// Dense integer linear algebra: saturated kernels, Smith normal form with the
// left transform, quotient lattices ker/im, and ranks over Q and F2.

#include "tafd/rational.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tafd {

using IntVector = std::vector<Integer>;

/// Row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
    return m;
  }
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c].at(r);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  IntVector column(std::size_t c) const {
    IntVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix out(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += x(i, k) * y(k, j);
      }
    return out;
  }
  friend IntMatrix operator+(IntMatrix x, const IntMatrix& y) {
    for (std::size_t k = 0; k < x.a_.size(); ++k) x.a_[k] += y.a_[k];
    return x;
  }
  friend IntMatrix operator-(IntMatrix x, const IntMatrix& y) {
    for (std::size_t k = 0; k < x.a_.size(); ++k) x.a_[k] -= y.a_[k];
    return x;
  }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Integer& x) { return x == 0; });
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  /// row_i += f * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& f) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += f * (*this)(j, c);
  }
  /// col_i += f * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& f) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += f * (*this)(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> a_;
};

namespace detail {
/// Floor division for integers.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
}  // namespace detail

/// Basis (as columns) of {x in Z^n : A x = 0}; the basis spans a saturated lattice.
inline IntMatrix integer_kernel(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  IntMatrix W = A;
  IntMatrix T = IntMatrix::identity(n);  // W = A T throughout
  std::size_t pivot_col = 0;
  for (std::size_t r = 0; r < m && pivot_col < n; ++r) {
    // Euclid on row r across columns pivot_col..n-1.
    for (;;) {
      std::size_t best = n;
      for (std::size_t c = pivot_col; c < n; ++c)
        if (W(r, c) != 0 && (best == n || abs(W(r, c)) < abs(W(r, best)))) best = c;
      if (best == n) break;
      if (best != pivot_col) {
        W.swap_cols(best, pivot_col);
        T.swap_cols(best, pivot_col);
      }
      bool done = true;
      for (std::size_t c = pivot_col + 1; c < n; ++c) {
        if (W(r, c) == 0) continue;
        Integer q = detail::floor_div(W(r, c), W(r, pivot_col));
        W.add_col(c, pivot_col, -q);
        T.add_col(c, pivot_col, -q);
        if (W(r, c) != 0) done = false;
      }
      if (done) {
        ++pivot_col;
        break;
      }
    }
  }
  std::vector<IntVector> basis;
  for (std::size_t c = pivot_col; c < n; ++c) basis.push_back(T.column(c));
  return IntMatrix::from_columns(n, basis);
}

struct SmithForm {
  std::vector<Integer> diagonal;  // nonzero invariant factors d_1 | d_2 | ...
  IntMatrix left_inverse;          // P with P^{-1} A V = diag; columns of P are adapted generators
};

/// Smith normal form of A. Returns the nonzero invariant factors and the matrix
/// P = U^{-1}, where U A V = D.
inline SmithForm smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  IntMatrix D = A;
  IntMatrix P = IntMatrix::identity(m);
  // A row operation row_i += f row_j on D corresponds to col_j -= f col_i on P.
  auto row_add = [&](std::size_t i, std::size_t j, const Integer& f) {
    D.add_row(i, j, f);
    P.add_col(j, i, -f);
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    D.swap_rows(i, j);
    P.swap_cols(i, j);
  };
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // Choose the smallest nonzero entry in the remaining block as pivot.
    std::size_t pr = m, pc = n;
    for (std::size_t r = t; r < m; ++r)
      for (std::size_t c = t; c < n; ++c)
        if (D(r, c) != 0 && (pr == m || abs(D(r, c)) < abs(D(pr, pc)))) pr = r, pc = c;
    if (pr == m) break;
    row_swap(t, pr);
    D.swap_cols(t, pc);
    for (;;) {
      bool clean = true;
      for (std::size_t r = t + 1; r < m; ++r) {
        if (D(r, t) == 0) continue;
        Integer q = detail::floor_div(D(r, t), D(t, t));
        row_add(r, t, -q);
        if (D(r, t) != 0) {
          row_swap(t, r);
          clean = false;
        }
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (D(t, c) == 0) continue;
        Integer q = detail::floor_div(D(t, c), D(t, t));
        D.add_col(c, t, -q);
        if (D(t, c) != 0) {
          D.swap_cols(t, c);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility: the pivot must divide the whole remaining block.
      bool divides = true;
      for (std::size_t r = t + 1; r < m && divides; ++r)
        for (std::size_t c = t + 1; c < n; ++c)
          if (D(r, c) % D(t, t) != 0) {
            row_add(t, r, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      for (std::size_t r = 0; r < m; ++r) P(r, t) = -P(r, t);
    }
  }
  SmithForm out;
  for (std::size_t k = 0; k < t; ++k) out.diagonal.push_back(D(k, k));
  out.left_inverse = P;
  return out;
}

inline std::size_t rank_over_q(const IntMatrix& A) { return smith_normal_form(A).diagonal.size(); }

inline std::size_t rank_mod2(const IntMatrix& A) {
  std::vector<std::vector<int>> a(A.rows(), std::vector<int>(A.cols()));
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) a[r][c] = mod2(Rational(A(r, c)));
  std::size_t rank = 0;
  for (std::size_t c = 0; c < A.cols() && rank < A.rows(); ++c) {
    std::size_t p = rank;
    while (p < A.rows() && a[p][c] == 0) ++p;
    if (p == A.rows()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < A.rows(); ++r)
      if (r != rank && a[r][c])
        for (std::size_t k = c; k < A.cols(); ++k) a[r][k] ^= a[rank][k];
    ++rank;
  }
  return rank;
}

/// Incremental row echelon basis of a subspace of Q^n.
class RationalSpan {
 public:
  explicit RationalSpan(std::size_t n) : n_(n) {}

  std::size_t rank() const { return rows_.size(); }

  /// Adds v; returns false when v already lies in the span.
  bool add(const IntVector& v) {
    std::vector<Rational> w(n_);
    for (std::size_t k = 0; k < n_; ++k) w[k] = Rational(v.at(k));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = w[pivots_[r]];
      if (f == 0) continue;
      for (std::size_t k = pivots_[r]; k < n_; ++k) w[k] -= f * rows_[r][k];
    }
    std::size_t p = 0;
    while (p < n_ && w[p] == 0) ++p;
    if (p == n_) return false;
    const Rational inv = tafd::inverse(w[p]);
    for (auto& x : w) x *= inv;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = rows_[r][p];
      if (f == 0) continue;
      for (std::size_t k = 0; k < n_; ++k) rows_[r][k] -= f * w[k];
    }
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
  }

 private:
  std::size_t n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Solve K C = B for integer C, where K has full column rank and the columns
/// of B lie in the integer span of the columns of K.
inline IntMatrix solve_in_lattice(const IntMatrix& K, const IntMatrix& B) {
  const std::size_t n = K.rows(), k = K.cols(), m = B.cols();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(k + m));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = Rational(K(r, c));
    for (std::size_t c = 0; c < m; ++c) a[r][k + c] = Rational(B(r, c));
  }
  std::vector<std::size_t> pivot_row(k);
  std::size_t row = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = row;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::invalid_argument("lattice basis is not of full column rank");
    std::swap(a[p], a[row]);
    Rational inv = tafd::inverse(a[row][c]);
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t j = 0; j < k + m; ++j) a[r][j] -= f * a[row][j];
    }
    pivot_row[c] = row++;
  }
  for (std::size_t r = row; r < n; ++r)
    for (std::size_t j = k; j < k + m; ++j)
      if (a[r][j] != 0) throw std::invalid_argument("vector outside the span of the lattice");
  IntMatrix C(k, m);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < m; ++j) {
      const Rational& x = a[pivot_row[c]][k + j];
      if (denominator(x) != 1) throw std::invalid_argument("vector outside the lattice");
      C(c, j) = numerator(x);
    }
  return C;
}

/// Structure of the subquotient ker(A) / im(B), where A B = 0.
struct Subquotient {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;          // invariant factors > 1
  std::vector<IntVector> torsion_generators;  // in ambient coordinates, aligned with `torsion`
  std::vector<IntVector> free_generators;     // complements the image, ambient coordinates
};

inline Subquotient kernel_mod_image(const IntMatrix& A, const IntMatrix& B) {
  if (!(A * B).is_zero()) throw std::invalid_argument("kernel_mod_image needs A B = 0");
  IntMatrix K = integer_kernel(A);
  Subquotient out;
  if (K.cols() == 0) return out;
  IntMatrix C = B.cols() == 0 ? IntMatrix(K.cols(), 0) : solve_in_lattice(K, B);
  SmithForm s = smith_normal_form(C);
  IntMatrix G = K * s.left_inverse;  // adapted generators in ambient coordinates
  for (std::size_t k = 0; k < K.cols(); ++k) {
    if (k < s.diagonal.size()) {
      if (s.diagonal[k] == 1) continue;
      out.torsion.push_back(s.diagonal[k]);
      out.torsion_generators.push_back(G.column(k));
    } else {
      ++out.free_rank;
      out.free_generators.push_back(G.column(k));
    }
  }
  return out;
}

/// A finitely generated Z_(2)-submodule of Q^n, kept in echelon form with each
/// pivot entry a power of 2.
class Z2Lattice {
 public:
  using Vector = std::vector<Rational>;

  explicit Z2Lattice(std::size_t n) : n_(n) {}

  std::size_t ambient() const { return n_; }
  std::size_t rank() const { return rows_.size(); }

  void add(Vector v) {
    check(v);
    while (true) {
      auto p = first_nonzero(v);
      if (p == n_) return;
      normalize(v, p);
      auto it = rows_.find(p);
      if (it == rows_.end()) {
        rows_.emplace(p, std::move(v));
        return;
      }
      if (two_valuation(v[p]) < two_valuation(it->second[p])) std::swap(it->second, v);
      const Rational f = v[p] / it->second[p];
      for (std::size_t c = p; c < n_; ++c) v[c] -= f * it->second[c];
    }
  }

  bool contains(Vector v) const {
    check(v);
    while (true) {
      auto p = first_nonzero(v);
      if (p == n_) return true;
      auto it = rows_.find(p);
      if (it == rows_.end() || two_valuation(v[p]) < two_valuation(it->second[p])) return false;
      const Rational f = v[p] / it->second[p];
      for (std::size_t c = p; c < n_; ++c) v[c] -= f * it->second[c];
    }
  }

  bool contains(const Z2Lattice& o) const {
    for (const auto& [p, r] : o.rows_)
      if (!contains(r)) return false;
    return true;
  }
  friend bool operator==(const Z2Lattice& a, const Z2Lattice& b) {
    return a.n_ == b.n_ && a.contains(b) && b.contains(a);
  }

  /// log2 of the index in Z_(2)^n for a full-rank lattice inside Z_(2)^n.
  int index_exponent() const {
    if (rows_.size() != n_) throw ArithmeticError("index of a lattice that is not of full rank");
    int out = 0;
    for (const auto& [p, r] : rows_) out += two_valuation(r[p]);
    return out;
  }

 private:
  void check(const Vector& v) const {
    if (v.size() != n_) throw std::invalid_argument("Z2Lattice: wrong vector length");
    for (const auto& x : v)
      if (!is_two_local(x)) throw ArithmeticError("Z2Lattice: entry with even denominator");
  }
  std::size_t first_nonzero(const Vector& v) const {
    for (std::size_t c = 0; c < n_; ++c)
      if (v[c] != 0) return c;
    return n_;
  }
  static void normalize(Vector& v, std::size_t p) {
    Rational unit = v[p];
    const int a = two_valuation(unit);
    for (int k = 0; k < std::abs(a); ++k) unit = a > 0 ? unit / 2 : unit * 2;
    for (auto& x : v) x /= unit;
  }

  std::size_t n_;
  std::map<std::size_t, Vector> rows_;
};

}  // namespace tafd
