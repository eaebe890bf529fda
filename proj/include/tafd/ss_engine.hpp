#pragma once

// Page-by-page homology of a truncated spectral sequence whose E2 term has a
// monomial basis in each bidegree (s, stem). Cells with s > 0 are F2 vector
// spaces; the s = 0 cell is a Z2-lattice L with 2 Z2^n <= L <= Z2^n, stored as
// its image L / 2 in F2^n. Differentials are given on basis monomials and
// extended linearly mod 2.

#include "tafd/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tafd {

/// z^k a1^i a3^j a6^e, optionally times tau with coefficient copy c in {1, w}.
struct SSMonomial {
  int k = 0;
  int i = 0;
  int j = 0;
  int e = 0;
  int tau = 0;
  int copy = 0;

  auto operator<=>(const SSMonomial&) const = default;

  std::string str() const {
    std::string out = "z^" + std::to_string(k) + " a1^" + std::to_string(i) + " a3^" + std::to_string(j) + " a6^" +
                      std::to_string(e);
    if (tau) out += copy ? " w tau" : " tau";
    return out;
  }
};

inline int floor_mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

using F2Vector = boost::dynamic_bitset<>;

/// A row-reduced set of F2 vectors: each row has a pivot (its first set bit)
/// at which every other row vanishes.
class F2Echelon {
 public:
  explicit F2Echelon(std::size_t n = 0) : n_(n) {}

  std::size_t size() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }
  const std::vector<F2Vector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces v in place; returns the indices of the rows used.
  std::vector<std::size_t> reduce(F2Vector& v) const {
    std::vector<std::size_t> used;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (v.test(pivots_[r])) {
        v ^= rows_[r];
        used.push_back(r);
      }
    return used;
  }

  /// Inserts v after reducing it by `first` and by this echelon; returns whether it was new.
  bool insert(F2Vector v, const F2Echelon* first = nullptr) {
    if (first) first->reduce(v);
    reduce(v);
    if (v.none()) return false;
    std::size_t p = v.find_first();
    for (auto& row : rows_)
      if (row.test(p)) row ^= v;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

 private:
  std::size_t n_;
  std::vector<F2Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Kernel basis of the F2 matrix with the given columns, as combinations of columns.
inline std::vector<F2Vector> f2_kernel(const std::vector<F2Vector>& columns, std::size_t rows) {
  std::vector<F2Vector> kernel;
  std::vector<std::pair<F2Vector, F2Vector>> reduced;  // (column, combination)
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    F2Vector v = columns[c];
    if (v.size() != rows) v.resize(rows);
    F2Vector comb(columns.size());
    comb.set(c);
    for (std::size_t r = 0; r < reduced.size(); ++r)
      if (v.test(piv[r])) {
        v ^= reduced[r].first;
        comb ^= reduced[r].second;
      }
    if (v.none()) {
      kernel.push_back(std::move(comb));
    } else {
      piv.push_back(v.find_first());
      reduced.emplace_back(std::move(v), std::move(comb));
    }
  }
  return kernel;
}

inline std::size_t f2_rank(const std::vector<F2Vector>& columns, std::size_t rows) {
  return columns.size() - f2_kernel(columns, rows).size();
}

/// The E2 term and its differentials.
class SSModel {
 public:
  virtual ~SSModel() = default;
  virtual std::string name() const = 0;
  /// Basis of E2 in bidegree (s, stem), within the model's own truncation.
  virtual std::vector<SSMonomial> basis(int s, int stem) const = 0;
  virtual int stem(const SSMonomial& m) const = 0;
  virtual int filtration(const SSMonomial& m) const { return m.k; }
  virtual int internal_degree(const SSMonomial& m) const { return stem(m) + filtration(m); }
  /// Whether m lies in the untruncated E2 term.
  virtual bool in_universe(const SSMonomial& m) const = 0;
  /// Whether m lies in the truncation the model enumerates.
  virtual bool in_truncation(const SSMonomial& m) const { return in_universe(m); }
  virtual std::vector<int> pages() const = 0;
  /// d_r of a basis monomial, or nothing if it is zero.
  virtual std::optional<SSMonomial> differential(int r, const SSMonomial& m) const = 0;
  /// The monomial whose d_r would be m, if any.
  virtual std::optional<SSMonomial> preimage(int r, const SSMonomial& m) const = 0;
  virtual std::string label(const SSMonomial& m) const { return m.str(); }
  /// Whether the s-line is a Z2-lattice rather than an F2 vector space.
  virtual bool lattice(int s) const { return s == 0; }
};

struct SSWindow {
  int stem_min = 0;
  int stem_max = 0;
  int fil_cap = 0;
  int stem_margin = 2;
  int fil_margin = 14;

  bool interior(int s, int stem) const { return stem >= stem_min && stem <= stem_max && s >= 0 && s <= fil_cap; }
  bool built(int s, int stem) const {
    return stem >= stem_min - stem_margin && stem <= stem_max + stem_margin && s >= 0 && s <= fil_cap + fil_margin;
  }
};

/// One generator of a page in bidegree (s, stem).
struct SSClassRecord {
  int s = 0;
  int t = 0;
  int stem = 0;
  std::vector<SSMonomial> terms;  // representative, a sum of basis monomials
  bool free = false;              // generator of the s = 0 lattice
  int coefficient = 1;            // 2 for the generators 2m of the lattice
  bool inconclusive = false;
  std::string label;  // the representative written in the model's notation

  std::string monomial() const { return label; }
  std::string order() const { return free ? "Z2-free" : "2^1"; }
};

class SpectralSequence {
 public:
  struct Cell {
    int s = 0;
    int stem = 0;
    std::vector<SSMonomial> basis;
    std::map<SSMonomial, std::size_t> index;
    bool lattice = false;
    F2Echelon boundaries;  // B_r inside E2
    F2Echelon cycles;      // representatives of E_r, reduced by B_r
    std::size_t dim() const { return cycles.size(); }
  };
  using Key = std::pair<int, int>;  // (s, stem)
  using Page = std::map<Key, std::pair<F2Echelon, F2Echelon>>;

  SpectralSequence(std::shared_ptr<const SSModel> model, SSWindow window)
      : model_(std::move(model)), window_(window) {
    if (window_.stem_min > window_.stem_max || window_.fil_cap < 0) throw std::invalid_argument("empty window");
    for (int s = 0; s <= window_.fil_cap + window_.fil_margin; ++s)
      for (int n = window_.stem_min - window_.stem_margin; n <= window_.stem_max + window_.stem_margin; ++n) {
        Cell c;
        c.s = s;
        c.stem = n;
        c.basis = model_->basis(s, n);
        for (std::size_t p = 0; p < c.basis.size(); ++p) {
          if (model_->filtration(c.basis[p]) != s || model_->stem(c.basis[p]) != n)
            throw std::logic_error("basis monomial in the wrong bidegree: " + c.basis[p].str());
          c.index[c.basis[p]] = p;
        }
        c.lattice = model_->lattice(s);
        c.boundaries = F2Echelon(c.basis.size());
        c.cycles = F2Echelon(c.basis.size());
        for (std::size_t p = 0; p < c.basis.size(); ++p) {
          F2Vector v(c.basis.size());
          v.set(p);
          c.cycles.insert(v);
        }
        cells_.emplace(Key{s, n}, std::move(c));
      }
    compute_taint();
    snapshot(2);
  }

  const SSModel& model() const { return *model_; }
  const SSWindow& window() const { return window_; }
  int current_page() const { return page_; }

  const Cell* cell(int s, int stem) const {
    auto it = cells_.find({s, stem});
    return it == cells_.end() ? nullptr : &it->second;
  }

  /// F2 vector of a sum of monomials in the cell; monomials outside the cell are dropped.
  F2Vector vector_of(const Cell& c, const std::vector<SSMonomial>& terms) const {
    F2Vector v(c.basis.size());
    for (const auto& m : terms) {
      auto it = c.index.find(m);
      if (it != c.index.end()) v.flip(it->second);
    }
    return v;
  }

  /// Coordinates in the current page of a vector in E2, or nothing if it is not an E_r cycle.
  std::optional<F2Vector> coordinates(const Cell& c, F2Vector v) const { return coordinates_in(c.boundaries, c.cycles, v); }

  static std::optional<F2Vector> coordinates_in(const F2Echelon& b, const F2Echelon& z, F2Vector v) {
    b.reduce(v);
    F2Vector coords(z.size());
    for (std::size_t r : z.reduce(v)) coords.set(r);
    if (v.any()) return std::nullopt;
    return coords;
  }

  /// d_r of an E2 vector of cell x, as an E2 vector of the target cell.
  F2Vector apply(int r, const Cell& x, const F2Vector& v, const Cell& y) const {
    F2Vector out(y.basis.size());
    for (std::size_t p = v.find_first(); p != F2Vector::npos; p = v.find_next(p)) {
      auto d = model_->differential(r, x.basis[p]);
      if (!d) continue;
      auto it = y.index.find(*d);
      if (it != y.index.end()) out.flip(it->second);
    }
    return out;
  }

  /// Matrix of d_r : E_r(x) -> E_r(target) in page coordinates, one column per generator.
  std::vector<F2Vector> differential_matrix(int r, const Cell& x) const {
    std::vector<F2Vector> cols;
    const Cell* y = cell(x.s + r, x.stem - 1);
    for (const auto& z : x.cycles.rows()) {
      if (!y) {
        cols.emplace_back(0);
        continue;
      }
      auto c = coordinates(*y, apply(r, x, z, *y));
      if (!c)
        throw ArithmeticError("d" + std::to_string(r) + " of a class in (" + std::to_string(x.s) + ", " +
                              std::to_string(x.stem) + ") is not a cycle");
      cols.push_back(*c);
    }
    return cols;
  }

  /// Advances E_r to E_{r+1}; checks d_r o d_r = 0 on every cell.
  void step(int r) {
    if (r <= page_ - 1) throw std::logic_error("pages must increase");
    std::map<Key, std::vector<F2Vector>> mats;
    for (const auto& [key, x] : cells_) mats[key] = differential_matrix(r, x);
    for (const auto& [key, cols] : mats) {
      auto next = mats.find({key.first + r, key.second - 1});
      if (next == mats.end()) continue;
      const auto& ncols = next->second;
      for (const auto& col : cols) {
        F2Vector sum(ncols.empty() ? 0 : ncols.front().size());
        for (std::size_t p = col.find_first(); p != F2Vector::npos; p = col.find_next(p))
          if (!ncols[p].empty()) sum ^= ncols[p];
        if (sum.any())
          throw ArithmeticError("d" + std::to_string(r) + " squared is nonzero at (" + std::to_string(key.first) +
                                ", " + std::to_string(key.second) + ")");
      }
    }
    for (auto& [key, z] : cells_) {
      const auto& out = mats[key];
      std::size_t target_dim = 0;
      if (const Cell* y = cell(z.s + r, z.stem - 1)) target_dim = y->dim();
      auto ker = f2_kernel(out, target_dim);
      auto to_e2 = [&](const F2Vector& coords) {
        F2Vector v(z.basis.size());
        for (std::size_t p = coords.find_first(); p != F2Vector::npos; p = coords.find_next(p)) v ^= z.cycles.rows()[p];
        return v;
      };
      F2Echelon b = z.boundaries;
      std::size_t image_rank = 0;
      if (auto in = mats.find({key.first - r, key.second + 1}); in != mats.end())
        for (const auto& col : in->second)
          if (!col.empty() && b.insert(to_e2(col))) ++image_rank;
      F2Echelon c(z.basis.size());
      for (const auto& k : ker) c.insert(to_e2(k), &b);
      if (c.size() + image_rank != ker.size())
        throw ArithmeticError("image of d" + std::to_string(r) + " is not inside the kernel");
      if (z.lattice && image_rank) throw ArithmeticError("a differential hits the lattice line");
      z.boundaries = std::move(b);
      z.cycles = std::move(c);
    }
    propagate_taint(r);
    page_ = r + 1;
  }

  /// Runs every page of the model and keeps a copy of each.
  void run() {
    for (int r : model_->pages()) {
      step(r);
      snapshot(r + 1);
    }
  }

  /// The page E_r as recorded by run (r = 2 is E2; later pages are E_{r+1} after d_r).
  const Page& page(int r) const {
    auto it = pages_.find(r);
    if (it == pages_.end()) throw std::out_of_range("page not recorded: " + std::to_string(r));
    return it->second;
  }

  bool tainted(const SSMonomial& m) const {
    auto it = taint_.find(m);
    return it != taint_.end() && it->second;
  }
  bool tainted(const Cell& c, const F2Vector& v) const {
    for (std::size_t p = v.find_first(); p != F2Vector::npos; p = v.find_next(p))
      if (tainted(c.basis[p])) return true;
    return false;
  }

  /// Generators of the current page in bidegree (s, stem).
  std::vector<SSClassRecord> classes(int s, int stem) const {
    std::vector<SSClassRecord> out;
    const Cell* c = cell(s, stem);
    if (!c) return out;
    auto record = [&](const F2Vector& v, bool free, int coefficient) {
      SSClassRecord rec;
      rec.s = s;
      rec.stem = stem;
      rec.t = stem + s;
      for (std::size_t p = v.find_first(); p != F2Vector::npos; p = v.find_next(p)) {
        rec.terms.push_back(c->basis[p]);
        rec.label += (rec.label.empty() ? "" : " + ") + model_->label(c->basis[p]);
      }
      rec.free = free;
      rec.coefficient = coefficient;
      rec.inconclusive = tainted(*c, v);
      out.push_back(std::move(rec));
    };
    for (const auto& z : c->cycles.rows()) record(z, c->lattice, 1);
    if (c->lattice) {
      std::vector<bool> pivot(c->basis.size(), false);
      for (auto p : c->cycles.pivots()) pivot[p] = true;
      for (std::size_t p = 0; p < c->basis.size(); ++p)
        if (!pivot[p]) {
          F2Vector v(c->basis.size());
          v.set(p);
          record(v, true, 2);
        }
    }
    return out;
  }

  /// F2 dimension of the page in bidegree (s, stem); the lattice counts its rank.
  std::size_t dimension(int s, int stem) const {
    const Cell* c = cell(s, stem);
    if (!c) return 0;
    return c->lattice ? c->basis.size() : c->dim();
  }

  /// Whether any generator in bidegree (s, stem) touches the edge of the truncation.
  bool cell_tainted(int s, int stem) const {
    for (const auto& rec : classes(s, stem))
      if (rec.inconclusive) return true;
    return false;
  }

 private:
  bool in_region(const SSMonomial& m) const {
    return model_->in_truncation(m) && window_.built(model_->filtration(m), model_->stem(m));
  }
  std::vector<SSMonomial> neighbours(int r, const SSMonomial& m) const {
    std::vector<SSMonomial> out;
    if (auto d = model_->differential(r, m)) out.push_back(*d);
    if (auto p = model_->preimage(r, m); p && model_->in_universe(*p)) out.push_back(*p);
    return out;
  }
  void compute_taint() {
    for (const auto& [key, c] : cells_)
      for (const auto& m : c.basis) {
        bool edge = false;
        for (int r : model_->pages())
          for (const auto& n : neighbours(r, m)) edge = edge || !in_region(n);
        taint_[m] = edge;
      }
  }
  void propagate_taint(int r) {
    auto old = taint_;
    for (auto& [m, flag] : taint_)
      for (const auto& n : neighbours(r, m)) {
        auto it = old.find(n);
        if (it != old.end() && it->second) flag = true;
      }
  }
  void snapshot(int r) {
    Page p;
    for (const auto& [key, c] : cells_) p.emplace(key, std::pair{c.boundaries, c.cycles});
    pages_[r] = std::move(p);
  }

  std::shared_ptr<const SSModel> model_;
  SSWindow window_;
  std::map<Key, Cell> cells_;
  std::map<SSMonomial, bool> taint_;
  std::map<int, Page> pages_;
  int page_ = 3;
};

}  // namespace tafd
