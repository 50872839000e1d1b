#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace ncp {

/// Incremental row echelon basis. Each stored row remembers which inserted
/// generators it is a combination of, so reductions report their provenance.
class Span {
 public:
  /// Insert v (tagged as generator `tag`); returns false if v was dependent.
  bool insert(const Vec& v, int tag) { return insert(v, unit_vec(tag)); }

  bool insert(Vec v, Vec t) {
    reduce_in_place(v, t);
    if (v.empty()) return false;
    auto p = v.begin()->first;
    Q inv = 1 / v.begin()->second;
    v = scaled(v, inv);
    t = scaled(t, inv);
    rows_.emplace(p, Row{std::move(v), std::move(t)});
    return true;
  }

  /// Returns (residual, combination) with v = combination·generators + residual.
  std::pair<Vec, Vec> reduce(Vec v) const {
    Vec t;
    reduce_in_place(v, t);
    return {std::move(v), scaled(t, Q(-1))};
  }

  bool contains(const Vec& v) const { return reduce(v).first.empty(); }
  std::size_t rank() const { return rows_.size(); }

  std::vector<Vec> basis() const {
    std::vector<Vec> out;
    for (const auto& [p, r] : rows_) out.push_back(r.v);
    return out;
  }

 private:
  struct Row {
    Vec v, t;
  };
  std::map<int, Row> rows_;

  void reduce_in_place(Vec& v, Vec& t) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto r = rows_.find(it->first);
      if (r == rows_.end()) {
        ++it;
        continue;
      }
      int key = it->first;
      Q c = it->second;
      axpy(v, -c, r->second.v);
      axpy(t, -c, r->second.t);
      it = v.upper_bound(key);
    }
  }
};

/// Rank of a set of sparse vectors by fraction-free (Bareiss) elimination.
inline std::size_t rank_of(const std::vector<Vec>& vs) {
  std::map<int, int> col_index;
  for (const auto& v : vs)
    for (const auto& [k, x] : v) col_index.emplace(k, 0);
  int nc = 0;
  for (auto& [k, i] : col_index) i = nc++;
  std::vector<std::vector<Z>> m;
  for (const auto& v : vs) {
    if (v.empty()) continue;
    Z den = 1;
    for (const auto& [k, x] : v) den = lcm(den, Z(x.get_den()));
    std::vector<Z> row(nc, 0);
    for (const auto& [k, x] : v) row[col_index[k]] = Z(x * den);
    m.push_back(std::move(row));
  }
  std::size_t nr = m.size(), r = 0;
  Z prev = 1;
  for (int c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = r;
    while (piv < nr && m[piv][c] == 0) ++piv;
    if (piv == nr) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < nr; ++i) {
      for (int j = c + 1; j < nc; ++j) {
        Z t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

/// Kernel of the map sending generator j to images[j]; basis as combinations.
inline std::vector<Vec> kernel_of(const std::vector<Vec>& images) {
  Span s;
  std::vector<Vec> ker;
  for (int j = 0; j < static_cast<int>(images.size()); ++j) {
    auto [res, comb] = s.reduce(images[j]);
    if (res.empty()) {
      Vec k = scaled(comb, Q(-1));
      add_entry(k, j, Q(1));
      ker.push_back(std::move(k));
    } else {
      s.insert(images[j], j);
    }
  }
  return ker;
}

/// Solve Σ x_j images[j] = target; nullopt if inconsistent.
inline std::optional<Vec> solve(const std::vector<Vec>& images, const Vec& target) {
  Span s;
  for (int j = 0; j < static_cast<int>(images.size()); ++j) s.insert(images[j], j);
  auto [res, comb] = s.reduce(target);
  if (!res.empty()) return std::nullopt;
  return comb;
}

// ---------------------------------------------------------------------------
// Graded spaces and maps

inline long reduce_degree(long d, int modulus) {
  if (modulus <= 0) return d;
  return ((d % modulus) + modulus) % modulus;
}

struct GradedElem {
  std::string name;
  long degree = 0;
  int weight = 0;
};

struct GradedSpace {
  int modulus = 0;  // 0 means Z-graded
  std::vector<GradedElem> basis;

  std::size_t dim() const { return basis.size(); }
  long degree(int i) const { return basis[i].degree; }
  std::vector<int> slice(long d) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i)
      if (reduce_degree(basis[i].degree, modulus) == reduce_degree(d, modulus)) out.push_back(i);
    return out;
  }
  std::vector<long> degrees() const {
    std::vector<long> ds;
    for (const auto& b : basis) ds.push_back(reduce_degree(b.degree, modulus));
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
  }
};

struct LinearMap {
  GradedSpace source, target;
  long shift = 0;
  std::vector<Vec> columns;  // image of each source basis element

  /// Entries must connect basis elements of matching weight and degree gap.
  bool well_formed() const {
    if (columns.size() != source.dim()) return false;
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (const auto& [i, c] : columns[j]) {
        if (i < 0 || i >= static_cast<int>(target.dim())) return false;
        if (target.basis[i].weight != source.basis[j].weight) return false;
        if (reduce_degree(target.basis[i].degree - source.basis[j].degree - shift, target.modulus) != 0)
          return false;
      }
    return true;
  }

  Vec apply(const Vec& x) const {
    Vec y;
    for (const auto& [j, c] : x) axpy(y, c, columns[j]);
    return y;
  }
};

inline std::size_t map_rank(const LinearMap& m) { return rank_of(m.columns); }

inline LinearMap compose(const LinearMap& g, const LinearMap& f) {
  LinearMap h{f.source, g.target, f.shift + g.shift, {}};
  for (const auto& c : f.columns) h.columns.push_back(g.apply(c));
  return h;
}

/// A cochain complex on a single graded space with a degree +1 differential.
struct CochainComplex {
  GradedSpace space;
  std::vector<Vec> d;  // d[j] = differential of basis element j
};

/// Cohomology with chosen representatives, computed per degree.
struct Cohomology {
  int modulus = 0;
  std::map<long, std::vector<Vec>> reps;  // degree -> cocycle representatives
  std::map<long, Span> spans;             // boundaries then reps, per degree
  std::map<long, std::size_t> nbound;

  std::map<long, std::size_t> dims() const {
    std::map<long, std::size_t> out;
    for (const auto& [d, r] : reps)
      if (!r.empty()) out[d] = r.size();
    return out;
  }
  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& [d, r] : reps) t += r.size();
    return t;
  }
  /// Coordinates of the class of a cocycle z of degree d in the rep basis.
  std::optional<std::vector<Q>> class_of(long d, const Vec& z) const {
    d = reduce_degree(d, modulus);
    auto it = spans.find(d);
    std::size_t n = reps.count(d) ? reps.at(d).size() : 0;
    std::vector<Q> out(n, Q(0));
    if (z.empty()) return out;
    if (it == spans.end()) return std::nullopt;
    auto [res, comb] = it->second.reduce(z);
    if (!res.empty()) return std::nullopt;
    std::size_t nb = nbound.at(d);
    for (const auto& [g, c] : comb)
      if (g >= static_cast<int>(nb)) out[g - nb] = c;
    return out;
  }
};

class NonComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Cohomology cohomology(const CochainComplex& c) {
  const auto& sp = c.space;
  for (std::size_t j = 0; j < sp.dim(); ++j) {
    Vec dd;
    for (const auto& [i, x] : c.d[j]) axpy(dd, x, c.d[i]);
    if (!dd.empty()) throw NonComplexError("differential does not square to zero");
  }
  Cohomology h;
  h.modulus = sp.modulus;
  for (long deg : sp.degrees()) {
    auto here = sp.slice(deg);
    auto below = sp.slice(deg - 1);
    std::vector<Vec> imgs;
    for (int j : here) imgs.push_back(c.d[j]);
    auto ker = kernel_of(imgs);
    Span s;
    int tag = 0;
    for (int j : below)
      if (s.insert(c.d[j], tag)) ++tag;
    h.nbound[deg] = tag;
    auto& reps = h.reps[deg];
    for (const auto& k : ker) {
      Vec z;
      for (const auto& [idx, x] : k) add_entry(z, here[idx], x);
      auto [res, comb] = s.reduce(z);
      if (res.empty()) continue;
      s.insert(res, tag++);
      reps.push_back(res);
    }
    h.spans[deg] = std::move(s);
  }
  return h;
}

inline std::map<long, std::size_t> cohomology_dims(const CochainComplex& c) {
  return cohomology(c).dims();
}

}  // namespace ncp
