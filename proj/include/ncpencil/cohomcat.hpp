#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "category.hpp"

namespace ncp {

/// Cohomology category: echelon representatives per hom pair and the product
/// [x2]·[x1] = [(-1)^{|x1|} μ²(x2, x1)] in representative coordinates.
struct CohomologyCategory {
  using Pair = std::pair<int, int>;
  struct Class {
    long degree;
    Vec rep;  // global basis ids
  };
  const AInfCategory* cat = nullptr;
  std::map<Pair, std::vector<Class>> classes;
  std::map<Pair, Cohomology> coh;  // local coordinates

  std::map<long, std::size_t> dims(int s, int t) const {
    std::map<long, std::size_t> out;
    auto it = classes.find({s, t});
    if (it == classes.end()) return out;
    for (const auto& c : it->second) ++out[c.degree];
    return out;
  }

  /// Coordinates (over classes of (s,t)) of a cocycle in global ids; nullopt if not a cocycle.
  std::optional<std::vector<Q>> coords(int s, int t, const Vec& z) const {
    const auto& cl = classes.at({s, t});
    std::vector<Q> out(cl.size(), Q(0));
    Vec local = cat->to_local(s, t, z);
    if (!cat->eval_vec({z}).empty()) return std::nullopt;
    std::map<long, Vec> by_degree;
    for (const auto& [i, c] : local) by_degree[cat->deg(cat->hom(s, t)[i])][i] = c;
    const auto& h = coh.at({s, t});
    for (const auto& [d, v] : by_degree) {
      auto c = h.class_of(d, v);
      if (!c) return std::nullopt;
      std::size_t k = 0;
      for (std::size_t j = 0; j < cl.size(); ++j)
        if (cl[j].degree == cat->norm(d)) out[j] = (*c)[k++];
    }
    return out;
  }

  /// Product of classes i ∈ H(s,m) and j ∈ H(m,t), as coordinates in H(s,t).
  std::vector<Q> product(int s, int m, int t, std::size_t i, std::size_t j) const {
    const auto& x1 = classes.at({s, m})[i];
    const auto& x2 = classes.at({m, t})[j];
    Vec p = cat->eval_vec({x1.rep, x2.rep});
    for (auto& [k, c] : p) c *= sign_of(x1.degree);
    auto r = coords(s, t, p);
    if (!r) throw std::logic_error("product of cocycles is not a cocycle");
    return *r;
  }

  Vec combine(int s, int t, const std::vector<Q>& a) const {
    Vec v;
    const auto& cl = classes.at({s, t});
    for (std::size_t k = 0; k < a.size(); ++k) axpy(v, a[k], cl[k].rep);
    return v;
  }

  /// Product of arbitrary class combinations.
  std::vector<Q> multiply(int s, int m, int t, const std::vector<Q>& a1, const std::vector<Q>& a2) const {
    std::vector<Q> out(classes.at({s, t}).size(), Q(0));
    for (std::size_t i = 0; i < a1.size(); ++i)
      for (std::size_t j = 0; j < a2.size(); ++j) {
        if (a1[i] == 0 || a2[j] == 0) continue;
        auto p = product(s, m, t, i, j);
        for (std::size_t k = 0; k < p.size(); ++k) out[k] += a1[i] * a2[j] * p[k];
      }
    return out;
  }

  std::vector<Q> unit(int x) const {
    int e = cat->units.at(x);
    auto r = coords(x, x, unit_vec(e));
    if (!r) throw std::logic_error("unit is not a cocycle");
    return *r;
  }
};

inline CohomologyCategory cohomology_category(const AInfCategory& c) {
  CohomologyCategory h;
  h.cat = &c;
  int n = static_cast<int>(c.objects.size());
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      auto co = cohomology(c.hom_complex(s, t));
      auto& cl = h.classes[{s, t}];
      for (const auto& [d, reps] : co.reps)
        for (const auto& r : reps) cl.push_back({d, c.to_global(s, t, r)});
      h.coh.emplace(std::make_pair(s, t), std::move(co));
    }
  return h;
}

/// Associativity and unitality of the cohomology product on all basis triples.
inline std::vector<std::string> check_cohomology_category(const CohomologyCategory& h) {
  std::vector<std::string> out;
  const auto& c = *h.cat;
  int n = static_cast<int>(c.objects.size());
  auto size = [&](int s, int t) { return h.classes.at({s, t}).size(); };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (c.units[a] >= 0 && c.units[b] >= 0)
        for (std::size_t i = 0; i < size(a, b); ++i) {
          std::vector<Q> x(size(a, b), Q(0));
          x[i] = 1;
          if (h.multiply(a, a, b, h.unit(a), x) != x || h.multiply(a, b, b, x, h.unit(b)) != x)
            out.push_back("unit fails on class " + std::to_string(i) + " of " + c.objects[a] + "," + c.objects[b]);
        }
      for (int m = 0; m < n; ++m)
        for (int t = 0; t < n; ++t)
          for (std::size_t i = 0; i < size(a, b); ++i)
            for (std::size_t j = 0; j < size(b, m); ++j)
              for (std::size_t k = 0; k < size(m, t); ++k) {
                std::vector<Q> x(size(a, b), Q(0)), y(size(b, m), Q(0)), z(size(m, t), Q(0));
                x[i] = y[j] = z[k] = 1;
                auto l = h.multiply(a, m, t, h.multiply(a, b, m, x, y), z);
                auto r = h.multiply(a, b, t, x, h.multiply(b, m, t, y, z));
                if (l != r) out.push_back("associativity fails");
              }
    }
  return out;
}

/// Mutually inverse degree-0 classes f ∈ H(x,y), g ∈ H(y,x).
struct IsoWitness {
  std::vector<Q> f, g;
};

/// Two-sided inverse of the class f ∈ H(x,y), given the identity classes.
inline std::optional<std::vector<Q>> inverse_of(const CohomologyCategory& h, int x, int y, const std::vector<Q>& f,
                                                const std::vector<Q>& ex, const std::vector<Q>& ey) {
  const auto& cg = h.classes.at({y, x});
  std::vector<Vec> cols;
  for (std::size_t gi = 0; gi < cg.size(); ++gi) {
    std::vector<Q> g(cg.size(), Q(0));
    g[gi] = 1;
    auto p = h.multiply(x, y, x, f, g);
    Vec col;
    for (std::size_t k = 0; k < p.size(); ++k) add_entry(col, static_cast<int>(k), p[k]);
    cols.push_back(col);
  }
  Vec target;
  for (std::size_t k = 0; k < ex.size(); ++k) add_entry(target, static_cast<int>(k), ex[k]);
  auto sol = solve(cols, target);
  if (!sol) return std::nullopt;
  std::vector<Q> g(cg.size(), Q(0));
  for (const auto& [k, c] : *sol) g[k] = c;
  if (h.multiply(y, x, y, g, f) != ey) return std::nullopt;
  return g;
}

inline std::optional<std::vector<Q>> inverse_of(const CohomologyCategory& h, int x, int y, const std::vector<Q>& f) {
  return inverse_of(h, x, y, f, h.unit(x), h.unit(y));
}

/// Isomorphism search among degree-0 representatives and small integer combinations.
inline std::optional<IsoWitness> find_isomorphism(const CohomologyCategory& h, int x, int y) {
  const auto& cf = h.classes.at({x, y});
  std::vector<std::size_t> f0;
  for (std::size_t i = 0; i < cf.size(); ++i)
    if (cf[i].degree == 0) f0.push_back(i);
  if (f0.empty() || f0.size() > 3) return std::nullopt;
  const std::vector<int> vals{0, 1, -1, 2, -2};
  std::vector<std::size_t> idx(f0.size(), 0);
  while (true) {
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == vals.size()) idx[k++] = 0;
    if (k == idx.size()) break;
    std::vector<Q> f(cf.size(), Q(0));
    for (std::size_t j = 0; j < f0.size(); ++j) f[f0[j]] = vals[idx[j]];
    if (auto g = inverse_of(h, x, y, f)) return IsoWitness{f, *g};
  }
  return std::nullopt;
}

/// Presentation of a two-dimensional endomorphism ring as ℚ[u]/(u² - κ).
struct QuadraticPresentation {
  long u_degree = 0;
  Q kappa;
  std::string str() const { return "Q[u]/(u^2 - " + to_string(kappa) + "), |u| = " + std::to_string(u_degree); }
};

inline std::optional<QuadraticPresentation> quadratic_endomorphism_ring(const CohomologyCategory& h, int x) {
  const auto& cl = h.classes.at({x, x});
  if (cl.size() != 2) return std::nullopt;
  auto e = h.unit(x);
  // u = the class independent from the unit
  std::size_t ui = e[0] == 0 ? 0 : 1;
  if (e[ui] != 0) ui = 1 - ui;
  std::vector<Q> u(2, Q(0));
  u[ui] = 1;
  auto sq = h.multiply(x, x, x, u, u);
  // express u² = κ e + β u
  Q det = e[0] * u[1] - e[1] * u[0];
  if (det == 0) return std::nullopt;
  Q kappa = (sq[0] * u[1] - sq[1] * u[0]) / det;
  Q beta = (e[0] * sq[1] - e[1] * sq[0]) / det;
  if (beta != 0) return std::nullopt;
  return QuadraticPresentation{cl[ui].degree, kappa};
}

}  // namespace ncp
