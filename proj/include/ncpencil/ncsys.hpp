#pragma once

#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bimodule.hpp"
#include "category.hpp"
#include "localise.hpp"
#include "transfer.hpp"

namespace ncp {

using Mono = std::vector<int>;
using PVec = std::map<std::pair<int, Mono>, Q>;  // (generator, monomial) -> coefficient

inline void add_term(PVec& v, int g, const Mono& m, const Q& c) {
  if (c == 0) return;
  auto key = std::make_pair(g, m);
  auto it = v.find(key);
  if (it == v.end()) {
    v.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

inline Mono mono_add(const Mono& a, const Mono& b) {
  Mono r = a;
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

inline int mono_degree(const Mono& m) { return std::accumulate(m.begin(), m.end(), 0); }

/// Weight-graded A∞-category over ℚ[v_1..v_k] (each v_i of weight -1 and even
/// degree), stored on free generators with polynomial structure constants.
struct NCLinearSystem {
  std::vector<std::string> variables;
  std::vector<long> var_degrees;
  AInfCategory gens;  // objects, generators with degree and weight, units; gens.mu unused
  std::vector<std::map<std::vector<int>, PVec>> mu;

  int nvars() const { return static_cast<int>(variables.size()); }
  Mono zero() const { return Mono(variables.size(), 0); }
  Mono var(int i) const {
    Mono m = zero();
    m[i] = 1;
    return m;
  }

  void add_mu(const std::vector<int>& chain, int out, const Mono& m, const Q& c) {
    if (c == 0) return;
    if (mu.size() <= chain.size()) mu.resize(chain.size() + 1);
    auto& v = mu[chain.size()][chain];
    add_term(v, out, m, c);
    if (v.empty()) mu[chain.size()].erase(chain);
  }

  PVec eval(const std::vector<int>& chain) const {
    if (chain.size() >= mu.size()) return {};
    auto it = mu[chain.size()].find(chain);
    return it == mu[chain.size()].end() ? PVec{} : it->second;
  }

  int max_arity() const {
    for (int d = static_cast<int>(mu.size()) - 1; d >= 1; --d)
      if (!mu[d].empty()) return d;
    return 0;
  }
};

/// A∞ residual with polynomial coefficients on a generator chain.
inline PVec ainf_residual(const NCLinearSystem& l, const std::vector<int>& x) {
  PVec out;
  std::size_t d = x.size();
  long sgn = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 1; i + j <= d; ++j) {
      PVec inner = l.eval(std::vector<int>(x.begin() + i, x.begin() + i + j));
      std::vector<int> outer(x.begin(), x.begin() + i);
      outer.push_back(-1);
      outer.insert(outer.end(), x.begin() + i + j, x.end());
      for (const auto& [gm, c] : inner) {
        outer[i] = gm.first;
        for (const auto& [gm2, c2] : l.eval(outer)) add_term(out, gm2.first, mono_add(gm.second, gm2.second), sign_of(sgn) * c * c2);
      }
    }
    sgn += l.gens.rdeg(x[i]);
  }
  return out;
}

/// Violations of the linear-system invariants: generator weights in {0,-1},
/// weight and degree homogeneity of every entry, A∞ relations, strict units.
/// A∞ relations are checked on the chains accepted by the filter, if given.
inline std::vector<Violation> validate_system(const NCLinearSystem& l, int dmax = 4,
                                              const std::function<bool(const std::vector<int>&)>& filter = {}) {
  std::vector<Violation> out;
  const auto& g = l.gens;
  if (l.var_degrees.size() != l.variables.size()) out.push_back({"structure", {}, {}, "variable degrees missing"});
  for (long dv : l.var_degrees)
    if (is_odd(dv)) out.push_back({"structure", {}, {}, "odd variable degree"});
  for (std::size_t id = 0; id < g.basis.size(); ++id) {
    int w = g.basis[id].weight;
    if (w > 0) out.push_back({"weight", {static_cast<int>(id)}, {}, "positive weight generator " + g.basis[id].name});
    if (w < -1) out.push_back({"weight", {static_cast<int>(id)}, {}, "generator " + g.basis[id].name + " below weight -1"});
  }
  for (std::size_t d = 1; d < l.mu.size(); ++d)
    for (const auto& [chain, v] : l.mu[d]) {
      int win = 0;
      long din = 0;
      for (std::size_t k = 0; k < chain.size(); ++k) {
        win += g.basis[chain[k]].weight;
        din += g.basis[chain[k]].degree;
        if (k > 0 && g.basis[chain[k - 1]].tgt != g.basis[chain[k]].src)
          out.push_back({"composability", chain, {}, "entry on a non-composable chain"});
      }
      for (const auto& [gm, c] : v) {
        const auto& [o, m] = gm;
        long dm = 0;
        bool neg = m.size() != l.variables.size();
        for (std::size_t i = 0; i < m.size() && !neg; ++i) {
          if (m[i] < 0) neg = true;
          dm += m[i] * l.var_degrees[i];
        }
        if (neg) {
          out.push_back({"weight", chain, {}, "bad monomial"});
          continue;
        }
        if (g.basis[o].weight - mono_degree(m) != win) out.push_back({"weight", chain, {}, "unbalanced weight to " + g.basis[o].name});
        if (g.norm(g.basis[o].degree + dm) != g.norm(din + 2 - static_cast<long>(d)))
          out.push_back({"degree", chain, {}, "degree mismatch to " + g.basis[o].name});
        if (g.basis[o].src != g.basis[chain.front()].src || g.basis[o].tgt != g.basis[chain.back()].tgt)
          out.push_back({"composability", chain, {}, "output in the wrong hom space"});
      }
    }
  auto to_vec = [](const PVec& p) {
    Vec v;
    for (const auto& [gm, c] : p) add_entry(v, gm.first, c);
    return v;
  };
  for (int d = 1; d <= dmax; ++d)
    g.for_each_chain(d, [&](const std::vector<int>& chain) {
      if (filter && !filter(chain)) return;
      PVec r = ainf_residual(l, chain);
      if (!r.empty()) out.push_back({"associativity", chain, to_vec(r), ""});
    });
  for (std::size_t o = 0; o < g.objects.size(); ++o) {
    int e = g.units[o];
    if (e < 0) continue;
    if (!l.eval({e}).empty()) out.push_back({"unit", {e}, {}, "μ¹ of unit"});
  }
  for (std::size_t id = 0; id < g.basis.size(); ++id) {
    const auto& m = g.basis[id];
    int x = static_cast<int>(id);
    PVec left, right;
    add_term(left, x, l.zero(), 1);
    add_term(right, x, l.zero(), sign_of(m.degree));
    if (g.units[m.src] >= 0 && l.eval({g.units[m.src], x}) != left) out.push_back({"unit", {g.units[m.src], x}, {}, ""});
    if (g.units[m.tgt] >= 0 && l.eval({x, g.units[m.tgt]}) != right) out.push_back({"unit", {x, g.units[m.tgt]}, {}, ""});
  }
  for (std::size_t d = 3; d < l.mu.size(); ++d)
    for (const auto& [chain, v] : l.mu[d])
      for (int x : chain)
        if (g.is_unit(x)) out.push_back({"unit", chain, {}, "higher operation with a unit input"});
  return out;
}

/// Weight-0 generators and their indices in the system.
inline std::vector<int> weight_generators(const NCLinearSystem& l, int w) {
  std::vector<int> out;
  for (std::size_t id = 0; id < l.gens.basis.size(); ++id)
    if (l.gens.basis[id].weight == w) out.push_back(static_cast<int>(id));
  return out;
}

/// Ambient space: the weight-0 part.
inline AInfCategory ambient(const NCLinearSystem& l) {
  AInfCategory a;
  a.modulus = l.gens.modulus;
  for (const auto& o : l.gens.objects) a.add_object(o);
  std::map<int, int> to;
  for (int id : weight_generators(l, 0)) {
    const auto& m = l.gens.basis[id];
    to[id] = a.add_basis(m.name, m.src, m.tgt, m.degree, 0);
    if (l.gens.is_unit(id)) a.units[m.src] = to[id];
  }
  for (std::size_t d = 1; d < l.mu.size(); ++d)
    for (const auto& [chain, v] : l.mu[d]) {
      std::vector<int> c;
      for (int x : chain)
        if (to.count(x)) c.push_back(to[x]);
      if (c.size() != chain.size()) continue;
      for (const auto& [gm, q] : v)
        if (mono_degree(gm.second) == 0) a.add_mu(c, to.at(gm.first), q);
    }
  return a;
}

/// Dual bundle: weight -1 generators (default splitting) with the induced
/// bimodule structure over the ambient space. Degrees are raised by one.
inline Bimodule dual_bundle(const NCLinearSystem& l) {
  Bimodule q(ambient(l));
  std::map<int, int> ta, tq;
  for (int id : weight_generators(l, 0)) ta[id] = static_cast<int>(ta.size());
  for (int id : weight_generators(l, -1)) {
    const auto& m = l.gens.basis[id];
    tq[id] = q.add_basis(m.name, m.src, m.tgt, m.degree + 1, -1);
  }
  for (std::size_t d = 1; d < l.mu.size(); ++d)
    for (const auto& [chain, v] : l.mu[d]) {
      int r = -1, nq = 0;
      std::vector<int> c;
      for (std::size_t k = 0; k < chain.size(); ++k) {
        if (tq.count(chain[k])) {
          r = static_cast<int>(k);
          ++nq;
          c.push_back(tq[chain[k]]);
        } else if (ta.count(chain[k])) {
          c.push_back(ta[chain[k]]);
        }
      }
      if (nq != 1 || c.size() != chain.size()) continue;
      for (const auto& [gm, x] : v)
        if (mono_degree(gm.second) == 0 && tq.count(gm.first)) q.add_mu(r, c, tq.at(gm.first), x);
    }
  return q;
}

/// Sections σ_i: Q → Δ_A, one per variable, read off from the weight-0
/// outputs of chains with one weight -1 input. With this sign, Cone(σ_w)
/// equals the diagonal of the fibre restricted to A.
struct Sections {
  std::shared_ptr<Bimodule> source, target;
  std::vector<BimoduleMap> maps;
  BimoduleMap at(const std::vector<Q>& w) const {
    BimoduleMap f{source.get(), target.get(), maps.empty() ? 0 : maps[0].degree, {}};
    for (std::size_t i = 0; i < maps.size(); ++i)
      for (const auto& [key, v] : maps[i].components)
        for (const auto& [o, c] : v) f.add(key.first, key.second, o, w[i] * c);
    return f;
  }
};

inline Sections sections(const NCLinearSystem& l) {
  Sections s;
  s.source = std::make_shared<Bimodule>(dual_bundle(l));
  s.target = std::make_shared<Bimodule>(diagonal(s.source->base));
  std::map<int, int> ta, tq;
  for (int id : weight_generators(l, 0)) ta[id] = static_cast<int>(ta.size());
  for (int id : weight_generators(l, -1)) tq[id] = static_cast<int>(tq.size());
  for (int i = 0; i < l.nvars(); ++i) s.maps.push_back({s.source.get(), s.target.get(), -l.var_degrees[i], {}});
  for (std::size_t d = 1; d < l.mu.size(); ++d)
    for (const auto& [chain, v] : l.mu[d]) {
      int r = -1, nq = 0;
      std::vector<int> c;
      for (std::size_t k = 0; k < chain.size(); ++k) {
        if (tq.count(chain[k])) {
          r = static_cast<int>(k);
          ++nq;
          c.push_back(tq[chain[k]]);
        } else if (ta.count(chain[k])) {
          c.push_back(ta[chain[k]]);
        }
      }
      if (nq != 1 || c.size() != chain.size()) continue;
      for (const auto& [gm, x] : v)
        if (mono_degree(gm.second) == 1 && ta.count(gm.first))
          for (int i = 0; i < l.nvars(); ++i)
            if (gm.second[i] == 1) s.maps[i].add(r, c, ta.at(gm.first), -x);
    }
  return s;
}

/// Fibre at w: substitute v_i = w_i. Homogeneous w keeps a ℤ-grading with
/// degrees shifted by |v|·weight; otherwise the grading is reduced modulo the
/// gcd of the degree differences (or the given modulus).
inline AInfCategory fibre(const NCLinearSystem& l, const std::vector<Q>& w, int modulus = -1) {
  if (static_cast<int>(w.size()) != l.nvars()) throw std::invalid_argument("point has the wrong dimension");
  std::vector<long> degs;
  for (int i = 0; i < l.nvars(); ++i)
    if (w[i] != 0) degs.push_back(l.var_degrees[i]);
  long shift = degs.empty() ? 0 : degs[0];
  long g = 0;
  for (long d : degs) g = std::gcd(g, std::labs(d - shift));
  int mod = l.gens.modulus;
  if (modulus >= 0) {
    mod = modulus;
  } else if (g != 0) {
    mod = static_cast<int>(mod == 0 ? g : std::gcd(static_cast<long>(mod), g));
  }
  AInfCategory f;
  f.modulus = mod;
  for (const auto& o : l.gens.objects) f.add_object(o);
  for (const auto& m : l.gens.basis) f.add_basis(m.name, m.src, m.tgt, m.degree + shift * m.weight, 0);
  f.units = l.gens.units;
  for (std::size_t d = 1; d < l.mu.size(); ++d)
    for (const auto& [chain, v] : l.mu[d])
      for (const auto& [gm, c] : v) {
        Q x = c;
        for (int i = 0; i < l.nvars(); ++i)
          for (int k = 0; k < gm.second[i]; ++k) x *= w[i];
        f.add_mu(chain, gm.first, x);
      }
  return f;
}

/// One-variable system from a weighted category whose structure constants
/// carry v implicitly: the coefficient of y in μ(x_1..x_d) stands for
/// v^{w(y) - Σ w(x_k)}.
inline NCLinearSystem from_weighted(const AInfCategory& m, const std::string& var = "v", long var_degree = 0) {
  NCLinearSystem l;
  l.variables = {var};
  l.var_degrees = {var_degree};
  l.gens.modulus = m.modulus;
  for (const auto& o : m.objects) l.gens.add_object(o);
  for (const auto& b : m.basis) l.gens.add_basis(b.name, b.src, b.tgt, b.degree - var_degree * b.weight, b.weight);
  l.gens.units = m.units;
  for (std::size_t d = 1; d < m.mu.size(); ++d)
    for (const auto& [chain, v] : m.mu[d]) {
      int win = 0;
      for (int x : chain) win += m.basis[x].weight;
      for (const auto& [o, c] : v) {
        int e = m.basis[o].weight - win;
        if (e < 0) throw std::invalid_argument("entry lowers the weight filtration");
        l.add_mu(chain, o, {e}, c);
      }
    }
  return l;
}

/// Filtration check for a weight-homogeneous map over ℚ[v] stored at v = 1.
inline bool is_filtered(const AInfCategory& m, const std::vector<Vec>& h) {
  for (std::size_t i = 0; i < h.size(); ++i)
    for (const auto& [j, c] : h[i])
      if (m.basis[j].weight < m.basis[i].weight) return false;
  return true;
}

/// Transfer onto the subcomplex generated in weights {0,-1}; m carries v
/// implicitly as in from_weighted and has no positive weights. Sub vectors of
/// weight below -1 (residual classes of a truncated quotient) are transferred
/// along and then dropped; dropped counts the entries that landed on them.
struct TruncationReport {
  std::size_t residual = 0;
  std::size_t dropped = 0;
};

inline NCLinearSystem weight_truncate_transfer(const TransferDatum& td, int dmax, TruncationReport* report = nullptr) {
  const auto& m = td.ambient;
  for (const auto& b : m.basis)
    if (b.weight > 0) throw TransferError("positive weight element " + b.name);
  auto bad = check_datum(td);
  if (!bad.empty()) throw TransferError("transfer datum: " + bad.front());
  if (!is_filtered(m, td.h)) throw TransferError("homotopy is not weight-homogeneous");
  auto r = homotopy_transfer(td, dmax);
  const auto& t = r.category;
  std::vector<int> to(t.basis.size(), -1);
  AInfCategory kept;
  kept.modulus = t.modulus;
  for (const auto& o : t.objects) kept.add_object(o);
  for (std::size_t id = 0; id < t.basis.size(); ++id)
    if (t.basis[id].weight >= -1) {
      const auto& b = t.basis[id];
      to[id] = kept.add_basis(b.name, b.src, b.tgt, b.degree, b.weight);
    }
  for (std::size_t o = 0; o < t.objects.size(); ++o)
    if (t.units[o] >= 0) kept.units[o] = to[t.units[o]];
  TruncationReport rep;
  rep.residual = t.basis.size() - kept.basis.size();
  for (std::size_t d = 1; d < t.mu.size(); ++d)
    for (const auto& [chain, v] : t.mu[d]) {
      std::vector<int> c;
      for (int x : chain)
        if (to[x] >= 0) c.push_back(to[x]);
      if (c.size() != chain.size()) continue;
      for (const auto& [o, q] : v) {
        if (to[o] < 0) {
          ++rep.dropped;
        } else {
          kept.add_mu(c, to[o], q);
        }
      }
    }
  if (report) *report = rep;
  return from_weighted(kept);
}

/// Datum for m: A = span of the basis elements of weight ≥ -1, extended by
/// representatives of the cohomology of m/A (nonzero only for truncations),
/// with a weight-ordered contraction.
inline TransferDatum weight01_datum(const AInfCategory& m) {
  TransferDatum td;
  td.ambient = m;
  for (std::size_t id = 0; id < m.basis.size(); ++id)
    if (m.basis[id].weight >= -1) {
      td.names.push_back(m.basis[id].name);
      td.sub.push_back(unit_vec(static_cast<int>(id)));
    }
  int n = static_cast<int>(m.objects.size());
  int k = 0;
  for (int x0 = 0; x0 < n; ++x0)
    for (int x1 = 0; x1 < n; ++x1) {
      CochainComplex c;
      c.space.modulus = m.modulus;
      std::vector<int> ids;
      std::map<int, int> local;
      for (int id : m.hom(x0, x1))
        if (m.basis[id].weight < -1) {
          local[id] = static_cast<int>(ids.size());
          ids.push_back(id);
          c.space.basis.push_back({m.basis[id].name, m.basis[id].degree});
        }
      for (int id : ids) {
        Vec d;
        for (const auto& [o, q] : m.eval({id}))
          if (local.count(o)) add_entry(d, local.at(o), q);
        c.d.push_back(d);
      }
      for (const auto& [deg, reps] : cohomology(c).reps)
        for (const auto& r : reps) {
          Vec g;
          for (const auto& [i, q] : r) add_entry(g, ids[i], q);
          td.names.push_back("r" + std::to_string(k++));
          td.sub.push_back(g);
        }
    }
  td.h = contraction_onto(m, td.sub, true);
  return td;
}

inline NCLinearSystem weight_truncate_transfer(const AInfCategory& m, int dmax, TruncationReport* report = nullptr) {
  return weight_truncate_transfer(weight01_datum(m), dmax, report);
}

/// Localise at weight-0 cocycles, cut to weights {0,-1}, transfer.
struct PipelineResult {
  std::shared_ptr<LocalisedCategory> localised;
  NCLinearSystem system;
  TruncationReport truncation;
  std::vector<int> origin;  // localised basis id of each generator
  /// String length of a generator of the system.
  int length(int id) const { return localised->length(origin.at(id)); }
  /// Chains within the length bound, where the truncated relations are exact.
  bool in_range(const std::vector<int>& chain) const {
    int t = 0;
    for (int x : chain) t += length(x);
    return t <= localised->lmax();
  }
};

inline PipelineResult divisor_pipeline(const AInfCategory& d_ord, const std::vector<Vec>& s, int lmax, int dmax = 3) {
  for (const auto& v : s)
    for (const auto& [id, c] : v)
      if (d_ord.basis[id].weight != 0) throw std::invalid_argument("inverted morphisms must have weight 0");
  PipelineResult out;
  out.localised = std::make_shared<LocalisedCategory>(LocalisationDatum{d_ord, s, lmax}, dmax);
  const auto& m = out.localised->category();
  out.system = weight_truncate_transfer(m, dmax, &out.truncation);
  for (std::size_t id = 0; id < m.basis.size(); ++id)
    if (m.basis[id].weight >= -1) out.origin.push_back(static_cast<int>(id));
  return out;
}

}  // namespace ncp
