#pragma once

#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace ncp {

/// Basis element of a morphism space, living in hom(src, tgt).
struct Morphism {
  std::string name;
  int src = 0, tgt = 0;
  long degree = 0;
  int weight = 0;
};

/// Finite strictly unital A∞-category with sparse structure constants.
///
/// Inputs to mu are stored in chain order (x1, x2, ..., xd) with x1 leaving
/// the first object; the written form μ^d(xd, ..., x1) is the reverse.
class AInfCategory {
 public:
  int modulus = 0;  // 0 for Z-grading, 2N for Z/2N
  std::vector<std::string> objects;
  std::vector<Morphism> basis;
  std::vector<int> units;                          // per object, -1 if absent
  std::vector<std::map<std::vector<int>, Vec>> mu;  // mu[d][chain] = output

  int add_object(const std::string& name) {
    objects.push_back(name);
    units.push_back(-1);
    return static_cast<int>(objects.size()) - 1;
  }

  int object_index(const std::string& name) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i] == name) return static_cast<int>(i);
    throw std::out_of_range("unknown object " + name);
  }

  int add_basis(const std::string& name, int src, int tgt, long degree, int weight = 0) {
    basis.push_back({name, src, tgt, reduce_degree(degree, modulus), weight});
    int id = static_cast<int>(basis.size()) - 1;
    homs_[{src, tgt}].push_back(id);
    return id;
  }

  int add_unit(int obj, const std::string& name = "") {
    int e = add_basis(name.empty() ? "e_" + objects[obj] : name, obj, obj, 0, 0);
    units[obj] = e;
    return e;
  }

  int find(int src, int tgt, const std::string& name) const {
    for (int id : hom(src, tgt))
      if (basis[id].name == name) return id;
    throw std::out_of_range("no morphism " + name);
  }

  const std::vector<int>& hom(int src, int tgt) const {
    static const std::vector<int> empty;
    auto it = homs_.find({src, tgt});
    return it == homs_.end() ? empty : it->second;
  }

  long deg(int id) const { return basis[id].degree; }
  long rdeg(int id) const { return basis[id].degree - 1; }
  long norm(long d) const { return reduce_degree(d, modulus); }

  bool is_unit(int id) const {
    const auto& m = basis[id];
    return m.src == m.tgt && units[m.src] == id;
  }

  int max_arity() const {
    for (int d = static_cast<int>(mu.size()) - 1; d >= 1; --d)
      if (!mu[d].empty()) return d;
    return 0;
  }

  /// Add c·out to μ(chain); inputs in chain order.
  void add_mu(const std::vector<int>& chain, int out, const Q& c) {
    if (c == 0) return;
    auto d = chain.size();
    if (mu.size() <= d) mu.resize(d + 1);
    auto& v = mu[d][chain];
    add_entry(v, out, c);
    if (v.empty()) mu[d].erase(chain);
  }

  void set_mu(const std::vector<int>& chain, const Vec& out) {
    auto d = chain.size();
    if (mu.size() <= d) mu.resize(d + 1);
    if (out.empty())
      mu[d].erase(chain);
    else
      mu[d][chain] = out;
  }

  /// Written-order convenience: mu_written({x2, x1}) = μ²(x2, x1).
  void add_mu_written(std::vector<int> written, int out, const Q& c) {
    std::reverse(written.begin(), written.end());
    add_mu(written, out, c);
  }

  Vec eval(const std::vector<int>& chain) const {
    auto d = chain.size();
    if (d >= mu.size()) return {};
    auto it = mu[d].find(chain);
    return it == mu[d].end() ? Vec{} : it->second;
  }

  /// Multilinear evaluation on sparse vectors (chain order).
  Vec eval_vec(const std::vector<Vec>& args) const {
    Vec out;
    if (args.size() >= mu.size() || mu[args.size()].empty()) return out;
    std::vector<int> chain(args.size());
    std::function<void(std::size_t, const Q&)> rec = [&](std::size_t k, const Q& c) {
      if (k == args.size()) {
        axpy(out, c, eval(chain));
        return;
      }
      for (const auto& [id, x] : args[k]) {
        if (k > 0 && basis[chain[k - 1]].tgt != basis[id].src) continue;
        chain[k] = id;
        rec(k + 1, c * x);
      }
    };
    rec(0, Q(1));
    return out;
  }

  /// Composable chains of length d, in deterministic order.
  void for_each_chain(std::size_t d, const std::function<void(const std::vector<int>&)>& f) const {
    std::vector<int> chain;
    std::function<void(int)> rec = [&](int obj) {
      if (chain.size() == d) {
        f(chain);
        return;
      }
      for (int t = 0; t < static_cast<int>(objects.size()); ++t)
        for (int id : hom(obj, t)) {
          chain.push_back(id);
          rec(t);
          chain.pop_back();
        }
    };
    for (int s = 0; s < static_cast<int>(objects.size()); ++s) rec(s);
  }

  /// Graded space of hom(src, tgt) in basis order.
  GradedSpace hom_space(int src, int tgt) const {
    GradedSpace g{modulus, {}};
    for (int id : hom(src, tgt)) g.basis.push_back({basis[id].name, basis[id].degree, basis[id].weight});
    return g;
  }

  /// The complex (hom(src, tgt), μ¹) in local coordinates.
  CochainComplex hom_complex(int src, int tgt) const {
    CochainComplex c{hom_space(src, tgt), {}};
    const auto& ids = hom(src, tgt);
    std::map<int, int> local;
    for (std::size_t i = 0; i < ids.size(); ++i) local[ids[i]] = static_cast<int>(i);
    for (int id : ids) {
      Vec v;
      for (const auto& [o, x] : eval({id})) add_entry(v, local.at(o), x);
      c.d.push_back(std::move(v));
    }
    return c;
  }

  Vec to_global(int src, int tgt, const Vec& local) const {
    Vec v;
    const auto& ids = hom(src, tgt);
    for (const auto& [i, x] : local) add_entry(v, ids[i], x);
    return v;
  }
  Vec to_local(int src, int tgt, const Vec& global) const {
    const auto& ids = hom(src, tgt);
    std::map<int, int> local;
    for (std::size_t i = 0; i < ids.size(); ++i) local[ids[i]] = static_cast<int>(i);
    Vec v;
    for (const auto& [g, x] : global) add_entry(v, local.at(g), x);
    return v;
  }

  std::map<long, std::size_t> hom_cohomology_dims(int src, int tgt) const {
    return cohomology(hom_complex(src, tgt)).dims();
  }

 private:
  std::map<std::pair<int, int>, std::vector<int>> homs_;
};

// ---------------------------------------------------------------------------
// Relation and unit checks

struct Violation {
  std::string kind;         // "associativity", "degree", "unit", "composability"
  std::vector<int> inputs;  // chain order
  Vec residual;
  std::string detail;
};

/// Structural checks on stored constants: composability and degree 2-d.
inline std::vector<Violation> check_structure(const AInfCategory& c) {
  std::vector<Violation> out;
  for (std::size_t d = 1; d < c.mu.size(); ++d)
    for (const auto& [chain, v] : c.mu[d]) {
      bool ok = true;
      for (std::size_t k = 1; k < chain.size(); ++k)
        if (c.basis[chain[k - 1]].tgt != c.basis[chain[k]].src) ok = false;
      int s = c.basis[chain.front()].src, t = c.basis[chain.back()].tgt;
      long total = 2 - static_cast<long>(d);
      int wsum = 0;
      for (int id : chain) total += c.deg(id), wsum += c.basis[id].weight;
      for (const auto& [o, x] : v) {
        if (c.basis[o].src != s || c.basis[o].tgt != t) ok = false;
        if (c.norm(c.deg(o) - total) != 0)
          out.push_back({"degree", chain, v, "output " + c.basis[o].name + " has wrong degree"});
      }
      if (!ok) out.push_back({"composability", chain, v, "inputs or output not composable"});
    }
  return out;
}

/// Residual of the A∞ relation on one chain.
inline Vec ainf_residual(const AInfCategory& c, const std::vector<int>& x) {
  Vec total;
  std::size_t d = x.size();
  long sgn = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (i > 0) sgn += c.rdeg(x[i - 1]);
    for (std::size_t j = 1; i + j <= d; ++j) {
      std::vector<int> inner(x.begin() + i, x.begin() + i + j);
      Vec in = c.eval(inner);
      if (in.empty()) continue;
      std::vector<int> outer(x.begin(), x.begin() + i);
      outer.push_back(-1);
      outer.insert(outer.end(), x.begin() + i + j, x.end());
      for (const auto& [id, coeff] : in) {
        outer[i] = id;
        axpy(total, sign_of(sgn) * coeff, c.eval(outer));
      }
    }
  }
  return total;
}

/// All A∞-relation violations with total arity at most dmax.
inline std::vector<Violation> check_ainf(const AInfCategory& c, int dmax,
                                         const std::function<bool(const std::vector<int>&)>& filter = {}) {
  auto out = check_structure(c);
  for (int d = 1; d <= dmax; ++d)
    c.for_each_chain(d, [&](const std::vector<int>& chain) {
      if (filter && !filter(chain)) return;
      Vec r = ainf_residual(c, chain);
      if (!r.empty()) out.push_back({"associativity", chain, r, ""});
    });
  return out;
}

inline std::vector<Violation> check_units(const AInfCategory& c, int dmax = 3) {
  std::vector<Violation> out;
  for (std::size_t o = 0; o < c.objects.size(); ++o) {
    int e = c.units[o];
    if (e < 0) {
      out.push_back({"unit", {}, {}, "no unit for object " + c.objects[o]});
      continue;
    }
    if (c.deg(e) != 0 || c.basis[e].weight != 0) out.push_back({"unit", {e}, {}, "unit not in degree 0"});
    if (!c.eval({e}).empty()) out.push_back({"unit", {e}, c.eval({e}), "mu1(e) != 0"});
  }
  for (std::size_t id = 0; id < c.basis.size(); ++id) {
    const auto& m = c.basis[id];
    int x = static_cast<int>(id);
    int es = c.units[m.src], et = c.units[m.tgt];
    if (es >= 0) {
      Vec r = c.eval({es, x});
      add_entry(r, x, Q(-1));
      if (!r.empty()) out.push_back({"unit", {es, x}, r, "mu2(x,e) != x"});
    }
    if (et >= 0) {
      Vec r = c.eval({x, et});
      add_entry(r, x, Q(-sign_of(c.deg(x))));
      if (!r.empty()) out.push_back({"unit", {x, et}, r, "mu2(e,x) != (-1)^|x| x"});
    }
  }
  for (std::size_t d = 3; d < c.mu.size() && static_cast<int>(d) <= std::max(dmax, 3); ++d)
    for (const auto& [chain, v] : c.mu[d])
      for (int id : chain)
        if (c.is_unit(id)) {
          out.push_back({"unit", chain, v, "higher product with unit input"});
          break;
        }
  return out;
}

/// Insert the strict-unit products μ²(x,e) = x and μ²(e,x) = (-1)^|x| x.
inline void add_unit_products(AInfCategory& c) {
  for (std::size_t id = 0; id < c.basis.size(); ++id) {
    const auto& m = c.basis[id];
    int x = static_cast<int>(id);
    int es = c.units[m.src], et = c.units[m.tgt];
    if (es >= 0 && c.eval({es, x}).empty()) c.add_mu({es, x}, x, Q(1));
    if (et >= 0 && c.eval({x, et}).empty()) c.add_mu({x, et}, x, Q(sign_of(c.deg(x))));
  }
}

/// Turn an associative composition x2∘x1 into μ²(x2,x1) = (-1)^|x1| x2 x1.
inline void add_product(AInfCategory& c, int x2, int x1, int out, const Q& coeff) {
  c.add_mu({x1, x2}, out, coeff * sign_of(c.deg(x1)));
}

/// Copy of c with degrees reduced modulo m (m must be even).
inline AInfCategory reduce_grading(const AInfCategory& c, int m) {
  AInfCategory r = c;
  r.modulus = m;
  for (auto& b : r.basis) b.degree = reduce_degree(b.degree, m);
  return r;
}

inline std::string describe(const AInfCategory& c, const Violation& v) {
  std::ostringstream os;
  os << v.kind << " (";
  for (std::size_t k = v.inputs.size(); k-- > 0;) {
    os << c.basis[v.inputs[k]].name << (k ? "," : "");
  }
  os << ")";
  for (const auto& [id, x] : v.residual) os << " " << x << "*" << c.basis[id].name;
  if (!v.detail.empty()) os << " " << v.detail;
  return os.str();
}

}  // namespace ncp
