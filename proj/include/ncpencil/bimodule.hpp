#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "category.hpp"
#include "twisted.hpp"

namespace ncp {

/// A∞-bimodule over a finite category.
///
/// Structure maps μ^{s;1;r} are keyed by (r, chain) where chain lists
/// x1..xr, y, x(r+1)..x(r+s) in chain order and chain[r] is a module id.
class Bimodule {
 public:
  AInfCategory base;
  std::vector<Morphism> basis;  // element of Q(X0, X1) has src X0, tgt X1
  std::map<std::pair<int, std::vector<int>>, Vec> mu;

  Bimodule() = default;
  explicit Bimodule(AInfCategory a) : base(std::move(a)) {}

  int modulus() const { return base.modulus; }
  long norm(long d) const { return reduce_degree(d, base.modulus); }

  int add_basis(const std::string& name, int x0, int x1, long degree, int weight = 0) {
    basis.push_back({name, x0, x1, norm(degree), weight});
    int id = static_cast<int>(basis.size()) - 1;
    spaces_[{x0, x1}].push_back(id);
    return id;
  }

  const std::vector<int>& space(int x0, int x1) const {
    static const std::vector<int> empty;
    auto it = spaces_.find({x0, x1});
    return it == spaces_.end() ? empty : it->second;
  }

  long deg(int y) const { return basis[y].degree; }

  void add_mu(int r, const std::vector<int>& chain, int out, const Q& c) {
    if (c == 0) return;
    auto key = std::make_pair(r, chain);
    auto& v = mu[key];
    add_entry(v, out, c);
    if (v.empty()) mu.erase(key);
  }

  Vec eval(int r, const std::vector<int>& chain) const {
    auto it = mu.find({r, chain});
    return it == mu.end() ? Vec{} : it->second;
  }

  /// Evaluate with a vector in the module slot.
  Vec eval_at(int r, std::vector<int> chain, const Vec& y) const {
    Vec out;
    for (const auto& [id, c] : y) {
      chain[r] = id;
      axpy(out, c, eval(r, chain));
    }
    return out;
  }

  /// (Q(x0,x1), μ^{0;1;0}) in local coordinates.
  CochainComplex complex(int x0, int x1) const {
    CochainComplex c;
    c.space.modulus = modulus();
    const auto& ids = space(x0, x1);
    std::map<int, int> local;
    for (std::size_t i = 0; i < ids.size(); ++i) local[ids[i]] = static_cast<int>(i);
    for (int id : ids) {
      c.space.basis.push_back({basis[id].name, basis[id].degree, basis[id].weight});
      Vec v;
      for (const auto& [o, x] : eval(0, {id})) add_entry(v, local.at(o), x);
      c.d.push_back(std::move(v));
    }
    return c;
  }

  std::map<long, std::size_t> cohomology_dims(int x0, int x1) const {
    return cohomology(complex(x0, x1)).dims();
  }

  /// Differential part only: a dg-style bimodule has no entries with r + s > 1
  /// other than unit actions.
  int max_arity() const {
    int m = 0;
    for (const auto& [k, v] : mu) m = std::max(m, static_cast<int>(k.second.size()));
    return m;
  }

 private:
  std::map<std::pair<int, int>, std::vector<int>> spaces_;
};

inline long sum_rdeg(const AInfCategory& a, const std::vector<int>& chain, std::size_t from, std::size_t to) {
  long s = 0;
  for (std::size_t k = from; k < to; ++k) s += a.rdeg(chain[k]);
  return s;
}

/// The square-zero category A ⊕ Q[1]; Q-elements follow A's basis.
inline AInfCategory trivial_extension(const Bimodule& q) {
  AInfCategory t = q.base;
  int off = static_cast<int>(t.basis.size());
  for (const auto& m : q.basis) t.add_basis(m.name, m.src, m.tgt, m.degree - 1, m.weight);
  for (const auto& [key, v] : q.mu) {
    auto chain = key.second;
    chain[key.first] += off;
    Vec out;
    for (const auto& [o, c] : v) add_entry(out, o + off, c);
    t.set_mu(chain, out);
  }
  return t;
}

/// Violations of the bimodule equations and unit conditions up to total arity cap.
inline std::vector<Violation> validate_bimodule(const Bimodule& q, int cap = 4) {
  AInfCategory t = trivial_extension(q);
  int off = static_cast<int>(q.base.basis.size());
  auto count_q = [off](const std::vector<int>& chain) {
    int n = 0;
    for (int id : chain) n += id >= off;
    return n;
  };
  auto out = check_ainf(t, cap, [&](const std::vector<int>& chain) { return count_q(chain) == 1; });
  for (auto& v : check_units(t, cap)) {
    bool involves_q = v.inputs.empty();
    for (int id : v.inputs) involves_q |= id >= off;
    if (involves_q) out.push_back(v);
  }
  return out;
}

/// Diagonal bimodule: Δ[1] carries the operations of A.
inline Bimodule diagonal(const AInfCategory& a) {
  Bimodule d(a);
  for (const auto& m : a.basis) d.add_basis(m.name, m.src, m.tgt, m.degree, m.weight);
  for (std::size_t k = 1; k < a.mu.size(); ++k)
    for (const auto& [chain, v] : a.mu[k])
      for (std::size_t r = 0; r < chain.size(); ++r) {
        int sg = sign_of(sum_rdeg(a, chain, 0, r) + 1);
        for (const auto& [o, c] : v) d.add_mu(static_cast<int>(r), chain, o, c * sg);
      }
  return d;
}

/// Q[k]: degrees lowered by k, single-shift sign applied k times.
inline Bimodule shift(const Bimodule& q, long k) {
  Bimodule s(q.base);
  for (const auto& m : q.basis) s.add_basis(m.name, m.src, m.tgt, m.degree - k, m.weight);
  for (const auto& [key, v] : q.mu) {
    long e = (sum_rdeg(q.base, key.second, 0, key.first) + 1) * k;
    for (const auto& [o, c] : v) s.add_mu(key.first, key.second, o, c * sign_of(e));
  }
  return s;
}

/// Linear dual: Q^∨(X0,X1) = Q(X1,X0)^∨ with dual basis in degree -|y|.
inline Bimodule dual(const Bimodule& q) {
  Bimodule d(q.base);
  for (const auto& m : q.basis) d.add_basis(m.name + "^v", m.tgt, m.src, -m.degree, -m.weight);
  for (const auto& [key, v] : q.mu) {
    const auto& ch = key.second;
    int r = key.first;
    int y = ch[r];
    std::vector<int> dch(ch.begin() + r + 1, ch.end());
    int rd = static_cast<int>(dch.size());
    dch.push_back(-1);
    dch.insert(dch.end(), ch.begin(), ch.begin() + r);
    int sg = sign_of(q.deg(y) - 1);
    for (const auto& [yp, c] : v) {
      dch[rd] = yp;
      d.add_mu(rd, dch, y, c * sg);
    }
  }
  return d;
}

/// Direct sum of bimodules over the same base.
inline Bimodule direct_sum(const Bimodule& p, const Bimodule& q) {
  Bimodule s(p.base);
  for (const auto& m : p.basis) s.add_basis(m.name, m.src, m.tgt, m.degree, m.weight);
  int off = static_cast<int>(p.basis.size());
  for (const auto& m : q.basis) s.add_basis(m.name, m.src, m.tgt, m.degree, m.weight);
  s.mu = p.mu;
  for (const auto& [key, v] : q.mu) {
    auto ch = key.second;
    ch[key.first] += off;
    for (const auto& [o, c] : v) s.add_mu(key.first, ch, o + off, c);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Base changes

/// A ⊔ {★}: same ids for A, plus a new object with a unit appended last.
inline AInfCategory with_point(const AInfCategory& a, const std::string& name = "*") {
  AInfCategory b = a;
  int s = b.add_object(name);
  int e = b.add_unit(s, "e_" + name);
  b.add_mu({e}, e, 0);
  b.add_mu({e, e}, e, Q(1));
  return b;
}

/// Same bimodule viewed over a larger base whose ids extend the old ones.
inline Bimodule extend_base(const Bimodule& q, const AInfCategory& bigger) {
  Bimodule r = q;
  r.base = bigger;
  return r;
}

/// Drop trailing base objects; entries touching them must be absent.
inline Bimodule restrict_base(const Bimodule& q, const AInfCategory& smaller) {
  Bimodule r(smaller);
  int nobj = static_cast<int>(smaller.objects.size());
  int nb = static_cast<int>(smaller.basis.size());
  std::map<int, int> ids;
  for (std::size_t y = 0; y < q.basis.size(); ++y) {
    const auto& m = q.basis[y];
    if (m.src >= nobj || m.tgt >= nobj) continue;
    ids[static_cast<int>(y)] = r.add_basis(m.name, m.src, m.tgt, m.degree, m.weight);
  }
  for (const auto& [key, v] : q.mu) {
    auto ch = key.second;
    bool ok = ids.count(ch[key.first]) > 0;
    for (std::size_t k = 0; k < ch.size(); ++k)
      if (static_cast<int>(k) != key.first && ch[k] >= nb) ok = false;
    if (!ok) continue;
    ch[key.first] = ids.at(ch[key.first]);
    for (const auto& [o, c] : v)
      if (ids.count(o)) r.add_mu(key.first, ch, ids.at(o), c);
  }
  return r;
}

/// Bimodule over a subcategory A ⊂ F from the diagonal of F; a_to_f maps ids.
inline Bimodule restricted_diagonal(const AInfCategory& f, const AInfCategory& a, const std::vector<int>& a_to_f) {
  Bimodule d(a);
  for (const auto& m : f.basis) d.add_basis(m.name, m.src, m.tgt, m.degree, m.weight);
  std::map<int, int> f_to_a;
  for (std::size_t i = 0; i < a_to_f.size(); ++i) f_to_a[a_to_f[i]] = static_cast<int>(i);
  for (std::size_t k = 1; k < f.mu.size(); ++k)
    for (const auto& [chain, v] : f.mu[k])
      for (std::size_t r = 0; r < chain.size(); ++r) {
        std::vector<int> ch(chain.size());
        bool ok = true;
        for (std::size_t j = 0; j < chain.size(); ++j) {
          if (j == r) {
            ch[j] = chain[j];
          } else if (f_to_a.count(chain[j])) {
            ch[j] = f_to_a.at(chain[j]);
          } else {
            ok = false;
          }
        }
        if (!ok) continue;
        int sg = sign_of(sum_rdeg(f, chain, 0, r) + 1);
        for (const auto& [o, c] : v) d.add_mu(static_cast<int>(r), ch, o, c * sg);
      }
  return d;
}

// ---------------------------------------------------------------------------
// Yoneda modules of twisted complexes, as bimodules over A ⊔ {★}

/// I^right(T): M(Z, ★) = tw(Z, T) for Z in A. obj_of maps A-objects to the
/// tw objects representing them (single unshifted summands).
inline Bimodule yoneda_right(const TwCategory& tw, const AInfCategory& a, const std::vector<int>& obj_of, int t) {
  AInfCategory b = with_point(a);
  int star = static_cast<int>(a.objects.size());
  int estar = b.units[star];
  Bimodule m(b);
  const auto& c = tw.category();
  std::map<int, int> ids;
  for (int z = 0; z < static_cast<int>(a.objects.size()); ++z)
    for (int g : c.hom(obj_of[z], t)) ids[g] = m.add_basis(c.basis[g].name, z, star, c.basis[g].degree, c.basis[g].weight);
  auto lift = [&](int x) { return tw.lift(obj_of[a.basis[x].src], obj_of[a.basis[x].tgt], 0, 0, x); };
  for (std::size_t k = 1; k < c.mu.size(); ++k)
    for (const auto& [chain, v] : c.mu[k]) {
      if (c.basis[chain.back()].tgt != t || !ids.count(chain.back())) continue;
      std::vector<int> ch;
      bool ok = true;
      for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
        int found = -1;
        for (std::size_t x = 0; x < a.basis.size(); ++x)
          if (lift(static_cast<int>(x)) == chain[j]) found = static_cast<int>(x);
        if (found < 0) ok = false;
        ch.push_back(found);
      }
      if (!ok) continue;
      int r = static_cast<int>(ch.size());
      ch.push_back(ids.at(chain.back()));
      int sg = sign_of(sum_rdeg(c, chain, 0, r) + 1);
      for (const auto& [o, x] : v) m.add_mu(r, ch, ids.at(o), x * sg);
    }
  for (const auto& [g, y] : ids) m.add_mu(0, {y, estar}, y, Q(sign_of(m.deg(y) - 1)));
  return m;
}

/// I^left(T): N(★, Z) = tw(T, Z) for Z in A.
inline Bimodule yoneda_left(const TwCategory& tw, const AInfCategory& a, const std::vector<int>& obj_of, int t) {
  AInfCategory b = with_point(a);
  int star = static_cast<int>(a.objects.size());
  int estar = b.units[star];
  Bimodule m(b);
  const auto& c = tw.category();
  std::map<int, int> ids;
  for (int z = 0; z < static_cast<int>(a.objects.size()); ++z)
    for (int g : c.hom(t, obj_of[z])) ids[g] = m.add_basis(c.basis[g].name, star, z, c.basis[g].degree, c.basis[g].weight);
  std::map<int, int> a_of_lift;
  for (std::size_t x = 0; x < a.basis.size(); ++x)
    a_of_lift[tw.lift(obj_of[a.basis[x].src], obj_of[a.basis[x].tgt], 0, 0, static_cast<int>(x))] = static_cast<int>(x);
  for (std::size_t k = 1; k < c.mu.size(); ++k)
    for (const auto& [chain, v] : c.mu[k]) {
      if (!ids.count(chain.front())) continue;
      std::vector<int> ch{ids.at(chain.front())};
      bool ok = true;
      for (std::size_t j = 1; j < chain.size(); ++j) {
        auto it = a_of_lift.find(chain[j]);
        if (it == a_of_lift.end()) {
          ok = false;
          break;
        }
        ch.push_back(it->second);
      }
      if (!ok) continue;
      for (const auto& [o, x] : v) m.add_mu(0, ch, ids.at(o), -x);
    }
  for (const auto& [g, y] : ids) m.add_mu(1, {estar, y}, y, Q(1));
  return m;
}

// ---------------------------------------------------------------------------
// Bimodule maps

struct BimoduleMap {
  const Bimodule* source = nullptr;
  const Bimodule* target = nullptr;
  long degree = 0;
  std::map<std::pair<int, std::vector<int>>, Vec> components;  // same keys as Bimodule::mu

  void add(int r, const std::vector<int>& chain, int out, const Q& c) {
    if (c == 0) return;
    auto key = std::make_pair(r, chain);
    auto& v = components[key];
    add_entry(v, out, c);
    if (v.empty()) components.erase(key);
  }
};

inline BimoduleMap identity_map(const Bimodule& q) {
  BimoduleMap f{&q, &q, 0, {}};
  for (std::size_t y = 0; y < q.basis.size(); ++y) f.add(0, {static_cast<int>(y)}, static_cast<int>(y), Q(1));
  return f;
}

/// Cone(f) = P[1] ⊕ Q for a closed degree-0 map f: P → Q.
inline Bimodule cone(const BimoduleMap& f) {
  const Bimodule& p = *f.source;
  const Bimodule& q = *f.target;
  Bimodule c = direct_sum(shift(p, 1), q);
  int off = static_cast<int>(p.basis.size());
  for (const auto& [key, v] : f.components) {
    long e = sum_rdeg(p.base, key.second, 0, key.first);
    for (const auto& [o, x] : v) c.add_mu(key.first, key.second, o + off, x * sign_of(e));
  }
  return c;
}

}  // namespace ncp
