#pragma once

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "category.hpp"

namespace ncp {

/// One-sided twisted complex: summands (object, shift) with a strictly lower
/// triangular differential, entry (from, to, morphism, coeff) with from < to.
struct TwistedComplex {
  struct Summand {
    int object;
    long shift;
  };
  struct Entry {
    int from, to, morphism;
    Q coeff;
  };
  std::string name;
  std::vector<Summand> summands;
  std::vector<Entry> delta;

  static TwistedComplex object(const std::string& name, int obj, long shift = 0) {
    return {name, {{obj, shift}}, {}};
  }
};

/// Shift every summand by k: T[k].
inline TwistedComplex shifted(TwistedComplex t, long k, const std::string& name = "") {
  for (auto& s : t.summands) s.shift += k;
  if (!name.empty()) t.name = name;
  return t;
}

/// Re-express a complex over a larger category through a morphism id map.
inline TwistedComplex push_forward(TwistedComplex t, const std::vector<int>& id_map) {
  for (auto& e : t.delta) e.morphism = id_map.at(e.morphism);
  return t;
}

class TwError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The full A∞-subcategory of twisted complexes on a chosen list of objects.
///
/// Shifted summands follow μ_Σ(a_d,…,a_1) = (-1)^{σ_0} μ(a_d,…,a_1) where σ_0
/// is the shift of the source summand of a_1.
class TwCategory {
 public:
  TwCategory(const AInfCategory& base, std::vector<TwistedComplex> complexes, int dcap = 0)
      : base_(base), cx_(std::move(complexes)) {
    cat_.modulus = base.modulus;
    for (const auto& t : cx_) {
      for (const auto& e : t.delta)
        if (e.from >= e.to) throw TwError("delta of " + t.name + " is not strictly lower triangular");
      cat_.add_object(t.name);
    }
    for (int p = 0; p < static_cast<int>(cx_.size()); ++p)
      for (int q = 0; q < static_cast<int>(cx_.size()); ++q)
        for (int i = 0; i < static_cast<int>(cx_[p].summands.size()); ++i)
          for (int j = 0; j < static_cast<int>(cx_[q].summands.size()); ++j) {
            const auto& si = cx_[p].summands[i];
            const auto& sj = cx_[q].summands[j];
            for (int b : base.hom(si.object, sj.object)) {
              const auto& m = base.basis[b];
              long dg = m.degree - sj.shift + si.shift;
              std::string nm = m.name + "[" + std::to_string(i) + ">" + std::to_string(j) + "]";
              int id = cat_.add_basis(nm, p, q, dg, m.weight);
              index_[{p, q, i, j, b}] = id;
              info_.push_back({i, j, b});
            }
          }
    for (int p = 0; p < static_cast<int>(cx_.size()); ++p) {
      Vec d;
      for (const auto& e : cx_[p].delta) add_entry(d, lift(p, p, e.from, e.to, e.morphism), e.coeff);
      deltas_.push_back(d);
      if (cx_[p].summands.size() == 1 && base.units[cx_[p].summands[0].object] >= 0 &&
          cx_[p].summands[0].shift % 2 == 0) {
        cat_.units[p] = lift(p, p, 0, 0, base.units[cx_[p].summands[0].object]);
      }
    }
    for (int p = 0; p < static_cast<int>(cx_.size()); ++p) {
      auto r = mc_residual(p);
      if (!r.empty()) throw TwError("Maurer-Cartan equation fails for " + cx_[p].name);
    }
    int amax = base.max_arity();
    int D = dcap > 0 ? std::min(dcap, std::max(amax, 1)) : std::max(amax, 1);
    for (int d = 1; d <= D; ++d)
      cat_.for_each_chain(d, [&](const std::vector<int>& chain) {
        Vec v = twisted_mu(chain);
        if (!v.empty()) cat_.set_mu(chain, v);
      });
  }

  const AInfCategory& category() const { return cat_; }
  const TwistedComplex& complex(int p) const { return cx_[p]; }
  const Vec& delta(int p) const { return deltas_[p]; }

  int lift(int p, int q, int i, int j, int b) const { return index_.at({p, q, i, j, b}); }

  /// Identity of a twisted complex: Σ (-1)^{σ_i} e_i.
  Vec identity(int p) const {
    Vec v;
    for (int i = 0; i < static_cast<int>(cx_[p].summands.size()); ++i) {
      const auto& s = cx_[p].summands[i];
      add_entry(v, lift(p, p, i, i, base_.units.at(s.object)), Q(sign_of(s.shift)));
    }
    return v;
  }

  /// μ_Σ on vectors of tw-basis elements (chain order).
  Vec sigma_mu(const std::vector<Vec>& args) const {
    Vec out;
    std::size_t d = args.size();
    if (d == 0 || d >= base_.mu.size() || base_.mu[d].empty()) return out;
    std::vector<int> tw(d), chain(d);
    std::function<void(std::size_t, const Q&)> rec = [&](std::size_t k, const Q& c) {
      if (k == d) {
        Vec r = base_.eval(chain);
        if (r.empty()) return;
        int p = cat_.basis[tw.front()].src, q = cat_.basis[tw.back()].tgt;
        int i = info_[tw.front()].i, j = info_[tw.back()].j;
        long s0 = cx_[p].summands[i].shift;
        for (const auto& [o, x] : r) add_entry(out, lift(p, q, i, j, o), c * x * sign_of(s0));
        return;
      }
      for (const auto& [id, x] : args[k]) {
        if (k > 0) {
          const auto& prev = cat_.basis[tw[k - 1]];
          if (prev.tgt != cat_.basis[id].src || info_[tw[k - 1]].j != info_[id].i) continue;
        }
        tw[k] = id;
        chain[k] = info_[id].b;
        rec(k + 1, c * x);
      }
    };
    rec(0, Q(1));
    return out;
  }

  Vec mc_residual(int p) const {
    Vec r;
    int amax = base_.max_arity();
    for (int k = 1; k <= amax; ++k) axpy(r, Q(1), sigma_mu(std::vector<Vec>(k, deltas_[p])));
    return r;
  }

  /// μ^d in the twisted category, inserting differentials in every gap.
  Vec twisted_mu(const std::vector<int>& chain) const {
    Vec out;
    int d = static_cast<int>(chain.size());
    int spare = base_.max_arity() - d;
    if (spare < 0) return out;
    std::vector<int> objs(d + 1);
    objs[0] = cat_.basis[chain[0]].src;
    for (int k = 0; k < d; ++k) objs[k + 1] = cat_.basis[chain[k]].tgt;
    std::vector<int> ins(d + 1, 0);
    std::function<void(int, int)> rec = [&](int slot, int left) {
      if (slot == d + 1) {
        std::vector<Vec> args;
        for (int k = 0; k <= d; ++k) {
          for (int r = 0; r < ins[k]; ++r) args.push_back(deltas_[objs[k]]);
          if (k < d) args.push_back(unit_vec(chain[k]));
        }
        axpy(out, Q(1), sigma_mu(args));
        return;
      }
      for (int n = 0; n <= left; ++n) {
        if (n > 0 && deltas_[objs[slot]].empty()) break;
        ins[slot] = n;
        rec(slot + 1, left - n);
      }
      ins[slot] = 0;
    };
    rec(0, spare);
    return out;
  }

 private:
  struct Info {
    int i, j, b;
  };
  AInfCategory base_;
  std::vector<TwistedComplex> cx_;
  AInfCategory cat_;
  std::map<std::tuple<int, int, int, int, int>, int> index_;
  std::vector<Info> info_;
  std::vector<Vec> deltas_;
};

/// Cone of a closed degree-0 morphism c: X → Y as X[1] ⊕ Y.
inline TwistedComplex cone(const AInfCategory& a, const Vec& c, const std::string& name = "Cone") {
  if (c.empty()) throw TwError("cone of an empty vector needs explicit objects");
  int x = a.basis[c.begin()->first].src, y = a.basis[c.begin()->first].tgt;
  for (const auto& [id, v] : c) {
    if (a.basis[id].src != x || a.basis[id].tgt != y) throw TwError("cone input not in a single hom space");
    if (a.norm(a.deg(id)) != 0) throw TwError("cone input not of degree 0");
  }
  Vec dc;
  for (const auto& [id, v] : c) axpy(dc, v, a.eval({id}));
  if (!dc.empty()) throw TwError("cone input is not closed");
  TwistedComplex t{name, {{x, 1}, {y, 0}}, {}};
  for (const auto& [id, v] : c) t.delta.push_back({0, 1, id, v});
  return t;
}

inline TwistedComplex cone_of_zero(int x, int y, const std::string& name = "Cone0") {
  return {name, {{x, 1}, {y, 0}}, {}};
}

inline std::map<long, std::size_t> tw_hom_cohomology(const TwCategory& tw, int p, int q) {
  return tw.category().hom_cohomology_dims(p, q);
}

inline bool is_contractible(const TwCategory& tw, int p) {
  return cohomology(tw.category().hom_complex(p, p)).total() == 0;
}

}  // namespace ncp
