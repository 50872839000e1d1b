#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bimodule.hpp"

namespace ncp {

class NotDirectedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cycle of non-unit morphisms (object indices), empty if the category is directed.
inline std::vector<int> find_cycle(const AInfCategory& a) {
  int n = static_cast<int>(a.objects.size());
  std::vector<std::vector<int>> adj(n);
  for (std::size_t id = 0; id < a.basis.size(); ++id)
    if (!a.is_unit(static_cast<int>(id))) adj[a.basis[id].src].push_back(a.basis[id].tgt);
  std::vector<int> state(n, 0), stack;
  std::vector<int> cycle;
  std::function<bool(int)> dfs = [&](int u) {
    state[u] = 1;
    stack.push_back(u);
    for (int v : adj[u]) {
      if (state[v] == 1) {
        auto it = std::find(stack.begin(), stack.end(), v);
        cycle.assign(it, stack.end());
        cycle.push_back(v);
        return true;
      }
      if (state[v] == 0 && dfs(v)) return true;
    }
    stack.pop_back();
    state[u] = 2;
    return false;
  };
  for (int u = 0; u < n; ++u)
    if (state[u] == 0 && dfs(u)) return cycle;
  return {};
}

inline void require_directed(const AInfCategory& a) {
  auto c = find_cycle(a);
  if (c.empty()) return;
  std::string s;
  for (int o : c) s += (s.empty() ? "" : " -> ") + a.objects[o];
  throw NotDirectedError("base category is not directed: " + s);
}

/// Chains of non-unit morphisms in chain order; ending at (or starting from) obj.
inline std::vector<std::vector<int>> nonunit_chains(const AInfCategory& a, int obj, bool ending, int maxlen) {
  std::vector<std::vector<int>> out{{}};
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int o) {
    if (static_cast<int>(cur.size()) >= maxlen) return;
    for (std::size_t id = 0; id < a.basis.size(); ++id) {
      int x = static_cast<int>(id);
      if (a.is_unit(x)) continue;
      const auto& m = a.basis[id];
      if ((ending ? m.tgt : m.src) != o) continue;
      cur.push_back(x);
      std::vector<int> c = cur;
      if (ending) std::reverse(c.begin(), c.end());
      out.push_back(c);
      rec(ending ? m.src : m.tgt);
      cur.pop_back();
    }
  };
  rec(obj);
  return out;
}

/// All composable chains of length len ending at (or starting from) obj.
inline std::vector<std::vector<int>> chains_near(const AInfCategory& a, int obj, int len, bool ending) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int o) {
    if (static_cast<int>(cur.size()) == len) {
      std::vector<int> c = cur;
      if (ending) std::reverse(c.begin(), c.end());
      out.push_back(c);
      return;
    }
    for (std::size_t id = 0; id < a.basis.size(); ++id) {
      const auto& m = a.basis[id];
      if ((ending ? m.tgt : m.src) != o) continue;
      cur.push_back(static_cast<int>(id));
      rec(ending ? m.src : m.tgt);
      cur.pop_back();
    }
  };
  rec(obj);
  return out;
}

inline std::vector<std::vector<int>> chains_to(const AInfCategory& a, int obj, int len) {
  return chains_near(a, obj, len, true);
}

inline std::vector<std::vector<int>> chains_from(const AInfCategory& a, int obj, int len) {
  return chains_near(a, obj, len, false);
}

inline int default_length(const AInfCategory& a) { return static_cast<int>(a.objects.size()); }

// ---------------------------------------------------------------------------
// Bar tensor product

/// P ⊗_A Q with words [q, a1..ak, p] (chain order), q ∈ Q(X0,Z0), p ∈ P(Zk,X1).
/// The base must be directed.
inline Bimodule tensor(const Bimodule& p, const Bimodule& q, int cap = 0) {
  const AInfCategory& a = p.base;
  require_directed(a);
  Bimodule t(a);
  std::vector<std::vector<int>> words;  // [q, a..., p]
  std::map<std::vector<int>, int> index;
  for (std::size_t qi = 0; qi < q.basis.size(); ++qi) {
    const auto& qm = q.basis[qi];
    for (const auto& ch : nonunit_chains(a, qm.tgt, false, default_length(a))) {
      int end = ch.empty() ? qm.tgt : a.basis[ch.back()].tgt;
      for (std::size_t pi = 0; pi < p.basis.size(); ++pi) {
        if (p.basis[pi].src != end) continue;
        std::vector<int> w{static_cast<int>(qi)};
        w.insert(w.end(), ch.begin(), ch.end());
        w.push_back(static_cast<int>(pi));
        long dg = qm.degree + p.basis[pi].degree;
        int wt = qm.weight + p.basis[pi].weight;
        std::string nm = qm.name;
        for (int x : ch) dg += a.rdeg(x), wt += a.basis[x].weight, nm += "|" + a.basis[x].name;
        nm += "|" + p.basis[pi].name;
        index[w] = t.add_basis(nm, qm.src, p.basis[pi].tgt, dg, wt);
        words.push_back(w);
      }
    }
  }
  auto emit = [&](Vec& out, const std::vector<int>& w, const Q& c) {
    auto it = index.find(w);
    if (it == index.end()) throw std::logic_error("tensor: word outside enumeration");
    add_entry(out, it->second, c);
  };
  // contributions of one word with r right inputs xs and s left inputs ys
  auto ops = [&](const std::vector<int>& w, const std::vector<int>& xs, const std::vector<int>& ys) {
    Vec out;
    int k = static_cast<int>(w.size()) - 2;
    int r = static_cast<int>(xs.size()), s = static_cast<int>(ys.size());
    if (r > 0 && s > 0) return out;
    long lq = q.deg(w[0]);
    if (s == 0) {
      for (int j = 0; j <= k; ++j) {
        std::vector<int> ch = xs;
        ch.push_back(w[0]);
        ch.insert(ch.end(), w.begin() + 1, w.begin() + 1 + j);
        for (const auto& [o, c] : q.eval(r, ch)) {
          std::vector<int> nw{o};
          nw.insert(nw.end(), w.begin() + 1 + j, w.end());
          emit(out, nw, c);
        }
      }
    }
    if (r > 0) return out;
    long sg = lq;
    for (int i = 1; i <= k + 1; ++i) {
      if (s == 0) {
        for (int j = i; j <= k; ++j) {
          std::vector<int> blk(w.begin() + i, w.begin() + j + 1);
          for (const auto& [o, c] : a.eval(blk)) {
            if (a.is_unit(o)) continue;
            std::vector<int> nw(w.begin(), w.begin() + i);
            nw.push_back(o);
            nw.insert(nw.end(), w.begin() + j + 1, w.end());
            emit(out, nw, c * sign_of(sg));
          }
        }
      }
      std::vector<int> ch(w.begin() + i, w.end());
      ch.insert(ch.end(), ys.begin(), ys.end());
      for (const auto& [o, c] : p.eval(k + 1 - i, ch)) {
        std::vector<int> nw(w.begin(), w.begin() + i);
        nw.push_back(o);
        emit(out, nw, c * sign_of(sg));
      }
      if (i <= k) sg += a.rdeg(w[i]);
    }
    return out;
  };
  int amax = cap > 0 ? cap : std::max({p.max_arity(), q.max_arity(), 2}) - 1;
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    const auto& w = words[wi];
    int x0 = q.basis[w.front()].src, x1 = p.basis[w.back()].tgt;
    for (int r = 0; r <= amax; ++r) {
      for (const auto& xs : chains_to(a, x0, r))
        if (auto v = ops(w, xs, {}); !v.empty()) {
          std::vector<int> key = xs;
          key.push_back(static_cast<int>(wi));
          for (const auto& [o, c] : v) t.add_mu(r, key, o, c);
        }
    }
    for (int s = 1; s <= amax; ++s)
      for (const auto& ys : chains_from(a, x1, s))
        if (auto v = ops(w, {}, ys); !v.empty()) {
          std::vector<int> key{static_cast<int>(wi)};
          key.insert(key.end(), ys.begin(), ys.end());
          for (const auto& [o, c] : v) t.add_mu(0, key, o, c);
        }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Hom complexes

/// Words [x1..xr, p, x(r+1)..x(r+s)] of non-unit inputs around p ∈ P.
struct Word {
  int r;
  std::vector<int> chain;
};

inline std::vector<Word> module_words(const Bimodule& p, int maxlen) {
  std::vector<Word> out;
  const auto& a = p.base;
  for (std::size_t pi = 0; pi < p.basis.size(); ++pi) {
    const auto& m = p.basis[pi];
    for (const auto& xs : nonunit_chains(a, m.src, true, maxlen))
      for (const auto& ys : nonunit_chains(a, m.tgt, false, maxlen - static_cast<int>(xs.size()))) {
        Word w{static_cast<int>(xs.size()), xs};
        w.chain.push_back(static_cast<int>(pi));
        w.chain.insert(w.chain.end(), ys.begin(), ys.end());
        out.push_back(std::move(w));
      }
  }
  return out;
}

/// The complex of bimodule pre-morphisms P → Q.
///
/// A cochain assigns to each word w over P a vector in Q(src w, tgt w); the
/// coordinate (w, q) has degree |q| - |p| - Σ‖x‖. Without an arity bound the
/// base must be directed; with one, the truncation is still a quotient complex.
class HomComplex {
 public:
  struct Coord {
    int word, q;
  };

  HomComplex(const Bimodule& p, const Bimodule& q, int maxlen = -1) : p_(p), q_(q) {
    const auto& a = p.base;
    if (maxlen < 0) {
      require_directed(a);
      maxlen = default_length(a);
    }
    words_ = module_words(p, maxlen);
    for (std::size_t i = 0; i < words_.size(); ++i) windex_[{words_[i].r, words_[i].chain}] = static_cast<int>(i);
    space_.modulus = a.modulus;
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      const auto& w = words_[wi];
      auto [s, t] = ends(w);
      long wd = p.deg(w.chain[w.r]);
      for (std::size_t k = 0; k < w.chain.size(); ++k)
        if (static_cast<int>(k) != w.r) wd += a.rdeg(w.chain[k]);
      for (int qi : q.space(s, t)) {
        cindex_[{static_cast<int>(wi), qi}] = static_cast<int>(coords_.size());
        coords_.push_back({static_cast<int>(wi), qi});
        space_.basis.push_back({name(w) + "->" + q.basis[qi].name, q.deg(qi) - wd, 0});
      }
    }
    for (auto& g : space_.basis) g.degree = reduce_degree(g.degree, a.modulus);
    build();
  }

  const std::vector<Word>& words() const { return words_; }
  const std::vector<Coord>& coords() const { return coords_; }
  const GradedSpace& space() const { return space_; }
  const CochainComplex& complex() const { return cx_; }

  int coord(int word, int q) const {
    auto it = cindex_.find({word, q});
    return it == cindex_.end() ? -1 : it->second;
  }
  int word_index(int r, const std::vector<int>& chain) const {
    auto it = windex_.find({r, chain});
    return it == windex_.end() ? -1 : it->second;
  }

  /// Cochain of a map given by components keyed like Bimodule::mu.
  Vec cochain(const BimoduleMap& f) const {
    Vec v;
    for (const auto& [key, out] : f.components) {
      int wi = word_index(key.first, key.second);
      if (wi < 0) continue;
      for (const auto& [qi, c] : out) add_entry(v, coord(wi, qi), c);
    }
    return v;
  }

  BimoduleMap to_map(const Vec& v) const {
    BimoduleMap f{&p_, &q_, 0, {}};
    for (const auto& [ci, c] : v) {
      const auto& w = words_[coords_[ci].word];
      f.add(w.r, w.chain, coords_[ci].q, c);
      f.degree = space_.degree(ci);
    }
    return f;
  }

  Vec differential(const Vec& v) const {
    Vec out;
    for (const auto& [ci, c] : v) axpy(out, c, cx_.d[ci]);
    return out;
  }

  std::map<long, std::size_t> cohomology_dims() const { return cohomology(cx_).dims(); }

  /// The (0;1;0) part of a cochain as a map P(x0,x1) → Q(x0,x1) in local coordinates.
  std::vector<Vec> linear_part(const Vec& v, int x0, int x1) const {
    const auto& qs = q_.space(x0, x1);
    std::map<int, int> local;
    for (std::size_t i = 0; i < qs.size(); ++i) local[qs[i]] = static_cast<int>(i);
    std::vector<Vec> cols;
    for (int pi : p_.space(x0, x1)) {
      Vec col;
      int wi = word_index(0, {pi});
      for (const auto& [ci, c] : v)
        if (coords_[ci].word == wi) add_entry(col, local.at(coords_[ci].q), c);
      cols.push_back(col);
    }
    return cols;
  }

 private:
  std::pair<int, int> ends(const Word& w) const {
    const auto& a = p_.base;
    int s = w.r > 0 ? a.basis[w.chain.front()].src : p_.basis[w.chain[w.r]].src;
    int last = static_cast<int>(w.chain.size()) - 1;
    int t = last > w.r ? a.basis[w.chain.back()].tgt : p_.basis[w.chain[w.r]].tgt;
    return {s, t};
  }

  std::string name(const Word& w) const {
    std::string s;
    for (std::size_t k = 0; k < w.chain.size(); ++k) {
      if (k) s += "|";
      s += static_cast<int>(k) == w.r ? p_.basis[w.chain[k]].name : p_.base.basis[w.chain[k]].name;
    }
    return s;
  }

  // parity contribution of chain element k
  long par(const Word& w, std::size_t k) const {
    return static_cast<int>(k) == w.r ? p_.deg(w.chain[k]) : p_.base.rdeg(w.chain[k]);
  }

  void build() {
    const auto& a = p_.base;
    cx_.space = space_;
    cx_.d.assign(coords_.size(), Vec{});
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      const auto& w = words_[wi];
      int len = static_cast<int>(w.chain.size());
      // outer terms μ_Q(L; φ(M); R)
      for (int i = 0; i <= w.r; ++i)
        for (int j = w.r; j < len; ++j) {
          std::vector<int> mid(w.chain.begin() + i, w.chain.begin() + j + 1);
          int mi = word_index(w.r - i, mid);
          if (mi < 0) continue;
          long lsum = 0;
          for (int k = 0; k < i; ++k) lsum += par(w, k);
          std::vector<int> qch(w.chain.begin(), w.chain.begin() + i);
          qch.push_back(-1);
          qch.insert(qch.end(), w.chain.begin() + j + 1, w.chain.end());
          for (int qi = 0; qi < static_cast<int>(q_.basis.size()); ++qi) {
            int ci = coord(mi, qi);
            if (ci < 0) continue;
            qch[i] = qi;
            Vec r = q_.eval(i, qch);
            if (r.empty()) continue;
            long g = space_.degree(ci);
            for (const auto& [o, c] : r) add_entry(cx_.d[ci], coord(static_cast<int>(wi), o), c * sign_of(g * lsum));
          }
        }
      // inner terms φ(w with a block replaced by μ)
      long lsum = 0;
      for (int i = 0; i < len; ++i) {
        for (int j = i; j < len; ++j) {
          std::vector<int> blk(w.chain.begin() + i, w.chain.begin() + j + 1);
          bool has_p = i <= w.r && w.r <= j;
          Vec r = has_p ? p_.eval(w.r - i, blk) : a.eval(blk);
          for (const auto& [o, c] : r) {
            if (!has_p && a.is_unit(o)) continue;
            std::vector<int> nw(w.chain.begin(), w.chain.begin() + i);
            nw.push_back(o);
            nw.insert(nw.end(), w.chain.begin() + j + 1, w.chain.end());
            int nr = has_p ? i : (j < w.r ? w.r - (j - i) : w.r);
            int ni = word_index(nr, nw);
            if (ni < 0) continue;
            auto [s, t] = ends(w);
            for (int qi : q_.space(s, t)) {
              int ci = coord(ni, qi);
              long g = space_.degree(ci);
              add_entry(cx_.d[ci], coord(static_cast<int>(wi), qi), -c * sign_of(g + lsum));
            }
          }
        }
        lsum += par(w, i);
      }
    }
  }

  const Bimodule& p_;
  const Bimodule& q_;
  std::vector<Word> words_;
  std::map<std::pair<int, std::vector<int>>, int> windex_;
  std::vector<Coord> coords_;
  std::map<std::pair<int, int>, int> cindex_;
  GradedSpace space_;
  CochainComplex cx_;
};

/// Rank of the map induced on cohomology by a chain map P(x0,x1) → Q(x0,x1).
inline bool induces_iso(const Bimodule& p, const Bimodule& q, const std::vector<Vec>& f, int x0, int x1) {
  auto hp = cohomology(p.complex(x0, x1));
  auto hq = cohomology(q.complex(x0, x1));
  if (hp.dims() != hq.dims()) return false;
  for (const auto& [d, reps] : hp.reps) {
    std::vector<Vec> imgs;
    for (const auto& z : reps) {
      Vec img;
      for (const auto& [i, c] : z) axpy(img, c, f[i]);
      auto cls = hq.class_of(d, img);
      if (!cls) return false;
      Vec col;
      for (std::size_t i = 0; i < cls->size(); ++i) add_entry(col, static_cast<int>(i), (*cls)[i]);
      imgs.push_back(col);
    }
    if (rank_of(imgs) != reps.size()) return false;
  }
  return true;
}

struct QuasiIsoWitness {
  BimoduleMap map;
  Vec cochain;
};

/// Search H^0 of the hom complex for a cocycle inducing isomorphisms on every
/// hom space: echelon representatives, then small integer combinations.
inline std::optional<QuasiIsoWitness> quasi_iso_detect(const Bimodule& p, const Bimodule& q, int maxlen = -1) {
  const auto& a = p.base;
  for (int x0 = 0; x0 < static_cast<int>(a.objects.size()); ++x0)
    for (int x1 = 0; x1 < static_cast<int>(a.objects.size()); ++x1)
      if (p.cohomology_dims(x0, x1) != q.cohomology_dims(x0, x1)) return std::nullopt;
  HomComplex h(p, q, maxlen);
  auto coh = cohomology(h.complex());
  auto it = coh.reps.find(0);
  if (it == coh.reps.end()) return std::nullopt;
  const auto& reps = it->second;
  auto works = [&](const Vec& v) {
    for (int x0 = 0; x0 < static_cast<int>(a.objects.size()); ++x0)
      for (int x1 = 0; x1 < static_cast<int>(a.objects.size()); ++x1)
        if (!induces_iso(p, q, h.linear_part(v, x0, x1), x0, x1)) return false;
    return true;
  };
  std::vector<Vec> candidates(reps.begin(), reps.end());
  std::size_t n = reps.size();
  if (n > 1 && n <= 6) {
    const std::vector<int> vals{-1, 0, 1, 2};
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      Vec v;
      for (std::size_t i = 0; i < n; ++i) axpy(v, Q(vals[idx[i]]), reps[i]);
      if (!v.empty()) candidates.push_back(v);
      std::size_t k = 0;
      while (k < n && ++idx[k] == vals.size()) idx[k++] = 0;
      if (k == n) break;
    }
  }
  for (const auto& v : candidates)
    if (works(v)) return QuasiIsoWitness{h.to_map(v), v};
  return std::nullopt;
}

}  // namespace ncp
