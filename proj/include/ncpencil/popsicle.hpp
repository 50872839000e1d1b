#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ncp::popsicle {

/// Nondecreasing map {1..m} → {1..d}, stored as values p[0..m-1].
using PMap = std::vector<int>;
/// Weights (w0, w1, …, wd).
using Weights = std::vector<int>;

struct WeightedType {
  int d = 1;
  PMap p;
  Weights w;
  int m() const { return static_cast<int>(p.size()); }
};

inline int fibre_size(const PMap& p, int k) {
  return static_cast<int>(std::count(p.begin(), p.end(), k));
}

inline bool is_nondecreasing(const PMap& p) { return std::is_sorted(p.begin(), p.end()); }

/// Empty if the type satisfies the sprinkle count identity and the upper bound.
inline std::vector<std::string> type_violations(const WeightedType& t) {
  std::vector<std::string> out;
  if (static_cast<int>(t.w.size()) != t.d + 1) out.push_back("weight vector has wrong length");
  if (!is_nondecreasing(t.p)) out.push_back("p is not nondecreasing");
  for (int v : t.p)
    if (v < 1 || v > t.d) out.push_back("p value out of range");
  if (!out.empty()) return out;
  int s = t.w[0];
  for (int k = 1; k <= t.d; ++k) s -= t.w[k];
  if (s != t.m()) out.push_back("w0 - w1 - ... - wd != |p|");
  for (int k = 1; k <= t.d; ++k)
    if (fibre_size(t.p, k) > -t.w[k]) out.push_back("too many sprinkles on stick " + std::to_string(k));
  for (int x : t.w)
    if (x > 0) out.push_back("positive weight");
  return out;
}

inline bool is_stable(int d, int m) { return d >= 1 && d + m >= 2; }

inline int moduli_dim(int d, const PMap& p) {
  int m = static_cast<int>(p.size());
  if (!is_stable(d, m)) throw std::invalid_argument("unstable popsicle type");
  return d + m - 2;
}

inline long aut_order(const PMap& p) {
  long r = 1;
  for (std::size_t i = 0; i < p.size();) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    for (std::size_t k = 2; k <= j - i; ++k) r *= static_cast<long>(k);
    i = j;
  }
  return r;
}

/// All p compatible with the weights (fibre sizes at most -w_k).
inline std::vector<PMap> enumerate_p_for_weights(int d, const Weights& w) {
  std::vector<PMap> out;
  int m = w.at(0);
  for (int k = 1; k <= d; ++k) m -= w.at(k);
  if (m < 0) return out;
  PMap cur;
  std::function<void(int)> rec = [&](int k) {
    if (static_cast<int>(cur.size()) == m) {
      out.push_back(cur);
      return;
    }
    if (k > d) return;
    for (int c = 0; c <= -w[k] && static_cast<int>(cur.size()) + c <= m; ++c) {
      for (int j = 0; j < c; ++j) cur.push_back(k);
      rec(k + 1);
      for (int j = 0; j < c; ++j) cur.pop_back();
    }
  };
  rec(1);
  return out;
}

/// Every stable type with d ≤ dmax and weights in {-1, 0}.
inline std::vector<WeightedType> all_01_types(int dmax) {
  std::vector<WeightedType> out;
  for (int d = 1; d <= dmax; ++d)
    for (int mask = 0; mask < (1 << (d + 1)); ++mask) {
      Weights w(d + 1);
      for (int k = 0; k <= d; ++k) w[k] = (mask >> k) & 1 ? -1 : 0;
      for (auto& p : enumerate_p_for_weights(d, w))
        if (is_stable(d, static_cast<int>(p.size()))) out.push_back({d, p, w});
    }
  return out;
}

// ---------------------------------------------------------------------------
// Two-vertex strata

/// Codimension one stratum: vertex 1 next to the root, vertex 2 attached at its
/// i-th edge. on_v2[f] says whether sprinkle f (0-based) lives on vertex 2.
struct Stratum {
  WeightedType type;
  int d1 = 1, d2 = 1, i = 1;
  std::vector<bool> on_v2;
  PMap p1, p2;
  std::vector<int> r1, r2;  // 1-based global labels, increasing
  Weights w1, w2;

  bool operator==(const Stratum& o) const {
    return type.p == o.type.p && type.w == o.type.w && d1 == o.d1 && d2 == o.d2 && i == o.i && on_v2 == o.on_v2;
  }
};

/// Fill p1, p2, r1, r2 and the induced weights; nullopt if the labels are inconsistent.
inline std::optional<Stratum> make_stratum(const WeightedType& t, int d1, int d2, int i, const std::vector<bool>& on_v2) {
  if (d1 < 1 || d2 < 1 || d1 + d2 - 1 != t.d || i < 1 || i > d1) return std::nullopt;
  Stratum s{t, d1, d2, i, on_v2, {}, {}, {}, {}, {}, {}};
  for (int f = 0; f < t.m(); ++f) {
    int k = t.p[f];
    bool inside = k >= i && k <= i + d2 - 1;
    if (on_v2[f]) {
      if (!inside) return std::nullopt;
      s.p2.push_back(k - i + 1);
      s.r2.push_back(f + 1);
    } else {
      s.p1.push_back(k < i ? k : (inside ? i : k - d2 + 1));
      s.r1.push_back(f + 1);
    }
  }
  s.w2.assign(d2 + 1, 0);
  int w20 = static_cast<int>(s.p2.size());
  for (int k = 1; k <= d2; ++k) {
    s.w2[k] = t.w[i + k - 1];
    w20 += s.w2[k];
  }
  s.w2[0] = w20;
  s.w1.assign(d1 + 1, 0);
  s.w1[0] = t.w[0];
  for (int k = 1; k <= d1; ++k) s.w1[k] = k < i ? t.w[k] : (k == i ? w20 : t.w[k + d2 - 1]);
  return s;
}

inline std::vector<Stratum> enumerate_codim1(const WeightedType& t) {
  std::vector<Stratum> out;
  int m = t.m();
  for (int d1 = 1; d1 <= t.d; ++d1) {
    int d2 = t.d + 1 - d1;
    for (int i = 1; i <= d1; ++i) {
      std::vector<int> inside;
      for (int f = 0; f < m; ++f)
        if (t.p[f] >= i && t.p[f] <= i + d2 - 1) inside.push_back(f);
      for (std::uint32_t mask = 0; mask < (1u << inside.size()); ++mask) {
        std::vector<bool> on_v2(m, false);
        for (std::size_t j = 0; j < inside.size(); ++j) on_v2[inside[j]] = (mask >> j) & 1;
        auto s = make_stratum(t, d1, d2, i, on_v2);
        if (!s) continue;
        if (!is_stable(d1, static_cast<int>(s->p1.size())) || !is_stable(d2, static_cast<int>(s->p2.size()))) continue;
        out.push_back(*s);
      }
    }
  }
  return out;
}

/// Upper bound at both vertices, and the sprinkle count identity per vertex.
inline bool induced_weights_ok(const Stratum& s) {
  WeightedType a{s.d1, s.p1, s.w1}, b{s.d2, s.p2, s.w2};
  return type_violations(a).empty() && type_violations(b).empty();
}

// ---------------------------------------------------------------------------
// General trees, for induced weights

/// Rooted ribbon tree: each vertex lists its edges 1..|v|-1 in order; an edge is
/// either a leaf (global index 1..d) or a child vertex. Sprinkles are listed per
/// vertex as (global label, local stick).
struct TreeVertex {
  struct Edge {
    int leaf = 0;       // > 0 for a leaf
    int child = -1;     // vertex index otherwise
  };
  std::vector<Edge> edges;
  std::vector<std::pair<int, int>> sprinkles;
};

/// Per-vertex weights; throws on inconsistent labels or a root mismatch.
inline std::vector<Weights> induced_weights(const WeightedType& t, const std::vector<TreeVertex>& tree) {
  std::vector<Weights> out(tree.size());
  std::vector<std::vector<int>> leaves(tree.size());
  std::function<void(int)> rec = [&](int v) {
    const auto& tv = tree.at(v);
    Weights w(tv.edges.size() + 1, 0);
    int total = static_cast<int>(tv.sprinkles.size());
    for (std::size_t k = 0; k < tv.edges.size(); ++k) {
      const auto& e = tv.edges[k];
      if (e.leaf > 0) {
        w[k + 1] = t.w.at(e.leaf);
        leaves[v].push_back(e.leaf);
      } else {
        rec(e.child);
        w[k + 1] = out[e.child][0];
        leaves[v].insert(leaves[v].end(), leaves[e.child].begin(), leaves[e.child].end());
      }
      total += w[k + 1];
    }
    w[0] = total;
    for (const auto& [label, stick] : tv.sprinkles) {
      if (stick < 1 || stick > static_cast<int>(tv.edges.size())) throw std::invalid_argument("sprinkle stick out of range");
      const auto& e = tv.edges[stick - 1];
      int target = t.p.at(label - 1);
      bool ok = e.leaf > 0 ? e.leaf == target : false;
      if (e.leaf == 0) {
        std::function<bool(int)> has = [&](int u) {
          for (const auto& x : tree[u].edges)
            if (x.leaf == target || (x.leaf == 0 && has(x.child))) return true;
          return false;
        };
        ok = has(e.child);
      }
      if (!ok) throw std::invalid_argument("sprinkle " + std::to_string(label) + " is not on the path to its leaf");
    }
    out[v] = w;
  };
  rec(0);
  if (out[0][0] != t.w[0]) throw std::invalid_argument("induced root weight disagrees with w0");
  return out;
}

// ---------------------------------------------------------------------------
// Classification of strata with bad weights

enum class Kind { WeightsOK, MoreSymmetry, SwitchSprinkle, TwoFlavourStick, Unclassified };

inline std::string to_string(Kind k) {
  switch (k) {
    case Kind::WeightsOK: return "WeightsOK";
    case Kind::MoreSymmetry: return "MoreSymmetry";
    case Kind::SwitchSprinkle: return "SwitchSprinkle";
    case Kind::TwoFlavourStick: return "TwoFlavourStick";
    default: return "Unclassified";
  }
}

struct Classification {
  Kind kind = Kind::Unclassified;
  int k1 = 0, k2 = 0;    // SwitchSprinkle / TwoFlavourStick
  int sprinkle = -1;     // 0-based label of the switching sprinkle
};

inline bool in01(const Weights& w) {
  return std::all_of(w.begin(), w.end(), [](int x) { return x == 0 || x == -1; });
}

/// The two sticks k in the vertex-2 range with w_k = -1 and no vertex-2 sprinkle.
inline std::vector<int> switch_candidates(const Stratum& s) {
  std::vector<int> ks;
  for (int k = s.i; k <= s.i + s.d2 - 1; ++k)
    if (s.type.w[k] == -1 && fibre_size(s.p2, k - s.i + 1) == 0) ks.push_back(k);
  return ks;
}

inline Classification classify_stratum(const Stratum& s) {
  Classification c;
  if (in01(s.w1) && in01(s.w2)) {
    c.kind = Kind::WeightsOK;
    return c;
  }
  if (s.w2[0] >= -1) return c;
  int n1 = fibre_size(s.p1, s.i);
  if (n1 >= 2) {
    c.kind = Kind::MoreSymmetry;
    return c;
  }
  if (s.type.w[0] == -1 && s.w2[0] == -2 && n1 == 1) {
    auto ks = switch_candidates(s);
    for (std::size_t j = 0; j < s.p1.size(); ++j)
      if (s.p1[j] == s.i) c.sprinkle = s.r1[j] - 1;
    int k = s.type.p[c.sprinkle];
    if (ks.size() == 2 && (k == ks[0] || k == ks[1])) {
      c.kind = Kind::SwitchSprinkle;
      c.k1 = ks[0];
      c.k2 = ks[1];
    }
  }
  return c;
}

/// Move the switching sprinkle between k1 and k2; labels are re-sorted.
inline Stratum partner_stratum(const Stratum& s) {
  auto c = classify_stratum(s);
  if (c.kind != Kind::SwitchSprinkle) throw std::invalid_argument("partner_stratum needs a SwitchSprinkle stratum");
  int from = s.type.p[c.sprinkle];
  int to = from == c.k1 ? c.k2 : c.k1;
  std::vector<std::pair<int, int>> items;  // (stick, on_v2; moved sprinkle marked with 2)
  for (int f = 0; f < s.type.m(); ++f) items.push_back({f == c.sprinkle ? to : s.type.p[f], f == c.sprinkle ? 2 : (s.on_v2[f] ? 1 : 0)});
  std::stable_sort(items.begin(), items.end(), [](auto a, auto b) { return a.first < b.first; });
  WeightedType t{s.type.d, {}, s.type.w};
  std::vector<bool> on_v2;
  for (auto [k, tag] : items) {
    t.p.push_back(k);
    on_v2.push_back(tag == 1);
  }
  auto r = make_stratum(t, s.d1, s.d2, s.i, on_v2);
  if (!r) throw std::logic_error("partner stratum inconsistent");
  return *r;
}

// ---------------------------------------------------------------------------
// Signs

inline int mod2(long x) { return static_cast<int>(((x % 2) + 2) % 2); }

/// Orientation discrepancy of the boundary face.
inline int boundary_sign(const Stratum& s) {
  long v = static_cast<long>(s.d1) * s.d2 + static_cast<long>(s.i) * s.d2 + s.i - 1 +
           static_cast<long>(s.p1.size()) * s.d2;
  for (int a : s.r1)
    for (int b : s.r2)
      if (a > b) ++v;
  return mod2(v);
}

/// Summation range of the third bookkeeping sign.
enum class DiamondRange { From1, From0, InclusiveTail, NoWeight };

struct GahSigns {
  int star = 0, heart = 0, diamond = 0;
};

inline int diamond_sign(const WeightedType& t, DiamondRange range = DiamondRange::From1) {
  long v = 0;
  int k0 = range == DiamondRange::From0 ? 0 : 1;
  for (int k = k0; k <= t.d; ++k) {
    long tail = 0;
    for (int x : t.p)
      if (range == DiamondRange::InclusiveTail ? x >= k : x > k) ++tail;
    v += tail * ((range == DiamondRange::NoWeight ? 0 : t.w[k]) + fibre_size(t.p, k));
  }
  return mod2(v);
}

inline GahSigns gah_sign(const WeightedType& t, const std::vector<long>& ind, DiamondRange range = DiamondRange::From1) {
  GahSigns g;
  long star = 0, heart = 0, wsum = 0;
  for (int k = 1; k <= t.d; ++k) {
    star += (k + wsum) * ind.at(k - 1);
    wsum += t.w[k];
    heart += static_cast<long>(t.d - k) * t.w[k];
  }
  g.star = mod2(star);
  g.heart = mod2(heart);
  g.diamond = diamond_sign(t, range);
  return g;
}

/// Sprinkles of vertex 2 on sticks strictly between k1 and k2.
inline int spade(const Stratum& s, int k1, int k2) {
  int n = 0;
  for (int x : s.p2) {
    int k = x + s.i - 1;
    if (k > k1 && k < k2) ++n;
  }
  return n;
}

struct CancellationPair {
  Stratum left, right;
  int k1 = 0, k2 = 0;
  int spade = 0;
  int dagger_left = 0, dagger_right = 0;
  int diamond_left = 0, diamond_right = 0;
  bool ok = false;
};

struct CancellationReport {
  int dmax = 0;
  DiamondRange range = DiamondRange::From1;
  std::size_t types = 0, strata = 0, more_symmetry = 0, unclassified = 0, bound_failures = 0;
  std::vector<CancellationPair> pairs;
  bool involution_ok = true;
  bool all_ok() const {
    if (unclassified || bound_failures || !involution_ok) return false;
    return std::all_of(pairs.begin(), pairs.end(), [](const CancellationPair& p) { return p.ok; });
  }
};

inline CancellationReport verify_cancellation(int dmax, DiamondRange range = DiamondRange::From1) {
  CancellationReport rep;
  rep.dmax = dmax;
  rep.range = range;
  for (const auto& t : all_01_types(dmax)) {
    ++rep.types;
    for (const auto& s : enumerate_codim1(t)) {
      ++rep.strata;
      if (!induced_weights_ok(s)) ++rep.bound_failures;
      auto c = classify_stratum(s);
      if (c.kind == Kind::Unclassified) ++rep.unclassified;
      if (c.kind == Kind::MoreSymmetry) ++rep.more_symmetry;
      if (c.kind != Kind::SwitchSprinkle) continue;
      Stratum q = partner_stratum(s);
      if (!(partner_stratum(q) == s) || q == s) rep.involution_ok = false;
      // each pair once: the side where the sprinkle sits at k1
      if (t.p[c.sprinkle] != c.k1) continue;
      CancellationPair pr{s, q, c.k1, c.k2, spade(s, c.k1, c.k2), boundary_sign(s), boundary_sign(q),
                          diamond_sign(s.type, range), diamond_sign(q.type, range), false};
      pr.ok = mod2(pr.dagger_left - pr.dagger_right) == mod2(pr.spade) &&
              mod2(pr.diamond_left - pr.diamond_right) == mod2(pr.spade + 1);
      rep.pairs.push_back(pr);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Flavoured popsicles

struct FlavouredType {
  int d = 1;
  PMap va, ch;
  Weights w;
};

/// Merged weighted type, with va sprinkles before ch sprinkles on a shared stick.
inline WeightedType forget_flavours(const FlavouredType& f, std::vector<int>* flavour = nullptr) {
  std::vector<std::pair<int, int>> items;
  for (int x : f.va) items.push_back({x, 0});
  for (int x : f.ch) items.push_back({x, 1});
  std::stable_sort(items.begin(), items.end(), [](auto a, auto b) { return a.first < b.first; });
  WeightedType t{f.d, {}, f.w};
  if (flavour) flavour->clear();
  for (auto [x, fl] : items) {
    t.p.push_back(x);
    if (flavour) flavour->push_back(fl);
  }
  return t;
}

struct FlavouredStratum {
  FlavouredType type;
  Stratum merged;
  std::vector<int> flavour;  // flavour of each merged sprinkle (0 = va, 1 = ch)
  Classification cls;
  int f_va = -1, f_ch = -1;  // merged labels of the sprinkles on stick i of vertex 1
  bool exact_pair = true;    // the two sticks are the only empty weight -1 sticks of vertex 2
};

inline std::vector<FlavouredType> all_01_flavoured(int dmax) {
  std::vector<FlavouredType> out;
  for (const auto& t : all_01_types(dmax)) {
    int m = t.m();
    for (int mask = 0; mask < (1 << m); ++mask) {
      FlavouredType f{t.d, {}, {}, t.w};
      for (int j = 0; j < m; ++j) ((mask >> j) & 1 ? f.ch : f.va).push_back(t.p[j]);
      out.push_back(f);
    }
  }
  return out;
}

inline std::vector<FlavouredStratum> flavoured_enumerate_and_classify(const FlavouredType& f) {
  std::vector<FlavouredStratum> out;
  std::vector<int> fl;
  WeightedType t = forget_flavours(f, &fl);
  for (const auto& s : enumerate_codim1(t)) {
    FlavouredStratum fs{f, s, fl, {}, -1, -1, true};
    int nva = 0, nch = 0;
    for (std::size_t j = 0; j < s.p1.size(); ++j)
      if (s.p1[j] == s.i) {
        int label = s.r1[j] - 1;
        if (fl[label] == 0) ++nva, fs.f_va = label;
        else ++nch, fs.f_ch = label;
      }
    Classification c;
    if (in01(s.w1) && in01(s.w2)) {
      c.kind = Kind::WeightsOK;
    } else if (s.w2[0] < -1) {
      if (nva >= 2 || nch >= 2) {
        c.kind = Kind::MoreSymmetry;
      } else if (nva == 1 && nch == 1) {
        auto ks = switch_candidates(s);
        int a = t.p[fs.f_va], b = t.p[fs.f_ch];
        c.kind = Kind::TwoFlavourStick;
        c.k1 = std::min(a, b);
        c.k2 = std::max(a, b);
        fs.exact_pair = ks.size() == 2 && ks[0] == c.k1 && ks[1] == c.k2;
      } else if (nva + nch == 1) {
        auto base = classify_stratum(s);
        if (base.kind == Kind::SwitchSprinkle) c = base;
      }
    }
    fs.cls = c;
    out.push_back(fs);
  }
  return out;
}

/// Exchange the sticks of the two flavours meeting at stick i of vertex 1.
inline FlavouredStratum two_flavour_partner(const FlavouredStratum& s) {
  if (s.cls.kind != Kind::TwoFlavourStick) throw std::invalid_argument("not a TwoFlavourStick stratum");
  const auto& t = s.merged.type;
  int kva = t.p[s.f_va], kch = t.p[s.f_ch];
  // sprinkles keyed by (flavour, index within flavour)
  FlavouredType g = s.type;
  std::vector<int> idx_in_flavour(t.m());
  int cva = 0, cch = 0;
  for (int f = 0; f < t.m(); ++f) idx_in_flavour[f] = s.flavour[f] == 0 ? cva++ : cch++;
  g.va[idx_in_flavour[s.f_va]] = kch;
  g.ch[idx_in_flavour[s.f_ch]] = kva;
  std::sort(g.va.begin(), g.va.end());
  std::sort(g.ch.begin(), g.ch.end());
  // the partner has the same vertex-2 sprinkles and the same tree
  for (const auto& c : flavoured_enumerate_and_classify(g)) {
    if (c.cls.kind != Kind::TwoFlavourStick) continue;
    if (c.merged.d1 != s.merged.d1 || c.merged.i != s.merged.i) continue;
    if (c.merged.p2 != s.merged.p2) continue;
    std::vector<int> fl2a, fl2b;
    for (int f = 0; f < t.m(); ++f)
      if (s.merged.on_v2[f]) fl2a.push_back(s.flavour[f]);
    for (int f = 0; f < c.merged.type.m(); ++f)
      if (c.merged.on_v2[f]) fl2b.push_back(c.flavour[f]);
    if (fl2a == fl2b) return c;
  }
  throw std::logic_error("no partner for TwoFlavourStick stratum");
}

struct FlavouredReport {
  int dmax = 0;
  std::size_t types = 0, strata = 0, unclassified = 0, two_flavour = 0, count_mismatch = 0;
  std::size_t wider_two_flavour = 0;  // more than two empty weight -1 sticks on vertex 2
  bool involution_ok = true;
  bool all_ok() const { return unclassified == 0 && involution_ok && count_mismatch == 0; }
};

inline FlavouredReport verify_flavoured(int dmax) {
  FlavouredReport rep;
  rep.dmax = dmax;
  for (const auto& f : all_01_flavoured(dmax)) {
    ++rep.types;
    auto strata = flavoured_enumerate_and_classify(f);
    if (strata.size() != enumerate_codim1(forget_flavours(f)).size()) ++rep.count_mismatch;
    for (const auto& s : strata) {
      ++rep.strata;
      if (s.cls.kind == Kind::Unclassified) ++rep.unclassified;
      if (s.cls.kind != Kind::TwoFlavourStick) continue;
      ++rep.two_flavour;
      if (!s.exact_pair) ++rep.wider_two_flavour;
      auto q = two_flavour_partner(s);
      auto back = two_flavour_partner(q);
      if (q.type.va == s.type.va && q.type.ch == s.type.ch) rep.involution_ok = false;
      if (back.type.va != s.type.va || back.type.ch != s.type.ch || !(back.merged == s.merged)) rep.involution_ok = false;
    }
  }
  return rep;
}

}  // namespace ncp::popsicle
