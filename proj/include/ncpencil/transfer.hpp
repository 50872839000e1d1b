#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "category.hpp"

namespace ncp {

/// Homotopy transfer datum: a subcomplex A ⊂ B (basis given as vectors of B)
/// containing the units, and h of degree -1 on B with π = id - μ¹h - hμ¹
/// a projection onto A.
struct TransferDatum {
  AInfCategory ambient;
  std::vector<std::string> names;  // names of the A basis
  std::vector<Vec> sub;            // A basis as vectors of B
  std::vector<Vec> h;              // h of each B basis element
};

class TransferError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Vec apply_cols(const std::vector<Vec>& cols, const Vec& v) {
  Vec out;
  for (const auto& [i, c] : v) axpy(out, c, cols[i]);
  return out;
}

inline Vec mu1(const AInfCategory& b, const Vec& v) { return v.empty() ? Vec{} : b.eval_vec({v}); }

inline Vec pi_of(const TransferDatum& t, const Vec& v) {
  Vec out = v;
  axpy(out, Q(-1), mu1(t.ambient, apply_cols(t.h, v)));
  axpy(out, Q(-1), apply_cols(t.h, mu1(t.ambient, v)));
  return out;
}

inline bool homogeneous(const AInfCategory& b, const Vec& v, int& s, int& t, long& d, int& w) {
  bool first = true;
  for (const auto& [i, c] : v) {
    const auto& m = b.basis[i];
    if (first) {
      s = m.src, t = m.tgt, d = m.degree, w = m.weight;
      first = false;
    } else if (m.src != s || m.tgt != t || m.degree != d || m.weight != w) {
      return false;
    }
  }
  return !first;
}

}  // namespace detail

/// Side conditions of the datum; empty when it is a valid contraction.
inline std::vector<std::string> check_datum(const TransferDatum& t) {
  std::vector<std::string> out;
  const auto& b = t.ambient;
  if (t.h.size() != b.basis.size()) return {"h has wrong size"};
  if (t.names.size() != t.sub.size()) return {"names and sub differ in size"};
  Span a;
  for (std::size_t k = 0; k < t.sub.size(); ++k) {
    int s, tt, w;
    long d;
    if (!detail::homogeneous(b, t.sub[k], s, tt, d, w)) out.push_back("sub element " + t.names[k] + " not homogeneous");
    if (!a.insert(t.sub[k], static_cast<int>(k))) out.push_back("sub element " + t.names[k] + " dependent");
  }
  for (std::size_t o = 0; o < b.objects.size(); ++o)
    if (b.units[o] >= 0 && !a.contains(unit_vec(b.units[o]))) out.push_back("unit of " + b.objects[o] + " not in A");
  for (const auto& v : t.sub)
    if (!a.contains(detail::mu1(b, v))) out.push_back("A not closed under the differential");
  for (std::size_t i = 0; i < b.basis.size(); ++i) {
    const auto& hi = t.h[i];
    for (const auto& [j, c] : hi) {
      const auto& m = b.basis[j];
      if (m.src != b.basis[i].src || m.tgt != b.basis[i].tgt || b.norm(m.degree + 1) != b.basis[i].degree)
        out.push_back("h not of degree -1 on " + b.basis[i].name);
    }
    if (!detail::apply_cols(t.h, hi).empty()) out.push_back("h∘h nonzero on " + b.basis[i].name);
    Vec p = detail::pi_of(t, unit_vec(static_cast<int>(i)));
    if (!a.contains(p)) out.push_back("π does not land in A on " + b.basis[i].name);
    if (!detail::pi_of(t, hi).empty()) out.push_back("π∘h nonzero on " + b.basis[i].name);
  }
  for (const auto& v : t.sub)
    if (!detail::apply_cols(t.h, v).empty()) out.push_back("h does not vanish on A");
  return out;
}

/// Contraction onto a subcomplex whose quotient is acyclic: h is a splitting
/// of the quotient complex on standard basis vectors, zero on A. With
/// by_weight the complement is scanned from the highest weight down.
inline std::vector<Vec> contraction_onto(const AInfCategory& b, const std::vector<Vec>& sub, bool by_weight = false) {
  int n = static_cast<int>(b.basis.size());
  Span full;
  for (std::size_t k = 0; k < sub.size(); ++k)
    if (!full.insert(sub[k], static_cast<int>(k))) throw TransferError("dependent subspace basis");
  int na = static_cast<int>(sub.size());
  std::vector<int> comp;  // complement indices, tag na + position
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  if (by_weight)
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return b.basis[i].weight > b.basis[j].weight; });
  for (int i : order)
    if (full.insert(unit_vec(i), na + static_cast<int>(comp.size()))) comp.push_back(i);
  auto quotient = [&](const Vec& v) {
    auto [res, comb] = full.reduce(v);
    if (!res.empty()) throw TransferError("basis extension failed");
    Vec q;
    for (const auto& [tag, c] : comb)
      if (tag >= na) add_entry(q, tag - na, c);
    return q;
  };
  // quotient differential on the complement
  int m = static_cast<int>(comp.size());
  std::vector<Vec> dq(m);
  for (int k = 0; k < m; ++k) dq[k] = quotient(detail::mu1(b, unit_vec(comp[k])));
  // quotient basis S ∪ dS, with S chosen greedily in complement order
  Span split;
  std::vector<int> s_idx;
  std::vector<Vec> s_img;
  for (int k = 0; k < m; ++k) {
    if (dq[k].empty()) continue;
    Span trial = split;
    if (!trial.insert(dq[k], 2 * k + 1)) continue;
    if (!trial.insert(unit_vec(k), 2 * k)) continue;
    split = std::move(trial);
    s_idx.push_back(k);
    s_img.push_back(dq[k]);
  }
  if (static_cast<int>(split.rank()) != m) throw TransferError("quotient complex is not acyclic");
  auto coords = [&](const Vec& v) {
    auto [res, comb] = split.reduce(v);
    Vec out;
    for (const auto& [tag, c] : comb) add_entry(out, tag, c);
    return out;
  };
  // hbar(d s_k) = s_k, hbar(s_k) = 0
  std::vector<Vec> hq(m);
  for (int k = 0; k < m; ++k)
    for (const auto& [tag, c] : coords(unit_vec(k)))
      if (tag % 2 == 1) add_entry(hq[k], comp[tag / 2], c);
  std::vector<Vec> h(n);
  for (int i = 0; i < n; ++i)
    for (const auto& [k, c] : quotient(unit_vec(i))) axpy(h[i], c, hq[k]);
  return h;
}

/// Transferred structure and the functor components A → B.
struct TransferResult {
  AInfCategory category;
  std::vector<std::map<std::vector<int>, Vec>> functor;  // functor[d][chain] in B
};

/// Transferred operations: μ_A^d = π(Σ_T), F^d = -h(Σ_T) over planar trees T
/// whose vertices are μ_B^{k≥2} and whose internal edges carry -h.
inline TransferResult homotopy_transfer(const TransferDatum& t, int dmax) {
  const auto& b = t.ambient;
  TransferResult r;
  auto& a = r.category;
  a.modulus = b.modulus;
  for (const auto& o : b.objects) a.add_object(o);
  Span span;
  for (std::size_t k = 0; k < t.sub.size(); ++k) {
    int s, tt, w;
    long d;
    if (!detail::homogeneous(b, t.sub[k], s, tt, d, w)) throw TransferError("inhomogeneous element " + t.names[k]);
    int id = a.add_basis(t.names[k], s, tt, d, w);
    span.insert(t.sub[k], id);
    if (s == tt && b.units[s] >= 0 && t.sub[k] == unit_vec(b.units[s])) a.units[s] = id;
  }
  auto to_a = [&](const Vec& v) {
    auto [res, comb] = span.reduce(v);
    if (!res.empty()) throw TransferError("π does not land in A");
    Vec out;
    for (const auto& [tag, c] : comb) add_entry(out, tag, c);
    return out;
  };
  for (int id = 0; id < static_cast<int>(t.sub.size()); ++id) {
    Vec d = to_a(detail::mu1(b, t.sub[id]));
    if (!d.empty()) a.set_mu({id}, d);
  }
  std::map<std::vector<int>, Vec> tree;  // Σ_T for chains of length ≥ 2
  std::function<Vec(const std::vector<int>&)> leaf = [&](const std::vector<int>& ch) -> Vec {
    if (ch.size() == 1) return t.sub[ch[0]];
    return scaled(detail::apply_cols(t.h, tree.at(ch)), Q(-1));
  };
  r.functor.resize(dmax + 1);
  for (int d = 2; d <= dmax; ++d) {
    a.for_each_chain(d, [&](const std::vector<int>& ch) {
      Vec sum;
      // compositions of ch into j ≥ 2 consecutive blocks
      std::vector<Vec> args;
      std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (start == ch.size()) {
          if (args.size() >= 2) axpy(sum, Q(1), b.eval_vec(args));
          return;
        }
        for (std::size_t end = start + 1; end <= ch.size(); ++end) {
          if (start == 0 && end == ch.size()) continue;
          std::vector<int> block(ch.begin() + start, ch.begin() + end);
          Vec l = leaf(block);
          if (l.empty()) continue;
          args.push_back(std::move(l));
          rec(end);
          args.pop_back();
        }
      };
      rec(0);
      tree[ch] = sum;
      if (sum.empty()) return;
      Vec out = to_a(detail::pi_of(t, sum));
      if (!out.empty()) a.set_mu(ch, out);
      Vec f = scaled(detail::apply_cols(t.h, sum), Q(-1));
      if (!f.empty()) r.functor[d][ch] = f;
    });
  }
  return r;
}

/// Residuals of the A∞-functor equations for F^1 = inclusion and F^{d≥2} from
/// the transfer, on chains of length ≤ dmax.
inline std::vector<Violation> check_transfer_functor(const TransferDatum& t, const TransferResult& r, int dmax) {
  const auto& a = r.category;
  const auto& b = t.ambient;
  auto f = [&](const std::vector<int>& ch) -> Vec {
    if (ch.size() == 1) return t.sub[ch[0]];
    if (static_cast<int>(ch.size()) >= static_cast<int>(r.functor.size())) return {};
    auto it = r.functor[ch.size()].find(ch);
    return it == r.functor[ch.size()].end() ? Vec{} : it->second;
  };
  auto f_vec = [&](std::vector<int> ch, std::size_t pos, const Vec& v) {
    Vec out;
    for (const auto& [id, c] : v) {
      ch[pos] = id;
      axpy(out, c, f(ch));
    }
    return out;
  };
  std::vector<Violation> out;
  for (int d = 1; d <= dmax; ++d)
    a.for_each_chain(d, [&](const std::vector<int>& x) {
      Vec res;
      long sgn = 0;
      for (int i = 0; i < d; ++i) {
        for (int j = 1; i + j <= d; ++j) {
          std::vector<int> inner(x.begin() + i, x.begin() + i + j);
          Vec m = a.eval(inner);
          if (m.empty()) continue;
          std::vector<int> outer(x.begin(), x.begin() + i);
          outer.push_back(-1);
          outer.insert(outer.end(), x.begin() + i + j, x.end());
          axpy(res, Q(sign_of(sgn)), f_vec(outer, i, m));
        }
        sgn += a.rdeg(x[i]);
      }
      std::vector<Vec> args;
      std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (start == x.size()) {
          axpy(res, Q(-1), b.eval_vec(args));
          return;
        }
        for (std::size_t end = start + 1; end <= x.size(); ++end) {
          Vec v = f(std::vector<int>(x.begin() + start, x.begin() + end));
          if (v.empty()) continue;
          args.push_back(std::move(v));
          rec(end);
          args.pop_back();
        }
      };
      rec(0);
      if (!res.empty()) out.push_back({"functor", x, res, ""});
    });
  return out;
}

/// Endomorphism dga of a random complex V = H ⊕ W ⊕ U with d: W → U invertible,
/// and the subcomplex spanned by the identity, End(H) without E_11, and a few
/// random acyclic pairs (x, dx).
inline TransferDatum random_transfer_datum(std::mt19937& rng) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int nh = uni(1, 2);
  int np = uni(1, 2);
  std::vector<long> vdeg;
  for (int i = 0; i < nh; ++i) vdeg.push_back(uni(-1, 1));
  std::vector<long> wdeg;
  for (int i = 0; i < np; ++i) wdeg.push_back(uni(-1, 0));
  for (long w : wdeg) vdeg.push_back(w);
  for (long w : wdeg) vdeg.push_back(w + 1);
  int nv = static_cast<int>(vdeg.size());
  // differential of V as a matrix dv[row][col], triangular on each degree
  std::vector<std::vector<Q>> dv(nv, std::vector<Q>(nv, Q(0)));
  for (int k = 0; k < np; ++k)
    for (int l = 0; l < np; ++l)
      if (wdeg[l] == wdeg[k] && l >= k) dv[nh + np + l][nh + k] = (k == l) ? Q(uni(1, 3)) : Q(uni(-1, 1));
  AInfCategory b;
  int o = b.add_object("V");
  std::vector<std::vector<int>> e(nv, std::vector<int>(nv));
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j) e[i][j] = b.add_basis("E" + std::to_string(i) + std::to_string(j), o, o, vdeg[i] - vdeg[j]);
  // μ¹(F) = (-1)^{|F|}(d∘F - (-1)^{|F|} F∘d)
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j) {
      long f = vdeg[i] - vdeg[j];
      for (int k = 0; k < nv; ++k) {
        if (dv[k][i] != 0) b.add_mu({e[i][j]}, e[k][j], sign_of(f) * dv[k][i]);
        if (dv[j][k] != 0) b.add_mu({e[i][j]}, e[i][k], -dv[j][k]);
      }
    }
  // products E_ij E_jk = E_ik, μ²(x2, x1) = (-1)^{|x1|} x2 x1
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j)
      for (int k = 0; k < nv; ++k) b.add_mu({e[j][k], e[i][j]}, e[i][k], sign_of(vdeg[j] - vdeg[k]));
  TransferDatum t;
  Vec id;
  for (int i = 0; i < nv; ++i) add_entry(id, e[i][i], Q(1));
  // rebase so that the identity is a basis element: swap E_{last,last} for it
  {
    AInfCategory c;
    int oc = c.add_object("V");
    // new basis: all E_ij except E_{nv-1,nv-1}, then the unit
    std::vector<Vec> to_new(b.basis.size());
    std::vector<int> old_of;
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j)
        if (!(i == nv - 1 && j == nv - 1)) {
          int id2 = c.add_basis(b.basis[e[i][j]].name, oc, oc, b.basis[e[i][j]].degree);
          old_of.push_back(e[i][j]);
          to_new[e[i][j]] = unit_vec(id2);
        }
    int eu = c.add_unit(oc, "1");
    old_of.push_back(-1);
    // E_{last,last} = 1 - Σ_{i<last} E_ii
    Vec last = unit_vec(eu);
    for (int i = 0; i + 1 < nv; ++i) axpy(last, Q(-1), to_new[e[i][i]]);
    to_new[e[nv - 1][nv - 1]] = last;
    auto old_vec = [&](int nid) { return old_of[nid] < 0 ? id : unit_vec(old_of[nid]); };
    auto convert = [&](const Vec& v) {
      Vec out;
      for (const auto& [k, x] : v) axpy(out, x, to_new[k]);
      return out;
    };
    int nc = static_cast<int>(c.basis.size());
    for (int i = 0; i < nc; ++i) {
      Vec d = convert(b.eval_vec({old_vec(i)}));
      if (!d.empty()) c.set_mu({i}, d);
      for (int j = 0; j < nc; ++j) {
        Vec p = convert(b.eval_vec({old_vec(i), old_vec(j)}));
        if (!p.empty()) c.set_mu({i, j}, p);
      }
    }
    b = std::move(c);
    for (int i = 0; i < nh; ++i)
      for (int j = 0; j < nh; ++j)
        if (i != 0 || j != 0) {
          t.names.push_back(b.basis[e[i][j]].name);
          t.sub.push_back(to_new[e[i][j]]);
        }
    t.names.push_back("1");
    t.sub.push_back(unit_vec(eu));
  }
  // random acyclic pairs
  int extra = uni(0, 2);
  int nb = static_cast<int>(b.basis.size());
  for (int tries = 0; tries < 20 && extra > 0; ++tries) {
    int x = uni(0, nb - 1);
    Vec dx = detail::mu1(b, unit_vec(x));
    if (dx.empty()) continue;
    Span s;
    int tag = 0;
    for (const auto& v : t.sub) s.insert(v, tag++);
    if (!s.insert(unit_vec(x), tag++) || !s.insert(dx, tag++)) continue;
    t.names.push_back("p" + std::to_string(x));
    t.sub.push_back(unit_vec(x));
    t.names.push_back("dp" + std::to_string(x));
    t.sub.push_back(dx);
    --extra;
  }
  t.ambient = std::move(b);
  t.h = contraction_onto(t.ambient, t.sub);
  return t;
}

}  // namespace ncp
