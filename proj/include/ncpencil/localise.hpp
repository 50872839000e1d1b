#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "category.hpp"
#include "twisted.hpp"

namespace ncp {

/// Closed degree-0 morphisms to invert, and the string length bound.
struct LocalisationDatum {
  AInfCategory base;
  std::vector<Vec> s;
  int lmax = 1;
};

/// Length-truncated localisation: morphisms X0 → X1 are strings
/// f0 ⊗ g1 ⊗ … ⊗ fk of twisted-complex morphisms X0 → C_0 → … → C_{k-1} → X1
/// through cones of S, k ≤ lmax, with cone identities removed from the middle
/// slots. μ applies one twisted operation to a block covering every junction.
class LocalisedCategory {
 public:
  LocalisedCategory(const LocalisationDatum& ld, int dmax = 3) : lmax_(ld.lmax), nbase_(ld.base.objects.size()) {
    if (ld.lmax < 1) throw std::invalid_argument("lmax must be at least 1");
    const auto& a = ld.base;
    std::vector<TwistedComplex> cx;
    for (int o = 0; o < nbase_; ++o) cx.push_back(TwistedComplex::object(a.objects[o], o));
    for (std::size_t k = 0; k < ld.s.size(); ++k) cx.push_back(cone(a, ld.s[k], "C" + std::to_string(k)));
    tw_ = std::make_shared<TwCategory>(a, cx);
    const auto& t = tw_->category();
    for (int p = nbase_; p < static_cast<int>(cx.size()); ++p) {
      Vec id = tw_->identity(p);
      drop_[p] = id.rbegin()->first;
      ident_[p] = id;
    }
    cat_.modulus = a.modulus;
    for (const auto& o : a.objects) cat_.add_object(o);
    for (int x0 = 0; x0 < nbase_; ++x0)
      for (int x1 = 0; x1 < nbase_; ++x1) enumerate(x0, x1);
    for (int o = 0; o < nbase_; ++o)
      if (a.units[o] >= 0) cat_.units[o] = index_.at({tw_->lift(o, o, 0, 0, a.units[o])});
    (void)t;
    for (int d = 1; d <= dmax; ++d)
      cat_.for_each_chain(d, [&](const std::vector<int>& chain) {
        Vec v = compute_mu(chain);
        if (!v.empty()) cat_.set_mu(chain, v);
      });
  }

  const AInfCategory& category() const { return cat_; }
  const TwCategory& twisted() const { return *tw_; }
  int lmax() const { return lmax_; }
  int length(int id) const { return static_cast<int>(strings_[id].size()) - 1; }
  const std::vector<int>& string(int id) const { return strings_[id]; }
  int string_index(const std::vector<int>& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
  }

  /// Hom complex of strings of length ≤ l between base objects.
  CochainComplex hom_complex(int x0, int x1, int l) const {
    CochainComplex c;
    c.space.modulus = cat_.modulus;
    std::vector<int> ids;
    std::map<int, int> local;
    for (int id : cat_.hom(x0, x1))
      if (length(id) <= l) {
        local[id] = static_cast<int>(ids.size());
        ids.push_back(id);
        c.space.basis.push_back({cat_.basis[id].name, cat_.basis[id].degree});
      }
    for (int id : ids) {
      Vec d;
      for (const auto& [j, x] : cat_.eval({id})) add_entry(d, local.at(j), x);
      c.d.push_back(d);
    }
    return c;
  }

  /// Cohomology dims of the length-≤l truncation for l = 0..lmax.
  std::vector<std::map<long, std::size_t>> dims_by_length(int x0, int x1) const {
    std::vector<std::map<long, std::size_t>> out;
    for (int l = 0; l <= lmax_; ++l) out.push_back(cohomology_dims(hom_complex(x0, x1, l)));
    return out;
  }

  /// Dims at lmax equal dims at lmax - 1.
  bool stable(int x0, int x1) const {
    return cohomology_dims(hom_complex(x0, x1, lmax_)) == cohomology_dims(hom_complex(x0, x1, lmax_ - 1));
  }

  /// Rank of H(length ≤ lmax-1) → H(length ≤ lmax) per degree: the classes
  /// that survive one more step of the length filtration.
  std::map<long, std::size_t> persistent_dims(int x0, int x1) const {
    auto c = hom_complex(x0, x1, lmax_);
    const auto& ids = cat_.hom(x0, x1);
    std::map<long, std::vector<int>> by_degree;
    std::vector<int> kept;
    for (int id : ids)
      if (length(id) <= lmax_) kept.push_back(id);
    for (std::size_t i = 0; i < kept.size(); ++i) by_degree[c.space.basis[i].degree].push_back(static_cast<int>(i));
    std::map<long, std::size_t> out;
    for (const auto& [d, cols] : by_degree) {
      std::vector<Vec> bound;
      auto prev = by_degree.find(cat_.norm(d - 1));
      if (prev != by_degree.end())
        for (int j : prev->second) bound.push_back(c.d[j]);
      std::vector<int> shorter;
      std::vector<Vec> images;
      for (int j : cols)
        if (length(kept[j]) < lmax_) {
          shorter.push_back(j);
          images.push_back(c.d[j]);
        }
      std::vector<Vec> gens = bound;
      for (const auto& k : kernel_of(images)) {
        Vec z;
        for (const auto& [i, x] : k) add_entry(z, shorter[i], x);
        gens.push_back(z);
      }
      std::size_t r = rank_of(gens) - rank_of(bound);
      if (r > 0) out[d] = r;
    }
    return out;
  }

 private:
  int lmax_;
  int nbase_;
  std::shared_ptr<TwCategory> tw_;
  std::map<int, int> drop_;
  std::map<int, Vec> ident_;
  AInfCategory cat_;
  std::vector<std::vector<int>> strings_;
  std::map<std::vector<int>, int> index_;

  bool is_cone(int p) const { return p >= nbase_; }

  std::vector<int> factor_basis(int p, int q, bool middle) const {
    std::vector<int> out;
    for (int b : tw_->category().hom(p, q))
      if (!(middle && p == q && drop_.at(p) == b)) out.push_back(b);
    return out;
  }

  void enumerate(int x0, int x1) {
    int ncones = static_cast<int>(tw_->category().objects.size()) - nbase_;
    const auto& t = tw_->category();
    std::vector<int> path;  // cone objects
    std::vector<std::vector<int>> found;
    std::function<void()> rec_path = [&]() {
      // strings for this path
      std::vector<int> objs{x0};
      objs.insert(objs.end(), path.begin(), path.end());
      objs.push_back(x1);
      std::vector<int> cur;
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k + 1 == objs.size()) {
          found.push_back(cur);
          return;
        }
        bool middle = k > 0 && k + 2 < objs.size();
        for (int b : factor_basis(objs[k], objs[k + 1], middle)) {
          cur.push_back(b);
          rec(k + 1);
          cur.pop_back();
        }
      };
      rec(0);
      if (static_cast<int>(path.size()) == lmax_) return;
      for (int c = 0; c < ncones; ++c) {
        path.push_back(nbase_ + c);
        rec_path();
        path.pop_back();
      }
    };
    rec_path();
    // longest strings first, so echelon reductions keep short representatives
    std::stable_sort(found.begin(), found.end(), [](const auto& u, const auto& v) { return u.size() > v.size(); });
    for (const auto& str : found) {
      long deg = 1;
      int w = 0;
      std::string name;
      for (std::size_t i = 0; i < str.size(); ++i) {
        deg += t.basis[str[i]].degree - 1;
        w += t.basis[str[i]].weight;
        name += (i ? "|" : "") + t.basis[str[i]].name;
      }
      int id = cat_.add_basis(name, x0, x1, deg, w);
      strings_.push_back(str);
      index_[str] = id;
    }
  }

  /// Middle-slot normalization: remove the identity component of a cone endomorphism.
  Vec normalize_middle(int p, Vec v) const {
    auto it = v.find(drop_.at(p));
    if (it == v.end()) return v;
    const auto& id = ident_.at(p);
    Q c = it->second / id.at(drop_.at(p));
    axpy(v, -c, id);
    return v;
  }

  Vec compute_mu(const std::vector<int>& chain) const {
    const auto& t = tw_->category();
    std::vector<int> f;
    std::vector<std::size_t> starts;
    for (int id : chain) {
      starts.push_back(f.size());
      f.insert(f.end(), strings_[id].begin(), strings_[id].end());
    }
    std::size_t d = chain.size(), n = f.size();
    std::size_t amin = 0, amax = starts.size() > 1 ? starts[1] - 1 : n - 1;
    std::size_t bmin = d > 1 ? starts.back() + 1 : 1;
    int kmax = std::max(t.max_arity(), 1);
    Vec out;
    long sign = 0;
    for (std::size_t a0 = amin; a0 <= amax; ++a0) {
      for (std::size_t b = std::max(bmin, a0 + 1); b <= n && static_cast<int>(b - a0) <= kmax; ++b) {
        Vec m = t.eval(std::vector<int>(f.begin() + a0, f.begin() + b));
        if (m.empty()) continue;
        std::vector<int> s(f.begin(), f.begin() + a0);
        s.push_back(-1);
        s.insert(s.end(), f.begin() + b, f.end());
        if (static_cast<int>(s.size()) - 1 > lmax_) continue;
        bool middle = a0 > 0 && b < n;
        if (middle) {
          int p = t.basis[m.begin()->first].src;
          if (p == t.basis[m.begin()->first].tgt && is_cone(p)) m = normalize_middle(p, m);
        }
        for (const auto& [o, c] : m) {
          s[a0] = o;
          auto it = index_.find(s);
          if (it == index_.end()) throw std::logic_error("localised string missing");
          add_entry(out, it->second, c * sign_of(sign));
        }
      }
      sign += t.basis[f[a0]].degree - 1;
    }
    return out;
  }
};

}  // namespace ncp
