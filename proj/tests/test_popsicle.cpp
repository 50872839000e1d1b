#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "ncpencil/popsicle.hpp"

using namespace ncp::popsicle;

namespace {

/// All nondecreasing maps {1..m} → {1..d} by brute force over d^m words.
std::vector<PMap> brute_pmaps(int d, int m) {
  std::vector<PMap> out;
  long total = 1;
  for (int j = 0; j < m; ++j) total *= d;
  for (long code = 0; code < total; ++code) {
    PMap p(m);
    long c = code;
    for (int j = m - 1; j >= 0; --j) p[j] = static_cast<int>(c % d) + 1, c /= d;
    if (std::is_sorted(p.begin(), p.end())) out.push_back(p);
  }
  return out;
}

long brute_aut(const PMap& p) {
  std::vector<int> perm(p.size());
  std::iota(perm.begin(), perm.end(), 0);
  long n = 0;
  do {
    bool ok = true;
    for (std::size_t j = 0; j < p.size(); ++j) ok &= p[perm[j]] == p[j];
    n += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n;
}

WeightedType plain(int d) { return {d, {}, Weights(d + 1, 0)}; }

}  // namespace

TEST(Types, EnumerationMatchesBruteForce) {
  for (int d = 1; d <= 4; ++d)
    for (int mask = 0; mask < (1 << (d + 1)); ++mask) {
      Weights w(d + 1);
      for (int k = 0; k <= d; ++k) w[k] = (mask >> k) & 1 ? -1 : 0;
      int m = w[0];
      for (int k = 1; k <= d; ++k) m -= w[k];
      std::set<PMap> expect;
      if (m >= 0)
        for (const auto& p : brute_pmaps(d, m))
          if (type_violations({d, p, w}).empty()) expect.insert(p);
      auto got = enumerate_p_for_weights(d, w);
      EXPECT_EQ(std::set<PMap>(got.begin(), got.end()), expect);
      EXPECT_EQ(got.size(), expect.size());
    }
}

TEST(Types, Violations) {
  EXPECT_TRUE(type_violations({2, {1, 2}, {0, -1, -1}}).empty());
  EXPECT_FALSE(type_violations({2, {2, 1}, {0, -1, -1}}).empty());
  EXPECT_FALSE(type_violations({2, {1, 1}, {0, -1, -1}}).empty());
  EXPECT_FALSE(type_violations({2, {1}, {0, -1, -1}}).empty());
  EXPECT_FALSE(type_violations({2, {}, {1, 0, 1}}).empty());
  EXPECT_FALSE(type_violations({2, {}, {0, 0}}).empty());
  EXPECT_FALSE(type_violations({2, {3}, {0, 0, -1}}).empty());
}

TEST(Types, DimensionAndAutomorphisms) {
  EXPECT_EQ(moduli_dim(2, {}), 0);
  EXPECT_EQ(moduli_dim(1, {1}), 0);
  EXPECT_EQ(moduli_dim(3, {1, 3}), 3);
  EXPECT_THROW(moduli_dim(1, {}), std::invalid_argument);
  EXPECT_EQ(aut_order({1, 1, 2, 2, 2}), 12);
  for (int d = 1; d <= 3; ++d)
    for (int m = 0; m <= 4; ++m)
      for (const auto& p : brute_pmaps(d, m)) EXPECT_EQ(aut_order(p), brute_aut(p));
}

TEST(Codim1, AssociahedronFacets) {
  EXPECT_TRUE(enumerate_codim1(plain(2)).empty());
  for (int d = 3; d <= 7; ++d) {
    auto s = enumerate_codim1(plain(d));
    EXPECT_EQ(static_cast<int>(s.size()), d * (d - 1) / 2 - 1) << d;
    for (const auto& x : s) EXPECT_TRUE(induced_weights_ok(x));
  }
  EXPECT_EQ(enumerate_codim1(plain(4)).size(), 5u);
}

TEST(Codim1, SprinklesOnOneStick) {
  // m points on a line modulo translation: boundary faces are the proper nonempty subsets that bubble off
  for (int m = 2; m <= 5; ++m) {
    WeightedType t{1, PMap(m, 1), {0, -m}};
    EXPECT_EQ(static_cast<int>(enumerate_codim1(t).size()), (1 << m) - 2);
  }
}

TEST(Codim1, InducedWeightsAgreeWithTrees) {
  for (const auto& t : all_01_types(4))
    for (const auto& s : enumerate_codim1(t)) {
      std::vector<TreeVertex> tree(2);
      for (int k = 1; k <= s.d1; ++k) {
        TreeVertex::Edge e;
        if (k < s.i) e.leaf = k;
        else if (k == s.i) e.child = 1;
        else e.leaf = k + s.d2 - 1;
        tree[0].edges.push_back(e);
      }
      for (int k = 0; k < s.d2; ++k) tree[1].edges.push_back({s.i + k, -1});
      for (std::size_t j = 0; j < s.p1.size(); ++j) tree[0].sprinkles.push_back({s.r1[j], s.p1[j]});
      for (std::size_t j = 0; j < s.p2.size(); ++j) tree[1].sprinkles.push_back({s.r2[j], s.p2[j]});
      auto w = induced_weights(t, tree);
      EXPECT_EQ(w[0], s.w1);
      EXPECT_EQ(w[1], s.w2);
    }
}

TEST(Trees, InducedWeightsRejectsMisplacedSprinkle) {
  WeightedType t{2, {1}, {-1, -1, -1}};
  std::vector<TreeVertex> tree(1);
  tree[0].edges = {{1, -1}, {2, -1}};
  tree[0].sprinkles = {{1, 2}};
  EXPECT_THROW(induced_weights(t, tree), std::invalid_argument);
  tree[0].sprinkles = {{1, 1}};
  EXPECT_EQ(induced_weights(t, tree)[0], (Weights{-1, -1, -1}));
}

TEST(Classify, MoreSymmetryFace) {
  // two sprinkles pushed onto the edge into a weight -2 vertex can be swapped
  WeightedType t{2, {1, 2}, {0, -1, -1}};
  auto s = make_stratum(t, 1, 2, 1, {false, false});
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->w2[0], -2);
  EXPECT_EQ(s->p1, (PMap{1, 1}));
  EXPECT_EQ(classify_stratum(*s).kind, Kind::MoreSymmetry);
}

TEST(Classify, SwitchSprinklePairAndSigns) {
  WeightedType t{2, {1}, {-1, -1, -1}};
  auto s = make_stratum(t, 1, 2, 1, {false});
  ASSERT_TRUE(s.has_value());
  auto c = classify_stratum(*s);
  ASSERT_EQ(c.kind, Kind::SwitchSprinkle);
  EXPECT_EQ(c.k1, 1);
  EXPECT_EQ(c.k2, 2);
  auto q = partner_stratum(*s);
  EXPECT_EQ(q.type.p, (PMap{2}));
  EXPECT_FALSE(q == *s);
  EXPECT_TRUE(partner_stratum(q) == *s);
  // d1 d2 + i d2 + i - 1 + |p1| d2 = 2 + 2 + 0 + 2
  EXPECT_EQ(boundary_sign(*s), 0);
  EXPECT_EQ(boundary_sign(q), 0);
  EXPECT_EQ(spade(*s, 1, 2), 0);
  // only p = (2) contributes: tail 1 at k = 1 times w1 = -1
  EXPECT_EQ(diamond_sign(s->type), 0);
  EXPECT_EQ(diamond_sign(q.type), 1);
  EXPECT_THROW(partner_stratum(*make_stratum(plain(3), 2, 2, 1, {})), std::invalid_argument);
}

TEST(Signs, BoundarySignHandValues) {
  auto sign = [](int d1, int d2, int i) { return boundary_sign(*make_stratum(plain(d1 + d2 - 1), d1, d2, i, {})); };
  EXPECT_EQ(sign(1, 2, 1), 0);
  EXPECT_EQ(sign(2, 2, 1), 0);
  EXPECT_EQ(sign(2, 2, 2), 1);
  EXPECT_EQ(sign(3, 2, 2), 1);
  // sprinkle labels 2 on vertex 1 and 1 on vertex 2 add one inversion
  WeightedType t{2, {1, 2}, {0, -1, -1}};
  auto a = make_stratum(t, 2, 1, 2, {false, true});
  auto b = make_stratum(t, 2, 1, 1, {true, false});
  ASSERT_TRUE(a && b);
  EXPECT_EQ(boundary_sign(*a), (2 + 2 + 1 + 1) % 2);
  EXPECT_EQ(boundary_sign(*b), (2 + 1 + 0 + 1 + 1) % 2);
}

TEST(Signs, GahExample) {
  WeightedType t{2, {1}, {-1, -1, -1}};
  auto g = gah_sign(t, {0, 1});
  EXPECT_EQ(g.star, 1);   // (2 + w1)·1
  EXPECT_EQ(g.heart, 1);  // (d - 1)·w1
  EXPECT_EQ(g.diamond, 0);
  auto h = gah_sign(t, {1, 0});
  EXPECT_EQ(h.star, 1);
  EXPECT_EQ(diamond_sign(t, DiamondRange::InclusiveTail), 0);  // tail 1 at k = 1 times (w1 + 1) = 0
  EXPECT_EQ(diamond_sign({2, {2}, {-1, -1, -1}}, DiamondRange::NoWeight), 0);
}

TEST(Cancellation, HoldsThroughDegreeFour) {
  for (int dmax : {2, 3, 4}) {
    auto r = verify_cancellation(dmax);
    EXPECT_TRUE(r.all_ok()) << dmax;
    EXPECT_EQ(r.unclassified, 0u);
    EXPECT_EQ(r.bound_failures, 0u);
    if (dmax >= 3) EXPECT_FALSE(r.pairs.empty());
  }
  EXPECT_GT(verify_cancellation(4).more_symmetry, 0u);
}

TEST(Cancellation, DroppingTheWeightTermBreaksIt) {
  auto r = verify_cancellation(4, DiamondRange::NoWeight);
  EXPECT_FALSE(r.all_ok());
}

TEST(Flavoured, SweepIsClean) {
  for (int dmax : {2, 3, 4}) {
    auto r = verify_flavoured(dmax);
    EXPECT_TRUE(r.all_ok()) << dmax;
  }
  EXPECT_GT(verify_flavoured(4).two_flavour, 0u);
}

TEST(Flavoured, ForgetMergesSorted) {
  FlavouredType f{3, {1, 3}, {2}, {0, -1, -1, -1}};
  std::vector<int> fl;
  auto t = forget_flavours(f, &fl);
  EXPECT_EQ(t.p, (PMap{1, 2, 3}));
  EXPECT_EQ(fl, (std::vector<int>{0, 1, 0}));
}
