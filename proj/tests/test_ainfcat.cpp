#include <gtest/gtest.h>

#include <array>

#include "ncpencil/bimodule.hpp"
#include "ncpencil/cohomcat.hpp"
#include "ncpencil/quadric.hpp"

using namespace ncp;
using namespace ncp::quadric;

namespace {

using Mat = std::array<std::array<int, 3>, 3>;

Mat elementary(int i, int j) {
  Mat m{};
  m[i][j] = 1;
  return m;
}

Mat matmul(const Mat& x, const Mat& y) {
  Mat m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) m[i][j] += x[i][k] * y[k][j];
  return m;
}

/// Upper-triangular 3×3 matrices as a one-object non-unital algebra in
/// degree 0, with products read off from matrix multiplication.
AInfCategory triangular_algebra(std::vector<Mat>& mats) {
  AInfCategory c;
  int o = c.add_object("P");
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      c.add_basis("e" + std::to_string(i + 1) + std::to_string(j + 1), o, o, 0);
      mats.push_back(elementary(i, j));
    }
  int n = static_cast<int>(mats.size());
  for (int x2 = 0; x2 < n; ++x2)
    for (int x1 = 0; x1 < n; ++x1) {
      Mat p = matmul(mats[x2], mats[x1]);
      for (int k = 0; k < n; ++k) {
        int coeff = 0;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) coeff += p[i][j] * mats[k][i][j];
        if (coeff) add_product(c, x2, x1, k, coeff);
      }
    }
  return c;
}

bool same_mu(const AInfCategory& x, const AInfCategory& y) {
  std::size_t n = std::max(x.mu.size(), y.mu.size());
  for (std::size_t d = 0; d < n; ++d) {
    static const std::map<std::vector<int>, Vec> none;
    const auto& a = d < x.mu.size() ? x.mu[d] : none;
    const auto& b = d < y.mu.size() ? y.mu[d] : none;
    if (a != b) return false;
  }
  return true;
}

}  // namespace

TEST(CheckAinf, KroneckerIsValid) {
  for (int n = 3; n <= 6; ++n) {
    auto k = build_kronecker(n);
    EXPECT_TRUE(check_ainf(k, 4).empty());
    EXPECT_TRUE(check_units(k).empty());
  }
}

TEST(CheckAinf, OneObjectField) {
  AInfCategory c;
  int o = c.add_object("pt");
  c.add_unit(o);
  add_unit_products(c);
  EXPECT_TRUE(check_ainf(c, 5).empty());
  EXPECT_TRUE(check_units(c).empty());
  EXPECT_EQ(c.hom_cohomology_dims(o, o), (std::map<long, std::size_t>{{0, 1}}));
}

TEST(CheckAinf, ZeroCategory) {
  AInfCategory c;
  EXPECT_TRUE(check_ainf(c, 4).empty());
  EXPECT_TRUE(check_units(c).empty());
}

TEST(CheckAinf, TriangularMatricesAssociative) {
  std::vector<Mat> mats;
  auto c = triangular_algebra(mats);
  EXPECT_EQ(c.basis.size(), 6u);
  EXPECT_TRUE(check_ainf(c, 4).empty());
}

TEST(CheckAinf, NegatedIdempotentProductDetected) {
  std::vector<Mat> mats;
  auto c = triangular_algebra(mats);
  int e11 = 0, e12 = 1;
  // e11·e12 = e12 becomes -e12; then (e11 e11) e12 ≠ e11 (e11 e12)
  c.set_mu({e12, e11}, Vec{{e12, Q(-1)}});
  auto v = check_ainf(c, 3);
  ASSERT_FALSE(v.empty());
  bool found = false;
  for (const auto& x : v) {
    EXPECT_EQ(x.inputs.size(), 3u);
    if (x.inputs == std::vector<int>{e12, e11, e11}) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(CheckAinf, RescalingIsNotDetected) {
  // negating e12·e23 = e13 is absorbed by e13 ↦ -e13, so no violation
  std::vector<Mat> mats;
  auto c = triangular_algebra(mats);
  int e12 = 1, e13 = 2, e23 = 4;
  c.set_mu({e23, e12}, Vec{{e13, Q(-1)}});
  EXPECT_TRUE(check_ainf(c, 4).empty());
}

TEST(CheckUnits, MissingSignOnOddElement) {
  AInfCategory c;
  int o = c.add_object("pt");
  int e = c.add_unit(o);
  int x = c.add_basis("x", o, o, 1);
  add_unit_products(c);
  EXPECT_TRUE(check_units(c).empty());
  EXPECT_TRUE(check_ainf(c, 4).empty());
  c.set_mu({x, e}, Vec{{x, Q(1)}});
  auto v = check_units(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].inputs, (std::vector<int>{x, e}));
}

TEST(CheckAinf, DegreeOfProductChecked) {
  auto k = build_kronecker(3);
  k.add_mu({Ids::a, Ids::f}, Ids::b, Q(1));
  EXPECT_FALSE(check_ainf(k, 2).empty());
}

TEST(Frobenius, FibresAreValid) {
  for (int n = 3; n <= 5; ++n)
    for (const Q& lam : {Q(1), Q(-3), Q(2, 7)}) {
      EXPECT_TRUE(check_ainf(build_f_infty(n, lam), 4).empty());
      EXPECT_TRUE(check_ainf(build_f_zero(n, lam), 4).empty());
      EXPECT_TRUE(check_units(build_f_zero(n, lam)).empty());
    }
  EXPECT_THROW(build_f_infty(3, 0), std::invalid_argument);
  EXPECT_THROW(build_kronecker(2), std::invalid_argument);
}

TEST(Frobenius, TrivialExtensionOfShiftedDualDiagonal) {
  // K ⊕ Δ^∨[n-2][1] agrees with the λ = 0 fibre up to signs of the new basis
  for (int n = 3; n <= 5; ++n) {
    auto k = build_kronecker(n);
    auto t = trivial_extension(shift(dual(diagonal(k)), n - 2));
    auto f = build_frobenius(n, 1 - n, 2 - 2 * n, 0, 0, 0);
    ASSERT_EQ(t.basis.size(), f.basis.size());
    EXPECT_TRUE(check_ainf(t, 4).empty());
    std::map<std::string, std::string> rename{{"e^v", "a*a"}, {"f^v", "aa*"}, {"a^v", "a*"}, {"b^v", "b*"}};
    std::vector<int> to_f(t.basis.size());
    for (std::size_t i = 0; i < t.basis.size(); ++i) {
      const auto& m = t.basis[i];
      std::string nm = rename.count(m.name) ? rename[m.name] : m.name;
      to_f[i] = f.find(m.src, m.tgt, nm);
      EXPECT_EQ(m.degree, f.basis[to_f[i]].degree) << nm;
    }
    bool matched = false;
    for (int mask = 0; mask < 16 && !matched; ++mask) {
      auto sg = [&](int id) { return id < 4 ? 1 : ((mask >> (id - 4)) & 1 ? -1 : 1); };
      AInfCategory g = f;
      g.mu.clear();
      for (std::size_t d = 1; d < t.mu.size(); ++d)
        for (const auto& [ch, v] : t.mu[d]) {
          std::vector<int> fc;
          int s = 1;
          for (int x : ch) fc.push_back(to_f[x]), s *= sg(to_f[x]);
          for (const auto& [o, c] : v) g.add_mu(fc, to_f[o], c * s * sg(to_f[o]));
        }
      matched = same_mu(g, f);
    }
    EXPECT_TRUE(matched) << "n=" << n;
  }
}

TEST(CohomologyCategory, KroneckerHasZeroDifferential) {
  auto k = build_kronecker(4);
  auto h = cohomology_category(k);
  EXPECT_EQ(h.dims(0, 1), (std::map<long, std::size_t>{{0, 1}, {3, 1}}));
  EXPECT_EQ(h.dims(0, 0), (std::map<long, std::size_t>{{0, 1}}));
  EXPECT_TRUE(h.dims(1, 0).empty());
  EXPECT_TRUE(check_cohomology_category(h).empty());
}

TEST(CohomologyCategory, FInfinityEndomorphisms) {
  for (int n = 3; n <= 5; ++n) {
    auto f = build_f_infty(n, 1);
    auto h = cohomology_category(f);
    EXPECT_EQ(h.dims(Ids::X, Ids::X), (std::map<long, std::size_t>{{0, 1}, {n - 1, 1}}));
    // (a*a)² = 0 since the structure constant of a*a·a*a is λ∞·λ0 = 0
    auto q = quadratic_endomorphism_ring(h, Ids::X);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(q->u_degree, n - 1);
    EXPECT_EQ(q->kappa, 0);
  }
}

TEST(CohomologyCategory, GenericFibreIsQuadratic) {
  for (int n = 3; n <= 5; ++n) {
    auto g = generic_fibre(n, 1, 1);
    auto h = cohomology_category(g);
    auto q = quadratic_endomorphism_ring(h, Ids::X);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(q->kappa, 1);
    EXPECT_EQ(q->u_degree, n - 1);
    // u = a*a is invertible: its square is the unit
    EXPECT_TRUE(check_cohomology_category(h).empty());
  }
  auto g = generic_fibre(3, 2, 3);
  EXPECT_EQ(quadratic_endomorphism_ring(cohomology_category(g), Ids::X)->kappa, 6);
}

TEST(CohomologyCategory, InverseOfUnitAndNonInvertible) {
  auto g = generic_fibre(3, 1, 1);
  auto h = cohomology_category(g);
  auto e = h.unit(Ids::X);
  auto inv = inverse_of(h, Ids::X, Ids::X, e);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(*inv, e);
  auto k = build_kronecker(3);
  auto hk = cohomology_category(k);
  EXPECT_FALSE(find_isomorphism(hk, 0, 1).has_value());
}
