#include <gtest/gtest.h>

#include "ncpencil/transfer.hpp"

using namespace ncp;

namespace {

Vec include(const TransferDatum& t, const Vec& a) { return detail::apply_cols(t.sub, a); }

}  // namespace

TEST(Transfer, RandomDataAreValid) {
  std::mt19937 rng(3);
  int higher = 0;
  for (int k = 0; k < 50; ++k) {
    auto t = random_transfer_datum(rng);
    ASSERT_TRUE(check_ainf(t.ambient, 3).empty());
    ASSERT_TRUE(check_datum(t).empty()) << check_datum(t)[0];
    auto r = homotopy_transfer(t, 5);
    EXPECT_TRUE(check_ainf(r.category, 5).empty()) << "case " << k;
    EXPECT_TRUE(check_units(r.category, 4).empty()) << "case " << k;
    EXPECT_TRUE(check_transfer_functor(t, r, 4).empty()) << "case " << k;
    EXPECT_EQ(r.category.hom_cohomology_dims(0, 0), t.ambient.hom_cohomology_dims(0, 0));
    if (r.category.max_arity() >= 3) ++higher;
  }
  EXPECT_GT(higher, 0);
}

TEST(Transfer, ArityThreeMatchesClosedFormula) {
  // μ³_A = π(μ³ - μ²(hμ²(x1,x2), x3) - μ²(x1, hμ²(x2,x3))) in chain order
  std::mt19937 rng(3);
  int checked = 0;
  for (int k = 0; k < 30; ++k) {
    auto t = random_transfer_datum(rng);
    auto r = homotopy_transfer(t, 3);
    const auto& b = t.ambient;
    r.category.for_each_chain(3, [&](const std::vector<int>& c) {
      Vec x1 = t.sub[c[0]], x2 = t.sub[c[1]], x3 = t.sub[c[2]];
      Vec s = b.eval_vec({x1, x2, x3});
      axpy(s, Q(-1), b.eval_vec({detail::apply_cols(t.h, b.eval_vec({x1, x2})), x3}));
      axpy(s, Q(-1), b.eval_vec({x1, detail::apply_cols(t.h, b.eval_vec({x2, x3}))}));
      EXPECT_EQ(detail::pi_of(t, s), include(t, r.category.eval(c)));
      ++checked;
    });
  }
  EXPECT_GT(checked, 0);
}

TEST(Transfer, ZeroHomotopyOnFullSubcomplexIsIdentity) {
  std::mt19937 rng(9);
  auto t = random_transfer_datum(rng);
  const auto& b = t.ambient;
  TransferDatum full{b, {}, {}, std::vector<Vec>(b.basis.size())};
  for (std::size_t i = 0; i < b.basis.size(); ++i) {
    full.names.push_back(b.basis[i].name);
    full.sub.push_back(unit_vec(static_cast<int>(i)));
  }
  ASSERT_TRUE(check_datum(full).empty());
  auto r = homotopy_transfer(full, 4);
  EXPECT_EQ(r.category.max_arity(), b.max_arity());
  for (int d = 1; d <= b.max_arity(); ++d) EXPECT_EQ(r.category.mu[d], b.mu[d]);
  for (std::size_t d = 2; d < r.functor.size(); ++d) EXPECT_TRUE(r.functor[d].empty());
}

TEST(Transfer, RejectsBadHomotopy) {
  std::mt19937 rng(3);
  auto t = random_transfer_datum(rng);
  for (auto& v : t.h) v.clear();
  EXPECT_FALSE(check_datum(t).empty());
}
