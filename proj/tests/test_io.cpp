#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>

#include "ncpencil/io.hpp"
#include "ncpencil/quadric.hpp"

using namespace ncp;
using namespace ncp::quadric;

namespace {

using Ref = std::tuple<std::string, std::string, std::string>;
using Entry = std::tuple<std::vector<Ref>, Ref, std::string>;

Ref ref(const AInfCategory& c, int id) {
  const auto& m = c.basis[id];
  return {c.objects[m.src], c.objects[m.tgt], m.name};
}

/// Structure constants keyed by names, independent of basis order.
std::set<Entry> by_name(const AInfCategory& c) {
  std::set<Entry> out;
  for (std::size_t d = 1; d < c.mu.size(); ++d)
    for (const auto& [chain, v] : c.mu[d]) {
      std::vector<Ref> in;
      for (int x : chain) in.push_back(ref(c, x));
      for (const auto& [o, q] : v) out.insert({in, ref(c, o), to_string(q)});
    }
  return out;
}

std::set<std::tuple<Ref, long, int>> basis_by_name(const AInfCategory& c) {
  std::set<std::tuple<Ref, long, int>> out;
  for (std::size_t i = 0; i < c.basis.size(); ++i) out.insert({ref(c, static_cast<int>(i)), c.basis[i].degree, c.basis[i].weight});
  return out;
}

void expect_same(const AInfCategory& a, const AInfCategory& b) {
  EXPECT_EQ(a.modulus, b.modulus);
  EXPECT_EQ(a.objects, b.objects);
  EXPECT_EQ(basis_by_name(a), basis_by_name(b));
  EXPECT_EQ(by_name(a), by_name(b));
  for (std::size_t o = 0; o < a.objects.size(); ++o) {
    ASSERT_EQ(a.units[o] < 0, b.units[o] < 0);
    if (a.units[o] >= 0) EXPECT_EQ(ref(a, a.units[o]), ref(b, b.units[o]));
  }
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const io::ParseError& e) {
    return e.what();
  }
  return "";
}

const char* kKronecker = R"({
  "grading": {"type": "Z"},
  "objects": ["X", "Y"],
  "homs": [
    {"source": "X", "target": "X", "basis": [{"name": "e", "degree": 0}]},
    {"source": "Y", "target": "Y", "basis": [{"name": "f", "degree": 0}]},
    {"source": "X", "target": "Y", "basis": [{"name": "a", "degree": 0}, {"name": "b", "degree": 2}]}
  ],
  "units": {"X": "e", "Y": "f"},
  "mu": [
    {"arity": 2, "inputs": [[["X", "X"], "e"], [["X", "X"], "e"]], "output": [["X", "X"], "e"], "coeff": "1"},
    {"arity": 2, "inputs": [[["Y", "Y"], "f"], [["Y", "Y"], "f"]], "output": [["Y", "Y"], "f"], "coeff": "1"},
    {"arity": 2, "inputs": [[["X", "Y"], "a"], [["X", "X"], "e"]], "output": [["X", "Y"], "a"], "coeff": "1"},
    {"arity": 2, "inputs": [[["X", "Y"], "b"], [["X", "X"], "e"]], "output": [["X", "Y"], "b"], "coeff": "1"},
    {"arity": 2, "inputs": [[["Y", "Y"], "f"], [["X", "Y"], "a"]], "output": [["X", "Y"], "a"], "coeff": "1"},
    {"arity": 2, "inputs": [[["Y", "Y"], "f"], [["X", "Y"], "b"]], "output": [["X", "Y"], "b"], "coeff": "1"}
  ]
})";

}  // namespace

TEST(Io, HandWrittenKroneckerMatchesBuilder) {
  auto c = io::category_from_json(io::parse(kKronecker));
  expect_same(c, build_kronecker(3));
  EXPECT_TRUE(check_ainf(c, 4).empty());
  EXPECT_TRUE(check_units(c).empty());
}

TEST(Io, InputsAreWrittenRightToLeft) {
  auto c = io::category_from_json(io::parse(kKronecker));
  int e = c.find(0, 0, "e"), a = c.find(0, 1, "a");
  // μ²(a, e): a is applied after e, so the chain is (e, a)
  EXPECT_EQ(c.eval({e, a}), unit_vec(a));
  EXPECT_TRUE(c.eval({a, e}).empty());
}

TEST(Io, CategoryRoundTrips) {
  std::mt19937 rng(4);
  std::vector<AInfCategory> cats{build_kronecker(4), build_f_infty(3, Q(2, 3)), build_f_zero(5, -1),
                                 generic_fibre(3, 1, 2), random_transfer_datum(rng).ambient};
  for (const auto& c : cats) {
    auto j = io::to_json(c);
    auto back = io::category_from_json(io::parse(io::dump(j)));
    expect_same(c, back);
    // reading normalises the basis order, after which output is byte-stable
    auto j2 = io::to_json(back);
    EXPECT_EQ(io::dump(io::to_json(io::category_from_json(j2))), io::dump(j2));
  }
}

TEST(Io, SystemRoundTrips) {
  auto l = kronecker_pencil(4);
  auto back = io::system_from_json(io::parse(io::dump(io::to_json(l))));
  EXPECT_EQ(back.variables, l.variables);
  EXPECT_EQ(back.var_degrees, l.var_degrees);
  EXPECT_TRUE(validate_system(back, 3).empty());
  for (const std::vector<Q>& w : {std::vector<Q>{1, 0}, {0, 1}, {2, 3}}) expect_same(fibre(back, w), fibre(l, w));
  EXPECT_NE(error_of([&] { io::category_from_json(io::to_json(l)); }).find("linear system"), std::string::npos);
}

TEST(Io, TwistedRoundTrips) {
  auto k = build_kronecker(3, 4);
  auto t = build_Tmu(3, Q(2));
  auto root = io::to_json(k);
  root["twisted"] = io::json::array({io::to_json(k, t)});
  auto parsed = io::parse(io::dump(root));
  auto c = io::category_from_json(parsed);
  auto ts = io::twisted_from_root(c, parsed);
  ASSERT_EQ(ts.size(), 1u);
  TwCategory a(k, {t}), b(c, ts);
  EXPECT_EQ(tw_hom_cohomology(a, 0, 0), tw_hom_cohomology(b, 0, 0));
  EXPECT_EQ(ts[0].summands.size(), 4u);
  EXPECT_EQ(ts[0].delta.size(), t.delta.size());
}

TEST(Io, BimoduleRoundTrips) {
  auto k = build_kronecker(3);
  for (const auto& q : {diagonal(k), dual(diagonal(k)), shift(diagonal(build_f_infty(3, 1)), 2)}) {
    auto back = io::bimodule_from_json(q.base, io::parse(io::dump(io::to_json(q))), "bimodule");
    EXPECT_EQ(back.mu, q.mu);
    ASSERT_EQ(back.basis.size(), q.basis.size());
    for (std::size_t y = 0; y < q.basis.size(); ++y) EXPECT_EQ(back.deg(y), q.deg(y));
  }
}

TEST(Io, DatumRoundTrips) {
  std::mt19937 rng(8);
  auto t = random_transfer_datum(rng);
  auto back = io::datum_from_json(t.ambient, io::parse(io::dump(io::to_json(t))));
  EXPECT_EQ(back.names, t.names);
  EXPECT_EQ(back.sub, t.sub);
  EXPECT_EQ(back.h, t.h);
  EXPECT_TRUE(check_datum(back).empty());
}

TEST(Io, ParseErrorsNameTheField) {
  auto j = io::parse(kKronecker);
  EXPECT_NE(error_of([] { io::parse("{\n  \"a\": [1,\n  }"); }).find("input:3:"), std::string::npos);
  auto bad = j;
  bad["mu"][2].erase("coeff");
  EXPECT_NE(error_of([&] { io::category_from_json(bad); }).find("mu[2]: missing field 'coeff'"), std::string::npos);
  bad = j;
  bad["mu"][0]["coeff"] = "1/0";
  EXPECT_NE(error_of([&] { io::category_from_json(bad); }).find("mu[0].coeff"), std::string::npos);
  bad = j;
  bad["mu"][0]["arity"] = 3;
  EXPECT_NE(error_of([&] { io::category_from_json(bad); }).find("arity"), std::string::npos);
  bad = j;
  bad["homs"][2]["source"] = "Z";
  EXPECT_NE(error_of([&] { io::category_from_json(bad); }).find("unknown object 'Z'"), std::string::npos);
  bad = j;
  bad["mu"][2]["inputs"] = io::json::array({bad["mu"][2]["inputs"][1], bad["mu"][2]["inputs"][0]});
  EXPECT_NE(error_of([&] { io::category_from_json(bad); }).find("not composable"), std::string::npos);
  bad = j;
  bad["mu"][2]["output"] = io::json::array({io::json::array({"X", "X"}), "e"});
  EXPECT_NE(error_of([&] { io::category_from_json(bad); }).find("output does not lie"), std::string::npos);
  bad = j;
  bad["grading"] = {{"type", "Z_mod"}, {"modulus", 3}};
  EXPECT_NE(error_of([&] { io::category_from_json(bad); }).find("grading.modulus"), std::string::npos);
  bad = j;
  bad["units"]["Y"] = "a";
  EXPECT_NE(error_of([&] { io::category_from_json(bad); }).find("units.Y"), std::string::npos);
  EXPECT_NE(error_of([] { io::read_file("/nonexistent/file.json"); }).find("cannot open"), std::string::npos);
}
