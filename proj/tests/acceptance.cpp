#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ncpencil/case_study.hpp"
#include "ncpencil/localise.hpp"
#include "ncpencil/ncsys.hpp"
#include "ncpencil/popsicle.hpp"
#include "ncpencil/transfer.hpp"

using namespace ncp;
using namespace ncp::quadric;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
  void require_all(const std::vector<Check>& cs) {
    for (const auto& c : cs) require(c.pass, c.name + (c.detail.empty() ? "" : " [" + c.detail + "]"));
  }
};

int failures = 0;

void criterion(int k, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) o.require(false, "runtime exceeded " + std::to_string(limit_s) + " s");
  if (!o.pass) ++failures;
  std::printf("[%s] criterion %2d: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", k, title.c_str(), secs);
  if (!o.pass) std::printf("       %s\n", o.detail.c_str());
  std::fflush(stdout);
}

const std::vector<Q> kMus{Q(1), Q(2), Q(-1)};

bool valid_category(const AInfCategory& c) { return check_ainf(c, 4).empty() && check_units(c).empty(); }

AInfCategory arrow() {
  AInfCategory a;
  int xp = a.add_object("X+"), x = a.add_object("X");
  a.add_unit(xp);
  a.add_unit(x);
  a.add_basis("s", xp, x, 0);
  add_unit_products(a);
  return a;
}

AInfCategory divisor_toy() {
  AInfCategory a0 = arrow();
  Bimodule dq = diagonal(a0);
  for (auto& b : dq.basis) b.weight = -1;
  AInfCategory a = trivial_extension(dq);
  for (std::size_t i = a0.basis.size(); i < a.basis.size(); ++i) a.basis[i].name = "t_" + a.basis[i].name;
  return a;
}

}  // namespace

int main() {
  criterion(1, "T_mu hom tables, n = 3, mu in {1, 2, -1}", 10, [] {
    Outcome o;
    for (const auto& mu : kMus) o.require_all(tmu_tables(3, mu));
    return o;
  });

  criterion(2, "Y_d hom tables, d in {1, 2, 3}, n in {3, 4}", 30, [] {
    Outcome o;
    for (int n : {3, 4})
      for (int d = 1; d <= 3; ++d) o.require_all(yd_tables(n, d));
    return o;
  });

  criterion(3, "nondegenerate pairings for Y_2, Y_3 and T_mu at n = 3", 30, [] {
    Outcome o;
    o.require_all(verify_pairings(3, {2, 3}, kMus));
    return o;
  });

  criterion(4, "T_mu contractible in F_infty and F_0, not over A", 10, [] {
    Outcome o;
    int n = 3, m = 2 * n - 2;
    auto fi = reduce_grading(build_f_infty(n, 1), m), f0 = reduce_grading(build_f_zero(n, 1), m);
    for (const auto& mu : kMus) {
      auto r = verify_tmu_dies_in(fi, f0, n, mu);
      std::string t = " (mu=" + to_string(mu) + ")";
      o.require(r.f_infty && r.cone_map_invertible_infty, "T survives in F_infty" + t);
      o.require(r.f_zero && r.cone_map_invertible_zero, "T survives in F_0" + t);
      o.require(!r.over_a, "T contractible over A" + t);
    }
    return o;
  });

  criterion(5, "Beilinson resolution, n in {3, 4}", 60, [] {
    Outcome o;
    for (int n : {3, 4}) {
      auto b = verify_beilinson(n);
      o.require(b.pass(), "n=" + std::to_string(n) + ": " + std::to_string(b.found) + "/" + std::to_string(b.tried) +
                              " cones quasi-isomorphic");
    }
    return o;
  });

  criterion(6, "Serre identities S Y_1, S Y_2, S T_mu at n = 3", 60, [] {
    Outcome o;
    o.require_all(verify_serre(3, kMus));
    return o;
  });

  criterion(7, "detecting element nonzero for F_0, trivial divisor splits", 30, [] {
    Outcome o;
    int n = 3;
    auto det = verify_detecting_element(reduce_grading(build_f_zero(n, 1), 2 * n - 2), n, Q(1));
    o.require(det.middle_zero, "middle term has cohomology");
    o.require(det.ends_nonzero, "ends vanish");
    auto triv = verify_detecting_element(trivial_divisor_fibre(n), n, Q(1));
    o.require(triv.split && !triv.nonzero(), "trivial divisor does not split");
    return o;
  });

  criterion(8, "generic fibre: X = Y, End(X) = Q[u]/(u^2-1), n = 3", 10, [] {
    Outcome o;
    auto g = verify_generic_fibre(3, 1, 1);
    o.require(g.pass(3), g.end_x ? g.end_x->str() : "no quadratic presentation");
    return o;
  });

  criterion(9, "A-infinity, unit and bimodule validation suites", 120, [] {
    Outcome o;
    for (int n : {3, 4}) {
      std::string t = " (n=" + std::to_string(n) + ")";
      auto a = build_kronecker(n);
      std::vector<std::pair<std::string, AInfCategory>> cats{{"A", a},
                                                            {"F_infty", build_f_infty(n, 1)},
                                                            {"F_0", build_f_zero(n, 1)},
                                                            {"generic(1,1)", generic_fibre(n, 1, 1)},
                                                            {"generic(2,3)", generic_fibre(n, 2, 3)}};
      for (const auto& [name, c] : cats) {
        o.require(valid_category(c), name + " fails A-infinity/unit check" + t);
        auto d = diagonal(c);
        o.require(validate_bimodule(d, 4).empty(), "diagonal of " + name + t);
        o.require(validate_bimodule(dual(d), 4).empty(), "dual diagonal of " + name + t);
      }
      auto d = diagonal(a);
      for (long k : {-2L, 1L, static_cast<long>(n - 2)})
        o.require(validate_bimodule(shift(d, k), 4).empty(), "shift " + std::to_string(k) + t);
      o.require(validate_bimodule(tensor(d, d), 4).empty(), "diagonal tensor diagonal" + t);
      o.require(validate_bimodule(tensor(dual(d), d), 4).empty(), "dual tensor diagonal" + t);
      o.require(valid_category(trivial_extension(shift(dual(d), n - 2))), "trivial extension" + t);
      o.require(valid_category(trivial_extension(d)), "trivial extension by diagonal" + t);
    }
    return o;
  });

  criterion(10, "homotopy transfer: 50 random dgas, h = 0, arity-3 formula", 120, [] {
    Outcome o;
    std::mt19937 rng(3);
    int higher = 0, formula_checked = 0;
    for (int k = 0; k < 50; ++k) {
      auto t = random_transfer_datum(rng);
      std::string tag = " (case " + std::to_string(k) + ")";
      o.require(check_datum(t).empty(), "invalid datum" + tag);
      auto r = homotopy_transfer(t, 5);
      o.require(check_ainf(r.category, 5).empty(), "transferred structure fails check_ainf(5)" + tag);
      o.require(check_units(r.category, 4).empty(), "transferred units" + tag);
      if (r.category.max_arity() >= 3) ++higher;
      const auto& b = t.ambient;
      r.category.for_each_chain(3, [&](const std::vector<int>& c) {
        Vec x1 = t.sub[c[0]], x2 = t.sub[c[1]], x3 = t.sub[c[2]];
        Vec s = b.eval_vec({x1, x2, x3});
        axpy(s, Q(-1), b.eval_vec({detail::apply_cols(t.h, b.eval_vec({x1, x2})), x3}));
        axpy(s, Q(-1), b.eval_vec({x1, detail::apply_cols(t.h, b.eval_vec({x2, x3}))}));
        o.require(detail::pi_of(t, s) == detail::apply_cols(t.sub, r.category.eval(c)), "arity-3 formula" + tag);
        ++formula_checked;
      });
    }
    o.require(higher > 0, "no case produced a higher product");
    o.require(formula_checked > 0, "arity-3 formula never exercised");

    std::mt19937 rng2(9);
    auto t = random_transfer_datum(rng2);
    const auto& b = t.ambient;
    TransferDatum full{b, {}, {}, std::vector<Vec>(b.basis.size())};
    for (std::size_t i = 0; i < b.basis.size(); ++i) {
      full.names.push_back(b.basis[i].name);
      full.sub.push_back(unit_vec(static_cast<int>(i)));
    }
    auto r = homotopy_transfer(full, 4);
    bool same = r.category.max_arity() == b.max_arity();
    for (int d = 1; same && d <= b.max_arity(); ++d) same = r.category.mu[d] == b.mu[d];
    o.require(same, "h = 0 transfer is not the identity");
    return o;
  });

  criterion(11, "popsicle sweeps d <= 4, flavoured d <= 3", 120, [] {
    Outcome o;
    auto c = popsicle::verify_cancellation(4);
    std::size_t bad = 0;
    for (const auto& p : c.pairs) bad += !p.ok;
    o.require(c.bound_failures == 0, std::to_string(c.bound_failures) + " weight bound failures");
    o.require(c.unclassified == 0, std::to_string(c.unclassified) + " unclassified strata");
    o.require(c.involution_ok, "switch-sprinkle pairing is not a fixed-point-free involution");
    o.require(bad == 0, std::to_string(bad) + "/" + std::to_string(c.pairs.size()) + " sign identities fail");
    o.require(!c.pairs.empty(), "no cancelling pairs found");
    auto f = popsicle::verify_flavoured(3);
    o.require(f.all_ok(), "flavoured sweep: " + std::to_string(f.unclassified) + " unclassified");
    return o;
  });

  criterion(12, "localisation toy: stabilises, s invertible, empty S is the base", 10, [] {
    Outcome o;
    auto a = arrow();
    LocalisedCategory e({a, {}, 1}, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        o.require(e.category().hom_cohomology_dims(i, j) == a.hom_cohomology_dims(i, j), "empty S differs from base");
    LocalisedCategory l({a, {unit_vec(2)}, 4}, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) o.require(l.stable(i, j), "hom not stable by length 4");
    auto h = cohomology_category(l.category());
    int sid = l.string_index({l.twisted().lift(0, 1, 0, 0, 2)});
    o.require(sid >= 0, "image of s missing");
    if (sid >= 0) {
      auto fs = h.coords(0, 1, unit_vec(sid));
      o.require(fs.has_value() && inverse_of(h, 0, 1, *fs).has_value(), "s has no two-sided inverse");
    }
    return o;
  });

  criterion(13, "divisor pipeline on the weighted toy", 30, [] {
    Outcome o;
    auto a = divisor_toy();
    int s = a.find(0, 1, "s");
    auto r = divisor_pipeline(a, {unit_vec(s)}, 2, 3);
    auto v = validate_system(r.system, 3, [&](const std::vector<int>& c) { return r.in_range(c); });
    o.require(v.empty(), std::to_string(v.size()) + " linear system violations");
    const auto& m = r.localised->category();
    std::size_t w0 = 0;
    for (const auto& b : m.basis) w0 += b.weight == 0;
    o.require(ambient(r.system).basis.size() == w0, "ambient differs from the weight-0 localisation");
    auto f1 = fibre(r.system, {1});
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        o.require(f1.hom_cohomology_dims(i, j) == r.localised->persistent_dims(i, j), "v = 1 fibre dims differ");
    return o;
  });

  std::printf("%d/13 criteria passed\n", 13 - failures);
  return failures == 0 ? 0 : 1;
}
