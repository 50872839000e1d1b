#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ncpencil/case_study.hpp"
#include "ncpencil/io.hpp"
#include "ncpencil/localise.hpp"
#include "ncpencil/ncsys.hpp"
#include "ncpencil/popsicle.hpp"
#include "ncpencil/transfer.hpp"

namespace {

using ncp::io::json;
using ncp::quadric::Check;
using ncp::quadric::dims_str;

struct Report {
  std::string command;
  json input = json::object();
  json data = json::object();
  std::vector<std::string> lines;
  std::vector<Check> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  void check(const std::string& name, bool ok, const std::string& detail = "") { checks.push_back({name, ok, detail}); }

  json to_json() const {
    json cs = json::array();
    for (const auto& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"command", command}, {"input", input}, {"data", data}, {"checks", cs}, {"pass", pass()}};
  }

  std::string text() const {
    std::ostringstream os;
    os << "ncpencil " << command << "\n";
    for (const auto& l : lines) os << "  " << l << "\n";
    std::size_t ok = 0;
    for (const auto& c : checks) {
      os << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
      ok += c.pass;
    }
    os << "result: " << (pass() ? "PASS" : "FAIL") << " (" << ok << "/" << checks.size() << " checks)\n";
    return os.str();
  }
};

json dims_json(const std::map<long, std::size_t>& d) {
  json out = json::object();
  for (const auto& [k, v] : d) out[std::to_string(k)] = v;
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void add_violations(Report& r, const ncp::AInfCategory& c, const std::vector<ncp::Violation>& v,
                    const std::string& key) {
  json list = json::array();
  for (std::size_t i = 0; i < v.size() && i < 50; ++i) list.push_back(ncp::describe(c, v[i]));
  r.data[key] = {{"count", v.size()}, {"first", list}};
}

bool has_kind(const std::vector<ncp::Violation>& v, const std::string& kind) {
  for (const auto& x : v)
    if (x.kind == kind) return true;
  return false;
}

std::size_t count_kind(const std::vector<ncp::Violation>& v, const std::string& kind, bool equal) {
  std::size_t n = 0;
  for (const auto& x : v) n += (x.kind == kind) == equal;
  return n;
}

int object_or_twisted(const ncp::AInfCategory& c, const std::vector<ncp::TwistedComplex>& tw, const std::string& name) {
  for (std::size_t i = 0; i < c.objects.size(); ++i)
    if (c.objects[i] == name) return static_cast<int>(i);
  for (std::size_t i = 0; i < tw.size(); ++i)
    if (tw[i].name == name) return static_cast<int>(c.objects.size() + i);
  throw ncp::io::ParseError(name, "no object or twisted complex of that name");
}

ncp::TwCategory with_twisted(const ncp::AInfCategory& c, const std::vector<ncp::TwistedComplex>& tw) {
  std::vector<ncp::TwistedComplex> all;
  for (std::size_t o = 0; o < c.objects.size(); ++o)
    all.push_back(ncp::TwistedComplex::object(c.objects[o], static_cast<int>(o)));
  all.insert(all.end(), tw.begin(), tw.end());
  return ncp::TwCategory(c, all);
}

// ---------------------------------------------------------------------------

Report cmd_check_ainf(const std::string& file, int dmax) {
  Report r;
  r.command = "check-ainf";
  r.input = {{"file", file}, {"dmax", dmax}};
  auto root = ncp::io::read_file(file);
  if (root.is_object() && root.contains("variables")) {
    auto l = ncp::io::system_from_json(root);
    auto v = ncp::validate_system(l, dmax);
    add_violations(r, l.gens, v, "violations");
    r.lines.push_back("linear system: " + std::to_string(l.gens.objects.size()) + " objects, " +
                      std::to_string(l.gens.basis.size()) + " generators, " + std::to_string(l.nvars()) +
                      " variables");
    r.check("linear system axioms up to arity " + std::to_string(dmax), v.empty(),
            std::to_string(v.size()) + " violations");
    return r;
  }
  auto c = ncp::io::category_from_json(root);
  auto tw = ncp::io::twisted_from_root(c, root);
  auto v = ncp::check_ainf(c, dmax);
  auto u = ncp::check_units(c);
  add_violations(r, c, v, "violations");
  add_violations(r, c, u, "unit_violations");
  r.lines.push_back(std::to_string(c.objects.size()) + " objects, " + std::to_string(c.basis.size()) +
                    " basis elements, max arity " + std::to_string(c.max_arity()));
  std::size_t structural = v.size() - count_kind(v, "associativity", true);
  r.check("structure constants have correct degree, weight and composability", structural == 0,
          std::to_string(structural) + " violations");
  r.check("A-infinity relations up to arity " + std::to_string(dmax), !has_kind(v, "associativity"),
          std::to_string(count_kind(v, "associativity", true)) + " violations");
  r.check("strict units", u.empty(), std::to_string(u.size()) + " violations");
  for (const auto& t : tw) {
    std::string err;
    try {
      ncp::TwCategory cat(c, {t});
      (void)cat;
    } catch (const ncp::TwError& e) {
      err = e.what();
    }
    r.check("twisted complex " + t.name + " satisfies the Maurer-Cartan equation", err.empty(), err);
  }
  return r;
}

Report cmd_cohomology(const std::string& file, const std::string& s, const std::string& t) {
  Report r;
  r.command = "cohomology";
  r.input = {{"file", file}, {"source", s}, {"target", t}};
  auto root = ncp::io::read_file(file);
  auto c = ncp::io::category_from_json(root);
  auto tw = ncp::io::twisted_from_root(c, root);
  int p = object_or_twisted(c, tw, s), q = object_or_twisted(c, tw, t);
  std::map<long, std::size_t> dims;
  std::string err;
  try {
    if (tw.empty()) {
      dims = c.hom_cohomology_dims(p, q);
    } else {
      dims = ncp::tw_hom_cohomology(with_twisted(c, tw), p, q);
    }
  } catch (const ncp::NonComplexError& e) {
    err = e.what();
  } catch (const ncp::TwError& e) {
    err = e.what();
  }
  r.data["dims"] = dims_json(dims);
  r.lines.push_back("H(" + s + ", " + t + ") = " + dims_str(dims) + (c.modulus ? " mod " + std::to_string(c.modulus) : ""));
  r.check("hom complex is a cochain complex", err.empty(), err);
  return r;
}

Report cmd_fibre(const std::string& file, const std::string& at, int dmax) {
  Report r;
  r.command = "fibre";
  r.input = {{"file", file}, {"at", at}, {"dmax", dmax}};
  auto l = ncp::io::system_from_json(ncp::io::read_file(file));
  std::vector<ncp::Q> w;
  for (const auto& x : split_list(at)) {
    try {
      w.push_back(ncp::parse_rational(x));
    } catch (const std::invalid_argument& e) {
      throw ncp::io::ParseError("--at", e.what());
    }
  }
  if (static_cast<int>(w.size()) != l.nvars())
    throw ncp::io::ParseError("--at", "expected " + std::to_string(l.nvars()) + " coordinates");
  auto f = ncp::fibre(l, w);
  auto v = ncp::check_ainf(f, dmax);
  auto u = ncp::check_units(f);
  add_violations(r, f, v, "violations");
  r.data["category"] = ncp::io::to_json(f);
  json coh = json::array();
  int n = static_cast<int>(f.objects.size());
  r.lines.push_back("grading " + (f.modulus ? "Z/" + std::to_string(f.modulus) : std::string("Z")));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      auto d = f.hom_cohomology_dims(s, t);
      coh.push_back({{"source", f.objects[s]}, {"target", f.objects[t]}, {"dims", dims_json(d)}});
      r.lines.push_back("H(" + f.objects[s] + ", " + f.objects[t] + ") = " + dims_str(d));
    }
  r.data["cohomology"] = coh;
  r.check("fibre satisfies the A-infinity relations up to arity " + std::to_string(dmax), v.empty(),
          std::to_string(v.size()) + " violations");
  r.check("fibre is strictly unital", u.empty(), std::to_string(u.size()) + " violations");
  return r;
}

Report cmd_transfer(const std::string& file, const std::string& datum, int dmax) {
  Report r;
  r.command = "transfer";
  r.input = {{"file", file}, {"datum", datum}, {"dmax", dmax}};
  auto b = ncp::io::category_from_json(ncp::io::read_file(file));
  auto td = ncp::io::datum_from_json(b, ncp::io::read_file(datum));
  auto bad = ncp::check_datum(td);
  r.check("transfer datum side conditions", bad.empty(), bad.empty() ? "" : bad.front());
  if (!bad.empty()) return r;
  auto res = ncp::homotopy_transfer(td, dmax);
  auto v = ncp::check_ainf(res.category, dmax);
  auto u = ncp::check_units(res.category);
  auto fv = ncp::check_transfer_functor(td, res, std::min(dmax, 4));
  add_violations(r, res.category, v, "violations");
  r.data["category"] = ncp::io::to_json(res.category);
  r.lines.push_back("transferred onto " + std::to_string(res.category.basis.size()) + " of " +
                    std::to_string(b.basis.size()) + " basis elements, max arity " +
                    std::to_string(res.category.max_arity()));
  r.check("transferred structure satisfies the A-infinity relations up to arity " + std::to_string(dmax), v.empty(),
          std::to_string(v.size()) + " violations");
  r.check("transferred structure is strictly unital", u.empty(), std::to_string(u.size()) + " violations");
  r.check("inclusion extends to an A-infinity functor", fv.empty(), std::to_string(fv.size()) + " violations");
  return r;
}

int unique_morphism(const ncp::AInfCategory& c, const std::string& name) {
  int found = -1;
  for (std::size_t id = 0; id < c.basis.size(); ++id)
    if (c.basis[id].name == name) {
      if (found >= 0) throw ncp::io::ParseError("--invert", "morphism name '" + name + "' is ambiguous");
      found = static_cast<int>(id);
    }
  if (found < 0) throw ncp::io::ParseError("--invert", "no morphism named '" + name + "'");
  return found;
}

Report cmd_localise(const std::string& file, const std::string& invert, int lmax, int dmax) {
  Report r;
  r.command = "localise";
  r.input = {{"file", file}, {"invert", invert}, {"lmax", lmax}, {"dmax", dmax}};
  auto a = ncp::io::category_from_json(ncp::io::read_file(file));
  ncp::LocalisationDatum ld{a, {}, lmax};
  std::vector<int> ids;
  for (const auto& name : split_list(invert)) {
    int id = unique_morphism(a, name);
    if (a.norm(a.deg(id)) != 0) throw ncp::io::ParseError("--invert", name + " is not of degree 0");
    ids.push_back(id);
    ld.s.push_back(ncp::unit_vec(id));
  }
  ncp::LocalisedCategory loc(ld, dmax);
  const auto& c = loc.category();
  auto v = ncp::check_ainf(c, dmax, [&](const std::vector<int>& ch) {
    int t = 0;
    for (int i : ch) t += loc.length(i);
    return t <= lmax;
  });
  r.check("A-infinity relations on strings of total length <= " + std::to_string(lmax), v.empty(),
          std::to_string(v.size()) + " violations");
  auto u = ncp::check_units(c, dmax);
  r.check("strict units", u.empty(), std::to_string(u.size()) + " violations");
  int n = static_cast<int>(a.objects.size());
  json table = json::array();
  for (int x0 = 0; x0 < n; ++x0)
    for (int x1 = 0; x1 < n; ++x1) {
      auto by = loc.dims_by_length(x0, x1);
      json row = json::array();
      std::string line = "H(" + a.objects[x0] + ", " + a.objects[x1] + ") by length:";
      for (const auto& d : by) {
        row.push_back(dims_json(d));
        line += " " + dims_str(d);
      }
      table.push_back({{"source", a.objects[x0]}, {"target", a.objects[x1]}, {"dims_by_length", row}});
      r.lines.push_back(line);
      if (lmax >= 2)
        r.check("cohomology of (" + a.objects[x0] + ", " + a.objects[x1] + ") stable at length " + std::to_string(lmax),
                loc.stable(x0, x1));
    }
  r.data["cohomology"] = table;
  auto h = ncp::cohomology_category(c);
  for (int id : ids) {
    const auto& m = a.basis[id];
    int sid = loc.string_index({loc.twisted().lift(m.src, m.tgt, 0, 0, id)});
    auto coords = h.coords(m.src, m.tgt, ncp::unit_vec(sid));
    bool inv = coords && ncp::inverse_of(h, m.src, m.tgt, *coords).has_value();
    r.check("image of " + m.name + " has a two-sided inverse in H^0", inv);
  }
  return r;
}

Report cmd_popsicle(const std::string& mode, int dmax, bool flavoured) {
  namespace ps = ncp::popsicle;
  Report r;
  r.command = "popsicle " + mode;
  r.input = {{"dmax", dmax}, {"flavoured", flavoured}};
  if (flavoured) {
    auto rep = ps::verify_flavoured(dmax);
    r.data = {{"types", rep.types},
              {"strata", rep.strata},
              {"two_flavour_stick", rep.two_flavour},
              {"two_flavour_stick_wider", rep.wider_two_flavour},
              {"unclassified", rep.unclassified}};
    r.lines.push_back(std::to_string(rep.types) + " flavoured types, " + std::to_string(rep.strata) + " strata, " +
                      std::to_string(rep.two_flavour) + " two-flavour-stick strata (" +
                      std::to_string(rep.wider_two_flavour) + " with extra empty sticks)");
    r.check("strata agree with the unflavoured enumeration", rep.count_mismatch == 0);
    if (mode != "enumerate") r.check("every bad stratum classified", rep.unclassified == 0);
    if (mode == "verify-cancellation") r.check("two-flavour swap is a fixed-point-free involution", rep.involution_ok);
    return r;
  }
  if (mode == "enumerate") {
    json types = json::array();
    std::size_t strata = 0, bound = 0;
    for (const auto& t : ps::all_01_types(dmax)) {
      auto st = ps::enumerate_codim1(t);
      strata += st.size();
      for (const auto& s : st) bound += !ps::induced_weights_ok(s);
      types.push_back({{"d", t.d}, {"p", t.p}, {"w", t.w}, {"dim", ps::moduli_dim(t.d, t.p)}, {"codim1", st.size()}});
    }
    r.data = {{"types", types}, {"strata", strata}};
    r.lines.push_back(std::to_string(types.size()) + " types, " + std::to_string(strata) + " codimension-one strata");
    r.check("induced weights satisfy the upper bound", bound == 0, std::to_string(bound) + " failures");
    return r;
  }
  if (mode == "classify") {
    std::map<std::string, std::size_t> kinds;
    for (const auto& t : ps::all_01_types(dmax))
      for (const auto& s : ps::enumerate_codim1(t)) ++kinds[ps::to_string(ps::classify_stratum(s).kind)];
    json k = json::object();
    for (const auto& [name, n] : kinds) {
      k[name] = n;
      r.lines.push_back(name + ": " + std::to_string(n));
    }
    r.data = {{"kinds", k}};
    r.check("every bad stratum classified", kinds["Unclassified"] == 0);
    return r;
  }
  auto rep = ps::verify_cancellation(dmax);
  json pairs = json::array();
  auto stratum_json = [](const ps::Stratum& s) {
    return json{{"d", s.type.d}, {"p", s.type.p}, {"w", s.type.w}, {"d1", s.d1}, {"d2", s.d2}, {"i", s.i},
                {"on_v2", s.on_v2}};
  };
  std::size_t bad = 0;
  for (const auto& p : rep.pairs) {
    bad += !p.ok;
    pairs.push_back({{"left", stratum_json(p.left)},
                     {"right", stratum_json(p.right)},
                     {"k1", p.k1},
                     {"k2", p.k2},
                     {"spade", p.spade},
                     {"dagger", {p.dagger_left, p.dagger_right}},
                     {"diamond", {p.diamond_left, p.diamond_right}},
                     {"ok", p.ok}});
  }
  r.data = {{"types", rep.types},
            {"strata", rep.strata},
            {"more_symmetry", rep.more_symmetry},
            {"diamond_range", "k = 1..d"},
            {"pairs", pairs}};
  r.lines.push_back(std::to_string(rep.types) + " types, " + std::to_string(rep.strata) + " strata, " +
                    std::to_string(rep.pairs.size()) + " switch-sprinkle pairs");
  r.check("induced weights satisfy the upper bound", rep.bound_failures == 0);
  r.check("every bad stratum classified", rep.unclassified == 0);
  r.check("switch-sprinkle pairing is a fixed-point-free involution", rep.involution_ok);
  r.check("sign identities hold for every pair", bad == 0, std::to_string(bad) + " failing pairs");
  return r;
}

Report cmd_case_study(int n, const std::string& lambda) {
  Report r;
  r.command = "case-study kronecker";
  r.input = {{"n", n}, {"lambda", lambda}};
  if (n < 3) throw ncp::io::ParseError("--n", "n must be at least 3");
  ncp::Q l;
  try {
    l = ncp::parse_rational(lambda);
  } catch (const std::invalid_argument& e) {
    throw ncp::io::ParseError("--lambda", e.what());
  }
  if (l == 0) throw ncp::io::ParseError("--lambda", "lambda must be nonzero");
  using ncp::quadric::Ids;
  int m = 2 * n - 2;
  json table = json::array();
  for (int mu : {1, 2, -1}) {
    auto tw = ncp::quadric::tw_over(ncp::quadric::build_kronecker(n, m), {ncp::quadric::build_Tmu(n, mu)});
    json row = json::object();
    const std::vector<std::pair<std::string, std::pair<int, int>>> pairs{
        {"X,T", {Ids::X, 2}}, {"Y,T", {Ids::Y, 2}}, {"T,X", {2, Ids::X}}, {"T,Y", {2, Ids::Y}}, {"T,T", {2, 2}}};
    std::string line = "mu=" + std::to_string(mu) + ":";
    for (const auto& [name, pq] : pairs) {
      auto d = ncp::tw_hom_cohomology(tw, pq.first, pq.second);
      row[name] = dims_json(d);
      line += " H(" + name + ")=" + dims_str(d);
    }
    table.push_back({{"mu", mu}, {"modulus", m}, {"dims", row}});
    r.lines.push_back(line);
  }
  r.data["t_mu_hom"] = table;
  r.checks = ncp::quadric::case_study_report(n, l);
  return r;
}

Report cmd_export(const std::string& what, int n) {
  Report r;
  r.command = "export";
  using namespace ncp;
  if (what == "kronecker") {
    auto a = quadric::build_kronecker(n);
    auto j = io::to_json(a);
    json tw = json::array();
    for (int d = 1; d <= 2; ++d) tw.push_back(io::to_json(a, quadric::build_Yd(n, d)));
    j["twisted"] = tw;
    r.data = j;
  } else if (what == "kronecker-mod") {
    auto a = quadric::build_kronecker(n, 2 * n - 2);
    auto j = io::to_json(a);
    j["twisted"] = json::array({io::to_json(a, quadric::build_Tmu(n, 1))});
    r.data = j;
  } else if (what == "pencil") {
    r.data = io::to_json(quadric::kronecker_pencil(n));
  } else if (what == "localisation-toy") {
    AInfCategory a;
    int xp = a.add_object("X+"), x = a.add_object("X");
    a.add_unit(xp);
    a.add_unit(x);
    a.add_basis("s", xp, x, 0);
    add_unit_products(a);
    r.data = io::to_json(a);
  } else if (what == "transfer-example" || what == "transfer-example-datum") {
    std::mt19937 rng(static_cast<unsigned>(n));
    auto td = random_transfer_datum(rng);
    r.data = what == "transfer-example" ? io::to_json(td.ambient) : io::to_json(td);
  } else {
    throw io::ParseError("export", "unknown example '" + what + "'");
  }
  return r;
}

void emit(const Report& r, const std::string& format, const std::string& dir, bool raw) {
  if (raw) {
    std::cout << ncp::io::dump(r.data);
    return;
  }
  std::string text = r.text();
  std::string js = ncp::io::dump(r.to_json());
  std::cout << (format == "json" ? js : text);
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  std::string stem = r.command;
  for (auto& ch : stem)
    if (ch == ' ') ch = '-';
  std::ofstream(std::filesystem::path(dir) / (stem + ".json")) << js;
  std::ofstream(std::filesystem::path(dir) / (stem + ".txt")) << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with A-infinity categories, linear systems and popsicles"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  std::string report_dir;
  if (const char* env = std::getenv("NCPENCIL_REPORT_DIR")) report_dir = env;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--report-dir", report_dir, "Directory for report files (default: $NCPENCIL_REPORT_DIR)");

  std::string file, datum, source, target, at, invert, lambda = "1", mode, what;
  int dmax = 4, lmax = 2, n = 3;
  bool flavoured = false;

  auto* chk = app.add_subcommand("check-ainf", "Check A-infinity relations and units of a category file");
  chk->add_option("file", file)->required();
  chk->add_option("--dmax", dmax)->check(CLI::Range(1, 8));

  auto* coh = app.add_subcommand("cohomology", "Cohomology of a hom complex");
  coh->add_option("file", file)->required();
  coh->add_option("--source", source)->required();
  coh->add_option("--target", target)->required();

  auto* fib = app.add_subcommand("fibre", "Fibre of a linear system at a point");
  fib->add_option("file", file)->required();
  fib->add_option("--at", at, "Comma-separated rational coordinates")->required();
  fib->add_option("--dmax", dmax)->check(CLI::Range(1, 8));

  auto* tr = app.add_subcommand("transfer", "Homotopy transfer along a contraction datum");
  tr->add_option("file", file)->required();
  tr->add_option("datum", datum)->required();
  tr->add_option("--dmax", dmax)->check(CLI::Range(1, 8));

  auto* loc = app.add_subcommand("localise", "Length-truncated localisation");
  loc->add_option("file", file)->required();
  loc->add_option("--invert", invert, "Comma-separated morphism names")->required();
  loc->add_option("--lmax", lmax)->check(CLI::Range(1, 6));
  int ldmax = 3;
  loc->add_option("--dmax", ldmax)->check(CLI::Range(1, 5));

  auto* pop = app.add_subcommand("popsicle", "Popsicle strata sweeps");
  pop->add_option("mode", mode)->required()->check(CLI::IsMember({"enumerate", "classify", "verify-cancellation"}));
  pop->add_option("--dmax", dmax)->check(CLI::Range(1, 6));
  pop->add_flag("--flavoured", flavoured);

  auto* cs = app.add_subcommand("case-study", "Graded Kronecker quiver case study");
  std::string family;
  cs->add_option("family", family)->required()->check(CLI::IsMember({"kronecker"}));
  cs->add_option("--n", n)->check(CLI::Range(3, 6));
  cs->add_option("--lambda", lambda, "Nonzero rational p/q");

  auto* ex = app.add_subcommand("export", "Write a built-in example as JSON");
  ex->add_option("name", what)->required();
  ex->add_option("--n", n)->check(CLI::Range(1, 1000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Report r;
    bool raw = false;
    if (chk->parsed()) {
      r = cmd_check_ainf(file, dmax);
    } else if (coh->parsed()) {
      r = cmd_cohomology(file, source, target);
    } else if (fib->parsed()) {
      r = cmd_fibre(file, at, dmax);
    } else if (tr->parsed()) {
      r = cmd_transfer(file, datum, dmax);
    } else if (loc->parsed()) {
      r = cmd_localise(file, invert, lmax, ldmax);
    } else if (pop->parsed()) {
      if (!pop->count("--dmax")) dmax = flavoured ? 3 : 4;
      r = cmd_popsicle(mode, dmax, flavoured);
    } else if (cs->parsed()) {
      r = cmd_case_study(n, lambda);
    } else {
      r = cmd_export(what, n);
      raw = true;
    }
    emit(r, format, report_dir, raw);
    return r.pass() ? 0 : 1;
  } catch (const ncp::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
