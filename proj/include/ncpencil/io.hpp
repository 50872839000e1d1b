#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bimodule.hpp"
#include "category.hpp"
#include "ncsys.hpp"
#include "transfer.hpp"
#include "twisted.hpp"

namespace ncp::io {

using json = nlohmann::ordered_json;

/// Malformed input, with the offending field path or source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& what) : std::runtime_error(where + ": " + what) {}
};

namespace detail {

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path, "missing field '" + key + "'");
  return *it;
}

inline std::string str(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

inline long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<long>();
}

inline Q rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Q(j.get<long>());
  std::string s = str(j, path);
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
}

inline const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  return j;
}

inline std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline int object_of(const AInfCategory& c, const json& j, const std::string& path) {
  std::string name = str(j, path);
  for (std::size_t i = 0; i < c.objects.size(); ++i)
    if (c.objects[i] == name) return static_cast<int>(i);
  throw ParseError(path, "unknown object '" + name + "'");
}

/// [[source, target], name] → basis id.
inline int morphism_of(const AInfCategory& c, const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2)
    throw ParseError(path, "expected [[source, target], name]");
  int s = object_of(c, j[0][0], path + "[0][0]"), t = object_of(c, j[0][1], path + "[0][1]");
  std::string name = str(j[1], path + "[1]");
  for (int id : c.hom(s, t))
    if (c.basis[id].name == name) return id;
  throw ParseError(path, "no morphism '" + name + "' in (" + c.objects[s] + ", " + c.objects[t] + ")");
}

inline json morphism_ref(const AInfCategory& c, int id) {
  const auto& m = c.basis[id];
  return json::array({json::array({c.objects[m.src], c.objects[m.tgt]}), m.name});
}

/// Sparse vector as [[[s, t], name, coeff], …] in basis order.
inline json vec_json(const AInfCategory& c, const Vec& v) {
  json out = json::array();
  for (const auto& [id, x] : v) {
    json e = morphism_ref(c, id);
    e.push_back(to_string(x));
    out.push_back(e);
  }
  return out;
}

inline Vec vec_of(const AInfCategory& c, const json& j, const std::string& path) {
  Vec v;
  array(j, path);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    if (!e.is_array() || e.size() != 3) throw ParseError(at(path, i), "expected [[source, target], name, coeff]");
    add_entry(v, morphism_of(c, json::array({e[0], e[1]}), at(path, i)), rational(e[2], at(path, i) + "[2]"));
  }
  return v;
}

inline void read_grading(AInfCategory& c, const json& root) {
  const auto& g = field(root, "grading", "grading");
  std::string type = str(field(g, "type", "grading"), "grading.type");
  if (type == "Z") {
    c.modulus = 0;
  } else if (type == "Z_mod") {
    long m = integer(field(g, "modulus", "grading"), "grading.modulus");
    if (m <= 0 || m % 2 != 0) throw ParseError("grading.modulus", "must be a positive even integer");
    c.modulus = static_cast<int>(m);
  } else {
    throw ParseError("grading.type", "expected \"Z\" or \"Z_mod\"");
  }
}

inline json grading_json(int modulus) {
  if (modulus == 0) return json{{"type", "Z"}};
  return json{{"type", "Z_mod"}, {"modulus", modulus}};
}

/// Objects, homs and units; returns the category without structure constants.
inline AInfCategory read_skeleton(const json& root) {
  AInfCategory c;
  read_grading(c, root);
  const auto& objs = array(field(root, "objects", "objects"), "objects");
  for (std::size_t i = 0; i < objs.size(); ++i) {
    std::string name = str(objs[i], at("objects", i));
    for (const auto& o : c.objects)
      if (o == name) throw ParseError(at("objects", i), "duplicate object '" + name + "'");
    c.add_object(name);
  }
  const auto& homs = array(field(root, "homs", "homs"), "homs");
  for (std::size_t i = 0; i < homs.size(); ++i) {
    std::string p = at("homs", i);
    int s = object_of(c, field(homs[i], "source", p), p + ".source");
    int t = object_of(c, field(homs[i], "target", p), p + ".target");
    const auto& basis = array(field(homs[i], "basis", p), p + ".basis");
    for (std::size_t k = 0; k < basis.size(); ++k) {
      std::string q = at(p + ".basis", k);
      std::string name = str(field(basis[k], "name", q), q + ".name");
      for (int id : c.hom(s, t))
        if (c.basis[id].name == name) throw ParseError(q, "duplicate morphism '" + name + "'");
      long deg = integer(field(basis[k], "degree", q), q + ".degree");
      long w = basis[k].contains("weight") ? integer(basis[k]["weight"], q + ".weight") : 0;
      c.add_basis(name, s, t, deg, static_cast<int>(w));
    }
  }
  if (root.contains("units")) {
    const auto& units = root["units"];
    if (!units.is_object()) throw ParseError("units", "expected an object mapping object names to morphism names");
    for (const auto& [obj, name] : units.items()) {
      std::string p = "units." + obj;
      int o = object_of(c, json(obj), p);
      std::string n = str(name, p);
      int id = -1;
      for (int k : c.hom(o, o))
        if (c.basis[k].name == n) id = k;
      if (id < 0) throw ParseError(p, "no morphism '" + n + "' in (" + obj + ", " + obj + ")");
      if (c.basis[id].degree != 0 || c.basis[id].weight != 0) throw ParseError(p, "unit must have degree 0, weight 0");
      c.units[o] = id;
    }
  }
  return c;
}

inline json skeleton_json(const AInfCategory& c) {
  json root;
  root["grading"] = grading_json(c.modulus);
  root["objects"] = c.objects;
  json homs = json::array();
  int n = static_cast<int>(c.objects.size());
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (c.hom(s, t).empty()) continue;
      json basis = json::array();
      for (int id : c.hom(s, t)) {
        const auto& m = c.basis[id];
        basis.push_back({{"name", m.name}, {"degree", m.degree}, {"weight", m.weight}});
      }
      homs.push_back({{"source", c.objects[s]}, {"target", c.objects[t]}, {"basis", basis}});
    }
  root["homs"] = homs;
  json units = json::object();
  for (int o = 0; o < n; ++o)
    if (c.units[o] >= 0) units[c.objects[o]] = c.basis[c.units[o]].name;
  root["units"] = units;
  return root;
}

/// Inputs written right-to-left, i.e. the reverse of chain order.
inline std::vector<int> chain_of(const AInfCategory& c, const json& inputs, const std::string& path) {
  array(inputs, path);
  std::vector<int> chain;
  for (std::size_t k = inputs.size(); k-- > 0;) chain.push_back(morphism_of(c, inputs[k], at(path, k)));
  for (std::size_t k = 1; k < chain.size(); ++k)
    if (c.basis[chain[k - 1]].tgt != c.basis[chain[k]].src) throw ParseError(path, "inputs are not composable");
  return chain;
}

inline json inputs_json(const AInfCategory& c, const std::vector<int>& chain) {
  json in = json::array();
  for (std::size_t k = chain.size(); k-- > 0;) in.push_back(morphism_ref(c, chain[k]));
  return in;
}

inline std::size_t arity_of(const json& e, std::size_t given, const std::string& path) {
  if (e.contains("arity")) {
    long a = integer(e["arity"], path + ".arity");
    if (a != static_cast<long>(given)) throw ParseError(path, "arity does not match the number of inputs");
  }
  if (given == 0) throw ParseError(path, "an operation needs at least one input");
  return given;
}

inline void check_output(const AInfCategory& c, const std::vector<int>& chain, int out, const std::string& path) {
  if (c.basis[out].src != c.basis[chain.front()].src || c.basis[out].tgt != c.basis[chain.back()].tgt)
    throw ParseError(path, "output does not lie in hom(source of first input, target of last input)");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Categories

inline json to_json(const AInfCategory& c) {
  auto root = detail::skeleton_json(c);
  json mu = json::array();
  for (std::size_t d = 1; d < c.mu.size(); ++d)
    for (const auto& [chain, v] : c.mu[d])
      for (const auto& [o, x] : v)
        mu.push_back({{"arity", d},
                      {"inputs", detail::inputs_json(c, chain)},
                      {"output", detail::morphism_ref(c, o)},
                      {"coeff", to_string(x)}});
  root["mu"] = mu;
  return root;
}

inline AInfCategory category_from_json(const json& root) {
  if (root.is_object() && root.contains("variables"))
    throw ParseError("variables", "file describes a linear system, not a category");
  auto c = detail::read_skeleton(root);
  const auto& mu = detail::array(detail::field(root, "mu", "mu"), "mu");
  for (std::size_t i = 0; i < mu.size(); ++i) {
    std::string p = detail::at("mu", i);
    auto chain = detail::chain_of(c, detail::field(mu[i], "inputs", p), p + ".inputs");
    detail::arity_of(mu[i], chain.size(), p);
    int out = detail::morphism_of(c, detail::field(mu[i], "output", p), p + ".output");
    detail::check_output(c, chain, out, p);
    c.add_mu(chain, out, detail::rational(detail::field(mu[i], "coeff", p), p + ".coeff"));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Linear systems: entries carry a monomial of variable exponents.

inline json to_json(const NCLinearSystem& l) {
  auto root = detail::skeleton_json(l.gens);
  json vars = json::array();
  for (int i = 0; i < l.nvars(); ++i) vars.push_back({{"name", l.variables[i]}, {"degree", l.var_degrees[i]}});
  root["variables"] = vars;
  json mu = json::array();
  for (std::size_t d = 1; d < l.mu.size(); ++d)
    for (const auto& [chain, v] : l.mu[d])
      for (const auto& [key, x] : v)
        mu.push_back({{"arity", d},
                      {"inputs", detail::inputs_json(l.gens, chain)},
                      {"output", detail::morphism_ref(l.gens, key.first)},
                      {"monomial", key.second},
                      {"coeff", to_string(x)}});
  root["mu"] = mu;
  return root;
}

inline NCLinearSystem system_from_json(const json& root) {
  NCLinearSystem l;
  l.gens = detail::read_skeleton(root);
  const auto& vars = detail::array(detail::field(root, "variables", "variables"), "variables");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::string p = detail::at("variables", i);
    l.variables.push_back(detail::str(detail::field(vars[i], "name", p), p + ".name"));
    l.var_degrees.push_back(detail::integer(detail::field(vars[i], "degree", p), p + ".degree"));
  }
  const auto& mu = detail::array(detail::field(root, "mu", "mu"), "mu");
  for (std::size_t i = 0; i < mu.size(); ++i) {
    std::string p = detail::at("mu", i);
    auto chain = detail::chain_of(l.gens, detail::field(mu[i], "inputs", p), p + ".inputs");
    detail::arity_of(mu[i], chain.size(), p);
    int out = detail::morphism_of(l.gens, detail::field(mu[i], "output", p), p + ".output");
    detail::check_output(l.gens, chain, out, p);
    Mono m = l.zero();
    if (mu[i].contains("monomial")) {
      const auto& mj = detail::array(mu[i]["monomial"], p + ".monomial");
      if (mj.size() != m.size()) throw ParseError(p + ".monomial", "one exponent per variable expected");
      for (std::size_t k = 0; k < mj.size(); ++k) {
        long e = detail::integer(mj[k], detail::at(p + ".monomial", k));
        if (e < 0) throw ParseError(detail::at(p + ".monomial", k), "negative exponent");
        m[k] = static_cast<int>(e);
      }
    }
    l.add_mu(chain, out, m, detail::rational(detail::field(mu[i], "coeff", p), p + ".coeff"));
  }
  return l;
}

// ---------------------------------------------------------------------------
// Twisted complexes over a category

inline json to_json(const AInfCategory& c, const TwistedComplex& t) {
  json summands = json::array();
  for (const auto& s : t.summands) summands.push_back({{"object", c.objects[s.object]}, {"shift", s.shift}});
  json delta = json::array();
  for (const auto& e : t.delta)
    delta.push_back({{"from", e.from},
                     {"to", e.to},
                     {"morphism", detail::morphism_ref(c, e.morphism)},
                     {"coeff", to_string(e.coeff)}});
  return {{"name", t.name}, {"summands", summands}, {"delta", delta}};
}

inline TwistedComplex twisted_from_json(const AInfCategory& c, const json& j, const std::string& path) {
  TwistedComplex t;
  t.name = detail::str(detail::field(j, "name", path), path + ".name");
  const auto& sm = detail::array(detail::field(j, "summands", path), path + ".summands");
  for (std::size_t i = 0; i < sm.size(); ++i) {
    std::string p = detail::at(path + ".summands", i);
    int o = detail::object_of(c, detail::field(sm[i], "object", p), p + ".object");
    long shift = sm[i].contains("shift") ? detail::integer(sm[i]["shift"], p + ".shift") : 0;
    t.summands.push_back({o, shift});
  }
  if (j.contains("delta")) {
    const auto& dl = detail::array(j["delta"], path + ".delta");
    for (std::size_t i = 0; i < dl.size(); ++i) {
      std::string p = detail::at(path + ".delta", i);
      long from = detail::integer(detail::field(dl[i], "from", p), p + ".from");
      long to = detail::integer(detail::field(dl[i], "to", p), p + ".to");
      if (from < 0 || to <= from || to >= static_cast<long>(t.summands.size()))
        throw ParseError(p, "entries must satisfy 0 <= from < to < number of summands");
      int m = detail::morphism_of(c, detail::field(dl[i], "morphism", p), p + ".morphism");
      const auto& b = c.basis[m];
      if (b.src != t.summands[from].object || b.tgt != t.summands[to].object)
        throw ParseError(p, "morphism does not connect the summands");
      t.delta.push_back({static_cast<int>(from), static_cast<int>(to), m,
                         detail::rational(detail::field(dl[i], "coeff", p), p + ".coeff")});
    }
  }
  return t;
}

inline std::vector<TwistedComplex> twisted_from_root(const AInfCategory& c, const json& root) {
  std::vector<TwistedComplex> out;
  if (!root.contains("twisted")) return out;
  const auto& tw = detail::array(root["twisted"], "twisted");
  for (std::size_t i = 0; i < tw.size(); ++i) out.push_back(twisted_from_json(c, tw[i], detail::at("twisted", i)));
  return out;
}

// ---------------------------------------------------------------------------
// Bimodules: module elements are referenced as {"module": [[X0, X1], name]}.

inline json to_json(const Bimodule& q) {
  const auto& a = q.base;
  json basis = json::array();
  for (const auto& m : q.basis)
    basis.push_back({{"name", m.name},
                     {"source", a.objects[m.src]},
                     {"target", a.objects[m.tgt]},
                     {"degree", m.degree},
                     {"weight", m.weight}});
  auto mref = [&](int y) {
    const auto& m = q.basis[y];
    return json::array({json::array({a.objects[m.src], a.objects[m.tgt]}), m.name});
  };
  json mu = json::array();
  for (const auto& [key, v] : q.mu) {
    const auto& [r, chain] = key;
    std::size_t s = chain.size() - 1 - r;
    json in = json::array();
    for (std::size_t k = chain.size(); k-- > 0;)
      in.push_back(static_cast<int>(k) == r ? json{{"module", mref(chain[k])}} : detail::morphism_ref(a, chain[k]));
    for (const auto& [o, x] : v)
      mu.push_back({{"s", s}, {"r", r}, {"inputs", in}, {"output", mref(o)}, {"coeff", to_string(x)}});
  }
  return {{"basis", basis}, {"mu_s1r", mu}};
}

inline Bimodule bimodule_from_json(const AInfCategory& a, const json& j, const std::string& path) {
  Bimodule q(a);
  const auto& basis = detail::array(detail::field(j, "basis", path), path + ".basis");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::string p = detail::at(path + ".basis", i);
    int s = detail::object_of(a, detail::field(basis[i], "source", p), p + ".source");
    int t = detail::object_of(a, detail::field(basis[i], "target", p), p + ".target");
    long w = basis[i].contains("weight") ? detail::integer(basis[i]["weight"], p + ".weight") : 0;
    q.add_basis(detail::str(detail::field(basis[i], "name", p), p + ".name"), s, t,
                detail::integer(detail::field(basis[i], "degree", p), p + ".degree"), static_cast<int>(w));
  }
  auto module_of = [&](const json& r, const std::string& p) {
    if (!r.is_array() || r.size() != 2 || !r[0].is_array() || r[0].size() != 2)
      throw ParseError(p, "expected [[source, target], name]");
    int s = detail::object_of(a, r[0][0], p), t = detail::object_of(a, r[0][1], p);
    std::string name = detail::str(r[1], p);
    for (int y : q.space(s, t))
      if (q.basis[y].name == name) return y;
    throw ParseError(p, "no module element '" + name + "'");
  };
  const auto& mu = detail::array(detail::field(j, "mu_s1r", path), path + ".mu_s1r");
  for (std::size_t i = 0; i < mu.size(); ++i) {
    std::string p = detail::at(path + ".mu_s1r", i);
    const auto& in = detail::array(detail::field(mu[i], "inputs", p), p + ".inputs");
    std::vector<int> chain;
    int r = -1;
    for (std::size_t k = in.size(); k-- > 0;) {
      std::string pk = detail::at(p + ".inputs", k);
      if (in[k].is_object()) {
        if (r >= 0) throw ParseError(pk, "more than one module input");
        r = static_cast<int>(chain.size());
        chain.push_back(module_of(detail::field(in[k], "module", pk), pk + ".module"));
      } else {
        chain.push_back(detail::morphism_of(a, in[k], pk));
      }
    }
    if (r < 0) throw ParseError(p, "no module input");
    long rs = detail::integer(detail::field(mu[i], "r", p), p + ".r");
    long ss = detail::integer(detail::field(mu[i], "s", p), p + ".s");
    if (rs != r || ss != static_cast<long>(chain.size()) - 1 - r) throw ParseError(p, "(s, r) does not match inputs");
    int out = module_of(detail::field(mu[i], "output", p), p + ".output");
    q.add_mu(r, chain, out, detail::rational(detail::field(mu[i], "coeff", p), p + ".coeff"));
  }
  return q;
}

// ---------------------------------------------------------------------------
// Transfer data: {"subspace": [{"name", "vector"}], "homotopy": [{"input", "output"}]}

inline json to_json(const TransferDatum& t) {
  const auto& b = t.ambient;
  json sub = json::array();
  for (std::size_t i = 0; i < t.sub.size(); ++i)
    sub.push_back({{"name", t.names[i]}, {"vector", detail::vec_json(b, t.sub[i])}});
  json h = json::array();
  for (std::size_t i = 0; i < t.h.size(); ++i)
    if (!t.h[i].empty())
      h.push_back({{"input", detail::morphism_ref(b, static_cast<int>(i))}, {"output", detail::vec_json(b, t.h[i])}});
  return {{"subspace", sub}, {"homotopy", h}};
}

inline TransferDatum datum_from_json(const AInfCategory& b, const json& j) {
  TransferDatum t;
  t.ambient = b;
  t.h.assign(b.basis.size(), Vec{});
  const auto& sub = detail::array(detail::field(j, "subspace", "datum"), "subspace");
  for (std::size_t i = 0; i < sub.size(); ++i) {
    std::string p = detail::at("subspace", i);
    t.names.push_back(detail::str(detail::field(sub[i], "name", p), p + ".name"));
    t.sub.push_back(detail::vec_of(b, detail::field(sub[i], "vector", p), p + ".vector"));
  }
  if (j.contains("homotopy")) {
    const auto& h = detail::array(j["homotopy"], "homotopy");
    for (std::size_t i = 0; i < h.size(); ++i) {
      std::string p = detail::at("homotopy", i);
      int id = detail::morphism_of(b, detail::field(h[i], "input", p), p + ".input");
      t.h[id] = detail::vec_of(b, detail::field(h[i], "output", p), p + ".output");
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Files

/// Parse JSON text; syntax errors are reported with line and column.
inline json parse(const std::string& text, const std::string& source = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col), "invalid JSON");
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace ncp::io
