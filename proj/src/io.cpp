#include "hpseudo/io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <set>
#include <sstream>

namespace hpseudo {

namespace {

// ---------------------------------------------------------------- reading helpers

std::string at_key(const std::string& at, const std::string& key) { return at.empty() ? key : at + "." + key; }
std::string at_index(const std::string& at, std::size_t i) { return at + "[" + std::to_string(i) + "]"; }

const Json& req(const Json& j, const std::string& key, const std::string& at) {
  if (!j.is_object()) throw DocumentError(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw DocumentError(at_key(at, key), "missing field");
  return *it;
}

const Json* opt(const Json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string as_string(const Json& j, const std::string& at) {
  if (!j.is_string()) throw DocumentError(at, "expected a string");
  return j.get<std::string>();
}

long long as_int(const Json& j, const std::string& at) {
  if (!j.is_number_integer()) throw DocumentError(at, "expected an integer");
  return j.get<long long>();
}

const Json& as_array(const Json& j, const std::string& at) {
  if (!j.is_array()) throw DocumentError(at, "expected an array");
  return j;
}

const Json& as_object(const Json& j, const std::string& at) {
  if (!j.is_object()) throw DocumentError(at, "expected an object");
  return j;
}

Q as_q(const Json& j, const std::string& at) {
  std::string s;
  if (j.is_number_integer())
    s = std::to_string(j.get<long long>());
  else
    s = as_string(j, at);
  Q q;
  try {
    q = parse_q(s);
  } catch (const std::exception& e) {
    throw DocumentError(at, "not an exact rational: '" + s + "'");
  }
  if (format_q(q) != s) throw DocumentError(at, "rational '" + s + "' is not in lowest terms (write '" + format_q(q) + "')");
  return q;
}

// Runs f, converting library exceptions into located document errors.
template <class F>
auto located(const std::string& at, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DocumentError&) {
    throw;
  } catch (const std::exception& e) {
    throw DocumentError(at, e.what());
  }
}

// ---------------------------------------------------------------- groups, algebras, monomials

Json group_to_json(const FiniteGroup& g) { return Json{{"names", g.names}, {"table", g.table}}; }

FiniteGroup group_from_json(const Json& j, const std::string& at) {
  FiniteGroup g;
  const Json& names = as_array(req(j, "names", at), at_key(at, "names"));
  for (std::size_t i = 0; i < names.size(); ++i) g.names.push_back(as_string(names[i], at_index(at_key(at, "names"), i)));
  const int n = g.size();
  if (n == 0) throw DocumentError(at_key(at, "names"), "empty group");
  if (std::set<std::string>(g.names.begin(), g.names.end()).size() != g.names.size())
    throw DocumentError(at_key(at, "names"), "duplicate element name");
  const std::string tat = at_key(at, "table");
  const Json& table = as_array(req(j, "table", at), tat);
  if (static_cast<int>(table.size()) != n) throw DocumentError(tat, "table must have one row per element");
  for (std::size_t a = 0; a < table.size(); ++a) {
    const Json& row = as_array(table[a], at_index(tat, a));
    if (static_cast<int>(row.size()) != n) throw DocumentError(at_index(tat, a), "row has wrong length");
    std::vector<int> r;
    for (std::size_t b = 0; b < row.size(); ++b) {
      long long v = as_int(row[b], at_index(at_index(tat, a), b));
      if (v < 0 || v >= n) throw DocumentError(at_index(at_index(tat, a), b), "element index out of range");
      r.push_back(static_cast<int>(v));
    }
    g.table.push_back(std::move(r));
  }
  g.identity = -1;
  for (int e = 0; e < n && g.identity < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = g.table[e][a] == a && g.table[a][e] == a;
    if (ok) g.identity = e;
  }
  if (g.identity < 0) throw DocumentError(tat, "no identity element");
  g.inverse.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.table[a][b] == g.identity) g.inverse[a] = b;
  for (int a = 0; a < n; ++a)
    if (g.inverse[a] < 0) throw DocumentError(tat, "element '" + g.names[a] + "' has no inverse");
  located(tat, [&] { g.validate(); });
  return g;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (auto& r : m) {
    Json row = Json::array();
    for (auto& q : r) row.push_back(format_q(q));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& at) {
  Matrix m;
  as_array(j, at);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& row = as_array(j[i], at_index(at, i));
    std::vector<Q> r;
    for (std::size_t k = 0; k < row.size(); ++k) r.push_back(as_q(row[k], at_index(at_index(at, i), k)));
    m.push_back(std::move(r));
  }
  return m;
}

Json matrices_to_json(const std::vector<Matrix>& ms) {
  Json a = Json::array();
  for (auto& m : ms) a.push_back(matrix_to_json(m));
  return a;
}

std::vector<Matrix> matrices_from_json(const Json& j, const std::string& at) {
  std::vector<Matrix> ms;
  as_array(j, at);
  for (std::size_t i = 0; i < j.size(); ++i) ms.push_back(matrix_from_json(j[i], at_index(at, i)));
  return ms;
}

const char* hopf_kind_name(HopfAlgebra::Kind k) {
  switch (k) {
    case HopfAlgebra::Kind::polynomial: return "polynomial";
    case HopfAlgebra::Kind::group: return "group";
    case HopfAlgebra::Kind::smash: return "smash";
  }
  return "?";
}

Json hopf_to_json(const HopfAlgebra& h) {
  Json j{{"kind", hopf_kind_name(h.kind())}};
  switch (h.kind()) {
    case HopfAlgebra::Kind::polynomial: j["variables"] = h.variables(); break;
    case HopfAlgebra::Kind::group: j["group"] = group_to_json(h.group()); break;
    case HopfAlgebra::Kind::smash:
      j["base"] = hopf_to_json(*h.base());
      j["gamma"] = group_to_json(h.gamma());
      if (h.base()->kind() == HopfAlgebra::Kind::polynomial)
        j["action"] = matrices_to_json(h.gamma_poly_action());
      else
        j["group_action"] = h.gamma_group_action();
      break;
  }
  return j;
}

AlgPtr hopf_from_json(const Json& j, const std::string& at) {
  const std::string kind = as_string(req(j, "kind", at), at_key(at, "kind"));
  if (kind == "polynomial") {
    std::vector<std::string> vars;
    const Json& v = as_array(req(j, "variables", at), at_key(at, "variables"));
    for (std::size_t i = 0; i < v.size(); ++i) vars.push_back(as_string(v[i], at_index(at_key(at, "variables"), i)));
    if (static_cast<int>(vars.size()) > kMaxVars)
      throw DocumentError(at_key(at, "variables"), fmt::format("at most {} variables are supported", kMaxVars));
    return located(at, [&] { return HopfAlgebra::polynomial(vars); });
  }
  if (kind == "group") {
    FiniteGroup g = group_from_json(req(j, "group", at), at_key(at, "group"));
    return located(at, [&] { return HopfAlgebra::group_algebra(g); });
  }
  if (kind == "smash") {
    AlgPtr base = hopf_from_json(req(j, "base", at), at_key(at, "base"));
    FiniteGroup gamma = group_from_json(req(j, "gamma", at), at_key(at, "gamma"));
    if (base->kind() == HopfAlgebra::Kind::polynomial) {
      auto act = matrices_from_json(req(j, "action", at), at_key(at, "action"));
      return located(at_key(at, "action"), [&] { return HopfAlgebra::smash(base, gamma, act); });
    }
    if (base->kind() == HopfAlgebra::Kind::group) {
      const std::string gat = at_key(at, "group_action");
      const Json& ga = as_array(req(j, "group_action", at), gat);
      std::vector<std::vector<int>> act;
      for (std::size_t g = 0; g < ga.size(); ++g) {
        std::vector<int> row;
        for (std::size_t b = 0; b < as_array(ga[g], at_index(gat, g)).size(); ++b)
          row.push_back(static_cast<int>(as_int(ga[g][b], at_index(at_index(gat, g), b))));
        act.push_back(std::move(row));
      }
      return located(gat, [&] { return HopfAlgebra::smash_group(base, gamma, act); });
    }
    throw DocumentError(at_key(at, "base"), "smash base must be polynomial or a group algebra");
  }
  throw DocumentError(at_key(at, "kind"), "unknown Hopf algebra kind '" + kind + "'");
}

Json mono_to_json(const HopfAlgebra& h, const Monomial& m) {
  Json a = Json::array();
  for (int i = 0; i < h.nvars(); ++i) a.push_back(m.exps[i]);
  if (m.group != h.group().identity) a.push_back(h.group().names[m.group]);
  return a;
}

Monomial mono_from_json(const HopfAlgebra& h, const Json& j, const std::string& at) {
  as_array(j, at);
  const std::size_t n = static_cast<std::size_t>(h.nvars());
  if (j.size() != n && j.size() != n + 1)
    throw DocumentError(at, fmt::format("monomial needs {} exponents and an optional group element", n));
  Monomial m = h.one();
  for (std::size_t i = 0; i < n; ++i) {
    long long e = as_int(j[i], at_index(at, i));
    if (e < 0 || e > 60) throw DocumentError(at_index(at, i), "exponent out of range");
    m.exps[i] = static_cast<std::uint16_t>(e);
  }
  if (j.size() == n + 1) {
    const std::string g = as_string(j[n], at_index(at, n));
    m.group = static_cast<std::uint16_t>(located(at_index(at, n), [&] { return h.group().index_of(g); }));
  }
  return m;
}

// ---------------------------------------------------------------- modules

const char* module_kind_name(GradedHModule::Kind k) {
  switch (k) {
    case GradedHModule::Kind::free: return "free";
    case GradedHModule::Kind::findim: return "findim";
    case GradedHModule::Kind::equivariant: return "equivariant";
  }
  return "?";
}

Json module_to_json(const GradedHModule& m) {
  Json gens = Json::array();
  for (auto& g : m.generators()) gens.push_back(Json{{"name", g.name}, {"degree", g.degree}});
  Json j{{"kind", module_kind_name(m.kind())}, {"generators", std::move(gens)}};
  if (m.kind() == GradedHModule::Kind::findim) j["var_action"] = matrices_to_json(m.var_action());
  if (m.kind() != GradedHModule::Kind::free) j["group_action"] = matrices_to_json(m.group_action());
  return j;
}

ModulePtr module_from_json(const std::string& name, const AlgPtr& alg, const Json& j, const std::string& at) {
  as_object(j, at);
  const std::string kind = as_string(req(j, "kind", at), at_key(at, "kind"));
  std::vector<Generator> gens;
  const std::string gat = at_key(at, "generators");
  const Json& ga = as_array(req(j, "generators", at), gat);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < ga.size(); ++i) {
    const std::string gi = at_index(gat, i);
    Generator g{as_string(req(ga[i], "name", gi), at_key(gi, "name")),
                static_cast<int>(as_int(req(ga[i], "degree", gi), at_key(gi, "degree")))};
    if (!seen.insert(g.name).second) throw DocumentError(at_key(gi, "name"), "duplicate generator '" + g.name + "'");
    gens.push_back(std::move(g));
  }
  auto mats = [&](const char* key) {
    const Json* p = opt(j, key);
    return p ? matrices_from_json(*p, at_key(at, key)) : std::vector<Matrix>{};
  };
  if (kind == "free") return located(at, [&] { return GradedHModule::free_module(name, alg, gens); });
  if (kind == "findim") {
    auto va = mats("var_action");
    auto ga2 = mats("group_action");
    return located(at, [&] { return GradedHModule::findim(name, alg, gens, va, ga2); });
  }
  if (kind == "equivariant") {
    auto ga2 = mats("group_action");
    return located(at, [&] { return GradedHModule::equivariant(name, alg, gens, ga2); });
  }
  throw DocumentError(at_key(at, "kind"), "unknown module kind '" + kind + "'");
}

// ---------------------------------------------------------------- values and maps

Json qterms_to_json(const QuotientTensor& q) {
  const HopfAlgebra& h = *q.module->algebra();
  Json terms = Json::array();
  for (auto& [k, c] : q.terms) {
    Json slots = Json::array();
    for (auto& m : k.slots) slots.push_back(mono_to_json(h, m));
    Json t{{"slots", std::move(slots)}};
    if (k.m.h != h.one()) t["h"] = mono_to_json(h, k.m.h);
    t["gen"] = q.module->generators()[k.m.gen].name;
    t["c"] = format_q(c);
    terms.push_back(std::move(t));
  }
  return terms;
}

QuotientTensor qterms_from_json(const ModulePtr& target, int arity, const Json& j, const std::string& at) {
  const HopfAlgebra& h = *target->algebra();
  QuotientTensor q = QuotientTensor::zero(target, arity);
  as_array(j, at);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string ti = at_index(at, i);
    const Json& sl = as_array(req(j[i], "slots", ti), at_key(ti, "slots"));
    if (static_cast<int>(sl.size()) != arity - 1)
      throw DocumentError(at_key(ti, "slots"), fmt::format("arity {} values carry {} explicit slots", arity, arity - 1));
    QKey k;
    for (std::size_t s = 0; s < sl.size(); ++s) k.slots.push_back(mono_from_json(h, sl[s], at_index(at_key(ti, "slots"), s)));
    k.m.h = h.one();
    if (const Json* hh = opt(j[i], "h")) k.m.h = mono_from_json(h, *hh, at_key(ti, "h"));
    const std::string g = as_string(req(j[i], "gen", ti), at_key(ti, "gen"));
    k.m.gen = located(at_key(ti, "gen"), [&] { return target->index_of(g); });
    if (!target->valid(k.m)) throw DocumentError(ti, "module key is not a basis element");
    Q c = as_q(req(j[i], "c", ti), at_key(ti, "c"));
    if (c == 0) throw DocumentError(at_key(ti, "c"), "zero coefficient");
    if (q.terms.count(k)) throw DocumentError(ti, "duplicate term");
    q.terms.emplace(std::move(k), std::move(c));
  }
  QuotientTensor canon = normalize(embed(q), target, arity);
  if (!(canon == q)) throw DocumentError(at, "value is not in canonical form; canonical form is " + canon.format());
  return q;
}

int arity_from_key(const std::string& key, const std::string& at) {
  try {
    std::size_t pos = 0;
    int k = std::stoi(key, &pos);
    if (pos != key.size() || k < 1) throw std::invalid_argument(key);
    return k;
  } catch (const std::exception&) {
    throw DocumentError(at_key(at, key), "arity keys must be positive integers");
  }
}

using ModuleTable = std::map<std::string, ModulePtr>;

ModulePtr module_ref(const ModuleTable& mods, const Json& j, const std::string& at) {
  const std::string name = as_string(j, at);
  auto it = mods.find(name);
  if (it == mods.end()) throw DocumentError(at, "unknown module '" + name + "'");
  return it->second;
}

PseudoMap map_from_json(const ModuleTable& mods, const Json& j, const std::string& at) {
  as_object(j, at);
  const long long arity = as_int(req(j, "arity", at), at_key(at, "arity"));
  if (arity < 1 || arity > 8) throw DocumentError(at_key(at, "arity"), "arity out of range");
  const int degree = static_cast<int>(as_int(req(j, "degree", at), at_key(at, "degree")));
  const std::string sat = at_key(at, "sources");
  const Json& sa = as_array(req(j, "sources", at), sat);
  if (static_cast<long long>(sa.size()) != arity) throw DocumentError(sat, "one source per argument required");
  std::vector<ModulePtr> sources;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    sources.push_back(module_ref(mods, sa[i], at_index(sat, i)));
    if (sources.back()->kind() == GradedHModule::Kind::findim)
      throw DocumentError(at_index(sat, i), "sources must be free or equivariant modules");
  }
  ModulePtr target = module_ref(mods, req(j, "target", at), at_key(at, "target"));
  Symmetry sym = Symmetry::none;
  if (const Json* s = opt(j, "symmetry")) {
    const std::string name = as_string(*s, at_key(at, "symmetry"));
    sym = located(at_key(at, "symmetry"), [&] { return symmetry_from_string(name); });
    if (sym != Symmetry::none)
      for (auto& m : sources)
        if (m != sources.front()) throw DocumentError(at_key(at, "symmetry"), "flagged maps need equal sources");
  }
  PseudoMap f = PseudoMap::zero(static_cast<int>(arity), degree, sources, target, sym);
  const std::string eat = at_key(at, "entries");
  const Json& ea = as_array(req(j, "entries", at), eat);
  for (std::size_t e = 0; e < ea.size(); ++e) {
    const std::string ei = at_index(eat, e);
    const Json& args = as_array(req(ea[e], "args", ei), at_key(ei, "args"));
    if (static_cast<long long>(args.size()) != arity) throw DocumentError(at_key(ei, "args"), "wrong number of arguments");
    GenTuple t;
    for (std::size_t i = 0; i < args.size(); ++i) {
      const std::string g = as_string(args[i], at_index(at_key(ei, "args"), i));
      t.push_back(located(at_index(at_key(ei, "args"), i), [&] { return sources[i]->index_of(g); }));
    }
    if (f.table.count(t)) throw DocumentError(ei, "duplicate entry");
    QuotientTensor v = qterms_from_json(target, static_cast<int>(arity), req(ea[e], "value", ei), at_key(ei, "value"));
    located(ei, [&] { f.set(t, std::move(v)); });
  }
  return f;
}

// ---------------------------------------------------------------- structure parsing

struct Loader {
  AlgPtr alg;
  ModuleTable modules;
  std::map<std::string, PseudoMap> maps;
  const Json* structures_json = nullptr;
  std::map<std::string, Structure> structures;
  std::set<std::string> in_progress;
  std::set<std::string> used_maps;

  const PseudoMap& map(const Json& j, const std::string& at) {
    const std::string name = as_string(j, at);
    auto it = maps.find(name);
    if (it == maps.end()) throw DocumentError(at, "unknown map '" + name + "'");
    used_maps.insert(name);
    return it->second;
  }

  ModulePtr module(const Json& j, const std::string& at) { return module_ref(modules, j, at); }

  void require_on(const PseudoMap& f, const std::vector<ModulePtr>& sources, const ModulePtr& target,
                  const std::string& at) {
    if (f.sources != sources) throw DocumentError(at, "map sources do not match the structure");
    if (f.target != target) throw DocumentError(at, "map target does not match the structure");
  }

  std::map<int, PseudoMap> ops(const Json& j, const std::string& at, const ModulePtr& m, bool last_is_module = false,
                               const ModulePtr& mod = nullptr) {
    std::map<int, PseudoMap> out;
    for (auto& [key, ref] : as_object(j, at).items()) {
      const int k = arity_from_key(key, at);
      const PseudoMap& f = map(ref, at_key(at, key));
      if (f.arity != k) throw DocumentError(at_key(at, key), "map arity does not match its key");
      std::vector<ModulePtr> src(k, m);
      if (last_is_module) src.back() = mod;
      require_on(f, src, last_is_module ? mod : m, at_key(at, key));
      out.emplace(k, f);
    }
    return out;
  }

  const LInftyStructure& lie_ref(const Json& j, const std::string& at) {
    const std::string name = as_string(j, at);
    const Structure& s = get(name, at);
    if (s.kind != "lie" && s.kind != "linfty") throw DocumentError(at, "'" + name + "' is not a lie or linfty structure");
    return std::get<LInftyStructure>(s.data);
  }

  const Structure& get(const std::string& name, const std::string& at) {
    if (auto it = structures.find(name); it != structures.end()) return it->second;
    if (!structures_json || !structures_json->contains(name)) throw DocumentError(at, "unknown structure '" + name + "'");
    if (!in_progress.insert(name).second) throw DocumentError(at, "cyclic structure reference '" + name + "'");
    Structure s = parse((*structures_json)[name], at_key("structures", name));
    in_progress.erase(name);
    return structures.emplace(name, std::move(s)).first->second;
  }

  Structure parse(const Json& j, const std::string& at) {
    as_object(j, at);
    const std::string kind = as_string(req(j, "kind", at), at_key(at, "kind"));
    auto field = [&](const char* key) -> const Json& { return req(j, key, at); };
    auto fat = [&](const char* key) { return at_key(at, key); };

    if (kind == "lie" || kind == "linfty") {
      ModulePtr m = module(field("module"), fat("module"));
      LInftyStructure s{m, ops(field("ops"), fat("ops"), m)};
      if (kind == "lie")
        for (auto& [k, f] : s.ops)
          if (k != 2 || f.degree != 0) throw DocumentError(fat("ops"), "a lie structure has only a degree-0 bracket");
      return {kind, s};
    }
    if (kind == "representation") {
      const std::string of = as_string(field("of"), fat("of"));
      const LInftyStructure& l = lie_ref(field("of"), fat("of"));
      ModulePtr m = module(field("module"), fat("module"));
      Representation r{m, ops(field("actions"), fat("actions"), l.module, true, m)};
      return {kind, RepresentationOf{of, r}};
    }
    if (kind == "ainfty") {
      ModulePtr m = module(field("module"), fat("module"));
      return {kind, AInftyStructure{m, ops(field("ops"), fat("ops"), m)}};
    }
    if (kind == "two-term") {
      TwoTermLInfty t;
      t.l0 = module(field("l0"), fat("l0"));
      t.l1 = module(field("l1"), fat("l1"));
      t.module = module(field("module"), fat("module"));
      const auto& g0 = t.l0->generators();
      const auto& g1 = t.l1->generators();
      const auto& ge = t.module->generators();
      bool ok = ge.size() == g0.size() + g1.size() && t.module->kind() == t.l0->kind();
      for (std::size_t i = 0; ok && i < ge.size(); ++i) {
        const Generator& g = i < g0.size() ? g0[i] : g1[i - g0.size()];
        ok = ge[i].degree == g.degree && ge[i].degree == (i < g0.size() ? 0 : 1);
      }
      if (!ok)
        throw DocumentError(fat("module"), "module must be l0 (degree 0) followed by l1 (degree 1)");
      const ModulePtr& e = t.module;
      t.beta1 = map(field("beta1"), fat("beta1"));
      require_on(t.beta1, {e}, e, fat("beta1"));
      t.beta2 = map(field("beta2"), fat("beta2"));
      require_on(t.beta2, {e, e}, e, fat("beta2"));
      t.beta3 = map(field("beta3"), fat("beta3"));
      require_on(t.beta3, {e, e, e}, e, fat("beta3"));
      return {kind, t};
    }
    if (kind == "crossed-module") {
      CrossedModule x;
      x.l = lie_ref(field("l"), fat("l"));
      x.lp = lie_ref(field("lp"), fat("lp"));
      x.phi = map(field("phi"), fat("phi"));
      require_on(x.phi, {x.lp.module}, x.l.module, fat("phi"));
      x.gamma = map(field("gamma"), fat("gamma"));
      require_on(x.gamma, {x.l.module, x.lp.module}, x.lp.module, fat("gamma"));
      return {kind, x};
    }
    if (kind == "lie2") {
      Lie2Algebra c;
      c.c0 = module(field("c0"), fat("c0"));
      c.k = module(field("k"), fat("k"));
      c.c1 = module(field("c1"), fat("c1"));
      if (c.c1->rank() != c.c0->rank() + c.k->rank()) throw DocumentError(fat("c1"), "c1 must be c0 followed by k");
      auto bind = [&](PseudoMap& f, const char* key, std::vector<ModulePtr> src, const ModulePtr& tgt) {
        f = map(field(key), fat(key));
        require_on(f, src, tgt, fat(key));
      };
      bind(c.s, "s", {c.c1}, c.c0);
      bind(c.t, "t", {c.c1}, c.c0);
      bind(c.i, "i", {c.c0}, c.c1);
      bind(c.bracket0, "bracket0", {c.c0, c.c0}, c.c0);
      bind(c.bracket1, "bracket1", {c.c1, c.c1}, c.c1);
      bind(c.jacobiator, "jacobiator", {c.c0, c.c0, c.c0}, c.c1);
      return {kind, c};
    }
    if (kind == "lambda-table") return {kind, lambda_from_json(j, at)};
    if (kind == "rank-one") return {kind, rank_one_from_json(j, at)};
    throw DocumentError(fat("kind"), "unknown structure kind '" + kind + "'");
  }

  LambdaTable lambda_from_json(const Json& j, const std::string& at) {
    LambdaTable t;
    t.module = module(req(j, "module", at), at_key(at, "module"));
    if (alg->kind() != HopfAlgebra::Kind::polynomial || alg->nvars() != 1)
      throw DocumentError(at, "lambda tables need a polynomial algebra in one variable");
    if (const Json* s = opt(j, "symmetry"))
      for (auto& [key, v] : as_object(*s, at_key(at, "symmetry")).items()) {
        const std::string name = as_string(v, at_key(at_key(at, "symmetry"), key));
        t.symmetry[arity_from_key(key, at_key(at, "symmetry"))] =
            located(at_key(at_key(at, "symmetry"), key), [&] { return symmetry_from_string(name); });
      }
    const std::string oat = at_key(at, "ops");
    for (auto& [key, entries] : as_object(req(j, "ops", at), oat).items()) {
      const int k = arity_from_key(key, oat);
      const std::string kat = at_key(oat, key);
      auto& table = t.ops[k];
      for (std::size_t e = 0; e < as_array(entries, kat).size(); ++e) {
        const std::string ei = at_index(kat, e);
        const Json& args = as_array(req(entries[e], "args", ei), at_key(ei, "args"));
        if (static_cast<int>(args.size()) != k) throw DocumentError(at_key(ei, "args"), "wrong number of arguments");
        GenTuple tup;
        for (std::size_t i = 0; i < args.size(); ++i) {
          const std::string g = as_string(args[i], at_index(at_key(ei, "args"), i));
          tup.push_back(located(at_index(at_key(ei, "args"), i), [&] { return t.module->index_of(g); }));
        }
        if (table.count(tup)) throw DocumentError(ei, "duplicate entry");
        std::vector<LambdaTerm> terms;
        const std::string tat = at_key(ei, "terms");
        const Json& ta = as_array(req(entries[e], "terms", ei), tat);
        for (std::size_t i = 0; i < ta.size(); ++i) {
          const std::string ti = at_index(tat, i);
          LambdaTerm lt;
          const Json& lam = as_array(req(ta[i], "lambda", ti), at_key(ti, "lambda"));
          if (static_cast<int>(lam.size()) != k - 1)
            throw DocumentError(at_key(ti, "lambda"), "one lambda exponent per variable required");
          for (std::size_t a = 0; a < lam.size(); ++a) {
            long long v = as_int(lam[a], at_index(at_key(ti, "lambda"), a));
            if (v < 0) throw DocumentError(at_index(at_key(ti, "lambda"), a), "negative exponent");
            lt.lambda.push_back(static_cast<int>(v));
          }
          lt.d = static_cast<int>(as_int(req(ta[i], "d", ti), at_key(ti, "d")));
          if (lt.d < 0) throw DocumentError(at_key(ti, "d"), "negative exponent");
          const std::string g = as_string(req(ta[i], "gen", ti), at_key(ti, "gen"));
          lt.gen = located(at_key(ti, "gen"), [&] { return t.module->index_of(g); });
          lt.c = as_q(req(ta[i], "c", ti), at_key(ti, "c"));
          terms.push_back(std::move(lt));
        }
        table.emplace(std::move(tup), std::move(terms));
      }
    }
    return t;
  }

  RankOne rank_one_from_json(const Json& j, const std::string& at) {
    RankOne r;
    r.alg = alg;
    r.lo = static_cast<int>(as_int(req(j, "lo", at), at_key(at, "lo")));
    r.hi = static_cast<int>(as_int(req(j, "hi", at), at_key(at, "hi")));
    if (r.lo > r.hi) throw DocumentError(at, "empty index window");
    const std::string aat = at_key(at, "alpha");
    const Json& a = as_array(req(j, "alpha", at), aat);
    for (std::size_t e = 0; e < a.size(); ++e) {
      const std::string ei = at_index(aat, e);
      std::vector<int> idx;
      const Json& ia = as_array(req(a[e], "indices", ei), at_key(ei, "indices"));
      for (std::size_t i = 0; i < ia.size(); ++i) {
        long long v = as_int(ia[i], at_index(at_key(ei, "indices"), i));
        if (v < r.lo || v > r.hi) throw DocumentError(at_index(at_key(ei, "indices"), i), "index outside the window");
        idx.push_back(static_cast<int>(v));
      }
      if (idx.empty()) throw DocumentError(at_key(ei, "indices"), "empty index tuple");
      if (r.alpha.count(idx)) throw DocumentError(ei, "duplicate entry");
      TensorElement t{alg, static_cast<int>(idx.size()), {}};
      const std::string tat = at_key(ei, "terms");
      const Json& ta = as_array(req(a[e], "terms", ei), tat);
      for (std::size_t i = 0; i < ta.size(); ++i) {
        const std::string ti = at_index(tat, i);
        const Json& sl = as_array(req(ta[i], "slots", ti), at_key(ti, "slots"));
        if (sl.size() != idx.size()) throw DocumentError(at_key(ti, "slots"), "one monomial per index required");
        Tuple tup;
        for (std::size_t s = 0; s < sl.size(); ++s) tup.push_back(mono_from_json(*alg, sl[s], at_index(at_key(ti, "slots"), s)));
        add_term(t.terms, tup, as_q(req(ta[i], "c", ti), at_key(ti, "c")));
      }
      r.alpha.emplace(std::move(idx), std::move(t));
    }
    return r;
  }
};

GammaAction action_from_json(const AlgPtr& alg, const ModulePtr& m, const Json& j, const std::string& at) {
  GammaAction a;
  a.group = group_from_json(req(j, "group", at), at_key(at, "group"));
  a.variable_action = matrices_from_json(req(j, "variable_action", at), at_key(at, "variable_action"));
  a.module_action = matrices_from_json(req(j, "module_action", at), at_key(at, "module_action"));
  const std::size_t n = a.group.names.size();
  if (a.variable_action.size() != n) throw DocumentError(at_key(at, "variable_action"), "one matrix per element required");
  if (a.module_action.size() != n) throw DocumentError(at_key(at, "module_action"), "one matrix per element required");
  auto square = [](const Matrix& x, int d) {
    if (static_cast<int>(x.size()) != d) return false;
    for (auto& r : x)
      if (static_cast<int>(r.size()) != d) return false;
    return true;
  };
  for (std::size_t g = 0; g < n; ++g) {
    if (!square(a.variable_action[g], alg->nvars()))
      throw DocumentError(at_index(at_key(at, "variable_action"), g), "matrix has wrong shape");
    if (!square(a.module_action[g], m->rank()))
      throw DocumentError(at_index(at_key(at, "module_action"), g), "matrix has wrong shape");
  }
  return a;
}

// ---------------------------------------------------------------- writing

struct Writer {
  AlgPtr alg;
  Json modules = Json::object();
  Json maps = Json::object();
  Json structures = Json::object();
  std::map<const GradedHModule*, std::string> module_names;

  std::string module(const ModulePtr& m) {
    if (auto it = module_names.find(m.get()); it != module_names.end()) return it->second;
    if (!m->algebra()->same_as(*alg))
      throw std::invalid_argument("module '" + m->name() + "' is over a different Hopf algebra");
    Json j = module_to_json(*m);
    std::string name = m->name();
    for (int n = 2; modules.contains(name); ++n) {
      if (modules[name] == j) break;
      name = m->name() + "~" + std::to_string(n);
    }
    modules[name] = std::move(j);
    module_names[m.get()] = name;
    return name;
  }

  std::string map(const std::string& name, const PseudoMap& f) {
    Json src = Json::array();
    for (auto& s : f.sources) src.push_back(module(s));
    Json entries = Json::array();
    for (auto& [t, v] : f.table) {
      if (v.is_zero()) continue;
      Json args = Json::array();
      for (std::size_t i = 0; i < t.size(); ++i) args.push_back(f.sources[i]->generators()[t[i]].name);
      entries.push_back(Json{{"args", std::move(args)}, {"value", qterms_to_json(v)}});
    }
    Json j{{"arity", f.arity},
                      {"degree", f.degree},
                      {"sources", std::move(src)},
                      {"target", module(f.target)},
                      {"symmetry", to_string(f.symmetry)},
                      {"entries", std::move(entries)}};
    claim(maps, name, std::move(j), "map");
    return name;
  }

  Json ops(const std::string& prefix, const std::map<int, PseudoMap>& ops) {
    Json o = Json::object();
    for (auto& [k, f] : ops) o[std::to_string(k)] = map(prefix + std::to_string(k), f);
    return o;
  }

  // Re-emitting identical content under a name is allowed (crossed modules share their lie parts).
  static void claim(Json& section, const std::string& name, Json j, const char* what) {
    if (section.contains(name) && section[name] != j)
      throw std::invalid_argument(std::string("conflicting ") + what + " name '" + name + "'");
    section[name] = std::move(j);
  }

  void put(const std::string& name, Json j) { claim(structures, name, std::move(j), "structure"); }

  std::string lie(const std::string& name, const LInftyStructure& s, const std::string& kind = "lie") {
    put(name, Json{{"kind", kind}, {"module", module(s.module)}, {"ops", ops(name + ".beta", s.ops)}});
    return name;
  }

  void structure(const std::string& name, const Structure& s) {
    const std::string& kind = s.kind;
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, LInftyStructure>) {
            lie(name, d, kind);
          } else if constexpr (std::is_same_v<T, RepresentationOf>) {
            put(name, Json{{"kind", kind},
                           {"of", d.of},
                           {"module", module(d.rep.module)},
                           {"actions", ops(name + ".gamma", d.rep.actions)}});
          } else if constexpr (std::is_same_v<T, AInftyStructure>) {
            put(name, Json{{"kind", kind}, {"module", module(d.module)}, {"ops", ops(name + ".mu", d.ops)}});
          } else if constexpr (std::is_same_v<T, TwoTermLInfty>) {
            Json j{{"kind", kind}, {"l0", module(d.l0)}, {"l1", module(d.l1)}, {"module", module(d.module)}};
            j["beta1"] = map(name + ".beta1", d.beta1);
            j["beta2"] = map(name + ".beta2", d.beta2);
            j["beta3"] = map(name + ".beta3", d.beta3);
            put(name, std::move(j));
          } else if constexpr (std::is_same_v<T, CrossedModule>) {
            Json j{{"kind", kind}, {"l", lie(name + ".l", d.l)}, {"lp", lie(name + ".lp", d.lp)}};
            j["phi"] = map(name + ".phi", d.phi);
            j["gamma"] = map(name + ".gamma", d.gamma);
            put(name, std::move(j));
          } else if constexpr (std::is_same_v<T, Lie2Algebra>) {
            Json j{{"kind", kind}, {"c0", module(d.c0)}, {"k", module(d.k)}, {"c1", module(d.c1)}};
            for (auto [key, f] : {std::pair{"s", &d.s}, {"t", &d.t}, {"i", &d.i}, {"bracket0", &d.bracket0},
                                  {"bracket1", &d.bracket1}, {"jacobiator", &d.jacobiator}})
              j[key] = map(name + "." + key, *f);
            put(name, std::move(j));
          } else if constexpr (std::is_same_v<T, LambdaTable>) {
            put(name, lambda_to_json(kind, d));
          } else if constexpr (std::is_same_v<T, RankOne>) {
            put(name, rank_one_to_json(kind, d));
          }
        },
        s.data);
  }

  Json lambda_to_json(const std::string& kind, const LambdaTable& t) {
    Json sym = Json::object();
    for (auto& [k, s] : t.symmetry) sym[std::to_string(k)] = to_string(s);
    Json ops = Json::object();
    for (auto& [k, table] : t.ops) {
      Json entries = Json::array();
      for (auto& [tup, terms] : table) {
        Json args = Json::array();
        for (int g : tup) args.push_back(t.module->generators()[g].name);
        Json ts = Json::array();
        for (auto& lt : terms)
          ts.push_back(Json{{"lambda", lt.lambda},
                            {"d", lt.d},
                            {"gen", t.module->generators()[lt.gen].name},
                            {"c", format_q(lt.c)}});
        entries.push_back(Json{{"args", std::move(args)}, {"terms", std::move(ts)}});
      }
      ops[std::to_string(k)] = std::move(entries);
    }
    return Json{{"kind", kind}, {"module", module(t.module)}, {"symmetry", std::move(sym)}, {"ops", std::move(ops)}};
  }

  Json rank_one_to_json(const std::string& kind, const RankOne& r) {
    if (!r.alg->same_as(*alg)) throw std::invalid_argument("rank-one data over a different Hopf algebra");
    Json alpha = Json::array();
    for (auto& [idx, t] : r.alpha) {
      Json ts = Json::array();
      for (auto& [tup, c] : t.terms) {
        Json slots = Json::array();
        for (auto& m : tup) slots.push_back(mono_to_json(*alg, m));
        ts.push_back(Json{{"slots", std::move(slots)}, {"c", format_q(c)}});
      }
      alpha.push_back(Json{{"indices", idx}, {"terms", std::move(ts)}});
    }
    return Json{{"kind", kind}, {"lo", r.lo}, {"hi", r.hi}, {"alpha", std::move(alpha)}};
  }
};

}  // namespace

// ---------------------------------------------------------------- public

const Structure& Document::find(const std::vector<std::string>& kinds, const std::string& name) const {
  auto matches = [&](const Structure& s) {
    for (auto& k : kinds)
      if (s.kind == k) return true;
    return false;
  };
  std::string wanted;
  for (auto& k : kinds) wanted += (wanted.empty() ? "" : "|") + k;
  if (!name.empty()) {
    auto it = structures.find(name);
    if (it == structures.end()) throw DocumentError("structures." + name, "no such structure");
    if (!matches(it->second)) throw DocumentError("structures." + name, "structure is not of kind " + wanted);
    return it->second;
  }
  for (auto& [n, s] : structures)
    if (matches(s)) return s;
  throw DocumentError("structures", "no structure of kind " + wanted);
}

Document parse_document(const Json& j) {
  as_object(j, "");
  const std::string format = as_string(req(j, "format", ""), "format");
  if (format != kDocumentFormat) throw DocumentError("format", "unsupported format '" + format + "'");
  Document d;
  if (const Json* o = opt(j, "origin")) d.origin = as_string(*o, "origin");
  Loader ld;
  ld.alg = d.hopf = hopf_from_json(req(j, "hopf", ""), "hopf");
  if (const Json* ms = opt(j, "modules"))
    for (auto& [name, mj] : as_object(*ms, "modules").items())
      ld.modules.emplace(name, module_from_json(name, d.hopf, mj, at_key("modules", name)));
  if (const Json* ms = opt(j, "maps"))
    for (auto& [name, mj] : as_object(*ms, "maps").items())
      ld.maps.emplace(name, map_from_json(ld.modules, mj, at_key("maps", name)));
  if (const Json* ss = opt(j, "structures")) {
    ld.structures_json = &as_object(*ss, "structures");
    for (auto& [name, sj] : ss->items()) ld.get(name, "structures");
  }
  if (const Json* as = opt(j, "actions"))
    for (auto& [name, aj] : as_object(*as, "actions").items()) {
      const std::string at = at_key("actions", name);
      const std::string sname = as_string(req(aj, "structure", at), at_key(at, "structure"));
      const LInftyStructure& s = ld.lie_ref(req(aj, "structure", at), at_key(at, "structure"));
      d.actions.emplace(name, ActionBlock{sname, action_from_json(d.hopf, s.module, aj, at)});
    }
  d.modules = ld.modules;
  for (auto& [name, f] : ld.maps)
    if (!ld.used_maps.count(name)) d.maps.emplace(name, f);
  // lie parts emitted for a crossed module under derived names belong to it
  std::set<std::string> parts;
  for (auto& [name, s] : ld.structures)
    if (s.kind == "crossed-module")
      for (const char* role : {"l", "lp"}) {
        const std::string ref = (*ld.structures_json)[name][role].get<std::string>();
        if (ref == name + "." + role) parts.insert(ref);
      }
  for (auto& [name, s] : ld.structures)
    if (!parts.count(name)) d.structures.emplace(name, s);
  return d;
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError(path, "cannot open file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError(path + " (byte " + std::to_string(e.byte) + ")", "syntax error");
  }
  return parse_document(j);
}

// Sections are written in name order so that output does not depend on discovery order.
static Json sorted_object(const Json& o) {
  std::map<std::string, const Json*> by_name;
  for (auto& [k, v] : o.items()) by_name.emplace(k, &v);
  Json r = Json::object();
  for (auto& [k, v] : by_name) r[k] = *v;
  return r;
}

Json document_to_json(const Document& d) {
  Writer w;
  w.alg = d.hopf;
  for (auto& [name, m] : d.modules) w.module(m);
  for (auto& [name, f] : d.maps) w.map(name, f);
  for (auto& [name, s] : d.structures) w.structure(name, s);
  Json actions = Json::object();
  for (auto& [name, a] : d.actions)
    actions[name] = Json{{"structure", a.structure},
                         {"group", group_to_json(a.action.group)},
                         {"variable_action", matrices_to_json(a.action.variable_action)},
                         {"module_action", matrices_to_json(a.action.module_action)}};
  Json j{{"format", kDocumentFormat}};
  if (!d.origin.empty()) j["origin"] = d.origin;
  j["hopf"] = hopf_to_json(*d.hopf);
  j["modules"] = sorted_object(w.modules);
  j["maps"] = sorted_object(w.maps);
  j["structures"] = sorted_object(w.structures);
  if (!actions.empty()) j["actions"] = std::move(actions);
  return j;
}

std::string dump_document(const Document& d) { return document_to_json(d).dump(2) + "\n"; }

void save_document(const Document& d, const std::string& path) {
  const std::string text = dump_document(d);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

Json quotient_to_json(const QuotientTensor& q) { return qterms_to_json(q); }

Json report_to_json(const Report& r) {
  Json checks = Json::array();
  for (auto& c : r.checks) {
    Json j{{"id", c.id}, {"verdict", c.pass ? "PASS" : "FAIL"}};
    if (c.level) j["level"] = c.level;
    if (!c.tuple.empty()) j["tuple"] = c.tuple;
    if (c.residual) {
      j["residual"] = c.residual->format();
      j["residual_terms"] = qterms_to_json(*c.residual);
    }
    if (!c.note.empty()) j["note"] = c.note;
    checks.push_back(std::move(j));
  }
  const int total = static_cast<int>(r.checks.size());
  return Json{{"format", kReportFormat},
              {"command", r.command},
              {"checks", std::move(checks)},
              {"summary", {{"total", total}, {"pass", total - r.failures()}, {"fail", r.failures()}}}};
}

std::string report_to_text(const Report& r) {
  std::ostringstream o;
  o << "command: " << r.command << "\n";
  for (auto& c : r.checks) {
    o << (c.pass ? "PASS " : "FAIL ") << c.id;
    if (c.level) o << "  N=" << c.level;
    if (!c.tuple.empty()) {
      o << "  at (";
      for (std::size_t i = 0; i < c.tuple.size(); ++i) o << (i ? ", " : "") << c.tuple[i];
      o << ")";
    }
    if (c.residual) o << "  residual " << c.residual->format();
    if (!c.note.empty()) o << "  -- " << c.note;
    o << "\n";
  }
  const int total = static_cast<int>(r.checks.size());
  o << fmt::format("summary: {} checks, {} pass, {} fail\n", total, total - r.failures(), r.failures());
  return o.str();
}

}  // namespace hpseudo
