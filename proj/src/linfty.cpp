#include "hpseudo/linfty.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hpseudo {

const PseudoMap* LInftyStructure::op(int k) const {
  auto it = ops.find(k);
  return it == ops.end() ? nullptr : &it->second;
}

bool LInftyStructure::all_skew_flagged() const {
  for (auto& [k, f] : ops)
    if (f.symmetry != Symmetry::skew) return false;
  return true;
}

const PseudoMap* Representation::action(int k) const {
  auto it = actions.find(k);
  return it == actions.end() ? nullptr : &it->second;
}

LInftyStructure zero_structure(const ModulePtr& m) { return LInftyStructure{m, {}}; }

void add_op(LInftyStructure& s, PseudoMap op) {
  const int k = op.arity;
  s.ops.insert_or_assign(k, std::move(op));
}

std::vector<Check> check_structure(const LInftyStructure& s) {
  std::vector<Check> out;
  for (auto& [k, f] : s.ops) {
    const std::string tag = std::to_string(k);
    if (f.degree != k - 2) {
      Check c = Check::fail("degree-" + tag, "operation of arity " + tag + " has degree " + std::to_string(f.degree));
      c.level = k;
      out.push_back(c);
    } else {
      out.push_back(Check::ok("degree-" + tag));
    }
    if (auto w = check_symmetry(f, Symmetry::skew)) {
      Check c = Check::fail("skew-" + tag, "graded skew-symmetry fails under an adjacent transposition");
      c.level = k;
      c.tuple = tuple_names(f.sources, w->tuple);
      c.residual = w->lhs - w->rhs;
      out.push_back(c);
    } else {
      out.push_back(Check::ok("skew-" + tag));
    }
  }
  return out;
}

namespace {

std::vector<ModuleElement> generators_of(const ModulePtr& m, const GenTuple& t) {
  std::vector<ModuleElement> v;
  v.reserve(t.size());
  for (int g : t) v.push_back(ModuleElement::generator(m, g));
  return v;
}

std::map<int, Multilinear> multilinear_ops(const LInftyStructure& s) {
  std::map<int, Multilinear> out;
  for (auto& [k, f] : s.ops) out.emplace(k, as_multilinear(f));
  return out;
}

int default_bound(int max_n, int k) { return max_n > 0 ? max_n : 2 * k - 1; }

}  // namespace

QuotientTensor jacobi_residual(const std::map<int, Multilinear>& ops, const ModulePtr& module,
                               std::span<const ModuleElement> args) {
  const int n = static_cast<int>(args.size());
  QuotientTensor r = QuotientTensor::zero(module, n);
  for (auto& [k, outer] : ops) {
    const int l = n + 1 - k;
    auto it = ops.find(l);
    if (l < 1 || it == ops.end()) continue;
    const int base = sign_of_parity(static_cast<long long>(l) * (k - 1));
    for (auto& sh : shuffles(n, l)) {
      QuotientTensor v = compose_at(outer, it->second, args, sh);
      if (base * perm_sign(sh) < 0) r -= v;
      else r += v;
    }
  }
  return r;
}

Check verify_higher_jacobi(const LInftyStructure& s, int max_n) {
  const int bound = default_bound(max_n, s.max_arity());
  auto ops = multilinear_ops(s);
  const bool sorted = s.all_skew_flagged();
  for (int n = 1; n <= bound; ++n) {
    auto tuples = sorted ? sorted_tuples(s.module, n) : all_tuples(std::vector<ModulePtr>(n, s.module));
    for (auto& t : tuples) {
      QuotientTensor r = jacobi_residual(ops, s.module, generators_of(s.module, t));
      if (r.is_zero()) continue;
      Check c = Check::fail("higher-jacobi", "nonzero residual at N = " + std::to_string(n));
      c.level = n;
      c.tuple = tuple_names(std::vector<ModulePtr>(n, s.module), t);
      c.residual = r;
      return c;
    }
  }
  return Check::ok("higher-jacobi", "checked N <= " + std::to_string(bound));
}

MapSum suspend_structure(const LInftyStructure& s, const ModulePtr& w) {
  MapSum out;
  for (auto& [k, f] : s.ops) out.emplace(k, suspend_map(f, w, w));
  return out;
}

Check verify_mc(const LInftyStructure& s, int max_n) {
  const int bound = default_bound(max_n, s.max_arity());
  ModulePtr w = suspend(s.module);
  MapSum eta = suspend_structure(s, w);
  const bool sorted = s.all_skew_flagged();
  for (int n = 1; n <= bound; ++n) {
    auto tuples = sorted ? sorted_tuples(w, n) : all_tuples(std::vector<ModulePtr>(n, w));
    for (auto& t : tuples) {
      QuotientTensor r = mc_bracket_value(eta, eta, -1, -1, generators_of(w, t));
      if (r.is_zero()) continue;
      Check c = Check::fail("maurer-cartan", "[[eta, eta]] nonzero in arity " + std::to_string(n));
      c.level = n;
      c.tuple = tuple_names(std::vector<ModulePtr>(n, w), t);
      c.residual = r;
      return c;
    }
  }
  return Check::ok("maurer-cartan", "checked arity <= " + std::to_string(bound));
}

// ---------------------------------------------------------------- representations

namespace {

int max_arity_of(const LInftyStructure& s, const Representation& r) {
  int k = s.max_arity();
  if (!r.actions.empty()) k = std::max(k, r.actions.rbegin()->first);
  return k;
}

std::set<int> arities_of(const LInftyStructure& s, const Representation& r) {
  std::set<int> ks;
  for (auto& [k, f] : s.ops) ks.insert(k);
  for (auto& [k, f] : r.actions) ks.insert(k);
  return ks;
}

}  // namespace

Multilinear mixed_operation(const LInftyStructure& s, const Representation& r, const ModulePtr& sum, int k) {
  const int nl = s.module->rank();
  std::shared_ptr<const PseudoMap> beta, gamma;
  if (auto* b = s.op(k)) beta = std::make_shared<const PseudoMap>(*b);
  if (auto* g = r.action(k)) gamma = std::make_shared<const PseudoMap>(*g);
  ValueFn value = [=](const GenTuple& gens) {
    int m_count = 0, at = -1;
    for (int i = 0; i < k; ++i)
      if (gens[i] >= nl) {
        ++m_count;
        at = i;
      }
    if (m_count == 0) return beta ? retarget(beta->value(gens), sum) : QuotientTensor::zero(sum, k);
    if (m_count > 1 || !gamma) return QuotientTensor::zero(sum, k);
    GenTuple xs;
    std::vector<int> dest(k);
    long long passed = 0;
    for (int i = 0, j = 0; i < k; ++i) {
      if (i == at) continue;
      xs.push_back(gens[i]);
      dest[j++] = i;
      if (i > at) passed += sum->degree(gens[i]);
    }
    xs.push_back(gens[at] - nl);
    dest[k - 1] = at;
    QuotientTensor v = relabel(retarget(gamma->value(xs), sum, nl), dest);
    long long e = (k - 1 - at) + passed * sum->degree(gens[at]);
    if (e & 1) v *= Q(-1);
    return v;
  };
  return Multilinear{k, k - 2, [value, k, sum](std::span<const ModuleElement> args) {
                       return eval_fn(value, k, sum, args);
                     }};
}

Check verify_representation(const LInftyStructure& s, const Representation& r, int max_n) {
  ModulePtr e = direct_sum(s.module->name() + "+" + r.module->name(), s.module, r.module);
  const int bound = default_bound(max_n, max_arity_of(s, r));
  std::map<int, Multilinear> ops;
  for (int k : arities_of(s, r)) ops.emplace(k, mixed_operation(s, r, e, k));
  const int nl = s.module->rank();
  for (int n = 1; n <= bound; ++n) {
    std::vector<ModulePtr> src(n - 1, s.module);
    src.push_back(r.module);
    for (auto t : all_tuples(src)) {
      t.back() += nl;
      QuotientTensor res = jacobi_residual(ops, e, generators_of(e, t));
      if (res.is_zero()) continue;
      Check c = Check::fail("representation", "nonzero residual at N = " + std::to_string(n));
      c.level = n;
      c.tuple = tuple_names(std::vector<ModulePtr>(n, e), t);
      c.residual = res;
      return c;
    }
  }
  return Check::ok("representation", "checked N <= " + std::to_string(bound));
}

LInftyStructure semidirect(const LInftyStructure& s, const Representation& r) {
  ModulePtr e = direct_sum(s.module->name() + "+" + r.module->name(), s.module, r.module);
  const int nl = s.module->rank();
  LInftyStructure out{e, {}};
  for (int k : arities_of(s, r)) {
    const PseudoMap* beta = s.op(k);
    const PseudoMap* gamma = r.action(k);
    PseudoMap f = PseudoMap::zero(k, k - 2, std::vector<ModulePtr>(k, e), e, Symmetry::skew);
    for (auto& t : sorted_tuples(e, k)) {
      int m_count = 0;
      for (int g : t) m_count += g >= nl ? 1 : 0;
      if (m_count == 0 && beta) {
        f.set(t, retarget(beta->value(t), e));
      } else if (m_count == 1 && gamma) {
        GenTuple xs = t;
        xs.back() -= nl;
        f.set(t, retarget(gamma->value(xs), e, nl));
      }
    }
    out.ops.emplace(k, std::move(f));
  }
  return out;
}

MapSum linfty_coboundary(const LInftyStructure& s, const Representation& r, const MapSum& c, const ModulePtr& l_shift,
                         const ModulePtr& m_shift, int max_arity) {
  MapSum out;
  if (c.empty()) return out;
  const int q = sum_degree(c);
  const int n = 1 - q;
  const int p = -1;
  const int nl = s.module->rank();
  for (auto& [k, f] : c) {
    for (auto& src : f.sources)
      if (src->rank() != nl) throw std::invalid_argument("coboundary: cochain sources must be L[-1]");
    if (f.target->rank() != r.module->rank()) throw std::invalid_argument("coboundary: cochain target must be M[-1]");
  }
  LInftyStructure sd = semidirect(s, r);
  ModulePtr w = suspend(sd.module);
  MapSum eta = suspend_structure(sd, w);
  MapSum cbar;
  for (auto& [k, f] : c) {
    PseudoMap g = PseudoMap::zero(k, q, std::vector<ModulePtr>(k, w), w, f.symmetry);
    for (auto& [t, v] : f.table) g.table[t] = retarget(v, w, nl);
    cbar.emplace(k, std::move(g));
  }
  const bool flip = (n - 1) % 2 != 0;
  for (int a = 1; a <= max_arity; ++a) {
    PseudoMap comp = PseudoMap::zero(a, p + q, std::vector<ModulePtr>(a, l_shift), m_shift, Symmetry::sym);
    for (auto& t : sorted_tuples(l_shift, a)) {
      QuotientTensor v = mc_bracket_value(eta, cbar, p, q, generators_of(w, t));
      QuotientTensor proj = QuotientTensor::zero(m_shift, a);
      for (auto& [key, x] : v.terms) {
        if (key.m.gen < nl) throw std::logic_error("coboundary: value leaves the M component");
        QKey k2 = key;
        k2.m.gen -= nl;
        add_term(proj.terms, k2, flip ? Q(-x) : x);
      }
      comp.set(t, std::move(proj));
    }
    if (!comp.is_zero()) out.emplace(a, std::move(comp));
  }
  return out;
}

// ---------------------------------------------------------------- group actions

namespace {

Matrix identity_matrix(int n) {
  Matrix m(n, std::vector<Q>(n, Q(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
  Matrix c(n, std::vector<Q>(m, Q(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// g . d^alpha with g . d_i = sum_j a[i][j] d_j.
Poly substitute(const HopfAlgebra& alg, const Monomial& m, const Matrix& a) {
  Poly out{{alg.one(), Q(1)}};
  for (int i = 0; i < alg.nvars(); ++i) {
    Poly lin;
    for (int j = 0; j < alg.nvars(); ++j) add_term(lin, alg.variable(j), a[i][j]);
    for (int e = 0; e < m.exps[i]; ++e) out = alg.mul(out, lin);
  }
  return out;
}

ModuleElement act_gamma(const GammaAction& a, int g, const ModuleElement& x) {
  const HopfAlgebra& alg = *x.module->algebra();
  ModuleElement out{x.module, {}};
  const Matrix& mg = a.module_action[g];
  for (auto& [key, c] : x.terms)
    for (auto& [h, hc] : substitute(alg, key.h, a.variable_action[g]))
      for (int i = 0; i < x.module->rank(); ++i)
        if (mg[i][key.gen] != 0) add_term(out.terms, ModKey{h, i}, c * hc * mg[i][key.gen]);
  return out;
}

QuotientTensor act_gamma(const GammaAction& a, int g, const QuotientTensor& q) {
  const HopfAlgebra& alg = *q.module->algebra();
  QuotientTensor out = QuotientTensor::zero(q.module, q.arity);
  for (auto& [key, c] : q.terms) {
    std::vector<std::pair<Tuple, Q>> slots{{{}, c}};
    for (auto& s : key.slots) {
      std::vector<std::pair<Tuple, Q>> next;
      for (auto& [t, w] : slots)
        for (auto& [m, v] : substitute(alg, s, a.variable_action[g])) {
          Tuple x = t;
          x.push_back(m);
          next.emplace_back(std::move(x), w * v);
        }
      slots = std::move(next);
    }
    ModuleElement img = act_gamma(a, g, ModuleElement{q.module, ModTerms{{key.m, Q(1)}}});
    for (auto& [t, w] : slots)
      for (auto& [mk, mc] : img.terms) add_term(out.terms, QKey{t, mk}, w * mc);
  }
  return out;
}

}  // namespace

GammaAction trivial_gamma_action(const LInftyStructure& s) {
  const int nv = s.module->algebra()->nvars();
  return GammaAction{FiniteGroup::trivial(), {identity_matrix(nv)}, {identity_matrix(s.module->rank())}};
}

std::vector<Check> verify_gamma_action(const LInftyStructure& s, const GammaAction& a) {
  std::vector<Check> out;
  const FiniteGroup& g = a.group;
  const int ng = g.size();
  if (s.module->kind() != GradedHModule::Kind::free || s.module->algebra()->kind() != HopfAlgebra::Kind::polynomial)
    throw std::invalid_argument("gamma action: free modules over a polynomial algebra only");
  if (static_cast<int>(a.module_action.size()) != ng || static_cast<int>(a.variable_action.size()) != ng)
    throw std::invalid_argument("gamma action: one matrix per group element expected");

  Check law = Check::ok("gamma-group-law");
  for (int x = 0; x < ng && law.pass; ++x) {
    for (int y = 0; y < ng && law.pass; ++y) {
      const int xy = g.mul(x, y);
      if (matmul(a.module_action[x], a.module_action[y]) != a.module_action[xy] ||
          matmul(a.variable_action[y], a.variable_action[x]) != a.variable_action[xy])
        law = Check::fail("gamma-group-law", "action of " + g.names[x] + "*" + g.names[y] + " is not the product");
    }
  }
  if (law.pass && (a.module_action[g.identity] != identity_matrix(s.module->rank())))
    law = Check::fail("gamma-group-law", "identity does not act trivially");
  out.push_back(law);

  Check deg = Check::ok("gamma-degree");
  for (int x = 0; x < ng; ++x)
    for (int i = 0; i < s.module->rank(); ++i)
      for (int j = 0; j < s.module->rank(); ++j)
        if (a.module_action[x][i][j] != 0 && s.module->degree(i) != s.module->degree(j))
          deg = Check::fail("gamma-degree", "action of " + g.names[x] + " does not preserve degree");
  out.push_back(deg);

  Check eq = Check::ok("gamma-equivariance");
  for (auto& [k, f] : s.ops) {
    if (!eq.pass) break;
    for (int x = 0; x < ng && eq.pass; ++x)
      for (auto& t : all_tuples(f.sources)) {
        std::vector<ModuleElement> moved;
        for (int gen : t) moved.push_back(act_gamma(a, x, ModuleElement::generator(s.module, gen)));
        QuotientTensor lhs = eval(f, moved);
        QuotientTensor rhs = act_gamma(a, x, f.value(t));
        if (lhs == rhs) continue;
        eq = Check::fail("gamma-equivariance", "beta_k(g x) != g beta_k(x) for g = " + g.names[x]);
        eq.level = k;
        eq.tuple = tuple_names(f.sources, t);
        eq.residual = lhs - rhs;
        break;
      }
  }
  out.push_back(eq);
  return out;
}

LInftyStructure smash_lift(const LInftyStructure& s, const GammaAction& a) {
  if (!all_pass(verify_gamma_action(s, a))) throw std::invalid_argument("smash_lift: the group action does not verify");
  AlgPtr base = s.module->algebra();
  AlgPtr lifted = HopfAlgebra::smash(base, a.group, a.variable_action);
  ModulePtr m = GradedHModule::equivariant(s.module->name() + "#", lifted, s.module->generators(), a.module_action);
  const int id = a.group.identity;
  auto lift_mono = [&](Monomial x) {
    x.group = static_cast<std::uint16_t>(id);
    return x;
  };
  LInftyStructure out{m, {}};
  for (auto& [k, f] : s.ops) {
    PseudoMap g = PseudoMap::zero(k, f.degree, std::vector<ModulePtr>(k, m), m, Symmetry::none);
    for (auto& t : all_tuples(f.sources)) {
      QuotientTensor acc = QuotientTensor::zero(m, k);
      for (int x = 0; x < a.group.size(); ++x) {
        std::vector<ModuleElement> args;
        args.push_back(act_gamma(a, x, ModuleElement::generator(s.module, t[0])));
        for (int i = 1; i < k; ++i) args.push_back(ModuleElement::generator(s.module, t[i]));
        QuotientTensor v = eval(f, args);
        QuotientTensor lv = QuotientTensor::zero(m, k);
        for (auto& [key, c] : v.terms) {
          QKey k2{{}, {lift_mono(key.m.h), key.m.gen}};
          for (auto& sl : key.slots) k2.slots.push_back(lift_mono(sl));
          add_term(lv.terms, k2, c);
        }
        TensorElement ginv{lifted, k, {}};
        Tuple slots(k, lifted->one());
        slots[0] = lifted->group_element(a.group.inverse[x]);
        add_term(ginv.terms, slots, Q(1));
        acc += act(ginv, lv);
      }
      g.set(t, std::move(acc));
    }
    out.ops.emplace(k, std::move(g));
  }
  return out;
}

LInftyStructure annihilation(const LInftyStructure& s) {
  if (s.module->kind() != GradedHModule::Kind::free) throw std::invalid_argument("annihilation: free modules only");
  AlgPtr k0 = HopfAlgebra::polynomial({});
  ModulePtr m = GradedHModule::free_module("A(" + s.module->name() + ")", k0, s.module->generators());
  const HopfAlgebra& alg = *s.module->algebra();
  LInftyStructure out{m, {}};
  for (auto& [k, f] : s.ops) {
    PseudoMap g = PseudoMap::zero(k, f.degree, std::vector<ModulePtr>(k, m), m, f.symmetry);
    for (auto& [t, v] : f.table) {
      QuotientTensor w = QuotientTensor::zero(m, k);
      for (auto& [key, c] : v.terms) {
        Q e = c * alg.counit(key.m.h);
        for (auto& sl : key.slots) e *= alg.counit(sl);
        add_term(w.terms, QKey{Tuple(k - 1, k0->one()), ModKey{k0->one(), key.m.gen}}, e);
      }
      g.set(t, std::move(w));
    }
    out.ops.emplace(k, std::move(g));
  }
  return out;
}

}  // namespace hpseudo
