#include "hpseudo/twoterm.hpp"

#include <functional>
#include <stdexcept>

namespace hpseudo {

namespace {

using Args = std::vector<ModuleElement>;

ModuleElement gen(const ModulePtr& m, int g) { return ModuleElement::generator(m, g); }

Args gens_of(const ModulePtr& m, const GenTuple& t) {
  Args v;
  v.reserve(t.size());
  for (int g : t) v.push_back(gen(m, g));
  return v;
}

// Terms whose generator lies in [lo, hi), moved by offset, as an element over target.
QuotientTensor select(const QuotientTensor& q, const ModulePtr& target, int lo, int hi, int offset) {
  QuotientTensor r{target, q.arity, {}};
  for (auto& [k, c] : q.terms) {
    if (k.m.gen < lo || k.m.gen >= hi) continue;
    QKey k2 = k;
    k2.m.gen += offset;
    r.terms.emplace(std::move(k2), c);
  }
  return r;
}

bool within(const QuotientTensor& q, int lo, int hi) {
  for (auto& [k, c] : q.terms)
    if (k.m.gen < lo || k.m.gen >= hi) return false;
  return true;
}

QuotientTensor with_module(QuotientTensor q, const ModulePtr& m) {
  q.module = m;
  return q;
}

ModuleElement apply(const Multilinear& f, const ModuleElement& x) {
  Args a{x};
  return f(a).as_element();
}

ModuleElement scaled_sum(const std::vector<std::pair<Q, ModuleElement>>& parts, const ModulePtr& m) {
  ModuleElement out{m, {}};
  for (auto& [c, e] : parts)
    for (auto& [k, d] : e.terms) add_term(out.terms, k, c * d);
  return out;
}

// Cartesian product of generator ranges.
std::vector<GenTuple> range_tuples(const std::vector<std::pair<int, int>>& ranges) {
  std::vector<GenTuple> out{{}};
  for (auto [lo, hi] : ranges) {
    std::vector<GenTuple> next;
    for (auto& t : out)
      for (int g = lo; g < hi; ++g) {
        GenTuple u = t;
        u.push_back(g);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

// Runs residual over tuples and reports the first nonzero one.
Check sweep(const std::string& id, const ModulePtr& m, const std::vector<GenTuple>& tuples,
            const std::function<QuotientTensor(const GenTuple&)>& residual, const std::string& note = {}) {
  for (auto& t : tuples) {
    QuotientTensor r = residual(t);
    if (r.is_zero()) continue;
    Check c = Check::fail(id, note.empty() ? "nonzero residual" : note);
    c.level = static_cast<int>(t.size());
    c.tuple = tuple_names(std::vector<ModulePtr>(t.size(), m), t);
    c.residual = r;
    return c;
  }
  return Check::ok(id, std::to_string(tuples.size()) + " tuples");
}

// Sweep over tuples whose entries live in different modules.
Check sweep_mixed(const std::string& id, const std::vector<ModulePtr>& sources,
                  const std::function<QuotientTensor(const GenTuple&)>& residual) {
  auto tuples = all_tuples(sources);
  for (auto& t : tuples) {
    QuotientTensor r = residual(t);
    if (r.is_zero()) continue;
    Check c = Check::fail(id, "nonzero residual");
    c.level = static_cast<int>(t.size());
    c.tuple = tuple_names(sources, t);
    c.residual = r;
    return c;
  }
  return Check::ok(id, std::to_string(tuples.size()) + " tuples");
}

Check named(Check c, const std::string& id) {
  c.id = id;
  return c;
}

ModulePtr with_degree(const ModulePtr& m, int degree) {
  auto g = m->generators();
  for (auto& x : g) x.degree = degree;
  return m->with_generators(m->name(), std::move(g));
}

PseudoMap unary_table(const ModulePtr& src, const ModulePtr& tgt, int degree,
                      const std::function<QuotientTensor(int)>& image) {
  PseudoMap f = PseudoMap::zero(1, degree, {src}, tgt, Symmetry::none);
  for (int g = 0; g < src->rank(); ++g) f.set({g}, with_module(image(g), tgt));
  return f;
}

QuotientTensor generator_value(const ModulePtr& m, int g) { return QuotientTensor::from_element(gen(m, g)); }

PseudoMap identity_table(const ModulePtr& src, const ModulePtr& tgt) {
  return unary_table(src, tgt, 0, [&](int g) { return generator_value(tgt, g); });
}

PseudoMap compose_unary(const PseudoMap& g, const PseudoMap& f) {
  Multilinear gm = as_multilinear(g);
  return unary_table(f.sources[0], g.target, f.degree + g.degree,
                     [&](int a) { return apply_unary(gm, f.value({a})); });
}

}  // namespace

// ---------------------------------------------------------------- two-term structures

LInftyStructure TwoTermLInfty::as_linfty() const {
  LInftyStructure s{module, {}};
  s.ops.emplace(1, beta1);
  s.ops.emplace(2, beta2);
  s.ops.emplace(3, beta3);
  return s;
}

TwoTermLInfty make_two_term(const ModulePtr& l0, const ModulePtr& l1) {
  for (auto& g : l0->generators())
    if (g.degree != 0) throw std::invalid_argument("two-term: l0 must be concentrated in degree 0");
  TwoTermLInfty t;
  t.l0 = l0;
  t.l1 = with_degree(l1, 1);
  t.module = direct_sum(l0->name() + "+" + l1->name(), t.l0, t.l1);
  const ModulePtr& e = t.module;
  t.beta1 = PseudoMap::zero(1, -1, {e}, e, Symmetry::none);
  t.beta2 = PseudoMap::zero(2, 0, {e, e}, e, Symmetry::skew);
  t.beta3 = PseudoMap::zero(3, 1, {e, e, e}, e, Symmetry::skew);
  return t;
}

namespace {

struct TwoTermOps {
  Multilinear b1, b2, b3;
  explicit TwoTermOps(const TwoTermLInfty& t)
      : b1(as_multilinear(t.beta1)), b2(as_multilinear(t.beta2)), b3(as_multilinear(t.beta3)) {}
};

// b2(b2(x, y), z) - b2(x, b2(y, z)) + b2(y, b2(x, z))
Multilinear jacobi_defect(const Multilinear& b2) {
  Multilinear in = insert(b2, b2, 1);
  return combine({{Q(1), insert(b2, b2, 0)}, {Q(-1), in}, {Q(1), reorder(in, {1, 0, 2})}});
}

Check shape_check(const TwoTermLInfty& t) {
  const int n0 = t.n0(), n = t.module->rank();
  auto bad = [&](const std::string& what, const PseudoMap& f, const GenTuple& g) {
    Check c = Check::fail("two-term-shape", what);
    c.tuple = tuple_names(f.sources, g);
    c.residual = f.value(g);
    return c;
  };
  if (t.beta1.degree != -1 || t.beta2.degree != 0 || t.beta3.degree != 1)
    return Check::fail("two-term-shape", "operation degrees must be -1, 0, 1");
  for (auto& [g, v] : t.beta1.table)
    if (!v.is_zero() && (t.in_l0(g[0]) || !within(v, 0, n0))) return bad("beta_1 must map l1 into l0", t.beta1, g);
  for (auto& [g, v] : t.beta2.table) {
    if (v.is_zero()) continue;
    const int in1 = (t.in_l0(g[0]) ? 0 : 1) + (t.in_l0(g[1]) ? 0 : 1);
    if (in1 == 2 || (in1 == 0 && !within(v, 0, n0)) || (in1 == 1 && !within(v, n0, n)))
      return bad("beta_2 must respect the grading", t.beta2, g);
  }
  for (auto& [g, v] : t.beta3.table) {
    if (v.is_zero()) continue;
    bool all0 = true;
    for (int x : g) all0 = all0 && t.in_l0(x);
    if (!all0 || !within(v, n0, n)) return bad("beta_3 must map l0^3 into l1", t.beta3, g);
  }
  for (const PseudoMap* f : {&t.beta2, &t.beta3})
    if (auto w = check_symmetry(*f, Symmetry::skew)) {
      Check c = Check::fail("two-term-shape", "beta_" + std::to_string(f->arity) + " is not skew");
      c.tuple = tuple_names(f->sources, w->tuple);
      c.residual = w->lhs - w->rhs;
      return c;
    }
  return Check::ok("two-term-shape");
}

}  // namespace

std::vector<Check> verify_two_term(const TwoTermLInfty& t) {
  const TwoTermOps o(t);
  const ModulePtr& e = t.module;
  const int n0 = t.n0(), n = e->rank();
  const std::pair<int, int> r0{0, n0}, r1{n0, n};
  std::vector<Check> out;
  out.push_back(shape_check(t));

  out.push_back(sweep("two-term-i", e, range_tuples({r0, r1}), [&](const GenTuple& g) {
    Args a = gens_of(e, g);
    return apply_unary(o.b1, o.b2(a)) - compose_insert(o.b2, o.b1, a, 1);
  }));
  out.push_back(sweep("two-term-ii", e, range_tuples({r1, r1}), [&](const GenTuple& g) {
    Args a = gens_of(e, g);
    return compose_insert(o.b2, o.b1, a, 0) - compose_insert(o.b2, o.b1, a, 1);
  }));
  const Multilinear defect = jacobi_defect(o.b2);
  out.push_back(sweep("two-term-iii", e, range_tuples({r0, r0, r0}), [&](const GenTuple& g) {
    Args a = gens_of(e, g);
    return defect(a) + apply_unary(o.b1, o.b3(a));
  }));
  out.push_back(sweep("two-term-iv", e, range_tuples({r0, r0, r1}), [&](const GenTuple& g) {
    Args a = gens_of(e, g);
    return defect(a) + compose_insert(o.b3, o.b1, a, 2);
  }));

  // The Jacobiator identity on (x, y, z, w).
  const Multilinear b2b3 = insert(o.b2, o.b3, 1), b3b2 = insert(o.b3, o.b2, 0);
  const Multilinear jacobiator_identity = combine({
      {Q(1), b2b3},
      {Q(-1), reorder(b2b3, {1, 0, 2, 3})},
      {Q(1), reorder(b2b3, {2, 0, 1, 3})},
      {Q(-1), reorder(b2b3, {3, 0, 1, 2})},
      {Q(-1), b3b2},
      {Q(1), reorder(b3b2, {0, 2, 1, 3})},
      {Q(-1), reorder(b3b2, {0, 3, 1, 2})},
      {Q(-1), reorder(b3b2, {1, 2, 0, 3})},
      {Q(1), reorder(b3b2, {1, 3, 0, 2})},
      {Q(-1), reorder(b3b2, {2, 3, 0, 1})},
  });
  out.push_back(sweep("two-term-v", e, range_tuples({r0, r0, r0, r0}),
                      [&](const GenTuple& g) { return jacobiator_identity(gens_of(e, g)); }));
  return out;
}

// ---------------------------------------------------------------- morphisms

TwoTermMorphism identity_morphism(const TwoTermLInfty& t) {
  return TwoTermMorphism{identity_table(t.module, t.module),
                         PseudoMap::zero(2, 1, {t.module, t.module}, t.module, Symmetry::skew)};
}

std::vector<Check> verify_two_term_morphism(const TwoTermMorphism& m, const TwoTermLInfty& src,
                                            const TwoTermLInfty& dst) {
  const ModulePtr& e = src.module;
  const int n0 = src.n0(), n = e->rank(), m0 = dst.n0(), mn = dst.module->rank();
  const std::pair<int, int> r0{0, n0}, r1{n0, n};
  std::vector<Check> out;

  Check shape = Check::ok("morphism-shape");
  if (m.f.sources.size() != 1 || m.f.sources[0]->rank() != n || m.f.target->rank() != mn || m.f2.arity != 2)
    shape = Check::fail("morphism-shape", "module mismatch");
  for (auto& [g, v] : m.f.table)
    if (shape.pass && !(src.in_l0(g[0]) ? within(v, 0, m0) : within(v, m0, mn)))
      shape = Check::fail("morphism-shape", "f must preserve the grading");
  for (auto& [g, v] : m.f2.table)
    if (shape.pass && !v.is_zero() && (!src.in_l0(g[0]) || !src.in_l0(g[1]) || !within(v, m0, mn)))
      shape = Check::fail("morphism-shape", "f_2 must map l0 x l0 into l1'");
  out.push_back(shape);
  if (!shape.pass) return out;

  const TwoTermOps a(src), b(dst);
  const Multilinear f = as_multilinear(m.f), f2 = as_multilinear(m.f2);
  const Multilinear b2ff = insert(insert(b.b2, f, 0), f, 1);

  out.push_back(sweep("morphism-chain", e, range_tuples({r1}), [&](const GenTuple& g) {
    QuotientTensor fu = m.f.value(g);
    return apply_unary(b.b1, fu) - apply_unary(f, src.beta1.value(g));
  }));
  out.push_back(sweep("morphism-bracket", e, range_tuples({r0, r0}), [&](const GenTuple& g) {
    Args x = gens_of(e, g);
    return apply_unary(f, a.b2(x)) - b2ff(x) - apply_unary(b.b1, f2(x));
  }));
  out.push_back(sweep("morphism-action", e, range_tuples({r0, r1}), [&](const GenTuple& g) {
    Args x = gens_of(e, g);
    return apply_unary(f, a.b2(x)) - b2ff(x) - compose_insert(f2, a.b1, x, 1);
  }));

  const Multilinear p = insert(insert(b.b2, f2, 0), f, 2);
  const Multilinear q = insert(insert(b.b2, f, 0), f2, 1);
  const Multilinear f2b2 = insert(f2, a.b2, 1);
  const Multilinear lhs = combine({{Q(1), p},
                                   {Q(-1), q},
                                   {Q(1), reorder(q, {1, 0, 2})},
                                   {Q(1), insert(f2, a.b2, 0)},
                                   {Q(-1), f2b2},
                                   {Q(1), reorder(f2b2, {1, 0, 2})}});
  const Multilinear b3fff = insert(insert(insert(b.b3, f, 0), f, 1), f, 2);
  out.push_back(sweep("morphism-jacobiator", e, range_tuples({r0, r0, r0}), [&](const GenTuple& g) {
    Args x = gens_of(e, g);
    return lhs(x) - b3fff(x) + apply_unary(f, a.b3(x));
  }));
  return out;
}

TwoTermMorphism compose_two_term(const TwoTermMorphism& g, const TwoTermMorphism& f) {
  const ModulePtr& mid = f.f.target;
  if (g.f.sources[0]->rank() != mid->rank() || g.f.sources[0]->name() != mid->name())
    throw std::invalid_argument("compose_two_term: codomain of f is not the domain of g");
  const ModulePtr& e = f.f.sources[0];
  const ModulePtr& tgt = g.f.target;
  TwoTermMorphism h;
  h.f = compose_unary(g.f, f.f);
  const Multilinear fm = as_multilinear(f.f), gm = as_multilinear(g.f);
  const Multilinear g2ff = insert(insert(as_multilinear(g.f2), fm, 0), fm, 1);
  h.f2 = PseudoMap::zero(2, 1, {e, e}, tgt, Symmetry::skew);
  for (auto& t : sorted_tuples(e, 2)) {
    Args x = gens_of(e, t);
    h.f2.set(t, with_module(g2ff(x) + apply_unary(gm, f.f2.value(t)), tgt));
  }
  return h;
}

bool same_morphism(const TwoTermMorphism& a, const TwoTermMorphism& b) {
  return same_table(a.f, b.f) && same_table(a.f2, b.f2);
}

bool same_two_term(const TwoTermLInfty& a, const TwoTermLInfty& b) {
  return a.n0() == b.n0() && a.module->rank() == b.module->rank() && same_table(a.beta1, b.beta1) &&
         same_table(a.beta2, b.beta2) && same_table(a.beta3, b.beta3);
}

// ---------------------------------------------------------------- skeletal

SkeletalTriple skeletal_to_triple(const TwoTermLInfty& t) {
  if (!t.beta1.is_zero()) throw std::invalid_argument("skeletal_to_triple: beta_1 is not zero");
  const int n0 = t.n0(), n = t.module->rank();
  const ModulePtr l = t.l0, m = with_degree(t.l1, 0);
  SkeletalTriple x{LInftyStructure{l, {}}, Representation{m, {}}, PseudoMap::zero(3, 0, {l, l, l}, m, Symmetry::skew)};
  PseudoMap bracket = PseudoMap::zero(2, 0, {l, l}, l, Symmetry::skew);
  for (auto& g : sorted_tuples(l, 2)) bracket.set(g, select(t.beta2.value(g), l, 0, n0, 0));
  x.lie.ops.emplace(2, std::move(bracket));
  PseudoMap gamma = PseudoMap::zero(2, 0, {l, m}, m, Symmetry::none);
  for (auto& g : all_tuples({l, m})) gamma.set(g, select(t.beta2.value({g[0], g[1] + n0}), m, n0, n, -n0));
  x.rep.actions.emplace(2, std::move(gamma));
  for (auto& g : sorted_tuples(l, 3)) x.cocycle.set(g, select(t.beta3.value(g), m, n0, n, -n0));
  return x;
}

TwoTermLInfty triple_to_skeletal(const SkeletalTriple& x) {
  TwoTermLInfty t = make_two_term(x.lie.module, x.rep.module);
  const ModulePtr& e = t.module;
  const int n0 = t.n0();
  const PseudoMap* bracket = x.lie.op(2);
  const PseudoMap* gamma = x.rep.action(2);
  for (auto& g : sorted_tuples(e, 2)) {
    if (t.in_l0(g[0]) && t.in_l0(g[1])) {
      if (bracket) t.beta2.set(g, retarget(bracket->value(g), e));
    } else if (t.in_l0(g[0])) {
      if (gamma) t.beta2.set(g, retarget(gamma->value({g[0], g[1] - n0}), e, n0));
    }
  }
  for (auto& g : sorted_tuples(x.lie.module, 3)) t.beta3.set(g, retarget(x.cocycle.value(g), e, n0));
  return t;
}

LInftyStructure higher_skeletal(const LInftyStructure& l, const Representation& m, const PseudoMap& theta, int n) {
  if (n <= 2) throw std::invalid_argument("higher_skeletal: n must exceed 2");
  if (theta.arity != n + 1) throw std::invalid_argument("higher_skeletal: theta must have arity n + 1");
  Check c = is_cocycle(l, m, theta);
  if (!c.pass) {
    std::string where;
    for (auto& s : c.tuple) where += (where.empty() ? "" : ", ") + s;
    throw std::invalid_argument("higher_skeletal: theta is not a cocycle; delta theta(" + where +
                                ") = " + c.residual->format());
  }
  const ModulePtr mm = with_degree(m.module, n - 1);
  const ModulePtr e = direct_sum(l.module->name() + "+" + m.module->name(), l.module, mm);
  const int nl = l.module->rank();
  LInftyStructure s{e, {}};
  PseudoMap b2 = PseudoMap::zero(2, 0, {e, e}, e, Symmetry::skew);
  const PseudoMap* bracket = l.op(2);
  const PseudoMap* gamma = m.action(2);
  for (auto& g : sorted_tuples(e, 2)) {
    if (g[1] < nl) {
      if (bracket) b2.set(g, retarget(bracket->value(g), e));
    } else if (g[0] < nl) {
      if (gamma) b2.set(g, retarget(gamma->value({g[0], g[1] - nl}), e, nl));
    }
  }
  s.ops.emplace(2, std::move(b2));
  PseudoMap top = PseudoMap::zero(n + 1, n - 1, std::vector<ModulePtr>(n + 1, e), e, Symmetry::skew);
  for (auto& g : sorted_tuples(l.module, n + 1)) top.set(g, retarget(theta.value(g), e, nl));
  s.ops.emplace(n + 1, std::move(top));
  return s;
}

// ---------------------------------------------------------------- crossed modules

std::vector<Check> verify_crossed_module(const CrossedModule& x) {
  std::vector<Check> out;
  const PseudoMap* bl = x.l.op(2);
  const PseudoMap* bp = x.lp.op(2);
  if (!bl || !bp) {
    out.push_back(Check::fail("crossed-shape", "both brackets are required"));
    return out;
  }
  for (auto [s, tag] : {std::pair{&x.l, "l"}, std::pair{&x.lp, "lp"}}) {
    const PseudoMap& b = *s->op(2);
    if (auto w = check_symmetry(b, Symmetry::skew)) {
      Check c = Check::fail(std::string("crossed-") + tag + "-skew", "bracket is not skew");
      c.tuple = tuple_names(b.sources, w->tuple);
      c.residual = w->lhs - w->rhs;
      out.push_back(c);
    } else {
      out.push_back(Check::ok(std::string("crossed-") + tag + "-skew"));
    }
    out.push_back(named(verify_higher_jacobi(*s, 3), std::string("crossed-") + tag + "-jacobi"));
  }
  const ModulePtr& lm = x.l.module;
  const ModulePtr& pm = x.lp.module;
  const Multilinear b = as_multilinear(*bl), bq = as_multilinear(*bp);
  const Multilinear phi = as_multilinear(x.phi), gamma = as_multilinear(x.gamma);
  const Multilinear b_phiphi = insert(insert(b, phi, 0), phi, 1);

  out.push_back(sweep_mixed("crossed-morphism", {pm, pm}, [&](const GenTuple& g) {
    Args a{gen(pm, g[0]), gen(pm, g[1])};
    return apply_unary(phi, bq(a)) - b_phiphi(a);
  }));
  Representation rep{pm, {}};
  rep.actions.emplace(2, x.gamma);
  out.push_back(named(verify_representation(x.l, rep, 3), "crossed-representation"));
  out.push_back(sweep_mixed("crossed-equivariance", {lm, pm}, [&](const GenTuple& g) {
    Args a{gen(lm, g[0]), gen(pm, g[1])};
    return apply_unary(phi, gamma(a)) - compose_insert(b, phi, a, 1);
  }));
  out.push_back(sweep_mixed("crossed-peiffer", {pm, pm}, [&](const GenTuple& g) {
    Args a{gen(pm, g[0]), gen(pm, g[1])};
    return compose_insert(gamma, phi, a, 0) - bq(a);
  }));
  const Multilinear bq_gamma = reorder(insert(bq, gamma, 1), {1, 0, 2});
  out.push_back(sweep_mixed("crossed-derivation", {lm, pm, pm}, [&](const GenTuple& g) {
    Args a{gen(lm, g[0]), gen(pm, g[1]), gen(pm, g[2])};
    return compose_insert(bq, gamma, a, 0) - compose_insert(gamma, bq, a, 1) + bq_gamma(a);
  }));
  return out;
}

CrossedModule strict_to_crossed(const TwoTermLInfty& t) {
  if (!t.beta3.is_zero()) throw std::invalid_argument("strict_to_crossed: beta_3 is not zero");
  const int n0 = t.n0(), n = t.module->rank();
  const ModulePtr& e = t.module;
  const ModulePtr l = t.l0, p = with_degree(t.l1, 0);
  const Multilinear b1 = as_multilinear(t.beta1), b2 = as_multilinear(t.beta2);
  CrossedModule x{LInftyStructure{l, {}}, LInftyStructure{p, {}}, PseudoMap::zero(1, 0, {p}, l),
                  PseudoMap::zero(2, 0, {l, p}, p)};
  PseudoMap bl = PseudoMap::zero(2, 0, {l, l}, l, Symmetry::skew);
  for (auto& g : sorted_tuples(l, 2)) bl.set(g, select(t.beta2.value(g), l, 0, n0, 0));
  x.l.ops.emplace(2, std::move(bl));
  // [u * v]' = beta_2(beta_1 u, v), computed on every tuple; stored skew-flagged only when it is skew,
  // so that a failure of skewness stays visible to the verifier.
  PseudoMap bp = PseudoMap::zero(2, 0, {p, p}, p, Symmetry::none);
  for (auto& g : all_tuples({p, p})) {
    Args a = gens_of(e, {g[0] + n0, g[1] + n0});
    bp.set(g, select(compose_insert(b2, b1, a, 0), p, n0, n, -n0));
  }
  if (!check_symmetry(bp, Symmetry::skew)) {
    PseudoMap flagged = PseudoMap::zero(2, 0, {p, p}, p, Symmetry::skew);
    for (auto& g : sorted_tuples(p, 2)) flagged.set(g, bp.value(g));
    bp = std::move(flagged);
  }
  x.lp.ops.emplace(2, std::move(bp));
  for (int u = 0; u < p->rank(); ++u) x.phi.set({u}, select(t.beta1.value({u + n0}), l, 0, n0, 0));
  for (auto& g : all_tuples({l, p})) x.gamma.set(g, select(t.beta2.value({g[0], g[1] + n0}), p, n0, n, -n0));
  return x;
}

TwoTermLInfty crossed_to_strict(const CrossedModule& x) {
  TwoTermLInfty t = make_two_term(x.l.module, x.lp.module);
  const ModulePtr& e = t.module;
  const int n0 = t.n0();
  for (int u = 0; u < x.lp.module->rank(); ++u) t.beta1.set({u + n0}, retarget(x.phi.value({u}), e));
  const PseudoMap& bl = *x.l.op(2);
  for (auto& g : sorted_tuples(e, 2)) {
    if (t.in_l0(g[0]) && t.in_l0(g[1]))
      t.beta2.set(g, retarget(bl.value(g), e));
    else if (t.in_l0(g[0]))
      t.beta2.set(g, retarget(x.gamma.value({g[0], g[1] - n0}), e, n0));
  }
  return t;
}

LInftyStructure crossed_direct_sum(const CrossedModule& x) {
  const ModulePtr e = direct_sum(x.l.module->name() + "+" + x.lp.module->name(), x.l.module, x.lp.module);
  const int nl = x.l.module->rank();
  const PseudoMap& bl = *x.l.op(2);
  const PseudoMap& bp = *x.lp.op(2);
  PseudoMap b = PseudoMap::zero(2, 0, {e, e}, e, Symmetry::skew);
  for (auto& g : sorted_tuples(e, 2)) {
    if (g[1] < nl)
      b.set(g, retarget(bl.value(g), e));
    else if (g[0] < nl)
      b.set(g, retarget(x.gamma.value({g[0], g[1] - nl}), e, nl));
    else
      b.set(g, retarget(bp.value({g[0] - nl, g[1] - nl}), e, nl));
  }
  LInftyStructure s{e, {}};
  s.ops.emplace(2, std::move(b));
  return s;
}

CrossedModule identity_crossed_module(const LInftyStructure& l) {
  const ModulePtr& m = l.module;
  const ModulePtr p = m->with_generators(m->name() + "'", m->generators());
  const PseudoMap& b = *l.op(2);
  PseudoMap bp = PseudoMap::zero(2, 0, {p, p}, p, b.symmetry);
  for (auto& [g, v] : b.table) bp.set(g, retarget(v, p));
  CrossedModule x{l, LInftyStructure{p, {}}, identity_table(p, m), PseudoMap::zero(2, 0, {m, p}, p)};
  x.lp.ops.emplace(2, std::move(bp));
  for (auto& g : all_tuples({m, p})) x.gamma.set(g, retarget(b.value(g), p));
  return x;
}

CrossedModule ideal_crossed_module(const LInftyStructure& l, const std::vector<int>& ideal_gens) {
  const ModulePtr& m = l.module;
  if (!std::is_sorted(ideal_gens.begin(), ideal_gens.end()))
    throw std::invalid_argument("ideal_crossed_module: generators must be increasing");
  const ModulePtr p = sub_module(m->name() + "_ideal", m, ideal_gens);
  std::vector<int> index(m->rank(), -1);
  for (std::size_t j = 0; j < ideal_gens.size(); ++j) index[ideal_gens[j]] = static_cast<int>(j);
  auto restrict = [&](const QuotientTensor& q) {
    QuotientTensor r{p, q.arity, {}};
    for (auto& [k, c] : q.terms) {
      if (index[k.m.gen] < 0)
        throw std::invalid_argument("ideal_crossed_module: bracket leaves the span of the ideal generators");
      QKey k2 = k;
      k2.m.gen = index[k.m.gen];
      r.terms.emplace(std::move(k2), c);
    }
    return r;
  };
  const PseudoMap& b = *l.op(2);
  CrossedModule x{l, LInftyStructure{p, {}}, PseudoMap::zero(1, 0, {p}, m), PseudoMap::zero(2, 0, {m, p}, p)};
  PseudoMap bp = PseudoMap::zero(2, 0, {p, p}, p, b.symmetry);
  for (auto& g : (b.symmetry == Symmetry::none ? all_tuples({p, p}) : sorted_tuples(p, 2)))
    bp.set(g, restrict(b.value({ideal_gens[g[0]], ideal_gens[g[1]]})));
  x.lp.ops.emplace(2, std::move(bp));
  for (int j = 0; j < p->rank(); ++j) x.phi.set({j}, generator_value(m, ideal_gens[j]));
  for (auto& g : all_tuples({m, p})) x.gamma.set(g, restrict(b.value({g[0], ideal_gens[g[1]]})));
  return x;
}

// ---------------------------------------------------------------- Lie-2 pseudoalgebras

namespace {

struct Lie2Ops {
  const Lie2Algebra& c;
  Multilinear s, t, i, b0, b1, j;
  explicit Lie2Ops(const Lie2Algebra& c_)
      : c(c_),
        s(as_multilinear(c_.s)),
        t(as_multilinear(c_.t)),
        i(as_multilinear(c_.i)),
        b0(as_multilinear(c_.bracket0)),
        b1(as_multilinear(c_.bracket1)),
        j(as_multilinear(c_.jacobiator)) {}

  // a then b, for composable morphisms (of any arity): a + b - i(t a).
  QuotientTensor comp(const QuotientTensor& a, const QuotientTensor& b) const {
    return with_module(a + b - apply_unary(i, apply_unary(t, a)), c.c1);
  }
  ModuleElement comp(const ModuleElement& a, const ModuleElement& b) const {
    return scaled_sum({{Q(1), a}, {Q(1), b}, {Q(-1), apply(i, apply(t, a))}}, c.c1);
  }
  ModuleElement src(const ModuleElement& f) const { return apply(s, f); }
  ModuleElement tgt(const ModuleElement& f) const { return apply(t, f); }
  ModuleElement id(const ModuleElement& x) const { return apply(i, x); }
};

// Kernel generators of s in coordinates, plus the zero element.
std::vector<ModuleElement> kernel_samples(const Lie2Algebra& c) {
  std::vector<ModuleElement> out{ModuleElement{c.c1, {}}};
  for (int g = c.n0(); g < c.c1->rank(); ++g) out.push_back(gen(c.c1, g));
  return out;
}

Check fail_at(const std::string& id, const std::string& note, std::vector<std::string> where,
              std::optional<QuotientTensor> residual = std::nullopt) {
  Check c = Check::fail(id, note);
  c.tuple = std::move(where);
  c.residual = std::move(residual);
  return c;
}

std::string name_of(const ModuleElement& e) {
  return QuotientTensor::from_element(e).format();
}

Check lie2_source_projection(const Lie2Algebra& c) {
  const int n0 = c.n0();
  for (int g = 0; g < c.c1->rank(); ++g) {
    QuotientTensor want = g < n0 ? generator_value(c.c0, g) : QuotientTensor::zero(c.c0, 1);
    QuotientTensor got = c.s.value({g});
    if (got.terms != want.terms)
      return fail_at("lie2-source-projection", "s is not the coordinate projection", {c.c1->generators()[g].name},
                     got - want);
  }
  return Check::ok("lie2-source-projection");
}

Check lie2_category(const Lie2Ops& o) {
  const Lie2Algebra& c = o.c;
  for (int x = 0; x < c.n0(); ++x) {
    ModuleElement e = gen(c.c0, x), ix = o.id(e);
    if (!(o.src(ix) == e) || !(o.tgt(ix) == e))
      return fail_at("lie2-category", "s i = t i = id fails", {c.c0->generators()[x].name});
  }
  const auto ks = kernel_samples(c);
  for (int a = 0; a < c.c1->rank(); ++a) {
    ModuleElement f = gen(c.c1, a);
    for (auto& k1 : ks) {
      ModuleElement g = scaled_sum({{Q(1), o.id(o.tgt(f))}, {Q(1), k1}}, c.c1);
      ModuleElement gf = o.comp(f, g);
      if (!(o.src(gf) == o.src(f)) || !(o.tgt(gf) == o.tgt(g)))
        return fail_at("lie2-category", "composite has the wrong source or target", {name_of(f), name_of(g)});
      if (!(o.comp(o.id(o.src(f)), f) == f) || !(o.comp(f, o.id(o.tgt(f))) == f))
        return fail_at("lie2-category", "identities are not units", {name_of(f)});
      for (auto& k2 : ks) {
        ModuleElement h = scaled_sum({{Q(1), o.id(o.tgt(g))}, {Q(1), k2}}, c.c1);
        if (!(o.comp(o.comp(f, g), h) == o.comp(f, o.comp(g, h))))
          return fail_at("lie2-category", "composition is not associative", {name_of(f), name_of(g), name_of(h)});
      }
    }
  }
  return Check::ok("lie2-category");
}

Check lie2_h_linearity(const Lie2Ops& o) {
  const Lie2Algebra& c = o.c;
  const AlgPtr& alg = c.c0->algebra();
  std::vector<Monomial> probes;
  for (int v = 0; v < alg->nvars(); ++v) probes.push_back(alg->variable(v));
  for (int g = 0; g < alg->group().size(); ++g)
    if (g != alg->group().identity) probes.push_back(alg->group_element(g));
  for (auto& h : probes) {
    HElement he{alg, {{h, Q(1)}}};
    for (int a = 0; a < c.c1->rank(); ++a) {
      ModuleElement f = gen(c.c1, a), hf = act_module(he, f);
      for (auto* m : {&o.s, &o.t})
        if (!(apply(*m, hf) == act_module(he, apply(*m, f))))
          return fail_at("lie2-h-linearity", "s or t is not H-linear", {c.c1->generators()[a].name});
      ModuleElement g = scaled_sum({{Q(1), o.id(o.tgt(f))}}, c.c1);
      ModuleElement hg = act_module(he, g);
      if (!(o.comp(hf, hg) == act_module(he, o.comp(f, g))))
        return fail_at("lie2-h-linearity", "composition is not H-linear", {c.c1->generators()[a].name});
    }
    for (int x = 0; x < c.n0(); ++x) {
      ModuleElement e = gen(c.c0, x);
      if (!(o.id(act_module(he, e)) == act_module(he, o.id(e))))
        return fail_at("lie2-h-linearity", "i is not H-linear", {c.c0->generators()[x].name});
    }
  }
  return Check::ok("lie2-h-linearity");
}

Check lie2_functor(const Lie2Ops& o) {
  const Lie2Algebra& c = o.c;
  const int r1 = c.c1->rank();
  for (int a = 0; a < r1; ++a)
    for (int b = 0; b < r1; ++b) {
      ModuleElement f = gen(c.c1, a), g = gen(c.c1, b);
      QuotientTensor fg = o.b1({f, g});
      if (!(apply_unary(o.s, fg) == o.b0({o.src(f), o.src(g)})) ||
          !(apply_unary(o.t, fg) == o.b0({o.tgt(f), o.tgt(g)})))
        return fail_at("lie2-bracket-functor", "bracket does not commute with s and t",
                       {c.c1->generators()[a].name, c.c1->generators()[b].name}, fg);
    }
  for (int x = 0; x < c.n0(); ++x)
    for (int y = 0; y < c.n0(); ++y) {
      ModuleElement ex = gen(c.c0, x), ey = gen(c.c0, y);
      QuotientTensor lhs = o.b1({o.id(ex), o.id(ey)});
      QuotientTensor rhs = apply_unary(o.i, o.b0({ex, ey}));
      if (!(lhs == rhs))
        return fail_at("lie2-bracket-functor", "bracket of identities is not an identity",
                       {c.c0->generators()[x].name, c.c0->generators()[y].name}, lhs - rhs);
    }
  const auto ks = kernel_samples(c);
  for (int a = 0; a < r1; ++a)
    for (int b = 0; b < r1; ++b) {
      ModuleElement f = gen(c.c1, a), f2 = gen(c.c1, b);
      for (auto& k : ks)
        for (auto& k2 : ks) {
          ModuleElement g = scaled_sum({{Q(1), o.id(o.tgt(f))}, {Q(1), k}}, c.c1);
          ModuleElement g2 = scaled_sum({{Q(1), o.id(o.tgt(f2))}, {Q(1), k2}}, c.c1);
          QuotientTensor lhs = o.b1({o.comp(f, g), o.comp(f2, g2)});
          QuotientTensor rhs = o.comp(o.b1({f, f2}), o.b1({g, g2}));
          if (!(lhs == rhs))
            return fail_at("lie2-bracket-functor", "bracket does not preserve composition",
                           {name_of(f), name_of(g), name_of(f2), name_of(g2)}, lhs - rhs);
        }
    }
  return Check::ok("lie2-bracket-functor");
}

Check lie2_skew(const Lie2Ops& o) {
  const Lie2Algebra& c = o.c;
  for (const PseudoMap* b : {&c.bracket0, &c.bracket1})
    if (auto w = check_symmetry(*b, Symmetry::skew)) {
      Check r = Check::fail("lie2-skew", "bracket is not skew");
      r.tuple = tuple_names(b->sources, w->tuple);
      r.residual = w->lhs - w->rhs;
      return r;
    }
  const int n0 = c.n0();
  auto pr2 = [&](const GenTuple& g) {
    QuotientTensor v = c.jacobiator.value(g);
    return select(v - apply_unary(o.i, apply_unary(o.s, v)), c.c1, n0, c.c1->rank(), 0);
  };
  for (auto& g : all_tuples({c.c0, c.c0, c.c0})) {
    QuotientTensor jv = c.jacobiator.value(g);
    QuotientTensor swapped = c.jacobiator.value({g[1], g[0], g[2]});
    QuotientTensor r = swapped + relabel(jv, {1, 0, 2});
    if (!r.is_zero())
      return fail_at("lie2-skew", "Jacobiator is not skew in its first two slots",
                     tuple_names({c.c0, c.c0, c.c0}, g), r);
    QuotientTensor p = pr2(g);
    QuotientTensor r2 = pr2({g[0], g[2], g[1]}) + relabel(p, {0, 2, 1});
    if (!r2.is_zero())
      return fail_at("lie2-skew", "second Jacobiator component is not totally skew",
                     tuple_names({c.c0, c.c0, c.c0}, g), r2);
  }
  return Check::ok("lie2-skew");
}

// Source and target of the Jacobiator as morphisms of c1.
Multilinear jacobiator_source(const Multilinear& b) { return insert(b, b, 0); }
Multilinear jacobiator_target(const Multilinear& b) {
  Multilinear in = insert(b, b, 1);
  return combine({{Q(1), in}, {Q(-1), reorder(in, {1, 0, 2})}});
}

Check lie2_jacobiator_ends(const Lie2Ops& o) {
  const Lie2Algebra& c = o.c;
  const Multilinear src = jacobiator_source(o.b0), tgt = jacobiator_target(o.b0);
  for (auto& g : all_tuples({c.c0, c.c0, c.c0})) {
    Args a = gens_of(c.c0, g);
    QuotientTensor jv = c.jacobiator.value(g);
    QuotientTensor r1 = apply_unary(o.s, jv) - src(a);
    QuotientTensor r2 = apply_unary(o.t, jv) - tgt(a);
    if (!r1.is_zero() || !r2.is_zero())
      return fail_at("lie2-jacobiator-ends", r1.is_zero() ? "wrong target" : "wrong source",
                     tuple_names({c.c0, c.c0, c.c0}, g), r1.is_zero() ? r2 : r1);
  }
  return Check::ok("lie2-jacobiator-ends");
}

Check lie2_naturality(const Lie2Ops& o) {
  const Lie2Algebra& c = o.c;
  const Multilinear src = jacobiator_source(o.b1), tgt = jacobiator_target(o.b1);
  for (int slot = 0; slot < 3; ++slot)
    for (int a = 0; a < c.c1->rank(); ++a)
      for (auto& g : all_tuples({c.c0, c.c0})) {
        Args m(3), sm(3), tm(3);
        int k = 0;
        for (int p = 0; p < 3; ++p) {
          m[p] = p == slot ? gen(c.c1, a) : o.id(gen(c.c0, g[k++]));
          sm[p] = o.src(m[p]);
          tm[p] = o.tgt(m[p]);
        }
        QuotientTensor lhs = o.comp(src(m), o.j(tm));
        QuotientTensor rhs = o.comp(o.j(sm), tgt(m));
        if (!(lhs == rhs))
          return fail_at("lie2-naturality", "naturality fails in slot " + std::to_string(slot + 1),
                         {name_of(m[0]), name_of(m[1]), name_of(m[2])}, lhs - rhs);
      }
  return Check::ok("lie2-naturality");
}

Check lie2_hexagon(const Lie2Ops& o) {
  const Lie2Algebra& c = o.c;
  const Multilinear &b0 = o.b0, &b1 = o.b1, &j = o.j;
  const Multilinear j_b0_1 = insert(j, b0, 1);
  const Multilinear j_b0_2 = insert(j, b0, 2);
  const Multilinear b1_j_1 = insert(b1, j, 1);
  const Multilinear b0b0b0 = insert(insert(b0, b0, 0), b0, 2);
  const Multilinear nested = insert(b0, insert(b0, b0, 1), 1);
  const Multilinear l2 = combine({{Q(1), j_b0_1}, {Q(-1), reorder(j_b0_1, {1, 0, 2, 3})}});
  const Multilinear r3 = combine({{Q(1), reorder(nested, {2, 0, 1, 3})}, {Q(-1), reorder(nested, {2, 1, 0, 3})}});
  for (auto& g : all_tuples({c.c0, c.c0, c.c0, c.c0})) {
    Args x = gens_of(c.c0, g);
    Args ix(4);
    for (int p = 0; p < 4; ++p) ix[p] = o.id(x[p]);
    auto with = [&](int p) {
      Args a = x;
      a[p] = ix[p];
      return a;
    };
    // Left path.
    QuotientTensor s1 = compose_insert(b1, j, with(3), 0);
    QuotientTensor s2 = l2(x);
    QuotientTensor s3 = compose_insert(b1, j, with(0), 1) - reorder(j_b0_2, {1, 2, 0, 3})(x) -
                        reorder(b1_j_1, {1, 0, 2, 3})(with(1)) + reorder(j_b0_2, {0, 2, 1, 3})(x);
    // Right path.
    QuotientTensor t1 = compose_insert(j, b0, x, 0);
    QuotientTensor t2 = apply_unary(o.i, b0b0b0(x)) - reorder(b1_j_1, {2, 0, 1, 3})(with(2));
    QuotientTensor t3 = compose_insert(j, b0, x, 2) - apply_unary(o.i, r3(x));
    const std::vector<std::string> where = tuple_names({c.c0, c.c0, c.c0, c.c0}, g);
    auto composable = [&](const QuotientTensor& a, const QuotientTensor& b) {
      return apply_unary(o.t, a) == apply_unary(o.s, b);
    };
    if (!composable(s1, s2) || !composable(s2, s3) || !composable(t1, t2) || !composable(t2, t3))
      return fail_at("lie2-hexagon", "hexagon arrows are not composable", where);
    QuotientTensor left = o.comp(o.comp(s1, s2), s3);
    QuotientTensor right = o.comp(o.comp(t1, t2), t3);
    if (!(left == right)) return fail_at("lie2-hexagon", "the two composites differ", where, left - right);
  }
  return Check::ok("lie2-hexagon");
}

}  // namespace

std::vector<Check> verify_lie2(const Lie2Algebra& c) {
  const Lie2Ops o(c);
  std::vector<Check> out;
  out.push_back(lie2_source_projection(c));
  out.push_back(lie2_category(o));
  out.push_back(lie2_h_linearity(o));
  out.push_back(lie2_functor(o));
  out.push_back(lie2_skew(o));
  out.push_back(lie2_jacobiator_ends(o));
  out.push_back(lie2_naturality(o));
  out.push_back(lie2_hexagon(o));
  return out;
}

// ---------------------------------------------------------------- Lie-2 morphisms

Lie2Morphism lie2_identity(const Lie2Algebra& c) {
  Lie2Morphism f{identity_table(c.c0, c.c0), identity_table(c.c1, c.c1),
                 PseudoMap::zero(2, 0, {c.c0, c.c0}, c.c1, Symmetry::none)};
  const Multilinear i = as_multilinear(c.i);
  for (auto& g : all_tuples({c.c0, c.c0})) f.f2.set(g, with_module(apply_unary(i, c.bracket0.value(g)), c.c1));
  return f;
}

std::vector<Check> verify_lie2_morphism(const Lie2Morphism& f, const Lie2Algebra& src, const Lie2Algebra& dst) {
  const Lie2Ops a(src), b(dst);
  const Multilinear f0 = as_multilinear(f.f0), f1 = as_multilinear(f.f1), f2 = as_multilinear(f.f2);
  std::vector<Check> out;

  Check functor = Check::ok("lie2-morphism-functor");
  for (int g = 0; g < src.c1->rank() && functor.pass; ++g) {
    ModuleElement m = gen(src.c1, g), fm = apply(f1, m);
    if (!(b.src(fm) == apply(f0, a.src(m))) || !(b.tgt(fm) == apply(f0, a.tgt(m))))
      functor = fail_at("lie2-morphism-functor", "F_1 does not commute with s and t", {src.c1->generators()[g].name});
    for (auto& k : kernel_samples(src)) {
      if (!functor.pass) break;
      ModuleElement n = scaled_sum({{Q(1), a.id(a.tgt(m))}, {Q(1), k}}, src.c1);
      if (!(apply(f1, a.comp(m, n)) == b.comp(fm, apply(f1, n))))
        functor = fail_at("lie2-morphism-functor", "F_1 does not preserve composition", {name_of(m), name_of(n)});
    }
  }
  for (int x = 0; x < src.n0() && functor.pass; ++x) {
    ModuleElement e = gen(src.c0, x);
    if (!(apply(f1, a.id(e)) == b.id(apply(f0, e))))
      functor = fail_at("lie2-morphism-functor", "F_1 does not preserve identities", {src.c0->generators()[x].name});
  }
  out.push_back(functor);

  out.push_back(sweep_mixed("lie2-morphism-ends", {src.c0, src.c0}, [&](const GenTuple& g) {
    Args x = gens_of(src.c0, g);
    QuotientTensor v = f.f2.value(g);
    QuotientTensor r1 = apply_unary(b.s, v) - b.b0({apply(f0, x[0]), apply(f0, x[1])});
    QuotientTensor r2 = apply_unary(b.t, v) - apply_unary(f0, a.b0(x));
    return r1.is_zero() ? r2 : r1;
  }));

  Check nat = Check::ok("lie2-morphism-naturality");
  for (int slot = 0; slot < 2 && nat.pass; ++slot)
    for (int m = 0; m < src.c1->rank() && nat.pass; ++m)
      for (int y = 0; y < src.n0() && nat.pass; ++y) {
        ModuleElement mor = gen(src.c1, m), obj = gen(src.c0, y);
        Args fargs(2), sargs(2), targs(2), bargs(2);
        fargs[slot] = apply(f1, mor);
        fargs[1 - slot] = b.id(apply(f0, obj));
        sargs[slot] = a.src(mor);
        sargs[1 - slot] = obj;
        targs[slot] = a.tgt(mor);
        targs[1 - slot] = obj;
        bargs[slot] = mor;
        bargs[1 - slot] = a.id(obj);
        QuotientTensor lhs = b.comp(b.b1(fargs), f2(targs));
        QuotientTensor rhs = b.comp(f2(sargs), apply_unary(f1, a.b1(bargs)));
        if (!(lhs == rhs))
          nat = fail_at("lie2-morphism-naturality", "F_2 is not natural in slot " + std::to_string(slot + 1),
                        {name_of(mor), name_of(obj)}, lhs - rhs);
      }
  out.push_back(nat);

  const Multilinear b1_f2_1 = insert(b.b1, f2, 1);
  const Multilinear f2_b0_1 = insert(f2, a.b0, 1);
  Check square = Check::ok("lie2-morphism-coherence");
  for (auto& g : all_tuples({src.c0, src.c0, src.c0})) {
    Args x = gens_of(src.c0, g);
    Args fx(3), ifx(3);
    for (int p = 0; p < 3; ++p) {
      fx[p] = apply(f0, x[p]);
      ifx[p] = b.id(fx[p]);
    }
    QuotientTensor a1 = b.j(fx);
    QuotientTensor a2 = compose_insert(b.b1, f2, Args{ifx[0], x[1], x[2]}, 1) -
                        reorder(b1_f2_1, {1, 0, 2})(Args{x[0], ifx[1], x[2]});
    QuotientTensor a3 = f2_b0_1(x) - reorder(f2_b0_1, {1, 0, 2})(x);
    QuotientTensor d1 = compose_insert(b.b1, f2, Args{x[0], x[1], ifx[2]}, 0);
    QuotientTensor d2 = compose_insert(f2, a.b0, x, 0);
    QuotientTensor d3 = apply_unary(f1, src.jacobiator.value(g));
    QuotientTensor top = b.comp(b.comp(a1, a2), a3);
    QuotientTensor left = b.comp(b.comp(d1, d2), d3);
    if (!(top == left)) {
      square = fail_at("lie2-morphism-coherence", "the coherence square does not commute",
                       tuple_names({src.c0, src.c0, src.c0}, g), top - left);
      break;
    }
  }
  out.push_back(square);
  return out;
}

Lie2Morphism compose_lie2(const Lie2Morphism& g, const Lie2Morphism& f, const Lie2Algebra& dst) {
  if (g.f0.sources[0]->rank() != f.f0.target->rank() || g.f1.sources[0]->rank() != f.f1.target->rank())
    throw std::invalid_argument("compose_lie2: codomain of f is not the domain of g");
  const Lie2Ops d(dst);
  const ModulePtr& c0 = f.f0.sources[0];
  Lie2Morphism h{compose_unary(g.f0, f.f0), compose_unary(g.f1, f.f1),
                 PseudoMap::zero(2, 0, {c0, c0}, dst.c1, Symmetry::none)};
  const Multilinear f0 = as_multilinear(f.f0), g1 = as_multilinear(g.f1);
  const Multilinear g2ff = insert(insert(as_multilinear(g.f2), f0, 0), f0, 1);
  for (auto& t : all_tuples({c0, c0})) {
    Args x = gens_of(c0, t);
    h.f2.set(t, d.comp(g2ff(x), apply_unary(g1, f.f2.value(t))));
  }
  return h;
}

bool same_lie2_morphism(const Lie2Morphism& a, const Lie2Morphism& b) {
  return same_values(a.f0, b.f0) && same_values(a.f1, b.f1) && same_values(a.f2, b.f2);
}

bool same_lie2(const Lie2Algebra& a, const Lie2Algebra& b) {
  return same_table(a.s, b.s) && same_table(a.t, b.t) && same_table(a.i, b.i) && same_table(a.bracket0, b.bracket0) &&
         same_table(a.bracket1, b.bracket1) && same_table(a.jacobiator, b.jacobiator);
}

// ---------------------------------------------------------------- functors T and S

Lie2Algebra two_term_to_lie2(const TwoTermLInfty& t) {
  const int n0 = t.n0();
  const TwoTermOps o(t);
  Lie2Algebra c;
  c.c0 = t.l0;
  c.k = with_degree(t.l1, 0);
  c.c1 = direct_sum("C1(" + t.module->name() + ")", c.c0, c.k);
  c.s = unary_table(c.c1, c.c0, 0,
                    [&](int g) { return g < n0 ? generator_value(c.c0, g) : QuotientTensor::zero(c.c0, 1); });
  c.t = unary_table(c.c1, c.c0, 0, [&](int g) {
    return g < n0 ? generator_value(c.c0, g) : select(t.beta1.value({g}), c.c0, 0, n0, 0);
  });
  c.i = unary_table(c.c0, c.c1, 0, [&](int g) { return generator_value(c.c1, g); });
  c.bracket0 = PseudoMap::zero(2, 0, {c.c0, c.c0}, c.c0, t.beta2.symmetry);
  for (auto& g : (t.beta2.symmetry == Symmetry::none ? all_tuples({c.c0, c.c0}) : sorted_tuples(c.c0, 2)))
    c.bracket0.set(g, select(t.beta2.value(g), c.c0, 0, n0, 0));
  // [(x, u) * (y, v)] = (b2(x, y), b2(x, v) + b2(u, y) + b2(b1 u, v)) on generators.
  c.bracket1 = PseudoMap::zero(2, 0, {c.c1, c.c1}, c.c1, Symmetry::none);
  for (auto& g : all_tuples({c.c1, c.c1})) {
    QuotientTensor v = retarget(t.beta2.value(g), c.c1);
    if (g[0] >= n0 && g[1] >= n0)
      v += retarget(compose_insert(o.b2, o.b1, gens_of(t.module, g), 0), c.c1);
    c.bracket1.set(g, std::move(v));
  }
  c.jacobiator = PseudoMap::zero(3, 0, {c.c0, c.c0, c.c0}, c.c1, Symmetry::none);
  for (auto& g : all_tuples({c.c0, c.c0, c.c0})) {
    Args a = gens_of(t.module, g);
    QuotientTensor v = retarget(compose_insert(o.b2, o.b2, a, 0), c.c1);
    v += retarget(t.beta3.value(g), c.c1);
    c.jacobiator.set(g, std::move(v));
  }
  return c;
}

TwoTermLInfty lie2_to_two_term(const Lie2Algebra& c) {
  Check proj = lie2_source_projection(c);
  if (!proj.pass) throw std::invalid_argument("lie2_to_two_term: " + proj.note);
  const Lie2Ops o(c);
  const int n0 = c.n0(), n = c.c1->rank();
  TwoTermLInfty t = make_two_term(c.c0, c.k);
  const ModulePtr& e = t.module;
  for (int u = n0; u < n; ++u) t.beta1.set({u}, retarget(c.t.value({u}), e));
  for (auto& g : sorted_tuples(e, 2)) {
    if (g[1] < n0) {
      t.beta2.set(g, retarget(c.bracket0.value(g), e));
    } else if (g[0] < n0) {
      QuotientTensor v = o.b1({o.id(gen(c.c0, g[0])), gen(c.c1, g[1])});
      t.beta2.set(g, select(v, e, n0, n, 0));
    }
  }
  for (auto& g : sorted_tuples(c.c0, 3)) {
    QuotientTensor v = c.jacobiator.value(g);
    t.beta3.set(g, select(v - apply_unary(o.i, apply_unary(o.s, v)), e, n0, n, 0));
  }
  return t;
}

Lie2Morphism two_term_morphism_to_lie2(const TwoTermMorphism& m, const TwoTermLInfty& src,
                                       const TwoTermLInfty& dst) {
  const Lie2Algebra c = two_term_to_lie2(src), d = two_term_to_lie2(dst);
  const int m0 = dst.n0();
  const Multilinear f = as_multilinear(m.f);
  const Multilinear b2ff = insert(insert(as_multilinear(dst.beta2), f, 0), f, 1);
  Lie2Morphism out{unary_table(c.c0, d.c0, 0, [&](int g) { return select(m.f.value({g}), d.c0, 0, m0, 0); }),
                   unary_table(c.c1, d.c1, 0, [&](int g) { return retarget(m.f.value({g}), d.c1); }),
                   PseudoMap::zero(2, 0, {c.c0, c.c0}, d.c1, Symmetry::none)};
  for (auto& g : all_tuples({c.c0, c.c0})) {
    Args x = gens_of(src.module, g);
    QuotientTensor v = retarget(select(b2ff(x), dst.module, 0, m0, 0), d.c1);
    v += retarget(m.f2.value(g), d.c1);
    out.f2.set(g, std::move(v));
  }
  return out;
}

TwoTermMorphism lie2_morphism_to_two_term(const Lie2Morphism& m, const Lie2Algebra& src, const Lie2Algebra& dst) {
  const TwoTermLInfty a = lie2_to_two_term(src), b = lie2_to_two_term(dst);
  const Lie2Ops d(dst);
  const int n0 = src.n0(), m0 = dst.n0(), mn = dst.c1->rank();
  TwoTermMorphism out{unary_table(a.module, b.module, 0,
                                  [&](int g) {
                                    return g < n0 ? retarget(m.f0.value({g}), b.module)
                                                  : select(m.f1.value({g}), b.module, m0, mn, 0);
                                  }),
                      PseudoMap::zero(2, 1, {a.module, a.module}, b.module, Symmetry::skew)};
  for (auto& g : sorted_tuples(src.c0, 2)) {
    QuotientTensor v = m.f2.value(g);
    out.f2.set(g, select(v - apply_unary(d.i, apply_unary(d.s, v)), b.module, m0, mn, 0));
  }
  return out;
}

Lie2Morphism lambda_comparison(const Lie2Algebra& c) {
  const Lie2Algebra ts = two_term_to_lie2(lie2_to_two_term(c));
  const int n0 = c.n0();
  const Multilinear i = as_multilinear(c.i);
  Lie2Morphism f{identity_table(ts.c0, c.c0), unary_table(ts.c1, c.c1, 0,
                                                          [&](int g) {
                                                            return g < n0 ? c.i.value({g})
                                                                          : generator_value(c.c1, g);
                                                          }),
                 PseudoMap::zero(2, 0, {ts.c0, ts.c0}, c.c1, Symmetry::none)};
  for (auto& g : all_tuples({ts.c0, ts.c0})) f.f2.set(g, apply_unary(i, c.bracket0.value(g)));
  return f;
}

Lie2Morphism lambda_inverse(const Lie2Algebra& c) {
  const Lie2Algebra ts = two_term_to_lie2(lie2_to_two_term(c));
  const Lie2Ops o(c);
  const int n0 = c.n0(), n = c.c1->rank();
  const Multilinear its = as_multilinear(ts.i);
  Lie2Morphism f{identity_table(c.c0, ts.c0), unary_table(c.c1, ts.c1, 0,
                                                          [&](int g) {
                                                            QuotientTensor v = generator_value(c.c1, g);
                                                            QuotientTensor sv = apply_unary(o.s, v);
                                                            QuotientTensor rest = v - apply_unary(o.i, sv);
                                                            return apply_unary(its, retarget(sv, ts.c0)) +
                                                                   select(rest, ts.c1, n0, n, 0);
                                                          }),
                 PseudoMap::zero(2, 0, {c.c0, c.c0}, ts.c1, Symmetry::none)};
  for (auto& g : all_tuples({c.c0, c.c0})) f.f2.set(g, apply_unary(its, ts.bracket0.value(g)));
  return f;
}

Lie2Algebra twist_identities(const Lie2Algebra& c, const PseudoMap& phi) {
  const int n0 = c.n0();
  // psi(x, u) = (x, u + phi(x)) and its inverse (x, u) -> (x, u - phi(x)).
  auto shifted = [&](int sign) {
    return unary_table(c.c1, c.c1, 0, [&](int g) {
      QuotientTensor v = generator_value(c.c1, g);
      if (g < n0) v += Q(sign) * retarget(phi.value({g}), c.c1, n0);
      return v;
    });
  };
  const PseudoMap psi = shifted(1), psi_inv = shifted(-1);
  const Multilinear p = as_multilinear(psi), pinv = as_multilinear(psi_inv), b1 = as_multilinear(c.bracket1);
  Lie2Algebra d = c;
  d.s = compose_unary(c.s, psi_inv);
  d.t = compose_unary(c.t, psi_inv);
  d.i = compose_unary(psi, c.i);
  d.bracket1 = PseudoMap::zero(2, 0, {c.c1, c.c1}, c.c1, Symmetry::none);
  for (auto& g : all_tuples({c.c1, c.c1})) {
    Args a{apply(pinv, gen(c.c1, g[0])), apply(pinv, gen(c.c1, g[1]))};
    d.bracket1.set(g, apply_unary(p, b1(a)));
  }
  d.jacobiator = PseudoMap::zero(3, 0, {c.c0, c.c0, c.c0}, c.c1, Symmetry::none);
  for (auto& [g, v] : c.jacobiator.table) d.jacobiator.set(g, apply_unary(p, v));
  return d;
}

}  // namespace hpseudo
