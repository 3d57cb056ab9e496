// One PASS/FAIL line per acceptance criterion; exits nonzero when any criterion fails.
#include "../unit/support.hpp"

#include "hpseudo/twoterm.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>

using namespace hpseudo;
using namespace hpseudo::test;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

// ---- 1 -------------------------------------------------------------------

std::vector<Monomial> basis(const AlgPtr& a, int max_degree) {
  std::vector<Monomial> out;
  for (int g = 0; g < a->group().size(); ++g)
    for (int e = 0; e <= (a->nvars() ? max_degree : 0); ++e) out.push_back(mono(a, a->nvars() ? std::vector<int>{e} : std::vector<int>{}, g));
  return out;
}

Poly contract(const AlgPtr& a, const Monomial& m, bool left, const std::function<Poly(const Monomial&)>& f) {
  Poly out;
  for (auto& [t, c] : a->comul(m, 2)) {
    Poly x = left ? a->mul(f(t[0]), Poly{{t[1], Q(1)}}) : a->mul(Poly{{t[0], Q(1)}}, f(t[1]));
    for (auto& [k, v] : x) add_term(out, k, c * v);
  }
  return out;
}

void hopf_axioms(Outcome& o, const std::string& name, const AlgPtr& a, int max_degree) {
  auto b = basis(a, max_degree);
  for (auto& m : b) {
    HElement x{a, Poly{{m, Q(1)}}};
    TensorElement d2 = comul(x, 2), d3 = comul(x, 3);
    o.require(delta_pi(d2, {0, 0, 1}).terms == d3.terms && delta_pi(d2, {0, 1, 1}).terms == d3.terms,
              name + ": coassociativity");
    o.require(permute(d2, {1, 0}).terms == d2.terms, name + ": cocommutativity");
    auto eps = [&](const Monomial& u) { return Poly{{a->one(), a->counit(u)}}; };
    auto anti = [&](const Monomial& u) { return a->antipode(u); };
    Poly self{{m, Q(1)}}, unit;
    if (a->counit(m) != 0) unit[a->one()] = a->counit(m);
    o.require(contract(a, m, true, eps) == self && contract(a, m, false, eps) == self, name + ": counit");
    o.require(contract(a, m, true, anti) == unit && contract(a, m, false, anti) == unit, name + ": antipode");
  }
  for (auto& m : b)
    for (auto& n : b) {
      if (m.degree() + n.degree() > max_degree) continue;
      HElement x{a, Poly{{m, Q(1)}}}, y{a, Poly{{n, Q(1)}}};
      o.require(comul(mul(x, y), 2).terms == mul(comul(x, 2), comul(y, 2)).terms &&
                    counit(mul(x, y)) == counit(x) * counit(y),
                name + ": bialgebra compatibility");
    }
}

AlgPtr d_z2() { return HopfAlgebra::smash(fixtures::q_d(), FiniteGroup::cyclic(2), {{{Q(1)}}, {{Q(-1)}}}); }

Outcome criterion1() {
  Outcome o;
  hopf_axioms(o, "Q[d]", fixtures::q_d(), 6);
  hopf_axioms(o, "Q[Z/2]", HopfAlgebra::group_algebra(FiniteGroup::cyclic(2)), 0);
  hopf_axioms(o, "Q[S3]", HopfAlgebra::group_algebra(FiniteGroup::symmetric3()), 0);
  hopf_axioms(o, "Q[d]#Q[Z/2]", d_z2(), 4);
  return o;
}

// ---- 2 -------------------------------------------------------------------

bool representative_independent(const ModulePtr& mod, int n, std::mt19937& rng) {
  const AlgPtr& a = mod->algebra();
  Tuple f;
  for (int i = 0; i < n; ++i) f.push_back(random_monomial(a, 2, rng));
  Monomial h = random_monomial(a, 3, rng);
  ModKey m{a->one(), std::uniform_int_distribution<int>(0, mod->rank() - 1)(rng)};
  std::vector<RawTerm> lhs;
  for (auto& [t, c] : a->comul(h, n)) {
    std::vector<std::pair<Tuple, Q>> acc{{Tuple{}, c}};
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<Tuple, Q>> next;
      for (auto& [pre, w] : acc)
        for (auto& [mm, v] : a->mul(f[i], t[i])) {
          Tuple p = pre;
          p.push_back(mm);
          next.push_back({p, w * v});
        }
      acc = std::move(next);
    }
    for (auto& [tup, w] : acc) lhs.push_back({tup, m, w});
  }
  std::vector<RawTerm> rhs;
  for (auto& [k, c] : mod->act(h, m)) rhs.push_back({f, k, c});
  return normalize(lhs, mod, n) == normalize(rhs, mod, n);
}

Outcome criterion2() {
  Outcome o;
  std::mt19937 rng(2024);
  AlgPtr s = d_z2();
  std::vector<ModulePtr> mods{
      GradedHModule::free_module("F", fixtures::q_d(), {{"a", 0}, {"b", 1}}),
      GradedHModule::free_module("G", fixtures::q_d2(), {{"a", 0}}),
      GradedHModule::free_module("S", s, {{"a", 0}}),
      GradedHModule::equivariant("E", s, {{"a", 0}, {"b", 0}}, {{{Q(1), Q(0)}, {Q(0), Q(1)}}, {{Q(0), Q(1)}, {Q(1), Q(0)}}}),
  };
  int passed = 0;
  for (int i = 0; i < 200; ++i) passed += representative_independent(mods[i % 4], 2 + (i / 4) % 2, rng);
  o.require(passed == 200, std::to_string(passed) + "/200 representative-independence checks");
  for (int i = 0; i < 40; ++i) {
    const ModulePtr& m = mods[i % 4];
    const int n = 2 + i % 2;
    QuotientTensor q = random_quotient(m, n, 3, rng);
    o.require(normalize(embed(q), m, n) == q, "canonical forms are not fixed points");
    std::vector<int> dest(n);
    std::iota(dest.begin(), dest.end(), 0);
    std::shuffle(dest.begin(), dest.end(), rng);
    o.require(relabel(relabel(q, dest), inverse_perm(dest)) == q, "relabel round trip");
    TensorElement x{m->algebra(), n, {}}, y{m->algebra(), n, {}};
    Tuple tx, ty;
    for (int k = 0; k < n; ++k) {
      tx.push_back(random_monomial(m->algebra(), 2, rng));
      ty.push_back(random_monomial(m->algebra(), 2, rng));
    }
    add_term(x.terms, tx, random_q(rng));
    add_term(y.terms, ty, random_q(rng));
    o.require(act(mul(x, y), q) == act(x, act(y, q)), "the tensor action is not an action");
  }
  return o;
}

// ---- 3 -------------------------------------------------------------------

Outcome criterion3() {
  Outcome o;
  LInftyStructure v = fixtures::vir();
  o.require(all_pass(check_structure(v)), "Virasoro skew-symmetry");
  Check j = verify_higher_jacobi(v, 3), m = verify_mc(v, 3);
  o.require(j.pass && m.pass, "Virasoro Jacobi or Maurer-Cartan fails");
  LInftyStructure bad = fixtures::vir_mutant();
  Check bj = verify_higher_jacobi(bad, 3), bm = verify_mc(bad, 3);
  o.require(!bj.pass && !bm.pass, "the mutant passes");
  o.require(bj.level == 3 && bm.level == 3, "the mutant fails at different N");
  return o;
}

// ---- 4 -------------------------------------------------------------------

Outcome criterion4() {
  Outcome o;
  LInftyStructure cur = fixtures::cur_sl2();
  o.require(verify_higher_jacobi(cur).pass && all_pass(check_structure(cur)), "Cur(sl2) fails");
  // [e, h] = -2e, [e, f] = h, [h, f] = -2f
  StructureConstants sc;
  sc[2][{0, 1}][0] = -2;
  sc[2][{0, 2}][1] = 1;
  sc[2][{1, 2}][2] = -2;
  LInftyStructure hand = classical("sl2", {{"e", 0}, {"h", 0}, {"f", 0}}, sc);
  LInftyStructure ann = annihilation(cur);
  o.require(ann.module->algebra()->nvars() == 0, "annihilation keeps variables");
  o.require(same_values(ann.ops.at(2), hand.ops.at(2)), "annihilation(Cur(sl2)) differs from sl2");
  for (auto& [k, f] : annihilation(fixtures::vir()).ops) o.require(f.is_zero(), "annihilation(Vir) is not abelian");
  return o;
}

// ---- 5 -------------------------------------------------------------------

Outcome criterion5() {
  Outcome o;
  std::mt19937 rng(101);
  LInftyStructure cur = fixtures::cur_sl2();
  Representation ad = fixtures::adjoint(cur);
  const AlgPtr& a = cur.module->algebra();
  for (int i = 0; i < 30; ++i) {
    const int n = i % 3;
    PseudoMap d;
    if (n == 0) {
      ModuleElement u = act_module(HElement{a, {{random_monomial(a, 2, rng), random_q(rng)}}},
                                   ModuleElement::generator(ad.module, static_cast<int>(rng() % 3)));
      d = differential0(cur, ad, u);
    } else {
      d = differential(cur, ad, random_cochain(cur, ad, n, 2, rng));
    }
    o.require(differential(cur, ad, d).is_zero(), "delta^2 != 0 at degree " + std::to_string(n));
  }
  // hand values: (delta e)(h) = [h, e] = 2e, and (delta L)(L) = -dL on Vir
  const int e = cur.module->index_of("e"), h = cur.module->index_of("h");
  QTerms two_e;
  add_term(two_e, QKey{{}, ad.module->key(e)}, Q(2));
  o.require(differential0(cur, ad, ModuleElement::generator(ad.module, e)).value({h}).terms == two_e, "(delta e)(h)");
  LInftyStructure vir = fixtures::vir();
  Representation vad = fixtures::adjoint(vir);
  QTerms minus_dl;
  add_term(minus_dl, QKey{{}, ModKey{vir.module->algebra()->variable(0), 0}}, Q(-1));
  o.require(differential0(vir, vad, ModuleElement::generator(vad.module, 0)).value({0}).terms == minus_dl,
            "(delta L)(L)");
  for (int n = 1; n <= 2; ++n)
    for (int w = 0; w <= 1; ++w) {
      CohomologyWindow c = cohomology_dim(cur, ad, n, w);
      o.require(c.kernel == c.window_dim - c.rank && c.cohomology == c.kernel - c.image && c.image <= c.kernel,
                "window rank-nullity");
    }
  // classical sl2 over Q: H^3 with trivial coefficients is one-dimensional, the adjoint ones vanish
  LInftyStructure s = annihilation(cur);
  Representation triv{GradedHModule::free_module("Q", s.module->algebra(), {{"one", 0}}), {}};
  triv.actions.emplace(2, PseudoMap::zero(2, 0, {s.module, triv.module}, triv.module));
  o.require(cohomology_dim(s, triv, 3, 0).cohomology == 1, "H^3(sl2, Q) != 1");
  o.require(cohomology_dim(s, fixtures::adjoint(s), 2, 0).cohomology == 0, "H^2(sl2, sl2) != 0");
  return o;
}

// ---- 6 -------------------------------------------------------------------

Outcome criterion6() {
  Outcome o;
  LInftyStructure l = fixtures::cur_sl2();
  Representation ad = fixtures::adjoint(l);
  o.require(verify_higher_jacobi(semidirect(l, ad)).pass, "semidirect with the adjoint module fails");
  std::mt19937 rng(31);
  int failing = 0;
  for (int i = 0; i < 10; ++i) {
    Representation p = ad;
    PseudoMap& g = p.actions.at(2);
    auto tuples = all_tuples(g.sources);
    const GenTuple t = tuples[rng() % tuples.size()];
    QuotientTensor v = g.value(t);
    if (rng() % 3) add_term(v.terms, QKey{{random_monomial(l.module->algebra(), 1, rng)}, g.target->key(static_cast<int>(rng() % 3))}, random_q(rng));
    g.table[t] = v;
    const bool rep = verify_representation(l, p).pass, sd = verify_higher_jacobi(semidirect(l, p)).pass;
    o.require(rep == sd, "perturbation " + std::to_string(i) + ": representation and semidirect disagree");
    failing += !rep;
  }
  o.require(failing > 0, "no perturbation broke the representation");
  return o;
}

// ---- 7 -------------------------------------------------------------------

Outcome criterion7() {
  Outcome o;
  for (unsigned seed = 1; seed <= 10; ++seed) {
    // beta_3 = delta(b) for a random 2-cochain b
    LInftyStructure l = fixtures::cur_sl2();
    Representation m = fixtures::adjoint(l);
    std::mt19937 rng(seed);
    PseudoMap b = random_cochain(l, m, 2, 1, rng);
    TwoTermLInfty good = triple_to_skeletal({l, m, differential(l, m, b)});
    o.require(all_pass(verify_two_term(good)), "coboundary seed " + std::to_string(seed) + " fails");
    PseudoMap theta;
    do theta = random_cochain(l, m, 3, 1, rng);
    while (is_cocycle(l, m, theta).pass);
    bool v_fails = false, others_pass = true;
    for (auto& c : verify_two_term(triple_to_skeletal({l, m, theta}))) {
      if (c.id == "two-term-v") v_fails = !c.pass;
      else others_pass = others_pass && c.pass;
    }
    o.require(v_fails && others_pass, "non-closed seed " + std::to_string(seed) + " does not fail exactly (v)");
  }
  return o;
}

// ---- 8 -------------------------------------------------------------------

PseudoMap scaled_where(PseudoMap f, const Q& c, const std::function<bool(const GenTuple&)>& pred) {
  for (auto& [t, v] : f.table)
    if (pred(t)) v = c * v;
  return f;
}

Outcome criterion8() {
  Outcome o;
  for (const CrossedModule& x : {fixtures::heis_center_crossed(), fixtures::sl2_identity_crossed()}) {
    CrossedModule y = strict_to_crossed(crossed_to_strict(x));
    o.require(same_table(y.phi, x.phi) && same_table(y.gamma, x.gamma) && same_table(*y.l.op(2), *x.l.op(2)) &&
                  same_table(*y.lp.op(2), *x.lp.op(2)),
              "crossed round trip changes a table");
    TwoTermLInfty t = crossed_to_strict(x);
    o.require(same_two_term(crossed_to_strict(strict_to_crossed(t)), t), "strict round trip changes a table");
  }
  auto all = [](const GenTuple&) { return true; };
  std::vector<TwoTermLInfty> cases{fixtures::strict_heis(), fixtures::strict_sl2()};
  TwoTermLInfty m = fixtures::strict_sl2();
  m.beta1 = scaled_where(m.beta1, Q(2), all);
  cases.push_back(m);
  m = fixtures::strict_sl2();
  m.beta2 = scaled_where(m.beta2, Q(2), [&](const GenTuple& g) { return !m.in_l0(g[1]); });
  cases.push_back(m);
  m = fixtures::strict_sl2();
  m.beta2 = scaled_where(m.beta2, Q(-1), [&](const GenTuple& g) { return !m.in_l0(g[1]); });
  cases.push_back(m);
  m = fixtures::strict_sl2();
  m.beta2 = scaled_where(m.beta2, Q(3), [&](const GenTuple& g) { return m.in_l0(g[1]); });
  cases.push_back(m);
  m = fixtures::strict_heis();
  m.beta1 = scaled_where(m.beta1, Q(0), all);
  cases.push_back(m);
  int failing = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const bool strict = all_pass(verify_two_term(cases[i]));
    const bool crossed = all_pass(verify_crossed_module(strict_to_crossed(cases[i])));
    o.require(strict == crossed, "verdicts differ on case " + std::to_string(i));
    failing += !strict;
  }
  o.require(failing >= 3, "fewer than three mutants fail");
  return o;
}

// ---- 9 -------------------------------------------------------------------

Outcome criterion9() {
  Outcome o;
  AInftyStructure a = fixtures::ainfty_mat2();
  o.require(verify_ainfty(a).pass, "direct A-infinity identities fail");
  o.require(verify_ainfty_mc(a).pass, "[[nu, nu]] != 0");
  // gl2 by the commutator of matrix units, in the order E11, E12, E21, E22
  StructureConstants sc;
  for (int x = 0; x < 4; ++x)
    for (int y = x + 1; y < 4; ++y) {
      const int i = x / 2, j = x % 2, k = y / 2, l = y % 2;
      if (j == k) sc[2][{x, y}][2 * i + l] += 1;
      if (l == i) sc[2][{x, y}][2 * k + j] -= 1;
    }
  LInftyStructure gl2 = classical("gl2", {{"E11", 0}, {"E12", 0}, {"E21", 0}, {"E22", 0}}, sc);
  o.require(same_values(skew_symmetrize_ainfty(a).ops.at(2), current(gl2, fixtures::q_d()).ops.at(2)),
            "skew-symmetrization differs from Cur(gl2)");
  std::mt19937 rng(11);
  ModulePtr w = suspend(GradedHModule::free_module("A", fixtures::q_d(), {{"a", 0}, {"b", 0}, {"u", 1}, {"v", -1}}));
  for (int trial = 0; trial < 10; ++trial) {
    MapSum nu{{1, random_map(w, 1, -1, rng)}, {2, random_map(w, 2, -1, rng)}};
    MapSum theta{{1, random_map(w, 1, -1, rng)}, {2, random_map(w, 2, -1, rng)}, {3, random_map(w, 3, -1, rng)}};
    MapSum lhs = sym_projection(assoc_bracket(nu, theta, -1, -1, 4));
    MapSum rhs = mc_bracket(sym_projection(nu), sym_projection(theta), -1, -1, 4);
    bool ok = lhs.size() == rhs.size();
    for (auto& [k, f] : lhs) ok = ok && rhs.count(k) && same_values(f, rhs.at(k));
    o.require(ok, "symmetrization law fails on pair " + std::to_string(trial));
  }
  return o;
}

// ---- 10 ------------------------------------------------------------------

Outcome criterion10() {
  Outcome o;
  for (const TwoTermLInfty& t : {fixtures::skeletal_cb(), fixtures::strict_heis()}) {
    Lie2Algebra c = two_term_to_lie2(t);
    o.require(all_pass(verify_lie2(c)), "T output fails verify_lie2");
    o.require(same_two_term(lie2_to_two_term(c), t), "S o T is not the identity");
    std::mt19937 rng(12);
    PseudoMap phi = PseudoMap::zero(1, 0, {c.c0}, c.k);
    for (int g = 0; g < c.c0->rank(); ++g)
      phi.set({g}, normalize({{Tuple{random_monomial(c.c0->algebra(), 1, rng)},
                               c.k->key(static_cast<int>(rng() % c.k->rank())), random_q(rng)}},
                             c.k, 1));
    Lie2Algebra twisted = twist_identities(c, phi);
    o.require(all_pass(verify_lie2(twisted)), "twisted Lie-2 algebra fails");
    Lie2Algebra tsc = two_term_to_lie2(lie2_to_two_term(twisted));
    Lie2Morphism lam = lambda_comparison(twisted), inv = lambda_inverse(twisted);
    o.require(all_pass(verify_lie2_morphism(lam, tsc, twisted)) && all_pass(verify_lie2_morphism(inv, twisted, tsc)),
              "Lambda is not a morphism");
    o.require(same_lie2_morphism(compose_lie2(lam, inv, twisted), lie2_identity(twisted)) &&
                  same_lie2_morphism(compose_lie2(inv, lam, tsc), lie2_identity(tsc)),
              "Lambda is not invertible");
  }
  bool witnessed = false;
  for (auto& ch : verify_lie2(two_term_to_lie2(fixtures::skeletal_mutant())))
    witnessed = witnessed || (!ch.pass && !ch.tuple.empty());
  o.require(witnessed, "the Jacobiator mutant has no failure witness");
  return o;
}

// ---- 11 ------------------------------------------------------------------

Outcome criterion11() {
  Outcome o;
  LInftyStructure v = fixtures::vir();
  o.require(all_pass(verify_gamma_action(v, fixtures::vir_z2())), "the Z/2 action fails");
  LInftyStructure lifted = smash_lift(v, fixtures::vir_z2());
  o.require(lifted.module->algebra()->group().size() == 2 && lifted.module->algebra()->nvars() == 1,
            "lift is not over Q[d]#Q[Z/2]");
  o.require(verify_higher_jacobi(lifted).pass && all_pass(check_structure(lifted)), "lifted structure fails");
  o.require(!all_pass(verify_gamma_action(v, fixtures::vir_z2_mutant())), "the scaling mutant passes");
  return o;
}

// ---- 12 ------------------------------------------------------------------

Outcome criterion12() {
  Outcome o;
  RankOne r = fixtures::rank_one_vir();
  auto agree = [](const RankOne& x) { return all_pass(rank_one_verify(x)) == verify_higher_jacobi(rank_one_structure(x)).pass; };
  o.require(all_pass(rank_one_verify(r)) && agree(r), "rank-one-vir");
  std::mt19937 rng(17);
  for (int i = 0; i < 5; ++i) {
    RankOne p = r;
    TensorElement& t = p.alpha.at({0, 0});
    Monomial x = random_monomial(r.alg, 2, rng), y = random_monomial(r.alg, 2, rng);
    Q c = random_q(rng);
    add_term(t.terms, Tuple{x, y}, c);
    add_term(t.terms, Tuple{y, x}, -c);
    o.require(agree(p), "perturbation " + std::to_string(i) + " disagrees");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    double limit;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"Hopf axioms", 1, criterion1},
      {"quotient canonical form", 5, criterion2},
      {"Virasoro Jacobi and Maurer-Cartan", 2, criterion3},
      {"current functor and annihilation", 2, criterion4},
      {"cohomology", 10, criterion5},
      {"semidirect iff representation", 10, criterion6},
      {"skeletal dictionary", 10, criterion7},
      {"strict dictionary", 5, criterion8},
      {"A-infinity and skew-symmetrization", 10, criterion9},
      {"Lie-2 equivalence", 30, criterion10},
      {"Gamma action and smash lift", 5, criterion11},
      {"rank-one cross-validation", 5, criterion12},
  };
  int failures = 0, index = 0;
  for (auto& c : criteria) {
    ++index;
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs >= c.limit) {
      o.ok = false;
      o.detail = "over the time limit";
    }
    failures += !o.ok;
    std::printf("%s criterion %2d: %s (%.2f s, limit %.0f s)%s%s\n", o.ok ? "PASS" : "FAIL", index, c.title, secs,
                c.limit, o.ok ? "" : " -- ", o.detail.c_str());
  }
  std::printf("%d of 12 criteria pass\n", 12 - failures);
  return failures ? 1 : 0;
}
