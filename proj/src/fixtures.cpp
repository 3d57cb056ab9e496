#include "hpseudo/fixtures.hpp"

namespace hpseudo::fixtures {

AlgPtr q_d() {
  static const AlgPtr a = HopfAlgebra::polynomial({"d"});
  return a;
}

AlgPtr q_d2() {
  static const AlgPtr a = HopfAlgebra::polynomial({"d1", "d2"});
  return a;
}

LambdaTable vir_lambda() {
  ModulePtr m = GradedHModule::free_module("Vir", q_d(), {{"L", 0}});
  LambdaTable t{m, {}, {{2, Symmetry::skew}}};
  t.ops[2][{0, 0}] = {LambdaTerm{{0}, 1, 0, Q(1)}, LambdaTerm{{1}, 0, 0, Q(2)}};
  return t;
}

LInftyStructure vir() { return conformal_to_pseudo(vir_lambda()); }

LInftyStructure vir_mutant() {
  LInftyStructure s = vir();
  const ModulePtr& m = s.module;
  const AlgPtr& a = m->algebra();
  PseudoMap f = PseudoMap::zero(2, 0, {m, m}, m, Symmetry::none);
  // (1 (x) d + d (x) 1) (x)_H L = (1 (x) 1) (x)_H dL in canonical form
  QuotientTensor q = QuotientTensor::zero(m, 2);
  ModKey dl{a->variable(0), 0};
  add_term(q.terms, QKey{{a->one()}, dl}, Q(1));
  f.set({0, 0}, std::move(q));
  s.ops.clear();
  s.ops.emplace(2, std::move(f));
  return s;
}

LInftyStructure sl2() {
  // e = 0, h = 1, f = 2
  StructureConstants c;
  c[2][{0, 1}] = {{0, Q(-2)}};
  c[2][{0, 2}] = {{1, Q(1)}};
  c[2][{1, 2}] = {{2, Q(-2)}};
  return classical("sl2", {{"e", 0}, {"h", 0}, {"f", 0}}, c);
}

LInftyStructure heisenberg() {
  StructureConstants c;
  c[2][{0, 1}] = {{2, Q(1)}};
  return classical("heis", {{"x", 0}, {"y", 0}, {"z", 0}}, c);
}

namespace {

// E_ij has index 2 i + j for i, j in {0, 1}.
int e_index(int i, int j) { return 2 * i + j; }

std::vector<Generator> mat2_basis() { return {{"E11", 0}, {"E12", 0}, {"E21", 0}, {"E22", 0}}; }

}  // namespace

LInftyStructure gl2() {
  StructureConstants c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const int a = e_index(i, j), b = e_index(k, l);
          if (a >= b) continue;
          std::map<int, Q> v;
          if (j == k) v[e_index(i, l)] += 1;
          if (l == i) v[e_index(k, j)] -= 1;
          for (auto it = v.begin(); it != v.end();) it = it->second == 0 ? v.erase(it) : std::next(it);
          if (!v.empty()) c[2][{a, b}] = v;
        }
  return classical("gl2", mat2_basis(), c);
}

AInftyStructure mat2() {
  StructureConstants c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) c[2][{e_index(i, j), e_index(j, l)}] = {{e_index(i, l), Q(1)}};
  LInftyStructure s = classical("Mat2", mat2_basis(), c, Symmetry::none);
  return AInftyStructure{s.module, s.ops};
}

LInftyStructure cur_sl2() { return current(sl2(), q_d()); }
LInftyStructure cur_heis() { return current(heisenberg(), q_d()); }
AInftyStructure ainfty_mat2() { return current_ainfty(mat2(), q_d()); }

AInftyStructure ainfty_mat2_mutant() {
  AInftyStructure a = ainfty_mat2();
  PseudoMap& mu = a.ops.at(2);
  // E11 E11 = 2 E11
  mu.table.at({0, 0}) *= Q(2);
  return a;
}

Representation adjoint(const LInftyStructure& s, const std::string& name) {
  ModulePtr m = s.module->with_generators(name, s.module->generators());
  Representation r{m, {}};
  for (auto& [k, f] : s.ops) {
    std::vector<ModulePtr> src(k - 1, s.module);
    src.push_back(m);
    PseudoMap g = PseudoMap::zero(k, f.degree, src, m, Symmetry::none);
    for (auto& t : all_tuples(src)) g.set(t, retarget(f.value(t), m));
    r.actions.emplace(k, std::move(g));
  }
  return r;
}

Representation cur_sl2_on_v() {
  LInftyStructure l = cur_sl2();
  const AlgPtr& a = l.module->algebra();
  ModulePtr v = GradedHModule::free_module("V", a, {{"v1", 0}, {"v2", 0}});
  // e v2 = v1, h v1 = v1, h v2 = -v2, f v1 = v2
  std::map<std::pair<int, int>, std::pair<int, Q>> act{
      {{0, 1}, {0, Q(1)}}, {{1, 0}, {0, Q(1)}}, {{1, 1}, {1, Q(-1)}}, {{2, 0}, {1, Q(1)}}};
  PseudoMap g = PseudoMap::zero(2, 0, {l.module, v}, v, Symmetry::none);
  for (auto& [xu, img] : act) {
    QuotientTensor q = QuotientTensor::zero(v, 2);
    add_term(q.terms, QKey{{a->one()}, v->key(img.first)}, img.second);
    g.set({xu.first, xu.second}, std::move(q));
  }
  Representation r{v, {}};
  r.actions.emplace(2, std::move(g));
  return r;
}

GammaAction vir_z2() {
  Matrix minus{{Q(-1)}}, one{{Q(1)}};
  return GammaAction{FiniteGroup::cyclic(2), {one, minus}, {one, minus}};
}

GammaAction vir_z2_mutant() {
  Matrix minus{{Q(-1)}}, one{{Q(1)}}, two{{Q(2)}};
  return GammaAction{FiniteGroup::cyclic(2), {one, minus}, {one, two}};
}

RankOne rank_one_vir() {
  AlgPtr a = q_d();
  RankOne r{a, 0, 0, {}};
  TensorElement t{a, 2, {}};
  add_term(t.terms, Tuple{a->one(), a->variable(0)}, Q(1));
  add_term(t.terms, Tuple{a->variable(0), a->one()}, Q(-1));
  r.alpha.emplace(std::vector<int>{0, 0}, std::move(t));
  return r;
}

SkeletalTriple skeletal_cb_triple(unsigned seed) {
  LInftyStructure l = cur_sl2();
  Representation m = adjoint(l);
  std::mt19937 rng(seed);
  PseudoMap b = random_cochain(l, m, 2, 1, rng);
  PseudoMap theta = differential(l, m, b);
  return SkeletalTriple{l, m, theta};
}

TwoTermLInfty skeletal_cb(unsigned seed) { return triple_to_skeletal(skeletal_cb_triple(seed)); }

TwoTermLInfty skeletal_mutant(unsigned seed) {
  LInftyStructure l = cur_sl2();
  Representation m = adjoint(l);
  std::mt19937 rng(seed);
  for (;;) {
    PseudoMap theta = random_cochain(l, m, 3, 1, rng);
    if (!is_cocycle(l, m, theta).pass) return triple_to_skeletal(SkeletalTriple{l, m, theta});
  }
}

CrossedModule heis_center_crossed() { return ideal_crossed_module(cur_heis(), {2}); }
TwoTermLInfty strict_heis() { return crossed_to_strict(heis_center_crossed()); }
CrossedModule sl2_identity_crossed() { return identity_crossed_module(cur_sl2()); }
TwoTermLInfty strict_sl2() { return crossed_to_strict(sl2_identity_crossed()); }

}  // namespace hpseudo::fixtures
