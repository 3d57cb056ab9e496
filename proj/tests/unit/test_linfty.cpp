#include "support.hpp"

#include <doctest.h>

using namespace hpseudo;
using namespace hpseudo::test;

namespace {

using Constants = std::vector<std::vector<std::vector<Q>>>;  // c[i][j][k]: [e_i, e_j] = sum_k c e_k

// Jacobi identity of a classical bracket, computed on coordinate vectors.
bool classical_jacobi(const Constants& c) {
  const int n = static_cast<int>(c.size());
  auto br = [&](const std::vector<Q>& x, const std::vector<Q>& y) {
    std::vector<Q> r(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (x[i] != 0 && y[j] != 0)
          for (int k = 0; k < n; ++k) r[k] += x[i] * y[j] * c[i][j][k];
    return r;
  };
  auto unit = [&](int i) {
    std::vector<Q> v(n);
    v[i] = 1;
    return v;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        auto a = br(br(unit(i), unit(j)), unit(k));
        auto b = br(br(unit(j), unit(k)), unit(i));
        auto d = br(br(unit(k), unit(i)), unit(j));
        for (int t = 0; t < n; ++t)
          if (a[t] + b[t] + d[t] != 0) return false;
      }
  return true;
}

Constants random_skew_constants(int n, std::mt19937& rng) {
  Constants c(n, std::vector<std::vector<Q>>(n, std::vector<Q>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        int v = static_cast<int>(rng() % 5) - 2;
        if (rng() % 2) v = 0;
        c[i][j][k] = v;
        c[j][i][k] = -v;
      }
  return c;
}

LInftyStructure from_constants(const Constants& c) {
  StructureConstants sc;
  const int n = static_cast<int>(c.size());
  std::vector<Generator> gens;
  for (int i = 0; i < n; ++i) gens.push_back({"e" + std::to_string(i), 0});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (c[i][j][k] != 0) sc[2][{i, j}][k] = c[i][j][k];
  return classical("g", gens, sc);
}

Representation perturbed(const Representation& r, std::mt19937& rng) {
  Representation p = r;
  PseudoMap& g = p.actions.at(2);
  auto tuples = all_tuples(g.sources);
  const GenTuple& t = tuples[rng() % tuples.size()];
  QuotientTensor v = g.value(t);
  if (rng() % 3 == 0) {
    g.table[t] = v;  // unchanged
  } else {
    ModKey k = g.target->key(static_cast<int>(rng() % g.target->rank()));
    add_term(v.terms, QKey{{g.target->algebra()->one()}, k}, random_q(rng));
    g.table[t] = v;
  }
  return p;
}

}  // namespace

TEST_CASE("Virasoro passes, the mutant fails both formulations at the same N") {
  LInftyStructure v = fixtures::vir();
  CHECK(all_pass(check_structure(v)));
  Check j = verify_higher_jacobi(v), m = verify_mc(v);
  CHECK(j.pass);
  CHECK(m.pass);
  LInftyStructure bad = fixtures::vir_mutant();
  Check bj = verify_higher_jacobi(bad), bm = verify_mc(bad);
  CHECK_FALSE(bj.pass);
  CHECK_FALSE(bm.pass);
  CHECK(bj.level == 3);
  CHECK(bm.level == bj.level);
  CHECK(bj.tuple == std::vector<std::string>{"L", "L", "L"});
  auto shape = check_structure(bad);
  CHECK_FALSE(all_pass(shape));
}

TEST_CASE("Virasoro bracket in canonical form") {
  // [L * L] = (-2 d (x) 1) (x)_H L + (1 (x) 1) (x)_H dL
  LInftyStructure v = fixtures::vir();
  AlgPtr a = v.module->algebra();
  QTerms expected;
  add_term(expected, QKey{{a->variable(0)}, v.module->key(0)}, Q(-2));
  add_term(expected, QKey{{a->one()}, ModKey{a->variable(0), 0}}, Q(1));
  CHECK(v.ops.at(2).value({0, 0}).terms == expected);
}

TEST_CASE("Jacobi verdicts match a classical oracle, before and after the current functor") {
  std::mt19937 rng(77);
  std::vector<Constants> cases;
  for (int i = 0; i < 8; ++i) cases.push_back(random_skew_constants(3, rng));
  // sl2 in coordinates e, h, f
  Constants sl2(3, std::vector<std::vector<Q>>(3, std::vector<Q>(3)));
  auto set = [&](int i, int j, int k, int v) {
    sl2[i][j][k] = v;
    sl2[j][i][k] = -v;
  };
  set(0, 1, 0, -2);
  set(0, 2, 1, 1);
  set(1, 2, 2, -2);
  cases.push_back(sl2);
  int agree = 0, lie = 0;
  for (auto& c : cases) {
    const bool oracle = classical_jacobi(c);
    LInftyStructure g = from_constants(c);
    LInftyStructure cur = current(g, fixtures::q_d());
    if (verify_higher_jacobi(g).pass == oracle && verify_higher_jacobi(cur).pass == oracle &&
        verify_mc(cur).pass == oracle)
      ++agree;
    lie += oracle;
  }
  CHECK(agree == static_cast<int>(cases.size()));
  CHECK(lie >= 1);
  CHECK(lie < static_cast<int>(cases.size()));
}

TEST_CASE("annihilation recovers sl2 and makes Virasoro abelian") {
  LInftyStructure a = annihilation(fixtures::cur_sl2());
  LInftyStructure s = fixtures::sl2();
  CHECK(same_values(a.ops.at(2), s.ops.at(2)));
  LInftyStructure v = annihilation(fixtures::vir());
  for (auto& [k, f] : v.ops) CHECK(f.is_zero());
  CHECK(verify_higher_jacobi(a).pass);
}

TEST_CASE("representations and the semidirect product") {
  LInftyStructure l = fixtures::cur_sl2();
  CHECK(verify_representation(l, fixtures::cur_sl2_on_v()).pass);
  CHECK(verify_representation(l, fixtures::adjoint(l)).pass);
  CHECK(verify_higher_jacobi(semidirect(l, fixtures::adjoint(l))).pass);
  std::mt19937 rng(31);
  int agree = 0, failing = 0;
  for (int i = 0; i < 10; ++i) {
    Representation p = perturbed(fixtures::adjoint(l), rng);
    const bool rep = verify_representation(l, p).pass;
    const bool sd = verify_higher_jacobi(semidirect(l, p)).pass;
    agree += rep == sd;
    failing += !rep;
  }
  CHECK(agree == 10);
  CHECK(failing >= 1);
}

TEST_CASE("Gamma actions and the smash lift") {
  LInftyStructure v = fixtures::vir();
  CHECK(all_pass(verify_gamma_action(v, fixtures::vir_z2())));
  CHECK_FALSE(all_pass(verify_gamma_action(v, fixtures::vir_z2_mutant())));
  CHECK(all_pass(verify_gamma_action(v, trivial_gamma_action(v))));
  LInftyStructure lifted = smash_lift(v, fixtures::vir_z2());
  CHECK(lifted.module->algebra()->group().size() == 2);
  CHECK(verify_higher_jacobi(lifted).pass);
  CHECK(verify_mc(lifted).pass);
  CHECK(all_pass(check_structure(lifted)));
}

TEST_CASE("the L-infinity coboundary is the classical differential") {
  LInftyStructure l = fixtures::cur_sl2();
  Representation m = fixtures::adjoint(l);
  ModulePtr ls = suspend(l.module), ms = suspend(m.module);
  std::mt19937 rng(4);
  for (int n = 1; n <= 2; ++n) {
    PseudoMap c = random_cochain(l, m, n, 1, rng);
    MapSum cs{{n, suspend_map(c, ls, ms)}};
    MapSum d = linfty_coboundary(l, m, cs, ls, ms, n + 1);
    PseudoMap classical = differential(l, m, c);
    if (classical.is_zero()) {
      CHECK(d.empty());
      continue;
    }
    REQUIRE(d.count(n + 1));
    CHECK(same_values(desuspend_map(d.at(n + 1), l.module, m.module), classical));
  }
}

TEST_CASE("an abelian one-dimensional current has zero bracket") {
  LInftyStructure g = classical("ab", {{"x", 0}}, {});
  LInftyStructure cur = current(g, fixtures::q_d2());
  for (auto& [k, f] : cur.ops) CHECK(f.is_zero());
  CHECK(verify_higher_jacobi(cur).pass);
}
