#include "support.hpp"

#include <doctest.h>

using namespace hpseudo;
using namespace hpseudo::test;

namespace {

Representation trivial_rep(const LInftyStructure& l, const ModulePtr& m) {
  Representation r{m, {}};
  r.actions.emplace(2, PseudoMap::zero(2, 0, {l.module, m}, m));
  return r;
}

}  // namespace

TEST_CASE("delta squares to zero on 30 random cochains over Cur(sl2) with the adjoint module") {
  std::mt19937 rng(101);
  LInftyStructure cur = fixtures::cur_sl2();
  Representation ad = fixtures::adjoint(cur);
  int zero = 0, nonzero_first = 0;
  for (int i = 0; i < 30; ++i) {
    const int n = i % 3;
    PseudoMap d;
    if (n == 0) {
      ModuleElement u = ModuleElement::generator(ad.module, static_cast<int>(rng() % 3));
      u = act_module(HElement{cur.module->algebra(), {{random_monomial(cur.module->algebra(), 2, rng), random_q(rng)}}}, u);
      d = differential0(cur, ad, u);
    } else {
      d = differential(cur, ad, random_cochain(cur, ad, n, 2, rng));
    }
    nonzero_first += !d.is_zero();
    zero += differential(cur, ad, d).is_zero();
  }
  CHECK(zero == 30);
  CHECK(nonzero_first > 20);
}

TEST_CASE("delta squares to zero for other coefficients") {
  std::mt19937 rng(102);
  LInftyStructure cur = fixtures::cur_sl2(), vir = fixtures::vir();
  std::vector<std::pair<LInftyStructure, Representation>> cases{{cur, fixtures::cur_sl2_on_v()},
                                                                {vir, fixtures::adjoint(vir)}};
  for (auto& [l, m] : cases)
    for (int n = 1; n <= 2; ++n) CHECK(differential(l, m, differential(l, m, random_cochain(l, m, n, 2, rng))).is_zero());
}

TEST_CASE("the degree-zero differential by hand") {
  LInftyStructure vir = fixtures::vir();
  Representation ad = fixtures::adjoint(vir);
  // gamma(L, L) = (-2d) (x)_H L + 1 (x)_H dL, so (delta L)(L) = -2dL + dL
  PseudoMap d = differential0(vir, ad, ModuleElement::generator(ad.module, 0));
  QTerms expected;
  add_term(expected, QKey{{}, ModKey{vir.module->algebra()->variable(0), 0}}, Q(-1));
  CHECK(d.value({0}).terms == expected);

  LInftyStructure cur = fixtures::cur_sl2();
  Representation cad = fixtures::adjoint(cur);
  const int e = cur.module->index_of("e"), h = cur.module->index_of("h");
  // (delta e)(h) = [h, e] = 2e
  PseudoMap de = differential0(cur, cad, ModuleElement::generator(cad.module, e));
  QTerms two_e;
  add_term(two_e, QKey{{}, cad.module->key(e)}, Q(2));
  CHECK(de.value({h}).terms == two_e);
  CHECK(is_cocycle(cur, cad, de).pass);
}

TEST_CASE("cocycle checks") {
  std::mt19937 rng(5);
  LInftyStructure cur = fixtures::cur_sl2();
  Representation ad = fixtures::adjoint(cur);
  PseudoMap b = random_cochain(cur, ad, 2, 1, rng);
  CHECK(is_cocycle(cur, ad, differential(cur, ad, b)).pass);
  PseudoMap c = random_cochain(cur, ad, 3, 1, rng);
  Check k = is_cocycle(cur, ad, c);
  CHECK_FALSE(k.pass);
  CHECK(k.tuple.size() == 4);
  for (auto& g : all_tuples(std::vector<ModulePtr>(2, cur.module)))
    CHECK(differential_value(cur, ad, b, {g[0], g[1], 0}) == differential(cur, ad, b).value({g[0], g[1], 0}));
}

TEST_CASE("classical sl2 cohomology through the window") {
  // Over H = Q: H^n(sl2, ad) = 0 for n = 1, 2, 3; H^n(sl2, Q) = 0, 0, 1.
  LInftyStructure s = fixtures::sl2();
  Representation ad = fixtures::adjoint(s);
  Representation triv = trivial_rep(s, GradedHModule::free_module("Q", s.module->algebra(), {{"one", 0}}));
  const int expected_ad[] = {0, 0, 0}, expected_triv[] = {0, 0, 1};
  for (int n = 1; n <= 3; ++n) {
    CohomologyWindow a = cohomology_dim(s, ad, n, 0), t = cohomology_dim(s, triv, n, 0);
    CHECK(a.cohomology == expected_ad[n - 1]);
    CHECK(t.cohomology == expected_triv[n - 1]);
    // skew n-cochains on a 3-dimensional space
    CHECK(a.window_dim == 3 * static_cast<int>(binomial(3, n).get_num().get_si()));
    CHECK(t.window_dim == static_cast<int>(binomial(3, n).get_num().get_si()));
  }
}

TEST_CASE("window bookkeeping") {
  LInftyStructure cur = fixtures::cur_sl2();
  Representation ad = fixtures::adjoint(cur);
  for (int n = 1; n <= 2; ++n)
    for (int w = 0; w <= 1; ++w) {
      CohomologyWindow c = cohomology_dim(cur, ad, n, w);
      CHECK(c.kernel == c.window_dim - c.rank);
      CHECK(c.cohomology == c.kernel - c.image);
      CHECK(c.image <= c.kernel);
      CHECK(c.cohomology >= 0);
    }
  CohomologyWindow c = cohomology_dim(cur, ad, 2, 1);
  CHECK(c.window_dim == 36);
  CHECK(c.rank == 22);
  CHECK(c.cohomology == 0);
}
