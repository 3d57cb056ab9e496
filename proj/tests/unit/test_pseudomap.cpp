#include "support.hpp"

#include <doctest.h>

using namespace hpseudo;
using namespace hpseudo::test;

namespace {

ModulePtr mixed_module() {
  return GradedHModule::free_module("A", fixtures::q_d(), {{"a", 0}, {"b", 0}, {"u", 1}, {"v", -1}});
}

}  // namespace

TEST_CASE("flagged maps derive permuted values") {
  std::mt19937 rng(1);
  ModulePtr m = GradedHModule::free_module("M", fixtures::q_d(), {{"x", 0}, {"y", 0}, {"z", 0}});
  PseudoMap f = random_map(m, 2, 0, rng);
  PseudoMap s = skew_symmetrize(f);
  CHECK(s.symmetry == Symmetry::skew);
  for (auto& t : all_tuples(s.sources)) {
    // oracle: f(x, y) - (12) f(y, x)
    QuotientTensor expected = f.value(t) - relabel(f.value({t[1], t[0]}), {1, 0});
    CHECK(s.value(t) == expected);
  }
  CHECK_FALSE(check_symmetry(s, Symmetry::skew).has_value());
  CHECK(check_symmetry(f, Symmetry::skew).has_value());
  CHECK_THROWS(s.set({2, 1}, QuotientTensor::zero(m, 2)));
}

TEST_CASE("evaluation is H-linear in each argument") {
  std::mt19937 rng(2);
  AlgPtr a = fixtures::q_d();
  ModulePtr m = GradedHModule::free_module("M", a, {{"x", 0}, {"y", 0}});
  PseudoMap f = random_map(m, 2, 0, rng);
  for (int i = 0; i < 10; ++i) {
    Monomial h = random_monomial(a, 2, rng);
    ModuleElement x = ModuleElement::generator(m, rng() % 2), y = ModuleElement::generator(m, rng() % 2);
    ModuleElement hx = act_module(HElement{a, {{h, Q(1)}}}, x);
    std::vector<ModuleElement> args{hx, y}, plain{x, y};
    TensorElement h1{a, 2, {}};
    add_term(h1.terms, Tuple{h, a->one()}, Q(1));
    CHECK(eval(f, args) == act(h1, eval(f, plain)));
    std::vector<ModuleElement> args2{x, act_module(HElement{a, {{h, Q(1)}}}, y)};
    TensorElement h2{a, 2, {}};
    add_term(h2.terms, Tuple{a->one(), h}, Q(1));
    CHECK(eval(f, args2) == act(h2, eval(f, plain)));
  }
}

TEST_CASE("suspension of maps is invertible and shifts degree") {
  std::mt19937 rng(3);
  ModulePtr m = mixed_module();
  ModulePtr w = suspend(m);
  for (int k = 1; k <= 3; ++k) {
    PseudoMap f = random_map(m, k, k - 2, rng, Symmetry::skew);
    PseudoMap s = suspend_map(f, w, w);
    CHECK(s.degree == f.degree + 1 - k);
    CHECK(same_values(desuspend_map(s, m, m), f));
    CHECK_FALSE(check_symmetry(s, Symmetry::sym).has_value());
  }
}

TEST_CASE("shuffles") {
  for (int n = 1; n <= 5; ++n)
    for (int l = 0; l <= n; ++l) {
      auto sh = shuffles(n, l);
      CHECK(static_cast<int>(sh.size()) == binomial(n, l).get_num().get_si());
      for (auto& s : sh) {
        for (int i = 0; i + 1 < l; ++i) CHECK(s[i] < s[i + 1]);
        for (int i = l; i + 1 < n; ++i) CHECK(s[i] < s[i + 1]);
      }
    }
}

TEST_CASE("symmetrization intertwines the two brackets") {
  std::mt19937 rng(11);
  ModulePtr w = suspend(mixed_module());
  int pairs = 0;
  for (int trial = 0; trial < 10; ++trial) {
    MapSum nu{{1, random_map(w, 1, -1, rng)}, {2, random_map(w, 2, -1, rng)}};
    MapSum theta{{1, random_map(w, 1, -1, rng)}, {2, random_map(w, 2, -1, rng)}, {3, random_map(w, 3, -1, rng)}};
    MapSum lhs = sym_projection(assoc_bracket(nu, theta, -1, -1, 4));
    MapSum rhs = mc_bracket(sym_projection(nu), sym_projection(theta), -1, -1, 4);
    bool ok = lhs.size() == rhs.size();
    for (auto& [k, f] : lhs) ok = ok && rhs.count(k) && same_values(f, rhs.at(k));
    if (ok) ++pairs;
  }
  CHECK(pairs == 10);
}

TEST_CASE("the symmetric bracket is graded antisymmetric") {
  std::mt19937 rng(12);
  ModulePtr w = suspend(mixed_module());
  for (int trial = 0; trial < 5; ++trial) {
    // p = -1, q = 0: [[eta, zeta]] = -(-1)^{pq} [[zeta, eta]] = -[[zeta, eta]]
    MapSum eta{{2, random_map(w, 2, -1, rng, Symmetry::sym)}};
    MapSum zeta{{1, random_map(w, 1, 0, rng)}, {2, random_map(w, 2, 0, rng, Symmetry::sym)}};
    MapSum a = mc_bracket(eta, zeta, -1, 0, 3), b = mc_bracket(zeta, eta, 0, -1, 3);
    REQUIRE(a.size() == b.size());
    for (auto& [k, f] : a) {
      PseudoMap neg = b.at(k);
      for (auto& [t, v] : neg.table) v *= Q(-1);
      CHECK(same_values(f, neg));
    }
  }
}
