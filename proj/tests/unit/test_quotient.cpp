#include "support.hpp"

#include <doctest.h>

using namespace hpseudo;
using namespace hpseudo::test;

namespace {

AlgPtr d_z2() { return HopfAlgebra::smash(fixtures::q_d(), FiniteGroup::cyclic(2), {{{Q(1)}}, {{Q(-1)}}}); }

// (F . Delta^(n)(h)) (x)_H m against F (x)_H (h m), both normalized.
bool representative_independent(const ModulePtr& mod, int n, std::mt19937& rng) {
  const AlgPtr& a = mod->algebra();
  Tuple f;
  for (int i = 0; i < n; ++i) f.push_back(random_monomial(a, 2, rng));
  Monomial h = random_monomial(a, 3, rng);
  ModKey m{a->one(), std::uniform_int_distribution<int>(0, mod->rank() - 1)(rng)};

  std::vector<RawTerm> lhs;
  for (auto& [t, c] : a->comul(h, n)) {
    // expand the slotwise products
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

}  // namespace

TEST_CASE("canonical form of small elements over Q[d]") {
  AlgPtr a = fixtures::q_d();
  ModulePtr m = GradedHModule::free_module("M", a, {{"e", 0}});
  const Monomial one = a->one(), d = a->variable(0);
  // (1 (x) d) (x)_H e = -(d (x) 1) (x)_H e + (1 (x) 1) (x)_H de
  QuotientTensor q = normalize({{{one, d}, m->key(0), Q(1)}}, m, 2);
  QTerms expected;
  add_term(expected, QKey{{d}, ModKey{one, 0}}, Q(-1));
  add_term(expected, QKey{{one}, ModKey{d, 0}}, Q(1));
  CHECK(q.terms == expected);
  // (1 (x) d^2) (x)_H e = (d^2 (x) 1) e - 2 (d (x) 1) de + (1 (x) 1) d^2 e
  QuotientTensor q2 = normalize({{{one, mono(a, {2})}, m->key(0), Q(1)}}, m, 2);
  QTerms e2;
  add_term(e2, QKey{{mono(a, {2})}, ModKey{one, 0}}, Q(1));
  add_term(e2, QKey{{d}, ModKey{d, 0}}, Q(-2));
  add_term(e2, QKey{{one}, ModKey{mono(a, {2}), 0}}, Q(1));
  CHECK(q2.terms == e2);
  CHECK(q.format() == "(1)(1|1)[d*e] + (-1)(d|1)[e]");
}

TEST_CASE("200 randomized representative-independence checks") {
  std::mt19937 rng(2024);
  std::vector<ModulePtr> mods{
      GradedHModule::free_module("F", fixtures::q_d(), {{"a", 0}, {"b", 1}}),
      GradedHModule::free_module("G", fixtures::q_d2(), {{"a", 0}}),
      GradedHModule::free_module("S", d_z2(), {{"a", 0}}),
      GradedHModule::equivariant("E", d_z2(), {{"a", 0}, {"b", 0}}, {{{Q(1), Q(0)}, {Q(0), Q(1)}}, {{Q(0), Q(1)}, {Q(1), Q(0)}}}),
  };
  int passed = 0;
  for (int i = 0; i < 200; ++i) {
    const ModulePtr& m = mods[i % mods.size()];
    const int n = 2 + (i / 4) % 2;
    if (representative_independent(m, n, rng)) ++passed;
  }
  CHECK(passed == 200);
}

TEST_CASE("canonical forms are fixed points and relabel is invertible") {
  std::mt19937 rng(5);
  ModulePtr m = GradedHModule::free_module("F", fixtures::q_d2(), {{"a", 0}, {"b", 0}});
  for (int i = 0; i < 30; ++i) {
    const int n = 2 + i % 2;
    QuotientTensor q = random_quotient(m, n, 3, rng);
    CHECK(normalize(embed(q), m, n) == q);
    std::vector<int> dest(n);
    std::iota(dest.begin(), dest.end(), 0);
    std::shuffle(dest.begin(), dest.end(), rng);
    CHECK(relabel(relabel(q, dest), inverse_perm(dest)) == q);
  }
}

TEST_CASE("the H^{(x)n} action is an action") {
  std::mt19937 rng(9);
  AlgPtr a = d_z2();
  ModulePtr m = GradedHModule::free_module("F", a, {{"a", 0}});
  for (int i = 0; i < 20; ++i) {
    QuotientTensor q = random_quotient(m, 2, 2, rng);
    TensorElement s{a, 2, {}}, t{a, 2, {}};
    add_term(s.terms, Tuple{random_monomial(a, 2, rng), random_monomial(a, 2, rng)}, random_q(rng));
    add_term(t.terms, Tuple{random_monomial(a, 2, rng), random_monomial(a, 2, rng)}, random_q(rng));
    CHECK(act(mul(s, t), q) == act(s, act(t, q)));
  }
}

TEST_CASE("over a commutative H the diagonal action is the module action") {
  std::mt19937 rng(10);
  AlgPtr a = fixtures::q_d2();
  ModulePtr m = GradedHModule::free_module("F", a, {{"a", 0}, {"b", 0}});
  for (int i = 0; i < 20; ++i) {
    QuotientTensor q = random_quotient(m, 3, 2, rng);
    Monomial h = random_monomial(a, 2, rng);
    TensorElement dh = comul(HElement{a, {{h, Q(1)}}}, 3);
    std::vector<RawTerm> moved;
    for (auto& raw : embed(q))
      for (auto& [k, c] : m->act(h, raw.m)) moved.push_back({raw.slots, k, raw.c * c});
    CHECK(act(dh, q) == normalize(moved, m, 3));
  }
}

TEST_CASE("permutation signs") {
  CHECK(perm_sign({0, 1, 2}) == 1);
  CHECK(perm_sign({1, 0, 2}) == -1);
  CHECK(perm_sign({1, 2, 0}) == 1);
  // moving two odd elements past each other
  CHECK(koszul_sign({1, 0}, {1, 1}) == -1);
  CHECK(koszul_sign({1, 0}, {1, 2}) == 1);
  CHECK(koszul_sign({2, 0, 1}, {1, 1, 1}) == 1);
  CHECK(inverse_perm({2, 0, 1}) == std::vector<int>{1, 2, 0});
}
