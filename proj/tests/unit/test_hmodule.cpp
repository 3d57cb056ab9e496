#include "support.hpp"

#include <doctest.h>

using namespace hpseudo;
using namespace hpseudo::test;

TEST_CASE("free module action and degrees") {
  AlgPtr a = fixtures::q_d();
  ModulePtr m = GradedHModule::free_module("M", a, {{"x", 0}, {"y", 2}});
  ModTerms t = m->act(mono(a, {2}), ModKey{mono(a, {1}), 1});
  CHECK(t == ModTerms{{ModKey{mono(a, {3}), 1}, Q(1)}});
  CHECK(m->degree(1) == 2);
  ModulePtr s = suspend(m);
  CHECK(s->degree(0) == 1);
  CHECK(s->degree(1) == 3);
  CHECK(desuspend(s)->same_shape(*m));
  CHECK_THROWS(m->index_of("z"));
}

TEST_CASE("finite-dimensional module") {
  AlgPtr a = fixtures::q_d();
  // d b1 = b0, d b0 = 0
  Matrix nilpotent{{Q(0), Q(1)}, {Q(0), Q(0)}};
  ModulePtr m = GradedHModule::findim("N", a, {{"b0", 0}, {"b1", 0}}, {nilpotent}, {{{Q(1), Q(0)}, {Q(0), Q(1)}}});
  CHECK(m->act(a->variable(0), m->key(1)) == ModTerms{{m->key(0), Q(1)}});
  CHECK(m->act(mono(a, {2}), m->key(1)).empty());
  // M / H_+ M = span(b0, b1) / span(b0)
  CHECK(coinvariants(m).dim == 1);
  Matrix noncommuting{{Q(1), Q(0)}, {Q(0), Q(0)}};
  CHECK_THROWS(GradedHModule::findim("X", fixtures::q_d2(), {{"b0", 0}, {"b1", 0}}, {nilpotent, noncommuting},
                                     {{{Q(1), Q(0)}, {Q(0), Q(1)}}}));
}

TEST_CASE("coinvariants of free and equivariant modules") {
  ModulePtr f = GradedHModule::free_module("F", fixtures::q_d2(), {{"a", 0}, {"b", 0}, {"c", 1}});
  CHECK(coinvariants(f).dim == 3);
  AlgPtr s = HopfAlgebra::smash(fixtures::q_d(), FiniteGroup::cyclic(2), {{{Q(1)}}, {{Q(-1)}}});
  // g swaps a and b: the coinvariants identify them
  ModulePtr e = GradedHModule::equivariant("E", s, {{"a", 0}, {"b", 0}},
                                           {{{Q(1), Q(0)}, {Q(0), Q(1)}}, {{Q(0), Q(1)}, {Q(1), Q(0)}}});
  CHECK(coinvariants(e).dim == 1);
}

TEST_CASE("direct sums and submodules") {
  AlgPtr a = fixtures::q_d();
  ModulePtr x = GradedHModule::free_module("X", a, {{"u", 0}, {"v", 0}});
  ModulePtr y = GradedHModule::free_module("Y", a, {{"v", 1}});
  ModulePtr s = direct_sum("S", x, y);
  REQUIRE(s->rank() == 3);
  CHECK(s->generators()[0].name == "u");
  CHECK(s->generators()[2].degree == 1);
  CHECK(s->generators()[2].name != "v");
  ModulePtr sub = sub_module("T", s, {2}, -1);
  CHECK(sub->rank() == 1);
  CHECK(sub->degree(0) == 0);
}

TEST_CASE("module elements") {
  AlgPtr a = fixtures::q_d();
  ModulePtr m = GradedHModule::free_module("M", a, {{"x", 0}, {"y", 1}});
  ModuleElement x = gen(m, "x"), y = gen(m, "y");
  CHECK(x.degree() == 0);
  CHECK_THROWS(( x + y ).degree());
  ModuleElement dx = act_module(HElement{a, {{a->variable(0), Q(3)}}}, x);
  CHECK(dx.terms == ModTerms{{ModKey{a->variable(0), 0}, Q(3)}});
  CHECK((Q(2) * x + Q(-2) * x).is_zero());
}
