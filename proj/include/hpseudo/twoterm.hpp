#pragma once

#include "hpseudo/cohomology.hpp"
#include "hpseudo/linfty.hpp"

namespace hpseudo {

// (L1 -> L0, beta_2, beta_3). All maps live on module = l0 (+) l1 with l0 generators first,
// l0 in degree 0 and l1 in degree 1.
struct TwoTermLInfty {
  ModulePtr l0, l1;
  ModulePtr module;
  PseudoMap beta1;  // arity 1, degree -1: l1 -> l0, zero on l0
  PseudoMap beta2;  // skew, degree 0: (l0, l0) -> l0, (l0, l1) -> l1, zero on (l1, l1)
  PseudoMap beta3;  // skew, degree 1: (l0, l0, l0) -> l1

  int n0() const { return l0->rank(); }
  bool in_l0(int gen) const { return gen < n0(); }
  // The same data as an L-infinity structure on l0 (+) l1.
  LInftyStructure as_linfty() const;
};

// Zero structure; l1 generators are moved to degree 1.
TwoTermLInfty make_two_term(const ModulePtr& l0, const ModulePtr& l1);

// Block shape plus conditions (i)-(v) on all generator tuples, ids "two-term-shape" and "two-term-i" .. "two-term-v".
std::vector<Check> verify_two_term(const TwoTermLInfty& t);

// (f_0 (+) f_1, f_2): f is arity 1 on the sum modules, f2 skew on (l0, l0) -> l1'.
struct TwoTermMorphism {
  PseudoMap f;   // degree 0, block diagonal
  PseudoMap f2;  // degree 1
};

TwoTermMorphism identity_morphism(const TwoTermLInfty& t);
std::vector<Check> verify_two_term_morphism(const TwoTermMorphism& m, const TwoTermLInfty& src,
                                            const TwoTermLInfty& dst);
// g o f; throws std::invalid_argument when the modules do not match.
TwoTermMorphism compose_two_term(const TwoTermMorphism& g, const TwoTermMorphism& f);
bool same_morphism(const TwoTermMorphism& a, const TwoTermMorphism& b);

// Skeletal structures (beta_1 = 0) and triples (Lie pseudoalgebra, representation, 3-cocycle).
struct SkeletalTriple {
  LInftyStructure lie;
  Representation rep;
  PseudoMap cocycle;  // skew, lie.module^3 -> rep.module
};

// Throws std::invalid_argument when beta_1 != 0.
SkeletalTriple skeletal_to_triple(const TwoTermLInfty& t);
// Does not check the cocycle condition; verify_two_term reports it as condition (v).
TwoTermLInfty triple_to_skeletal(const SkeletalTriple& x);

// L (+) M with M in degree n - 1, beta_2 from the bracket and the action, beta_{n+1} = theta.
// Throws std::invalid_argument for n <= 2 or when theta is not a cocycle.
LInftyStructure higher_skeletal(const LInftyStructure& l, const Representation& m, const PseudoMap& theta, int n);

// (L, L', phi, gamma) with L, L' Lie pseudoalgebras in degree 0.
struct CrossedModule {
  LInftyStructure l;
  LInftyStructure lp;
  PseudoMap phi;    // arity 1, lp.module -> l.module
  PseudoMap gamma;  // arity 2, (l.module, lp.module) -> lp.module
};

std::vector<Check> verify_crossed_module(const CrossedModule& x);
// Throws std::invalid_argument when beta_3 != 0.
CrossedModule strict_to_crossed(const TwoTermLInfty& t);
TwoTermLInfty crossed_to_strict(const CrossedModule& x);
// Bracket on L (+) L': ([x y], gamma(x, y') - s12 gamma(y, x') + [x' y']').
LInftyStructure crossed_direct_sum(const CrossedModule& x);
// (L, L, id, beta) and (L, N, inclusion, ad) for an ideal spanned by generators.
CrossedModule identity_crossed_module(const LInftyStructure& l);
CrossedModule ideal_crossed_module(const LInftyStructure& l, const std::vector<int>& ideal_gens);

// Lie-2 pseudoalgebra on C1 = c0 (+) k, where k = ker s; s is the coordinate projection.
// Composition of composable morphisms is g o f = f + g - i(t f).
struct Lie2Algebra {
  ModulePtr c0, k, c1;
  PseudoMap s, t, i;    // arity 1: c1 -> c0, c1 -> c0, c0 -> c1
  PseudoMap bracket0;   // arity 2 on objects
  PseudoMap bracket1;   // arity 2 on morphisms
  PseudoMap jacobiator; // arity 3, c0^3 -> c1

  int n0() const { return c0->rank(); }
};

// Internal category laws, functoriality of the bracket, skewness, Jacobiator source/target,
// naturality in each slot and the hexagon on all object generator quadruples.
std::vector<Check> verify_lie2(const Lie2Algebra& c);

// (F_0, F_1, F_2) with F_2^{x,y} : [F_0 x * F_0 y]' -> F_0 [x * y].
struct Lie2Morphism {
  PseudoMap f0, f1;
  PseudoMap f2;  // arity 2, c0 x c0 -> c1'
};

Lie2Morphism lie2_identity(const Lie2Algebra& c);
std::vector<Check> verify_lie2_morphism(const Lie2Morphism& f, const Lie2Algebra& src, const Lie2Algebra& dst);
// g o f; dst is the codomain of g.
Lie2Morphism compose_lie2(const Lie2Morphism& g, const Lie2Morphism& f, const Lie2Algebra& dst);
bool same_lie2_morphism(const Lie2Morphism& a, const Lie2Morphism& b);
bool same_lie2(const Lie2Algebra& a, const Lie2Algebra& b);

// The functors T and S.
Lie2Algebra two_term_to_lie2(const TwoTermLInfty& t);
TwoTermLInfty lie2_to_two_term(const Lie2Algebra& c);
Lie2Morphism two_term_morphism_to_lie2(const TwoTermMorphism& m, const TwoTermLInfty& src,
                                       const TwoTermLInfty& dst);
TwoTermMorphism lie2_morphism_to_two_term(const Lie2Morphism& m, const Lie2Algebra& src, const Lie2Algebra& dst);
bool same_two_term(const TwoTermLInfty& a, const TwoTermLInfty& b);

// Lambda : T(S(c)) -> c with Lambda_1(x, u) = 1_x + u, and its inverse c -> T(S(c)).
Lie2Morphism lambda_comparison(const Lie2Algebra& c);
Lie2Morphism lambda_inverse(const Lie2Algebra& c);

// Transports c along the c1 automorphism (x, u) -> (x, u + phi(x)), phi : c0 -> k arity 1;
// the new identities are i'(x) = (x, phi(x)).
Lie2Algebra twist_identities(const Lie2Algebra& c, const PseudoMap& phi);

}  // namespace hpseudo
