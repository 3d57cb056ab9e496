#pragma once

#include "hpseudo/constructions.hpp"
#include "hpseudo/twoterm.hpp"

namespace hpseudo::fixtures {

AlgPtr q_d();   // Q[d]
AlgPtr q_d2();  // Q[d1, d2]

// Virasoro: [L_l L] = (d + 2 l) L.
LambdaTable vir_lambda();
LInftyStructure vir();
// Bracket with coefficient (1 (x) d + d (x) 1), stored without a symmetry flag.
LInftyStructure vir_mutant();

LInftyStructure sl2();         // e, h, f over Q
LInftyStructure heisenberg();  // x, y, z with [x, y] = z
LInftyStructure gl2();         // E11, E12, E21, E22 with the commutator
AInftyStructure mat2();        // matrix product on E11, E12, E21, E22

LInftyStructure cur_sl2();
LInftyStructure cur_heis();
AInftyStructure ainfty_mat2();
AInftyStructure ainfty_mat2_mutant();

// Adjoint representation of a Lie pseudoalgebra on a copy of its module.
Representation adjoint(const LInftyStructure& s, const std::string& name = "M");
// Cur(sl2) acting on Cur(V), V the 2-dimensional irreducible module.
Representation cur_sl2_on_v();

// Z/2 on Vir with g.L = -L and g.d = -d, and the scaling mutant g.L = 2L.
GammaAction vir_z2();
GammaAction vir_z2_mutant();

RankOne rank_one_vir();

// Skeletal structure on Cur(sl2) with its adjoint module: beta_1 = 0, beta_3 = delta(b) for a
// fixed pseudo-random 2-cochain b. The mutant uses a 3-cochain that is not closed.
SkeletalTriple skeletal_cb_triple(unsigned seed = 7);
TwoTermLInfty skeletal_cb(unsigned seed = 7);
TwoTermLInfty skeletal_mutant(unsigned seed = 11);
// Strict structures from the crossed modules (Cur(heis), center, inclusion, ad) and (Cur(sl2), Cur(sl2), id, beta).
CrossedModule heis_center_crossed();
TwoTermLInfty strict_heis();
CrossedModule sl2_identity_crossed();
TwoTermLInfty strict_sl2();

}  // namespace hpseudo::fixtures
