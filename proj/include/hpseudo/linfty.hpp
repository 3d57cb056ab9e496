#pragma once

#include "hpseudo/pseudomap.hpp"
#include "hpseudo/report.hpp"

namespace hpseudo {

// (L, {beta_k}) with beta_k graded skew of degree k-2.
struct LInftyStructure {
  ModulePtr module;
  std::map<int, PseudoMap> ops;

  int max_arity() const { return ops.empty() ? 1 : ops.rbegin()->first; }
  // Arity-k operation or nullptr.
  const PseudoMap* op(int k) const;
  bool all_skew_flagged() const;
};

// (M, {gamma_k}) with gamma_k : L^{k-1} x M -> M of degree k-2.
struct Representation {
  ModulePtr module;
  std::map<int, PseudoMap> actions;

  const PseudoMap* action(int k) const;
};

LInftyStructure zero_structure(const ModulePtr& m);
void add_op(LInftyStructure& s, PseudoMap op);

// Degree and skew soundness of every operation.
std::vector<Check> check_structure(const LInftyStructure& s);

// Residual of the arity-N higher Jacobi identity on a generator tuple, for operations
// given as multilinear maps by arity.
QuotientTensor jacobi_residual(const std::map<int, Multilinear>& ops, const ModulePtr& module,
                               std::span<const ModuleElement> args);
// Default bound 2K-1.
Check verify_higher_jacobi(const LInftyStructure& s, int max_n = 0);
// [[eta, eta]] = 0 for eta the suspension; level = first failing arity.
Check verify_mc(const LInftyStructure& s, int max_n = 0);
// Suspended operations on L[-1].
MapSum suspend_structure(const LInftyStructure& s, const ModulePtr& suspended);

// Mixed operation on L (+) M evaluated directly from beta and gamma: the gamma map is used
// whenever exactly one argument lies in M, moved to the last position with its sign.
Multilinear mixed_operation(const LInftyStructure& s, const Representation& r, const ModulePtr& sum, int k);
Check verify_representation(const LInftyStructure& s, const Representation& r, int max_n = 0);
// Structure on L (+) M; the module is direct_sum(L, M) with L generators first.
LInftyStructure semidirect(const LInftyStructure& s, const Representation& r);

// delta c = (-1)^{n-1} [[eta_bar, c]] restricted to L[-1]-tuples, with n = 1 - deg c.
// c has sources L[-1] and target M[-1] (all components symmetric).
MapSum linfty_coboundary(const LInftyStructure& s, const Representation& r, const MapSum& c, const ModulePtr& l_shift,
                         const ModulePtr& m_shift, int max_arity);

// Action of a finite group by degree-0 module automorphisms twisting the H-action:
// g.(h e) = (g.h)(g.e) with g.d_i = sum_j variable_action[g][i][j] d_j.
struct GammaAction {
  FiniteGroup group;
  std::vector<Matrix> variable_action;
  std::vector<Matrix> module_action;  // column convention, rank x rank
};

GammaAction trivial_gamma_action(const LInftyStructure& s);
// Group law, degree preservation and beta_k(g x_1, .., g x_k) = g . beta_k(x_1, .., x_k).
std::vector<Check> verify_gamma_action(const LInftyStructure& s, const GammaAction& a);
// Structure over H # Q[Gamma] on the equivariant module with the same generators.
LInftyStructure smash_lift(const LInftyStructure& s, const GammaAction& a);

// L / H_+ L over the algebra with no variables, with counits applied to every coefficient.
LInftyStructure annihilation(const LInftyStructure& s);

}  // namespace hpseudo
