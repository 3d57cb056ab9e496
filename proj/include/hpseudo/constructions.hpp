#pragma once

#include "hpseudo/linfty.hpp"

namespace hpseudo {

// Classical (H = Q) operations given by structure constants on sorted tuples (skew) or all tuples.
using StructureConstants = std::map<int, std::map<GenTuple, std::map<int, Q>>>;
LInftyStructure classical(const std::string& name, std::vector<Generator> gens, const StructureConstants& ops,
                          Symmetry symmetry = Symmetry::skew);
AlgPtr ground_algebra();

// Operations with coefficients (1 (x) .. (x) 1) on the free module H (x) g.
LInftyStructure current(const LInftyStructure& g, const AlgPtr& h);

// H' -> H sends variable i of H' to variable var_map[i] of H; both polynomial.
LInftyStructure current_extension(const LInftyStructure& s, const AlgPtr& h, const std::vector<int>& var_map);

// Lambda tables over Q[d]: the k-ary operation on a generator tuple is
// sum c * lambda_1^{e_1} .. lambda_{k-1}^{e_{k-1}} d^a e_gen.
struct LambdaTerm {
  std::vector<int> lambda;
  int d = 0;
  int gen = 0;
  Q c;
  auto operator<=>(const LambdaTerm&) const = default;
};
struct LambdaTable {
  ModulePtr module;
  std::map<int, std::map<GenTuple, std::vector<LambdaTerm>>> ops;
  std::map<int, Symmetry> symmetry;
};

LInftyStructure conformal_to_pseudo(const LambdaTable& t);
LambdaTable pseudo_to_conformal(const LInftyStructure& s);
bool same_lambda_table(const LambdaTable& a, const LambdaTable& b);
// Binary conformal Jacobi [a_l [b_m c]] = [[a_l b]_{l+m} c] + [b_m [a_l c]] (degree-0 tables).
Check verify_conformal_jacobi(const LambdaTable& t);

// Rank-one data: alpha_{i_1..i_k} in H^{(x)k} for indices in [lo, hi]; beta_k(e_i..) = alpha (x)_H e_{sum i + k - 2}.
struct RankOne {
  AlgPtr alg;
  int lo = 0, hi = 0;
  std::map<std::vector<int>, TensorElement> alpha;
};

// Symmetry and composition conditions on alpha directly.
std::vector<Check> rank_one_verify(const RankOne& r, int max_n = 0);
// The induced structure on the free module with generators e_lo .. e_hi.
LInftyStructure rank_one_structure(const RankOne& r);

// (A, {mu_k}) with mu_k of degree k-2 and no symmetry.
struct AInftyStructure {
  ModulePtr module;
  std::map<int, PseudoMap> ops;
  int max_arity() const { return ops.empty() ? 1 : ops.rbegin()->first; }
};

AInftyStructure current_ainfty(const AInftyStructure& a, const AlgPtr& h);
// The higher associativity identities, positional insertion with its signs.
Check verify_ainfty(const AInftyStructure& a, int max_n = 0);
// [[nu, nu]]~ = 0 for nu the suspension.
Check verify_ainfty_mc(const AInftyStructure& a, int max_n = 0);
MapSum suspend_ainfty(const AInftyStructure& a, const ModulePtr& suspended);
LInftyStructure skew_symmetrize_ainfty(const AInftyStructure& a);

}  // namespace hpseudo
