#pragma once

#include "hpseudo/linalg.hpp"
#include "hpseudo/linfty.hpp"

#include <random>

namespace hpseudo {

// Cochains of a Lie pseudoalgebra (L, beta_2) with coefficients in (M, gamma_2), both in degree 0.
// C^0 elements are represented by module elements of M (classes in M / H_+ M);
// C^n for n >= 1 are skew PseudoMaps L^n -> M of degree 0.

// (delta u)(x) = sum eps(g_i) f_i u_i for gamma_2(x, u) = sum (f_i (x) g_i) (x)_H u_i.
PseudoMap differential0(const LInftyStructure& s, const Representation& r, const ModuleElement& u);
PseudoMap differential(const LInftyStructure& s, const Representation& r, const PseudoMap& theta);
// (delta theta) on one generator tuple, evaluated directly (no symmetry is used).
QuotientTensor differential_value(const LInftyStructure& s, const Representation& r, const PseudoMap& theta,
                                  const GenTuple& gens);
Check is_cocycle(const LInftyStructure& s, const Representation& r, const PseudoMap& theta);

// Skew n-cochain built from random canonical terms with coefficient degree <= max_degree.
PseudoMap random_cochain(const LInftyStructure& s, const Representation& r, int n, int max_degree, std::mt19937& rng,
                         int terms = 3);

struct CohomologyWindow {
  int n = 1;
  int window = 0;           // cap on the total H-degree of coefficients
  int window_dim = 0;       // dim of the degree-capped skew n-cochains
  int rank = 0;             // rank of delta on that window
  int kernel = 0;           // window_dim - rank
  int image = 0;            // rank of delta from the (n-1)-window
  int cohomology = 0;       // kernel - image
  bool image_in_window = true;  // every image of the (n-1)-window lies in the n-window
};

CohomologyWindow cohomology_dim(const LInftyStructure& s, const Representation& r, int n, int window);

}  // namespace hpseudo
