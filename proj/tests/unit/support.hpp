#pragma once

#include "hpseudo/fixtures.hpp"

#include <random>

namespace hpseudo::test {

inline Q binomial(int n, int k) {
  Q r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline Monomial mono(const AlgPtr& a, std::vector<int> exps, int group = -1) {
  Monomial m = a->one();
  for (std::size_t i = 0; i < exps.size(); ++i) m.exps[i] = static_cast<std::uint16_t>(exps[i]);
  if (group >= 0) m.group = static_cast<std::uint16_t>(group);
  return m;
}

// Random basis monomial with polynomial degree <= max_degree.
inline Monomial random_monomial(const AlgPtr& a, int max_degree, std::mt19937& rng) {
  Monomial m = a->one();
  int budget = std::uniform_int_distribution<int>(0, max_degree)(rng);
  for (int i = 0; i < a->nvars() && budget > 0; ++i) {
    int e = i + 1 == a->nvars() ? budget : std::uniform_int_distribution<int>(0, budget)(rng);
    m.exps[i] = static_cast<std::uint16_t>(e);
    budget -= e;
  }
  m.group = static_cast<std::uint16_t>(std::uniform_int_distribution<int>(0, a->group().size() - 1)(rng));
  return m;
}

inline Q random_q(std::mt19937& rng) {
  int p = std::uniform_int_distribution<int>(-4, 4)(rng);
  if (p == 0) p = 1;
  Q q(p, std::uniform_int_distribution<int>(1, 3)(rng));
  q.canonicalize();
  return q;
}

// Random canonical element of H^{(x)n} (x)_H M built from a few raw terms.
inline QuotientTensor random_quotient(const ModulePtr& m, int n, int max_degree, std::mt19937& rng, int terms = 3) {
  std::vector<RawTerm> raw;
  const AlgPtr& a = m->algebra();
  for (int t = 0; t < terms; ++t) {
    Tuple slots;
    for (int i = 0; i < n; ++i) slots.push_back(random_monomial(a, max_degree, rng));
    ModKey k{a->one(), std::uniform_int_distribution<int>(0, m->rank() - 1)(rng)};
    if (m->kind() == GradedHModule::Kind::free) k.h = random_monomial(a, max_degree, rng);
    if (m->kind() == GradedHModule::Kind::equivariant) {
      k.h = random_monomial(a, max_degree, rng);
      k.h.group = a->group().identity;
    }
    raw.push_back({slots, k, random_q(rng)});
  }
  return normalize(raw, m, n);
}

// Random degree-respecting k-ary map on one module; about half the tuples get a value.
inline PseudoMap random_map(const ModulePtr& w, int k, int deg, std::mt19937& rng, Symmetry s = Symmetry::none) {
  PseudoMap f = PseudoMap::zero(k, deg, std::vector<ModulePtr>(k, w), w, Symmetry::none);
  const AlgPtr& a = w->algebra();
  for (auto& tup : all_tuples(f.sources)) {
    if (rng() % 2) continue;
    int td = deg;
    for (int x : tup) td += w->degree(x);
    std::vector<int> cands;
    for (int i = 0; i < w->rank(); ++i)
      if (w->degree(i) == td) cands.push_back(i);
    if (cands.empty()) continue;
    Tuple sl;
    for (int i = 0; i < k; ++i) sl.push_back(random_monomial(a, 1, rng));
    f.table[tup] = normalize({{sl, w->key(cands[rng() % cands.size()]), random_q(rng)}}, w, k);
  }
  if (s == Symmetry::skew) return skew_symmetrize(f);
  if (s == Symmetry::sym) return symmetrize(f);
  return f;
}

inline ModuleElement gen(const ModulePtr& m, const std::string& name) {
  return ModuleElement::generator(m, m->index_of(name));
}

}  // namespace hpseudo::test
