#include "hpseudo/cohomology.hpp"

#include <functional>
#include <stdexcept>

namespace hpseudo {

namespace {

void require_degree_zero(const LInftyStructure& s, const Representation& r) {
  for (auto* m : {&s.module, &r.module})
    for (auto& g : (*m)->generators())
      if (g.degree != 0) throw std::invalid_argument("cochain complex: modules must be concentrated in degree 0");
}

std::vector<ModuleElement> generators_of(const ModulePtr& m, const GenTuple& t) {
  std::vector<ModuleElement> v;
  for (int g : t) v.push_back(ModuleElement::generator(m, g));
  return v;
}

Multilinear bracket_of(const LInftyStructure& s) {
  const PseudoMap* b = s.op(2);
  return b ? as_multilinear(*b) : zero_multilinear(2, 0, s.module);
}

Multilinear action_of(const Representation& r) {
  const PseudoMap* g = r.action(2);
  return g ? as_multilinear(*g) : zero_multilinear(2, 0, r.module);
}

}  // namespace

PseudoMap differential0(const LInftyStructure& s, const Representation& r, const ModuleElement& u) {
  require_degree_zero(s, r);
  PseudoMap out = PseudoMap::zero(1, 0, {s.module}, r.module, Symmetry::skew);
  Multilinear gamma = action_of(r);
  for (int x = 0; x < s.module->rank(); ++x) {
    QuotientTensor v = gamma({ModuleElement::generator(s.module, x), u});
    QuotientTensor w = QuotientTensor::zero(r.module, 1);
    // (f (x) 1) (x)_H m -> eps(1) f m
    for (auto& [key, c] : v.terms) normalize_into(w.terms, Tuple{key.slots[0]}, key.m, c, *r.module);
    out.set({x}, std::move(w));
  }
  return out;
}

QuotientTensor differential_value(const LInftyStructure& s, const Representation& r, const PseudoMap& theta,
                                  const GenTuple& gens) {
  const int n = theta.arity;
  if (static_cast<int>(gens.size()) != n + 1) throw std::domain_error("differential: wrong tuple length");
  Multilinear beta = bracket_of(s), gamma = action_of(r), th = as_multilinear(theta);
  auto args = generators_of(s.module, gens);
  QuotientTensor out = QuotientTensor::zero(r.module, n + 1);
  for (int i = 0; i <= n; ++i) {
    std::vector<int> order{i};
    for (int a = 0; a <= n; ++a)
      if (a != i) order.push_back(a);
    std::vector<ModuleElement> y;
    for (int o : order) y.push_back(args[o]);
    QuotientTensor v = relabel(compose_insert(gamma, th, y, 1), order);
    if (i % 2) out -= v;
    else out += v;
  }
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      std::vector<int> order{i, j};
      for (int a = 0; a <= n; ++a)
        if (a != i && a != j) order.push_back(a);
      std::vector<ModuleElement> y;
      for (int o : order) y.push_back(args[o]);
      QuotientTensor v = relabel(compose_insert(th, beta, y, 0), order);
      if ((i + j) % 2) out -= v;
      else out += v;
    }
  return out;
}

PseudoMap differential(const LInftyStructure& s, const Representation& r, const PseudoMap& theta) {
  require_degree_zero(s, r);
  const int n = theta.arity;
  PseudoMap out = PseudoMap::zero(n + 1, 0, std::vector<ModulePtr>(n + 1, s.module), r.module, Symmetry::skew);
  for (auto& t : sorted_tuples(s.module, n + 1)) out.set(t, differential_value(s, r, theta, t));
  return out;
}

Check is_cocycle(const LInftyStructure& s, const Representation& r, const PseudoMap& theta) {
  PseudoMap d = differential(s, r, theta);
  for (auto& [t, v] : d.table) {
    if (v.is_zero()) continue;
    Check c = Check::fail("cocycle", "delta is nonzero");
    c.level = theta.arity + 1;
    c.tuple = tuple_names(d.sources, t);
    c.residual = v;
    return c;
  }
  return Check::ok("cocycle");
}

namespace {

// Monomials of the polynomial part with total degree <= d.
std::vector<Monomial> monomials_upto(const HopfAlgebra& alg, int d) {
  std::vector<Monomial> out;
  Monomial cur = alg.one();
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == alg.nvars()) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur.exps[var] = static_cast<std::uint16_t>(e);
      rec(var + 1, left - e);
    }
    cur.exps[var] = 0;
  };
  rec(0, d);
  return out;
}

// Canonical terms (slots, key) of arity n with total coefficient degree <= d.
std::vector<QKey> window_terms(const ModulePtr& m, int n, int d) {
  const HopfAlgebra& alg = *m->algebra();
  if (alg.kind() != HopfAlgebra::Kind::polynomial) throw std::invalid_argument("cohomology window: polynomial H only");
  const bool findim = m->kind() == GradedHModule::Kind::findim;
  std::vector<QKey> out;
  QKey cur;
  std::function<void(int, int)> rec = [&](int slot, int left) {
    if (slot == n - 1) {
      for (auto& h : monomials_upto(alg, findim ? 0 : left))
        for (int g = 0; g < m->rank(); ++g) {
          cur.m = ModKey{h, g};
          out.push_back(cur);
        }
      return;
    }
    for (auto& x : monomials_upto(alg, left)) {
      cur.slots.push_back(x);
      rec(slot + 1, left - x.degree());
      cur.slots.pop_back();
    }
  };
  rec(0, d);
  return out;
}

class Indexer {
 public:
  int operator()(const GenTuple& t, const QKey& k) {
    auto [it, fresh] = ids_.try_emplace({t, k}, static_cast<int>(ids_.size()));
    return it->second;
  }

 private:
  std::map<std::pair<GenTuple, QKey>, int> ids_;
};

SparseVec vectorize(const PseudoMap& f, Indexer& ix) {
  SparseVec v;
  for (auto& [t, q] : f.table)
    for (auto& [k, c] : q.terms) v[ix(t, k)] += c;
  return v;
}

std::vector<PseudoMap> window_basis(const LInftyStructure& s, const Representation& r, int n, int d, Indexer& ix,
                                    EchelonBasis& span) {
  std::vector<PseudoMap> basis;
  const auto terms = window_terms(r.module, n, d);
  for (auto& t : sorted_tuples(s.module, n))
    for (auto& key : terms) {
      PseudoMap e = PseudoMap::zero(n, 0, std::vector<ModulePtr>(n, s.module), r.module, Symmetry::none);
      QuotientTensor q = QuotientTensor::zero(r.module, n);
      add_term(q.terms, key, Q(1));
      e.set(t, std::move(q));
      PseudoMap sk = skew_symmetrize(e);
      if (span.insert(vectorize(sk, ix))) basis.push_back(std::move(sk));
    }
  return basis;
}

}  // namespace

PseudoMap random_cochain(const LInftyStructure& s, const Representation& r, int n, int max_degree, std::mt19937& rng,
                         int terms) {
  const auto keys = window_terms(r.module, n, max_degree);
  const auto tuples = sorted_tuples(s.module, n);
  std::uniform_int_distribution<std::size_t> pick_key(0, keys.size() - 1), pick_tuple(0, tuples.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  PseudoMap e = PseudoMap::zero(n, 0, std::vector<ModulePtr>(n, s.module), r.module, Symmetry::none);
  for (int i = 0; i < terms; ++i) {
    const GenTuple& t = tuples[pick_tuple(rng)];
    QuotientTensor q = e.value(t);
    int c = 0;
    while (c == 0) c = coeff(rng);
    add_term(q.terms, keys[pick_key(rng)], Q(c));
    e.set(t, std::move(q));
  }
  return skew_symmetrize(e);
}

CohomologyWindow cohomology_dim(const LInftyStructure& s, const Representation& r, int n, int window) {
  if (n < 1) throw std::invalid_argument("cohomology_dim: n >= 1 required");
  require_degree_zero(s, r);
  CohomologyWindow out;
  out.n = n;
  out.window = window;
  Indexer ix_n, ix_next;
  EchelonBasis span_n;
  auto basis = window_basis(s, r, n, window, ix_n, span_n);
  out.window_dim = span_n.rank();
  EchelonBasis images;
  for (auto& b : basis) images.insert(vectorize(differential(s, r, b), ix_next));
  out.rank = images.rank();
  out.kernel = out.window_dim - out.rank;

  EchelonBasis prev_images;
  std::vector<PseudoMap> prev_maps;
  if (n == 1) {
    const HopfAlgebra& alg = *r.module->algebra();
    const bool findim = r.module->kind() == GradedHModule::Kind::findim;
    for (auto& h : monomials_upto(alg, findim ? 0 : window))
      for (int g = 0; g < r.module->rank(); ++g)
        prev_maps.push_back(differential0(s, r, ModuleElement{r.module, ModTerms{{ModKey{h, g}, Q(1)}}}));
  } else {
    Indexer ix_prev;
    EchelonBasis span_prev;
    for (auto& b : window_basis(s, r, n - 1, window, ix_prev, span_prev)) prev_maps.push_back(differential(s, r, b));
  }
  for (auto& m : prev_maps) {
    SparseVec v = vectorize(m, ix_n);
    if (!span_n.contains(v)) out.image_in_window = false;
    prev_images.insert(v);
  }
  out.image = prev_images.rank();
  out.cohomology = out.kernel - out.image;
  return out;
}

}  // namespace hpseudo
