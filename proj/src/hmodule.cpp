#include "hpseudo/hmodule.hpp"

#include "hpseudo/linalg.hpp"

#include <fmt/format.h>

#include <set>
#include <stdexcept>

namespace hpseudo {

void add_term(ModTerms& t, const ModKey& k, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = t.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

namespace {

bool is_square(const Matrix& m, int n) {
  if (static_cast<int>(m.size()) != n) return false;
  for (auto& r : m)
    if (static_cast<int>(r.size()) != n) return false;
  return true;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const int n = static_cast<int>(a.size());
  Matrix c(n, std::vector<Q>(n, Q(0)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Matrix mat_identity(int n) {
  Matrix m(n, std::vector<Q>(n, Q(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void check_group_matrices(const std::vector<Matrix>& g, const FiniteGroup& grp, int n, const char* what) {
  if (static_cast<int>(g.size()) != grp.size())
    throw std::invalid_argument(fmt::format("{}: one matrix per group element required", what));
  for (auto& m : g)
    if (!is_square(m, n)) throw std::invalid_argument(fmt::format("{}: matrix has wrong shape", what));
  if (g[grp.identity] != mat_identity(n)) throw std::invalid_argument(fmt::format("{}: identity acts nontrivially", what));
  for (int a = 0; a < grp.size(); ++a)
    for (int b = 0; b < grp.size(); ++b)
      if (mat_mul(g[a], g[b]) != g[grp.mul(a, b)])
        throw std::invalid_argument(fmt::format("{}: matrices violate the group law", what));
}

}  // namespace

ModulePtr GradedHModule::free_module(std::string name, AlgPtr alg, std::vector<Generator> gens) {
  auto m = std::shared_ptr<GradedHModule>(new GradedHModule());
  m->kind_ = Kind::free;
  m->name_ = std::move(name);
  m->alg_ = std::move(alg);
  m->gens_ = std::move(gens);
  m->check();
  return m;
}

ModulePtr GradedHModule::findim(std::string name, AlgPtr alg, std::vector<Generator> basis,
                                std::vector<Matrix> var_action, std::vector<Matrix> group_action) {
  auto m = std::shared_ptr<GradedHModule>(new GradedHModule());
  m->kind_ = Kind::findim;
  m->name_ = std::move(name);
  m->alg_ = std::move(alg);
  m->gens_ = std::move(basis);
  const int n = m->rank();
  if (group_action.empty()) group_action.assign(m->alg_->group().size(), mat_identity(n));
  if (static_cast<int>(var_action.size()) != m->alg_->nvars())
    throw std::invalid_argument("findim module: one matrix per variable required");
  for (auto& v : var_action)
    if (!is_square(v, n)) throw std::invalid_argument("findim module: variable matrix has wrong shape");
  for (std::size_t i = 0; i < var_action.size(); ++i)
    for (std::size_t j = 0; j < var_action.size(); ++j)
      if (mat_mul(var_action[i], var_action[j]) != mat_mul(var_action[j], var_action[i]))
        throw std::invalid_argument("findim module: variable matrices do not commute");
  check_group_matrices(group_action, m->alg_->group(), n, "findim module");
  // g d_i g^{-1} = g.d_i as operators
  const auto& grp = m->alg_->group();
  for (int g = 0; g < grp.size(); ++g)
    for (int i = 0; i < m->alg_->nvars(); ++i) {
      Matrix lhs = mat_mul(mat_mul(group_action[g], var_action[i]), group_action[grp.inverse[g]]);
      Matrix rhs(n, std::vector<Q>(n, Q(0)));
      for (int j = 0; j < m->alg_->nvars(); ++j)
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) rhs[r][c] += m->alg_->action(g)[i][j] * var_action[j][r][c];
      if (lhs != rhs) throw std::invalid_argument("findim module: group and variable actions are incompatible");
    }
  for (auto& b : m->gens_)
    for (auto& b2 : m->gens_)
      if (&b != &b2 && b.name == b2.name) throw std::invalid_argument("findim module: duplicate basis name");
  m->var_action_ = std::move(var_action);
  m->group_action_ = std::move(group_action);
  // only degree-preserving actions are allowed
  auto check_degrees = [&](const Matrix& a) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (a[r][c] != 0 && m->gens_[r].degree != m->gens_[c].degree)
          throw std::invalid_argument("findim module: action does not preserve degree");
  };
  for (auto& a : m->var_action_) check_degrees(a);
  for (auto& a : m->group_action_) check_degrees(a);
  return m;
}

ModulePtr GradedHModule::equivariant(std::string name, AlgPtr alg, std::vector<Generator> gens,
                                     std::vector<Matrix> group_action) {
  auto m = std::shared_ptr<GradedHModule>(new GradedHModule());
  m->kind_ = Kind::equivariant;
  m->name_ = std::move(name);
  m->alg_ = std::move(alg);
  m->gens_ = std::move(gens);
  m->check();
  check_group_matrices(group_action, m->alg_->group(), m->rank(), "equivariant module");
  for (auto& a : group_action)
    for (int r = 0; r < m->rank(); ++r)
      for (int c = 0; c < m->rank(); ++c)
        if (a[r][c] != 0 && m->gens_[r].degree != m->gens_[c].degree)
          throw std::invalid_argument("equivariant module: action does not preserve degree");
  m->group_action_ = std::move(group_action);
  return m;
}

void GradedHModule::check() const {
  std::set<std::string> seen;
  for (auto& g : gens_)
    if (!seen.insert(g.name).second) throw std::invalid_argument("duplicate generator name '" + g.name + "'");
}

int GradedHModule::index_of(const std::string& gen) const {
  for (int i = 0; i < rank(); ++i)
    if (gens_[i].name == gen) return i;
  throw std::invalid_argument("unknown generator '" + gen + "' in module '" + name_ + "'");
}

bool GradedHModule::valid(const ModKey& k) const {
  if (k.gen < 0 || k.gen >= rank() || !alg_->valid(k.h)) return false;
  if (kind_ == Kind::findim) return k.h == alg_->one();
  if (kind_ == Kind::equivariant) return k.h.group == alg_->group().identity;
  return true;
}

ModTerms GradedHModule::act(const Monomial& h, const ModKey& k) const {
  ModTerms out;
  switch (kind_) {
    case Kind::free:
      for (auto& [m, c] : alg_->mul(h, k.h)) add_term(out, ModKey{m, k.gen}, c);
      break;
    case Kind::findim: {
      // d^a g . v = N^a (G v)
      const int n = rank();
      std::vector<Q> v(n, Q(0));
      for (int r = 0; r < n; ++r) v[r] = group_action_[h.group][r][k.gen];
      for (int i = 0; i < alg_->nvars(); ++i)
        for (int e = 0; e < h.exps[i]; ++e) {
          std::vector<Q> w(n, Q(0));
          for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) w[r] += var_action_[i][r][c] * v[c];
          v = std::move(w);
        }
      for (int r = 0; r < n; ++r) add_term(out, ModKey{alg_->one(), r}, v[r]);
      break;
    }
    case Kind::equivariant: {
      // d^a g . (d^b e) = d^a (g.d^b) (g.e)
      Monomial poly = h;
      poly.group = static_cast<std::uint16_t>(alg_->group().identity);
      for (auto& [m1, c1] : alg_->act_group(h.group, k.h))
        for (auto& [m2, c2] : alg_->mul(poly, m1))
          for (int r = 0; r < rank(); ++r) {
            const Q& a = group_action_[h.group][r][k.gen];
            if (a != 0) add_term(out, ModKey{m2, r}, c1 * c2 * a);
          }
      break;
    }
  }
  return out;
}

ModTerms GradedHModule::act(const Monomial& h, const ModTerms& m) const {
  ModTerms out;
  for (auto& [k, c] : m)
    for (auto& [k2, c2] : act(h, k)) add_term(out, k2, c * c2);
  return out;
}

ModulePtr GradedHModule::with_generators(std::string name, std::vector<Generator> gens) const {
  if (static_cast<int>(gens.size()) != rank()) throw std::invalid_argument("with_generators: rank mismatch");
  auto m = std::shared_ptr<GradedHModule>(new GradedHModule(*this));
  m->name_ = std::move(name);
  m->gens_ = std::move(gens);
  m->check();
  return m;
}

std::string GradedHModule::format(const ModKey& k) const {
  if (alg_->is_one(k.h)) return gens_[k.gen].name;
  return alg_->format(k.h) + "*" + gens_[k.gen].name;
}

bool GradedHModule::same_shape(const GradedHModule& o) const {
  if (kind_ != o.kind_ || rank() != o.rank() || !alg_->same_as(*o.alg_)) return false;
  for (int i = 0; i < rank(); ++i)
    if (gens_[i].degree != o.gens_[i].degree) return false;
  return var_action_ == o.var_action_ && group_action_ == o.group_action_;
}

// ---------------------------------------------------------------- elements

ModuleElement ModuleElement::generator(const ModulePtr& m, int gen) {
  if (gen < 0 || gen >= m->rank()) throw std::out_of_range("generator index out of range");
  return {m, ModTerms{{m->key(gen), Q(1)}}};
}

int ModuleElement::degree() const {
  if (terms.empty()) throw std::domain_error("zero element has no degree");
  int d = module->degree(terms.begin()->first.gen);
  for (auto& [k, c] : terms)
    if (module->degree(k.gen) != d) throw std::domain_error("inhomogeneous module element");
  return d;
}

ModuleElement act_module(const HElement& h, const ModuleElement& m) {
  if (!h.alg->same_as(*m.module->algebra())) throw std::domain_error("act_module: algebra mismatch");
  ModuleElement out{m.module, {}};
  for (auto& [mono, c] : h.terms)
    for (auto& [k, c2] : m.module->act(mono, m.terms)) add_term(out.terms, k, c * c2);
  return out;
}

ModuleElement operator+(const ModuleElement& a, const ModuleElement& b) {
  ModuleElement r = a;
  if (!r.module) r.module = b.module;
  for (auto& [k, c] : b.terms) add_term(r.terms, k, c);
  return r;
}

ModuleElement operator*(const Q& c, const ModuleElement& a) {
  ModuleElement r{a.module, {}};
  for (auto& [k, v] : a.terms) add_term(r.terms, k, c * v);
  return r;
}

// ---------------------------------------------------------------- derived modules

namespace {

ModulePtr shift(const ModulePtr& m, int by, const std::string& suffix) {
  auto gens = m->generators();
  for (auto& g : gens) g.degree += by;
  return m->with_generators(m->name() + suffix, std::move(gens));
}

}  // namespace

ModulePtr suspend(const ModulePtr& m) { return shift(m, 1, "[-1]"); }

ModulePtr desuspend(const ModulePtr& m) {
  std::string name = m->name();
  if (name.size() >= 4 && name.ends_with("[-1]")) name.resize(name.size() - 4);
  else name += "[1]";
  auto gens = m->generators();
  for (auto& g : gens) g.degree -= 1;
  return m->with_generators(name, std::move(gens));
}

ModulePtr direct_sum(const std::string& name, const ModulePtr& a, const ModulePtr& b) {
  if (a->kind() != b->kind() || a->kind() == GradedHModule::Kind::findim)
    throw std::invalid_argument("direct_sum: both summands must be free, or both equivariant");
  if (!a->algebra()->same_as(*b->algebra())) throw std::invalid_argument("direct_sum: algebra mismatch");
  std::vector<Generator> gens = a->generators();
  std::set<std::string> used;
  for (auto& g : gens) used.insert(g.name);
  for (auto g : b->generators()) {
    while (used.count(g.name)) g.name += "'";
    used.insert(g.name);
    gens.push_back(g);
  }
  if (a->kind() == GradedHModule::Kind::free) return GradedHModule::free_module(name, a->algebra(), std::move(gens));
  const int na = a->rank(), nb = b->rank(), n = na + nb;
  std::vector<Matrix> act;
  for (std::size_t g = 0; g < a->group_action().size(); ++g) {
    Matrix m(n, std::vector<Q>(n, Q(0)));
    for (int r = 0; r < na; ++r)
      for (int c = 0; c < na; ++c) m[r][c] = a->group_action()[g][r][c];
    for (int r = 0; r < nb; ++r)
      for (int c = 0; c < nb; ++c) m[na + r][na + c] = b->group_action()[g][r][c];
    act.push_back(std::move(m));
  }
  return GradedHModule::equivariant(name, a->algebra(), std::move(gens), std::move(act));
}

ModulePtr sub_module(const std::string& name, const ModulePtr& m, const std::vector<int>& gens, int degree_shift) {
  if (m->kind() != GradedHModule::Kind::free) throw std::invalid_argument("sub_module: free modules only");
  std::vector<Generator> g;
  for (int i : gens) {
    auto x = m->generators().at(i);
    x.degree += degree_shift;
    g.push_back(x);
  }
  return GradedHModule::free_module(name, m->algebra(), std::move(g));
}

// ---------------------------------------------------------------- coinvariants

std::vector<Q> Coinvariants::project(const ModKey& k) const {
  std::vector<Q> out(dim, Q(0));
  const Q e = module->algebra()->counit(k.h);
  if (e == 0) return out;
  for (int i = 0; i < dim; ++i) out[i] = e * matrix[i][k.gen];
  return out;
}

std::vector<Q> Coinvariants::project(const ModTerms& t) const {
  std::vector<Q> out(dim, Q(0));
  for (auto& [k, c] : t) {
    auto p = project(k);
    for (int i = 0; i < dim; ++i) out[i] += c * p[i];
  }
  return out;
}

Coinvariants coinvariants(const ModulePtr& m) {
  const int n = m->rank();
  EchelonBasis w;
  // H_+ M restricted to the generator span: (x - eps(x)) e_j for algebra generators x
  auto add_columns = [&](const Matrix& a, bool minus_identity) {
    for (int j = 0; j < n; ++j) {
      SparseVec v;
      for (int r = 0; r < n; ++r) {
        Q c = a[r][j];
        if (minus_identity && r == j) c -= 1;
        if (c != 0) v[r] = c;
      }
      w.insert(v);
    }
  };
  if (m->kind() == GradedHModule::Kind::findim) {
    for (auto& a : m->var_action()) add_columns(a, false);
    for (auto& a : m->group_action()) add_columns(a, true);
  } else if (m->kind() == GradedHModule::Kind::equivariant) {
    for (auto& a : m->group_action()) add_columns(a, true);
  }
  Coinvariants q;
  q.module = m;
  std::vector<int> coords;
  for (int j = 0; j < n; ++j)
    if (!w.is_pivot(j)) {
      coords.push_back(j);
      q.names.push_back("[" + m->generators()[j].name + "]");
    }
  q.dim = static_cast<int>(coords.size());
  q.matrix.assign(q.dim, std::vector<Q>(n, Q(0)));
  for (int j = 0; j < n; ++j) {
    SparseVec r = w.reduce(SparseVec{{j, Q(1)}});
    for (int i = 0; i < q.dim; ++i) {
      auto it = r.find(coords[i]);
      if (it != r.end()) q.matrix[i][j] = it->second;
    }
  }
  return q;
}

}  // namespace hpseudo
