#include "hpseudo/hopf.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace hpseudo {

void add_term(Poly& p, const Monomial& m, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = p.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

void add_term(TensorTerms& t, const Tuple& k, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = t.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

// ---------------------------------------------------------------- groups

int FiniteGroup::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names[i] == name) return i;
  throw std::invalid_argument("unknown group element '" + name + "'");
}

void FiniteGroup::validate() const {
  const int n = size();
  if (n == 0) throw std::invalid_argument("empty group");
  if (static_cast<int>(table.size()) != n || static_cast<int>(inverse.size()) != n)
    throw std::invalid_argument("group table has wrong shape");
  for (auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("group table has wrong shape");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("group table entry out of range");
  }
  if (identity < 0 || identity >= n) throw std::invalid_argument("identity out of range");
  for (int a = 0; a < n; ++a) {
    if (table[identity][a] != a || table[a][identity] != a)
      throw std::invalid_argument("identity is not two-sided");
    if (table[a][inverse[a]] != identity || table[inverse[a]][a] != identity)
      throw std::invalid_argument("inverse map is not a two-sided inverse");
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw std::invalid_argument("group table is not associative");
  }
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup{{"1"}, {{0}}, 0, {0}}; }

FiniteGroup FiniteGroup::cyclic(int n, const std::string& gen) {
  FiniteGroup g;
  for (int i = 0; i < n; ++i) g.names.push_back(i == 0 ? "1" : i == 1 ? gen : gen + "^" + std::to_string(i));
  g.table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.table[a][b] = (a + b) % n;
  g.identity = 0;
  for (int a = 0; a < n; ++a) g.inverse.push_back((n - a) % n);
  return g;
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  FiniteGroup g;
  for (auto& q : perms) g.names.push_back(fmt::format("p{}{}{}", q[0], q[1], q[2]));
  const int n = 6;
  auto find = [&](const std::array<int, 3>& q) {
    for (int i = 0; i < n; ++i)
      if (perms[i] == q) return i;
    return -1;
  };
  g.table.assign(n, std::vector<int>(n));
  g.inverse.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      g.table[a][b] = find(c);
    }
  g.identity = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.table[a][b] == 0) g.inverse[a] = b;
  return g;
}

// ---------------------------------------------------------------- construction

namespace {

Matrix identity_matrix(int n) {
  Matrix m(n, std::vector<Q>(n, Q(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  const int n = static_cast<int>(a.size());
  Matrix c(n, std::vector<Q>(n, Q(0)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace

AlgPtr HopfAlgebra::polynomial(std::vector<std::string> variables) {
  if (static_cast<int>(variables.size()) > kMaxVars)
    throw std::invalid_argument(fmt::format("at most {} polynomial variables are supported", kMaxVars));
  auto h = std::shared_ptr<HopfAlgebra>(new HopfAlgebra());
  h->kind_ = Kind::polynomial;
  h->variables_ = std::move(variables);
  h->finish();
  return h;
}

AlgPtr HopfAlgebra::group_algebra(FiniteGroup g) {
  g.validate();
  auto h = std::shared_ptr<HopfAlgebra>(new HopfAlgebra());
  h->kind_ = Kind::group;
  h->group_ = std::move(g);
  h->finish();
  return h;
}

AlgPtr HopfAlgebra::smash(AlgPtr base, FiniteGroup gamma, std::vector<Matrix> poly_action) {
  if (!base || base->kind() != Kind::polynomial)
    throw std::invalid_argument("smash with a matrix action needs a polynomial base");
  gamma.validate();
  const int n = base->nvars();
  if (static_cast<int>(poly_action.size()) != gamma.size())
    throw std::invalid_argument("smash action must give one matrix per group element");
  for (auto& m : poly_action) {
    if (static_cast<int>(m.size()) != n) throw std::invalid_argument("smash action matrix has wrong shape");
    for (auto& r : m)
      if (static_cast<int>(r.size()) != n) throw std::invalid_argument("smash action matrix has wrong shape");
  }
  // g.(h.d_i) = sum_j A_h[i][j] g.d_j, so the matrix of gh is A_h * A_g.
  if (poly_action[gamma.identity] != identity_matrix(n))
    throw std::invalid_argument("identity must act trivially");
  for (int a = 0; a < gamma.size(); ++a)
    for (int b = 0; b < gamma.size(); ++b)
      if (matmul(poly_action[b], poly_action[a]) != poly_action[gamma.mul(a, b)])
        throw std::invalid_argument("smash action does not respect the group law");
  auto h = std::shared_ptr<HopfAlgebra>(new HopfAlgebra());
  h->kind_ = Kind::smash;
  h->variables_ = base->variables();
  h->group_ = gamma;
  h->action_ = poly_action;
  h->base_ = base;
  h->gamma_ = std::move(gamma);
  h->gamma_poly_action_ = std::move(poly_action);
  h->finish();
  return h;
}

AlgPtr HopfAlgebra::smash_group(AlgPtr base, FiniteGroup gamma, std::vector<std::vector<int>> group_action) {
  if (!base || base->kind() != Kind::group)
    throw std::invalid_argument("smash with a permutation action needs a group base");
  gamma.validate();
  const FiniteGroup& b = base->group();
  const int nb = b.size(), ng = gamma.size();
  if (static_cast<int>(group_action.size()) != ng) throw std::invalid_argument("one automorphism per element required");
  for (auto& phi : group_action) {
    if (static_cast<int>(phi.size()) != nb) throw std::invalid_argument("automorphism has wrong size");
    std::vector<bool> hit(nb, false);
    for (int v : phi) {
      if (v < 0 || v >= nb || hit[v]) throw std::invalid_argument("automorphism is not a bijection");
      hit[v] = true;
    }
    for (int x = 0; x < nb; ++x)
      for (int y = 0; y < nb; ++y)
        if (phi[b.mul(x, y)] != b.mul(phi[x], phi[y])) throw std::invalid_argument("action is not multiplicative");
  }
  for (int x = 0; x < nb; ++x)
    if (group_action[gamma.identity][x] != x) throw std::invalid_argument("identity must act trivially");
  for (int g1 = 0; g1 < ng; ++g1)
    for (int g2 = 0; g2 < ng; ++g2)
      for (int x = 0; x < nb; ++x)
        if (group_action[gamma.mul(g1, g2)][x] != group_action[g1][group_action[g2][x]])
          throw std::invalid_argument("action does not respect the group law");

  // (b, g)(b', g') = (b * g.b', g g')
  FiniteGroup sd;
  for (int x = 0; x < nb; ++x)
    for (int g = 0; g < ng; ++g) sd.names.push_back(b.names[x] + "." + gamma.names[g]);
  const int n = nb * ng;
  sd.table.assign(n, std::vector<int>(n));
  sd.inverse.assign(n, 0);
  for (int x = 0; x < nb; ++x)
    for (int g = 0; g < ng; ++g)
      for (int y = 0; y < nb; ++y)
        for (int h = 0; h < ng; ++h)
          sd.table[x * ng + g][y * ng + h] = b.mul(x, group_action[g][y]) * ng + gamma.mul(g, h);
  sd.identity = b.identity * ng + gamma.identity;
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      if (sd.table[a][c] == sd.identity) sd.inverse[a] = c;
  sd.validate();

  auto h = std::shared_ptr<HopfAlgebra>(new HopfAlgebra());
  h->kind_ = Kind::smash;
  h->group_ = std::move(sd);
  h->base_ = base;
  h->gamma_ = std::move(gamma);
  h->gamma_group_action_ = std::move(group_action);
  h->finish();
  return h;
}

void HopfAlgebra::finish() {
  const int n = nvars();
  if (action_.empty()) action_.assign(group_.size(), identity_matrix(n));
  trivial_action_ = true;
  for (auto& m : action_)
    if (m != identity_matrix(n)) trivial_action_ = false;
  // Cocommutativity on generators: d_i primitive and g group-like are both symmetric.
  for (int i = 0; i < n; ++i) {
    auto c = comul(variable(i), 2);
    for (auto& [t, q] : c) {
      Tuple s{t[1], t[0]};
      bool found = false;
      for (auto& [u, r] : c)
        if (u == s && r == q) found = true;
      if (!found) throw std::logic_error("coproduct is not cocommutative");
    }
  }
}

// ---------------------------------------------------------------- monomials

Monomial HopfAlgebra::one() const {
  Monomial m;
  m.group = static_cast<std::uint16_t>(group_.identity);
  return m;
}

Monomial HopfAlgebra::variable(int i) const {
  Monomial m = one();
  m.exps[i] = 1;
  return m;
}

Monomial HopfAlgebra::group_element(int g) const {
  Monomial m;
  m.group = static_cast<std::uint16_t>(g);
  return m;
}

bool HopfAlgebra::valid(const Monomial& m) const {
  for (int i = nvars(); i < kMaxVars; ++i)
    if (m.exps[i] != 0) return false;
  return m.group < group_.size();
}

Poly HopfAlgebra::act_group(int g, const Monomial& m) const {
  Monomial base = m;
  base.group = static_cast<std::uint16_t>(group_.identity);
  if (trivial_action_ || g == group_.identity) return Poly{{base, Q(1)}};
  const Matrix& a = action_[g];
  // product over i of (sum_j a[i][j] d_j)^{m_i}
  Poly result{{one(), Q(1)}};
  for (int i = 0; i < nvars(); ++i) {
    Poly lin;
    for (int j = 0; j < nvars(); ++j)
      if (a[i][j] != 0) add_term(lin, variable(j), a[i][j]);
    for (int e = 0; e < m.exps[i]; ++e) result = mul(result, lin);
  }
  return result;
}

Poly HopfAlgebra::mul(const Monomial& a, const Monomial& b) const {
  // d^a g . d^b h = d^a (g.d^b) gh
  const int gh = group_.mul(a.group, b.group);
  Poly out;
  auto push = [&](const Monomial& poly_part, const Q& c) {
    Monomial r = poly_part;
    for (int i = 0; i < kMaxVars; ++i) {
      const int s = static_cast<int>(r.exps[i]) + a.exps[i];
      if (s > 0xFFFF) throw std::overflow_error("monomial exponent overflow");
      r.exps[i] = static_cast<std::uint16_t>(s);
    }
    r.group = static_cast<std::uint16_t>(gh);
    add_term(out, r, c);
  };
  if (trivial_action_ || a.group == group_.identity) {
    Monomial bb = b;
    push(bb, Q(1));
  } else {
    for (auto& [t, c] : act_group(a.group, b)) push(t, c);
  }
  return out;
}

Poly HopfAlgebra::mul(const Poly& a, const Poly& b) const {
  Poly out;
  for (auto& [ma, ca] : a)
    for (auto& [mb, cb] : b)
      for (auto& [m, c] : mul(ma, mb)) add_term(out, m, ca * cb * c);
  return out;
}

namespace {

mpz_class factorial(int n) {
  mpz_class r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

std::vector<std::pair<Tuple, Q>> HopfAlgebra::comul(const Monomial& m, int n) const {
  if (n < 1) throw std::invalid_argument("comul needs n >= 1");
  const Monomial g = group_element(m.group);
  std::vector<std::pair<Tuple, Q>> acc{{Tuple(n, g), Q(1)}};
  for (int var = 0; var < nvars(); ++var) {
    const int e = m.exps[var];
    if (e == 0) continue;
    // compositions of e into n ordered parts, weighted by the multinomial coefficient
    std::vector<std::pair<std::vector<int>, Q>> parts;
    std::vector<int> cur(n, 0);
    std::function<void(int, int)> rec = [&](int slot, int left) {
      if (slot == n - 1) {
        cur[slot] = left;
        mpz_class w = factorial(e);
        for (int v : cur) w /= factorial(v);
        parts.emplace_back(cur, Q(w));
        return;
      }
      for (int k = 0; k <= left; ++k) {
        cur[slot] = k;
        rec(slot + 1, left - k);
      }
    };
    rec(0, e);
    std::vector<std::pair<Tuple, Q>> next;
    next.reserve(acc.size() * parts.size());
    for (auto& [t, c] : acc)
      for (auto& [pv, w] : parts) {
        Tuple x = t;
        for (int s = 0; s < n; ++s) x[s].exps[var] = static_cast<std::uint16_t>(pv[s]);
        next.emplace_back(std::move(x), c * w);
      }
    acc = std::move(next);
  }
  return acc;
}

Poly HopfAlgebra::antipode(const Monomial& m) const {
  // S(d^a g) = g^{-1} (-1)^{|a|} d^a = (-1)^{|a|} (g^{-1}.d^a) g^{-1}
  const int ginv = group_.inverse[m.group];
  Monomial poly_part = m;
  poly_part.group = static_cast<std::uint16_t>(group_.identity);
  Poly out;
  const Q s = (m.degree() % 2) ? Q(-1) : Q(1);
  for (auto& [t, c] : act_group(ginv, poly_part)) {
    Monomial r = t;
    r.group = static_cast<std::uint16_t>(ginv);
    add_term(out, r, s * c);
  }
  return out;
}

std::string HopfAlgebra::format(const Monomial& m) const {
  std::string s;
  for (int i = 0; i < nvars(); ++i) {
    if (m.exps[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += variables_[i];
    if (m.exps[i] > 1) s += "^" + std::to_string(m.exps[i]);
  }
  if (m.group != group_.identity) {
    if (!s.empty()) s += "*";
    s += group_.names[m.group];
  }
  return s.empty() ? "1" : s;
}

std::string HopfAlgebra::format(const Poly& p) const {
  if (p.empty()) return "0";
  std::string s;
  for (auto& [m, c] : p) {
    if (!s.empty()) s += " + ";
    s += "(" + format_q(c) + ")" + format(m);
  }
  return s;
}

bool HopfAlgebra::same_as(const HopfAlgebra& o) const {
  return this == &o || (kind_ == o.kind_ && variables_ == o.variables_ && group_.table == o.group_.table &&
                        group_.names == o.group_.names && action_ == o.action_);
}

// ---------------------------------------------------------------- element level

namespace {

void require_same(const AlgPtr& a, const AlgPtr& b) {
  if (!a || !b || !a->same_as(*b)) throw std::domain_error("elements over different Hopf algebras");
}

}  // namespace

HElement mul(const HElement& a, const HElement& b) {
  require_same(a.alg, b.alg);
  return {a.alg, a.alg->mul(a.terms, b.terms)};
}

TensorElement comul(const HElement& a, int n) {
  TensorElement t{a.alg, n, {}};
  for (auto& [m, c] : a.terms)
    for (auto& [tup, w] : a.alg->comul(m, n)) add_term(t.terms, tup, c * w);
  return t;
}

Q counit(const HElement& a) {
  Q s = 0;
  for (auto& [m, c] : a.terms) s += c * a.alg->counit(m);
  return s;
}

HElement antipode(const HElement& a) {
  HElement r{a.alg, {}};
  for (auto& [m, c] : a.terms)
    for (auto& [t, w] : a.alg->antipode(m)) add_term(r.terms, t, c * w);
  return r;
}

TensorElement mul(const TensorElement& a, const TensorElement& b) {
  require_same(a.alg, b.alg);
  if (a.arity != b.arity) throw std::domain_error("tensor arity mismatch");
  TensorElement r{a.alg, a.arity, {}};
  for (auto& [ta, ca] : a.terms)
    for (auto& [tb, cb] : b.terms) {
      std::vector<std::pair<Tuple, Q>> acc{{Tuple{}, ca * cb}};
      for (int i = 0; i < a.arity; ++i) {
        std::vector<std::pair<Tuple, Q>> next;
        for (auto& [m, c] : a.alg->mul(ta[i], tb[i]))
          for (auto& [pre, w] : acc) {
            Tuple t = pre;
            t.push_back(m);
            next.emplace_back(std::move(t), w * c);
          }
        acc = std::move(next);
      }
      for (auto& [t, w] : acc) add_term(r.terms, t, w);
    }
  return r;
}

TensorElement delta_pi(const TensorElement& t, const std::vector<int>& pi) {
  const int ni = t.arity, nj = static_cast<int>(pi.size());
  std::vector<std::vector<int>> fibres(ni);
  for (int j = 0; j < nj; ++j) {
    if (pi[j] < 0 || pi[j] >= ni) throw std::domain_error("delta_pi: index out of range");
    fibres[pi[j]].push_back(j);
  }
  for (auto& f : fibres)
    if (f.empty()) throw std::domain_error("delta_pi: map is not surjective");
  TensorElement r{t.alg, nj, {}};
  for (auto& [tup, c] : t.terms) {
    std::vector<std::pair<Tuple, Q>> acc{{Tuple(nj), c}};
    for (int i = 0; i < ni; ++i) {
      std::vector<std::pair<Tuple, Q>> next;
      for (auto& [parts, w] : t.alg->comul(tup[i], static_cast<int>(fibres[i].size())))
        for (auto& [pre, v] : acc) {
          Tuple x = pre;
          for (std::size_t s = 0; s < parts.size(); ++s) x[fibres[i][s]] = parts[s];
          next.emplace_back(std::move(x), v * w);
        }
      acc = std::move(next);
    }
    for (auto& [x, v] : acc) add_term(r.terms, x, v);
  }
  return r;
}

TensorElement permute(const TensorElement& t, const std::vector<int>& dest) {
  if (static_cast<int>(dest.size()) != t.arity) throw std::domain_error("permutation size mismatch");
  TensorElement r{t.alg, t.arity, {}};
  for (auto& [tup, c] : t.terms) {
    Tuple x(t.arity);
    for (int j = 0; j < t.arity; ++j) x[dest[j]] = tup[j];
    add_term(r.terms, x, c);
  }
  return r;
}

TensorElement tensor_of(const HElement& a) {
  TensorElement t{a.alg, 1, {}};
  for (auto& [m, c] : a.terms) add_term(t.terms, Tuple{m}, c);
  return t;
}

}  // namespace hpseudo
