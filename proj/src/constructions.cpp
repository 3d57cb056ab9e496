#include "hpseudo/constructions.hpp"

#include <array>
#include <set>
#include <stdexcept>

namespace hpseudo {

AlgPtr ground_algebra() {
  static const AlgPtr k0 = HopfAlgebra::polynomial({});
  return k0;
}

LInftyStructure classical(const std::string& name, std::vector<Generator> gens, const StructureConstants& ops,
                          Symmetry symmetry) {
  AlgPtr k0 = ground_algebra();
  ModulePtr m = GradedHModule::free_module(name, k0, std::move(gens));
  LInftyStructure s{m, {}};
  for (auto& [k, table] : ops) {
    PseudoMap f = PseudoMap::zero(k, k - 2, std::vector<ModulePtr>(k, m), m, symmetry);
    for (auto& [t, value] : table) {
      QuotientTensor q = QuotientTensor::zero(m, k);
      for (auto& [gen, c] : value) add_term(q.terms, QKey{Tuple(k - 1, k0->one()), m->key(gen)}, c);
      f.set(t, std::move(q));
    }
    s.ops.emplace(k, std::move(f));
  }
  return s;
}

namespace {

void require_ground(const ModulePtr& m) {
  const auto& a = *m->algebra();
  if (a.nvars() != 0 || a.group().size() != 1) throw std::invalid_argument("current: input must be defined over Q");
  if (m->kind() != GradedHModule::Kind::free) throw std::invalid_argument("current: input module must be free");
}

std::map<int, PseudoMap> current_ops(const std::map<int, PseudoMap>& ops, const ModulePtr& m) {
  const Monomial one = m->algebra()->one();
  std::map<int, PseudoMap> out;
  for (auto& [k, f] : ops) {
    PseudoMap g = PseudoMap::zero(k, f.degree, std::vector<ModulePtr>(k, m), m, f.symmetry);
    for (auto& [t, v] : f.table) {
      QuotientTensor q = QuotientTensor::zero(m, k);
      for (auto& [key, c] : v.terms) add_term(q.terms, QKey{Tuple(k - 1, one), ModKey{one, key.m.gen}}, c);
      g.set(t, std::move(q));
    }
    out.emplace(k, std::move(g));
  }
  return out;
}

}  // namespace

LInftyStructure current(const LInftyStructure& g, const AlgPtr& h) {
  require_ground(g.module);
  ModulePtr m = GradedHModule::free_module("Cur(" + g.module->name() + ")", h, g.module->generators());
  return LInftyStructure{m, current_ops(g.ops, m)};
}

AInftyStructure current_ainfty(const AInftyStructure& a, const AlgPtr& h) {
  require_ground(a.module);
  ModulePtr m = GradedHModule::free_module("Cur(" + a.module->name() + ")", h, a.module->generators());
  return AInftyStructure{m, current_ops(a.ops, m)};
}

LInftyStructure current_extension(const LInftyStructure& s, const AlgPtr& h, const std::vector<int>& var_map) {
  const AlgPtr& sub = s.module->algebra();
  if (sub->kind() != HopfAlgebra::Kind::polynomial || h->kind() != HopfAlgebra::Kind::polynomial)
    throw std::invalid_argument("current_extension: polynomial algebras only");
  if (static_cast<int>(var_map.size()) != sub->nvars())
    throw std::invalid_argument("current_extension: one image per variable expected");
  std::set<int> used;
  for (int v : var_map)
    if (v < 0 || v >= h->nvars() || !used.insert(v).second)
      throw std::invalid_argument("current_extension: variable map is not an inclusion");
  if (s.module->kind() != GradedHModule::Kind::free) throw std::invalid_argument("current_extension: free modules only");
  auto embed = [&](const Monomial& x) {
    Monomial y = h->one();
    for (int i = 0; i < sub->nvars(); ++i) y.exps[var_map[i]] = x.exps[i];
    return y;
  };
  ModulePtr m = GradedHModule::free_module(s.module->name(), h, s.module->generators());
  LInftyStructure out{m, {}};
  for (auto& [k, f] : s.ops) {
    PseudoMap g = PseudoMap::zero(k, f.degree, std::vector<ModulePtr>(k, m), m, f.symmetry);
    for (auto& [t, v] : f.table) {
      QuotientTensor q = QuotientTensor::zero(m, k);
      for (auto& [key, c] : v.terms) {
        QKey k2{{}, ModKey{embed(key.m.h), key.m.gen}};
        for (auto& sl : key.slots) k2.slots.push_back(embed(sl));
        add_term(q.terms, k2, c);
      }
      g.set(t, std::move(q));
    }
    out.ops.emplace(k, std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------- lambda dictionary

namespace {

void require_one_variable(const ModulePtr& m) {
  const auto& a = *m->algebra();
  if (a.kind() != HopfAlgebra::Kind::polynomial || a.nvars() != 1)
    throw std::invalid_argument("lambda dictionary: single-variable polynomial algebra required");
  if (m->kind() != GradedHModule::Kind::free) throw std::invalid_argument("lambda dictionary: free modules only");
}

std::vector<LambdaTerm> canonical_terms(std::vector<LambdaTerm> v) {
  std::map<std::tuple<std::vector<int>, int, int>, Q> acc;
  for (auto& t : v) acc[{t.lambda, t.d, t.gen}] += t.c;
  std::vector<LambdaTerm> out;
  for (auto& [k, c] : acc)
    if (c != 0) out.push_back(LambdaTerm{std::get<0>(k), std::get<1>(k), std::get<2>(k), c});
  return out;
}

}  // namespace

LInftyStructure conformal_to_pseudo(const LambdaTable& t) {
  require_one_variable(t.module);
  const AlgPtr& alg = t.module->algebra();
  LInftyStructure s{t.module, {}};
  for (auto& [k, table] : t.ops) {
    auto sit = t.symmetry.find(k);
    Symmetry sym = sit == t.symmetry.end() ? Symmetry::skew : sit->second;
    PseudoMap f = PseudoMap::zero(k, k - 2, std::vector<ModulePtr>(k, t.module), t.module, sym);
    for (auto& [tuple, terms] : table) {
      QuotientTensor q = QuotientTensor::zero(t.module, k);
      for (auto& term : terms) {
        if (static_cast<int>(term.lambda.size()) != k - 1) throw std::invalid_argument("lambda table: wrong exponent count");
        QKey key;
        int total = 0;
        for (int e : term.lambda) {
          if (e < 0 || term.d < 0) throw std::invalid_argument("lambda table: negative exponent");
          Monomial x = alg->one();
          x.exps[0] = static_cast<std::uint16_t>(e);
          key.slots.push_back(x);
          total += e;
        }
        key.m = t.module->key(term.gen);
        key.m.h.exps[0] = static_cast<std::uint16_t>(term.d);
        add_term(q.terms, key, total % 2 ? Q(-term.c) : term.c);
      }
      f.set(tuple, std::move(q));
    }
    s.ops.emplace(k, std::move(f));
  }
  return s;
}

LambdaTable pseudo_to_conformal(const LInftyStructure& s) {
  require_one_variable(s.module);
  LambdaTable t{s.module, {}, {}};
  for (auto& [k, f] : s.ops) {
    t.symmetry[k] = f.symmetry;
    auto& table = t.ops[k];
    for (auto& [tuple, v] : f.table) {
      std::vector<LambdaTerm> terms;
      for (auto& [key, c] : v.terms) {
        LambdaTerm term{{}, key.m.h.exps[0], key.m.gen, c};
        int total = 0;
        for (auto& sl : key.slots) {
          term.lambda.push_back(sl.exps[0]);
          total += sl.exps[0];
        }
        if (total % 2) term.c = -term.c;
        terms.push_back(std::move(term));
      }
      terms = canonical_terms(std::move(terms));
      if (!terms.empty()) table[tuple] = std::move(terms);
    }
  }
  return t;
}

bool same_lambda_table(const LambdaTable& a, const LambdaTable& b) {
  auto norm = [](const LambdaTable& t) {
    std::map<int, std::map<GenTuple, std::vector<LambdaTerm>>> out;
    for (auto& [k, table] : t.ops)
      for (auto& [tuple, terms] : table) {
        auto c = canonical_terms(terms);
        if (!c.empty()) out[k][tuple] = std::move(c);
      }
    return out;
  };
  return norm(a) == norm(b);
}

namespace {

// Polynomials in (lambda, mu, d) with module-generator labels.
using Exp3 = std::array<int, 3>;
using Poly3 = std::map<Exp3, Q>;
using Lin3 = std::array<Q, 3>;
using ElemPoly = std::map<int, Poly3>;

void add3(Poly3& p, const Exp3& e, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = p.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

Poly3 mul3(const Poly3& a, const Poly3& b) {
  Poly3 r;
  for (auto& [ea, ca] : a)
    for (auto& [eb, cb] : b) add3(r, {ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  return r;
}

Poly3 linear(const Lin3& l) {
  Poly3 p;
  for (int i = 0; i < 3; ++i) {
    Exp3 e{0, 0, 0};
    e[i] = 1;
    add3(p, e, l[i]);
  }
  return p;
}

Poly3 power(const Poly3& p, int n) {
  Poly3 r{{{0, 0, 0}, Q(1)}};
  for (int i = 0; i < n; ++i) r = mul3(r, p);
  return r;
}

// Substitute each variable by a linear form.
Poly3 substitute(const Poly3& p, const std::array<Lin3, 3>& forms) {
  Poly3 r;
  std::array<Poly3, 3> lin{linear(forms[0]), linear(forms[1]), linear(forms[2])};
  for (auto& [e, c] : p) {
    Poly3 t = mul3(mul3(power(lin[0], e[0]), power(lin[1], e[1])), power(lin[2], e[2]));
    for (auto& [e2, c2] : t) add3(r, e2, c * c2);
  }
  return r;
}

const Lin3 kLambda{Q(1), Q(0), Q(0)};
const Lin3 kMu{Q(0), Q(1), Q(0)};

// [x_v y] for generators with v a linear form in (lambda, mu).
ElemPoly gen_bracket(const LambdaTable& t, int x, int y, const Lin3& v) {
  ElemPoly out;
  auto kit = t.ops.find(2);
  if (kit == t.ops.end()) return out;
  const auto& table = kit->second;
  auto sit = t.symmetry.find(2);
  const Symmetry sym = sit == t.symmetry.end() ? Symmetry::skew : sit->second;
  auto it = table.find({x, y});
  const Poly3 vp = linear(v);
  if (it != table.end()) {
    for (auto& term : it->second) {
      Poly3 p = power(vp, term.lambda[0]);
      Poly3 d{{{0, 0, term.d}, term.c}};
      for (auto& [e, c] : mul3(p, d)) add3(out[term.gen], e, c);
    }
    return out;
  }
  if (sym == Symmetry::none || x <= y) return out;
  // [y_v x] = -[x_{-v-d} y] for a skew table stored on sorted pairs
  auto jt = table.find({y, x});
  if (jt == table.end()) return out;
  const Poly3 mvp = linear(Lin3{-v[0], -v[1], Q(-1)});
  for (auto& term : jt->second) {
    Poly3 p = power(mvp, term.lambda[0]);
    Poly3 d{{{0, 0, term.d}, sym == Symmetry::skew ? Q(-term.c) : term.c}};
    for (auto& [e, c] : mul3(p, d)) add3(out[term.gen], e, c);
  }
  return out;
}

// [A_v B] with sesquilinearity: coefficients of A get d -> -v, of B get d -> d + v.
ElemPoly bracket(const LambdaTable& t, const ElemPoly& a, const ElemPoly& b, const Lin3& v) {
  ElemPoly out;
  const std::array<Lin3, 3> left{kLambda, kMu, Lin3{-v[0], -v[1], -v[2]}};
  const std::array<Lin3, 3> right{kLambda, kMu, Lin3{v[0], v[1], v[2] + 1}};
  for (auto& [x, pa] : a)
    for (auto& [y, pb] : b) {
      Poly3 coeff = mul3(substitute(pa, left), substitute(pb, right));
      if (coeff.empty()) continue;
      for (auto& [z, pz] : gen_bracket(t, x, y, v))
        for (auto& [e, c] : mul3(coeff, pz)) add3(out[z], e, c);
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.empty() ? out.erase(it) : std::next(it);
  return out;
}

ElemPoly unit(int gen) { return ElemPoly{{gen, Poly3{{{0, 0, 0}, Q(1)}}}}; }

}  // namespace

Check verify_conformal_jacobi(const LambdaTable& t) {
  require_one_variable(t.module);
  for (auto& g : t.module->generators())
    if (g.degree != 0) throw std::invalid_argument("conformal Jacobi: degree-0 tables only");
  const int n = t.module->rank();
  const Lin3 sum{Q(1), Q(1), Q(0)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        ElemPoly lhs = bracket(t, unit(a), bracket(t, unit(b), unit(c), kMu), kLambda);
        ElemPoly r1 = bracket(t, bracket(t, unit(a), unit(b), kLambda), unit(c), sum);
        ElemPoly r2 = bracket(t, unit(b), bracket(t, unit(a), unit(c), kLambda), kMu);
        for (auto* r : {&r1, &r2})
          for (auto& [z, p] : *r)
            for (auto& [e, x] : p) add3(lhs[z], e, -x);
        bool zero = true;
        for (auto& [z, p] : lhs) zero = zero && p.empty();
        if (!zero) {
          Check fail = Check::fail("conformal-jacobi", "binary conformal Jacobi fails");
          fail.level = 3;
          fail.tuple = tuple_names({t.module}, {a, b, c});
          return fail;
        }
      }
  return Check::ok("conformal-jacobi");
}

// ---------------------------------------------------------------- rank one

namespace {

TensorElement zero_tensor(const AlgPtr& alg, int k) { return TensorElement{alg, k, {}}; }

const TensorElement* alpha_at(const RankOne& r, const std::vector<int>& idx) {
  auto it = r.alpha.find(idx);
  return it == r.alpha.end() ? nullptr : &it->second;
}

std::vector<std::vector<int>> index_tuples(int lo, int hi, int k) {
  std::vector<std::vector<int>> out{{}};
  for (int i = 0; i < k; ++i) {
    std::vector<std::vector<int>> next;
    for (auto& t : out)
      for (int v = lo; v <= hi; ++v) {
        auto x = t;
        x.push_back(v);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

int output_index(const std::vector<int>& idx) {
  int s = static_cast<int>(idx.size()) - 2;
  for (int i : idx) s += i;
  return s;
}

void check_window(const RankOne& r) {
  for (auto& [idx, a] : r.alpha) {
    if (a.arity != static_cast<int>(idx.size())) throw std::invalid_argument("rank-one: alpha arity mismatch");
    for (int i : idx)
      if (i < r.lo || i > r.hi) throw std::invalid_argument("rank-one: index outside the window");
    if (a.terms.empty()) continue;
    const int out = output_index(idx);
    if (out < r.lo || out > r.hi) throw std::invalid_argument("rank-one: output index outside the window");
  }
}

int max_alpha_arity(const RankOne& r) {
  int k = 1;
  for (auto& [idx, a] : r.alpha) k = std::max(k, static_cast<int>(idx.size()));
  return k;
}

}  // namespace

std::vector<Check> rank_one_verify(const RankOne& r, int max_n) {
  check_window(r);
  std::vector<Check> out;
  const int kmax = max_alpha_arity(r);
  std::set<int> arities;
  for (auto& [idx, a] : r.alpha)
    if (!a.terms.empty()) arities.insert(static_cast<int>(idx.size()));

  Check sym = Check::ok("rank-one-symmetry");
  for (int k : arities) {
    for (auto& idx : index_tuples(r.lo, r.hi, k)) {
      for (int p = 0; p + 1 < k && sym.pass; ++p) {
        auto swapped = idx;
        std::swap(swapped[p], swapped[p + 1]);
        const TensorElement* a = alpha_at(r, idx);
        const TensorElement* b = alpha_at(r, swapped);
        TensorElement rhs = zero_tensor(r.alg, k);
        const bool neg = !((idx[p] & 1) && (idx[p + 1] & 1));
        if (a)
          for (auto& [t, c] : a->terms) {
            Tuple x = t;
            std::swap(x[p], x[p + 1]);
            add_term(rhs.terms, x, neg ? Q(-c) : c);
          }
        const TensorTerms lhs = b ? b->terms : TensorTerms{};
        if (lhs != rhs.terms) {
          sym = Check::fail("rank-one-symmetry", "alpha at a transposed tuple is not the signed slot swap");
          sym.level = k;
          for (int i : swapped) sym.tuple.push_back("e" + std::to_string(i));
        }
      }
      if (!sym.pass) break;
    }
    if (!sym.pass) break;
  }
  out.push_back(sym);

  Check comp = Check::ok("rank-one-composition");
  const int bound = max_n > 0 ? max_n : 2 * kmax - 1;
  const HopfAlgebra& alg = *r.alg;
  for (int n = 1; n <= bound && comp.pass; ++n) {
    for (auto& idx : index_tuples(r.lo, r.hi, n)) {
      TensorTerms acc;
      for (int k : arities) {
        const int l = n + 1 - k;
        if (!arities.count(l)) continue;
        for (auto& sh : shuffles(n, l)) {
          std::vector<int> inner_idx, outer_idx;
          for (int p = 0; p < l; ++p) inner_idx.push_back(idx[sh[p]]);
          outer_idx.push_back(output_index(inner_idx));
          for (int p = l; p < n; ++p) outer_idx.push_back(idx[sh[p]]);
          const TensorElement* ai = alpha_at(r, inner_idx);
          const TensorElement* ao = alpha_at(r, outer_idx);
          if (!ai || !ao) continue;
          const int sign = perm_sign(sh) * koszul_sign(sh, idx) * sign_of_parity(static_cast<long long>(l) * (k - 1));
          for (auto& [bt, bc] : ao->terms)
            for (auto& [parts, w] : alg.comul(bt[0], l))
              for (auto& [at, ac] : ai->terms) {
                std::vector<std::pair<Tuple, Q>> prods{{{}, Q(sign) * bc * w * ac}};
                for (int j = 0; j < l; ++j) {
                  std::vector<std::pair<Tuple, Q>> next;
                  for (auto& [t, v] : prods)
                    for (auto& [m, mc] : alg.mul(at[j], parts[j])) {
                      Tuple x = t;
                      x.push_back(m);
                      next.emplace_back(std::move(x), v * mc);
                    }
                  prods = std::move(next);
                }
                for (auto& [t, v] : prods) {
                  Tuple full(n);
                  for (int p = 0; p < l; ++p) full[sh[p]] = t[p];
                  for (int p = 1; p < k; ++p) full[sh[l + p - 1]] = bt[p];
                  add_term(acc, full, v);
                }
              }
        }
      }
      if (!acc.empty()) {
        comp = Check::fail("rank-one-composition", "composition identity fails at N = " + std::to_string(n));
        comp.level = n;
        for (int i : idx) comp.tuple.push_back("e" + std::to_string(i));
        break;
      }
    }
  }
  out.push_back(comp);
  return out;
}

LInftyStructure rank_one_structure(const RankOne& r) {
  check_window(r);
  std::vector<Generator> gens;
  for (int i = r.lo; i <= r.hi; ++i) gens.push_back({"e" + std::to_string(i), i});
  ModulePtr m = GradedHModule::free_module("L", r.alg, gens);
  LInftyStructure s{m, {}};
  std::map<int, PseudoMap> ops;
  for (int k = 1; k <= max_alpha_arity(r); ++k)
    ops.emplace(k, PseudoMap::zero(k, k - 2, std::vector<ModulePtr>(k, m), m, Symmetry::none));
  for (auto& [idx, a] : r.alpha) {
    if (a.terms.empty()) continue;
    const int k = static_cast<int>(idx.size());
    std::vector<RawTerm> raw;
    for (auto& [t, c] : a.terms) raw.push_back({t, m->key(output_index(idx) - r.lo), c});
    GenTuple g;
    for (int i : idx) g.push_back(i - r.lo);
    ops.at(k).set(g, normalize(raw, m, k));
  }
  for (auto& [k, f] : ops)
    if (!f.is_zero()) s.ops.emplace(k, std::move(f));
  return s;
}

// ---------------------------------------------------------------- A-infinity

namespace {

std::vector<ModuleElement> generators_of(const ModulePtr& m, const GenTuple& t) {
  std::vector<ModuleElement> v;
  for (int g : t) v.push_back(ModuleElement::generator(m, g));
  return v;
}

}  // namespace

Check verify_ainfty(const AInftyStructure& a, int max_n) {
  const int bound = max_n > 0 ? max_n : 2 * a.max_arity() - 1;
  std::map<int, Multilinear> ops;
  for (auto& [k, f] : a.ops) ops.emplace(k, as_multilinear(f));
  for (int n = 1; n <= bound; ++n)
    for (auto& t : all_tuples(std::vector<ModulePtr>(n, a.module))) {
      auto args = generators_of(a.module, t);
      QuotientTensor r = QuotientTensor::zero(a.module, n);
      for (auto& [k, outer] : ops) {
        const int l = n + 1 - k;
        auto it = ops.find(l);
        if (l < 1 || it == ops.end()) continue;
        long long before = 0;
        for (int lam = 1; lam <= k; ++lam) {
          QuotientTensor v = compose_insert(outer, it->second, args, lam - 1);
          const long long e = static_cast<long long>(lam) * (l + 1) + static_cast<long long>(l) * before;
          if (e & 1) r -= v;
          else r += v;
          before += a.module->degree(t[lam - 1]);
        }
      }
      if (r.is_zero()) continue;
      Check c = Check::fail("higher-associativity", "nonzero residual at N = " + std::to_string(n));
      c.level = n;
      c.tuple = tuple_names(std::vector<ModulePtr>(n, a.module), t);
      c.residual = r;
      return c;
    }
  return Check::ok("higher-associativity", "checked N <= " + std::to_string(bound));
}

MapSum suspend_ainfty(const AInftyStructure& a, const ModulePtr& w) {
  MapSum out;
  for (auto& [k, f] : a.ops) out.emplace(k, suspend_map(f, w, w));
  return out;
}

Check verify_ainfty_mc(const AInftyStructure& a, int max_n) {
  const int bound = max_n > 0 ? max_n : 2 * a.max_arity() - 1;
  ModulePtr w = suspend(a.module);
  MapSum nu = suspend_ainfty(a, w);
  for (int n = 1; n <= bound; ++n)
    for (auto& t : all_tuples(std::vector<ModulePtr>(n, w))) {
      QuotientTensor r = assoc_bracket_value(nu, nu, -1, -1, generators_of(w, t));
      if (r.is_zero()) continue;
      Check c = Check::fail("ainfty-maurer-cartan", "[[nu, nu]]~ nonzero in arity " + std::to_string(n));
      c.level = n;
      c.tuple = tuple_names(std::vector<ModulePtr>(n, w), t);
      c.residual = r;
      return c;
    }
  return Check::ok("ainfty-maurer-cartan", "checked arity <= " + std::to_string(bound));
}

LInftyStructure skew_symmetrize_ainfty(const AInftyStructure& a) {
  if (!verify_ainfty(a).pass) throw std::invalid_argument("skew_symmetrize_ainfty: input fails higher associativity");
  LInftyStructure s{a.module, {}};
  for (auto& [k, f] : a.ops) s.ops.emplace(k, skew_symmetrize(f));
  return s;
}

}  // namespace hpseudo
