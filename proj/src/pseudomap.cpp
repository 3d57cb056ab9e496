#include "hpseudo/pseudomap.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hpseudo {

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::skew: return "skew";
    case Symmetry::sym: return "sym";
    default: return "none";
  }
}

Symmetry symmetry_from_string(const std::string& s) {
  if (s == "skew") return Symmetry::skew;
  if (s == "sym") return Symmetry::sym;
  if (s == "none") return Symmetry::none;
  throw std::invalid_argument("unknown symmetry flag '" + s + "'");
}

namespace {

std::vector<int> argsort(const GenTuple& t) {
  std::vector<int> order(t.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return t[a] < t[b]; });
  return order;
}

std::vector<std::pair<Tuple, Q>> tuple_products(const HopfAlgebra& alg, const Tuple& pre, const Tuple& a,
                                                const Tuple& b, std::size_t count, const Q& c) {
  std::vector<std::pair<Tuple, Q>> out{{pre, c}};
  for (std::size_t i = 0; i < count; ++i) {
    Poly p = alg.mul(a[i], b[i]);
    if (p.size() == 1) {
      for (auto& [t, w] : out) {
        t.push_back(p.begin()->first);
        w *= p.begin()->second;
      }
      continue;
    }
    std::vector<std::pair<Tuple, Q>> next;
    for (auto& [t, w] : out)
      for (auto& [m, v] : p) {
        Tuple x = t;
        x.push_back(m);
        next.emplace_back(std::move(x), w * v);
      }
    out = std::move(next);
  }
  return out;
}

bool same_module(const ModulePtr& a, const ModulePtr& b) { return a == b || a->same_shape(*b); }

}  // namespace

// ---------------------------------------------------------------- PseudoMap

PseudoMap PseudoMap::zero(int arity, int degree, std::vector<ModulePtr> sources, ModulePtr target, Symmetry s) {
  if (static_cast<int>(sources.size()) != arity) throw std::invalid_argument("PseudoMap: source count != arity");
  if (s != Symmetry::none)
    for (auto& m : sources)
      if (!same_module(m, sources[0])) throw std::invalid_argument("PseudoMap: flagged maps need equal sources");
  PseudoMap f;
  f.arity = arity;
  f.degree = degree;
  f.sources = std::move(sources);
  f.target = std::move(target);
  f.symmetry = s;
  return f;
}

std::vector<int> PseudoMap::degrees_of(const GenTuple& gens) const {
  std::vector<int> d(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) d[i] = sources[i]->degree(gens[i]);
  return d;
}

QuotientTensor PseudoMap::value(const GenTuple& gens) const {
  if (static_cast<int>(gens.size()) != arity) throw std::domain_error("PseudoMap::value: wrong tuple length");
  if (symmetry == Symmetry::none) {
    auto it = table.find(gens);
    return it == table.end() ? QuotientTensor::zero(target, arity) : it->second;
  }
  std::vector<int> order = argsort(gens);
  GenTuple sorted(gens.size());
  for (std::size_t p = 0; p < gens.size(); ++p) sorted[p] = gens[order[p]];
  auto it = table.find(sorted);
  if (it == table.end()) return QuotientTensor::zero(target, arity);
  int s = koszul_sign(order, degrees_of(gens));
  if (symmetry == Symmetry::skew) s *= perm_sign(order);
  QuotientTensor r = relabel(it->second, order);
  if (s < 0) r *= Q(-1);
  return r;
}

void PseudoMap::set(const GenTuple& gens, QuotientTensor v) {
  if (static_cast<int>(gens.size()) != arity) throw std::domain_error("PseudoMap::set: wrong tuple length");
  if (v.arity != arity) throw std::domain_error("PseudoMap::set: value arity mismatch");
  if (symmetry != Symmetry::none && !std::is_sorted(gens.begin(), gens.end()))
    throw std::domain_error("PseudoMap::set: flagged maps store nondecreasing tuples only");
  if (v.is_zero()) {
    table.erase(gens);
    return;
  }
  v.module = target;
  table[gens] = std::move(v);
}

bool PseudoMap::is_zero() const {
  for (auto& [k, v] : table)
    if (!v.is_zero()) return false;
  return true;
}

bool same_table(const PseudoMap& a, const PseudoMap& b) {
  if (a.arity != b.arity || a.degree != b.degree || a.symmetry != b.symmetry) return false;
  auto nonzero = [](const PseudoMap& f) {
    std::map<GenTuple, QTerms> m;
    for (auto& [k, v] : f.table)
      if (!v.is_zero()) m[k] = v.terms;
    return m;
  };
  return nonzero(a) == nonzero(b);
}

bool same_values(const PseudoMap& a, const PseudoMap& b) {
  if (a.arity != b.arity || a.degree != b.degree || a.sources.size() != b.sources.size()) return false;
  for (std::size_t i = 0; i < a.sources.size(); ++i)
    if (a.sources[i]->rank() != b.sources[i]->rank()) return false;
  for (auto& t : all_tuples(a.sources))
    if (a.value(t).terms != b.value(t).terms) return false;
  return true;
}

std::vector<GenTuple> all_tuples(const std::vector<ModulePtr>& sources) {
  std::vector<GenTuple> out{{}};
  for (auto& m : sources) {
    std::vector<GenTuple> next;
    for (auto& t : out)
      for (int g = 0; g < m->rank(); ++g) {
        GenTuple x = t;
        x.push_back(g);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<GenTuple> sorted_tuples(const ModulePtr& m, int k) {
  std::vector<GenTuple> out;
  GenTuple cur;
  std::function<void(int)> rec = [&](int lo) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int g = lo; g < m->rank(); ++g) {
      cur.push_back(g);
      rec(g);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------- evaluation

QuotientTensor eval_fn(const ValueFn& value, int k, const ModulePtr& target, std::span<const ModuleElement> args) {
  if (static_cast<int>(args.size()) != k) throw std::domain_error("eval: wrong number of arguments");
  const HopfAlgebra& alg = *target->algebra();
  QuotientTensor out = QuotientTensor::zero(target, k);
  for (auto& a : args)
    if (a.terms.empty()) return out;

  std::vector<std::vector<std::pair<ModKey, Q>>> choices(k);
  for (int i = 0; i < k; ++i) choices[i].assign(args[i].terms.begin(), args[i].terms.end());
  std::vector<std::size_t> idx(k, 0);
  GenTuple gens(k);
  Tuple hs(k);
  std::map<GenTuple, QuotientTensor> cache;
  while (true) {
    Q c = 1;
    bool trivial = true;
    for (int i = 0; i < k; ++i) {
      const auto& [key, v] = choices[i][idx[i]];
      gens[i] = key.gen;
      hs[i] = key.h;
      c *= v;
      if (!alg.is_one(key.h)) trivial = false;
    }
    auto it = cache.find(gens);
    if (it == cache.end()) it = cache.emplace(gens, value(gens)).first;
    const QuotientTensor& val = it->second;
    for (auto& [qk, d] : val.terms) {
      if (trivial) {
        add_term(out.terms, qk, c * d);
        continue;
      }
      Tuple slots = qk.slots;
      slots.push_back(alg.one());
      for (auto& [t, w] : tuple_products(alg, {}, hs, slots, static_cast<std::size_t>(k), c * d))
        normalize_into(out.terms, t, qk.m, w, *target);
    }
    int i = k - 1;
    while (i >= 0 && ++idx[i] == choices[i].size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

QuotientTensor eval(const PseudoMap& f, std::span<const ModuleElement> args) {
  return eval_fn([&f](const GenTuple& g) { return f.value(g); }, f.arity, f.target, args);
}

Multilinear as_multilinear(const PseudoMap& f) {
  auto shared = std::make_shared<const PseudoMap>(f);
  return Multilinear{f.arity, f.degree, [shared](std::span<const ModuleElement> args) { return eval(*shared, args); }};
}

Multilinear zero_multilinear(int arity, int degree, ModulePtr target) {
  return Multilinear{arity, degree,
                     [arity, target](std::span<const ModuleElement>) { return QuotientTensor::zero(target, arity); }};
}

QuotientTensor compose_insert(const Multilinear& outer, const Multilinear& inner, std::span<const ModuleElement> args,
                              int pos) {
  const int k = outer.arity, l = inner.arity;
  const int n = k + l - 1;
  if (static_cast<int>(args.size()) != n) throw std::domain_error("compose_insert: wrong number of arguments");
  if (pos < 0 || pos >= k) throw std::domain_error("compose_insert: position out of range");
  QuotientTensor qin = inner(args.subspan(pos, l));
  if (qin.is_zero()) return QuotientTensor{nullptr, n, {}};

  std::map<ModKey, std::vector<std::pair<const Tuple*, Q>>> by_module;
  for (auto& [key, c] : qin.terms) by_module[key.m].emplace_back(&key.slots, c);

  std::vector<ModuleElement> oargs;
  oargs.reserve(k);
  for (int i = 0; i < pos; ++i) oargs.push_back(args[i]);
  oargs.push_back(ModuleElement{qin.module, {}});
  for (int i = pos + l; i < n; ++i) oargs.push_back(args[i]);

  const HopfAlgebra& alg = *qin.module->algebra();
  const Monomial one = alg.one();
  QuotientTensor out{nullptr, n, {}};
  for (auto& [m, list] : by_module) {
    oargs[pos].terms = ModTerms{{m, Q(1)}};
    QuotientTensor qout = outer(oargs);
    if (!out.module) out.module = qout.module;
    for (auto& [okey, d] : qout.terms) {
      const Monomial& bpos = pos < k - 1 ? okey.slots[pos] : one;
      auto parts = alg.comul(bpos, l);
      for (auto& [slots_in, c] : list)
        for (auto& [p, w] : parts) {
          Tuple pre(okey.slots.begin(), okey.slots.begin() + pos);
          auto prods = tuple_products(alg, pre, *slots_in, p, static_cast<std::size_t>(l - 1), c * d * w);
          for (auto& [t, v] : prods) {
            if (pos < k - 1) {
              t.push_back(p[l - 1]);
              t.insert(t.end(), okey.slots.begin() + pos + 1, okey.slots.end());
            }
            add_term(out.terms, QKey{std::move(t), okey.m}, v);
          }
        }
    }
  }
  return out;
}

Multilinear insert(const Multilinear& outer, const Multilinear& inner, int pos) {
  return Multilinear{outer.arity + inner.arity - 1, outer.degree + inner.degree,
                     [outer, inner, pos](std::span<const ModuleElement> args) {
                       return compose_insert(outer, inner, args, pos);
                     }};
}

Multilinear reorder(const Multilinear& f, std::vector<int> order) {
  return Multilinear{f.arity, f.degree, [f, order](std::span<const ModuleElement> args) {
                       std::vector<ModuleElement> y;
                       y.reserve(order.size());
                       for (int o : order) y.push_back(args[o]);
                       return relabel(f(y), order);
                     }};
}

Multilinear combine(std::vector<std::pair<Q, Multilinear>> parts) {
  if (parts.empty()) throw std::invalid_argument("combine: empty");
  const int arity = parts.front().second.arity;
  for (auto& [c, f] : parts)
    if (f.arity != arity) throw std::invalid_argument("combine: arity mismatch");
  return Multilinear{arity, parts.front().second.degree, [parts, arity](std::span<const ModuleElement> args) {
                       QuotientTensor r{nullptr, arity, {}};
                       for (auto& [c, f] : parts) {
                         QuotientTensor v = f(args);
                         if (!r.module) r.module = v.module;
                         for (auto& [k, x] : v.terms) add_term(r.terms, k, c * x);
                       }
                       return r;
                     }};
}

QuotientTensor apply_unary(const Multilinear& unary, const QuotientTensor& q) {
  if (unary.arity != 1) throw std::domain_error("apply_unary: arity must be 1");
  QuotientTensor out{nullptr, q.arity, {}};
  std::map<ModKey, std::vector<std::pair<const Tuple*, Q>>> by_module;
  for (auto& [key, c] : q.terms) by_module[key.m].emplace_back(&key.slots, c);
  for (auto& [m, list] : by_module) {
    QuotientTensor img = unary({ModuleElement{q.module, ModTerms{{m, Q(1)}}}});
    if (!out.module) out.module = img.module;
    for (auto& [ik, d] : img.terms)
      for (auto& [slots, c] : list) add_term(out.terms, QKey{*slots, ik.m}, c * d);
  }
  return out;
}

std::vector<std::vector<int>> shuffles(int n, int l) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int lo) {
    if (static_cast<int>(pick.size()) == l) {
      std::vector<int> order = pick;
      for (int i = 0; i < n; ++i)
        if (!std::binary_search(pick.begin(), pick.end(), i)) order.push_back(i);
      out.push_back(std::move(order));
      return;
    }
    for (int i = lo; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

std::vector<int> arg_degrees(std::span<const ModuleElement> args) {
  std::vector<int> d;
  d.reserve(args.size());
  for (auto& a : args) d.push_back(a.degree());
  return d;
}

bool any_zero(std::span<const ModuleElement> args) {
  for (auto& a : args)
    if (a.is_zero()) return true;
  return false;
}

}  // namespace

QuotientTensor compose_at(const Multilinear& outer, const Multilinear& inner, std::span<const ModuleElement> args,
                          const std::vector<int>& shuffle) {
  const int n = static_cast<int>(args.size());
  if (static_cast<int>(shuffle.size()) != n) throw std::domain_error("compose_at: shuffle size mismatch");
  const int l = inner.arity;
  for (int i = 0; i + 1 < l; ++i)
    if (shuffle[i] > shuffle[i + 1]) throw std::domain_error("compose_at: not a shuffle");
  for (int i = l; i + 1 < n; ++i)
    if (shuffle[i] > shuffle[i + 1]) throw std::domain_error("compose_at: not a shuffle");
  if (any_zero(args)) return QuotientTensor{nullptr, n, {}};
  std::vector<ModuleElement> y;
  y.reserve(n);
  for (int o : shuffle) y.push_back(args[o]);
  QuotientTensor v = compose_insert(outer, inner, y, 0);
  if (v.is_zero()) return v;
  QuotientTensor r = relabel(v, shuffle);
  if (koszul_sign(shuffle, arg_degrees(args)) < 0) r *= Q(-1);
  return r;
}

// ---------------------------------------------------------------- symmetrization

namespace {

PseudoMap symmetrize_impl(const PseudoMap& f, bool alternating) {
  for (auto& m : f.sources)
    if (!same_module(m, f.sources[0])) throw std::invalid_argument("symmetrize: sources differ");
  PseudoMap r = PseudoMap::zero(f.arity, f.degree, f.sources, f.target, alternating ? Symmetry::skew : Symmetry::sym);
  const int k = f.arity;
  std::vector<int> base(k);
  std::iota(base.begin(), base.end(), 0);
  for (auto& gens : sorted_tuples(f.sources[0], k)) {
    const auto degs = f.degrees_of(gens);
    QuotientTensor acc = QuotientTensor::zero(f.target, k);
    std::vector<int> order = base;
    do {
      GenTuple y(k);
      for (int p = 0; p < k; ++p) y[p] = gens[order[p]];
      QuotientTensor v = relabel(f.value(y), order);
      int s = koszul_sign(order, degs);
      if (alternating) s *= perm_sign(order);
      if (s < 0) acc -= v;
      else acc += v;
    } while (std::next_permutation(order.begin(), order.end()));
    r.set(gens, std::move(acc));
  }
  return r;
}

}  // namespace

PseudoMap skew_symmetrize(const PseudoMap& f) { return symmetrize_impl(f, true); }
PseudoMap symmetrize(const PseudoMap& f) { return symmetrize_impl(f, false); }

// ---------------------------------------------------------------- suspension

int suspension_sign(int k, const std::vector<int>& wdeg) {
  long long e = static_cast<long long>(k) * (k - 1) / 2;
  for (int j = 0; j < k; ++j) e += static_cast<long long>(k - 1 - j) * wdeg[j];
  return sign_of_parity(e);
}

namespace {

Symmetry flip(Symmetry s) {
  if (s == Symmetry::skew) return Symmetry::sym;
  if (s == Symmetry::sym) return Symmetry::skew;
  return Symmetry::none;
}

}  // namespace

PseudoMap suspend_map(const PseudoMap& f, const ModulePtr& ws, const ModulePtr& wt) {
  PseudoMap r = PseudoMap::zero(f.arity, f.degree + 1 - f.arity, std::vector<ModulePtr>(f.arity, ws), wt,
                                flip(f.symmetry));
  for (auto& s : f.sources)
    if (s->rank() != ws->rank()) throw std::invalid_argument("suspend_map: source rank mismatch");
  for (auto& [gens, v] : f.table) {
    std::vector<int> wdeg;
    for (int g : gens) wdeg.push_back(ws->degree(g));
    QuotientTensor q = retarget(v, wt);
    if (suspension_sign(f.arity, wdeg) < 0) q *= Q(-1);
    r.table[gens] = std::move(q);
  }
  return r;
}

PseudoMap desuspend_map(const PseudoMap& f, const ModulePtr& source, const ModulePtr& target) {
  PseudoMap r =
      PseudoMap::zero(f.arity, f.degree + f.arity - 1, std::vector<ModulePtr>(f.arity, source), target, flip(f.symmetry));
  for (auto& [gens, v] : f.table) {
    QuotientTensor q = retarget(v, target);
    if (suspension_sign(f.arity, f.degrees_of(gens)) < 0) q *= Q(-1);
    r.table[gens] = std::move(q);
  }
  return r;
}

// ---------------------------------------------------------------- brackets

QuotientTensor diamond_value(const PseudoMap& eta, const PseudoMap& zeta, std::span<const ModuleElement> args) {
  const int n = static_cast<int>(args.size());
  QuotientTensor r{eta.target, n, {}};
  if (eta.arity + zeta.arity - 1 != n) throw std::domain_error("diamond: arity mismatch");
  Multilinear outer = as_multilinear(eta), inner = as_multilinear(zeta);
  for (auto& sh : shuffles(n, zeta.arity)) r += compose_at(outer, inner, args, sh);
  return r;
}

QuotientTensor mc_bracket_value(const MapSum& eta, const MapSum& zeta, int p, int q,
                                std::span<const ModuleElement> args) {
  const int n = static_cast<int>(args.size());
  QuotientTensor r{nullptr, n, {}};
  const bool minus = ((p * q) % 2) == 0;  // -(-1)^{pq}
  for (auto& [k, ek] : eta)
    for (auto& [l, zl] : zeta) {
      if (k + l - 1 != n) continue;
      QuotientTensor a = diamond_value(ek, zl, args);
      QuotientTensor b = diamond_value(zl, ek, args);
      if (!r.module) r.module = ek.target;
      r += a;
      if (minus) r -= b;
      else r += b;
    }
  return r;
}

namespace {

ModulePtr common_source(const MapSum& a, const MapSum& b) {
  for (auto* s : {&a, &b})
    for (auto& [k, f] : *s) return f.sources[0];
  return nullptr;
}

ModulePtr common_target(const MapSum& a, const MapSum& b) {
  for (auto* s : {&a, &b})
    for (auto& [k, f] : *s) return f.target;
  return nullptr;
}

std::vector<ModuleElement> generators_of(const ModulePtr& m, const GenTuple& t) {
  std::vector<ModuleElement> v;
  v.reserve(t.size());
  for (int g : t) v.push_back(ModuleElement::generator(m, g));
  return v;
}

}  // namespace

int sum_degree(const MapSum& s) {
  if (s.empty()) return 0;
  int d = s.begin()->second.degree;
  for (auto& [k, f] : s)
    if (f.degree != d) throw std::invalid_argument("graded sum has components of different degrees");
  return d;
}

MapSum mc_bracket(const MapSum& eta, const MapSum& zeta, int p, int q, int max_arity) {
  MapSum out;
  ModulePtr w = common_source(eta, zeta);
  ModulePtr t = common_target(eta, zeta);
  if (!w) return out;
  for (auto* s : {&eta, &zeta})
    for (auto& [k, f] : *s)
      for (auto& src : f.sources)
        if (!same_module(src, w)) throw std::invalid_argument("mc_bracket: module mismatch");
  for (int n = 1; n <= max_arity; ++n) {
    PseudoMap comp = PseudoMap::zero(n, p + q, std::vector<ModulePtr>(n, w), t, Symmetry::sym);
    for (auto& gens : sorted_tuples(w, n)) comp.set(gens, mc_bracket_value(eta, zeta, p, q, generators_of(w, gens)));
    if (!comp.is_zero()) out.emplace(n, std::move(comp));
  }
  return out;
}

QuotientTensor insertion_value(const PseudoMap& nu, const PseudoMap& theta, std::span<const ModuleElement> args) {
  const int n = static_cast<int>(args.size());
  const int k = nu.arity, l = theta.arity;
  if (k + l - 1 != n) throw std::domain_error("insertion: arity mismatch");
  QuotientTensor r{nu.target, n, {}};
  if (any_zero(args)) return r;
  const auto degs = arg_degrees(args);
  Multilinear outer = as_multilinear(nu), inner = as_multilinear(theta);
  long long passed = 0;
  for (int i = 0; i < k; ++i) {
    QuotientTensor v = compose_insert(outer, inner, args, i);
    if ((static_cast<long long>(theta.degree) * passed) % 2) r -= v;
    else r += v;
    passed += degs[i];
  }
  return r;
}

QuotientTensor assoc_bracket_value(const MapSum& nu, const MapSum& theta, int p, int q,
                                   std::span<const ModuleElement> args) {
  const int n = static_cast<int>(args.size());
  QuotientTensor r{nullptr, n, {}};
  const bool minus = ((p * q) % 2) == 0;
  for (auto& [k, a] : nu)
    for (auto& [l, b] : theta) {
      if (k + l - 1 != n) continue;
      if (!r.module) r.module = a.target;
      r += insertion_value(a, b, args);
      QuotientTensor y = insertion_value(b, a, args);
      if (minus) r -= y;
      else r += y;
    }
  return r;
}

MapSum assoc_bracket(const MapSum& nu, const MapSum& theta, int p, int q, int max_arity) {
  MapSum out;
  ModulePtr w = common_source(nu, theta);
  ModulePtr t = common_target(nu, theta);
  if (!w) return out;
  for (int n = 1; n <= max_arity; ++n) {
    PseudoMap comp = PseudoMap::zero(n, p + q, std::vector<ModulePtr>(n, w), t, Symmetry::none);
    for (auto& gens : all_tuples(std::vector<ModulePtr>(n, w)))
      comp.set(gens, assoc_bracket_value(nu, theta, p, q, generators_of(w, gens)));
    if (!comp.is_zero()) out.emplace(n, std::move(comp));
  }
  return out;
}

MapSum sym_projection(const MapSum& nu) {
  MapSum out;
  for (auto& [k, f] : nu) {
    PseudoMap s = symmetrize(f);
    if (!s.is_zero()) out.emplace(k, std::move(s));
  }
  return out;
}

std::optional<SymmetryWitness> check_symmetry(const PseudoMap& f, Symmetry wanted) {
  if (wanted == Symmetry::none) return std::nullopt;
  for (auto& gens : all_tuples(f.sources)) {
    const auto degs = f.degrees_of(gens);
    for (int i = 0; i + 1 < f.arity; ++i) {
      if (!same_module(f.sources[i], f.sources[i + 1])) continue;
      std::vector<int> order(f.arity);
      std::iota(order.begin(), order.end(), 0);
      std::swap(order[i], order[i + 1]);
      GenTuple y = gens;
      std::swap(y[i], y[i + 1]);
      QuotientTensor lhs = f.value(gens);
      QuotientTensor rhs = relabel(f.value(y), order);
      int s = ((degs[i] & 1) && (degs[i + 1] & 1)) ? -1 : 1;
      if (wanted == Symmetry::skew) s = -s;
      if (s < 0) rhs *= Q(-1);
      if (!(lhs == rhs)) return SymmetryWitness{gens, order, lhs, rhs};
    }
  }
  return std::nullopt;
}

}  // namespace hpseudo
