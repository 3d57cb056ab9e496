#include "hpseudo/quotient.hpp"

#include <stdexcept>

namespace hpseudo {

void add_term(QTerms& t, const QKey& k, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = t.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

QuotientTensor QuotientTensor::from_element(const ModuleElement& e) {
  QuotientTensor q{e.module, 1, {}};
  for (auto& [k, c] : e.terms) add_term(q.terms, QKey{{}, k}, c);
  return q;
}

QuotientTensor& QuotientTensor::operator+=(const QuotientTensor& o) {
  if (arity != o.arity) throw std::domain_error("quotient tensor arity mismatch");
  if (!module) module = o.module;
  for (auto& [k, c] : o.terms) add_term(terms, k, c);
  return *this;
}

QuotientTensor& QuotientTensor::operator-=(const QuotientTensor& o) {
  if (arity != o.arity) throw std::domain_error("quotient tensor arity mismatch");
  if (!module) module = o.module;
  for (auto& [k, c] : o.terms) add_term(terms, k, -c);
  return *this;
}

QuotientTensor& QuotientTensor::operator*=(const Q& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [k, v] : terms) v *= c;
  return *this;
}

QuotientTensor operator+(QuotientTensor a, const QuotientTensor& b) { return a += b; }
QuotientTensor operator-(QuotientTensor a, const QuotientTensor& b) { return a -= b; }
QuotientTensor operator*(const Q& c, QuotientTensor a) { return a *= c; }

ModuleElement QuotientTensor::as_element() const {
  if (arity != 1) throw std::domain_error("as_element needs arity 1");
  ModuleElement e{module, {}};
  for (auto& [k, c] : terms) add_term(e.terms, k.m, c);
  return e;
}

std::string QuotientTensor::format() const {
  if (terms.empty()) return "0";
  const auto& alg = *module->algebra();
  std::string s;
  for (auto& [k, c] : terms) {
    if (!s.empty()) s += " + ";
    s += "(" + format_q(c) + ")";
    if (arity > 1) {
      s += "(";
      for (std::size_t i = 0; i < k.slots.size(); ++i) s += (i ? "|" : "") + alg.format(k.slots[i]);
      s += "|1)";
    }
    s += "[" + module->format(k.m) + "]";
  }
  return s;
}

namespace {

// All products a_i * b_i expanded into a list of tuples.
void expand_products(const HopfAlgebra& alg, const Tuple& a, const Tuple& b, std::size_t count, const Q& c,
                     std::vector<std::pair<Tuple, Q>>& out) {
  out.clear();
  out.emplace_back(Tuple{}, c);
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
}

}  // namespace

void normalize_into(QTerms& out, const Tuple& slots, const ModKey& m, const Q& c, const GradedHModule& module) {
  const HopfAlgebra& alg = *module.algebra();
  const int n = static_cast<int>(slots.size());
  if (n == 0) throw std::domain_error("normalize: arity 0");
  const Monomial& last = slots.back();
  if (alg.is_one(last)) {
    Tuple t(slots.begin(), slots.end() - 1);
    add_term(out, QKey{std::move(t), m}, c);
    return;
  }
  std::vector<std::pair<Tuple, Q>> prods;
  for (auto& [parts, w] : alg.comul(last, n)) {
    ModTerms pushed = module.act(parts[n - 1], m);
    if (pushed.empty()) continue;
    Tuple anti;
    anti.reserve(n - 1);
    Q sign = 1;
    std::vector<Poly> sp;
    bool simple = true;
    for (int i = 0; i < n - 1; ++i) {
      Poly s = alg.antipode(parts[i]);
      if (s.size() != 1) simple = false;
      sp.push_back(std::move(s));
    }
    std::vector<std::pair<Tuple, Q>> antis;
    if (simple) {
      for (auto& s : sp) {
        anti.push_back(s.begin()->first);
        sign *= s.begin()->second;
      }
      antis.emplace_back(std::move(anti), sign);
    } else {
      antis.emplace_back(Tuple{}, Q(1));
      for (auto& s : sp) {
        std::vector<std::pair<Tuple, Q>> next;
        for (auto& [t, v] : antis)
          for (auto& [mm, cc] : s) {
            Tuple x = t;
            x.push_back(mm);
            next.emplace_back(std::move(x), v * cc);
          }
        antis = std::move(next);
      }
    }
    for (auto& [at, av] : antis) {
      expand_products(alg, slots, at, n - 1, c * w * av, prods);
      for (auto& [t, v] : prods)
        for (auto& [k, kc] : pushed) add_term(out, QKey{t, k}, v * kc);
    }
  }
}

QuotientTensor normalize(const std::vector<RawTerm>& raw, const ModulePtr& module, int n) {
  if (n < 1) throw std::domain_error("normalize: arity 0");
  QuotientTensor q{module, n, {}};
  for (auto& r : raw) {
    if (static_cast<int>(r.slots.size()) != n) throw std::domain_error("normalize: tuple length mismatch");
    normalize_into(q.terms, r.slots, r.m, r.c, *module);
  }
  return q;
}

std::vector<RawTerm> embed(const QuotientTensor& q) {
  std::vector<RawTerm> out;
  if (q.terms.empty()) return out;
  out.reserve(q.terms.size());
  const Monomial one = q.module->algebra()->one();
  for (auto& [k, c] : q.terms) {
    Tuple t = k.slots;
    t.push_back(one);
    out.push_back({std::move(t), k.m, c});
  }
  return out;
}

QuotientTensor act(const TensorElement& t, const QuotientTensor& q) {
  if (t.arity != q.arity) throw std::domain_error("act: arity mismatch");
  if (q.terms.empty()) return q;
  const HopfAlgebra& alg = *q.module->algebra();
  QuotientTensor r{q.module, q.arity, {}};
  std::vector<std::pair<Tuple, Q>> prods;
  for (auto& [tt, tc] : t.terms)
    for (auto& raw : embed(q)) {
      expand_products(alg, tt, raw.slots, static_cast<std::size_t>(q.arity), tc * raw.c, prods);
      for (auto& [x, v] : prods) normalize_into(r.terms, x, raw.m, v, *q.module);
    }
  return r;
}

QuotientTensor relabel(const QuotientTensor& q, const std::vector<int>& dest) {
  const int n = q.arity;
  if (static_cast<int>(dest.size()) != n) throw std::domain_error("relabel: permutation size mismatch");
  if (q.terms.empty()) return q;
  bool identity = true;
  for (int j = 0; j < n; ++j)
    if (dest[j] != j) identity = false;
  if (identity) return q;
  QuotientTensor r{q.module, n, {}};
  const Monomial one = q.module->algebra()->one();
  Tuple x(n);
  for (auto& [k, c] : q.terms) {
    for (int j = 0; j < n - 1; ++j) x[dest[j]] = k.slots[j];
    x[dest[n - 1]] = one;
    normalize_into(r.terms, x, k.m, c, *q.module);
  }
  return r;
}

int perm_sign(const std::vector<int>& order) {
  int s = 1;
  for (std::size_t p = 0; p < order.size(); ++p)
    for (std::size_t q = p + 1; q < order.size(); ++q)
      if (order[p] > order[q]) s = -s;
  return s;
}

int koszul_sign(const std::vector<int>& order, const std::vector<int>& degrees) {
  int s = 1;
  for (std::size_t p = 0; p < order.size(); ++p)
    for (std::size_t q = p + 1; q < order.size(); ++q)
      if (order[p] > order[q] && (degrees[order[p]] & 1) && (degrees[order[q]] & 1)) s = -s;
  return s;
}

std::vector<int> inverse_perm(const std::vector<int>& p) {
  std::vector<int> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

QuotientTensor permute(const QuotientTensor& q, const std::vector<int>& dest, const std::vector<int>& degrees) {
  if (degrees.size() != dest.size()) throw std::domain_error("permute: degree list size mismatch");
  // new position p holds the argument that was at inverse(dest)[p]
  const int s = koszul_sign(inverse_perm(dest), degrees);
  QuotientTensor r = relabel(q, dest);
  if (s < 0) r *= Q(-1);
  return r;
}

QuotientTensor map_module(const QuotientTensor& q, const ModulePtr& target,
                          const std::vector<ModTerms>& image_of_generator) {
  QuotientTensor r{target, q.arity, {}};
  for (auto& [k, c] : q.terms) {
    const ModTerms& img = image_of_generator.at(k.m.gen);
    if (img.empty()) continue;
    for (auto& [k2, c2] : target->act(k.m.h, img)) add_term(r.terms, QKey{k.slots, k2}, c * c2);
  }
  return r;
}

QuotientTensor retarget(const QuotientTensor& q, const ModulePtr& target, int gen_offset) {
  QuotientTensor r{target, q.arity, {}};
  for (auto& [k, c] : q.terms) {
    QKey k2 = k;
    k2.m.gen += gen_offset;
    r.terms.emplace(std::move(k2), c);
  }
  return r;
}

}  // namespace hpseudo
