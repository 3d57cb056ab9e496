#pragma once

#include "hpseudo/hmodule.hpp"

#include <map>
#include <string>
#include <vector>

namespace hpseudo {

// (slots (x) 1) (x)_H m, with the last H slot implicit.
struct QKey {
  Tuple slots;
  ModKey m;
  auto operator<=>(const QKey&) const = default;
};

using QTerms = std::map<QKey, Q>;
void add_term(QTerms& t, const QKey& k, const Q& c);

// Element of H^{(x)n} (x)_H M in canonical form.
struct QuotientTensor {
  ModulePtr module;
  int arity = 1;
  QTerms terms;

  static QuotientTensor zero(const ModulePtr& m, int n) { return {m, n, {}}; }
  static QuotientTensor from_element(const ModuleElement& e);
  bool is_zero() const { return terms.empty(); }
  bool operator==(const QuotientTensor& o) const { return arity == o.arity && terms == o.terms; }
  QuotientTensor& operator+=(const QuotientTensor& o);
  QuotientTensor& operator-=(const QuotientTensor& o);
  QuotientTensor& operator*=(const Q& c);
  // Only meaningful for arity 1.
  ModuleElement as_element() const;
  std::string format() const;
};

QuotientTensor operator+(QuotientTensor a, const QuotientTensor& b);
QuotientTensor operator-(QuotientTensor a, const QuotientTensor& b);
QuotientTensor operator*(const Q& c, QuotientTensor a);

// Raw representative (f_1 (x) .. (x) f_n) (x)_H m.
struct RawTerm {
  Tuple slots;
  ModKey m;
  Q c;
};

QuotientTensor normalize(const std::vector<RawTerm>& raw, const ModulePtr& module, int n);
// Accumulates normalize(raw) into out without materializing a temporary.
void normalize_into(QTerms& out, const Tuple& slots, const ModKey& m, const Q& c, const GradedHModule& module);

QuotientTensor act(const TensorElement& t, const QuotientTensor& q);
// Re-inserts 1 in the last slot.
std::vector<RawTerm> embed(const QuotientTensor& q);

// Lift, move slot j to position dest[j], renormalize. No sign.
QuotientTensor relabel(const QuotientTensor& q, const std::vector<int>& dest);
// relabel followed by the Koszul sign of moving argument j (of degree degrees[j]) to dest[j].
QuotientTensor permute(const QuotientTensor& q, const std::vector<int>& dest, const std::vector<int>& degrees);

// Sign of the permutation sending position p of a new sequence to original index order[p].
int perm_sign(const std::vector<int>& order);
// Koszul sign of reordering arguments (degrees indexed by original position) into order.
int koszul_sign(const std::vector<int>& order, const std::vector<int>& degrees);
// Inverse of a permutation given as order / dest.
std::vector<int> inverse_perm(const std::vector<int>& p);

// Replace the module part by the image of a per-generator map: (a) (x)_H h.e -> (a) (x)_H h.f(e).
QuotientTensor map_module(const QuotientTensor& q, const ModulePtr& target,
                          const std::vector<ModTerms>& image_of_generator);
// Same generators under a new module object (suspension, renaming, embedding with offset).
QuotientTensor retarget(const QuotientTensor& q, const ModulePtr& target, int gen_offset = 0);

}  // namespace hpseudo
