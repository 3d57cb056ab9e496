#pragma once

#include "hpseudo/quotient.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hpseudo {

enum class Symmetry { none, skew, sym };
std::string to_string(Symmetry s);
Symmetry symmetry_from_string(const std::string& s);

using GenTuple = std::vector<int>;

// H^{(x)k}-linear map L_1 x .. x L_k -> H^{(x)k} (x)_H M given on generator tuples.
// Flagged maps (skew/sym) store nondecreasing tuples only; other orderings are derived.
struct PseudoMap {
  int arity = 1;
  int degree = 0;
  std::vector<ModulePtr> sources;
  ModulePtr target;
  Symmetry symmetry = Symmetry::none;
  std::map<GenTuple, QuotientTensor> table;

  static PseudoMap zero(int arity, int degree, std::vector<ModulePtr> sources, ModulePtr target,
                        Symmetry s = Symmetry::none);
  // Value on a generator tuple, deriving permuted values for flagged maps.
  QuotientTensor value(const GenTuple& gens) const;
  // Stores a value; flagged maps only accept nondecreasing tuples.
  void set(const GenTuple& gens, QuotientTensor v);
  bool is_zero() const;
  std::vector<int> degrees_of(const GenTuple& gens) const;
};

bool same_table(const PseudoMap& a, const PseudoMap& b);
// Equal values on every generator tuple, regardless of how the tables are stored.
bool same_values(const PseudoMap& a, const PseudoMap& b);

// All generator tuples of the given sources, lexicographic.
std::vector<GenTuple> all_tuples(const std::vector<ModulePtr>& sources);
// Nondecreasing tuples of one module.
std::vector<GenTuple> sorted_tuples(const ModulePtr& m, int k);

QuotientTensor eval(const PseudoMap& f, std::span<const ModuleElement> args);
// Multilinear, H-linear extension of a value function given on generator tuples.
using ValueFn = std::function<QuotientTensor(const GenTuple&)>;
QuotientTensor eval_fn(const ValueFn& value, int arity, const ModulePtr& target, std::span<const ModuleElement> args);

// A polylinear map given by a function; used to build composites without tables.
struct Multilinear {
  int arity = 1;
  int degree = 0;
  std::function<QuotientTensor(std::span<const ModuleElement>)> fn;

  QuotientTensor operator()(std::span<const ModuleElement> args) const { return fn(args); }
  QuotientTensor operator()(std::initializer_list<ModuleElement> args) const {
    std::vector<ModuleElement> v(args);
    return fn(v);
  }
};

Multilinear as_multilinear(const PseudoMap& f);
Multilinear zero_multilinear(int arity, int degree, ModulePtr target);

// outer(args[0..pos), inner(args[pos..pos+l)), args[pos+l..)) with H slots in argument order.
// Unsigned: callers apply the signs of their formula.
QuotientTensor compose_insert(const Multilinear& outer, const Multilinear& inner,
                              std::span<const ModuleElement> args, int pos);
Multilinear insert(const Multilinear& outer, const Multilinear& inner, int pos);
// g(x_0..x_{N-1}) = f(x_order[0], ..., x_order[N-1]) with H slots following their arguments.
Multilinear reorder(const Multilinear& f, std::vector<int> order);
// Sum of scaled maps of equal arity.
Multilinear combine(std::vector<std::pair<Q, Multilinear>> parts);
// Post-composition with an arity-1 map: (id (x) u) q.
QuotientTensor apply_unary(const Multilinear& unary, const QuotientTensor& q);

// Lexicographic (l, N-l) shuffles as orders: the first l entries, then the rest.
std::vector<std::vector<int>> shuffles(int n, int l);

// compose_at from the shuffle description: outer(inner(x_s(1..l)), x_s(l+1..N)),
// slots relabeled to the natural argument order, times the Koszul sign of the shuffle.
QuotientTensor compose_at(const Multilinear& outer, const Multilinear& inner, std::span<const ModuleElement> args,
                          const std::vector<int>& shuffle);

// Maps of a graded sum, indexed by arity.
using MapSum = std::map<int, PseudoMap>;

// Alternating (skew) or plain (sym) sum over S_k of permuted evaluations.
PseudoMap skew_symmetrize(const PseudoMap& f);
PseudoMap symmetrize(const PseudoMap& f);

// eta_k = (-1)^{k(k-1)/2} s beta_k (s^{-1})^{(x)k}, of degree deg beta_k + 1 - k; desuspend_map is its exact inverse.
PseudoMap suspend_map(const PseudoMap& f, const ModulePtr& suspended_source, const ModulePtr& suspended_target);
PseudoMap desuspend_map(const PseudoMap& f, const ModulePtr& source, const ModulePtr& target);
int suspension_sign(int k, const std::vector<int>& suspended_degrees);

// Component of eta <> zeta on a tuple: sum over shuffles of eta_k(zeta_l(..), ..).
QuotientTensor diamond_value(const PseudoMap& eta, const PseudoMap& zeta, std::span<const ModuleElement> args);
// Arity-N component of [[eta, zeta]] on a tuple.
QuotientTensor mc_bracket_value(const MapSum& eta, const MapSum& zeta, int p, int q,
                                std::span<const ModuleElement> args);
MapSum mc_bracket(const MapSum& eta, const MapSum& zeta, int p, int q, int max_arity);

// Positional insertion nu (.) theta with sign (-1)^{q(|w_1|+..+|w_{i-1}|)}.
QuotientTensor insertion_value(const PseudoMap& nu, const PseudoMap& theta, std::span<const ModuleElement> args);
QuotientTensor assoc_bracket_value(const MapSum& nu, const MapSum& theta, int p, int q,
                                   std::span<const ModuleElement> args);
MapSum assoc_bracket(const MapSum& nu, const MapSum& theta, int p, int q, int max_arity);
MapSum sym_projection(const MapSum& nu);

// Graded sum degree: all components must share it.
int sum_degree(const MapSum& s);

// First tuple where a flagged map violates its symmetry, if any.
struct SymmetryWitness {
  GenTuple tuple;
  std::vector<int> transposition;
  QuotientTensor lhs, rhs;
};
std::optional<SymmetryWitness> check_symmetry(const PseudoMap& f, Symmetry wanted);

}  // namespace hpseudo
