#pragma once

#include "hpseudo/hopf.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hpseudo {

// Module basis element h . e_gen. For findim modules h is always 1; for
// equivariant modules h has trivial group part.
struct ModKey {
  Monomial h;
  int gen = 0;
  auto operator<=>(const ModKey&) const = default;
};

using ModTerms = std::map<ModKey, Q>;
void add_term(ModTerms& t, const ModKey& k, const Q& c);

class GradedHModule;
using ModulePtr = std::shared_ptr<const GradedHModule>;

struct Generator {
  std::string name;
  int degree = 0;
};

// Three presentations:
//  free        - H (x) span(generators)
//  findim      - finite-dimensional over Q, matrices for each variable and group element
//  equivariant - free over the polynomial part of a smash algebra, group acting on generators
// Matrices act on column vectors: x . b_j = sum_i M[i][j] b_i.
class GradedHModule {
 public:
  enum class Kind { free, findim, equivariant };

  static ModulePtr free_module(std::string name, AlgPtr alg, std::vector<Generator> gens);
  static ModulePtr findim(std::string name, AlgPtr alg, std::vector<Generator> basis,
                          std::vector<Matrix> var_action, std::vector<Matrix> group_action);
  static ModulePtr equivariant(std::string name, AlgPtr alg, std::vector<Generator> gens,
                               std::vector<Matrix> group_action);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const AlgPtr& algebra() const { return alg_; }
  const std::vector<Generator>& generators() const { return gens_; }
  int rank() const { return static_cast<int>(gens_.size()); }
  int degree(int gen) const { return gens_[gen].degree; }
  int index_of(const std::string& gen) const;
  const std::vector<Matrix>& var_action() const { return var_action_; }
  const std::vector<Matrix>& group_action() const { return group_action_; }

  ModKey key(int gen) const { return {alg_->one(), gen}; }
  bool valid(const ModKey& k) const;
  ModTerms act(const Monomial& h, const ModKey& k) const;
  ModTerms act(const Monomial& h, const ModTerms& m) const;

  // Same presentation, new name and generator data; used for suspension and renaming.
  ModulePtr with_generators(std::string name, std::vector<Generator> gens) const;
  std::string format(const ModKey& k) const;
  bool same_shape(const GradedHModule& o) const;

 private:
  GradedHModule() = default;
  void check() const;

  Kind kind_ = Kind::free;
  std::string name_;
  AlgPtr alg_;
  std::vector<Generator> gens_;
  std::vector<Matrix> var_action_;
  std::vector<Matrix> group_action_;
};

struct ModuleElement {
  ModulePtr module;
  ModTerms terms;

  static ModuleElement generator(const ModulePtr& m, int gen);
  bool is_zero() const { return terms.empty(); }
  // Degree of a homogeneous element; throws std::domain_error on mixed degrees or zero.
  int degree() const;
  bool operator==(const ModuleElement& o) const { return terms == o.terms; }
};

ModuleElement act_module(const HElement& h, const ModuleElement& m);
ModuleElement operator+(const ModuleElement& a, const ModuleElement& b);
ModuleElement operator*(const Q& c, const ModuleElement& a);

// (M[-1])^n = M^{n-1}: every degree shifts up by one.
ModulePtr suspend(const ModulePtr& m);
ModulePtr desuspend(const ModulePtr& m);
// Generators of a followed by generators of b (renamed on collision). Both free or both equivariant.
ModulePtr direct_sum(const std::string& name, const ModulePtr& a, const ModulePtr& b);
// Submodule spanned by the listed generators, optionally with shifted degrees.
ModulePtr sub_module(const std::string& name, const ModulePtr& m, const std::vector<int>& gens, int degree_shift = 0);

// M / H_+ M as a Q-vector space: dim and projection onto coordinates.
struct Coinvariants {
  int dim = 0;
  std::vector<std::string> names;
  // projection of a basis key
  std::vector<Q> project(const ModKey& k) const;
  std::vector<Q> project(const ModTerms& t) const;

  ModulePtr module;
  // generator-level projection: column j = image of generator/basis vector j
  std::vector<std::vector<Q>> matrix;
};

Coinvariants coinvariants(const ModulePtr& m);

}  // namespace hpseudo
