#pragma once

#include "hpseudo/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hpseudo {

inline constexpr int kMaxVars = 4;

// Basis element d^exps * g of Q[d_1..d_n] # Q[G]; polynomial part first.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exps{};
  std::uint16_t group = 0;

  int degree() const {
    int s = 0;
    for (auto e : exps) s += e;
    return s;
  }
  auto operator<=>(const Monomial&) const = default;
};

using Poly = std::map<Monomial, Q>;
using Tuple = std::vector<Monomial>;
using TensorTerms = std::map<Tuple, Q>;
using Matrix = std::vector<std::vector<Q>>;

void add_term(Poly& p, const Monomial& m, const Q& c);
void add_term(TensorTerms& t, const Tuple& k, const Q& c);

struct FiniteGroup {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;
  int identity = 0;
  std::vector<int> inverse;

  int size() const { return static_cast<int>(names.size()); }
  int mul(int a, int b) const { return table[a][b]; }
  int index_of(const std::string& name) const;
  void validate() const;

  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n, const std::string& gen = "g");
  static FiniteGroup symmetric3();
};

class HopfAlgebra;
using AlgPtr = std::shared_ptr<const HopfAlgebra>;

// Every supported algebra is presented as Q[d_1..d_n] # Q[G] with G acting on the
// primitive span by matrices: g.d_i = sum_j action(g)[i][j] d_j.
// Polynomial kind has trivial G, group kind has n = 0. A smash product over a
// group base is realized as the group algebra of the semidirect product.
class HopfAlgebra {
 public:
  enum class Kind { polynomial, group, smash };

  static AlgPtr polynomial(std::vector<std::string> variables);
  static AlgPtr group_algebra(FiniteGroup g);
  // Polynomial base: action[gamma] is an n x n matrix. Group base: action[gamma][b] is the image of b.
  static AlgPtr smash(AlgPtr base, FiniteGroup gamma, std::vector<Matrix> poly_action);
  static AlgPtr smash_group(AlgPtr base, FiniteGroup gamma, std::vector<std::vector<int>> group_action);

  Kind kind() const { return kind_; }
  int nvars() const { return static_cast<int>(variables_.size()); }
  const std::vector<std::string>& variables() const { return variables_; }
  const FiniteGroup& group() const { return group_; }
  const Matrix& action(int g) const { return action_[g]; }
  bool trivial_action() const { return trivial_action_; }

  // Present for smash kind only.
  const AlgPtr& base() const { return base_; }
  const FiniteGroup& gamma() const { return gamma_; }
  const std::vector<Matrix>& gamma_poly_action() const { return gamma_poly_action_; }
  const std::vector<std::vector<int>>& gamma_group_action() const { return gamma_group_action_; }
  // Indices into group() of the base elements / gamma elements (smash over a group base).
  int semidirect_index(int b, int gamma) const { return b * gamma_.size() + gamma; }

  Monomial one() const;
  Monomial variable(int i) const;
  Monomial group_element(int g) const;
  bool is_one(const Monomial& m) const { return m == one(); }
  bool valid(const Monomial& m) const;

  Poly mul(const Monomial& a, const Monomial& b) const;
  Poly mul(const Poly& a, const Poly& b) const;
  // g acting on the polynomial part of m (group part must be identity).
  Poly act_group(int g, const Monomial& m) const;
  // Iterated coproduct Delta^{(n)}, n >= 1.
  std::vector<std::pair<Tuple, Q>> comul(const Monomial& m, int n) const;
  Q counit(const Monomial& m) const { return m.degree() == 0 ? Q(1) : Q(0); }
  Poly antipode(const Monomial& m) const;

  std::string format(const Monomial& m) const;
  std::string format(const Poly& p) const;

  bool same_as(const HopfAlgebra& o) const;

 private:
  HopfAlgebra() = default;
  void finish();

  Kind kind_ = Kind::polynomial;
  std::vector<std::string> variables_;
  FiniteGroup group_ = FiniteGroup::trivial();
  std::vector<Matrix> action_;
  bool trivial_action_ = true;

  AlgPtr base_;
  FiniteGroup gamma_ = FiniteGroup::trivial();
  std::vector<Matrix> gamma_poly_action_;
  std::vector<std::vector<int>> gamma_group_action_;
};

struct HElement {
  AlgPtr alg;
  Poly terms;
};

struct TensorElement {
  AlgPtr alg;
  int arity = 1;
  TensorTerms terms;
};

HElement mul(const HElement& a, const HElement& b);
TensorElement comul(const HElement& a, int n);
Q counit(const HElement& a);
HElement antipode(const HElement& a);
// Slotwise product of two tensors of equal arity.
TensorElement mul(const TensorElement& a, const TensorElement& b);
// pi[j] is the index in t receiving slot j of the result; pi must be surjective.
TensorElement delta_pi(const TensorElement& t, const std::vector<int>& pi);
// Slot j of t moves to position dest[j].
TensorElement permute(const TensorElement& t, const std::vector<int>& dest);
TensorElement tensor_of(const HElement& a);

}  // namespace hpseudo
