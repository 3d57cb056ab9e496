#pragma once

#include "hpseudo/rational.hpp"

#include <map>

namespace hpseudo {

using SparseVec = std::map<int, Q>;

// Incremental row echelon form over Q. Each stored row has leading coefficient 1
// at its pivot, and the pivot is the row's smallest index.
class EchelonBasis {
 public:
  // Adds v if independent of the current span; returns whether it was added.
  bool insert(const SparseVec& v);
  SparseVec reduce(SparseVec v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool is_pivot(int i) const { return rows_.count(i) != 0; }

 private:
  std::map<int, SparseVec> rows_;
};

}  // namespace hpseudo
