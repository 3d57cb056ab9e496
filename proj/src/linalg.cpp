#include "hpseudo/linalg.hpp"

namespace hpseudo {

SparseVec EchelonBasis::reduce(SparseVec v) const {
  auto it = v.begin();
  while (it != v.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const int pivot = it->first;
    const Q c = it->second;
    for (auto& [j, r] : row->second) {
      Q& slot = v[j];
      slot -= c * r;
    }
    for (auto jt = v.begin(); jt != v.end();) jt = jt->second == 0 ? v.erase(jt) : std::next(jt);
    it = v.upper_bound(pivot);
  }
  return v;
}

bool EchelonBasis::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  const Q lead = r.begin()->second;
  for (auto& [j, c] : r) c /= lead;
  rows_.emplace(r.begin()->first, std::move(r));
  return true;
}

}  // namespace hpseudo
