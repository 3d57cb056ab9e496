#include "hpseudo/report.hpp"

namespace hpseudo {

bool all_pass(const std::vector<Check>& cs) {
  for (auto& c : cs)
    if (!c.pass) return false;
  return true;
}

std::vector<std::string> tuple_names(const std::vector<ModulePtr>& sources, const std::vector<int>& gens) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& m = sources[i < sources.size() ? i : sources.size() - 1];
    out.push_back(m->generators()[gens[i]].name);
  }
  return out;
}

}  // namespace hpseudo
