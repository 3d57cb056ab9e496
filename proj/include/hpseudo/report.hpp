#pragma once

#include "hpseudo/quotient.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hpseudo {

// One verdict with the first witness of failure.
struct Check {
  std::string id;
  bool pass = true;
  int level = 0;  // failing N or arity; 0 when not applicable
  std::vector<std::string> tuple;
  std::optional<QuotientTensor> residual;
  std::string note;

  static Check ok(std::string id, std::string note = {}) { return Check{std::move(id), true, 0, {}, {}, std::move(note)}; }
  static Check fail(std::string id, std::string note) { return Check{std::move(id), false, 0, {}, {}, std::move(note)}; }
};

struct Report {
  std::string command;
  std::vector<Check> checks;

  void add(Check c) { checks.push_back(std::move(c)); }
  void add(const std::vector<Check>& cs) { checks.insert(checks.end(), cs.begin(), cs.end()); }
  bool all_pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  int failures() const {
    int n = 0;
    for (auto& c : checks) n += c.pass ? 0 : 1;
    return n;
  }
};

bool all_pass(const std::vector<Check>& cs);

// Generator names of a tuple, for witnesses.
std::vector<std::string> tuple_names(const std::vector<ModulePtr>& sources, const std::vector<int>& gens);

}  // namespace hpseudo
