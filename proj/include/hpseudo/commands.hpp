#pragma once

#include "hpseudo/io.hpp"

#include <string>
#include <vector>

namespace hpseudo {

struct RunOptions {
  std::string structure;  // structure name; empty selects the first of a fitting kind
  int max_arity = 0;      // operations above this arity are dropped before verifying; 0 keeps all
  int max_n = 0;          // bound on N for identity checks; 0 uses the verifier default
  // construct current / current-ext: variable names of the new algebra
  std::vector<std::string> variables;
  // construct smash-lift: action block name
  std::string action;
};

// Kinds accepted by verify_command and construct_command.
const std::vector<std::string>& verify_kinds();
const std::vector<std::string>& construct_kinds();

// Throws DocumentError for documents lacking what the command needs and for unknown kinds.
Report verify_command(const Document& d, const std::string& kind, const RunOptions& o);
Document construct_command(const Document& d, const std::string& kind, const RunOptions& o);
// Window dimensions of H^n for the first (or named) representation; optionally checks a stored map for closedness.
Report cohomology_command(const Document& d, int n, int window, const std::string& check_map, const RunOptions& o);
// Every structure and action block of the document, each with its verifier.
Report report_command(const Document& d, const RunOptions& o);

// Bundled fixtures, built from the library.
const std::vector<std::string>& fixture_names();
Document fixture_document(const std::string& name);

}  // namespace hpseudo
