#pragma once

#include "hpseudo/constructions.hpp"
#include "hpseudo/twoterm.hpp"

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <variant>

namespace hpseudo {

inline constexpr const char* kDocumentFormat = "hpseudo-document/1";
inline constexpr const char* kReportFormat = "hpseudo-report/1";

using Json = nlohmann::ordered_json;

// Malformed or inconsistent input; where is a dotted path into the document.
class DocumentError : public std::runtime_error {
 public:
  DocumentError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct RepresentationOf {
  std::string of;  // name of a lie or linfty structure in the same document
  Representation rep;
};

struct ActionBlock {
  std::string structure;
  GammaAction action;
};

using StructureData = std::variant<LInftyStructure, RepresentationOf, TwoTermLInfty, CrossedModule, Lie2Algebra,
                                   AInftyStructure, LambdaTable, RankOne>;

// kind is one of lie, linfty, representation, two-term, crossed-module, lie2, ainfty, lambda-table, rank-one.
struct Structure {
  std::string kind;
  StructureData data;
};

struct Document {
  std::string origin;
  AlgPtr hopf;
  std::map<std::string, ModulePtr> modules;
  std::map<std::string, PseudoMap> maps;  // free-standing maps, e.g. cochains
  std::map<std::string, Structure> structures;
  std::map<std::string, ActionBlock> actions;

  // First structure of one of the kinds, or the named one; throws DocumentError.
  const Structure& find(const std::vector<std::string>& kinds, const std::string& name = {}) const;
};

Document load_document(const std::string& path);
Document parse_document(const Json& j);
Json document_to_json(const Document& d);
std::string dump_document(const Document& d);
void save_document(const Document& d, const std::string& path);

// Reports: structured (json) and human-readable forms; both deterministic.
Json report_to_json(const Report& r);
std::string report_to_text(const Report& r);

Json quotient_to_json(const QuotientTensor& q);

}  // namespace hpseudo
