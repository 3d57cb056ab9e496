#include "support.hpp"

#include "hpseudo/commands.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace hpseudo;

namespace {

Json vir_json() { return Json::parse(dump_document(fixture_document("vir"))); }

std::string where_of(const Json& j) {
  try {
    parse_document(j);
  } catch (const DocumentError& e) {
    return e.where();
  }
  return "<accepted>";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("every fixture survives dump and parse byte for byte") {
  for (auto& name : fixture_names()) {
    CAPTURE(name);
    const std::string first = dump_document(fixture_document(name));
    const std::string second = dump_document(parse_document(Json::parse(first)));
    CHECK(first == second);
  }
}

TEST_CASE("reloaded fixtures give the same report") {
  for (const char* name : {"vir", "vir-mutant", "cur-sl2", "strict-heis", "crossed-sl2-mutant", "skeletal-mutant",
                           "rank-one-vir", "ainfty-mat2", "vir-z2-mutant"}) {
    CAPTURE(name);
    Document d = fixture_document(name);
    Document back = parse_document(Json::parse(dump_document(d)));
    Report a = report_command(d, {}), b = report_command(back, {});
    CHECK(report_to_text(a) == report_to_text(b));
    CHECK(report_to_json(a).dump() == report_to_json(b).dump());
    CHECK(report_to_text(a) == report_to_text(report_command(d, {})));
  }
}

TEST_CASE("shipped fixture files match the library") {
  for (auto& name : fixture_names()) {
    CAPTURE(name);
    CHECK(read_file(std::string(HPSEUDO_SOURCE_DIR) + "/fixtures/" + name + ".json") ==
          dump_document(fixture_document(name)));
  }
}

TEST_CASE("malformed documents are located") {
  Json j = vir_json();
  CHECK(where_of(j) == "<accepted>");

  Json bad = j;
  bad["format"] = "something-else";
  CHECK(where_of(bad) == "format");

  bad = j;
  bad.erase("hopf");
  CHECK(where_of(bad) == "hopf");

  bad = j;
  bad["maps"]["vir.beta2"]["entries"][0]["value"][0]["c"] = "2/4";
  CHECK(where_of(bad) == "maps.vir.beta2.entries[0].value[0].c");

  bad = j;
  bad["maps"]["vir.beta2"]["entries"][0]["value"][0]["c"] = "1/0";
  CHECK(where_of(bad) == "maps.vir.beta2.entries[0].value[0].c");

  bad = j;
  bad["maps"]["vir.beta2"]["entries"][0]["value"][1]["gen"] = "X";
  CHECK(where_of(bad) == "maps.vir.beta2.entries[0].value[1].gen");

  bad = j;
  bad["maps"]["vir.beta2"]["entries"][0]["args"][1] = "X";
  CHECK(where_of(bad) == "maps.vir.beta2.entries[0].args[1]");

  bad = j;
  bad["maps"]["vir.beta2"]["entries"][0]["value"][0]["slots"][0] = Json::array({0, 0});
  CHECK(where_of(bad) == "maps.vir.beta2.entries[0].value[0].slots[0][1]");

  bad = j;
  bad["structures"]["vir"]["ops"]["2"] = "missing";
  CHECK(where_of(bad) == "structures.vir.ops.2");

  bad = j;
  bad["modules"]["Vir"]["generators"][0]["degree"] = "zero";
  CHECK(where_of(bad) == "modules.Vir.generators[0].degree");

  // a value that is not in canonical form
  bad = j;
  bad["maps"]["vir.beta2"]["entries"][0]["value"][0]["slots"][0] = Json::array({0});
  bad["maps"]["vir.beta2"]["entries"][0]["value"][0]["h"] = Json::array({1});
  bad["maps"]["vir.beta2"]["entries"][0]["value"][1]["slots"][0] = Json::array({0});
  bad["maps"]["vir.beta2"]["entries"][0]["value"][1].erase("h");
  bad["maps"]["vir.beta2"]["entries"][0]["value"][1]["c"] = "-2";
  bad["maps"]["vir.beta2"]["entries"][0]["value"].push_back(
      Json{{"slots", Json::array({Json::array({0})})}, {"h", Json::array({1})}, {"gen", "L"}, {"c", "1"}});
  CHECK(where_of(bad).rfind("maps.vir.beta2.entries[0]", 0) == 0);

  CHECK_THROWS_AS(parse_document(Json::parse("[1, 2]")), DocumentError);
  CHECK_THROWS_AS(fixture_document("no-such-fixture"), DocumentError);
}

TEST_CASE("constructed documents parse and verify") {
  struct Case {
    const char* fixture;
    const char* construct;
    const char* verify;
    std::vector<std::string> variables;
  };
  const std::vector<Case> cases{
      {"sl2", "current", "lie", {"d"}},
      {"cur-sl2", "current-ext", "lie", {"d", "e"}},
      {"cur-sl2", "semidirect", "lie", {}},
      {"cur-sl2", "annihilation", "lie", {}},
      {"ainfty-mat2", "skew-symmetrize", "lie", {}},
      {"vir-z2", "smash-lift", "lie", {}},
      {"skeletal-cb", "to-lie2", "lie2", {}},
      {"lie2", "to-two-term", "two-term", {}},
      {"strict-heis", "to-crossed", "crossed-module", {}},
      {"crossed-heis", "to-two-term", "two-term", {}},
      {"skeletal-cb", "to-skeletal-triple", "representation", {}},
      {"vir", "from-dictionary", "lie", {}},
      {"vir", "to-dictionary", "lambda-table", {}},
  };
  for (auto& c : cases) {
    const std::string label = std::string(c.construct) + " on " + c.fixture;
    CAPTURE(label);
    RunOptions o;
    o.variables = c.variables;
    Document out = construct_command(fixture_document(c.fixture), c.construct, o);
    const std::string text = dump_document(out);
    Document back = parse_document(Json::parse(text));
    CHECK(dump_document(back) == text);
    CHECK(verify_command(back, c.verify, {}).all_pass());
  }
  Document m = construct_command(fixture_document("skeletal-mutant"), "to-lie2", {});
  CHECK_FALSE(verify_command(m, "lie2", {}).all_pass());
  CHECK_THROWS_AS(construct_command(fixture_document("vir"), "no-such-kind", {}), DocumentError);
}

TEST_CASE("report formats") {
  Report r = verify_command(fixture_document("vir-mutant"), "lie", {});
  const std::string text = report_to_text(r);
  CHECK(text.find("FAIL higher-jacobi") != std::string::npos);
  CHECK(text.find("summary: ") != std::string::npos);
  Json j = report_to_json(r);
  CHECK(j["format"] == kReportFormat);
  CHECK(j["summary"]["fail"].get<int>() == r.failures());
  CHECK(j["summary"]["total"].get<int>() == static_cast<int>(r.checks.size()));
  int fails = 0;
  for (auto& c : j["checks"]) fails += c["verdict"] == "FAIL";
  CHECK(fails == r.failures());
}
