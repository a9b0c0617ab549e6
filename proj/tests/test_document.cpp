#include <doctest.h>

#include "jacobel/cli/commands.hpp"
#include "jacobel/cli/corpus.hpp"
#include "jacobel/cli/document.hpp"
#include "jacobel/error.hpp"
#include "support.hpp"

using namespace jacobel;
using namespace jacobel::cli;
using jacobel::test::deg;

namespace {

ErrorCode parse_error(std::string_view text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvariantViolation;
}

constexpr std::string_view kBanana = R"({
  "name": "banana",
  "components": [{"name": "v1", "genus": 0}, {"name": "v2", "genus": 0}],
  "nodes": [{"name": "n1", "ends": ["v1", "v2"]}, {"name": "n2", "ends": ["v1", "v2"]}],
  "polarization": {"rank": 1, "degrees": {"v1": 0, "v2": 0}},
  "line_bundle": {"v1": 1, "v2": 0},
  "marked_point": "v1"
})";

}  // namespace

TEST_CASE("corpus contents") {
  std::vector<std::string_view> stems;
  for (const auto& entry : builtin_corpus()) stems.push_back(entry.stem);
  CHECK(stems == std::vector<std::string_view>{"banana", "chain4", "loop_curve", "mixed", "theta", "three_cycle"});
  const CurveDocument m = corpus_document("mixed");
  CHECK(m.curve.irreducible_nodes().size() == 1);
  CHECK(m.curve.reducible_nodes().size() == 2);
  CHECK(m.choice.matching(1, 2) == Matching::kParallel);
  CHECK(corpus_document("theta").curve.node_count() == 3);
  CHECK(corpus_document("chain4").curve.component_count() == 4);
}

TEST_CASE("parse_document") {
  const CurveDocument doc = parse_document(kBanana);
  CHECK(doc.curve.genus() == 1);
  CHECK(doc.line_bundle == deg({1, 0}));
  CHECK(doc.marked_point == 0);
  CHECK(parse_document(R"({"components":[{"name":"v","genus":1}],"nodes":[],
    "polarization":{"rank":1,"degrees":[0]},"line_bundle":[1],"marked_point":"v"})")
            .line_bundle == deg({1}));

  CHECK(parse_error("{") == ErrorCode::kMalformedDocument);
  CHECK(parse_error(R"({"components":[]})") == ErrorCode::kEmptyCurve);
  CHECK(parse_error(R"({"components":[{"name":"v","genus":0}],"nodes":[],
    "polarization":{"rank":1,"degrees":{"v":0}},"line_bundle":{"v":1},"marked_point":"w"})") ==
        ErrorCode::kUnknownComponent);
  CHECK(parse_error(R"({"components":[{"name":"v","genus":0},{"name":"u","genus":0}],
    "nodes":[{"name":"n","ends":["v","u"]}],
    "polarization":{"rank":1,"degrees":{"v":0}},"line_bundle":{"v":1,"u":0},"marked_point":"v"})") ==
        ErrorCode::kSizeMismatch);
}

TEST_CASE("parse_multidegree requires full coverage") {
  const CurveDocument doc = parse_document(kBanana);
  CHECK(parse_multidegree(doc.curve, nlohmann::json::array({2, -2}), "x") == deg({2, -2}));
  CHECK_THROWS_AS(parse_multidegree(doc.curve, nlohmann::json::array({1, 2, 3}), "x"), Error);
  CHECK_THROWS_AS(parse_multidegree(doc.curve, nlohmann::json{{"v1", 1}}, "x"), Error);
}

TEST_CASE("validate reports statistics and degree warnings") {
  CommandResult r = cmd_validate(parse_document(kBanana));
  CHECK(r.exit_code == kExitOk);
  CHECK(r.certificate["result"]["curve"]["components"] == 2);
  CHECK(r.certificate["result"]["curve"]["reducible_nodes"] == 2);
  CHECK(r.certificate["result"]["curve"]["genus"] == 1);
  CHECK(r.certificate["summary"]["warnings"].empty());

  CurveDocument off = parse_document(kBanana);
  off.line_bundle = deg({3, 0});
  r = cmd_validate(off);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.certificate["summary"]["warnings"].size() == 1);
}

TEST_CASE("stability overrides and expectations") {
  const CurveDocument doc = parse_document(kBanana);
  StabilityRequest req;
  req.multidegree = deg({0, 0});
  CommandResult r = cmd_stability(doc, req);
  CHECK(r.certificate["result"]["report"]["verdict"] == "stable");

  req.multidegree = deg({2, -2});
  req.expect = Expectation::kSemistable;
  r = cmd_stability(doc, req);
  CHECK(r.certificate["result"]["report"]["verdict"] == "not-semistable");
  CHECK(r.exit_code == kExitViolation);
}

TEST_CASE("abel command record counts and choice independence") {
  CommandResult r = cmd_abel(parse_document(kBanana), AbelRequest{});
  CHECK(r.certificate["summary"]["records"] == 4);

  r = cmd_abel(parse_document(R"({"components":[{"name":"x","genus":2}],"nodes":[],
    "polarization":{"rank":1,"degrees":{"x":0}},"line_bundle":{"x":2},"marked_point":"x"})"),
               AbelRequest{});
  CHECK(r.certificate["summary"]["records"] == 1);

  AbelRequest all;
  all.all_choices = true;
  all.oracle = true;
  r = cmd_abel(parse_document(kBanana), all);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.certificate["summary"]["choices_checked"] == 4);  // one matching per ordered pair
  CHECK(r.certificate["summary"]["choice_differences"].empty());
}

TEST_CASE("certificates are reproducible") {
  const CurveDocument doc = corpus_document("mixed");
  AbelRequest req;
  req.parallel = true;
  const std::string a = cmd_abel(doc, req).certificate.dump();
  req.parallel = false;
  CHECK(cmd_abel(doc, req).certificate.dump() == a);
  CHECK(cmd_twister(doc, true).certificate.dump() == cmd_twister(doc, true).certificate.dump());
}

TEST_CASE("exit codes follow error kinds") {
  CHECK(exit_code_for(Error(ErrorCode::kInvariantViolation, "x")) == kExitViolation);
  CHECK(exit_code_for(Error(ErrorCode::kUnknownComponent, "x")) == kExitInputError);
  CHECK(exit_code_for(Error(ErrorCode::kMalformedDocument, "x")) == kExitInputError);
}
