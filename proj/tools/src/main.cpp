#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "jacobel/cli/commands.hpp"
#include "jacobel/cli/selftest.hpp"
#include "jacobel/error.hpp"

namespace {

using namespace jacobel;
using namespace jacobel::cli;

SheafClass parse_override(const NodalCurve& curve, const std::string& text) {
  std::vector<long long> degrees;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      degrees.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kMalformedDocument, "multidegree entry '" + item + "' is not an integer");
    }
  }
  return parse_multidegree(curve, nlohmann::json(degrees), "--multidegree");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasistability, twisters and the resolved degree-1 Abel map of nodal curves"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  bool json = false;
  std::string file;
  const auto add_common = [&](CLI::App* sub, bool needs_file) {
    sub->add_flag("--json", json, "Emit the certificate as JSON");
    if (needs_file) sub->add_option("file", file, "Curve document (JSON)")->required();
  };

  auto* validate = app.add_subcommand("validate", "Check a document and report curve statistics");
  add_common(validate, true);

  std::string multidegree;
  std::string expect;
  bool table = false;
  auto* stability = app.add_subcommand("stability", "Classify a multidegree");
  add_common(stability, true);
  stability->add_option("--multidegree", multidegree, "Comma-separated degrees in component order");
  stability->add_option("--expect", expect, "Exit 1 unless the verdict meets this level")
      ->check(CLI::IsMember({"semistable", "quasistable", "stable"}));
  stability->add_flag("--table", table, "Include beta on every proper subcurve");

  bool oracle = false;
  auto* twister = app.add_subcommand("twister", "Quasistable twisters and twister differences");
  add_common(twister, true);
  twister->add_flag("--oracle", oracle, "Cross-check every twister by exhaustive search");

  bool all_choices = false;
  bool parallel = false;
  auto* abel = app.add_subcommand("abel", "Resolve the Abel map over every stratum");
  add_common(abel, true);
  abel->add_flag("--oracle", oracle, "Cross-check every twister by exhaustive search");
  abel->add_flag("--all-choices", all_choices, "Re-run every matching assignment and compare pushforwards");
  abel->add_flag("--parallel", parallel, "Evaluate strata concurrently");

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate semistable and P-quasistable multidegrees");
  add_common(enumerate, true);

  std::uint64_t seed = kDefaultSeed;
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria on the built-in corpus");
  add_common(selftest, false);
  selftest->add_option("--seed", seed, "Seed for the randomized oracle comparisons");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    CommandResult result;
    if (*selftest) {
      result = cmd_selftest(seed);
    } else {
      const CurveDocument document = load_document(file);
      if (*validate) {
        result = cmd_validate(document);
      } else if (*stability) {
        StabilityRequest request;
        if (!multidegree.empty()) request.multidegree = parse_override(document.curve, multidegree);
        if (!expect.empty()) request.expect = parse_expectation(expect);
        request.table = table;
        result = cmd_stability(document, request);
      } else if (*twister) {
        result = cmd_twister(document, oracle);
      } else if (*abel) {
        result = cmd_abel(document, AbelRequest{oracle, all_choices, parallel});
      } else {
        result = cmd_enumerate(document);
      }
    }
    if (json) {
      std::cout << result.certificate.dump(2) << '\n';
    } else {
      std::cout << result.text;
    }
    return result.exit_code;
  } catch (const Error& error) {
    std::cerr << "jacobel: " << error.what() << '\n';
    return exit_code_for(error);
  }
}
