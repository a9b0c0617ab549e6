#include "jacobel/cli/commands.hpp"

#include <sstream>

#include "jacobel/abel.hpp"
#include "jacobel/cli/selftest.hpp"
#include "jacobel/oracle.hpp"

namespace jacobel::cli {

namespace {

Json envelope(std::string_view command, const CurveDocument* document) {
  Json out;
  out["tool"] = "jacobel";
  out["version"] = std::string(kToolVersion);
  out["command"] = std::string(command);
  if (document) out["input"] = echo(*document);
  return out;
}

std::string subcurve_text(const NodalCurve& curve, const Subcurve& y) { return format_subcurve(curve, y); }

bool meets(Verdict verdict, Expectation expect) {
  switch (expect) {
    case Expectation::kSemistable: return is_semistable(verdict);
    case Expectation::kQuasistable: return is_p_quasistable(verdict);
    case Expectation::kStable: return verdict == Verdict::kStable;
  }
  return false;
}

std::string_view to_string(Expectation expect) {
  switch (expect) {
    case Expectation::kSemistable: return "semistable";
    case Expectation::kQuasistable: return "quasistable";
    case Expectation::kStable: return "stable";
  }
  return "unknown";
}

}  // namespace

std::optional<Expectation> parse_expectation(std::string_view text) {
  if (text == "semistable") return Expectation::kSemistable;
  if (text == "quasistable") return Expectation::kQuasistable;
  if (text == "stable") return Expectation::kStable;
  return std::nullopt;
}

int exit_code_for(const Error& error) {
  switch (error.code()) {
    case ErrorCode::kInvariantViolation:
    case ErrorCode::kNoQuasistableTwister: return kExitViolation;
    default: return kExitInputError;
  }
}

CommandResult cmd_validate(const CurveDocument& document) {
  const NodalCurve& curve = document.curve;
  const long long expected = quasistable_degree(curve, document.polarization) + 1;
  const long long actual = document.line_bundle.total();

  CommandResult result;
  result.certificate = envelope("validate", &document);
  Json stats;
  stats["components"] = curve.component_count();
  stats["nodes"] = curve.node_count();
  stats["reducible_nodes"] = curve.reducible_nodes().size();
  stats["irreducible_nodes"] = curve.irreducible_nodes().size();
  stats["genus"] = curve.genus();
  stats["slope"] = document.polarization.slope();
  stats["spanning_trees"] = spanning_tree_count(curve);
  Json degree;
  degree["line_bundle"] = actual;
  degree["expected"] = expected;
  degree["ok"] = actual == expected;
  Json warnings = Json::array();
  if (actual != expected) {
    warnings.push_back("line bundle has degree " + std::to_string(actual) + ", expected g - slope = " +
                       std::to_string(expected));
  }
  result.certificate["result"] = {{"curve", stats}, {"degree_check", degree}};
  result.certificate["summary"] = {{"status", "ok"}, {"warnings", warnings}};

  std::ostringstream text;
  text << "curve " << document.name << ": p=" << curve.component_count() << " nodes=" << curve.node_count()
       << " (reducible " << curve.reducible_nodes().size() << ", irreducible " << curve.irreducible_nodes().size()
       << ") g=" << curve.genus() << " slope=" << document.polarization.slope() << '\n';
  text << "deg L = " << actual << " (expected " << expected << ")" << (actual == expected ? "" : "  WARNING") << '\n';
  result.text = text.str();
  return result;
}

CommandResult cmd_stability(const CurveDocument& document, const StabilityRequest& request) {
  const NodalCurve& curve = document.curve;
  SheafClass d;
  std::string origin;
  if (request.multidegree) {
    d = *request.multidegree;
    origin = "override";
  } else {
    d = find_quasistable_twister(curve, document.polarization, subtract_point(document.line_bundle, document.marked_point),
                                 document.marked_point, document.options.twister)
            .twisted;
    origin = "twisted class at the marked component";
  }
  ClassifyOptions options;
  options.connected_only = document.options.connected_only;
  options.with_table = request.table;
  options.table_max_components = document.options.table_max_components;
  const StabilityReport report = classify(curve, document.polarization, d, document.marked_point, options);

  CommandResult result;
  result.certificate = envelope("stability", &document);
  result.certificate["result"] = {{"class", to_json(curve, d)}, {"origin", origin}, {"report", to_json(curve, report)}};
  bool ok = true;
  if (request.expect) {
    ok = meets(report.verdict, *request.expect);
    result.certificate["summary"] = {{"status", ok ? "ok" : "expectation-failed"},
                                     {"expect", std::string(to_string(*request.expect))}};
  } else {
    result.certificate["summary"] = {{"status", "ok"}};
  }
  result.exit_code = ok ? kExitOk : kExitViolation;

  std::ostringstream text;
  text << "class " << format_multidegree(d) << " (" << origin << "), P on " << curve.component(document.marked_point).name
       << '\n';
  text << "verdict: " << to_string(report.verdict);
  if (report.verdict == Verdict::kDegreeMismatch) {
    text << " (degree " << report.actual_degree << ", expected " << report.expected_degree << ")";
  }
  if (report.witness) {
    text << "  witness " << subcurve_text(curve, report.witness->subcurve)
         << " beta=" << format_rational(report.witness->value);
  }
  text << '\n';
  for (const BetaEntry& entry : report.table) {
    text << "  beta" << subcurve_text(curve, entry.subcurve) << " = " << format_rational(entry.value) << '\n';
  }
  if (!ok) text << "expectation '" << to_string(*request.expect) << "' not met\n";
  result.text = text.str();
  return result;
}

CommandResult cmd_twister(const CurveDocument& document, bool oracle) {
  const NodalCurve& curve = document.curve;
  const auto& options = document.options.twister;
  const std::vector<QuasistableTwist> twisters =
      quasistable_twisters(curve, document.polarization, document.line_bundle, document.marked_point, options);

  CommandResult result;
  result.certificate = envelope("twister", &document);
  std::ostringstream text;
  Json table = Json::array();
  std::size_t mismatches = 0;
  for (ComponentIndex k = 0; k < curve.component_count(); ++k) {
    Json row = {{"component", curve.component(k).name}};
    row.update(to_json(curve, twisters[k]));
    text << "T[" << curve.component(k).name << "] a=" << format_multidegree(SheafClass(twisters[k].coefficients))
         << " twisted=" << format_multidegree(twisters[k].twisted);
    if (oracle) {
      const QuasistableTwist exhaustive = exhaustive_quasistable_twister(
          curve, document.polarization, subtract_point(document.line_bundle, k), document.marked_point, options);
      const bool agrees = exhaustive.coefficients == twisters[k].coefficients;
      mismatches += agrees ? 0 : 1;
      row["oracle_agrees"] = agrees;
      text << (agrees ? "  oracle ok" : "  ORACLE MISMATCH");
    }
    text << '\n';
    table.push_back(row);
  }

  Json differences = Json::array();
  for (ComponentIndex i = 0; i < curve.component_count(); ++i) {
    for (ComponentIndex j = 0; j < curve.component_count(); ++j) {
      if (i != j && curve.delta(i, j) == 0) continue;
      const TwisterDifferenceResult difference = twister_difference(
          curve, document.polarization, document.line_bundle, document.marked_point, i, j, options);
      differences.push_back(to_json(curve, difference));
      text << "Z[" << curve.component(i).name << "," << curve.component(j).name
           << "] = " << (difference.z ? subcurve_text(curve, *difference.z) : std::string("{}")) << " ("
           << to_string(difference.source) << (difference.ties > 1 ? ", tie" : "") << ")\n";
    }
  }
  result.certificate["result"] = {{"twisters", table}, {"differences", differences}};
  result.certificate["summary"] = {{"status", mismatches == 0 ? "ok" : "oracle-mismatch"},
                                   {"oracle", oracle},
                                   {"mismatches", mismatches}};
  result.exit_code = mismatches == 0 ? kExitOk : kExitViolation;
  result.text = text.str();
  return result;
}

CommandResult cmd_abel(const CurveDocument& document, const AbelRequest& request) {
  const NodalCurve& curve = document.curve;
  AbelOptions options;
  options.twister = document.options.twister;
  options.parallel = request.parallel;
  const AbelResolution resolution = resolve_abel_map(curve, document.polarization, document.line_bundle,
                                                     document.marked_point, document.choice, options);

  CommandResult result;
  result.certificate = envelope("abel", &document);
  std::ostringstream text;
  Json records = Json::array();
  for (const FiberRecord& record : resolution.records) {
    records.push_back(to_json(curve, record));
    text << record.name << " [" << to_string(record.stratum.kind) << "]  M~=" << format_multidegree(record.mtilde)
         << "  G=" << format_multidegree(record.g_class) << "  " << to_string(record.admissibility)
         << "  push=" << format_multidegree(record.pushforward.on_base) << " {";
    for (std::size_t k = 0; k < record.pushforward.non_invertible.size(); ++k) {
      text << (k == 0 ? "" : ",") << curve.node(record.pushforward.non_invertible[k]).name;
    }
    text << "} total " << record.pushforward.total << "  " << to_string(record.stability.verdict) << '\n';
  }
  Json twisters = Json::array();
  for (ComponentIndex k = 0; k < curve.component_count(); ++k) {
    Json row = {{"component", curve.component(k).name}};
    row.update(to_json(curve, resolution.twisters[k]));
    twisters.push_back(row);
  }
  result.certificate["result"] = {{"twisters", twisters}, {"records", records}};

  bool ok = true;
  Json summary = {{"status", "ok"}, {"records", resolution.records.size()}};
  if (request.oracle) {
    std::size_t mismatches = 0;
    for (ComponentIndex k = 0; k < curve.component_count(); ++k) {
      const QuasistableTwist exhaustive =
          exhaustive_quasistable_twister(curve, document.polarization, subtract_point(document.line_bundle, k),
                                         document.marked_point, options.twister);
      if (exhaustive.coefficients != resolution.twisters[k].coefficients) ++mismatches;
    }
    summary["oracle_mismatches"] = mismatches;
    ok = ok && mismatches == 0;
    text << "oracle: " << (mismatches == 0 ? "all twisters agree" : "MISMATCH") << '\n';
  }
  if (request.all_choices) {
    const auto choices = DesingularizationChoice::all(curve, document.options.choice_cap);
    Json differences = Json::array();
    for (const DesingularizationChoice& choice : choices) {
      const AbelResolution other = resolve_abel_map(curve, document.polarization, document.line_bundle,
                                                    document.marked_point, choice, options);
      for (std::size_t r = 0; r < other.records.size(); ++r) {
        if (other.records[r].pushforward != resolution.records[r].pushforward && differences.size() < 16) {
          differences.push_back({{"stratum", other.records[r].name},
                                 {"pushforward", to_json(curve, other.records[r].pushforward)}});
        }
      }
    }
    summary["choices_checked"] = choices.size();
    summary["choice_differences"] = differences;
    ok = ok && differences.empty();
    text << "all choices (" << choices.size() << "): "
         << (differences.empty() ? "pushforwards identical" : "DIFFERENCES FOUND") << '\n';
  }
  if (!ok) summary["status"] = "violation";
  result.certificate["summary"] = summary;
  result.exit_code = ok ? kExitOk : kExitViolation;
  result.text = text.str();
  return result;
}

CommandResult cmd_enumerate(const CurveDocument& document) {
  const NodalCurve& curve = document.curve;
  EnumerateOptions options;
  options.max_candidates = document.options.enumerate_cap;
  const SemistableSets sets = enumerate_semistable(curve, document.polarization, document.marked_point, options);
  const long long trees = spanning_tree_count(curve);
  const auto classes = partition_by_twister_class(curve, sets.quasistable);
  bool unique = classes.size() == sets.quasistable.size() && static_cast<long long>(classes.size()) == trees;

  CommandResult result;
  result.certificate = envelope("enumerate", &document);
  Json semistable = Json::array();
  for (const SheafClass& d : sets.semistable) semistable.push_back(to_json(curve, d));
  Json quasistable = Json::array();
  for (const SheafClass& d : sets.quasistable) quasistable.push_back(to_json(curve, d));
  result.certificate["result"] = {{"semistable", semistable},
                                  {"quasistable", quasistable},
                                  {"twister_classes", classes.size()},
                                  {"spanning_trees", trees}};
  result.certificate["summary"] = {{"status", unique ? "ok" : "violation"}, {"one_per_class", unique}};
  result.exit_code = unique ? kExitOk : kExitViolation;

  std::ostringstream text;
  text << "semistable (" << sets.semistable.size() << "):";
  for (const SheafClass& d : sets.semistable) text << ' ' << format_multidegree(d);
  text << "\nP-quasistable (" << sets.quasistable.size() << "):";
  for (const SheafClass& d : sets.quasistable) text << ' ' << format_multidegree(d);
  text << "\ntwister classes: " << classes.size() << ", spanning trees: " << trees
       << (unique ? "" : "  VIOLATION: not one representative per class") << '\n';
  result.text = text.str();
  return result;
}

CommandResult cmd_selftest(std::uint64_t seed) {
  CommandResult result;
  result.certificate = envelope("selftest", nullptr);
  result.certificate["seed"] = seed;
  Json rows = Json::array();
  bool all = true;
  std::ostringstream text;
  const auto add = [&](const CriterionResult& row) {
    all = all && row.passed;
    rows.push_back(to_json(row));
    text << (row.passed ? "PASS" : "FAIL") << "  criterion " << row.id << ": " << row.title << " (" << row.checks
         << " checks)" << (row.detail.empty() ? "" : " - " + row.detail) << '\n';
  };
  for (const Criterion& criterion : criteria()) add(criterion.run(seed));
  add(run_determinism(seed));
  result.certificate["criteria"] = rows;
  result.certificate["summary"] = {{"status", all ? "ok" : "failed"}};
  result.exit_code = all ? kExitOk : kExitViolation;
  result.text = text.str();
  return result;
}

}  // namespace jacobel::cli
