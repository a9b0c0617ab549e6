#include "jacobel/cli/document.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "jacobel/error.hpp"

namespace jacobel::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void malformed(const std::string& message) { throw Error(ErrorCode::kMalformedDocument, message); }

const json& require(const json& object, const char* key, const std::string& context) {
  if (!object.is_object() || !object.contains(key)) malformed(context + ": missing '" + key + "'");
  return object.at(key);
}

std::string require_string(const json& value, const std::string& context) {
  if (!value.is_string()) malformed(context + " must be a string");
  return value.get<std::string>();
}

long long require_integer(const json& value, const std::string& context) {
  if (!value.is_number_integer()) malformed(context + " must be an integer");
  return value.get<long long>();
}

std::size_t require_count(const json& value, const std::string& context) {
  const long long n = require_integer(value, context);
  if (n < 0) malformed(context + " must be nonnegative");
  return static_cast<std::size_t>(n);
}

Matching parse_matching(const json& value) {
  const std::string text = require_string(value, "matching");
  if (text == "cross") return Matching::kCross;
  if (text == "parallel") return Matching::kParallel;
  malformed("matching must be 'cross' or 'parallel', got '" + text + "'");
}

CurveDescription parse_description(const json& root) {
  CurveDescription description;
  const json& components = require(root, "components", "document");
  if (!components.is_array()) malformed("'components' must be an array");
  for (const json& entry : components) {
    const std::string name = require_string(require(entry, "name", "component"), "component name");
    const long long genus = require_integer(require(entry, "genus", "component '" + name + "'"), "genus");
    description.components.push_back(Component{name, genus});
  }
  if (root.contains("nodes")) {
    const json& nodes = root.at("nodes");
    if (!nodes.is_array()) malformed("'nodes' must be an array");
    for (const json& entry : nodes) {
      const std::string name = require_string(require(entry, "name", "node"), "node name");
      const json& ends = require(entry, "ends", "node '" + name + "'");
      if (!ends.is_array() || ends.size() != 2) malformed("node '" + name + "' needs exactly two ends");
      description.nodes.push_back({name, require_string(ends[0], "node end"), require_string(ends[1], "node end")});
    }
  }
  return description;
}

DocumentOptions parse_options(const json& root) {
  DocumentOptions options;
  if (!root.contains("options")) return options;
  const json& value = root.at("options");
  if (!value.is_object()) malformed("'options' must be an object");
  for (const auto& [key, entry] : value.items()) {
    if (key == "iteration_cap") {
      options.twister.iteration_cap = require_count(entry, key);
    } else if (key == "box_cap") {
      options.twister.box_cap = require_count(entry, key);
    } else if (key == "enumerate_cap") {
      options.enumerate_cap = require_count(entry, key);
    } else if (key == "choice_cap") {
      options.choice_cap = require_count(entry, key);
    } else if (key == "table_max_components") {
      options.table_max_components = require_count(entry, key);
    } else if (key == "connected_only") {
      if (!entry.is_boolean()) malformed("connected_only must be a boolean");
      options.connected_only = entry.get<bool>();
    } else {
      malformed("unknown option '" + key + "'");
    }
  }
  return options;
}

}  // namespace

SheafClass parse_multidegree(const NodalCurve& curve, const json& value, std::string_view what) {
  const std::string context(what);
  std::vector<long long> degrees(curve.component_count(), 0);
  if (value.is_array()) {
    if (value.size() != curve.component_count()) {
      throw Error(ErrorCode::kSizeMismatch, context + " has " + std::to_string(value.size()) +
                                                " entries, the curve has " +
                                                std::to_string(curve.component_count()) + " components");
    }
    for (std::size_t k = 0; k < value.size(); ++k) degrees[k] = require_integer(value[k], context + " entry");
    return SheafClass(std::move(degrees));
  }
  if (!value.is_object()) malformed(context + " must be an object keyed by component name");
  std::set<ComponentIndex> seen;
  for (const auto& [key, entry] : value.items()) {
    const ComponentIndex k = curve.component_index(key);
    seen.insert(k);
    degrees[k] = require_integer(entry, context + " entry '" + key + "'");
  }
  if (seen.size() != curve.component_count()) {
    throw Error(ErrorCode::kSizeMismatch, context + " must list every component exactly once");
  }
  return SheafClass(std::move(degrees));
}

CurveDocument parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& error) {
    malformed(std::string("not valid JSON: ") + error.what());
  }
  if (!root.is_object()) malformed("document must be a JSON object");

  CurveDescription description = parse_description(root);
  NodalCurve curve = build_curve(description);

  Polarization polarization = Polarization::trivial(curve.component_count());
  if (root.contains("polarization")) {
    const json& value = root.at("polarization");
    const long long rank = require_integer(require(value, "rank", "polarization"), "polarization rank");
    const SheafClass degrees = parse_multidegree(curve, require(value, "degrees", "polarization"), "polarization");
    polarization = Polarization(rank, {degrees.degrees().begin(), degrees.degrees().end()});
  }

  SheafClass line_bundle = parse_multidegree(curve, require(root, "line_bundle", "document"), "line_bundle");
  const ComponentIndex marked =
      curve.component_index(require_string(require(root, "marked_point", "document"), "marked_point"));

  DesingularizationChoice choice;
  if (root.contains("desingularization")) {
    const json& value = root.at("desingularization");
    if (!value.is_array()) malformed("'desingularization' must be an array");
    for (const json& entry : value) {
      const json& pair = require(entry, "pair", "desingularization entry");
      if (!pair.is_array() || pair.size() != 2) malformed("desingularization pair needs two node names");
      const NodeIndex r = curve.node_index(require_string(pair[0], "node name"));
      const NodeIndex s = curve.node_index(require_string(pair[1], "node name"));
      if (!curve.is_reducible(r) || !curve.is_reducible(s)) {
        throw Error(ErrorCode::kNotReducibleNode, "matchings are declared for reducible nodes only");
      }
      if (r == s) malformed("desingularization pair must name two distinct nodes");
      choice.set(r, s, parse_matching(require(entry, "matching", "desingularization entry")));
    }
  }

  std::string name = root.contains("name") ? require_string(root.at("name"), "name") : std::string("curve");
  return CurveDocument{std::move(name),     std::move(description), std::move(curve),  std::move(polarization),
                       std::move(line_bundle), marked,             std::move(choice), parse_options(root)};
}

CurveDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

ordered_json echo(const CurveDocument& document) {
  const NodalCurve& curve = document.curve;
  ordered_json out;
  out["name"] = document.name;
  ordered_json components = ordered_json::array();
  for (const Component& c : curve.components()) components.push_back({{"name", c.name}, {"genus", c.genus}});
  out["components"] = components;
  ordered_json nodes = ordered_json::array();
  for (const Node& n : curve.nodes()) {
    nodes.push_back({{"name", n.name}, {"ends", {curve.component(n.first).name, curve.component(n.second).name}}});
  }
  out["nodes"] = nodes;
  ordered_json degrees = ordered_json::object();
  for (ComponentIndex k = 0; k < curve.component_count(); ++k) {
    degrees[curve.component(k).name] = document.polarization.degrees()[k];
  }
  out["polarization"] = {{"rank", document.polarization.rank()}, {"degrees", degrees}};
  ordered_json line_bundle = ordered_json::object();
  for (ComponentIndex k = 0; k < curve.component_count(); ++k) {
    line_bundle[curve.component(k).name] = document.line_bundle[k];
  }
  out["line_bundle"] = line_bundle;
  out["marked_point"] = curve.component(document.marked_point).name;
  ordered_json choices = ordered_json::array();
  for (const auto& [pair, matching] : document.choice.explicit_choices()) {
    choices.push_back({{"pair", {curve.node(pair.first).name, curve.node(pair.second).name}},
                       {"matching", std::string(to_string(matching))}});
  }
  out["desingularization"] = choices;
  return out;
}

}  // namespace jacobel::cli
