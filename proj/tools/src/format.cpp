#include "jacobel/cli/format.hpp"

#include <sstream>

namespace jacobel::cli {

namespace {

Json node_names(const NodalCurve& curve, const std::vector<NodeIndex>& nodes) {
  Json out = Json::array();
  for (const NodeIndex n : nodes) out.push_back(curve.node(n).name);
  return out;
}

Json coefficient_json(const NodalCurve& curve, const std::vector<long long>& a) {
  Json out = Json::object();
  for (ComponentIndex k = 0; k < a.size(); ++k) out[curve.component(k).name] = a[k];
  return out;
}

}  // namespace

std::string format_rational(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

std::string format_multidegree(const SheafClass& d) {
  std::ostringstream out;
  out << '(';
  for (std::size_t k = 0; k < d.size(); ++k) out << (k == 0 ? "" : ", ") << d[k];
  out << ')';
  return out.str();
}

Json to_json(const NodalCurve& curve, const SheafClass& d) {
  Json out = Json::object();
  for (ComponentIndex k = 0; k < d.size(); ++k) out[curve.component(k).name] = d[k];
  return out;
}

Json to_json(const NodalCurve& curve, const Subcurve& y) {
  Json out = Json::array();
  for (const ComponentIndex k : y.members()) out.push_back(curve.component(k).name);
  return out;
}

Json to_json(const NodalCurve& curve, const StabilityReport& report) {
  Json out;
  out["verdict"] = std::string(to_string(report.verdict));
  out["expected_degree"] = report.expected_degree;
  out["actual_degree"] = report.actual_degree;
  if (report.witness) {
    out["witness"] = {{"subcurve", to_json(curve, report.witness->subcurve)},
                      {"beta", format_rational(report.witness->value)}};
  } else {
    out["witness"] = nullptr;
  }
  if (!report.table.empty()) {
    Json table = Json::array();
    for (const BetaEntry& entry : report.table) {
      table.push_back({{"subcurve", to_json(curve, entry.subcurve)}, {"beta", format_rational(entry.value)}});
    }
    out["beta_table"] = table;
  }
  return out;
}

Json to_json(const NodalCurve& curve, const QuasistableTwist& twist) {
  Json out;
  out["coefficients"] = coefficient_json(curve, twist.coefficients);
  out["twister_multidegree"] = to_json(curve, twist.twist);
  out["twisted"] = to_json(curve, twist.twisted);
  out["fallback"] = twist.used_fallback;
  out["iterations"] = twist.iterations;
  return out;
}

Json to_json(const NodalCurve& curve, const TwisterDifferenceResult& result) {
  Json out;
  out["i"] = curve.component(result.i).name;
  out["j"] = curve.component(result.j).name;
  out["z"] = result.z ? to_json(curve, *result.z) : Json(nullptr);
  out["source"] = std::string(to_string(result.source));
  out["ties"] = result.ties;
  out["fewest_components_agrees"] = result.fewest_components_agrees;
  out["min_beta"] = format_rational(result.min_beta);
  out["m"] = to_json(curve, result.m);
  out["corrected"] = to_json(curve, result.corrected);
  out["t_i"] = coefficient_json(curve, result.t_i.coefficients);
  out["t_j"] = coefficient_json(curve, result.t_j.coefficients);
  return out;
}

Json to_json(const NodalCurve& curve, const PushforwardDescriptor& descriptor) {
  Json out;
  out["multidegree"] = to_json(curve, descriptor.on_base);
  out["non_invertible"] = node_names(curve, descriptor.non_invertible);
  out["positive_chains"] = node_names(curve, descriptor.positive_chains);
  out["total"] = descriptor.total;
  out["canonical"] = descriptor.canonical;
  return out;
}

Json to_json(const NodalCurve& curve, const FiberRecord& record) {
  const NodalCurve& fiber = record.fiber.curve();
  Json out;
  out["stratum"] = record.name;
  out["kind"] = std::string(to_string(record.stratum.kind));
  Json components = Json::array();
  for (const Component& c : fiber.components()) components.push_back(c.name);
  out["fiber_components"] = components;
  out["mtilde"] = to_json(fiber, record.mtilde);
  out["g_class"] = to_json(fiber, record.g_class);
  out["mtilde_admissibility"] = std::string(to_string(record.mtilde_admissibility));
  out["admissibility"] = std::string(to_string(record.admissibility));
  Json chains = Json::array();
  for (const ChainEntry& chain : record.chains) {
    chains.push_back({{"node", curve.node(chain.node).name},
                      {"component", fiber.component(chain.component).name},
                      {"mtilde_degree", chain.mtilde_degree},
                      {"mtilde_beta", format_rational(chain.mtilde_beta)},
                      {"g_degree", chain.g_degree}});
  }
  out["chains"] = chains;
  out["pushforward"] = to_json(curve, record.pushforward);
  out["stability"] = to_json(fiber, record.stability);
  return out;
}

}  // namespace jacobel::cli
