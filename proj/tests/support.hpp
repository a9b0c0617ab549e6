#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jacobel/curve.hpp"
#include "jacobel/error.hpp"
#include "jacobel/stability.hpp"

namespace jacobel::test {

struct NodeSpec {
  std::string name;
  std::string first;
  std::string second;
};

inline NodalCurve make_curve(const std::vector<std::pair<std::string, long long>>& components,
                             const std::vector<NodeSpec>& nodes) {
  CurveDescription description;
  for (const auto& [name, genus] : components) description.components.push_back(Component{name, genus});
  for (const auto& node : nodes) description.nodes.push_back({node.name, node.first, node.second});
  return build_curve(description);
}

inline NodalCurve banana() {
  return make_curve({{"v1", 0}, {"v2", 0}}, {{"n1", "v1", "v2"}, {"n2", "v1", "v2"}});
}

inline NodalCurve three_cycle() {
  return make_curve({{"v1", 0}, {"v2", 0}, {"v3", 0}},
                    {{"n12", "v1", "v2"}, {"n23", "v2", "v3"}, {"n31", "v3", "v1"}});
}

inline NodalCurve loop_curve() { return make_curve({{"v", 1}}, {{"R", "v", "v"}}); }

inline NodalCurve mixed() {
  return make_curve({{"a", 0}, {"b", 1}, {"c", 0}}, {{"l", "a", "a"}, {"n1", "a", "b"}, {"n2", "b", "c"}});
}

inline SheafClass deg(std::vector<long long> d) { return SheafClass(std::move(d)); }

// Straight from the definition, one node at a time; shares nothing with BetaContext.
inline Rational naive_beta(const NodalCurve& curve, const Polarization& e, const SheafClass& d,
                           Subcurve::Mask y) {
  long long chi = 0;
  long long e_y = 0;
  for (std::size_t i = 0; i < curve.component_count(); ++i) {
    if (((y >> i) & 1U) == 0) continue;
    chi += d[i] + 1 - curve.component(i).genus;
    e_y += e.degrees()[i];
  }
  for (const Node& node : curve.nodes()) {
    if (((y >> node.first) & 1U) != 0 && ((y >> node.second) & 1U) != 0) --chi;
  }
  return Rational(chi) + Rational(e_y, e.rank());
}

}  // namespace jacobel::test
