#include "jacobel/curve.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "jacobel/error.hpp"

namespace jacobel {

namespace {

constexpr Subcurve::Mask bit(std::size_t i) { return Subcurve::Mask{1} << i; }

}  // namespace

NodalCurve build_curve(const CurveDescription& description) {
  if (description.components.empty()) {
    throw Error(ErrorCode::kEmptyCurve, "a curve needs at least one component");
  }
  if (description.components.size() > kMaxComponents) {
    throw Error(ErrorCode::kTooManyComponents,
                std::to_string(description.components.size()) + " components (max " +
                    std::to_string(kMaxComponents) + ")");
  }

  NodalCurve curve;
  std::set<std::string, std::less<>> seen;
  for (const auto& component : description.components) {
    if (component.genus < 0) {
      throw Error(ErrorCode::kNegativeGenus, "component '" + component.name + "'");
    }
    if (!seen.insert(component.name).second) {
      throw Error(ErrorCode::kDuplicateName, "component '" + component.name + "'");
    }
    curve.components_.push_back(component);
  }

  const auto resolve = [&](const std::string& node, const std::string& end) {
    for (ComponentIndex i = 0; i < curve.components_.size(); ++i) {
      if (curve.components_[i].name == end) return i;
    }
    throw Error(ErrorCode::kDanglingNodeEnd, "node '" + node + "' ends on unknown component '" + end + "'");
  };

  std::set<std::string, std::less<>> node_names;
  const std::size_t p = curve.components_.size();
  curve.adjacency_.assign(p, 0);
  for (const auto& entry : description.nodes) {
    if (!node_names.insert(entry.name).second) {
      throw Error(ErrorCode::kDuplicateName, "node '" + entry.name + "'");
    }
    const ComponentIndex a = resolve(entry.name, entry.first);
    const ComponentIndex b = resolve(entry.name, entry.second);
    curve.nodes_.push_back(Node{entry.name, a, b});
    curve.node_masks_.push_back(bit(a) | bit(b));
    if (a != b) {
      curve.adjacency_[a] |= bit(b);
      curve.adjacency_[b] |= bit(a);
    }
  }

  curve.full_mask_ = Subcurve::universe_mask(p);
  if (!curve.is_connected(curve.full_mask_)) {
    throw Error(ErrorCode::kDisconnectedCurve, "the dual graph is not connected");
  }

  long long genus_sum = 0;
  for (const auto& component : curve.components_) genus_sum += component.genus;
  curve.genus_ = genus_sum + static_cast<long long>(curve.nodes_.size()) - static_cast<long long>(p) + 1;
  return curve;
}

ComponentIndex NodalCurve::component_index(std::string_view name) const {
  for (ComponentIndex i = 0; i < components_.size(); ++i) {
    if (components_[i].name == name) return i;
  }
  throw Error(ErrorCode::kUnknownComponent, "'" + std::string(name) + "'");
}

NodeIndex NodalCurve::node_index(std::string_view name) const {
  for (NodeIndex n = 0; n < nodes_.size(); ++n) {
    if (nodes_[n].name == name) return n;
  }
  throw Error(ErrorCode::kUnknownNode, "'" + std::string(name) + "'");
}

std::vector<NodeIndex> NodalCurve::reducible_nodes() const {
  std::vector<NodeIndex> out;
  for (NodeIndex n = 0; n < nodes_.size(); ++n) {
    if (!nodes_[n].is_loop()) out.push_back(n);
  }
  return out;
}

std::vector<NodeIndex> NodalCurve::irreducible_nodes() const {
  std::vector<NodeIndex> out;
  for (NodeIndex n = 0; n < nodes_.size(); ++n) {
    if (nodes_[n].is_loop()) out.push_back(n);
  }
  return out;
}

long long NodalCurve::delta(ComponentIndex i, ComponentIndex j) const {
  if (i == j) return 0;
  long long count = 0;
  for (const auto& node : nodes_) {
    if ((node.first == i && node.second == j) || (node.first == j && node.second == i)) ++count;
  }
  return count;
}

bool NodalCurve::is_connected(Mask mask) const {
  if (mask == 0) return false;
  Mask reached = mask & (~mask + 1);  // lowest member
  Mask frontier = reached;
  while (frontier != 0) {
    const auto i = static_cast<std::size_t>(std::countr_zero(frontier));
    frontier &= frontier - 1;
    const Mask fresh = adjacency_[i] & mask & ~reached;
    reached |= fresh;
    frontier |= fresh;
  }
  return reached == mask;
}

// --- Subcurve -------------------------------------------------------------

Subcurve::Mask Subcurve::universe_mask(std::size_t universe) {
  if (universe > kMaxComponents) {
    throw Error(ErrorCode::kTooManyComponents, std::to_string(universe) + " components");
  }
  return universe == 0 ? 0 : (bit(universe) - 1);
}

Subcurve::Subcurve(std::size_t universe, Mask members) : universe_(universe), mask_(members) {
  if (members == 0) throw Error(ErrorCode::kEmptySubcurve, "a subcurve needs at least one component");
  if ((members & ~universe_mask(universe)) != 0) {
    throw Error(ErrorCode::kUnknownComponent, "subcurve member outside the curve");
  }
}

Subcurve Subcurve::of(std::size_t universe, std::initializer_list<ComponentIndex> members) {
  return of(universe, std::span<const ComponentIndex>(members.begin(), members.size()));
}

Subcurve Subcurve::of(std::size_t universe, std::span<const ComponentIndex> members) {
  Mask mask = 0;
  for (const ComponentIndex i : members) {
    if (i >= universe) throw Error(ErrorCode::kUnknownComponent, "index " + std::to_string(i));
    mask |= bit(i);
  }
  return Subcurve(universe, mask);
}

Subcurve Subcurve::single(std::size_t universe, ComponentIndex i) { return of(universe, {i}); }

Subcurve Subcurve::whole(std::size_t universe) { return Subcurve(universe, universe_mask(universe)); }

std::size_t Subcurve::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

std::vector<ComponentIndex> Subcurve::members() const {
  std::vector<ComponentIndex> out;
  for (Mask m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  return out;
}

std::optional<Subcurve> Subcurve::complement() const {
  const Mask rest = universe_mask(universe_) & ~mask_;
  if (rest == 0) return std::nullopt;
  return Subcurve(universe_, rest);
}

bool canonical_less(Subcurve::Mask a, Subcurve::Mask b) {
  const int ca = std::popcount(a);
  const int cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  if (a == b) return false;
  // Same cardinality: the sorted member lists first differ at the lowest
  // index in exactly one of the sets; that set is lexicographically smaller.
  const Subcurve::Mask first_difference = (a ^ b) & ~((a ^ b) - 1);
  return (a & first_difference) != 0;
}

std::vector<Subcurve::Mask> proper_subcurve_masks(std::size_t universe) {
  const Subcurve::Mask full = Subcurve::universe_mask(universe);
  std::vector<Subcurve::Mask> masks;
  if (universe < 2) return masks;
  masks.reserve(static_cast<std::size_t>(full - 1));
  for (Subcurve::Mask m = 1; m < full; ++m) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), canonical_less);
  return masks;
}

std::string format_subcurve(const NodalCurve& curve, const Subcurve& y) {
  std::string out = "{";
  bool first = true;
  for (const ComponentIndex i : y.members()) {
    if (!first) out += ",";
    out += curve.component(i).name;
    first = false;
  }
  return out + "}";
}

long long delta(const NodalCurve& curve, const Subcurve& y, const Subcurve& z) {
  if (y.universe() != curve.component_count() || z.universe() != curve.component_count()) {
    throw Error(ErrorCode::kSizeMismatch, "subcurve does not belong to this curve");
  }
  if ((y.mask() & z.mask()) != 0) {
    throw Error(ErrorCode::kOverlappingSubcurves,
                format_subcurve(curve, y) + " and " + format_subcurve(curve, z) + " share a component");
  }
  long long count = 0;
  for (const auto& node : curve.nodes()) {
    if ((y.contains(node.first) && z.contains(node.second)) || (z.contains(node.first) && y.contains(node.second))) {
      ++count;
    }
  }
  return count;
}

long long internal_nodes(const NodalCurve& curve, Subcurve::Mask y) {
  long long count = 0;
  for (NodeIndex n = 0; n < curve.node_count(); ++n) {
    if ((curve.node_mask(n) & ~y) == 0) ++count;
  }
  return count;
}

long long internal_nodes(const NodalCurve& curve, const Subcurve& y) {
  if (y.universe() != curve.component_count()) {
    throw Error(ErrorCode::kSizeMismatch, "subcurve does not belong to this curve");
  }
  return internal_nodes(curve, y.mask());
}

Decomposition decompose_against(const Subcurve& y, const Subcurve& z) {
  if (y.universe() != z.universe()) throw Error(ErrorCode::kSizeMismatch, "subcurves of different curves");
  const auto make = [&](Subcurve::Mask m) -> std::optional<Subcurve> {
    if (m == 0) return std::nullopt;
    return Subcurve(y.universe(), m);
  };
  return Decomposition{make(y.mask() & ~z.mask()), make(z.mask() & ~y.mask()), make(y.mask() & z.mask())};
}

// --- Modifications --------------------------------------------------------

ModifiedCurve::ModifiedCurve(NodalCurve base, NodalCurve curve) : base_(std::move(base)), curve_(std::move(curve)) {}

const std::vector<ComponentIndex>& ModifiedCurve::chain(NodeIndex base_node) const {
  const auto it = chains_.find(base_node);
  if (it == chains_.end()) throw Error(ErrorCode::kUnknownNode, "node " + std::to_string(base_node) + " is not replaced");
  return it->second;
}

std::optional<ComponentIndex> ModifiedCurve::collapse(ComponentIndex derived) const {
  const auto& o = origin(derived);
  if (o.exceptional) return std::nullopt;
  return o.base_component;
}

std::optional<NodeIndex> ModifiedCurve::collapsed_node(ComponentIndex derived) const {
  const auto& o = origin(derived);
  if (!o.exceptional) return std::nullopt;
  return o.base_node;
}

ModifiedCurve modify(const NodalCurve& curve, const std::map<NodeIndex, std::size_t>& eta) {
  for (const auto& [node, length] : eta) {
    if (node >= curve.node_count()) throw Error(ErrorCode::kUnknownNode, "index " + std::to_string(node));
    if (length == 0) {
      throw Error(ErrorCode::kInvalidChainLength, "node '" + curve.node(node).name + "' needs a chain length >= 1");
    }
  }

  CurveDescription description;
  description.components = curve.components();
  std::vector<ComponentOrigin> origins;
  for (ComponentIndex i = 0; i < curve.component_count(); ++i) origins.push_back(ComponentOrigin{false, i, 0, 0});

  std::map<NodeIndex, std::vector<ComponentIndex>> chains;
  const auto chain_name = [&](NodeIndex n, std::size_t position, std::size_t length) {
    const std::string& node = curve.node(n).name;
    return length == 1 ? "E[" + node + "]" : "E[" + node + "." + std::to_string(position) + "]";
  };
  for (const auto& [node, length] : eta) {
    for (std::size_t position = 1; position <= length; ++position) {
      chains[node].push_back(description.components.size());
      description.components.push_back(Component{chain_name(node, position, length), 0});
      origins.push_back(ComponentOrigin{true, 0, node, position});
    }
  }

  for (NodeIndex n = 0; n < curve.node_count(); ++n) {
    const Node& node = curve.node(n);
    const auto it = eta.find(n);
    if (it == eta.end()) {
      description.nodes.push_back({node.name, curve.component(node.first).name, curve.component(node.second).name});
      continue;
    }
    // first end - E_1 - ... - E_eta - second end
    std::vector<std::string> path;
    path.push_back(curve.component(node.first).name);
    for (const ComponentIndex c : chains[n]) path.push_back(description.components[c].name);
    path.push_back(curve.component(node.second).name);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      description.nodes.push_back({node.name + "." + std::to_string(k), path[k], path[k + 1]});
    }
  }

  ModifiedCurve result(curve, build_curve(description));
  result.chain_lengths_ = eta;
  result.chains_ = std::move(chains);
  result.origins_ = std::move(origins);
  return result;
}

ModifiedCurve c_r(const NodalCurve& curve, NodeIndex r) {
  if (r >= curve.node_count()) throw Error(ErrorCode::kUnknownNode, "index " + std::to_string(r));
  return modify(curve, {{r, 1}});
}

ModifiedCurve c_one(const NodalCurve& curve) {
  std::map<NodeIndex, std::size_t> eta;
  for (const NodeIndex n : curve.reducible_nodes()) eta[n] = 1;
  return modify(curve, eta);
}

}  // namespace jacobel
