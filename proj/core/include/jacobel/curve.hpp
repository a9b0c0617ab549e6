#pragma once

// Nodal curves as genus-labeled dual graphs, subcurve algebra, and
// semistable modifications (nodes replaced by chains of rational curves).

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jacobel {

using ComponentIndex = std::size_t;
using NodeIndex = std::size_t;

/// Subcurves are stored as bitmasks, which bounds the component count.
inline constexpr std::size_t kMaxComponents = 63;

struct Component {
  std::string name;
  long long genus = 0;
};

struct Node {
  std::string name;
  ComponentIndex first = 0;
  ComponentIndex second = 0;

  bool is_loop() const { return first == second; }
};

/// Unvalidated input for build_curve(); node ends are component names.
struct CurveDescription {
  struct NodeEnds {
    std::string name;
    std::string first;
    std::string second;
  };
  std::vector<Component> components;
  std::vector<NodeEnds> nodes;
};

class NodalCurve {
 public:
  using Mask = std::uint64_t;

  std::size_t component_count() const { return components_.size(); }
  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<Component>& components() const { return components_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Component& component(ComponentIndex i) const { return components_.at(i); }
  const Node& node(NodeIndex n) const { return nodes_.at(n); }

  /// Arithmetic genus: sum of component genera + #nodes - #components + 1.
  long long genus() const { return genus_; }

  ComponentIndex component_index(std::string_view name) const;
  NodeIndex node_index(std::string_view name) const;

  bool is_reducible(NodeIndex n) const { return !node(n).is_loop(); }
  std::vector<NodeIndex> reducible_nodes() const;
  std::vector<NodeIndex> irreducible_nodes() const;

  /// delta_{i,j}: number of nodes joining two distinct components.
  long long delta(ComponentIndex i, ComponentIndex j) const;

  /// Bitmask of the (one or two) components a node lies on.
  Mask node_mask(NodeIndex n) const { return node_masks_.at(n); }
  /// Components sharing a reducible node with `i`.
  Mask neighbours(ComponentIndex i) const { return adjacency_.at(i); }
  Mask full_mask() const { return full_mask_; }

  /// Whether the members of `mask` span a connected subgraph.
  bool is_connected(Mask mask) const;

  friend NodalCurve build_curve(const CurveDescription& description);

 private:
  NodalCurve() = default;

  std::vector<Component> components_;
  std::vector<Node> nodes_;
  std::vector<Mask> node_masks_;
  std::vector<Mask> adjacency_;
  Mask full_mask_ = 0;
  long long genus_ = 0;
};

/// Validates the description (unique names, resolvable ends, connected
/// dual graph) and caches the arithmetic genus.
NodalCurve build_curve(const CurveDescription& description);

/// A nonempty set of components. Disconnected unions are allowed.
class Subcurve {
 public:
  using Mask = std::uint64_t;

  Subcurve(std::size_t universe, Mask members);

  static Subcurve of(std::size_t universe, std::initializer_list<ComponentIndex> members);
  static Subcurve of(std::size_t universe, std::span<const ComponentIndex> members);
  static Subcurve single(std::size_t universe, ComponentIndex i);
  static Subcurve whole(std::size_t universe);

  std::size_t universe() const { return universe_; }
  Mask mask() const { return mask_; }
  std::size_t size() const;
  bool contains(ComponentIndex i) const { return i < universe_ && ((mask_ >> i) & 1U) != 0; }
  bool is_proper() const { return mask_ != universe_mask(universe_); }
  std::vector<ComponentIndex> members() const;
  std::optional<Subcurve> complement() const;

  bool operator==(const Subcurve&) const = default;

  static Mask universe_mask(std::size_t universe);

 private:
  std::size_t universe_;
  Mask mask_;
};

/// Fixed enumeration order for subcurves: increasing cardinality, then
/// lexicographic on the sorted member lists.
bool canonical_less(Subcurve::Mask a, Subcurve::Mask b);

/// Every proper nonempty subcurve of a p-component curve, canonical order.
std::vector<Subcurve::Mask> proper_subcurve_masks(std::size_t universe);

std::string format_subcurve(const NodalCurve& curve, const Subcurve& y);

/// Number of nodes with one end in Y and the other in Z. Y and Z must not
/// share a component.
long long delta(const NodalCurve& curve, const Subcurve& y, const Subcurve& z);

/// Nodes with both ends in Y (loops included).
long long internal_nodes(const NodalCurve& curve, const Subcurve& y);
long long internal_nodes(const NodalCurve& curve, Subcurve::Mask y);

struct Decomposition {
  std::optional<Subcurve> y_minus_z;
  std::optional<Subcurve> z_minus_y;
  std::optional<Subcurve> meet;
};

/// (closure(Y - Z), closure(Z - Y), Y ^ Z); empty parts are std::nullopt.
Decomposition decompose_against(const Subcurve& y, const Subcurve& z);

/// Where a component of a modified curve comes from.
struct ComponentOrigin {
  bool exceptional = false;
  ComponentIndex base_component = 0;  // valid when !exceptional
  NodeIndex base_node = 0;            // valid when exceptional
  std::size_t position = 0;           // 1-based position along the chain
};

/// C_eta: the base curve with each node in N replaced by a chain of eta(N)
/// smooth rational components. Base components keep their indices; chain
/// components follow in node declaration order.
class ModifiedCurve {
 public:
  const NodalCurve& base() const { return base_; }
  const NodalCurve& curve() const { return curve_; }

  const std::map<NodeIndex, std::size_t>& chain_lengths() const { return chain_lengths_; }
  bool is_replaced(NodeIndex base_node) const { return chain_lengths_.count(base_node) != 0; }

  const ComponentOrigin& origin(ComponentIndex derived) const { return origins_.at(derived); }
  bool is_exceptional(ComponentIndex derived) const { return origin(derived).exceptional; }

  /// The strict transform of a base component (same index).
  ComponentIndex lift(ComponentIndex base_component) const { return base_component; }

  /// Exceptional components over a replaced base node, in chain order.
  const std::vector<ComponentIndex>& chain(NodeIndex base_node) const;

  /// The collapse map on components: base component for a strict transform,
  /// std::nullopt for an exceptional component (see collapsed_node()).
  std::optional<ComponentIndex> collapse(ComponentIndex derived) const;
  std::optional<NodeIndex> collapsed_node(ComponentIndex derived) const;

  friend ModifiedCurve modify(const NodalCurve& curve, const std::map<NodeIndex, std::size_t>& eta);

 private:
  ModifiedCurve(NodalCurve base, NodalCurve curve);

  NodalCurve base_;
  NodalCurve curve_;
  std::map<NodeIndex, std::size_t> chain_lengths_;
  std::map<NodeIndex, std::vector<ComponentIndex>> chains_;
  std::vector<ComponentOrigin> origins_;
};

ModifiedCurve modify(const NodalCurve& curve, const std::map<NodeIndex, std::size_t>& eta);

/// C_R: the single node R replaced by one rational component.
ModifiedCurve c_r(const NodalCurve& curve, NodeIndex r);

/// C(1): every reducible node replaced by one rational component.
ModifiedCurve c_one(const NodalCurve& curve);

}  // namespace jacobel
