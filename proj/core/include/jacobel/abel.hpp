#pragma once

// Fiberwise resolution of the degree-1 Abel map: for every point stratum of
// C, the limit multidegree on the fiber curve, its G-correction,
// admissibility, pushforward descriptor and quasistability certificate.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jacobel/curve.hpp"
#include "jacobel/stability.hpp"
#include "jacobel/twister.hpp"

namespace jacobel {

/// For reducible nodes R on C_i, C_j and S on C_k, C_l (ends in declared
/// order), the exceptional curve over (R,S) lies in C_i x C_l and C_j x C_k
/// (cross) or in C_i x C_k and C_j x C_l (parallel).
enum class Matching { kCross, kParallel };
std::string_view to_string(Matching matching);

class DesingularizationChoice {
 public:
  using Pair = std::pair<NodeIndex, NodeIndex>;

  Matching matching(NodeIndex r, NodeIndex s) const;
  void set(NodeIndex r, NodeIndex s, Matching matching);
  const std::map<Pair, Matching>& explicit_choices() const { return choices_; }

  /// Every assignment over ordered pairs of distinct reducible nodes.
  /// Throws kSearchTooLarge past `cap` assignments.
  static std::vector<DesingularizationChoice> all(const NodalCurve& curve, std::size_t cap = 4096);

 private:
  std::map<Pair, Matching> choices_;  // absent pairs are cross
};

/// Coefficients of the restriction of sum w[i][k] C_i x C_k to the fiber over
/// a reducible node R: a_k on the strict transforms, b_S on E_S for every
/// reducible node S (zero for irreducible nodes).
struct ProductRestriction {
  std::vector<long long> on_components;
  std::vector<long long> on_nodes;
};

ProductRestriction restrict_product_divisor(const NodalCurve& curve, const DesingularizationChoice& choice,
                                            NodeIndex r, const std::vector<std::vector<long long>>& weights);

/// Twister coefficients on the fiber curve C(1) for a restriction.
std::vector<long long> fiber_coefficients(const ModifiedCurve& fiber, const ProductRestriction& restriction);

struct Stratum {
  enum class Kind { kSmooth, kReducibleNode, kIrreducibleNode };
  Kind kind = Kind::kSmooth;
  std::size_t index = 0;  // component for kSmooth, node otherwise

  bool operator==(const Stratum&) const = default;
};

std::string_view to_string(Stratum::Kind kind);
std::string stratum_name(const NodalCurve& curve, const Stratum& stratum);

/// Components in declaration order, then nodes in declaration order.
std::vector<Stratum> strata(const NodalCurve& curve);

/// C for a smooth stratum, C_R for an irreducible node R, C(1) for a reducible node.
ModifiedCurve fiber_curve(const NodalCurve& curve, const Stratum& stratum);

/// Degrees of the diagonal ideal on the fiber; total -1.
SheafClass diagonal_ideal_degrees(const ModifiedCurve& fiber, const Stratum& stratum);

/// Quasistable twisters T_k of m_{Q_k} (x) L, one per component.
std::vector<QuasistableTwist> quasistable_twisters(const NodalCurve& curve, const Polarization& polarization,
                                                   const SheafClass& l, ComponentIndex p,
                                                   const TwisterSearchOptions& options = {});

/// The limit class on the fiber: diagonal ideal + pullback of L + restricted T~.
SheafClass limit_multidegree(const NodalCurve& curve, const Polarization& polarization, const SheafClass& l,
                             ComponentIndex p, const DesingularizationChoice& choice, const Stratum& stratum);
SheafClass limit_multidegree(const ModifiedCurve& fiber, const SheafClass& l,
                             const std::vector<QuasistableTwist>& twisters, const DesingularizationChoice& choice,
                             const Stratum& stratum);

/// Degree of each replaced node's chain, keyed by base node.
std::map<NodeIndex, long long> chain_degrees(const ModifiedCurve& fiber, const SheafClass& d);

enum class Admissibility { kInvertible, kNegativelyAdmissible, kPositivelyAdmissible, kAdmissible, kNotAdmissible };
std::string_view to_string(Admissibility admissibility);

Admissibility classify_admissibility(const ModifiedCurve& fiber, const SheafClass& d);

/// Twists by every exceptional component of beta 2 (chain degree +1).
/// Throws kNotAdmissible unless chain degrees lie in {-1, 0, 1}.
SheafClass g_correction(const ModifiedCurve& fiber, const Polarization& fiber_polarization, const SheafClass& mtilde);

struct PushforwardDescriptor {
  SheafClass on_base;
  std::vector<NodeIndex> non_invertible;   // chains of degree -1
  std::vector<NodeIndex> positive_chains;  // chains of degree +1
  long long total = 0;
  bool canonical = true;  // false when a +1 chain is present

  bool operator==(const PushforwardDescriptor&) const = default;
};

PushforwardDescriptor pushforward_descriptor(const ModifiedCurve& fiber, const SheafClass& d);

struct ChainEntry {
  NodeIndex node = 0;
  ComponentIndex component = 0;
  long long mtilde_degree = 0;
  Rational mtilde_beta;
  long long g_degree = 0;
};

struct FiberRecord {
  Stratum stratum;
  std::string name;
  ModifiedCurve fiber;
  Polarization fiber_polarization;
  ComponentIndex marked_point;
  SheafClass mtilde;
  SheafClass g_class;
  Admissibility mtilde_admissibility;
  Admissibility admissibility;  // of g_class
  std::vector<ChainEntry> chains;
  PushforwardDescriptor pushforward;
  StabilityReport stability;  // g_class on the fiber
};

FiberRecord fiber_record(const NodalCurve& curve, const Polarization& polarization, const SheafClass& l,
                         ComponentIndex p, const std::vector<QuasistableTwist>& twisters,
                         const DesingularizationChoice& choice, const Stratum& stratum);

struct AbelOptions {
  TwisterSearchOptions twister;
  bool parallel = false;
};

struct AbelResolution {
  std::vector<QuasistableTwist> twisters;
  std::vector<FiberRecord> records;
};

/// One record per stratum. Throws kInvariantViolation when a record is not
/// admissible, not P-quasistable, loses degree, or (smooth strata) differs
/// from m_{Q_k} (x) L (x) T_k.
AbelResolution resolve_abel_map(const NodalCurve& curve, const Polarization& polarization, const SheafClass& l,
                                ComponentIndex p, const DesingularizationChoice& choice,
                                const AbelOptions& options = {});

}  // namespace jacobel
