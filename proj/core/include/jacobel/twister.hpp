#pragma once

// Twisters O_C(sum a_i C_i) through the dual-graph Laplacian, unique
// quasistable twisting, and the twister-difference subcurve Z_{i,j}.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jacobel/curve.hpp"
#include "jacobel/stability.hpp"

namespace jacobel {

/// Multidegree of O_C(sum a_i C_i): entry j is sum over reducible nodes at
/// C_j of (a_other - a_j). Loops contribute nothing.
SheafClass twister_multidegree(const NodalCurve& curve, std::span<const long long> a);

/// Indicator coefficients of a subcurve, optionally negated.
std::vector<long long> indicator(std::size_t components, Subcurve::Mask y, long long value = 1);

/// Shifts a so that min a_i = 0.
std::vector<long long> normalize_twister(std::vector<long long> a);

/// Where a twisting subcurve was taken from.
enum class TwistSource { kNone, kNegative, kZeroWithP, kDiagonal };
std::string_view to_string(TwistSource source);

struct TwistSelection {
  std::optional<Subcurve::Mask> subcurve;
  TwistSource source = TwistSource::kNone;
  /// Candidates of minimal size in the chosen set (1 = no tie).
  std::size_t ties = 0;
  /// The fewest-components member of the chosen set, ignoring P. Differs
  /// from `subcurve` only when beta takes fractional values.
  std::optional<Subcurve::Mask> fewest_components;
  /// min r*beta over proper subcurves (0 for a single-component curve).
  long long min_scaled_beta = 0;
};

/// A = subcurves attaining min beta when it is negative; otherwise B =
/// subcurves with beta = 0 containing P. Picks the member with the fewest
/// components, then the canonical first, among members containing P when
/// there are any. With rk(E) > 1 a minimizer avoiding P can leave a
/// beta = 0 subcurve through P after twisting, so those come second.
TwistSelection select_twist_subcurve(const BetaContext& context, const SheafClass& d, ComponentIndex p);

struct TwisterSearchOptions {
  std::size_t iteration_cap = 10'000;
  std::size_t box_cap = 2'000'000;
  bool force_exhaustive = false;
};

struct QuasistableTwist {
  std::vector<long long> coefficients;  // normalized, min = 0
  SheafClass twist;                     // twister_multidegree(coefficients)
  SheafClass twisted;                   // d + twist
  bool used_fallback = false;
  std::size_t iterations = 0;
};

/// The unique twister making d P-quasistable.
QuasistableTwist find_quasistable_twister(const NodalCurve& curve, const Polarization& polarization,
                                          const SheafClass& d, ComponentIndex p,
                                          const TwisterSearchOptions& options = {});

/// Box search over normalized coefficients in [0, B]^p for growing B; throws
/// kInvariantViolation if two coefficient vectors both work.
QuasistableTwist exhaustive_quasistable_twister(const NodalCurve& curve, const Polarization& polarization,
                                                const SheafClass& d, ComponentIndex p,
                                                const TwisterSearchOptions& options = {});

struct TwisterDifferenceResult {
  ComponentIndex i = 0;
  ComponentIndex j = 0;
  std::optional<Subcurve> z;
  TwistSource source = TwistSource::kNone;
  std::size_t ties = 0;
  /// Whether the fewest-components member alone would have been chosen.
  bool fewest_components_agrees = true;
  Rational min_beta;
  QuasistableTwist t_i;
  QuasistableTwist t_j;
  SheafClass m;          // m_{Q_j} (x) L (x) T_i
  SheafClass corrected;  // m (x) O_C(-Z)
};

/// Z_{i,j} for deg L = g - slope. Verifies that the corrected class is
/// P-quasistable and that T_j = T_i (x) O_C(-Z) as multidegrees.
TwisterDifferenceResult twister_difference(const NodalCurve& curve, const Polarization& polarization,
                                           const SheafClass& l, ComponentIndex p, ComponentIndex i, ComponentIndex j,
                                           const TwisterSearchOptions& options = {});

}  // namespace jacobel
