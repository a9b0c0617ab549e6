#include "jacobel/twister.hpp"

#include <algorithm>
#include <bit>

#include "jacobel/error.hpp"

namespace jacobel {

namespace {

struct Tracker {
  std::optional<Subcurve::Mask> best;
  int best_size = 0;
  std::size_t ties = 0;

  void offer(Subcurve::Mask m) {
    const int size = std::popcount(m);
    if (!best || size < best_size) {
      best = m;
      best_size = size;
      ties = 1;
    } else if (size == best_size) {
      ++ties;
      if (canonical_less(m, *best)) best = m;
    }
  }
};

void require_degree(const NodalCurve& curve, const Polarization& polarization, const SheafClass& d,
                    long long expected, const char* what) {
  if (d.size() != curve.component_count()) {
    throw Error(ErrorCode::kSizeMismatch, std::string(what) + " has " + std::to_string(d.size()) + " entries");
  }
  if (polarization.size() != curve.component_count()) {
    throw Error(ErrorCode::kSizeMismatch, "polarization has " + std::to_string(polarization.size()) + " entries");
  }
  if (d.total() != expected) {
    throw Error(ErrorCode::kDegreeMismatch, std::string(what) + " has degree " + std::to_string(d.total()) +
                                                ", expected " + std::to_string(expected));
  }
}

QuasistableTwist make_twist(const NodalCurve& curve, const SheafClass& d, std::vector<long long> a) {
  QuasistableTwist result;
  result.coefficients = normalize_twister(std::move(a));
  result.twist = twister_multidegree(curve, result.coefficients);
  result.twisted = d + result.twist;
  return result;
}

}  // namespace

SheafClass twister_multidegree(const NodalCurve& curve, std::span<const long long> a) {
  if (a.size() != curve.component_count()) {
    throw Error(ErrorCode::kSizeMismatch, "twister has " + std::to_string(a.size()) + " coefficients");
  }
  SheafClass d = SheafClass::zero(a.size());
  for (const Node& node : curve.nodes()) {
    if (node.is_loop()) continue;
    d[node.first] += a[node.second] - a[node.first];
    d[node.second] += a[node.first] - a[node.second];
  }
  return d;
}

std::vector<long long> indicator(std::size_t components, Subcurve::Mask y, long long value) {
  std::vector<long long> a(components, 0);
  for (std::size_t i = 0; i < components; ++i) {
    if (((y >> i) & 1U) != 0) a[i] = value;
  }
  return a;
}

std::vector<long long> normalize_twister(std::vector<long long> a) {
  if (a.empty()) return a;
  const long long low = *std::min_element(a.begin(), a.end());
  for (long long& x : a) x -= low;
  return a;
}

std::string_view to_string(TwistSource source) {
  switch (source) {
    case TwistSource::kNone: return "none";
    case TwistSource::kNegative: return "A";
    case TwistSource::kZeroWithP: return "B";
    case TwistSource::kDiagonal: return "diagonal";
  }
  return "unknown";
}

TwistSelection select_twist_subcurve(const BetaContext& context, const SheafClass& d, ComponentIndex p) {
  const Subcurve::Mask p_bit = Subcurve::Mask{1} << p;
  const Subcurve::Mask full = context.full_mask();
  std::optional<long long> min_s;
  Tracker negative;
  Tracker negative_with_p;
  Tracker zero_with_p;
  for (Subcurve::Mask m = 1; m < full; ++m) {
    const long long s = context.scaled_beta(d, m);
    if (!min_s || s < *min_s) {
      min_s = s;
      negative = Tracker{};
      negative_with_p = Tracker{};
    }
    if (s == *min_s && s < 0) {
      negative.offer(m);
      if ((m & p_bit) != 0) negative_with_p.offer(m);
    }
    if (s == 0 && (m & p_bit) != 0) zero_with_p.offer(m);
  }

  TwistSelection selection;
  selection.min_scaled_beta = min_s.value_or(0);
  if (negative.best) {
    const Tracker& chosen = negative_with_p.best ? negative_with_p : negative;
    selection.subcurve = chosen.best;
    selection.source = TwistSource::kNegative;
    selection.ties = chosen.ties;
    selection.fewest_components = negative.best;
  } else if (zero_with_p.best) {
    selection.subcurve = zero_with_p.best;
    selection.source = TwistSource::kZeroWithP;
    selection.ties = zero_with_p.ties;
    selection.fewest_components = zero_with_p.best;
  }
  return selection;
}

QuasistableTwist find_quasistable_twister(const NodalCurve& curve, const Polarization& polarization,
                                          const SheafClass& d, ComponentIndex p,
                                          const TwisterSearchOptions& options) {
  require_degree(curve, polarization, d, quasistable_degree(curve, polarization), "sheaf class");
  if (p >= curve.component_count()) throw Error(ErrorCode::kUnknownComponent, "index " + std::to_string(p));
  if (options.force_exhaustive) return exhaustive_quasistable_twister(curve, polarization, d, p, options);

  const BetaContext context(curve, polarization);
  const std::size_t n = curve.component_count();
  std::vector<long long> a(n, 0);
  SheafClass current = d;
  for (std::size_t iteration = 0; iteration <= options.iteration_cap; ++iteration) {
    const TwistSelection selection = select_twist_subcurve(context, current, p);
    if (!selection.subcurve) {
      QuasistableTwist result = make_twist(curve, d, std::move(a));
      result.iterations = iteration;
      return result;
    }
    const std::vector<long long> step = indicator(n, *selection.subcurve, -1);
    current += twister_multidegree(curve, step);
    for (std::size_t k = 0; k < n; ++k) a[k] += step[k];
  }
  QuasistableTwist result = exhaustive_quasistable_twister(curve, polarization, d, p, options);
  result.iterations = options.iteration_cap;
  return result;
}

QuasistableTwist exhaustive_quasistable_twister(const NodalCurve& curve, const Polarization& polarization,
                                                const SheafClass& d, ComponentIndex p,
                                                const TwisterSearchOptions& options) {
  require_degree(curve, polarization, d, quasistable_degree(curve, polarization), "sheaf class");
  const BetaContext context(curve, polarization);
  const std::size_t n = curve.component_count();

  for (long long bound = 0;; ++bound) {
    long double volume = 1;
    for (std::size_t k = 0; k < n; ++k) volume *= static_cast<long double>(bound + 1);
    if (volume > static_cast<long double>(options.box_cap)) {
      throw Error(ErrorCode::kNoQuasistableTwister,
                  "no P-quasistable twist with coefficients in [0, " + std::to_string(bound - 1) + "]");
    }
    // Only the shell max(a) == bound is new; min(a) == 0 is the normalization.
    std::vector<std::vector<long long>> hits;
    std::vector<long long> a(n, 0);
    while (true) {
      const auto [low, high] = std::minmax_element(a.begin(), a.end());
      if (*low == 0 && *high == bound) {
        const SheafClass twisted = d + twister_multidegree(curve, a);
        if (is_p_quasistable(classify(context, twisted, p).verdict)) hits.push_back(a);
      }
      std::size_t k = 0;
      for (; k < n; ++k) {
        if (a[k] < bound) {
          ++a[k];
          break;
        }
        a[k] = 0;
      }
      if (k == n) break;
    }
    if (hits.size() > 1) {
      throw Error(ErrorCode::kInvariantViolation,
                  std::to_string(hits.size()) + " distinct P-quasistable twists found for one class");
    }
    if (hits.size() == 1) {
      QuasistableTwist result = make_twist(curve, d, hits.front());
      result.used_fallback = true;
      return result;
    }
  }
}

TwisterDifferenceResult twister_difference(const NodalCurve& curve, const Polarization& polarization,
                                           const SheafClass& l, ComponentIndex p, ComponentIndex i, ComponentIndex j,
                                           const TwisterSearchOptions& options) {
  require_degree(curve, polarization, l, quasistable_degree(curve, polarization) + 1, "line bundle");
  const std::size_t n = curve.component_count();
  for (const ComponentIndex c : {p, i, j}) {
    if (c >= n) throw Error(ErrorCode::kUnknownComponent, "index " + std::to_string(c));
  }
  if (i != j && curve.delta(i, j) == 0) {
    throw Error(ErrorCode::kNotAdjacent,
                "'" + curve.component(i).name + "' and '" + curve.component(j).name + "' share no node");
  }

  TwisterDifferenceResult result;
  result.i = i;
  result.j = j;
  result.t_i = find_quasistable_twister(curve, polarization, subtract_point(l, i), p, options);
  result.t_j = find_quasistable_twister(curve, polarization, subtract_point(l, j), p, options);
  result.m = subtract_point(l, j) + result.t_i.twist;
  result.corrected = result.m;

  const BetaContext context(curve, polarization);
  if (i == j) {
    result.source = TwistSource::kDiagonal;
  } else {
    const TwistSelection selection = select_twist_subcurve(context, result.m, p);
    result.source = selection.source;
    result.ties = selection.ties;
    result.fewest_components_agrees = selection.fewest_components == selection.subcurve;
    result.min_beta = Rational(selection.min_scaled_beta, context.rank());
    if (selection.subcurve) {
      result.z = Subcurve(n, *selection.subcurve);
      result.corrected += twister_multidegree(curve, indicator(n, *selection.subcurve, -1));
    }
  }

  const auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kInvariantViolation, "Z(" + curve.component(i).name + "," + curve.component(j).name +
                                                    "): " + what);
  };
  const StabilityReport report = classify(context, result.corrected, p);
  if (!is_p_quasistable(report.verdict)) {
    std::string what = "corrected class is " + std::string(to_string(report.verdict));
    if (report.witness) what += " (witness " + format_subcurve(curve, report.witness->subcurve) + ")";
    fail(what);
  }
  SheafClass expected = result.t_i.twist;
  if (result.z) {
    expected += twister_multidegree(curve, indicator(n, result.z->mask(), -1));
    if (!result.z->contains(j) || result.z->contains(i)) fail("subcurve must contain C_j and avoid C_i");
  }
  if (expected != result.t_j.twist) fail("T_j differs from T_i(-Z)");
  return result;
}

}  // namespace jacobel
