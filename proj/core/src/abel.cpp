#include "jacobel/abel.hpp"

#include <future>

#include "jacobel/error.hpp"

namespace jacobel {

namespace {

bool in_unit_range(long long x) { return x >= -1 && x <= 1; }

std::vector<long long> lifted_coefficients(const ModifiedCurve& fiber, std::span<const long long> base_coefficients,
                                           ComponentIndex chain_owner) {
  std::vector<long long> coefficients(fiber.curve().component_count(), 0);
  for (ComponentIndex c = 0; c < coefficients.size(); ++c) {
    const auto base = fiber.collapse(c);
    coefficients[c] = base_coefficients[base ? *base : chain_owner];
  }
  return coefficients;
}

}  // namespace

std::string_view to_string(Matching matching) { return matching == Matching::kCross ? "cross" : "parallel"; }

Matching DesingularizationChoice::matching(NodeIndex r, NodeIndex s) const {
  const auto it = choices_.find({r, s});
  return it == choices_.end() ? Matching::kCross : it->second;
}

void DesingularizationChoice::set(NodeIndex r, NodeIndex s, Matching matching) {
  if (r == s) throw Error(ErrorCode::kInvariantViolation, "the diagonal pair (R,R) has no matching choice");
  choices_[{r, s}] = matching;
}

std::vector<DesingularizationChoice> DesingularizationChoice::all(const NodalCurve& curve, std::size_t cap) {
  const std::vector<NodeIndex> reducible = curve.reducible_nodes();
  std::vector<Pair> pairs;
  for (const NodeIndex r : reducible) {
    for (const NodeIndex s : reducible) {
      if (r != s) pairs.emplace_back(r, s);
    }
  }
  if (pairs.size() >= 63 || (std::uint64_t{1} << pairs.size()) > cap) {
    throw Error(ErrorCode::kSearchTooLarge,
                std::to_string(pairs.size()) + " node pairs exceed the cap of " + std::to_string(cap) + " choices");
  }
  std::vector<DesingularizationChoice> choices;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs.size()); ++bits) {
    DesingularizationChoice choice;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      choice.set(pairs[k].first, pairs[k].second, ((bits >> k) & 1U) != 0 ? Matching::kParallel : Matching::kCross);
    }
    choices.push_back(std::move(choice));
  }
  return choices;
}

ProductRestriction restrict_product_divisor(const NodalCurve& curve, const DesingularizationChoice& choice,
                                            NodeIndex r, const std::vector<std::vector<long long>>& weights) {
  const std::size_t n = curve.component_count();
  if (r >= curve.node_count()) throw Error(ErrorCode::kUnknownNode, "index " + std::to_string(r));
  if (!curve.is_reducible(r)) {
    throw Error(ErrorCode::kNotReducibleNode, "'" + curve.node(r).name + "' is an irreducible node");
  }
  if (weights.size() != n) throw Error(ErrorCode::kSizeMismatch, "weights need one row per component");
  for (const auto& row : weights) {
    if (row.size() != n) throw Error(ErrorCode::kSizeMismatch, "weights need one column per component");
  }

  const ComponentIndex i = curve.node(r).first;
  const ComponentIndex j = curve.node(r).second;
  ProductRestriction result;
  result.on_components.resize(n);
  for (ComponentIndex k = 0; k < n; ++k) result.on_components[k] = weights[i][k] + weights[j][k];
  result.on_nodes.assign(curve.node_count(), 0);
  for (NodeIndex s = 0; s < curve.node_count(); ++s) {
    if (!curve.is_reducible(s)) continue;
    if (s == r) {
      result.on_nodes[s] = weights[i][j] + weights[j][i];
      continue;
    }
    const ComponentIndex k = curve.node(s).first;
    const ComponentIndex l = curve.node(s).second;
    result.on_nodes[s] = choice.matching(r, s) == Matching::kCross ? weights[i][l] + weights[j][k]
                                                                   : weights[i][k] + weights[j][l];
  }
  return result;
}

std::vector<long long> fiber_coefficients(const ModifiedCurve& fiber, const ProductRestriction& restriction) {
  std::vector<long long> coefficients(fiber.curve().component_count(), 0);
  for (ComponentIndex c = 0; c < coefficients.size(); ++c) {
    if (const auto base = fiber.collapse(c)) {
      coefficients[c] = restriction.on_components.at(*base);
    } else {
      coefficients[c] = restriction.on_nodes.at(*fiber.collapsed_node(c));
    }
  }
  return coefficients;
}

std::string_view to_string(Stratum::Kind kind) {
  switch (kind) {
    case Stratum::Kind::kSmooth: return "smooth";
    case Stratum::Kind::kReducibleNode: return "reducible-node";
    case Stratum::Kind::kIrreducibleNode: return "irreducible-node";
  }
  return "unknown";
}

std::string stratum_name(const NodalCurve& curve, const Stratum& stratum) {
  return stratum.kind == Stratum::Kind::kSmooth ? curve.component(stratum.index).name
                                                : curve.node(stratum.index).name;
}

std::vector<Stratum> strata(const NodalCurve& curve) {
  std::vector<Stratum> result;
  for (ComponentIndex k = 0; k < curve.component_count(); ++k) result.push_back({Stratum::Kind::kSmooth, k});
  for (NodeIndex n = 0; n < curve.node_count(); ++n) {
    result.push_back({curve.is_reducible(n) ? Stratum::Kind::kReducibleNode : Stratum::Kind::kIrreducibleNode, n});
  }
  return result;
}

ModifiedCurve fiber_curve(const NodalCurve& curve, const Stratum& stratum) {
  switch (stratum.kind) {
    case Stratum::Kind::kSmooth:
      if (stratum.index >= curve.component_count()) {
        throw Error(ErrorCode::kUnknownComponent, "index " + std::to_string(stratum.index));
      }
      return modify(curve, {});
    case Stratum::Kind::kReducibleNode:
      if (!curve.is_reducible(stratum.index)) throw Error(ErrorCode::kNotReducibleNode, curve.node(stratum.index).name);
      return c_one(curve);
    case Stratum::Kind::kIrreducibleNode:
      if (curve.is_reducible(stratum.index)) {
        throw Error(ErrorCode::kInvariantViolation, "'" + curve.node(stratum.index).name + "' is reducible");
      }
      return c_r(curve, stratum.index);
  }
  throw Error(ErrorCode::kInvariantViolation, "unknown stratum kind");
}

SheafClass diagonal_ideal_degrees(const ModifiedCurve& fiber, const Stratum& stratum) {
  SheafClass d = SheafClass::zero(fiber.curve().component_count());
  if (stratum.kind == Stratum::Kind::kSmooth) {
    d[stratum.index] = -1;
    return d;
  }
  const Node& node = fiber.base().node(stratum.index);
  d[node.first] -= 1;
  d[node.second] -= 1;
  d[fiber.chain(stratum.index).front()] += 1;
  return d;
}

std::vector<QuasistableTwist> quasistable_twisters(const NodalCurve& curve, const Polarization& polarization,
                                                   const SheafClass& l, ComponentIndex p,
                                                   const TwisterSearchOptions& options) {
  std::vector<QuasistableTwist> twisters;
  for (ComponentIndex k = 0; k < curve.component_count(); ++k) {
    twisters.push_back(find_quasistable_twister(curve, polarization, subtract_point(l, k), p, options));
  }
  return twisters;
}

SheafClass limit_multidegree(const NodalCurve& curve, const Polarization& polarization, const SheafClass& l,
                             ComponentIndex p, const DesingularizationChoice& choice, const Stratum& stratum) {
  const std::vector<QuasistableTwist> twisters = quasistable_twisters(curve, polarization, l, p);
  return limit_multidegree(fiber_curve(curve, stratum), l, twisters, choice, stratum);
}

SheafClass limit_multidegree(const ModifiedCurve& fiber, const SheafClass& l,
                             const std::vector<QuasistableTwist>& twisters, const DesingularizationChoice& choice,
                             const Stratum& stratum) {
  const NodalCurve& base = fiber.base();
  if (l.size() != base.component_count() || twisters.size() != base.component_count()) {
    throw Error(ErrorCode::kSizeMismatch, "line bundle and twisters need one entry per component");
  }
  SheafClass d = diagonal_ideal_degrees(fiber, stratum);
  for (ComponentIndex k = 0; k < base.component_count(); ++k) d[k] += l[k];

  std::vector<long long> coefficients;
  switch (stratum.kind) {
    case Stratum::Kind::kSmooth:
      coefficients = twisters[stratum.index].coefficients;
      break;
    case Stratum::Kind::kReducibleNode: {
      std::vector<std::vector<long long>> weights;
      for (const auto& twister : twisters) weights.push_back(twister.coefficients);
      coefficients = fiber_coefficients(fiber, restrict_product_divisor(base, choice, stratum.index, weights));
      break;
    }
    case Stratum::Kind::kIrreducibleNode: {
      const ComponentIndex i = base.node(stratum.index).first;
      coefficients = lifted_coefficients(fiber, twisters[i].coefficients, i);
      break;
    }
  }
  return d + twister_multidegree(fiber.curve(), coefficients);
}

std::map<NodeIndex, long long> chain_degrees(const ModifiedCurve& fiber, const SheafClass& d) {
  std::map<NodeIndex, long long> degrees;
  for (const auto& [node, length] : fiber.chain_lengths()) {
    long long sum = 0;
    for (const ComponentIndex c : fiber.chain(node)) sum += d[c];
    degrees[node] = sum;
  }
  return degrees;
}

std::string_view to_string(Admissibility admissibility) {
  switch (admissibility) {
    case Admissibility::kInvertible: return "invertible";
    case Admissibility::kNegativelyAdmissible: return "negatively-admissible";
    case Admissibility::kPositivelyAdmissible: return "positively-admissible";
    case Admissibility::kAdmissible: return "admissible";
    case Admissibility::kNotAdmissible: return "not-admissible";
  }
  return "unknown";
}

Admissibility classify_admissibility(const ModifiedCurve& fiber, const SheafClass& d) {
  bool negative = false;
  bool positive = false;
  for (const auto& [node, degree] : chain_degrees(fiber, d)) {
    if (!in_unit_range(degree)) return Admissibility::kNotAdmissible;
    negative = negative || degree < 0;
    positive = positive || degree > 0;
  }
  if (negative && positive) return Admissibility::kAdmissible;
  if (negative) return Admissibility::kNegativelyAdmissible;
  if (positive) return Admissibility::kPositivelyAdmissible;
  return Admissibility::kInvertible;
}

SheafClass g_correction(const ModifiedCurve& fiber, const Polarization& fiber_polarization, const SheafClass& mtilde) {
  if (classify_admissibility(fiber, mtilde) == Admissibility::kNotAdmissible) {
    throw Error(ErrorCode::kNotAdmissible, "a chain degree lies outside {-1, 0, 1}");
  }
  const BetaContext context(fiber.curve(), fiber_polarization);
  const std::size_t n = fiber.curve().component_count();
  std::vector<long long> coefficients(n, 0);
  for (ComponentIndex c = 0; c < n; ++c) {
    if (fiber.is_exceptional(c) && context.scaled_beta(mtilde, Subcurve::Mask{1} << c) == 2 * context.rank()) {
      coefficients[c] = 1;
    }
  }
  return mtilde + twister_multidegree(fiber.curve(), coefficients);
}

PushforwardDescriptor pushforward_descriptor(const ModifiedCurve& fiber, const SheafClass& d) {
  if (classify_admissibility(fiber, d) == Admissibility::kNotAdmissible) {
    throw Error(ErrorCode::kNotAdmissible, "a chain degree lies outside {-1, 0, 1}");
  }
  PushforwardDescriptor descriptor;
  const std::size_t base_count = fiber.base().component_count();
  std::vector<long long> on_base(base_count);
  for (ComponentIndex k = 0; k < base_count; ++k) on_base[k] = d[k];
  descriptor.on_base = SheafClass(std::move(on_base));
  for (const auto& [node, degree] : chain_degrees(fiber, d)) {
    if (degree < 0) descriptor.non_invertible.push_back(node);
    if (degree > 0) descriptor.positive_chains.push_back(node);
  }
  descriptor.total = d.total();
  descriptor.canonical = descriptor.positive_chains.empty();
  return descriptor;
}

FiberRecord fiber_record(const NodalCurve& curve, const Polarization& polarization, const SheafClass& l,
                         ComponentIndex p, const std::vector<QuasistableTwist>& twisters,
                         const DesingularizationChoice& choice, const Stratum& stratum) {
  ModifiedCurve fiber = fiber_curve(curve, stratum);
  Polarization fiber_polarization = polarization.pull_back(fiber);
  SheafClass mtilde = limit_multidegree(fiber, l, twisters, choice, stratum);
  SheafClass g_class = g_correction(fiber, fiber_polarization, mtilde);

  const BetaContext context(fiber.curve(), fiber_polarization);
  std::vector<ChainEntry> chains;
  for (ComponentIndex c = 0; c < fiber.curve().component_count(); ++c) {
    if (!fiber.is_exceptional(c)) continue;
    chains.push_back(ChainEntry{*fiber.collapsed_node(c), c, mtilde[c],
                                context.beta(mtilde, Subcurve::Mask{1} << c), g_class[c]});
  }

  const ComponentIndex marked = fiber.lift(p);
  StabilityReport stability = classify(context, g_class, marked);
  PushforwardDescriptor pushforward = pushforward_descriptor(fiber, g_class);
  const Admissibility mtilde_admissibility = classify_admissibility(fiber, mtilde);
  const Admissibility admissibility = classify_admissibility(fiber, g_class);
  return FiberRecord{stratum,
                     stratum_name(curve, stratum),
                     std::move(fiber),
                     std::move(fiber_polarization),
                     marked,
                     std::move(mtilde),
                     std::move(g_class),
                     mtilde_admissibility,
                     admissibility,
                     std::move(chains),
                     std::move(pushforward),
                     std::move(stability)};
}

namespace {

void verify_record(const NodalCurve& curve, const FiberRecord& record, const SheafClass& l,
                   const std::vector<QuasistableTwist>& twisters) {
  const auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kInvariantViolation, "stratum '" + record.name + "': " + what);
  };
  for (const ChainEntry& chain : record.chains) {
    if (chain.mtilde_beta < Rational(0) || chain.mtilde_beta > Rational(2)) {
      fail("beta of " + record.fiber.curve().component(chain.component).name + " is outside {0, 1, 2}");
    }
  }
  if (record.admissibility != Admissibility::kInvertible &&
      record.admissibility != Admissibility::kNegativelyAdmissible) {
    fail("G-corrected class is " + std::string(to_string(record.admissibility)));
  }
  if (!is_p_quasistable(record.stability.verdict)) {
    std::string what = "G-corrected class is " + std::string(to_string(record.stability.verdict));
    if (record.stability.witness) {
      what += " (witness " + format_subcurve(record.fiber.curve(), record.stability.witness->subcurve) + ")";
    }
    fail(what);
  }
  if (record.pushforward.total != l.total() - 1) {
    fail("pushforward degree " + std::to_string(record.pushforward.total) + " != deg(L) - 1");
  }
  if (record.stratum.kind == Stratum::Kind::kSmooth && record.mtilde != twisters[record.stratum.index].twisted) {
    fail("smooth-stratum class differs from m_Q (x) L (x) T on '" + curve.component(record.stratum.index).name + "'");
  }
}

}  // namespace

AbelResolution resolve_abel_map(const NodalCurve& curve, const Polarization& polarization, const SheafClass& l,
                                ComponentIndex p, const DesingularizationChoice& choice, const AbelOptions& options) {
  if (l.size() != curve.component_count()) throw Error(ErrorCode::kSizeMismatch, "line bundle size");
  if (p >= curve.component_count()) throw Error(ErrorCode::kUnknownComponent, "index " + std::to_string(p));
  const long long expected = quasistable_degree(curve, polarization) + 1;
  if (l.total() != expected) {
    throw Error(ErrorCode::kDegreeMismatch,
                "line bundle has degree " + std::to_string(l.total()) + ", expected " + std::to_string(expected));
  }

  AbelResolution resolution;
  resolution.twisters = quasistable_twisters(curve, polarization, l, p, options.twister);

  const auto build = [&](const Stratum& stratum) {
    try {
      FiberRecord record = fiber_record(curve, polarization, l, p, resolution.twisters, choice, stratum);
      verify_record(curve, record, l, resolution.twisters);
      return record;
    } catch (const Error& error) {
      if (error.code() != ErrorCode::kNotAdmissible) throw;
      throw Error(ErrorCode::kInvariantViolation,
                  "stratum '" + stratum_name(curve, stratum) + "': limit class is not admissible");
    }
  };

  const std::vector<Stratum> all = strata(curve);
  if (options.parallel) {
    std::vector<std::future<FiberRecord>> futures;
    for (const Stratum& stratum : all) futures.push_back(std::async(std::launch::async, build, stratum));
    for (auto& future : futures) resolution.records.push_back(future.get());
  } else {
    for (const Stratum& stratum : all) resolution.records.push_back(build(stratum));
  }
  return resolution;
}

}  // namespace jacobel
