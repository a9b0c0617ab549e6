#include "jacobel/stability.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "jacobel/error.hpp"

namespace jacobel {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

void require_size(std::size_t actual, std::size_t expected, const char* what) {
  if (actual != expected) {
    throw Error(ErrorCode::kSizeMismatch, std::string(what) + " has " + std::to_string(actual) +
                                              " entries, the curve has " + std::to_string(expected) + " components");
  }
}

}  // namespace

long long SheafClass::total() const { return std::accumulate(degrees_.begin(), degrees_.end(), 0LL); }

long long SheafClass::degree_on(Subcurve::Mask y) const {
  long long sum = 0;
  for (Subcurve::Mask m = y; m != 0; m &= m - 1) sum += degrees_.at(static_cast<std::size_t>(std::countr_zero(m)));
  return sum;
}

SheafClass& SheafClass::operator+=(const SheafClass& other) {
  require_size(other.size(), size(), "sheaf class");
  for (std::size_t i = 0; i < degrees_.size(); ++i) degrees_[i] += other.degrees_[i];
  return *this;
}

SheafClass& SheafClass::operator-=(const SheafClass& other) {
  require_size(other.size(), size(), "sheaf class");
  for (std::size_t i = 0; i < degrees_.size(); ++i) degrees_[i] -= other.degrees_[i];
  return *this;
}

SheafClass subtract_point(SheafClass d, ComponentIndex i) {
  if (i >= d.size()) throw Error(ErrorCode::kUnknownComponent, "index " + std::to_string(i));
  d[i] -= 1;
  return d;
}

Polarization::Polarization(long long rank, std::vector<long long> degrees)
    : rank_(rank), degrees_(std::move(degrees)) {
  if (rank_ <= 0) throw Error(ErrorCode::kInvalidPolarization, "rank must be positive");
  if (total() % rank_ != 0) {
    throw Error(ErrorCode::kInvalidPolarization,
                "rank " + std::to_string(rank_) + " does not divide degree " + std::to_string(total()));
  }
}

long long Polarization::total() const { return std::accumulate(degrees_.begin(), degrees_.end(), 0LL); }

long long Polarization::degree_on(Subcurve::Mask y) const {
  long long sum = 0;
  for (Subcurve::Mask m = y; m != 0; m &= m - 1) sum += degrees_.at(static_cast<std::size_t>(std::countr_zero(m)));
  return sum;
}

Polarization Polarization::pull_back(const ModifiedCurve& modified) const {
  require_size(size(), modified.base().component_count(), "polarization");
  std::vector<long long> pulled(modified.curve().component_count(), 0);
  for (ComponentIndex c = 0; c < pulled.size(); ++c) {
    if (const auto base = modified.collapse(c)) pulled[c] = degrees_[*base];
  }
  return Polarization(rank_, std::move(pulled));
}

long long quasistable_degree(const NodalCurve& curve, const Polarization& polarization) {
  return curve.genus() - 1 - polarization.slope();
}

long long euler_char(const NodalCurve& curve, const SheafClass& d, const Subcurve& y) {
  require_size(d.size(), curve.component_count(), "sheaf class");
  require_size(y.universe(), curve.component_count(), "subcurve");
  long long chi = d.degree_on(y.mask());
  for (const ComponentIndex i : y.members()) chi += 1 - curve.component(i).genus;
  return chi - internal_nodes(curve, y);
}

Rational beta(const NodalCurve& curve, const Polarization& polarization, const SheafClass& d, const Subcurve& y) {
  require_size(polarization.size(), curve.component_count(), "polarization");
  if (!y.is_proper()) throw Error(ErrorCode::kImproperSubcurve, "beta is defined on proper subcurves only");
  return Rational(euler_char(curve, d, y)) + Rational(polarization.degree_on(y.mask()), polarization.rank());
}

BetaContext::BetaContext(const NodalCurve& curve, const Polarization& polarization)
    : curve_(&curve), rank_(polarization.rank()), full_(curve.full_mask()) {
  require_size(polarization.size(), curve.component_count(), "polarization");
  for (NodeIndex n = 0; n < curve.node_count(); ++n) node_masks_.push_back(curve.node_mask(n));
  for (const auto& component : curve.components()) chi_.push_back(1 - component.genus);
  e_ = polarization.degrees();
}

long long BetaContext::scaled_offset(Subcurve::Mask y) const {
  long long chi = 0;
  long long e = 0;
  for (Subcurve::Mask m = y; m != 0; m &= m - 1) {
    const auto i = static_cast<std::size_t>(std::countr_zero(m));
    chi += chi_[i];
    e += e_[i];
  }
  for (const Subcurve::Mask node : node_masks_) {
    if ((node & ~y) == 0) --chi;
  }
  return rank_ * chi + e;
}

long long BetaContext::scaled_beta(const SheafClass& d, Subcurve::Mask y) const {
  return rank_ * d.degree_on(y) + scaled_offset(y);
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kDegreeMismatch: return "degree-mismatch";
    case Verdict::kNotSemistable: return "not-semistable";
    case Verdict::kSemistableOnly: return "semistable-only";
    case Verdict::kPQuasistable: return "P-quasistable";
    case Verdict::kStable: return "stable";
  }
  return "unknown";
}

bool is_semistable(Verdict verdict) {
  return verdict == Verdict::kSemistableOnly || verdict == Verdict::kPQuasistable || verdict == Verdict::kStable;
}

bool is_p_quasistable(Verdict verdict) { return verdict == Verdict::kPQuasistable || verdict == Verdict::kStable; }

StabilityReport classify(const NodalCurve& curve, const Polarization& polarization, const SheafClass& d,
                         ComponentIndex p, const ClassifyOptions& options) {
  const BetaContext context(curve, polarization);
  return classify(context, d, p, options);
}

StabilityReport classify(const BetaContext& context, const SheafClass& d, ComponentIndex p,
                         const ClassifyOptions& options) {
  const std::size_t components = context.component_count();
  require_size(d.size(), components, "sheaf class");
  if (p >= components) throw Error(ErrorCode::kUnknownComponent, "marked point on component " + std::to_string(p));

  StabilityReport report;
  // r * (g - 1 - slope) = -(r*chi(O_C) + deg E), the value making r*beta_C vanish.
  const long long scaled_target = -context.scaled_offset(context.full_mask());
  report.expected_degree = scaled_target / context.rank();
  report.actual_degree = d.total();
  if (report.actual_degree != report.expected_degree) {
    report.verdict = Verdict::kDegreeMismatch;
    return report;
  }

  const Subcurve::Mask p_bit = Subcurve::Mask{1} << p;
  std::optional<Subcurve::Mask> negative;
  std::optional<Subcurve::Mask> zero_with_p;
  std::optional<Subcurve::Mask> zero;
  const auto keep_first = [](std::optional<Subcurve::Mask>& slot, Subcurve::Mask m) {
    if (!slot || canonical_less(m, *slot)) slot = m;
  };

  const Subcurve::Mask full = context.full_mask();
  for (Subcurve::Mask m = 1; m < full; ++m) {
    if (options.connected_only && !context.is_connected(m)) continue;
    const long long s = context.scaled_beta(d, m);
    if (s < 0) {
      keep_first(negative, m);
    } else if (s == 0) {
      keep_first(zero, m);
      if ((m & p_bit) != 0) keep_first(zero_with_p, m);
    }
  }

  const auto entry = [&](Subcurve::Mask m) { return BetaEntry{Subcurve(components, m), context.beta(d, m)}; };
  if (negative) {
    report.verdict = Verdict::kNotSemistable;
    report.witness = entry(*negative);
  } else if (zero_with_p) {
    report.verdict = Verdict::kSemistableOnly;
    report.witness = entry(*zero_with_p);
  } else if (zero) {
    report.verdict = Verdict::kPQuasistable;
    report.witness = entry(*zero);
  } else {
    report.verdict = Verdict::kStable;
  }

  if (options.with_table && components <= options.table_max_components) {
    for (const Subcurve::Mask m : proper_subcurve_masks(components)) {
      if (options.connected_only && !context.is_connected(m)) continue;
      report.table.push_back(entry(m));
    }
  }
  return report;
}

SemistableSets enumerate_semistable(const NodalCurve& curve, const Polarization& polarization, ComponentIndex p,
                                    const EnumerateOptions& options) {
  const BetaContext context(curve, polarization);
  const std::size_t n = curve.component_count();
  const long long r = polarization.rank();
  const long long total = quasistable_degree(curve, polarization);
  const Subcurve::Mask full = curve.full_mask();

  // beta_{C_k} >= 0 and beta_{C_k'} >= 0 bound every coordinate.
  std::vector<long long> lo(n);
  std::vector<long long> hi(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (n == 1) {
      lo[k] = hi[k] = total;
      break;
    }
    const Subcurve::Mask single = Subcurve::Mask{1} << k;
    lo[k] = ceil_div(-context.scaled_offset(single), r);
    hi[k] = total + floor_div(context.scaled_offset(full & ~single), r);
  }

  SemistableSets sets;
  long double volume = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (hi[k] < lo[k]) return sets;
    volume *= static_cast<long double>(hi[k] - lo[k] + 1);
  }
  if (volume > static_cast<long double>(options.max_candidates)) {
    throw Error(ErrorCode::kSearchTooLarge, "search window holds ~" + std::to_string(static_cast<double>(volume)) +
                                                " candidates (cap " + std::to_string(options.max_candidates) + ")");
  }

  std::vector<long long> current(lo);
  while (true) {
    long long partial = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) partial += current[k];
    current[n - 1] = total - partial;
    if (current[n - 1] >= lo[n - 1] && current[n - 1] <= hi[n - 1]) {
      const SheafClass d(current);
      const Verdict verdict = classify(context, d, p).verdict;
      if (is_semistable(verdict)) sets.semistable.push_back(d);
      if (is_p_quasistable(verdict)) sets.quasistable.push_back(d);
    }
    std::size_t k = 0;
    for (; k + 1 < n; ++k) {
      if (current[k] < hi[k]) {
        ++current[k];
        break;
      }
      current[k] = lo[k];
    }
    if (k + 1 >= n) break;
  }
  std::sort(sets.semistable.begin(), sets.semistable.end());
  std::sort(sets.quasistable.begin(), sets.quasistable.end());
  return sets;
}

}  // namespace jacobel
