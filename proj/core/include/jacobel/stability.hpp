#pragma once

// Multidegree sheaf classes, polarizations, the beta function and the
// (semi/quasi)stability classification with reproducible witnesses.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "jacobel/curve.hpp"

namespace jacobel {

using Rational = boost::rational<long long>;

/// A line-bundle class recorded by its multidegree, one entry per component.
class SheafClass {
 public:
  SheafClass() = default;
  explicit SheafClass(std::vector<long long> degrees) : degrees_(std::move(degrees)) {}
  static SheafClass zero(std::size_t components) { return SheafClass(std::vector<long long>(components, 0)); }

  std::size_t size() const { return degrees_.size(); }
  long long operator[](std::size_t i) const { return degrees_.at(i); }
  long long& operator[](std::size_t i) { return degrees_.at(i); }
  std::span<const long long> degrees() const { return degrees_; }

  long long total() const;
  long long degree_on(Subcurve::Mask y) const;

  SheafClass& operator+=(const SheafClass& other);
  SheafClass& operator-=(const SheafClass& other);
  friend SheafClass operator+(SheafClass a, const SheafClass& b) { return a += b; }
  friend SheafClass operator-(SheafClass a, const SheafClass& b) { return a -= b; }

  auto operator<=>(const SheafClass&) const = default;
  bool operator==(const SheafClass&) const = default;

 private:
  std::vector<long long> degrees_;
};

/// m_Q (x) L for a smooth point Q on component i: one degree less on C_i.
SheafClass subtract_point(SheafClass d, ComponentIndex i);

/// A polarization recorded as (rank, multidegree); the slope must be integral.
class Polarization {
 public:
  Polarization(long long rank, std::vector<long long> degrees);
  static Polarization trivial(std::size_t components) { return Polarization(1, std::vector<long long>(components, 0)); }

  long long rank() const { return rank_; }
  const std::vector<long long>& degrees() const { return degrees_; }
  std::size_t size() const { return degrees_.size(); }
  long long total() const;
  long long slope() const { return total() / rank_; }
  long long degree_on(Subcurve::Mask y) const;

  /// Pullback to a modification: same rank, degree 0 on exceptional components.
  Polarization pull_back(const ModifiedCurve& modified) const;

  bool operator==(const Polarization&) const = default;

 private:
  long long rank_;
  std::vector<long long> degrees_;
};

/// Total degree of a semistable class: g - 1 - slope.
long long quasistable_degree(const NodalCurve& curve, const Polarization& polarization);

/// chi(L_Y) = deg_Y(d) + sum_{i in Y}(1 - g_i) - internal_nodes(Y).
long long euler_char(const NodalCurve& curve, const SheafClass& d, const Subcurve& y);

/// beta_d(Y) = chi(L_Y) + deg_Y(E)/rk(E), exact. Y must be proper.
Rational beta(const NodalCurve& curve, const Polarization& polarization, const SheafClass& d, const Subcurve& y);

/// Precomputed per-(curve, polarization) data for evaluating beta over many
/// subcurves. Works with r*beta, which is always an integer.
class BetaContext {
 public:
  BetaContext(const NodalCurve& curve, const Polarization& polarization);

  std::size_t component_count() const { return chi_.size(); }
  long long rank() const { return rank_; }
  Subcurve::Mask full_mask() const { return full_; }

  long long scaled_beta(const SheafClass& d, Subcurve::Mask y) const;
  Rational beta(const SheafClass& d, Subcurve::Mask y) const { return Rational(scaled_beta(d, y), rank_); }
  /// r * chi(O_Y) + deg_Y(E), the degree-independent part of r*beta.
  long long scaled_offset(Subcurve::Mask y) const;
  bool is_connected(Subcurve::Mask y) const { return curve_->is_connected(y); }

 private:
  const NodalCurve* curve_;
  std::vector<Subcurve::Mask> node_masks_;
  std::vector<long long> chi_;
  std::vector<long long> e_;
  long long rank_;
  Subcurve::Mask full_;
};

enum class Verdict { kDegreeMismatch, kNotSemistable, kSemistableOnly, kPQuasistable, kStable };

std::string_view to_string(Verdict verdict);
bool is_semistable(Verdict verdict);
bool is_p_quasistable(Verdict verdict);

struct BetaEntry {
  Subcurve subcurve;
  Rational value;
};

struct StabilityReport {
  Verdict verdict = Verdict::kDegreeMismatch;
  long long expected_degree = 0;
  long long actual_degree = 0;
  /// Not semistable: first subcurve with beta < 0. Semistable only: first
  /// subcurve containing P with beta = 0. P-quasistable but not stable:
  /// first subcurve with beta = 0. "First" is the canonical order.
  std::optional<BetaEntry> witness;
  /// beta on every proper subcurve (canonical order) when requested.
  std::vector<BetaEntry> table;
};

struct ClassifyOptions {
  bool connected_only = false;
  bool with_table = false;
  std::size_t table_max_components = 12;
};

StabilityReport classify(const NodalCurve& curve, const Polarization& polarization, const SheafClass& d,
                         ComponentIndex p, const ClassifyOptions& options = {});
StabilityReport classify(const BetaContext& context, const SheafClass& d, ComponentIndex p,
                         const ClassifyOptions& options = {});

struct SemistableSets {
  std::vector<SheafClass> semistable;
  std::vector<SheafClass> quasistable;
};

struct EnumerateOptions {
  std::size_t max_candidates = 5'000'000;
};

/// Every multidegree of total degree g-1-slope inside the beta-feasible box,
/// filtered by classify(); both lists sorted lexicographically.
SemistableSets enumerate_semistable(const NodalCurve& curve, const Polarization& polarization, ComponentIndex p,
                                    const EnumerateOptions& options = {});

}  // namespace jacobel
