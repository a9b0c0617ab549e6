#include "jacobel/cli/selftest.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "jacobel/abel.hpp"
#include "jacobel/cli/corpus.hpp"
#include "jacobel/error.hpp"
#include "jacobel/oracle.hpp"

namespace jacobel::cli {

namespace {

constexpr std::size_t kMaxFailuresReported = 3;

/// Collects check outcomes and the first few failure messages.
class Ledger {
 public:
  void check(bool ok, const std::string& message) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (messages_.size() < kMaxFailuresReported) messages_.push_back(message);
  }
  template <typename F>
  void guard(const std::string& context, F&& body) {
    try {
      body();
    } catch (const Error& error) {
      check(false, context + ": " + error.what());
    }
  }

  CriterionResult finish(int id, std::string_view title, std::string summary = {}) const {
    CriterionResult result;
    result.id = id;
    result.title = std::string(title);
    result.checks = checks_;
    result.passed = failures_ == 0 && checks_ > 0;
    std::ostringstream detail;
    if (failures_ == 0) {
      detail << summary;
    } else {
      detail << failures_ << " failures";
      for (const std::string& m : messages_) detail << "; " << m;
    }
    result.detail = detail.str();
    return result;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
};

/// A polarization and line bundle of degree g - slope on a corpus curve.
struct Instance {
  const CurveDocument* document;
  Polarization polarization;
  SheafClass line_bundle;
};

std::vector<Polarization> polarization_test_set(const CurveDocument& document) {
  const std::size_t p = document.curve.component_count();
  std::vector<Polarization> set{Polarization::trivial(p), document.polarization};
  std::vector<long long> rank2(p, 0);
  std::vector<long long> rank3(p, 0);
  if (p == 1) {
    rank2[0] = 2;
    rank3[0] = 3;
  } else {
    rank2[0] = 1;
    rank2[p - 1] = 1;
    rank3[0] = 2;
    rank3[p - 1] = 1;
  }
  set.emplace_back(2, rank2);
  set.emplace_back(3, rank3);
  std::vector<Polarization> unique;
  for (const Polarization& e : set) {
    if (std::find(unique.begin(), unique.end(), e) == unique.end()) unique.push_back(e);
  }
  return unique;
}

std::vector<Instance> instances(const std::vector<CurveDocument>& corpus) {
  std::vector<Instance> out;
  for (const CurveDocument& document : corpus) {
    const std::size_t p = document.curve.component_count();
    for (const Polarization& e : polarization_test_set(document)) {
      SheafClass l = document.line_bundle;
      l[0] += quasistable_degree(document.curve, e) + 1 - l.total();
      out.push_back({&document, e, l});
      if (p > 1) {
        SheafClass moved = l;
        moved[0] -= 1;
        moved[p - 1] += 1;
        out.push_back({&document, e, moved});
      }
    }
  }
  return out;
}

std::string where(const Instance& instance, ComponentIndex p) {
  return instance.document->name + " E=(" + std::to_string(instance.polarization.rank()) + "," +
         format_multidegree(SheafClass(instance.polarization.degrees())) + ") L=" +
         format_multidegree(instance.line_bundle) + " P=" + instance.document->curve.component(p).name;
}

// Criterion 1 ---------------------------------------------------------------

CriterionResult beta_additivity(std::uint64_t) {
  Ledger ledger;
  const auto corpus = corpus_documents();
  for (const CurveDocument& document : corpus) {
    const NodalCurve& curve = document.curve;
    const std::size_t p = curve.component_count();
    if (p > 6) continue;
    const Subcurve::Mask full = curve.full_mask();

    // Disjoint pairs with a proper union, and their delta, do not depend on d.
    struct Pair {
      Subcurve y, z, u;
      long long delta;
    };
    std::vector<Pair> pairs;
    for (Subcurve::Mask y = 1; y < full; ++y) {
      for (Subcurve::Mask z = 1; z < full; ++z) {
        if ((y & z) != 0 || (y | z) == full) continue;
        const Subcurve sy(p, y);
        const Subcurve sz(p, z);
        pairs.push_back({sy, sz, Subcurve(p, y | z), delta(curve, sy, sz)});
      }
    }

    for (const Polarization& e : polarization_test_set(document)) {
      std::vector<long long> d(p, -2);
      while (true) {
        const SheafClass cls(d);
        for (const Pair& pair : pairs) {
          const Rational lhs = beta(curve, e, cls, pair.u);
          const Rational rhs = beta(curve, e, cls, pair.y) + beta(curve, e, cls, pair.z) - pair.delta;
          ledger.check(lhs == rhs, document.name + " d=" + format_multidegree(cls));
        }
        std::size_t k = 0;
        for (; k < p; ++k) {
          if (d[k] < 2) {
            ++d[k];
            break;
          }
          d[k] = -2;
        }
        if (k == p) break;
      }
    }
  }
  return ledger.finish(1, "beta additivity over disjoint subcurve pairs");
}

// Criterion 2 ---------------------------------------------------------------

CriterionResult beta_shift(std::uint64_t) {
  Ledger ledger;
  const auto corpus = corpus_documents();
  for (const Instance& instance : instances(corpus)) {
    const NodalCurve& curve = instance.document->curve;
    const std::size_t n = curve.component_count();
    for (ComponentIndex p = 0; p < n; ++p) {
      ledger.guard(where(instance, p), [&] {
        const auto twisters = quasistable_twisters(curve, instance.polarization, instance.line_bundle, p);
        for (ComponentIndex i = 0; i < n; ++i) {
          const SheafClass m_i = twisters[i].twisted;
          for (ComponentIndex j = 0; j < n; ++j) {
            if (i == j || curve.delta(i, j) == 0) continue;
            const SheafClass m = subtract_point(instance.line_bundle, j) + twisters[i].twist;
            for (const Subcurve::Mask y : proper_subcurve_masks(n)) {
              const Subcurve sy(n, y);
              const Rational shift = beta(curve, instance.polarization, m, sy) -
                                     beta(curve, instance.polarization, m_i, sy);
              long long expected = 0;
              if (sy.contains(j) && !sy.contains(i)) expected = -1;
              if (sy.contains(i) && !sy.contains(j)) expected = 1;
              ledger.check(shift == Rational(expected), where(instance, p) + " Y=" + format_subcurve(curve, sy));
            }
          }
        }
      });
    }
  }
  return ledger.finish(2, "beta shift when the point moves from C_i to C_j");
}

// Criterion 3 ---------------------------------------------------------------

CriterionResult banana_enumeration(std::uint64_t) {
  Ledger ledger;
  ledger.guard("banana", [&] {
    const CurveDocument banana = corpus_document("banana");
    const NodalCurve& curve = banana.curve;
    const SemistableSets sets = enumerate_semistable(curve, Polarization::trivial(2), curve.component_index("v1"));
    const std::vector<SheafClass> semistable{SheafClass({-1, 1}), SheafClass({0, 0}), SheafClass({1, -1})};
    const std::vector<SheafClass> quasistable{SheafClass({0, 0}), SheafClass({1, -1})};
    ledger.check(sets.semistable == semistable, "semistable set differs");
    ledger.check(sets.quasistable == quasistable, "P-quasistable set differs");
  });
  return ledger.finish(3, "banana semistable and P-quasistable sets",
                       "semistable {(-1,1),(0,0),(1,-1)}, P-quasistable {(0,0),(1,-1)}");
}

// Criterion 4 ---------------------------------------------------------------

void check_uniqueness(Ledger& ledger, const NodalCurve& curve, const Polarization& e, ComponentIndex p,
                      const std::string& context, std::vector<SheafClass>* quasistable_out) {
  const SemistableSets sets = enumerate_semistable(curve, e, p);
  const long long trees = spanning_tree_count(curve);
  const auto classes = partition_by_twister_class(curve, sets.quasistable);
  ledger.check(static_cast<long long>(sets.quasistable.size()) == trees && classes.size() == sets.quasistable.size(),
               context + ": " + std::to_string(sets.quasistable.size()) + " P-quasistable classes in " +
                   std::to_string(classes.size()) + " twister classes, " + std::to_string(trees) + " expected");
  if (quasistable_out) *quasistable_out = sets.quasistable;
}

CriterionResult twister_uniqueness(std::uint64_t seed) {
  Ledger ledger;
  const auto corpus = corpus_documents();
  for (const CurveDocument& document : corpus) {
    for (const Polarization& e : polarization_test_set(document)) {
      for (ComponentIndex p = 0; p < document.curve.component_count(); ++p) {
        const std::string context = document.name + " P=" + document.curve.component(p).name;
        ledger.guard(context, [&] { check_uniqueness(ledger, document.curve, e, p, context, nullptr); });
      }
    }
  }

  constexpr int kRandomInstances = 600;
  std::mt19937_64 rng(seed);
  const auto uniform = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
  for (int t = 0; t < kRandomInstances; ++t) {
    const CurveDocument& document = corpus[static_cast<std::size_t>(uniform(0, static_cast<long long>(corpus.size()) - 1))];
    const NodalCurve& curve = document.curve;
    const std::size_t n = curve.component_count();
    const long long rank = uniform(1, 3);
    std::vector<long long> degrees(n);
    for (long long& x : degrees) x = uniform(-3, 3);
    long long total = 0;
    for (const long long x : degrees) total += x;
    degrees[n - 1] -= ((total % rank) + rank) % rank;
    const Polarization e(rank, degrees);
    const ComponentIndex p = static_cast<ComponentIndex>(uniform(0, static_cast<long long>(n) - 1));
    std::vector<long long> d(n);
    long long partial = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) partial += (d[k] = uniform(-4, 4));
    d[n - 1] = quasistable_degree(curve, e) - partial;
    const SheafClass cls(d);
    const std::string context =
        "random #" + std::to_string(t) + " " + document.name + " d=" + format_multidegree(cls);

    ledger.guard(context, [&] {
      std::vector<SheafClass> quasistable;
      check_uniqueness(ledger, curve, e, p, context, &quasistable);
      const QuasistableTwist fast = find_quasistable_twister(curve, e, cls, p);
      const auto representatives = std::count_if(quasistable.begin(), quasistable.end(), [&](const SheafClass& q) {
        return same_twister_class(curve, cls, q);
      });
      ledger.check(representatives == 1, context + ": class has " + std::to_string(representatives) + " representatives");
      ledger.check(std::find(quasistable.begin(), quasistable.end(), fast.twisted) != quasistable.end(),
                   context + ": fast path result is not in the P-quasistable set");
      const auto between = twister_between(curve, cls, fast.twisted);
      ledger.check(between && *between == fast.coefficients, context + ": coefficients do not solve the Laplacian");
      const QuasistableTwist exhaustive = exhaustive_quasistable_twister(curve, e, cls, p);
      ledger.check(exhaustive.coefficients == fast.coefficients, context + ": fast path and oracle disagree");
    });
  }
  return ledger.finish(4, "unique P-quasistable representative per twister class",
                       std::to_string(kRandomInstances) + " random instances");
}

// Criterion 5 ---------------------------------------------------------------

CriterionResult twister_difference_criterion(std::uint64_t) {
  Ledger ledger;
  const auto corpus = corpus_documents();
  for (const Instance& instance : instances(corpus)) {
    const NodalCurve& curve = instance.document->curve;
    const std::size_t n = curve.component_count();
    for (ComponentIndex p = 0; p < n; ++p) {
      for (ComponentIndex i = 0; i < n; ++i) {
        for (ComponentIndex j = 0; j < n; ++j) {
          if (i == j || curve.delta(i, j) == 0) continue;
          const std::string context = where(instance, p) + " (i,j)=(" + curve.component(i).name + "," +
                                      curve.component(j).name + ")";
          ledger.guard(context, [&] {
            const TwisterDifferenceResult r =
                twister_difference(curve, instance.polarization, instance.line_bundle, p, i, j);
            const StabilityReport report = classify(curve, instance.polarization, r.corrected, p);
            ledger.check(is_p_quasistable(report.verdict), context + ": corrected class not P-quasistable");
            SheafClass expected = r.t_i.twist;
            if (r.z) {
              expected += twister_multidegree(curve, indicator(n, r.z->mask(), -1));
              ledger.check(r.z->contains(j) && !r.z->contains(i), context + ": Z has the wrong shape");
            }
            ledger.check(expected == r.t_j.twist, context + ": T_j != T_i(-Z)");
          });
        }
      }
    }
  }
  return ledger.finish(5, "twister difference subcurve corrects M and relates T_i, T_j");
}

// Criteria 6 and 7 ----------------------------------------------------------

void check_records(Ledger& ledger, const Instance& instance, ComponentIndex p, const AbelResolution& resolution,
                   const std::string& context) {
  const NodalCurve& curve = instance.document->curve;
  for (const FiberRecord& record : resolution.records) {
    const std::string at = context + " stratum " + record.name;
    for (const auto& [node, degree] : chain_degrees(record.fiber, record.mtilde)) {
      ledger.check(degree >= -1 && degree <= 1, at + ": M~ chain degree " + std::to_string(degree));
    }
    for (const auto& [node, degree] : chain_degrees(record.fiber, record.g_class)) {
      ledger.check(degree == -1 || degree == 0, at + ": G chain degree " + std::to_string(degree));
    }
    const BetaContext context_fiber(record.fiber.curve(), record.fiber_polarization);
    for (ComponentIndex c = 0; c < record.fiber.curve().component_count(); ++c) {
      if (!record.fiber.is_exceptional(c)) continue;
      const Rational b = context_fiber.beta(record.mtilde, Subcurve::Mask{1} << c);
      ledger.check(b == Rational(0) || b == Rational(1) || b == Rational(2), at + ": beta_E(M~) = " + format_rational(b));
    }
    const StabilityReport report =
        classify(record.fiber.curve(), record.fiber_polarization, record.g_class, record.fiber.lift(p));
    ledger.check(is_p_quasistable(report.verdict), at + ": G is " + std::string(to_string(report.verdict)));
    ledger.check(record.g_class.total() == instance.line_bundle.total() - 1, at + ": pushforward degree");
    if (record.stratum.kind == Stratum::Kind::kSmooth) {
      const ComponentIndex k = record.stratum.index;
      const QuasistableTwist t = find_quasistable_twister(curve, instance.polarization,
                                                          subtract_point(instance.line_bundle, k), p);
      ledger.check(record.mtilde == t.twisted, at + ": smooth row differs from m_Q L T");
    }
  }
}

CriterionResult abel_resolver(std::uint64_t) {
  Ledger ledger;
  const auto corpus = corpus_documents();
  for (const Instance& instance : instances(corpus)) {
    const NodalCurve& curve = instance.document->curve;
    const auto choices = DesingularizationChoice::all(curve);
    for (ComponentIndex p = 0; p < curve.component_count(); ++p) {
      for (std::size_t c = 0; c < choices.size(); ++c) {
        const std::string context = where(instance, p) + " choice #" + std::to_string(c);
        ledger.guard(context, [&] {
          const AbelResolution resolution =
              resolve_abel_map(curve, instance.polarization, instance.line_bundle, p, choices[c]);
          check_records(ledger, instance, p, resolution, context);
        });
      }
    }
  }
  return ledger.finish(6, "Abel resolver records over every stratum and matching");
}

CriterionResult choice_independence(std::uint64_t) {
  Ledger ledger;
  const auto corpus = corpus_documents();
  for (const Instance& instance : instances(corpus)) {
    const NodalCurve& curve = instance.document->curve;
    if (curve.reducible_nodes().size() > 3) continue;
    const auto choices = DesingularizationChoice::all(curve);
    for (ComponentIndex p = 0; p < curve.component_count(); ++p) {
      ledger.guard(where(instance, p), [&] {
        const AbelResolution reference =
            resolve_abel_map(curve, instance.polarization, instance.line_bundle, p, choices.front());
        for (std::size_t c = 1; c < choices.size(); ++c) {
          const AbelResolution other =
              resolve_abel_map(curve, instance.polarization, instance.line_bundle, p, choices[c]);
          for (std::size_t r = 0; r < other.records.size(); ++r) {
            if (other.records[r].stratum.kind == Stratum::Kind::kSmooth) continue;
            ledger.check(other.records[r].pushforward == reference.records[r].pushforward,
                         where(instance, p) + " stratum " + other.records[r].name + " choice #" + std::to_string(c));
          }
        }
      });
    }
  }
  return ledger.finish(7, "pushforward descriptors independent of the matching");
}

// Criterion 8 ---------------------------------------------------------------

/// The record's G must be the only P-quasistable class on the fiber in the
/// twister class of M~, found by exhaustive enumeration.
void check_worked_record(Ledger& ledger, const std::string& stem, std::string_view node_name,
                         const PushforwardDescriptor& expected) {
  ledger.guard(stem, [&] {
    const CurveDocument document = corpus_document(stem);
    const NodalCurve& curve = document.curve;
    const AbelResolution resolution = resolve_abel_map(curve, document.polarization, document.line_bundle,
                                                       document.marked_point, document.choice);
    const NodeIndex node = curve.node_index(node_name);
    const auto it = std::find_if(resolution.records.begin(), resolution.records.end(), [&](const FiberRecord& r) {
      return r.stratum.kind != Stratum::Kind::kSmooth && r.stratum.index == node;
    });
    ledger.check(it != resolution.records.end(), stem + ": missing record");
    if (it == resolution.records.end()) return;
    ledger.check(it->pushforward == expected, stem + ": pushforward " + format_multidegree(it->pushforward.on_base));

    const NodalCurve& fiber = it->fiber.curve();
    const SemistableSets sets = enumerate_semistable(fiber, it->fiber_polarization, it->fiber.lift(document.marked_point));
    std::vector<SheafClass> in_class;
    for (const SheafClass& q : sets.quasistable) {
      if (same_twister_class(fiber, it->mtilde, q)) in_class.push_back(q);
    }
    ledger.check(in_class.size() == 1 && in_class.front() == it->g_class,
                 stem + ": exhaustive oracle finds " + std::to_string(in_class.size()) + " quasistable limits");
  });
}

CriterionResult worked_limits(std::uint64_t) {
  Ledger ledger;
  check_worked_record(ledger, "banana", "n1", PushforwardDescriptor{SheafClass({1, 0}), {0}, {}, 0, true});
  check_worked_record(ledger, "loop_curve", "R", PushforwardDescriptor{SheafClass({2}), {0}, {}, 1, true});
  return ledger.finish(8, "worked limits on the banana and loop curves",
                       "banana n1 -> ((1,0),{n1},0); loop R -> ((2),{R},1)");
}

constexpr Criterion kCriteria[] = {
    {1, "beta additivity over disjoint subcurve pairs", &beta_additivity},
    {2, "beta shift when the point moves from C_i to C_j", &beta_shift},
    {3, "banana semistable and P-quasistable sets", &banana_enumeration},
    {4, "unique P-quasistable representative per twister class", &twister_uniqueness},
    {5, "twister difference subcurve corrects M and relates T_i, T_j", &twister_difference_criterion},
    {6, "Abel resolver records over every stratum and matching", &abel_resolver},
    {7, "pushforward descriptors independent of the matching", &choice_independence},
    {8, "worked limits on the banana and loop curves", &worked_limits},
};

}  // namespace

std::span<const Criterion> criteria() { return kCriteria; }

CriterionResult run_determinism(std::uint64_t seed) {
  const auto serialize = [&] {
    Json rows = Json::array();
    for (const Criterion& criterion : criteria()) rows.push_back(to_json(criterion.run(seed)));
    return rows.dump();
  };
  const std::string first = serialize();
  const std::string second = serialize();
  CriterionResult result;
  result.id = 9;
  result.title = "deterministic results across runs";
  result.checks = 1;
  result.passed = first == second;
  result.detail = result.passed ? std::to_string(first.size()) + " bytes identical" : "runs differ";
  return result;
}

Json to_json(const CriterionResult& result) {
  Json out;
  out["id"] = result.id;
  out["title"] = result.title;
  out["passed"] = result.passed;
  out["checks"] = result.checks;
  out["detail"] = result.detail;
  return out;
}

}  // namespace jacobel::cli
