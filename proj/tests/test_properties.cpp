#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "jacobel/cli/corpus.hpp"
#include "jacobel/oracle.hpp"
#include "jacobel/twister.hpp"
#include "support.hpp"

using namespace jacobel;
using namespace jacobel::test;

namespace {

std::vector<cli::CurveDocument> small_corpus() { return cli::corpus_documents(); }

SheafClass random_class(std::mt19937_64& rng, std::size_t n, long long total) {
  std::uniform_int_distribution<long long> pick(-3, 3);
  SheafClass d = SheafClass::zero(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = pick(rng);
  d[0] += total - d.total();
  return d;
}

Polarization random_polarization(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long long> rank(1, 4);
  std::uniform_int_distribution<long long> pick(-3, 3);
  const long long r = rank(rng);
  std::vector<long long> e(n);
  for (auto& x : e) x = pick(rng);
  const long long rem = std::accumulate(e.begin(), e.end(), 0LL) % r;
  e[0] -= rem;
  return Polarization(r, e);
}

// Relabels components by `perm` (new index perm[k] for old k).
NodalCurve relabel(const NodalCurve& c, const std::vector<std::size_t>& perm) {
  CurveDescription d;
  d.components.resize(c.component_count());
  for (std::size_t k = 0; k < c.component_count(); ++k) d.components[perm[k]] = c.component(k);
  for (const Node& node : c.nodes()) {
    d.nodes.push_back({node.name, c.component(node.first).name, c.component(node.second).name});
  }
  return build_curve(d);
}

template <typename T>
std::vector<T> permute(const std::vector<T>& v, const std::vector<std::size_t>& perm) {
  std::vector<T> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[perm[k]] = v[k];
  return out;
}

}  // namespace

TEST_CASE("verdicts form a lattice and ignore disconnected subcurves") {
  std::mt19937_64 rng(11);
  for (const auto& doc : small_corpus()) {
    const NodalCurve& c = doc.curve;
    const std::size_t n = c.component_count();
    for (int trial = 0; trial < 60; ++trial) {
      const Polarization e = random_polarization(rng, n);
      const SheafClass d = random_class(rng, n, quasistable_degree(c, e));
      const ComponentIndex p = rng() % n;
      const StabilityReport all = classify(c, e, d, p);
      ClassifyOptions connected;
      connected.connected_only = true;
      CHECK(classify(c, e, d, p, connected).verdict == all.verdict);

      // Recompute the verdict straight from naive beta.
      bool negative = false, zero_p = false, zero = false;
      for (Subcurve::Mask y : proper_subcurve_masks(n)) {
        const Rational b = naive_beta(c, e, d, y);
        negative |= b < Rational(0);
        zero |= b == Rational(0);
        zero_p |= b == Rational(0) && ((y >> p) & 1U) != 0;
      }
      const Verdict expected = negative ? Verdict::kNotSemistable
                               : zero_p ? Verdict::kSemistableOnly
                               : zero   ? Verdict::kPQuasistable
                                        : Verdict::kStable;
      CHECK(all.verdict == expected);
      if (all.verdict == Verdict::kStable) CHECK(is_p_quasistable(all.verdict));
      if (is_p_quasistable(all.verdict)) CHECK(is_semistable(all.verdict));
    }
  }
}

TEST_CASE("classify is invariant under relabeling") {
  std::mt19937_64 rng(12);
  for (const auto& doc : small_corpus()) {
    const NodalCurve& c = doc.curve;
    const std::size_t n = c.component_count();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int trial = 0; trial < 30; ++trial) {
      std::shuffle(perm.begin(), perm.end(), rng);
      const NodalCurve relabeled = relabel(c, perm);
      const Polarization e = random_polarization(rng, n);
      const Polarization e2(e.rank(), permute(e.degrees(), perm));
      const SheafClass d = random_class(rng, n, quasistable_degree(c, e));
      const std::vector<long long> dv(d.degrees().begin(), d.degrees().end());
      const SheafClass d2(permute(dv, perm));
      const ComponentIndex p = rng() % n;
      const StabilityReport a = classify(c, e, d, p);
      const StabilityReport b = classify(relabeled, e2, d2, perm[p]);
      CHECK(a.verdict == b.verdict);
      // The witness depends on the labeling; only its kind must agree.
      CHECK(a.witness.has_value() == b.witness.has_value());
      if (a.witness && b.witness) CHECK((a.witness->value < Rational(0)) == (b.witness->value < Rational(0)));
    }
  }
}

TEST_CASE("beta is additive over disjoint subcurves and shifts with the point") {
  std::mt19937_64 rng(13);
  for (const auto& doc : small_corpus()) {
    const NodalCurve& c = doc.curve;
    const std::size_t n = c.component_count();
    const Subcurve::Mask full = Subcurve::universe_mask(n);
    const Polarization e = random_polarization(rng, n);
    const BetaContext ctx(c, e);
    const SheafClass d = random_class(rng, n, quasistable_degree(c, e) + 1);
    for (Subcurve::Mask y = 1; y < full; ++y) {
      for (Subcurve::Mask z = 1; z < full; ++z) {
        if ((y & z) != 0 || (y | z) == full) continue;
        CHECK(ctx.beta(d, y | z) ==
              ctx.beta(d, y) + ctx.beta(d, z) - Rational(delta(c, Subcurve(n, y), Subcurve(n, z))));
      }
    }
    for (ComponentIndex i = 0; i < n; ++i) {
      for (ComponentIndex j = 0; j < n; ++j) {
        if (i == j || c.delta(i, j) == 0) continue;
        const SheafClass mi = subtract_point(d, i);
        const SheafClass m = subtract_point(d, j);
        for (Subcurve::Mask y = 1; y < full; ++y) {
          const bool has_i = ((y >> i) & 1U) != 0;
          const bool has_j = ((y >> j) & 1U) != 0;
          const long long shift = (has_j && !has_i) ? -1 : (has_i && !has_j) ? 1 : 0;
          CHECK(ctx.beta(m, y) - ctx.beta(mi, y) == Rational(shift));
        }
      }
    }
  }
}

TEST_CASE("internal nodes and delta are additive") {
  for (const auto& doc : small_corpus()) {
    const NodalCurve& c = doc.curve;
    const std::size_t n = c.component_count();
    const Subcurve::Mask full = Subcurve::universe_mask(n);
    for (Subcurve::Mask y = 1; y <= full; ++y) {
      for (Subcurve::Mask z = 1; z <= full; ++z) {
        if ((y & z) != 0) continue;
        CHECK(internal_nodes(c, y | z) ==
              internal_nodes(c, y) + internal_nodes(c, z) + delta(c, Subcurve(n, y), Subcurve(n, z)));
      }
    }
  }
}

TEST_CASE("twister kernel is exactly the constants") {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<long long> pick(-3, 3);
  for (const auto& doc : small_corpus()) {
    const NodalCurve& c = doc.curve;
    const std::size_t n = c.component_count();
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<long long> a(n);
      for (auto& x : a) x = pick(rng);
      const bool constant = std::all_of(a.begin(), a.end(), [&](long long x) { return x == a[0]; });
      const SheafClass t = twister_multidegree(c, a);
      CHECK(t.total() == 0);
      CHECK((t == SheafClass::zero(n)) == constant);
      CHECK(twister_between(c, SheafClass::zero(n), t) == normalize_twister(a));
    }
  }
}

TEST_CASE("quasistable twister is unique and matches the oracle on random polarizations") {
  std::mt19937_64 rng(15);
  for (const auto& doc : small_corpus()) {
    const NodalCurve& c = doc.curve;
    const std::size_t n = c.component_count();
    if (n > 4) continue;
    for (int trial = 0; trial < 20; ++trial) {
      const Polarization e = random_polarization(rng, n);
      const SheafClass d = random_class(rng, n, quasistable_degree(c, e));
      const ComponentIndex p = rng() % n;
      const QuasistableTwist fast = find_quasistable_twister(c, e, d, p);
      const QuasistableTwist slow = exhaustive_quasistable_twister(c, e, d, p);
      CHECK(fast.coefficients == slow.coefficients);
      CHECK(is_p_quasistable(classify(c, e, fast.twisted, p).verdict));
      CHECK(twister_between(c, d, fast.twisted) == fast.coefficients);
    }
  }
}

TEST_CASE("twister difference holds for random polarizations") {
  std::mt19937_64 rng(16);
  for (const auto& doc : small_corpus()) {
    const NodalCurve& c = doc.curve;
    const std::size_t n = c.component_count();
    for (int trial = 0; trial < 15; ++trial) {
      const Polarization e = random_polarization(rng, n);
      const SheafClass l = random_class(rng, n, quasistable_degree(c, e) + 1);
      const ComponentIndex p = rng() % n;
      for (ComponentIndex i = 0; i < n; ++i) {
        for (ComponentIndex j = 0; j < n; ++j) {
          if (i != j && c.delta(i, j) == 0) continue;
          const TwisterDifferenceResult r = twister_difference(c, e, l, p, i, j);
          if (e.rank() == 1) CHECK(r.fewest_components_agrees);
          if (r.z) {
            CHECK(r.z->contains(j));
            CHECK_FALSE(r.z->contains(i));
          }
        }
      }
    }
  }
}
