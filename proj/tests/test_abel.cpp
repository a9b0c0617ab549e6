#include <doctest.h>

#include <random>

#include "jacobel/abel.hpp"
#include "jacobel/error.hpp"
#include "support.hpp"

using namespace jacobel;
using namespace jacobel::test;

namespace {

using Weights = std::vector<std::vector<long long>>;

std::vector<long long> chain_twist_degrees(const ModifiedCurve& fiber, const ProductRestriction& restriction) {
  const SheafClass t = twister_multidegree(fiber.curve(), fiber_coefficients(fiber, restriction));
  std::vector<long long> out;
  for (ComponentIndex k = 0; k < fiber.curve().component_count(); ++k) {
    if (fiber.is_exceptional(k)) out.push_back(t[k]);
  }
  return out;
}

}  // namespace

TEST_CASE("product divisor restriction on the two-component curve") {
  const NodalCurve b = banana();
  const Weights w{{3, 5}, {7, 11}};
  DesingularizationChoice parallel;
  parallel.set(0, 1, Matching::kParallel);
  ProductRestriction r = restrict_product_divisor(b, parallel, 0, w);
  CHECK(r.on_nodes[1] == 3 + 11);
  CHECK(r.on_components == std::vector<long long>{3 + 7, 5 + 11});
  CHECK(r.on_nodes[0] == 5 + 7);

  r = restrict_product_divisor(b, DesingularizationChoice{}, 0, w);
  CHECK(r.on_nodes[1] == 5 + 7);

  r = restrict_product_divisor(b, DesingularizationChoice{}, 0, Weights{{0, 0}, {0, 0}});
  CHECK(r.on_components == std::vector<long long>{0, 0});
  CHECK(r.on_nodes == std::vector<long long>{0, 0});

  CHECK_THROWS_AS(restrict_product_divisor(loop_curve(), DesingularizationChoice{}, 0, Weights{{0}}), Error);
}

TEST_CASE("diagonal ideal degrees") {
  const NodalCurve b = banana();
  const Stratum smooth{Stratum::Kind::kSmooth, 0};
  CHECK(diagonal_ideal_degrees(fiber_curve(b, smooth), smooth) == deg({-1, 0}));
  const Stratum n1{Stratum::Kind::kReducibleNode, 0};
  CHECK(diagonal_ideal_degrees(fiber_curve(b, n1), n1) == deg({-1, -1, 1, 0}));
  const Stratum loop{Stratum::Kind::kIrreducibleNode, 0};
  CHECK(diagonal_ideal_degrees(fiber_curve(loop_curve(), loop), loop) == deg({-2, 1}));
}

TEST_CASE("limit multidegree, correction and pushforward on the banana") {
  const NodalCurve b = banana();
  const Polarization e = Polarization::trivial(2);
  const SheafClass l = deg({1, 0});
  const Stratum n1{Stratum::Kind::kReducibleNode, 0};
  const SheafClass mtilde = limit_multidegree(b, e, l, 0, DesingularizationChoice{}, n1);
  CHECK(mtilde == deg({0, -1, 1, 0}));

  const ModifiedCurve fiber = fiber_curve(b, n1);
  const SheafClass g = g_correction(fiber, e.pull_back(fiber), mtilde);
  CHECK(g == deg({1, 0, -1, 0}));
  CHECK(classify_admissibility(fiber, g) == Admissibility::kNegativelyAdmissible);

  const PushforwardDescriptor push = pushforward_descriptor(fiber, g);
  CHECK(push.on_base == deg({1, 0}));
  CHECK(push.non_invertible == std::vector<NodeIndex>{0});
  CHECK(push.total == 0);

  const SheafClass flat = deg({0, 0, 0, 0});
  CHECK(g_correction(fiber, e.pull_back(fiber), flat) == flat);
  CHECK(pushforward_descriptor(fiber, deg({1, -1, 0, 0})).non_invertible.empty());

  const Stratum smooth{Stratum::Kind::kSmooth, 1};
  CHECK(limit_multidegree(b, e, l, 0, DesingularizationChoice{}, smooth) == deg({1, -1}));
}

TEST_CASE("admissibility classes") {
  const ModifiedCurve fiber = c_one(banana());
  CHECK(classify_admissibility(fiber, deg({0, 0, 0, 0})) == Admissibility::kInvertible);
  CHECK(classify_admissibility(fiber, deg({1, 0, -1, 0})) == Admissibility::kNegativelyAdmissible);
  CHECK(classify_admissibility(fiber, deg({-1, 0, 1, 0})) == Admissibility::kPositivelyAdmissible);
  CHECK(classify_admissibility(fiber, deg({0, 0, 1, -1})) == Admissibility::kAdmissible);
  CHECK(classify_admissibility(fiber, deg({-2, 0, 2, 0})) == Admissibility::kNotAdmissible);
}

TEST_CASE("loop curve record") {
  const NodalCurve c = loop_curve();
  const Polarization e = Polarization::trivial(1);
  const AbelResolution res = resolve_abel_map(c, e, deg({2}), 0, DesingularizationChoice{});
  REQUIRE(res.records.size() == 2);
  CHECK(res.records[0].g_class == deg({1}));
  const FiberRecord& r = res.records[1];
  CHECK(r.name == "R");
  CHECK(r.mtilde == deg({0, 1}));
  CHECK(r.g_class == deg({2, -1}));
  CHECK(is_p_quasistable(r.stability.verdict));
  CHECK(r.pushforward.on_base == deg({2}));
  CHECK(r.pushforward.non_invertible == std::vector<NodeIndex>{0});
  CHECK(r.pushforward.total == 1);
}

TEST_CASE("banana resolution") {
  const NodalCurve b = banana();
  const AbelResolution res = resolve_abel_map(b, Polarization::trivial(2), deg({1, 0}), 0, DesingularizationChoice{});
  REQUIRE(res.records.size() == 4);
  const FiberRecord& n1 = res.records[2];
  CHECK(n1.name == "n1");
  CHECK(n1.fiber.curve().component_count() == 4);
  CHECK(n1.mtilde == deg({0, -1, 1, 0}));
  CHECK(n1.g_class == deg({1, 0, -1, 0}));
  CHECK(n1.admissibility == Admissibility::kNegativelyAdmissible);
  CHECK(n1.pushforward.on_base == deg({1, 0}));
  CHECK(n1.pushforward.total == 0);
  CHECK(is_p_quasistable(n1.stability.verdict));
  CHECK(res.records[3].g_class == deg({1, 0, 0, -1}));
}

TEST_CASE("smooth curve has one record with the classical multidegree") {
  for (long long g = 0; g <= 3; ++g) {
    const NodalCurve c = make_curve({{"x", g}}, {});
    const AbelResolution res = resolve_abel_map(c, Polarization(1, {1}), deg({g - 1}), 0, DesingularizationChoice{});
    REQUIRE(res.records.size() == 1);
    CHECK(res.records[0].g_class == deg({g - 2}));
  }
}

TEST_CASE("case (i) on the banana: equal twisters give L at the node") {
  const NodalCurve b = banana();
  const Polarization e = Polarization::trivial(2);
  const SheafClass l = deg({1, 0});
  const auto twisters = quasistable_twisters(b, e, l, 0);
  REQUIRE(twisters[0].twist == twisters[1].twist);
  const AbelResolution res = resolve_abel_map(b, e, l, 0, DesingularizationChoice{});
  for (NodeIndex r : {0U, 1U}) {
    const FiberRecord& rec = res.records[2 + r];
    CHECK(rec.pushforward.on_base == l + twisters[0].twist);
    CHECK(rec.pushforward.non_invertible == std::vector<NodeIndex>{r});
  }
}

TEST_CASE("twister restrictions cancel on the chain over their own node") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> coef(-4, 4);
  const NodalCurve c = mixed();
  const std::size_t n = c.component_count();
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<long long> z(n);
    for (auto& x : z) x = coef(rng);
    for (NodeIndex r : c.reducible_nodes()) {
      const Node& node = c.node(r);
      Weights w(n, std::vector<long long>(n, 0));
      w[node.first] = z;
      w[node.second] = z;
      for (const auto& choice : DesingularizationChoice::all(c)) {
        const ModifiedCurve fiber = c_one(c);
        const ProductRestriction restriction = restrict_product_divisor(c, choice, r, w);
        const SheafClass t = twister_multidegree(fiber.curve(), fiber_coefficients(fiber, restriction));
        CHECK(t[fiber.chain(r).front()] == 0);
      }
    }
  }
}

TEST_CASE("chain degrees of the full twister reduce to the difference") {
  const NodalCurve c = mixed();
  const Polarization e(3, {2, -1, 2});
  const std::size_t n = c.component_count();
  for (long long shift = -2; shift <= 2; ++shift) {
    SheafClass l = deg({shift, 1, -shift});
    l[0] += c.genus() - e.slope() - l.total();
    const auto twisters = quasistable_twisters(c, e, l, 0);
    Weights full(n);
    for (std::size_t k = 0; k < n; ++k) full[k] = twisters[k].coefficients;
    for (NodeIndex r : c.reducible_nodes()) {
      const ComponentIndex i = c.node(r).first;
      const ComponentIndex j = c.node(r).second;
      Weights diff(n, std::vector<long long>(n, 0));
      for (std::size_t k = 0; k < n; ++k) diff[j][k] = twisters[j].coefficients[k] - twisters[i].coefficients[k];
      for (const auto& choice : DesingularizationChoice::all(c)) {
        const ModifiedCurve fiber = c_one(c);
        CHECK(chain_twist_degrees(fiber, restrict_product_divisor(c, choice, r, full)) ==
              chain_twist_degrees(fiber, restrict_product_divisor(c, choice, r, diff)));
      }
    }
  }
}
