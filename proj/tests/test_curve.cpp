#include <doctest.h>

#include "jacobel/curve.hpp"
#include "jacobel/error.hpp"
#include "support.hpp"

using namespace jacobel;
using namespace jacobel::test;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvariantViolation;
}

}  // namespace

TEST_CASE("build_curve computes the arithmetic genus") {
  const NodalCurve c = banana();
  CHECK(c.component_count() == 2);
  CHECK(c.node_count() == 2);
  CHECK(c.genus() == 1);
  CHECK(make_curve({{"x", 2}}, {}).genus() == 2);
  CHECK(loop_curve().genus() == 2);
}

TEST_CASE("build_curve rejects bad descriptions") {
  CHECK(code_of([] { make_curve({{"a", 0}, {"b", 0}}, {}); }) == ErrorCode::kDisconnectedCurve);
  CHECK(code_of([] { make_curve({{"a", 0}, {"a", 0}}, {{"n", "a", "a"}}); }) == ErrorCode::kDuplicateName);
  CHECK(code_of([] { make_curve({{"a", 0}}, {{"n", "a", "zz"}}); }) == ErrorCode::kDanglingNodeEnd);
  CHECK(code_of([] { make_curve({}, {}); }) == ErrorCode::kEmptyCurve);
}

TEST_CASE("delta counts nodes between disjoint subcurves") {
  const NodalCurve b = banana();
  CHECK(delta(b, Subcurve::single(2, 0), Subcurve::single(2, 1)) == 2);
  CHECK(code_of([&] { delta(b, Subcurve::single(2, 0), Subcurve::single(2, 0)); }) ==
        ErrorCode::kOverlappingSubcurves);
  const NodalCurve t = three_cycle();
  CHECK(delta(t, Subcurve::of(3, {0}), Subcurve::of(3, {1, 2})) == 2);
}

TEST_CASE("internal_nodes includes loops") {
  const NodalCurve b = banana();
  CHECK(internal_nodes(b, Subcurve::whole(2)) == 2);
  CHECK(internal_nodes(b, Subcurve::single(2, 0)) == 0);
  CHECK(internal_nodes(loop_curve(), Subcurve::whole(1)) == 1);
}

TEST_CASE("decompose_against splits into differences and meet") {
  const Subcurve y = Subcurve::of(2, {0, 1});
  const Subcurve z = Subcurve::of(2, {1});
  Decomposition d = decompose_against(y, z);
  CHECK(d.y_minus_z == Subcurve::of(2, {0}));
  CHECK_FALSE(d.z_minus_y);
  CHECK(d.meet == z);

  d = decompose_against(y, y);
  CHECK_FALSE(d.y_minus_z);
  CHECK_FALSE(d.z_minus_y);
  CHECK(d.meet == y);

  const Subcurve a = Subcurve::of(3, {0});
  const Subcurve b = Subcurve::of(3, {2});
  d = decompose_against(a, b);
  CHECK(d.y_minus_z == a);
  CHECK(d.z_minus_y == b);
  CHECK_FALSE(d.meet);
}

TEST_CASE("semistable modifications") {
  const NodalCurve b = banana();
  const ModifiedCurve one = c_one(b);
  CHECK(one.curve().component_count() == 4);
  CHECK(one.curve().node_count() == 4);
  CHECK(one.curve().genus() == 1);
  CHECK(one.is_exceptional(2));
  CHECK(one.collapsed_node(3) == NodeIndex{1});
  CHECK(one.collapse(1) == ComponentIndex{1});

  const ModifiedCurve r = c_r(loop_curve(), 0);
  CHECK(r.curve().component_count() == 2);
  CHECK(r.curve().node_count() == 2);
  CHECK(r.curve().genus() == 2);
  for (const Node& node : r.curve().nodes()) CHECK_FALSE(node.is_loop());

  const ModifiedCurve three = modify(b, {{0, 3}});
  CHECK(three.chain(0).size() == 3);
  CHECK(three.curve().component_count() == 5);
  CHECK(three.curve().genus() == 1);
  for (ComponentIndex k : three.chain(0)) CHECK(three.curve().component(k).genus == 0);

  CHECK(code_of([&] { modify(b, {{0, 0}}); }) == ErrorCode::kInvalidChainLength);
}

TEST_CASE("modification preserves genus for chain lengths up to 3") {
  for (const NodalCurve& c : {banana(), three_cycle(), loop_curve(), mixed()}) {
    for (std::size_t eta = 1; eta <= 3; ++eta) {
      std::map<NodeIndex, std::size_t> all;
      for (NodeIndex n = 0; n < c.node_count(); ++n) {
        all[n] = eta;
        CHECK(modify(c, {{n, eta}}).curve().genus() == c.genus());
      }
      CHECK(modify(c, all).curve().genus() == c.genus());
    }
  }
}

TEST_CASE("canonical order is cardinality then lexicographic") {
  const auto masks = proper_subcurve_masks(3);
  REQUIRE(masks.size() == 6);
  CHECK(masks == std::vector<Subcurve::Mask>{0b001, 0b010, 0b100, 0b011, 0b101, 0b110});
}
