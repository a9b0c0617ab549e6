#pragma once

// Independent exact checks built on rational linear algebra over the
// reduced dual-graph Laplacian.

#include <cstddef>
#include <optional>
#include <vector>

#include "jacobel/curve.hpp"
#include "jacobel/stability.hpp"

namespace jacobel {

/// Normalized integer coefficients a with d2 - d1 = twister_multidegree(a),
/// or std::nullopt when the two classes are not twister-equivalent.
std::optional<std::vector<long long>> twister_between(const NodalCurve& curve, const SheafClass& d1,
                                                      const SheafClass& d2);

bool same_twister_class(const NodalCurve& curve, const SheafClass& d1, const SheafClass& d2);

/// Number of spanning trees of the dual graph (loops ignored), which is the
/// number of twister classes in each total degree.
long long spanning_tree_count(const NodalCurve& curve);

/// Groups indices of `classes` by twister class, in order of first appearance.
std::vector<std::vector<std::size_t>> partition_by_twister_class(const NodalCurve& curve,
                                                                 const std::vector<SheafClass>& classes);

}  // namespace jacobel
