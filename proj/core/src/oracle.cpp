#include "jacobel/oracle.hpp"

#include <utility>

#include "jacobel/error.hpp"
#include "jacobel/twister.hpp"

namespace jacobel {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Laplacian with the last row and column removed; invertible on a connected graph.
Matrix reduced_laplacian(const NodalCurve& curve) {
  const std::size_t m = curve.component_count() - 1;
  Matrix lap(m, std::vector<Rational>(m, Rational(0)));
  for (const Node& node : curve.nodes()) {
    if (node.is_loop()) continue;
    const std::size_t a = node.first;
    const std::size_t b = node.second;
    if (a < m) lap[a][a] += 1;
    if (b < m) lap[b][b] += 1;
    if (a < m && b < m) {
      lap[a][b] -= 1;
      lap[b][a] -= 1;
    }
  }
  return lap;
}

// Gaussian elimination with exact pivots; returns the determinant and solves
// lap * x = rhs in place when rhs is non-null.
Rational eliminate(Matrix lap, std::vector<Rational>* rhs) {
  const std::size_t m = lap.size();
  Rational det(1);
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && lap[pivot][col] == Rational(0)) ++pivot;
    if (pivot == m) return Rational(0);
    if (pivot != col) {
      std::swap(lap[pivot], lap[col]);
      if (rhs) std::swap((*rhs)[pivot], (*rhs)[col]);
      det = -det;
    }
    det *= lap[col][col];
    for (std::size_t row = 0; row < m; ++row) {
      if (row == col || lap[row][col] == Rational(0)) continue;
      const Rational factor = lap[row][col] / lap[col][col];
      for (std::size_t k = col; k < m; ++k) lap[row][k] -= factor * lap[col][k];
      if (rhs) (*rhs)[row] -= factor * (*rhs)[col];
    }
  }
  if (rhs) {
    for (std::size_t row = 0; row < m; ++row) (*rhs)[row] /= lap[row][row];
  }
  return det;
}

}  // namespace

std::optional<std::vector<long long>> twister_between(const NodalCurve& curve, const SheafClass& d1,
                                                      const SheafClass& d2) {
  const std::size_t n = curve.component_count();
  if (d1.size() != n || d2.size() != n) throw Error(ErrorCode::kSizeMismatch, "sheaf class size");
  const SheafClass diff = d2 - d1;
  if (diff.total() != 0) return std::nullopt;
  // twister_multidegree(a) = -Laplacian * a; fix a_last = 0.
  std::vector<Rational> rhs;
  for (std::size_t k = 0; k + 1 < n; ++k) rhs.emplace_back(-diff[k]);
  eliminate(reduced_laplacian(curve), &rhs);
  std::vector<long long> a(n, 0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (rhs[k].denominator() != 1) return std::nullopt;
    a[k] = rhs[k].numerator();
  }
  return normalize_twister(std::move(a));
}

bool same_twister_class(const NodalCurve& curve, const SheafClass& d1, const SheafClass& d2) {
  return twister_between(curve, d1, d2).has_value();
}

long long spanning_tree_count(const NodalCurve& curve) {
  if (curve.component_count() == 1) return 1;
  const Rational det = eliminate(reduced_laplacian(curve), nullptr);
  return det.numerator();
}

std::vector<std::vector<std::size_t>> partition_by_twister_class(const NodalCurve& curve,
                                                                 const std::vector<SheafClass>& classes) {
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    bool placed = false;
    for (auto& group : groups) {
      if (same_twister_class(curve, classes[group.front()], classes[k])) {
        group.push_back(k);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({k});
  }
  return groups;
}

}  // namespace jacobel
