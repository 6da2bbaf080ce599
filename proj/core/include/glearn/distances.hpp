#pragma once

#include "glearn/types.hpp"

namespace glearn {

/// Edge-shaped vector of squared distances between node signal rows:
/// z_(i,j) = sum_t (X(i,t) - X(j,t))^2. Sums over snapshots, no 1/m.
Vector pairwise_distances(const Matrix& X);

/// Laplacian quadratic form tr(X^T L X); equals <w, z> for the graph's
/// edge weights w and the distances z of X.
double smoothness(const Matrix& X, const Matrix& L);

}  // namespace glearn
