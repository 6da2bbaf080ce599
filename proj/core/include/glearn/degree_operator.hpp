#pragma once

#include "glearn/types.hpp"

namespace glearn {

/// The linear degree operator S maps edge weights to node degrees,
/// S w = W 1. Its adjoint spreads a node vector back onto edges:
/// (S^T d)_(i,j) = d(i) + d(j).

/// d(i) = sum over edges incident to node i of their weight. `w` is an
/// edge-shaped vector over n nodes in edge_index() layout.
Vector degree_operator_apply(const Vector& w, int n);

/// Adjoint map: edge-shaped vector with entry d(i) + d(j) at pair (i, j).
Vector degree_operator_adjoint(const Vector& d);

/// Spectral norm of S: sqrt(2(n-1)).
double degree_operator_norm(int n);

/// Dense n x n(n-1)/2 matrix of S; used by tests and small-scale checks.
Matrix degree_operator_matrix(int n);

}  // namespace glearn
