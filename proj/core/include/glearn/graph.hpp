#pragma once

#include <vector>

#include "glearn/edge_layout.hpp"
#include "glearn/types.hpp"

namespace glearn {

/// Upper-triangular edge-weight parametrization of an undirected simple
/// graph: one non-negative weight per node pair, laid out by edge_index().
/// This is the primal variable of the graph-learning solvers.
struct EdgeWeightVector {
  int nodes = 0;
  Vector weights;  // length edge_count(nodes), entries >= 0

  static EdgeWeightVector zeros(int n);

  /// Throws DataError if the length is not n(n-1)/2 or any entry is negative.
  void validate() const;
};

/// Weighted undirected sensor graph: symmetric non-negative adjacency with
/// zero diagonal, plus optional per-node labels (empty or one per node).
struct SensorGraph {
  Matrix adjacency;
  std::vector<NodeLabel> labels;

  int size() const { return static_cast<int>(adjacency.rows()); }

  /// Throws DataError on asymmetry, nonzero diagonal, negative weights,
  /// or a label list whose length does not match the node count.
  void validate(double tol = 0.0) const;
};

/// Expand edge weights into the symmetric adjacency matrix.
SensorGraph vector_to_adjacency(const EdgeWeightVector& w, std::vector<NodeLabel> labels = {});

/// Collapse a SensorGraph back to its upper-triangular weight vector.
EdgeWeightVector adjacency_to_vector(const SensorGraph& g);

/// Strict upper-triangular entries of a square matrix in edge_index() order.
Vector upper_triangle(const Matrix& m);

/// Rescales so the largest weight is 1, then zeroes entries below
/// `threshold`. No-op on an all-zero vector.
EdgeWeightVector normalize_and_threshold(EdgeWeightVector w, double threshold);

/// Combinatorial Laplacian L = D - W with D(i,i) = sum_j W(i,j).
Matrix laplacian(const SensorGraph& g);

/// True when L is symmetric with zero row sums, non-positive off-diagonal
/// and non-negative diagonal, all within `tol`.
bool is_valid_laplacian(const Matrix& L, double tol = 1e-12);

}  // namespace glearn
