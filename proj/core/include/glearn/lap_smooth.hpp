#pragma once

#include "glearn/graph.hpp"
#include "glearn/types.hpp"

namespace glearn {

/// Baseline graph learning with a Laplacian-energy regularizer:
///   min_w  2 w^T z + beta1 (|S w|^2 + 2 |w|^2)
///   s.t.   w >= 0,  1^T w = n/2
/// solved by projected gradient descent onto the scaled simplex.
struct LapSmoothParams {
  double beta1 = 0.1;      ///< regularizer weight, > 0
  double step = 0.0;       ///< gradient step; <= 0 selects 1 / (4 beta1 n)
  double tol = 1e-10;      ///< relative-change stopping tolerance
  int max_iters = 100000;  ///< iteration cap

  void validate() const;
};

struct LapSmoothResult {
  EdgeWeightVector w;
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;
};

/// Euclidean projection onto {v >= 0, 1^T v = total} by sort and threshold.
/// Requires total > 0.
Vector project_scaled_simplex(const Vector& v, double total);

double lap_smooth_objective(const Vector& w, const Vector& z, double beta1, int nodes);

LapSmoothResult solve_lap_smooth(int nodes, const Vector& z, const LapSmoothParams& params);

}  // namespace glearn
