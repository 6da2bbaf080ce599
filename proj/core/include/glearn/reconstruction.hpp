#pragma once

#include <string>
#include <vector>

#include "glearn/types.hpp"

namespace glearn {

/// Graph-regularized signal reconstruction. Columns are snapshots, rows
/// are nodes; the graph enters through its Laplacian.

struct ReconstructionParams {
  double mu = 1.0;                ///< denoising smoothness weight, > 0
  double xi = 0.0;                ///< imputation step; <= 0 selects 1 / lambda_max(L)
  double tol = 1e-8;              ///< imputation relative-change tolerance
  int max_iters = 50000;          ///< imputation iteration cap
  bool record_objective = false;  ///< keep per-iteration smoothness values

  void validate() const;
};

/// Closed-form denoising: solves (I + mu L) X = Y by Cholesky.
Matrix denoise(const Matrix& noisy, const Matrix& laplacian, double mu);

struct ImputeResult {
  Matrix values;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective;      ///< tr(X^T L X) / 2 per iteration
  std::vector<std::string> warnings;  ///< under-determined columns, if any
};

/// Fills unobserved entries (mask 0) by projected gradient descent on the
/// smoothness objective; observed entries are reproduced exactly.
/// Components with no observations in a column are held at the column's
/// observed mean and reported in warnings.
ImputeResult impute(const Matrix& observed, const Matrix& mask, const Matrix& laplacian,
                    const ReconstructionParams& params = {});

/// Largest eigenvalue of a symmetric PSD matrix by power iteration with a
/// fixed internal seed. Returns 0 for the zero matrix.
double symmetric_lambda_max(const Matrix& m, int iters = 200, double tol = 1e-10);

/// Component id per node, ids dense from 0 in first-seen order, using the
/// off-diagonal support of the Laplacian.
std::vector<int> connected_components(const Matrix& laplacian);

/// Rejects masks that are not {0,1}-valued or shaped like the data.
void validate_mask(const Matrix& mask, Index rows, Index cols);

}  // namespace glearn
