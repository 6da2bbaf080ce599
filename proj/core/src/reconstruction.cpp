#include "glearn/reconstruction.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "glearn/distances.hpp"
#include "glearn/errors.hpp"
#include "glearn/rng.hpp"

namespace glearn {

void ReconstructionParams::validate() const {
  if (!(mu > 0.0)) throw ConfigError("reconstruction: mu must be positive");
  if (!(tol > 0.0)) throw ConfigError("reconstruction: tol must be positive");
  if (max_iters < 1) throw ConfigError("reconstruction: max_iters must be at least 1");
}

namespace {

void check_laplacian_shape(const Matrix& laplacian, Index rows) {
  if (laplacian.rows() != laplacian.cols()) {
    throw DataError("reconstruction: Laplacian must be square, got " +
                    std::to_string(laplacian.rows()) + "x" + std::to_string(laplacian.cols()));
  }
  if (laplacian.rows() != rows) {
    throw ConfigError("reconstruction: signal has " + std::to_string(rows) +
                      " rows but Laplacian is " + std::to_string(laplacian.rows()) + "x" +
                      std::to_string(laplacian.cols()));
  }
  if (!laplacian.allFinite()) {
    throw DataError("reconstruction: Laplacian has non-finite entries");
  }
}

}  // namespace

Matrix denoise(const Matrix& noisy, const Matrix& laplacian, double mu) {
  if (!(mu > 0.0)) throw ConfigError("denoise: mu must be positive");
  check_laplacian_shape(laplacian, noisy.rows());
  if (!noisy.allFinite()) throw DataError("denoise: input has non-finite entries");

  Matrix system = mu * laplacian;
  system.diagonal().array() += 1.0;
  Eigen::LLT<Matrix> chol(system);
  if (chol.info() != Eigen::Success) {
    throw NumericalError("denoise: Cholesky factorization failed; is the Laplacian valid?");
  }
  return chol.solve(noisy);
}

void validate_mask(const Matrix& mask, Index rows, Index cols) {
  if (mask.rows() != rows || mask.cols() != cols) {
    throw ConfigError("mask is " + std::to_string(mask.rows()) + "x" +
                      std::to_string(mask.cols()) + " but data is " + std::to_string(rows) + "x" +
                      std::to_string(cols));
  }
  if (((mask.array() != 0.0) && (mask.array() != 1.0)).any()) {
    throw DataError("mask entries must be 0 or 1");
  }
}

double symmetric_lambda_max(const Matrix& m, int iters, double tol) {
  if (m.rows() != m.cols()) throw DataError("lambda_max: matrix must be square");
  if (m.size() == 0) return 0.0;
  if (m.cwiseAbs().maxCoeff() == 0.0) return 0.0;

  Rng rng(0x9e3779b97f4a7c15ULL);
  Vector v(m.rows());
  for (Index i = 0; i < v.size(); ++i) v[i] = rng.gaussian();
  v.normalize();

  double lambda = 0.0;
  for (int k = 0; k < iters; ++k) {
    Vector mv = m * v;
    const double norm = mv.norm();
    if (norm == 0.0) return 0.0;  // start vector landed in the null space
    mv /= norm;
    const double next = mv.dot(m * mv);
    const bool settled = std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next));
    lambda = next;
    v.swap(mv);
    if (settled && k > 0) break;
  }
  return lambda;
}

std::vector<int> connected_components(const Matrix& laplacian) {
  const Index n = laplacian.rows();
  std::vector<int> component(static_cast<std::size_t>(n), -1);
  int next_id = 0;
  for (Index start = 0; start < n; ++start) {
    if (component[static_cast<std::size_t>(start)] >= 0) continue;
    std::queue<Index> frontier;
    frontier.push(start);
    component[static_cast<std::size_t>(start)] = next_id;
    while (!frontier.empty()) {
      const Index i = frontier.front();
      frontier.pop();
      for (Index j = 0; j < n; ++j) {
        if (j == i || laplacian(i, j) == 0.0) continue;
        if (component[static_cast<std::size_t>(j)] < 0) {
          component[static_cast<std::size_t>(j)] = next_id;
          frontier.push(j);
        }
      }
    }
    ++next_id;
  }
  return component;
}

ImputeResult impute(const Matrix& observed, const Matrix& mask, const Matrix& laplacian,
                    const ReconstructionParams& params) {
  params.validate();
  check_laplacian_shape(laplacian, observed.rows());
  validate_mask(mask, observed.rows(), observed.cols());
  if (!observed.allFinite()) throw DataError("impute: input has non-finite entries");

  const Index n = observed.rows();
  const Index t = observed.cols();

  // Unobserved entries of the anchor are forced to zero so the projection
  // step can overwrite them freely.
  const Matrix anchor = mask.cwiseProduct(observed);

  const double lambda_max = symmetric_lambda_max(laplacian);
  const double xi = params.xi > 0.0 ? params.xi : lambda_max > 0.0 ? 1.0 / lambda_max : 1.0;

  ImputeResult result;

  // Columns where a whole component is unobserved carry no smoothness
  // signal; seed those entries at the column's observed mean, which the
  // component dynamics hold stationary.
  Matrix x = anchor;
  const std::vector<int> component = connected_components(laplacian);
  const int component_count =
      component.empty() ? 0 : *std::max_element(component.begin(), component.end()) + 1;
  const double global_sum = anchor.sum();
  const double global_count = mask.sum();
  long dead_entries = 0;
  for (Index c = 0; c < t; ++c) {
    std::vector<double> comp_observed(static_cast<std::size_t>(component_count), 0.0);
    double col_sum = 0.0;
    double col_count = 0.0;
    for (Index i = 0; i < n; ++i) {
      if (mask(i, c) != 0.0) {
        comp_observed[static_cast<std::size_t>(component[static_cast<std::size_t>(i)])] += 1.0;
        col_sum += observed(i, c);
        col_count += 1.0;
      }
    }
    const double col_mean = col_count > 0.0   ? col_sum / col_count
                            : global_count > 0.0 ? global_sum / global_count
                                                 : 0.0;
    for (Index i = 0; i < n; ++i) {
      if (mask(i, c) == 0.0 &&
          comp_observed[static_cast<std::size_t>(component[static_cast<std::size_t>(i)])] == 0.0) {
        x(i, c) = col_mean;
        ++dead_entries;
      }
    }
  }
  if (dead_entries > 0) {
    result.warnings.push_back(
        std::to_string(dead_entries) +
        " unobserved entries lie in components with no observations for their column; "
        "filled with column means");
  }

  Matrix stepped(n, t);
  if (params.record_objective) {
    result.objective.push_back(0.5 * smoothness(x, laplacian));
  }

  for (int k = 1; k <= params.max_iters; ++k) {
    stepped.noalias() = x - xi * (laplacian * x);
    // Observed entries are restored by selection, not arithmetic, so they
    // match the input bit for bit.
    Matrix x_next = (mask.array() != 0.0).select(anchor, stepped);

    if (!x_next.allFinite()) {
      throw NumericalError("impute: iterate diverged at iteration " + std::to_string(k));
    }

    const double base = x.norm();
    const double rel = base > 0.0 ? (x_next - x).norm() / base : (x_next - x).norm();
    x.swap(x_next);
    result.iterations = k;
    if (params.record_objective) {
      result.objective.push_back(0.5 * smoothness(x, laplacian));
    }
    if (rel < params.tol) {
      result.converged = true;
      break;
    }
  }

  result.values = std::move(x);
  return result;
}

}  // namespace glearn
