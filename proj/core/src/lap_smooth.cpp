#include "glearn/lap_smooth.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "glearn/degree_operator.hpp"
#include "glearn/edge_layout.hpp"
#include "glearn/errors.hpp"

namespace glearn {

void LapSmoothParams::validate() const {
  if (!(beta1 > 0.0)) throw ConfigError("lap-smooth: beta1 must be positive");
  if (!(tol > 0.0)) throw ConfigError("lap-smooth: tol must be positive");
  if (max_iters < 1) throw ConfigError("lap-smooth: max_iters must be at least 1");
}

Vector project_scaled_simplex(const Vector& v, double total) {
  if (!(total > 0.0)) throw ConfigError("simplex projection: total must be positive");
  if (v.size() == 0) throw DataError("simplex projection: empty input");

  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<double>());

  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double candidate = (cumulative - total) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0.0) {
      tau = candidate;
    } else {
      break;
    }
  }
  return (v.array() - tau).cwiseMax(0.0).matrix();
}

double lap_smooth_objective(const Vector& w, const Vector& z, double beta1, int nodes) {
  const Vector d = degree_operator_apply(w, nodes);
  return 2.0 * w.dot(z) + beta1 * (d.squaredNorm() + 2.0 * w.squaredNorm());
}

LapSmoothResult solve_lap_smooth(int nodes, const Vector& z, const LapSmoothParams& params) {
  params.validate();
  if (nodes < 2) throw ConfigError("lap-smooth: need at least 2 nodes");
  const auto m = static_cast<Index>(edge_count(nodes));
  if (z.size() != m) {
    throw DataError("lap-smooth: distance vector has " + std::to_string(z.size()) +
                    " entries, expected " + std::to_string(m));
  }
  if ((z.array() < 0.0).any() || !z.allFinite()) {
    throw DataError("lap-smooth: distances must be finite and nonnegative");
  }

  // The smooth objective has gradient Lipschitz constant
  // beta1 * lambda_max(2 S^T S + 4 I) = 4 beta1 n.
  const double step = params.step > 0.0 ? params.step : 1.0 / (4.0 * params.beta1 * nodes);
  const double total = nodes / 2.0;

  Vector w = Vector::Constant(m, total / static_cast<double>(m));
  Vector grad(m), w_next(m);

  LapSmoothResult result;
  for (int k = 1; k <= params.max_iters; ++k) {
    const Vector d = degree_operator_apply(w, nodes);
    grad = 2.0 * z + params.beta1 * (2.0 * degree_operator_adjoint(d) + 4.0 * w);
    w_next = project_scaled_simplex(w - step * grad, total);

    if (!w_next.allFinite()) {
      throw NumericalError("lap-smooth: iterate diverged at iteration " + std::to_string(k));
    }

    // Iterates stay on the simplex, so the norm is bounded away from zero.
    const double rel = (w_next - w).norm() / w.norm();
    w.swap(w_next);
    result.iterations = k;
    if (rel < params.tol) {
      result.converged = true;
      break;
    }
  }

  result.objective = lap_smooth_objective(w, z, params.beta1, nodes);
  result.w.nodes = nodes;
  result.w.weights = ((w.cwiseMax(0.0)).array() + 0.0).matrix();
  return result;
}

}  // namespace glearn
