#include "glearn/igl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "glearn/degree_operator.hpp"
#include "glearn/edge_layout.hpp"
#include "glearn/errors.hpp"
#include "glearn/prox.hpp"

namespace glearn {

void IglParams::validate() const {
  if (!(alpha > 0.0)) throw ConfigError("igl: alpha must be positive");
  if (!(beta >= 0.0)) throw ConfigError("igl: beta must be nonnegative");
  if (!(upsilon >= 0.0)) throw ConfigError("igl: upsilon must be nonnegative");
  if (!(eps0 > 0.0)) throw ConfigError("igl: eps0 must be positive");
  if (k_max < 1) throw ConfigError("igl: k_max must be at least 1");
  if (normalize_output && !(output_threshold >= 0.0)) {
    throw ConfigError("igl: output_threshold must be nonnegative");
  }
}

void IglProblem::validate() const {
  if (nodes < 2) throw ConfigError("igl: need at least 2 nodes");
  const auto m = static_cast<Index>(edge_count(nodes));
  if (z.size() != m) {
    throw DataError("igl: distance vector has " + std::to_string(z.size()) +
                    " entries, expected " + std::to_string(m));
  }
  if ((z.array() < 0.0).any() || !z.allFinite()) {
    throw DataError("igl: distances must be finite and nonnegative");
  }
  if (mask.size() != w_prior.size()) {
    throw DataError("igl: mask and prior weights must have equal length");
  }
  if (has_prior()) {
    if (mask.size() != m) {
      throw DataError("igl: prior has " + std::to_string(mask.size()) + " edges, expected " +
                      std::to_string(m));
    }
    if (((mask.array() != 0.0) && (mask.array() != 1.0)).any()) {
      throw DataError("igl: mask entries must be 0 or 1");
    }
    if ((w_prior.array() < 0.0).any() || !w_prior.allFinite()) {
      throw DataError("igl: prior weights must be finite and nonnegative");
    }
  }
}

IglProblem make_igl_problem(int nodes, Vector z) {
  IglProblem problem;
  problem.nodes = nodes;
  problem.z = std::move(z);
  problem.validate();
  return problem;
}

IglProblem make_igl_problem(int nodes, Vector z, const PriorGraph& prior) {
  IglProblem problem;
  problem.nodes = nodes;
  problem.z = std::move(z);
  if (prior.w_pi.size() != nodes) {
    throw DataError("igl: prior graph has " + std::to_string(prior.w_pi.size()) +
                    " nodes, expected " + std::to_string(nodes));
  }
  problem.w_prior = adjacency_to_vector(prior.w_pi).weights;
  problem.mask = upper_triangle(prior.mask);
  problem.validate();
  return problem;
}

Vector grad_smooth_term(const Vector& w, const IglProblem& problem, const IglParams& params) {
  Vector g = 2.0 * params.beta * w;
  // Skipped when upsilon == 0 so the prior-free and masked-prior paths
  // run the same instructions in that case.
  if (params.upsilon != 0.0 && problem.has_prior()) {
    g += 2.0 * params.upsilon *
         problem.mask.cwiseProduct(problem.mask.cwiseProduct(w) - problem.w_prior);
  }
  return g;
}

double igl_objective(const Vector& w, const IglProblem& problem, const IglParams& params) {
  const Vector d = degree_operator_apply(w, problem.nodes);
  if ((d.array() <= 0.0).any()) {
    return std::numeric_limits<double>::infinity();
  }
  double value = 2.0 * w.dot(problem.z) - params.alpha * d.array().log().sum() +
                 params.beta * w.squaredNorm();
  if (params.upsilon != 0.0 && problem.has_prior()) {
    value += params.upsilon * (problem.mask.cwiseProduct(w) - problem.w_prior).squaredNorm();
  }
  return value;
}

namespace {

/// Nonnegative part with -0.0 canonicalized to +0.0.
Vector clamped(const Vector& w) { return ((w.cwiseMax(0.0)).array() + 0.0).matrix(); }

}  // namespace

IglResult solve_igl(const IglProblem& problem, const IglParams& params) {
  problem.validate();
  params.validate();

  const int n = problem.nodes;
  const auto m = static_cast<Index>(edge_count(n));

  const double zeta = 2.0 * (params.beta + params.upsilon);
  const double gamma = params.gamma > 0.0 ? params.gamma : 0.9 / (zeta + degree_operator_norm(n));

  // Uniform positive start: every edge at 1/(n-1), so degrees start at 1.
  Vector w = Vector::Constant(m, 1.0 / (n - 1));
  Vector d = degree_operator_apply(w, n);

  IglResult result;
  SolverTrace& trace = result.trace;
  if (params.record_objective) {
    trace.objective.reserve(std::min(params.k_max, 4096));
    trace.rel_change_w.reserve(std::min(params.k_max, 4096));
    trace.rel_change_d.reserve(std::min(params.k_max, 4096));
  }

  Vector y(m), p(m), q(m), w_next(m);
  Vector y_dual(n), p_dual(n), q_dual(n), d_next(n);

  for (int k = 1; k <= params.k_max; ++k) {
    y = w - gamma * (grad_smooth_term(w, problem, params) + degree_operator_adjoint(d));
    y_dual = d + gamma * degree_operator_apply(w, n);

    p = prox_weighted_l1_nonneg(y, gamma, problem.z);
    p_dual = prox_log_barrier_conjugate(y_dual, gamma, params.alpha);

    q = p - gamma * (grad_smooth_term(p, problem, params) + degree_operator_adjoint(p_dual));
    q_dual = p_dual + gamma * degree_operator_apply(p, n);

    w_next = w - y + q;
    d_next = d - y_dual + q_dual;

    if (!w_next.allFinite() || !d_next.allFinite()) {
      throw NumericalError("igl: iterate diverged at iteration " + std::to_string(k));
    }

    const double w_norm = w.norm();
    const double d_norm = d.norm();
    const double rel_w = w_norm > 0.0 ? (w_next - w).norm() / w_norm : (w_next - w).norm();
    const double rel_d = d_norm > 0.0 ? (d_next - d).norm() / d_norm : (d_next - d).norm();

    w.swap(w_next);
    d.swap(d_next);

    trace.iterations = k;
    trace.final_rel_change_w = rel_w;
    trace.final_rel_change_d = rel_d;
    if (params.record_objective) {
      trace.objective.push_back(igl_objective(clamped(w), problem, params));
      trace.rel_change_w.push_back(rel_w);
      trace.rel_change_d.push_back(rel_d);
    }

    if (rel_w < params.eps0 && rel_d < params.eps0) {
      trace.converged = true;
      break;
    }
  }

  result.w.nodes = n;
  result.w.weights = clamped(w);
  if (params.normalize_output) {
    result.w = normalize_and_threshold(std::move(result.w), params.output_threshold);
  }
  return result;
}

IglResult solve_igl(int nodes, const Vector& z, const IglParams& params, const PriorGraph* prior) {
  if (prior == nullptr) {
    IglParams p = params;
    p.upsilon = 0.0;
    return solve_igl(make_igl_problem(nodes, z), p);
  }
  return solve_igl(make_igl_problem(nodes, z, *prior), params);
}

}  // namespace glearn
