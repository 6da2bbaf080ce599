#pragma once

#include <cstdint>
#include <vector>

#include "glearn/graph.hpp"
#include "glearn/physics.hpp"
#include "glearn/types.hpp"

namespace glearn {

/// Graph learning from pairwise signal distances, with an optional
/// knowledge-fidelity term that pulls masked edges toward a prior graph.
///
/// The edge-domain problem is
///   min_{w >= 0}  2 w^T z - alpha 1^T log(S w) + beta |w|^2
///                 + upsilon |m .* w - w_pi|^2
/// where S maps edge weights to node degrees. With upsilon = 0 (or no
/// prior) this is plain adjacency-smoothness learning.
struct IglParams {
  double alpha = 1.0;             ///< log-barrier weight, > 0
  double beta = 0.0;              ///< energy/sparsity weight, >= 0
  double upsilon = 0.0;           ///< knowledge-fidelity weight, >= 0
  double gamma = 0.0;             ///< step size; <= 0 selects 0.9 / (zeta + |S|)
  double eps0 = 1e-5;             ///< relative-change stopping tolerance
  int k_max = 20000;              ///< iteration cap
  bool normalize_output = false;  ///< rescale to max weight 1 and threshold
  double output_threshold = 0.1;  ///< edge cutoff after normalization
  bool record_objective = true;   ///< keep per-iteration history

  void validate() const;
};

/// Edge-domain problem data. An empty mask/prior means no fidelity term.
struct IglProblem {
  int nodes = 0;
  Vector z;        ///< pairwise distances, edge layout, >= 0
  Vector mask;     ///< binary edge mask; empty when no prior
  Vector w_prior;  ///< prior edge weights; empty when no prior

  bool has_prior() const { return mask.size() > 0; }
  void validate() const;
};

/// Builds the edge-domain problem from a node-domain prior graph.
IglProblem make_igl_problem(int nodes, Vector z);
IglProblem make_igl_problem(int nodes, Vector z, const PriorGraph& prior);

/// Per-run diagnostics. Histories are recorded per completed iteration;
/// the objective is evaluated at the nonnegative part of the iterate.
struct SolverTrace {
  int iterations = 0;
  bool converged = false;
  double final_rel_change_w = 0.0;
  double final_rel_change_d = 0.0;
  std::vector<double> objective;
  std::vector<double> rel_change_w;
  std::vector<double> rel_change_d;
};

struct IglResult {
  EdgeWeightVector w;
  SolverTrace trace;
};

/// Gradient of the smooth term beta |w|^2 + upsilon |m .* w - w_pi|^2.
/// The fidelity part is skipped entirely when upsilon == 0, so runs with
/// and without a prior follow identical arithmetic in that case.
Vector grad_smooth_term(const Vector& w, const IglProblem& problem, const IglParams& params);

/// Full objective at w with degrees d = S w; +infinity when any degree
/// is nonpositive.
double igl_objective(const Vector& w, const IglProblem& problem, const IglParams& params);

/// Runs the corrected forward-backward-forward primal-dual iteration.
/// Throws NumericalError when an iterate stops being finite.
IglResult solve_igl(const IglProblem& problem, const IglParams& params);

/// Convenience wrapper: builds the problem from distances and an optional
/// prior. upsilon is forced to 0 when prior is null.
IglResult solve_igl(int nodes, const Vector& z, const IglParams& params,
                    const PriorGraph* prior = nullptr);

}  // namespace glearn
