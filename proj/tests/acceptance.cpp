// End-to-end acceptance checks, one per release gate. Each criterion
// prints a single PASS/FAIL line; the binary exits nonzero when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "glearn/degree_operator.hpp"
#include "glearn/errors.hpp"
#include "glearn/graph.hpp"
#include "glearn/igl.hpp"
#include "glearn/prox.hpp"
#include "glearn/reconstruction.hpp"
#include "oracles.hpp"
#include "subprocess.hpp"

namespace fs = std::filesystem;
using glearn::IglParams;
using glearn::IglProblem;
using glearn::IglResult;
using glearn::Matrix;
using glearn::Vector;
using nlohmann::json;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& what) {
  if (!condition) throw Failure(what);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// Shared scratch space so the determinism criterion can rerun the
// experiment produced by the end-to-end criterion.
fs::path g_scratch;
fs::path g_run1;

IglProblem random_problem(int n, oracle::TestRng& rng, bool with_prior) {
  IglProblem problem;
  problem.nodes = n;
  const int edges = n * (n - 1) / 2;
  problem.z = oracle::random_edge_vector(n, rng, 0.05, 2.0);
  if (with_prior) {
    problem.mask = Vector::Zero(edges);
    problem.w_prior = Vector::Zero(edges);
    int masked = 0;
    for (int e = 0; e < edges; ++e) {
      if (rng.chance(0.5)) {
        problem.mask[e] = 1.0;
        problem.w_prior[e] = rng.uniform(0.1, 1.0);
        ++masked;
      }
    }
    if (masked == 0) {
      problem.mask[0] = 1.0;
      problem.w_prior[0] = rng.uniform(0.1, 1.0);
    }
  }
  return problem;
}

double rel_gap(double value, double reference) {
  return std::abs(value - reference) / std::max(1e-12, std::abs(reference));
}

// ---- criteria ----

void check_prox_bruteforce() {
  oracle::TestRng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const double y = rng.uniform(-3.0, 3.0);
    const double z = rng.uniform(0.0, 2.0);
    const double gamma = rng.uniform(0.05, 2.0);

    const Vector got = glearn::prox_weighted_l1_nonneg(Vector::Constant(1, y), gamma,
                                                       Vector::Constant(1, z));
    const double want = oracle::grid_prox(
        [&](double u) { return u < 0.0 ? oracle::kInf : 2.0 * z * u; }, y, gamma, -1.0,
        std::abs(y) + 1.0, 1e-4);
    require(std::abs(got[0] - want) <= 1e-6,
            "nonneg prox off by " + fmt(std::abs(got[0] - want)));

    const double alpha = rng.uniform(0.1, 3.0);
    const Vector barrier = glearn::prox_log_barrier(Vector::Constant(1, y), gamma, alpha);
    const double barrier_ref = oracle::grid_prox(
        [&](double u) { return u <= 0.0 ? oracle::kInf : -alpha * std::log(u); }, y, gamma,
        1e-8, std::abs(y) + 4.0 * std::sqrt(alpha * gamma) + 4.0, 1e-4);
    require(std::abs(barrier[0] - barrier_ref) <= 1e-6,
            "log-barrier prox off by " + fmt(std::abs(barrier[0] - barrier_ref)));
  }

  // Moreau decomposition ties the conjugate prox to the primal prox.
  for (int trial = 0; trial < 100; ++trial) {
    const double y = rng.uniform(-6.0, 6.0);
    const double gamma = rng.uniform(0.05, 3.0);
    const double alpha = rng.uniform(0.1, 3.0);
    const Vector conj = glearn::prox_log_barrier_conjugate(Vector::Constant(1, y), gamma, alpha);
    const Vector primal =
        glearn::prox_log_barrier(Vector::Constant(1, y / gamma), 1.0 / gamma, alpha);
    const double residual = std::abs(conj[0] + gamma * primal[0] - y);
    require(residual <= 1e-12, "Moreau residual " + fmt(residual));
  }
}

void check_gradient() {
  oracle::TestRng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(3, 6);
    const IglProblem problem = random_problem(n, rng, true);
    IglParams params;
    params.alpha = rng.uniform(0.2, 2.0);
    params.beta = rng.uniform(0.05, 1.0);
    params.upsilon = rng.uniform(0.05, 2.0);

    const int edges = n * (n - 1) / 2;
    const Vector w = oracle::random_edge_vector(n, rng, 0.2, 1.5);
    const Vector grad = glearn::grad_smooth_term(w, problem, params);
    const Vector fd = oracle::central_difference(
        [&](const Vector& u) {
          double value = params.beta * u.squaredNorm();
          value += params.upsilon *
                   (problem.mask.array() * u.array() - problem.w_prior.array()).matrix().squaredNorm();
          return value;
        },
        w);
    for (int e = 0; e < edges; ++e) {
      const double scale = std::max(1.0, std::abs(fd[e]));
      require(std::abs(grad[e] - fd[e]) / scale <= 1e-6,
              "gradient component off by " + fmt(std::abs(grad[e] - fd[e]) / scale));
    }
  }
}

void check_solver_optimum() {
  oracle::TestRng rng(23);
  for (const int n : {3, 4}) {
    const IglProblem problem = random_problem(n, rng, true);
    IglParams params;
    params.alpha = 1.0;
    params.beta = 0.2;
    params.upsilon = 0.5;
    params.eps0 = 1e-12;
    params.k_max = 400000;

    const IglResult result = glearn::solve_igl(problem, params);
    const double solver_obj = glearn::igl_objective(result.w.weights, problem, params);

    const Vector reference = oracle::projected_gradient_reference(
        n, problem.z, params.alpha, params.beta, params.upsilon, problem.mask, problem.w_prior,
        1000000);
    const double reference_obj =
        oracle::edge_objective(reference, oracle::degree_matrix(n), problem.z, params.alpha,
                               params.beta, params.upsilon, problem.mask, problem.w_prior);
    require(solver_obj <= reference_obj + 1e-3 * std::abs(reference_obj),
            "n=" + std::to_string(n) + " solver objective " + fmt(solver_obj) +
                " vs reference " + fmt(reference_obj));
    require(rel_gap(solver_obj, reference_obj) <= 1e-3,
            "n=" + std::to_string(n) + " objective gap " + fmt(rel_gap(solver_obj, reference_obj)));

    if (n == 3) {
      const Vector grid = oracle::grid_search_n3(problem.z, params.alpha, params.beta,
                                                 params.upsilon, problem.mask, problem.w_prior, 3.0);
      const double grid_obj =
          oracle::edge_objective(grid, oracle::degree_matrix(3), problem.z, params.alpha,
                                 params.beta, params.upsilon, problem.mask, problem.w_prior);
      require(rel_gap(solver_obj, grid_obj) <= 1e-3,
              "grid-search gap " + fmt(rel_gap(solver_obj, grid_obj)));
    }
  }
}

void check_zero_upsilon_reduction() {
  oracle::TestRng rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.integer(4, 7);
    IglProblem with_prior = random_problem(n, rng, true);
    IglProblem without = with_prior;
    without.mask = Vector();
    without.w_prior = Vector();

    IglParams params;
    params.alpha = 1.0;
    params.beta = 0.3;
    params.upsilon = 0.0;
    params.k_max = 4000;

    const IglResult a = glearn::solve_igl(with_prior, params);
    const IglResult b = glearn::solve_igl(without, params);
    require(a.w.weights.size() == b.w.weights.size(), "size mismatch");
    for (int e = 0; e < a.w.weights.size(); ++e) {
      require(a.w.weights[e] == b.w.weights[e],
              "trial " + std::to_string(trial) + ": edge " + std::to_string(e) + " differs");
    }
  }
}

void check_penalty_limit() {
  oracle::TestRng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = rng.integer(4, 6);
    const IglProblem problem = random_problem(n, rng, true);
    IglParams params;
    params.alpha = 1.0;
    params.beta = 0.2;
    params.upsilon = 1000.0;
    params.eps0 = 1e-10;
    params.k_max = 200000;

    const IglResult result = glearn::solve_igl(problem, params);
    double worst = 0.0;
    for (int e = 0; e < problem.mask.size(); ++e) {
      if (problem.mask[e] == 1.0) {
        worst = std::max(worst, std::abs(result.w.weights[e] - problem.w_prior[e]));
      }
    }
    require(worst <= 1e-2, "masked deviation " + fmt(worst));
  }
}

void check_denoise() {
  // Two-node closed form.
  glearn::SensorGraph pair;
  pair.adjacency = Matrix::Zero(2, 2);
  pair.adjacency(0, 1) = pair.adjacency(1, 0) = 1.0;
  Matrix y(2, 1);
  y << 1.0, 0.0;
  const Matrix x = glearn::denoise(y, glearn::laplacian(pair), 1.0);
  require(std::abs(x(0, 0) - 2.0 / 3.0) <= 1e-12, "two-node value " + fmt(x(0, 0)));
  require(std::abs(x(1, 0) - 1.0 / 3.0) <= 1e-12, "two-node value " + fmt(x(1, 0)));

  oracle::TestRng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.integer(3, 10);
    const Matrix adj = oracle::random_connected_adjacency(n, rng);
    glearn::SensorGraph graph;
    graph.adjacency = adj;
    const Matrix lap = glearn::laplacian(graph);
    const Matrix noisy = oracle::random_matrix(n, 4, rng);
    const double mu = rng.uniform(0.1, 5.0);
    const Matrix restored = glearn::denoise(noisy, lap, mu);
    const Matrix residual =
        (Matrix::Identity(n, n) + mu * lap) * restored - noisy;
    require(residual.norm() / noisy.norm() <= 1e-10,
            "residual " + fmt(residual.norm() / noisy.norm()));
  }
}

void check_impute() {
  oracle::TestRng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.integer(4, 10);
    const Matrix adj = oracle::random_connected_adjacency(n, rng);
    glearn::SensorGraph graph;
    graph.adjacency = adj;
    const Matrix lap = glearn::laplacian(graph);

    const int cols = rng.integer(1, 3);
    const Matrix truth = oracle::random_matrix(n, cols, rng);
    Matrix mask = Matrix::Zero(n, cols);
    for (int c = 0; c < cols; ++c) {
      int observed = 0;
      for (int r = 0; r < n; ++r) {
        if (rng.chance(0.6)) {
          mask(r, c) = 1.0;
          ++observed;
        }
      }
      if (observed == 0) mask(rng.integer(0, n - 1), c) = 1.0;
    }
    const Matrix observed = truth.array() * mask.array();

    glearn::ReconstructionParams params;
    params.tol = 1e-13;
    params.max_iters = 2000000;
    params.record_objective = true;
    const glearn::ImputeResult result = glearn::impute(observed, mask, lap, params);

    const Matrix harmonic = oracle::harmonic_impute(observed, mask, lap);
    require((result.values - harmonic).cwiseAbs().maxCoeff() <= 1e-6,
            "harmonic gap " + fmt((result.values - harmonic).cwiseAbs().maxCoeff()));
    for (int c = 0; c < cols; ++c) {
      for (int r = 0; r < n; ++r) {
        if (mask(r, c) == 1.0) {
          require(result.values(r, c) == observed(r, c), "observed entry moved");
        }
      }
    }
    for (std::size_t k = 1; k < result.objective.size(); ++k) {
      require(result.objective[k] <= result.objective[k - 1] + 1e-12,
              "objective increased at step " + std::to_string(k));
    }
  }
}

void check_operator_algebra() {
  oracle::TestRng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(2, 40);

    const Vector w = oracle::random_edge_vector(n, rng, 0.0, 2.0);
    const Vector d = Vector::NullaryExpr(n, [&](Eigen::Index) { return rng.uniform(-2.0, 2.0); });
    const double lhs = glearn::degree_operator_apply(w, n).dot(d);
    const double rhs = w.dot(glearn::degree_operator_adjoint(d));
    require(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)),
            "adjoint identity residual " + fmt(std::abs(lhs - rhs)));

    const double closed_form = glearn::degree_operator_norm(n);
    require(std::abs(closed_form - std::sqrt(2.0 * (n - 1))) == 0.0, "norm formula");
    if (n <= 12) {
      const Matrix s = glearn::degree_operator_matrix(n);
      const double estimated = std::sqrt(oracle::power_lambda_max(s * s.transpose()));
      require(std::abs(closed_form - estimated) <= 1e-8,
              "norm vs power iteration gap " + fmt(std::abs(closed_form - estimated)));
    }

    glearn::SensorGraph graph;
    graph.adjacency = oracle::random_connected_adjacency(std::min(n, 12), rng);
    const Matrix lap = glearn::laplacian(graph);
    require(glearn::is_valid_laplacian(lap, 1e-12), "Laplacian invariants");
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(lap);
    require(eig.eigenvalues().minCoeff() >= -1e-9,
            "negative eigenvalue " + fmt(eig.eigenvalues().minCoeff()));
  }
}

json load_results(const fs::path& dir) { return json::parse(testproc::slurp(dir / "results.json")); }

double cell_rmse(const json& doc, const std::string& scenario, const std::string& method) {
  for (const auto& cell : doc.at("cells")) {
    if (cell.at("scenario") == scenario && cell.at("method") == method) {
      require(cell.at("ok").get<bool>(), scenario + "/" + method + " failed");
      return cell.at("rmse").get<double>();
    }
  }
  throw Failure("missing cell " + scenario + "/" + method);
}

void check_experiment() {
  g_run1 = g_scratch / "run1";
  const std::string config = std::string(GLEARN_CONFIG_DIR) + "/experiment_default.cfg";
  const auto result =
      testproc::run(GLEARN_CLI_PATH, "compare --experiment '" + config + "' --out run1", g_scratch);
  require(result.exit_code == 0, "compare exited with " + std::to_string(result.exit_code) +
                                     ": " + result.err.substr(0, 400));

  const json doc = load_results(g_run1);
  require(doc.at("cells").size() == 20, "expected 20 cells");
  for (const auto& cell : doc.at("cells")) {
    require(cell.at("ok").get<bool>(), "cell failed: " + cell.dump());
    require(cell.at("rmse").get<double>() >= cell.at("mae").get<double>() - 1e-12,
            "rmse < mae in " + cell.dump());
  }

  const std::vector<std::string> densities = {"Imputation (rho=0.3)", "Imputation (rho=0.5)",
                                              "Imputation (rho=0.7)", "Imputation (rho=0.9)"};
  for (const std::string method : {"lap-smooth", "adj-smooth", "igl"}) {
    for (std::size_t k = 1; k < densities.size(); ++k) {
      const double before = cell_rmse(doc, densities[k - 1], method);
      const double after = cell_rmse(doc, densities[k], method);
      require(after <= before, method + " error rose from " + densities[k - 1] + " (" +
                                   fmt(before) + ") to " + densities[k] + " (" + fmt(after) + ")");
    }
  }

  for (const std::string scenario : {"Imputation (rho=0.7)", "Imputation (rho=0.9)"}) {
    const double igl = cell_rmse(doc, scenario, "igl");
    const double adj = cell_rmse(doc, scenario, "adj-smooth");
    require(igl <= adj,
            scenario + ": igl " + fmt(igl) + " should not exceed adj-smooth " + fmt(adj));
  }
}

void check_determinism() {
  require(fs::exists(g_run1 / "results.json"), "end-to-end run must come first");

  // Numeric kernels: identical bytes on identical seeded inputs.
  oracle::TestRng rng(23);
  const IglProblem problem = random_problem(3, rng, true);
  IglParams params;
  params.alpha = 1.0;
  params.beta = 0.2;
  params.upsilon = 0.5;
  params.eps0 = 1e-12;
  params.k_max = 400000;
  const IglResult first = glearn::solve_igl(problem, params);
  const IglResult second = glearn::solve_igl(problem, params);
  for (int e = 0; e < first.w.weights.size(); ++e) {
    require(first.w.weights[e] == second.w.weights[e], "solver rerun differs");
  }

  const std::string config = std::string(GLEARN_CONFIG_DIR) + "/experiment_default.cfg";
  const auto rerun =
      testproc::run(GLEARN_CLI_PATH, "compare --experiment '" + config + "' --out run2", g_scratch);
  require(rerun.exit_code == 0, "second compare exited with " + std::to_string(rerun.exit_code));

  // Manifests carry timestamps; every data artifact must match exactly.
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(g_run1)) {
    const std::string name = entry.path().filename().string();
    if (name == "manifest.json") continue;
    const std::string a = testproc::slurp(entry.path());
    const std::string b = testproc::slurp(g_scratch / "run2" / name);
    require(!a.empty(), name + " is empty");
    require(a == b, name + " differs between reruns");
    ++compared;
  }
  require(compared >= 4, "expected results, table, heatmap, and graph files");
}

struct Criterion {
  std::string name;
  std::function<void()> body;
};

}  // namespace

int main() {
  g_scratch = testproc::make_temp_dir("glearn_acceptance");

  const std::vector<Criterion> criteria = {
      {"prox operators match brute-force minimizers", check_prox_bruteforce},
      {"smooth-term gradient matches finite differences", check_gradient},
      {"solver reaches the reference optimum", check_solver_optimum},
      {"zero fidelity weight reduces to plain smoothness learning", check_zero_upsilon_reduction},
      {"large fidelity weight pins masked edges to the prior", check_penalty_limit},
      {"denoising solves its linear system", check_denoise},
      {"imputation matches the harmonic oracle", check_impute},
      {"degree operator and Laplacian algebra hold", check_operator_algebra},
      {"bundled comparison experiment reproduces the expected trends", check_experiment},
      {"reruns are byte-identical", check_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      criteria[i].body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%2zu] %-60s %s (%.2f s)\n", i + 1, criteria[i].name.c_str(),
                error.empty() ? "PASS" : "FAIL", seconds);
    if (!error.empty()) {
      std::printf("     %s\n", error.c_str());
      ++failures;
    }
  }

  std::error_code ec;
  fs::remove_all(g_scratch, ec);

  if (failures == 0) {
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
    return 0;
  }
  std::printf("%d of %zu acceptance criteria failed\n", failures, criteria.size());
  return 1;
}
