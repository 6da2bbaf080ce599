#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "glearn/dataset.hpp"
#include "glearn/graph.hpp"
#include "glearn/physics.hpp"
#include "glearn/types.hpp"

namespace glearn {

/// Experiment matrix: graph-learning methods evaluated on denoising and
/// imputation scenarios, with hyperparameters chosen by contiguous k-fold
/// cross-validation on training denoising error.

enum class Method { physics, lap_smooth, adj_smooth, igl };

const char* to_string(Method m);
Method method_from_string(const std::string& s);

/// How pairwise distances are scaled before learning: raw sum over
/// snapshots, or its mean (divides by the snapshot count, which keeps the
/// weight of the data term independent of the training-window length).
enum class ZScaling { sum, mean };

struct CvGrid {
  std::vector<double> alpha{1.0};
  std::vector<double> beta{0.1, 0.2, 0.4, 0.8};
  std::vector<double> upsilon{0.1, 0.2, 0.4, 0.8};
  std::vector<double> mu{0.1, 0.5, 1.0, 5.0};
};

/// One grid point. `beta` doubles as the lap-smooth regularizer weight;
/// fields a method does not use stay at 0.
struct HyperParams {
  double alpha = 0.0;
  double beta = 0.0;
  double upsilon = 0.0;
  double mu = 1.0;
};

struct ExperimentSpec {
  std::vector<Method> methods{Method::physics, Method::lap_smooth, Method::adj_smooth,
                              Method::igl};
  double denoise_sigma = 0.3;
  std::vector<double> rhos{0.3, 0.5, 0.7, 0.9};
  int cv_folds = 5;
  CvGrid grid;
  std::uint64_t seed = 7;
  ZScaling z_scaling = ZScaling::mean;
  bool metrics_physical = true;          ///< report in denormalized units
  bool impute_metrics_missing_only = false;
  bool normalize_graphs = true;          ///< max-rescale + threshold learned graphs
  double graph_threshold = 0.1;
  double prior_threshold = 0.1;
  double eps0 = 1e-5;
  int k_max = 20000;
  double impute_tol = 1e-8;
  int impute_max_iters = 50000;

  void validate() const;
};

struct CvChoice {
  HyperParams params;
  double mean_rmse = 0.0;
};

/// Exhaustive grid search; the graph is relearned per fold and reused
/// across the mu sweep.
CvChoice cross_validate(const Dataset& data, Method method, const ExperimentSpec& spec,
                        const PriorGraph* prior);

/// Learns one graph on the full noisy training data (physics returns the
/// prior unchanged).
SensorGraph learn_graph(Method method, const Dataset& data, const HyperParams& hp,
                        const ExperimentSpec& spec, const PriorGraph* prior);

struct CellResult {
  std::string scenario;
  Method method = Method::physics;
  bool ok = false;
  double rmse = 0.0;
  double mae = 0.0;
  std::string error;  ///< set when !ok; the run continues past failures
};

struct ExperimentResult {
  std::vector<std::string> scenarios;
  std::vector<Method> methods;
  std::vector<CellResult> cells;  ///< scenario-major, method order within
  std::map<Method, CvChoice> chosen;
  std::map<Method, SensorGraph> graphs;
  Matrix heatmap;  ///< |W_igl - W_adj_smooth|; empty unless both learned
  std::vector<std::string> warnings;

  const CellResult* find(const std::string& scenario, Method method) const;
};

ExperimentResult run_experiment(const ExperimentSpec& spec, const Dataset& data,
                                const PriorGraph& prior);

/// Aligned text table, one scenario block per row pair (RMSE/MAE), best
/// method per row starred when more than one method ran.
std::string format_results_text(const ExperimentResult& result);

/// One machine-readable record per cell plus chosen hyperparameters.
void write_results_json(const std::filesystem::path& path, const ExperimentResult& result);

}  // namespace glearn
