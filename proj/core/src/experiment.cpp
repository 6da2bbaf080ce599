#include "glearn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <tuple>

#include <json.hpp>

#include "glearn/csv_io.hpp"
#include "glearn/distances.hpp"
#include "glearn/errors.hpp"
#include "glearn/igl.hpp"
#include "glearn/lap_smooth.hpp"
#include "glearn/metrics.hpp"
#include "glearn/reconstruction.hpp"
#include "glearn/rng.hpp"
#include "glearn/version.hpp"

namespace glearn {

const char* to_string(Method m) {
  switch (m) {
    case Method::physics: return "physics";
    case Method::lap_smooth: return "lap-smooth";
    case Method::adj_smooth: return "adj-smooth";
    case Method::igl: return "igl";
  }
  return "unknown";
}

Method method_from_string(const std::string& s) {
  if (s == "physics") return Method::physics;
  if (s == "lap-smooth") return Method::lap_smooth;
  if (s == "adj-smooth") return Method::adj_smooth;
  if (s == "igl") return Method::igl;
  throw ConfigError("unknown method '" + s +
                    "' (expected physics, lap-smooth, adj-smooth, or igl)");
}

void ExperimentSpec::validate() const {
  if (methods.empty()) throw ConfigError("experiment: no methods selected");
  for (std::size_t i = 0; i < methods.size(); ++i) {
    for (std::size_t j = i + 1; j < methods.size(); ++j) {
      if (methods[i] == methods[j]) {
        throw ConfigError(std::string("experiment: method '") + to_string(methods[i]) +
                          "' listed twice");
      }
    }
  }
  if (!(denoise_sigma >= 0.0)) throw ConfigError("experiment: denoise_sigma must be >= 0");
  for (double rho : rhos) {
    if (!(rho > 0.0) || !(rho <= 1.0)) {
      throw ConfigError("experiment: rhos must lie in (0, 1], got " + std::to_string(rho));
    }
  }
  if (cv_folds < 2) throw ConfigError("experiment: cv_folds must be at least 2");
  if (grid.alpha.empty() || grid.beta.empty() || grid.upsilon.empty() || grid.mu.empty()) {
    throw ConfigError("experiment: cv grid lists must be non-empty");
  }
  for (double a : grid.alpha) {
    if (!(a > 0.0)) throw ConfigError("experiment: grid alpha values must be positive");
  }
  for (double b : grid.beta) {
    if (!(b >= 0.0)) throw ConfigError("experiment: grid beta values must be nonnegative");
  }
  for (double u : grid.upsilon) {
    if (!(u >= 0.0)) throw ConfigError("experiment: grid upsilon values must be nonnegative");
  }
  for (double m : grid.mu) {
    if (!(m > 0.0)) throw ConfigError("experiment: grid mu values must be positive");
  }
  if (!(graph_threshold >= 0.0) || !(prior_threshold >= 0.0)) {
    throw ConfigError("experiment: thresholds must be nonnegative");
  }
  if (!(eps0 > 0.0) || k_max < 1) throw ConfigError("experiment: bad solver limits");
  if (!(impute_tol > 0.0) || impute_max_iters < 1) {
    throw ConfigError("experiment: bad imputation limits");
  }
}

namespace {

/// Contiguous fold boundaries: fold f covers [f*m/k, (f+1)*m/k).
std::vector<std::pair<Index, Index>> fold_ranges(Index columns, int folds) {
  if (columns < folds) {
    throw DataError("cross-validation: " + std::to_string(columns) + " snapshots for " +
                    std::to_string(folds) + " folds");
  }
  std::vector<std::pair<Index, Index>> ranges;
  for (int f = 0; f < folds; ++f) {
    const Index begin = columns * f / folds;
    const Index end = columns * (f + 1) / folds;
    ranges.emplace_back(begin, end);
  }
  return ranges;
}

Matrix drop_columns(const Matrix& m, Index begin, Index end) {
  Matrix out(m.rows(), m.cols() - (end - begin));
  out.leftCols(begin) = m.leftCols(begin);
  out.rightCols(m.cols() - end) = m.rightCols(m.cols() - end);
  return out;
}

Vector scaled_distances(const Matrix& signals, ZScaling scaling) {
  Vector z = pairwise_distances(signals);
  if (scaling == ZScaling::mean && signals.cols() > 0) {
    z /= static_cast<double>(signals.cols());
  }
  return z;
}

double scored_rmse(const Matrix& estimate, const Matrix& reference, const Dataset& data,
                   bool physical) {
  if (!physical) return rmse(estimate, reference);
  return rmse(denormalize(estimate, data.stats, data.labels),
              denormalize(reference, data.stats, data.labels));
}

SensorGraph learn_from_distances(Method method, const Vector& z, int nodes,
                                 const HyperParams& hp, const ExperimentSpec& spec,
                                 const PriorGraph* prior) {
  switch (method) {
    case Method::physics: {
      if (prior == nullptr) throw ConfigError("physics method requires a prior graph");
      return prior->w_pi;
    }
    case Method::lap_smooth: {
      LapSmoothParams params;
      params.beta1 = hp.beta;
      EdgeWeightVector w = solve_lap_smooth(nodes, z, params).w;
      if (spec.normalize_graphs) w = normalize_and_threshold(std::move(w), spec.graph_threshold);
      return vector_to_adjacency(w);
    }
    case Method::adj_smooth:
    case Method::igl: {
      IglParams params;
      params.alpha = hp.alpha;
      params.beta = hp.beta;
      params.upsilon = method == Method::igl ? hp.upsilon : 0.0;
      params.eps0 = spec.eps0;
      params.k_max = spec.k_max;
      params.normalize_output = spec.normalize_graphs;
      params.output_threshold = spec.graph_threshold;
      params.record_objective = false;
      const PriorGraph* used_prior = method == Method::igl ? prior : nullptr;
      if (method == Method::igl && prior == nullptr) {
        throw ConfigError("igl method requires a prior graph");
      }
      return vector_to_adjacency(solve_igl(nodes, z, params, used_prior).w);
    }
  }
  throw ConfigError("unknown method");
}

/// (alpha, beta, upsilon) combinations a method actually distinguishes.
std::vector<HyperParams> graph_combos(Method method, const CvGrid& grid) {
  std::vector<HyperParams> combos;
  switch (method) {
    case Method::physics:
      combos.push_back({});
      break;
    case Method::lap_smooth:
      for (double b : grid.beta) combos.push_back({0.0, b, 0.0, 1.0});
      break;
    case Method::adj_smooth:
      for (double a : grid.alpha) {
        for (double b : grid.beta) combos.push_back({a, b, 0.0, 1.0});
      }
      break;
    case Method::igl:
      for (double a : grid.alpha) {
        for (double b : grid.beta) {
          for (double u : grid.upsilon) combos.push_back({a, b, u, 1.0});
        }
      }
      break;
  }
  return combos;
}

/// Tie-break order: smaller (upsilon, beta, mu, alpha) wins.
std::tuple<double, double, double, double> tie_key(const HyperParams& hp) {
  return {hp.upsilon, hp.beta, hp.mu, hp.alpha};
}

}  // namespace

CvChoice cross_validate(const Dataset& data, Method method, const ExperimentSpec& spec,
                        const PriorGraph* prior) {
  spec.validate();
  const int nodes = static_cast<int>(data.train_noisy.rows());
  const auto folds = fold_ranges(data.train_noisy.cols(), spec.cv_folds);

  // Distances depend only on the fold split, not the grid point.
  std::vector<Vector> fold_z;
  fold_z.reserve(folds.size());
  for (const auto& [begin, end] : folds) {
    fold_z.push_back(scaled_distances(drop_columns(data.train_noisy, begin, end),
                                      spec.z_scaling));
  }

  bool have_best = false;
  CvChoice best;
  for (const HyperParams& combo : graph_combos(method, spec.grid)) {
    std::vector<double> mu_error(spec.grid.mu.size(), 0.0);
    for (std::size_t f = 0; f < folds.size(); ++f) {
      const auto [begin, end] = folds[f];
      const SensorGraph graph =
          learn_from_distances(method, fold_z[f], nodes, combo, spec, prior);
      const Matrix lap = laplacian(graph);
      const Matrix held_noisy = data.train_noisy.middleCols(begin, end - begin);
      const Matrix held_clean = data.train_clean.middleCols(begin, end - begin);
      for (std::size_t m = 0; m < spec.grid.mu.size(); ++m) {
        const Matrix estimate = denoise(held_noisy, lap, spec.grid.mu[m]);
        mu_error[m] += scored_rmse(estimate, held_clean, data, spec.metrics_physical);
      }
    }
    for (std::size_t m = 0; m < spec.grid.mu.size(); ++m) {
      HyperParams hp = combo;
      hp.mu = spec.grid.mu[m];
      const double mean_rmse = mu_error[m] / static_cast<double>(folds.size());
      const bool better =
          !have_best || mean_rmse < best.mean_rmse ||
          (mean_rmse == best.mean_rmse && tie_key(hp) < tie_key(best.params));
      if (better) {
        best = CvChoice{hp, mean_rmse};
        have_best = true;
      }
    }
  }
  return best;
}

SensorGraph learn_graph(Method method, const Dataset& data, const HyperParams& hp,
                        const ExperimentSpec& spec, const PriorGraph* prior) {
  const int nodes = static_cast<int>(data.train_noisy.rows());
  const Vector z = scaled_distances(data.train_noisy, spec.z_scaling);
  SensorGraph graph = learn_from_distances(method, z, nodes, hp, spec, prior);
  graph.labels = data.labels;
  return graph;
}

const CellResult* ExperimentResult::find(const std::string& scenario, Method method) const {
  for (const CellResult& cell : cells) {
    if (cell.scenario == scenario && cell.method == method) return &cell;
  }
  return nullptr;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const Dataset& data,
                                const PriorGraph& prior) {
  spec.validate();
  if (prior.w_pi.size() != data.train_noisy.rows()) {
    throw DataError("experiment: prior has " + std::to_string(prior.w_pi.size()) +
                    " nodes but data has " + std::to_string(data.train_noisy.rows()) + " rows");
  }

  ExperimentResult result;
  result.methods = spec.methods;
  result.warnings = prior.warnings;

  // Hyperparameter selection and one final graph per method. A method
  // that fails here is reported in every cell but does not stop the run.
  std::map<Method, std::string> method_error;
  for (Method method : spec.methods) {
    try {
      const CvChoice choice = cross_validate(data, method, spec, &prior);
      result.chosen[method] = choice;
      result.graphs[method] = learn_graph(method, data, choice.params, spec, &prior);
    } catch (const std::exception& e) {
      method_error[method] = e.what();
    }
  }

  result.scenarios.push_back("Denoising (sigma=" + format_double(spec.denoise_sigma) + ")");
  for (double rho : spec.rhos) {
    result.scenarios.push_back("Imputation (rho=" + format_double(rho) + ")");
  }

  const Matrix test_noisy =
      add_noise(data.test, spec.denoise_sigma, mix_seed(spec.seed, 100));
  std::vector<Matrix> masks;
  for (std::size_t r = 0; r < spec.rhos.size(); ++r) {
    masks.push_back(make_mask(data.test.rows(), data.test.cols(), spec.rhos[r],
                              mix_seed(spec.seed, 200 + r)));
  }

  for (std::size_t s = 0; s < result.scenarios.size(); ++s) {
    for (Method method : spec.methods) {
      CellResult cell;
      cell.scenario = result.scenarios[s];
      cell.method = method;
      if (method_error.count(method) != 0) {
        cell.error = method_error[method];
        result.cells.push_back(std::move(cell));
        continue;
      }
      try {
        const Matrix lap = laplacian(result.graphs.at(method));
        const double mu = result.chosen.at(method).params.mu;
        Matrix estimate;
        const Matrix* mask = nullptr;
        if (s == 0) {
          estimate = denoise(test_noisy, lap, mu);
        } else {
          mask = &masks[s - 1];
          ReconstructionParams params;
          params.tol = spec.impute_tol;
          params.max_iters = spec.impute_max_iters;
          ImputeResult imputed = impute(mask->cwiseProduct(data.test), *mask, lap, params);
          for (std::string& w : imputed.warnings) {
            result.warnings.push_back(cell.scenario + " " + to_string(method) + ": " + w);
          }
          estimate = std::move(imputed.values);
        }
        if (spec.impute_metrics_missing_only && mask != nullptr) {
          Matrix est = estimate;
          Matrix ref = data.test;
          if (spec.metrics_physical) {
            est = denormalize(est, data.stats, data.labels);
            ref = denormalize(ref, data.stats, data.labels);
          }
          cell.rmse = rmse_unobserved(est, ref, *mask);
          cell.mae = mae_unobserved(est, ref, *mask);
        } else {
          Matrix est = estimate;
          Matrix ref = data.test;
          if (spec.metrics_physical) {
            est = denormalize(est, data.stats, data.labels);
            ref = denormalize(ref, data.stats, data.labels);
          }
          cell.rmse = rmse(est, ref);
          cell.mae = mae(est, ref);
        }
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      result.cells.push_back(std::move(cell));
    }
  }

  if (result.graphs.count(Method::igl) != 0 && result.graphs.count(Method::adj_smooth) != 0) {
    result.heatmap = (result.graphs.at(Method::igl).adjacency -
                      result.graphs.at(Method::adj_smooth).adjacency)
                         .cwiseAbs();
  }
  return result;
}

std::string format_results_text(const ExperimentResult& result) {
  const bool mark_best = result.methods.size() > 1;

  std::vector<std::size_t> widths;
  for (Method method : result.methods) {
    widths.push_back(std::max<std::size_t>(std::string(to_string(method)).size() + 1, 10));
  }
  std::size_t scenario_width = std::string("Scenario").size();
  for (const std::string& s : result.scenarios) {
    scenario_width = std::max(scenario_width, s.size());
  }

  const auto cell_text = [&](const std::string& scenario, Method method, bool use_rmse,
                             bool best) {
    const CellResult* cell = result.find(scenario, method);
    if (cell == nullptr || !cell->ok) return std::string("failed");
    char buffer[48];
    std::snprintf(buffer, sizeof buffer, "%s%.6f", best ? "*" : "",
                  use_rmse ? cell->rmse : cell->mae);
    return std::string(buffer);
  };

  std::string text;
  const auto pad = [&](const std::string& s, std::size_t width) {
    text.append(width > s.size() ? width - s.size() : 0, ' ');
    text += s;
  };

  pad("Scenario", scenario_width);
  text += "  Metric";
  for (std::size_t m = 0; m < result.methods.size(); ++m) {
    text += "  ";
    pad(to_string(result.methods[m]), widths[m]);
  }
  text += '\n';
  text.append(scenario_width + 8 +
                  std::accumulate(widths.begin(), widths.end(), std::size_t{0}) +
                  2 * widths.size(),
              '-');
  text += '\n';

  for (const std::string& scenario : result.scenarios) {
    for (const bool use_rmse : {true, false}) {
      Method best_method = Method::physics;
      double best_value = 0.0;
      bool have_best = false;
      if (mark_best) {
        for (Method method : result.methods) {
          const CellResult* cell = result.find(scenario, method);
          if (cell == nullptr || !cell->ok) continue;
          const double value = use_rmse ? cell->rmse : cell->mae;
          if (!have_best || value < best_value) {
            best_method = method;
            best_value = value;
            have_best = true;
          }
        }
      }
      pad(use_rmse ? scenario : "", scenario_width);
      text += use_rmse ? "    RMSE" : "     MAE";
      for (std::size_t m = 0; m < result.methods.size(); ++m) {
        text += "  ";
        pad(cell_text(scenario, result.methods[m], use_rmse,
                      have_best && result.methods[m] == best_method),
            widths[m]);
      }
      text += '\n';
    }
  }
  return text;
}

void write_results_json(const std::filesystem::path& path, const ExperimentResult& result) {
  nlohmann::ordered_json doc;
  doc["tool"] = std::string("glearn ") + version();

  doc["methods"] = nlohmann::ordered_json::array();
  for (Method method : result.methods) doc["methods"].push_back(to_string(method));

  doc["chosen_hyperparameters"] = nlohmann::ordered_json::object();
  for (const auto& [method, choice] : result.chosen) {
    doc["chosen_hyperparameters"][to_string(method)] = {{"alpha", choice.params.alpha},
                                                        {"beta", choice.params.beta},
                                                        {"upsilon", choice.params.upsilon},
                                                        {"mu", choice.params.mu},
                                                        {"cv_rmse", choice.mean_rmse}};
  }

  doc["scenarios"] = result.scenarios;
  doc["cells"] = nlohmann::ordered_json::array();
  for (const CellResult& cell : result.cells) {
    nlohmann::ordered_json record{{"scenario", cell.scenario},
                                  {"method", to_string(cell.method)},
                                  {"ok", cell.ok}};
    if (cell.ok) {
      record["rmse"] = cell.rmse;
      record["mae"] = cell.mae;
    } else {
      record["error"] = cell.error;
    }
    doc["cells"].push_back(std::move(record));
  }
  doc["warnings"] = result.warnings;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

}  // namespace glearn
