#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "glearn/config_io.hpp"
#include "glearn/csv_io.hpp"
#include "glearn/dataset.hpp"
#include "glearn/distances.hpp"
#include "glearn/errors.hpp"
#include "glearn/experiment.hpp"
#include "glearn/graph.hpp"
#include "glearn/igl.hpp"
#include "glearn/lap_smooth.hpp"
#include "glearn/metrics.hpp"
#include "glearn/physics.hpp"
#include "glearn/reconstruction.hpp"
#include "glearn/version.hpp"
#include "manifest.hpp"
#include "staging.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace glearn;
using cli::OutputStager;
using cli::RunManifest;

namespace {

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
}

void require_finite(const Matrix& x, const std::string& source) {
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      if (!std::isfinite(x(i, j))) {
        throw DataError(source + ": non-finite value at row " + std::to_string(i) + ", column " +
                        std::to_string(j));
      }
    }
  }
}

Matrix read_signal_checked(const std::string& path) {
  Matrix x = read_signal_csv(path);
  require_finite(x, path);
  return x;
}

Vector scaled_distances(const Matrix& x, ZScaling scaling) {
  Vector z = pairwise_distances(x);
  if (scaling == ZScaling::mean && x.cols() > 0) z /= static_cast<double>(x.cols());
  return z;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  return out;
}

const char* to_string(ZScaling s) { return s == ZScaling::mean ? "mean" : "sum"; }

/// Non-positive values select the run-time default in the solver params.
ordered_json auto_or(double configured) {
  if (configured <= 0.0) return "auto";
  return configured;
}

ordered_json load_profile_json(const LoadProfileParams& p) {
  ordered_json j;
  j["base"] = p.base;
  j["seasonal_amplitude"] = p.seasonal_amplitude;
  j["daily_amplitude"] = p.daily_amplitude;
  j["ar_coeff"] = p.ar_coeff;
  j["ar_sigma"] = p.ar_sigma;
  j["min_load"] = p.min_load;
  j["max_load"] = p.max_load;
  j["samples_per_day"] = p.samples_per_day;
  j["samples_per_year"] = p.samples_per_year;
  return j;
}

/// The full topology is echoed as an output file; the manifest carries
/// only its shape.
ordered_json generation_json(const GenerationConfig& c) {
  ordered_json j;
  j["topology"] = {{"pressure_nodes", c.topology.pressure_nodes.size()},
                   {"temperature_nodes", c.topology.temperature_nodes.size()},
                   {"pressure_pipes", c.topology.pressure_pipes.size()},
                   {"temperature_pipes", c.topology.temperature_pipes.size()}};
  j["n_samples"] = c.n_samples;
  j["train_size"] = c.train_size;
  j["source_pressure_bar"] = c.source_pressure_bar;
  j["source_temperature_c"] = c.source_temperature_c;
  j["noise_sigma_train"] = c.noise_sigma_train;
  j["noise_in_physical_units"] = c.noise_in_physical_units;
  j["load_profile"] = load_profile_json(c.load_profile);
  return j;
}

ordered_json spec_json(const ExperimentSpec& spec) {
  ordered_json j;
  ordered_json methods = ordered_json::array();
  for (Method m : spec.methods) methods.push_back(to_string(m));
  j["methods"] = std::move(methods);
  j["denoise_sigma"] = spec.denoise_sigma;
  j["rhos"] = spec.rhos;
  j["cv_folds"] = spec.cv_folds;
  j["cv_alpha"] = spec.grid.alpha;
  j["cv_beta"] = spec.grid.beta;
  j["cv_upsilon"] = spec.grid.upsilon;
  j["cv_mu"] = spec.grid.mu;
  j["z_scaling"] = to_string(spec.z_scaling);
  j["metrics_units"] = spec.metrics_physical ? "physical" : "normalized";
  j["impute_metrics"] = spec.impute_metrics_missing_only ? "missing" : "all";
  j["normalize_graphs"] = spec.normalize_graphs;
  j["graph_threshold"] = spec.graph_threshold;
  j["prior_threshold"] = spec.prior_threshold;
  j["eps0"] = spec.eps0;
  j["k_max"] = spec.k_max;
  j["impute_tol"] = spec.impute_tol;
  j["impute_max_iters"] = spec.impute_max_iters;
  return j;
}

int edge_count_of(const SensorGraph& g) {
  int edges = 0;
  for (Index i = 0; i < g.adjacency.rows(); ++i) {
    for (Index j = i + 1; j < g.adjacency.cols(); ++j) {
      if (g.adjacency(i, j) != 0.0) ++edges;
    }
  }
  return edges;
}

void write_trace_csv(const fs::path& path, const SolverTrace& trace) {
  std::ofstream out = open_output(path);
  out << "iteration,objective,rel_change_w,rel_change_d\n";
  for (std::size_t k = 0; k < trace.rel_change_w.size(); ++k) {
    out << (k + 1) << ',' << format_double(trace.objective[k]) << ','
        << format_double(trace.rel_change_w[k]) << ',' << format_double(trace.rel_change_d[k])
        << '\n';
  }
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

// ---- generate ----

struct GenerateOptions {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void run_generate(const GenerateOptions& opt) {
  RunManifest manifest("generate");
  GenerationConfig config;
  if (opt.config_path.empty()) {
    config = default_generation_config();
  } else {
    config = load_generation_config(opt.config_path);
    manifest.add_input(opt.config_path);
  }
  if (opt.seed_set) config.seed = opt.seed;

  const Dataset data = generate(config);
  print_warnings(data.warnings);

  const fs::path dir(opt.out_dir);
  fs::create_directories(dir);
  OutputStager stager;
  write_signal_csv(stager.stage(dir / "train_clean.csv"), data.train_clean);
  write_signal_csv(stager.stage(dir / "train_noisy.csv"), data.train_noisy);
  write_signal_csv(stager.stage(dir / "test.csv"), data.test);
  write_norm_stats_csv(stager.stage(dir / "norm_stats.csv"), data.stats);
  write_labels_csv(stager.stage(dir / "labels.csv"), data.labels);
  save_topology(stager.stage(dir / "topology.cfg"), config.topology);

  manifest.set_seed(config.seed);
  manifest.set_config("config_file",
                      opt.config_path.empty() ? ordered_json(nullptr) : ordered_json(opt.config_path));
  manifest.set_config("generation", generation_json(config));
  manifest.stage(stager, dir / "manifest.json");
  stager.commit();

  std::cout << "wrote dataset to " << dir.string() << " (" << data.train_clean.rows()
            << " nodes, " << data.train_clean.cols() << " train + " << data.test.cols()
            << " test snapshots)\n";
}

// ---- learn ----

struct LearnOptions {
  std::string method;
  std::string data_path;
  std::string topology_path;
  std::string params_path;
  std::string out_path;
  std::string trace_path;
};

void run_learn(const LearnOptions& opt) {
  const Method method = method_from_string(opt.method);
  const bool uses_data = method != Method::physics;
  const bool uses_prior = method == Method::physics || method == Method::igl;
  const bool fbf_solver = method == Method::adj_smooth || method == Method::igl;

  if (uses_prior && opt.topology_path.empty()) {
    throw ConfigError(std::string("method ") + to_string(method) + " requires --topology");
  }
  if (uses_data && opt.data_path.empty()) {
    throw ConfigError(std::string("method ") + to_string(method) + " requires --data");
  }
  if (!uses_data && !opt.data_path.empty()) {
    throw ConfigError("the physics method takes no --data");
  }
  if (!opt.trace_path.empty() && !fbf_solver) {
    throw ConfigError("--trace is only available for the adj-smooth and igl methods");
  }

  const LearnParams params =
      opt.params_path.empty() ? default_learn_params() : load_learn_params(opt.params_path);

  RunManifest manifest("learn");
  if (!opt.data_path.empty()) manifest.add_input(opt.data_path);
  if (!opt.topology_path.empty()) manifest.add_input(opt.topology_path);
  if (!opt.params_path.empty()) manifest.add_input(opt.params_path);

  NetworkTopology topo;
  const bool have_topo = !opt.topology_path.empty();
  if (have_topo) topo = load_topology(opt.topology_path);

  Matrix x;
  Vector z;
  int n = have_topo ? topo.node_count() : 0;
  if (uses_data) {
    x = read_signal_checked(opt.data_path);
    if (x.rows() < 2) {
      throw DataError("graph learning needs at least 2 nodes, got " + std::to_string(x.rows()));
    }
    if (have_topo && topo.node_count() != x.rows()) {
      throw ConfigError("data has " + std::to_string(x.rows()) + " rows but topology has " +
                        std::to_string(topo.node_count()) + " nodes");
    }
    n = static_cast<int>(x.rows());
    z = scaled_distances(x, params.z_scaling);
  }

  ordered_json config;
  config["method"] = to_string(method);
  OutputStager stager;
  SensorGraph graph;

  switch (method) {
    case Method::physics: {
      const PriorGraph prior = build_prior_graph(topo, params.prior_threshold);
      print_warnings(prior.warnings);
      graph = prior.w_pi;
      config["prior_threshold"] = params.prior_threshold;
      break;
    }
    case Method::lap_smooth: {
      const LapSmoothResult result = solve_lap_smooth(n, z, params.lap);
      EdgeWeightVector w = result.w;
      if (params.igl.normalize_output) {
        w = normalize_and_threshold(std::move(w), params.igl.output_threshold);
      }
      graph = vector_to_adjacency(w, have_topo ? topo.labels() : std::vector<NodeLabel>{});
      config["z_scaling"] = to_string(params.z_scaling);
      config["beta1"] = params.lap.beta1;
      config["pg_step"] = auto_or(params.lap.step);
      config["pg_tol"] = params.lap.tol;
      config["pg_max_iters"] = params.lap.max_iters;
      config["normalize_output"] = params.igl.normalize_output;
      config["output_threshold"] = params.igl.output_threshold;
      manifest.set_result("converged", result.converged);
      manifest.set_result("iterations", result.iterations);
      manifest.set_result("objective", result.objective);
      break;
    }
    case Method::adj_smooth:
    case Method::igl: {
      IglParams igl = params.igl;
      igl.record_objective = true;
      PriorGraph prior;
      const PriorGraph* prior_ptr = nullptr;
      if (method == Method::adj_smooth) {
        igl.upsilon = 0.0;
      } else {
        prior = build_prior_graph(topo, params.prior_threshold);
        print_warnings(prior.warnings);
        prior_ptr = &prior;
      }
      const IglResult result = solve_igl(n, z, igl, prior_ptr);
      graph = vector_to_adjacency(result.w, have_topo ? topo.labels() : std::vector<NodeLabel>{});
      config["z_scaling"] = to_string(params.z_scaling);
      config["alpha"] = igl.alpha;
      config["beta"] = igl.beta;
      config["upsilon"] = igl.upsilon;
      config["gamma"] = auto_or(igl.gamma);
      config["eps0"] = igl.eps0;
      config["k_max"] = igl.k_max;
      config["normalize_output"] = igl.normalize_output;
      config["output_threshold"] = igl.output_threshold;
      if (method == Method::igl) config["prior_threshold"] = params.prior_threshold;
      manifest.set_result("converged", result.trace.converged);
      manifest.set_result("iterations", result.trace.iterations);
      if (!result.trace.objective.empty()) {
        manifest.set_result("objective", result.trace.objective.back());
      }
      if (!opt.trace_path.empty()) {
        write_trace_csv(stager.stage(opt.trace_path), result.trace);
      }
      break;
    }
  }

  write_adjacency_csv(stager.stage(opt.out_path), graph);
  for (const auto& [key, value] : config.items()) manifest.set_config(key, value);
  manifest.stage(stager, opt.out_path + ".manifest.json");
  stager.commit();

  std::cout << to_string(method) << ": " << edge_count_of(graph) << " edges over "
            << graph.size() << " nodes -> " << opt.out_path << '\n';
}

// ---- denoise / impute ----

struct ReconstructOptions {
  std::string graph_path;
  std::string data_path;
  std::string mask_path;
  std::string params_path;
  std::string out_path;
};

std::pair<SensorGraph, Matrix> load_graph_and_data(const ReconstructOptions& opt) {
  SensorGraph graph = read_adjacency_csv(opt.graph_path);
  Matrix data = read_signal_checked(opt.data_path);
  if (graph.size() != data.rows()) {
    throw ConfigError("graph has " + std::to_string(graph.size()) + " nodes but data is " +
                      std::to_string(data.rows()) + "x" + std::to_string(data.cols()));
  }
  return {std::move(graph), std::move(data)};
}

void run_denoise(const ReconstructOptions& opt) {
  const ReconstructionParams params =
      opt.params_path.empty() ? ReconstructionParams{} : load_reconstruction_params(opt.params_path);

  RunManifest manifest("denoise");
  manifest.add_input(opt.graph_path);
  manifest.add_input(opt.data_path);
  if (!opt.params_path.empty()) manifest.add_input(opt.params_path);

  const auto [graph, noisy] = load_graph_and_data(opt);
  const Matrix restored = denoise(noisy, laplacian(graph), params.mu);

  OutputStager stager;
  write_signal_csv(stager.stage(opt.out_path), restored);
  manifest.set_config("mu", params.mu);
  manifest.stage(stager, opt.out_path + ".manifest.json");
  stager.commit();

  std::cout << "denoised " << noisy.rows() << "x" << noisy.cols() << " -> " << opt.out_path
            << '\n';
}

void run_impute(const ReconstructOptions& opt) {
  const ReconstructionParams params =
      opt.params_path.empty() ? ReconstructionParams{} : load_reconstruction_params(opt.params_path);

  RunManifest manifest("impute");
  manifest.add_input(opt.graph_path);
  manifest.add_input(opt.data_path);
  manifest.add_input(opt.mask_path);
  if (!opt.params_path.empty()) manifest.add_input(opt.params_path);

  const auto [graph, observed] = load_graph_and_data(opt);
  const Matrix mask = read_mask_csv(opt.mask_path);
  validate_mask(mask, observed.rows(), observed.cols());

  const ImputeResult result = impute(observed, mask, laplacian(graph), params);
  print_warnings(result.warnings);

  OutputStager stager;
  write_signal_csv(stager.stage(opt.out_path), result.values);
  manifest.set_config("xi", auto_or(params.xi));
  manifest.set_config("tol", params.tol);
  manifest.set_config("max_iters", params.max_iters);
  manifest.set_result("converged", result.converged);
  manifest.set_result("iterations", result.iterations);
  manifest.stage(stager, opt.out_path + ".manifest.json");
  stager.commit();

  std::cout << "imputed " << observed.rows() << "x" << observed.cols() << " ("
            << static_cast<long long>(mask.size() - mask.sum()) << " missing entries) -> "
            << opt.out_path << '\n';
}

// ---- evaluate ----

struct EvaluateOptions {
  std::string estimate_path;
  std::string reference_path;
  std::string stats_path;
  std::string labels_path;
  std::string out_path;
};

void run_evaluate(const EvaluateOptions& opt) {
  if (opt.stats_path.empty() != opt.labels_path.empty()) {
    throw ConfigError("--stats and --labels must be given together");
  }

  RunManifest manifest("evaluate");
  manifest.add_input(opt.estimate_path);
  manifest.add_input(opt.reference_path);

  Matrix estimate = read_signal_checked(opt.estimate_path);
  Matrix reference = read_signal_checked(opt.reference_path);

  const bool physical = !opt.stats_path.empty();
  if (physical) {
    manifest.add_input(opt.stats_path);
    manifest.add_input(opt.labels_path);
    const NormStats stats = read_norm_stats_csv(opt.stats_path);
    const std::vector<NodeLabel> labels = read_labels_csv(opt.labels_path);
    if (static_cast<Index>(labels.size()) != estimate.rows()) {
      throw DataError("labels list " + std::to_string(labels.size()) + " nodes but data has " +
                      std::to_string(estimate.rows()) + " rows");
    }
    estimate = denormalize(estimate, stats, labels);
    reference = denormalize(reference, stats, labels);
  }

  const double rmse_value = rmse(estimate, reference);
  const double mae_value = mae(estimate, reference);

  OutputStager stager;
  {
    std::ofstream out = open_output(stager.stage(opt.out_path));
    out << "metric,value\n";
    out << "rmse," << format_double(rmse_value) << '\n';
    out << "mae," << format_double(mae_value) << '\n';
  }
  manifest.set_config("units", physical ? "physical" : "as-given");
  manifest.stage(stager, opt.out_path + ".manifest.json");
  stager.commit();

  std::cout << "rmse = " << format_double(rmse_value) << '\n';
  std::cout << "mae = " << format_double(mae_value) << '\n';
}

// ---- compare ----

struct CompareOptions {
  std::string experiment_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void run_compare(const CompareOptions& opt) {
  RunManifest manifest("compare");
  ExperimentInputs inputs = load_experiment_file(opt.experiment_path);
  manifest.add_input(opt.experiment_path);
  if (opt.seed_set) {
    inputs.spec.seed = opt.seed;
    inputs.generation.seed = opt.seed;
  }

  Dataset data;
  NetworkTopology topo;
  ordered_json dataset_desc;
  if (!inputs.dataset_dir.empty()) {
    for (const char* name : {"train_clean.csv", "train_noisy.csv", "test.csv", "norm_stats.csv",
                             "labels.csv", "topology.cfg"}) {
      manifest.add_input(inputs.dataset_dir / name);
    }
    StoredDataset stored = load_dataset_dir(inputs.dataset_dir);
    data = std::move(stored.data);
    topo = std::move(stored.topology);
    dataset_desc["data_dir"] = inputs.dataset_dir.string();
  } else {
    data = generate(inputs.generation);
    topo = inputs.generation.topology;
    dataset_desc["generation"] = generation_json(inputs.generation);
    dataset_desc["generation"]["seed"] = inputs.generation.seed;
  }
  print_warnings(data.warnings);

  const PriorGraph prior = build_prior_graph(topo, inputs.spec.prior_threshold);
  print_warnings(prior.warnings);

  const ExperimentResult result = run_experiment(inputs.spec, data, prior);
  print_warnings(result.warnings);

  const fs::path dir(opt.out_dir);
  fs::create_directories(dir);
  OutputStager stager;
  const std::string table = format_results_text(result);
  {
    std::ofstream out = open_output(stager.stage(dir / "results.txt"));
    out << table;
  }
  write_results_json(stager.stage(dir / "results.json"), result);
  if (result.heatmap.size() > 0) {
    write_matrix_csv(stager.stage(dir / "heatmap.csv"), result.heatmap);
  }
  for (const auto& [method, graph] : result.graphs) {
    write_adjacency_csv(stager.stage(dir / ("learned_" + std::string(to_string(method)) + ".csv")),
                        graph);
  }

  manifest.set_seed(inputs.spec.seed);
  manifest.set_config("dataset", dataset_desc);
  manifest.set_config("experiment", spec_json(inputs.spec));
  manifest.stage(stager, dir / "manifest.json");
  stager.commit();

  std::cout << table;
  std::cout << "\nchosen hyperparameters (" << inputs.spec.cv_folds << "-fold cv):\n";
  for (Method m : result.methods) {
    const auto it = result.chosen.find(m);
    if (it == result.chosen.end()) continue;
    const HyperParams& hp = it->second.params;
    std::cout << "  " << to_string(m) << ":";
    if (m == Method::adj_smooth || m == Method::igl) {
      std::cout << " alpha=" << format_double(hp.alpha);
    }
    if (m != Method::physics) std::cout << " beta=" << format_double(hp.beta);
    if (m == Method::igl) std::cout << " upsilon=" << format_double(hp.upsilon);
    std::cout << " mu=" << format_double(hp.mu) << " (cv rmse "
              << format_double(it->second.mean_rmse) << ")\n";
  }
  std::cout << "results written to " << dir.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph learning and signal reconstruction for sensor networks"};
  app.set_version_flag("--version", std::string("glearn ") + version());
  app.require_subcommand(1);

  GenerateOptions gen;
  CLI::App* generate_cmd = app.add_subcommand("generate", "synthesize a sensor-network dataset");
  generate_cmd->add_option("--config", gen.config_path,
                           "generation config file (default: built-in network and settings)")
      ->check(CLI::ExistingFile);
  generate_cmd->add_option("--out", gen.out_dir, "output directory")->required();
  CLI::Option* gen_seed =
      generate_cmd->add_option("--seed", gen.seed, "RNG seed (default: from config, 1)");
  generate_cmd->callback([&gen, gen_seed] {
    gen.seed_set = gen_seed->count() > 0;
    run_generate(gen);
  });

  LearnOptions learn;
  CLI::App* learn_cmd = app.add_subcommand("learn", "learn a sensor graph from signals");
  learn_cmd
      ->add_option("--method", learn.method, "physics, lap-smooth, adj-smooth, or igl")
      ->required()
      ->check(CLI::IsMember({"physics", "lap-smooth", "adj-smooth", "igl"}));
  learn_cmd->add_option("--data", learn.data_path, "signal CSV, nodes x snapshots")
      ->check(CLI::ExistingFile);
  learn_cmd
      ->add_option("--topology", learn.topology_path,
                   "network topology config (required for physics and igl)")
      ->check(CLI::ExistingFile);
  learn_cmd->add_option("--params", learn.params_path, "parameter file (default: built-ins)")
      ->check(CLI::ExistingFile);
  learn_cmd->add_option("--out", learn.out_path, "output adjacency CSV")->required();
  learn_cmd->add_option("--trace", learn.trace_path,
                        "per-iteration trace CSV (adj-smooth and igl only)");
  learn_cmd->callback([&learn] { run_learn(learn); });

  ReconstructOptions denoise_opt;
  CLI::App* denoise_cmd = app.add_subcommand("denoise", "smooth noisy signals over a graph");
  denoise_cmd->add_option("--graph", denoise_opt.graph_path, "adjacency CSV")
      ->required()
      ->check(CLI::ExistingFile);
  denoise_cmd->add_option("--data", denoise_opt.data_path, "noisy signal CSV")
      ->required()
      ->check(CLI::ExistingFile);
  denoise_cmd
      ->add_option("--params", denoise_opt.params_path,
                   "reconstruction parameter file (default: mu=1)")
      ->check(CLI::ExistingFile);
  denoise_cmd->add_option("--out", denoise_opt.out_path, "output signal CSV")->required();
  denoise_cmd->callback([&denoise_opt] { run_denoise(denoise_opt); });

  ReconstructOptions impute_opt;
  CLI::App* impute_cmd = app.add_subcommand("impute", "fill unobserved entries over a graph");
  impute_cmd->add_option("--graph", impute_opt.graph_path, "adjacency CSV")
      ->required()
      ->check(CLI::ExistingFile);
  impute_cmd->add_option("--data", impute_opt.data_path, "observed signal CSV")
      ->required()
      ->check(CLI::ExistingFile);
  impute_cmd->add_option("--mask", impute_opt.mask_path, "0/1 observation mask CSV, 1 = observed")
      ->required()
      ->check(CLI::ExistingFile);
  impute_cmd
      ->add_option("--params", impute_opt.params_path,
                   "reconstruction parameter file (default: xi auto, tol=1e-8)")
      ->check(CLI::ExistingFile);
  impute_cmd->add_option("--out", impute_opt.out_path, "output signal CSV")->required();
  impute_cmd->callback([&impute_opt] { run_impute(impute_opt); });

  EvaluateOptions eval_opt;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "RMSE/MAE of an estimate");
  evaluate_cmd->add_option("--estimate", eval_opt.estimate_path, "estimated signal CSV")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--reference", eval_opt.reference_path, "reference signal CSV")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate_cmd
      ->add_option("--stats", eval_opt.stats_path,
                   "norm stats CSV; with --labels, metrics are denormalized first")
      ->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--labels", eval_opt.labels_path, "node labels CSV")
      ->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--out", eval_opt.out_path, "output metrics CSV")->required();
  evaluate_cmd->callback([&eval_opt] { run_evaluate(eval_opt); });

  CompareOptions compare_opt;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "run the full method-comparison experiment");
  compare_cmd->add_option("--experiment", compare_opt.experiment_path, "experiment spec file")
      ->required()
      ->check(CLI::ExistingFile);
  compare_cmd->add_option("--out", compare_opt.out_dir, "output directory")->required();
  CLI::Option* compare_seed = compare_cmd->add_option(
      "--seed", compare_opt.seed, "override the experiment (and inline-generation) seed");
  compare_cmd->callback([&compare_opt, compare_seed] {
    compare_opt.seed_set = compare_seed->count() > 0;
    run_compare(compare_opt);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
