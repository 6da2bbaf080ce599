#include "glearn/config_io.hpp"

#include <fstream>

#include "glearn/csv_io.hpp"
#include "glearn/errors.hpp"
#include "glearn/keyvalue.hpp"

namespace glearn {

namespace {

std::filesystem::path resolve_relative(const std::filesystem::path& base_file,
                                       const std::string& reference) {
  const std::filesystem::path ref(reference);
  if (ref.is_absolute()) return ref;
  return base_file.parent_path() / ref;
}

PipeSpec parse_pipe(const KeyValueSection& section) {
  section.expect_keys({"kind", "from", "to", "length_m", "diameter_m", "roughness", "flow_m3s",
                       "mass_flow_kgs", "heat_rate_w", "heat_capacity"});
  PipeSpec pipe;
  pipe.from = section.get_int("from");
  pipe.to = section.get_int("to");
  pipe.length_m = section.get_double("length_m");
  pipe.diameter_m = section.get_double("diameter_m");
  pipe.roughness = section.get_double("roughness");
  pipe.flow_m3s = section.get_double("flow_m3s");
  pipe.mass_flow_kgs = section.get_double_or("mass_flow_kgs", pipe.flow_m3s * 1000.0);
  pipe.heat_rate_w = section.get_double_or("heat_rate_w", 0.0);
  pipe.heat_capacity = section.get_double_or("heat_capacity", 4186.0);
  return pipe;
}

}  // namespace

NetworkTopology load_topology(const std::filesystem::path& path) {
  const KeyValueFile file = KeyValueFile::parse_file(path);
  file.global().expect_keys({});
  file.expect_sections({"nodes", "pipe"});

  const auto node_sections = file.named("nodes");
  if (node_sections.size() != 1) {
    throw ConfigError(path.string() + ": expected exactly one [nodes] section");
  }
  node_sections.front()->expect_keys({"pressure", "temperature"});

  NetworkTopology topo;
  if (node_sections.front()->has("pressure")) {
    topo.pressure_nodes = node_sections.front()->get_ints("pressure");
  }
  if (node_sections.front()->has("temperature")) {
    topo.temperature_nodes = node_sections.front()->get_ints("temperature");
  }

  for (const KeyValueSection* section : file.named("pipe")) {
    const std::string kind = section->get_string("kind");
    if (kind == "pressure") {
      topo.pressure_pipes.push_back(parse_pipe(*section));
    } else if (kind == "temperature") {
      topo.temperature_pipes.push_back(parse_pipe(*section));
    } else {
      throw ConfigError(path.string() + ":" + std::to_string(section->line) +
                        ": pipe kind must be pressure or temperature, got '" + kind + "'");
    }
  }
  topo.validate();
  return topo;
}

void save_topology(const std::filesystem::path& path, const NetworkTopology& topo) {
  topo.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");

  // Empty node lists are omitted: the reader rejects empty values.
  out << "[nodes]\n";
  if (!topo.pressure_nodes.empty()) {
    out << "pressure =";
    for (int id : topo.pressure_nodes) out << ' ' << id;
    out << "\n";
  }
  if (!topo.temperature_nodes.empty()) {
    out << "temperature =";
    for (int id : topo.temperature_nodes) out << ' ' << id;
    out << "\n";
  }

  const auto write_pipe = [&out](const PipeSpec& pipe, const char* kind) {
    out << "\n[pipe]\n";
    out << "kind = " << kind << '\n';
    out << "from = " << pipe.from << '\n';
    out << "to = " << pipe.to << '\n';
    out << "length_m = " << format_double(pipe.length_m) << '\n';
    out << "diameter_m = " << format_double(pipe.diameter_m) << '\n';
    out << "roughness = " << format_double(pipe.roughness) << '\n';
    out << "flow_m3s = " << format_double(pipe.flow_m3s) << '\n';
    out << "mass_flow_kgs = " << format_double(pipe.mass_flow_kgs) << '\n';
    out << "heat_rate_w = " << format_double(pipe.heat_rate_w) << '\n';
    out << "heat_capacity = " << format_double(pipe.heat_capacity) << '\n';
  };
  for (const PipeSpec& pipe : topo.pressure_pipes) write_pipe(pipe, "pressure");
  for (const PipeSpec& pipe : topo.temperature_pipes) write_pipe(pipe, "temperature");
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

GenerationConfig load_generation_config(const std::filesystem::path& path) {
  const KeyValueFile file = KeyValueFile::parse_file(path);
  file.expect_sections({"load_profile"});
  file.global().expect_keys({"topology", "n_samples", "train_size", "source_pressure_bar",
                             "source_temperature_c", "noise_sigma_train",
                             "noise_in_physical_units", "seed"});

  GenerationConfig config;
  const std::string topology = file.global().get_string_or("topology", "default");
  if (topology == "default") {
    config.topology = default_topology();
  } else {
    config.topology = load_topology(resolve_relative(path, topology));
  }
  config.n_samples = file.global().get_int_or("n_samples", config.n_samples);
  config.train_size = file.global().get_int_or("train_size", config.train_size);
  config.source_pressure_bar =
      file.global().get_double_or("source_pressure_bar", config.source_pressure_bar);
  config.source_temperature_c =
      file.global().get_double_or("source_temperature_c", config.source_temperature_c);
  config.noise_sigma_train =
      file.global().get_double_or("noise_sigma_train", config.noise_sigma_train);
  config.noise_in_physical_units =
      file.global().get_bool_or("noise_in_physical_units", config.noise_in_physical_units);
  config.seed = file.global().get_uint64_or("seed", config.seed);

  const auto profiles = file.named("load_profile");
  if (profiles.size() > 1) {
    throw ConfigError(path.string() + ": at most one [load_profile] section");
  }
  if (!profiles.empty()) {
    const KeyValueSection& s = *profiles.front();
    s.expect_keys({"base", "seasonal_amplitude", "daily_amplitude", "ar_coeff", "ar_sigma",
                   "min_load", "max_load", "samples_per_day", "samples_per_year"});
    LoadProfileParams& p = config.load_profile;
    p.base = s.get_double_or("base", p.base);
    p.seasonal_amplitude = s.get_double_or("seasonal_amplitude", p.seasonal_amplitude);
    p.daily_amplitude = s.get_double_or("daily_amplitude", p.daily_amplitude);
    p.ar_coeff = s.get_double_or("ar_coeff", p.ar_coeff);
    p.ar_sigma = s.get_double_or("ar_sigma", p.ar_sigma);
    p.min_load = s.get_double_or("min_load", p.min_load);
    p.max_load = s.get_double_or("max_load", p.max_load);
    p.samples_per_day = s.get_double_or("samples_per_day", p.samples_per_day);
    p.samples_per_year = s.get_double_or("samples_per_year", p.samples_per_year);
  }
  config.validate();
  return config;
}

namespace {

ZScaling z_scaling_from_string(const std::string& s) {
  if (s == "sum") return ZScaling::sum;
  if (s == "mean") return ZScaling::mean;
  throw ConfigError("z_scaling must be 'sum' or 'mean', got '" + s + "'");
}

}  // namespace

LearnParams default_learn_params() { return {}; }

LearnParams load_learn_params(const std::filesystem::path& path) {
  const KeyValueFile file = KeyValueFile::parse_file(path);
  file.expect_sections({});
  file.global().expect_keys({"alpha", "beta", "upsilon", "gamma", "eps0", "k_max",
                             "normalize_output", "output_threshold", "beta1", "pg_step", "pg_tol",
                             "pg_max_iters", "z_scaling", "prior_threshold"});

  LearnParams params;
  const KeyValueSection& g = file.global();
  params.igl.alpha = g.get_double_or("alpha", params.igl.alpha);
  params.igl.beta = g.get_double_or("beta", params.igl.beta);
  params.igl.upsilon = g.get_double_or("upsilon", params.igl.upsilon);
  params.igl.gamma = g.get_double_or("gamma", params.igl.gamma);
  params.igl.eps0 = g.get_double_or("eps0", params.igl.eps0);
  params.igl.k_max = g.get_int_or("k_max", params.igl.k_max);
  params.igl.normalize_output = g.get_bool_or("normalize_output", params.igl.normalize_output);
  params.igl.output_threshold = g.get_double_or("output_threshold", params.igl.output_threshold);
  params.lap.beta1 = g.get_double_or("beta1", params.lap.beta1);
  params.lap.step = g.get_double_or("pg_step", params.lap.step);
  params.lap.tol = g.get_double_or("pg_tol", params.lap.tol);
  params.lap.max_iters = g.get_int_or("pg_max_iters", params.lap.max_iters);
  params.z_scaling = z_scaling_from_string(g.get_string_or("z_scaling", "sum"));
  params.prior_threshold = g.get_double_or("prior_threshold", params.prior_threshold);
  return params;
}

ReconstructionParams load_reconstruction_params(const std::filesystem::path& path) {
  const KeyValueFile file = KeyValueFile::parse_file(path);
  file.expect_sections({});
  file.global().expect_keys({"mu", "xi", "tol", "max_iters"});

  ReconstructionParams params;
  params.mu = file.global().get_double_or("mu", params.mu);
  params.xi = file.global().get_double_or("xi", params.xi);
  params.tol = file.global().get_double_or("tol", params.tol);
  params.max_iters = file.global().get_int_or("max_iters", params.max_iters);
  params.validate();
  return params;
}

ExperimentInputs load_experiment_file(const std::filesystem::path& path) {
  const KeyValueFile file = KeyValueFile::parse_file(path);
  file.expect_sections({});
  file.global().expect_keys(
      {"data_dir", "generation_config", "methods", "denoise_sigma", "rhos", "cv_folds",
       "cv_alpha", "cv_beta", "cv_upsilon", "cv_mu", "seed", "z_scaling", "metrics_units",
       "impute_metrics", "normalize_graphs", "graph_threshold", "prior_threshold", "eps0",
       "k_max", "impute_tol", "impute_max_iters"});
  const KeyValueSection& g = file.global();

  ExperimentInputs inputs;
  if (g.has("data_dir") && g.has("generation_config")) {
    throw ConfigError(path.string() + ": set data_dir or generation_config, not both");
  }
  if (g.has("data_dir")) {
    inputs.dataset_dir = resolve_relative(path, g.get_string("data_dir"));
  } else if (g.has("generation_config")) {
    inputs.generation = load_generation_config(resolve_relative(path, g.get_string("generation_config")));
  } else {
    inputs.generation = default_generation_config();
  }

  ExperimentSpec& spec = inputs.spec;
  if (g.has("methods")) {
    spec.methods.clear();
    for (const std::string& name : g.get_strings("methods")) {
      spec.methods.push_back(method_from_string(name));
    }
  }
  spec.denoise_sigma = g.get_double_or("denoise_sigma", spec.denoise_sigma);
  if (g.has("rhos")) spec.rhos = g.get_doubles("rhos");
  spec.cv_folds = g.get_int_or("cv_folds", spec.cv_folds);
  if (g.has("cv_alpha")) spec.grid.alpha = g.get_doubles("cv_alpha");
  if (g.has("cv_beta")) spec.grid.beta = g.get_doubles("cv_beta");
  if (g.has("cv_upsilon")) spec.grid.upsilon = g.get_doubles("cv_upsilon");
  if (g.has("cv_mu")) spec.grid.mu = g.get_doubles("cv_mu");
  spec.seed = g.get_uint64_or("seed", spec.seed);
  spec.z_scaling = z_scaling_from_string(g.get_string_or(
      "z_scaling", spec.z_scaling == ZScaling::mean ? "mean" : "sum"));

  const std::string units = g.get_string_or("metrics_units", "physical");
  if (units == "physical") {
    spec.metrics_physical = true;
  } else if (units == "normalized") {
    spec.metrics_physical = false;
  } else {
    throw ConfigError(path.string() + ": metrics_units must be physical or normalized");
  }

  const std::string impute_metrics = g.get_string_or("impute_metrics", "all");
  if (impute_metrics == "all") {
    spec.impute_metrics_missing_only = false;
  } else if (impute_metrics == "missing") {
    spec.impute_metrics_missing_only = true;
  } else {
    throw ConfigError(path.string() + ": impute_metrics must be all or missing");
  }

  spec.normalize_graphs = g.get_bool_or("normalize_graphs", spec.normalize_graphs);
  spec.graph_threshold = g.get_double_or("graph_threshold", spec.graph_threshold);
  spec.prior_threshold = g.get_double_or("prior_threshold", spec.prior_threshold);
  spec.eps0 = g.get_double_or("eps0", spec.eps0);
  spec.k_max = g.get_int_or("k_max", spec.k_max);
  spec.impute_tol = g.get_double_or("impute_tol", spec.impute_tol);
  spec.impute_max_iters = g.get_int_or("impute_max_iters", spec.impute_max_iters);
  spec.validate();
  return inputs;
}

StoredDataset load_dataset_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw ConfigError("dataset directory '" + dir.string() + "' does not exist");
  }
  StoredDataset stored;
  stored.data.train_clean = read_signal_csv(dir / "train_clean.csv");
  stored.data.train_noisy = read_signal_csv(dir / "train_noisy.csv");
  stored.data.test = read_signal_csv(dir / "test.csv");
  stored.data.stats = read_norm_stats_csv(dir / "norm_stats.csv");
  stored.data.labels = read_labels_csv(dir / "labels.csv");
  stored.topology = load_topology(dir / "topology.cfg");

  const Index n = stored.data.train_clean.rows();
  if (stored.data.train_noisy.rows() != n || stored.data.test.rows() != n ||
      static_cast<Index>(stored.data.labels.size()) != n) {
    throw DataError("dataset directory '" + dir.string() + "': row counts disagree");
  }
  if (stored.data.train_noisy.cols() != stored.data.train_clean.cols()) {
    throw DataError("dataset directory '" + dir.string() + "': train column counts disagree");
  }
  if (stored.topology.labels() != stored.data.labels) {
    throw DataError("dataset directory '" + dir.string() +
                    "': topology and labels.csv disagree");
  }
  return stored;
}

}  // namespace glearn
