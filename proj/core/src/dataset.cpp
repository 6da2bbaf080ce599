#include "glearn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "glearn/errors.hpp"
#include "glearn/rng.hpp"

namespace glearn {

void LoadProfileParams::validate() const {
  if (!(base > 0.0)) throw ConfigError("load profile: base must be positive");
  if (!(seasonal_amplitude >= 0.0) || !(daily_amplitude >= 0.0)) {
    throw ConfigError("load profile: amplitudes must be nonnegative");
  }
  if (!(ar_coeff >= 0.0) || !(ar_coeff < 1.0)) {
    throw ConfigError("load profile: ar_coeff must be in [0, 1)");
  }
  if (!(ar_sigma >= 0.0)) throw ConfigError("load profile: ar_sigma must be nonnegative");
  if (!(min_load > 0.0) || !(max_load > min_load)) {
    throw ConfigError("load profile: need 0 < min_load < max_load");
  }
  if (!(samples_per_day > 0.0) || !(samples_per_year > 0.0)) {
    throw ConfigError("load profile: sample periods must be positive");
  }
}

void GenerationConfig::validate() const {
  topology.validate();
  load_profile.validate();
  if (n_samples < 2) throw ConfigError("generation: n_samples must be at least 2");
  if (train_size < 1 || train_size >= n_samples) {
    throw ConfigError("generation: train_size must be in [1, n_samples), got " +
                      std::to_string(train_size) + " of " + std::to_string(n_samples));
  }
  if (!(noise_sigma_train >= 0.0)) {
    throw ConfigError("generation: noise_sigma_train must be nonnegative");
  }
  if (!(source_pressure_bar > 0.0)) {
    throw ConfigError("generation: source_pressure_bar must be positive");
  }
}

std::vector<double> load_factors(const LoadProfileParams& p, int n_samples, std::uint64_t seed) {
  p.validate();
  if (n_samples < 1) throw ConfigError("load_factors: n_samples must be positive");

  Rng rng(mix_seed(seed, 0));
  std::vector<double> loads(static_cast<std::size_t>(n_samples));
  double ar = 0.0;
  for (int t = 0; t < n_samples; ++t) {
    const double seasonal =
        p.seasonal_amplitude * std::sin(2.0 * std::numbers::pi * t / p.samples_per_year);
    const double daily =
        p.daily_amplitude * std::sin(2.0 * std::numbers::pi * t / p.samples_per_day);
    ar = p.ar_coeff * ar + p.ar_sigma * rng.gaussian();
    loads[static_cast<std::size_t>(t)] =
        std::clamp(p.base + seasonal + daily + ar, p.min_load, p.max_load);
  }
  return loads;
}

namespace {

/// Tree edges in propagation order (parent before child), found by BFS
/// from the root in pipe-list order. Throws unless the pipes form a
/// spanning tree of `nodes`.
struct TreeEdge {
  int parent_row;  // row in the full signal matrix
  int child_row;
  const PipeSpec* pipe;
};

std::vector<TreeEdge> tree_order(const NetworkTopology& topo, const std::vector<int>& nodes,
                                 const std::vector<PipeSpec>& pipes, const char* kind) {
  if (nodes.empty()) return {};
  if (pipes.size() != nodes.size() - 1) {
    throw ConfigError(std::string("generation: ") + kind + " pipes must form a spanning tree (" +
                      std::to_string(pipes.size()) + " pipes for " + std::to_string(nodes.size()) +
                      " nodes)");
  }
  std::map<int, std::vector<const PipeSpec*>> incident;
  for (const PipeSpec& p : pipes) {
    incident[p.from].push_back(&p);
    incident[p.to].push_back(&p);
  }

  std::vector<TreeEdge> order;
  order.reserve(pipes.size());
  std::map<int, bool> visited;
  for (int id : nodes) visited[id] = false;
  std::vector<int> frontier{nodes.front()};
  visited[nodes.front()] = true;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const int u = frontier[head];
    for (const PipeSpec* p : incident[u]) {
      const int v = p->from == u ? p->to : p->from;
      if (visited[v]) continue;
      visited[v] = true;
      order.push_back({topo.row_of(u), topo.row_of(v), p});
      frontier.push_back(v);
    }
  }
  if (order.size() != pipes.size()) {
    throw ConfigError(std::string("generation: ") + kind +
                      " pipes do not connect all nodes of that kind");
  }
  return order;
}

}  // namespace

Matrix propagate_signals(const NetworkTopology& topo, const GenerationConfig& config,
                         const std::vector<double>& loads) {
  const auto order_p =
      tree_order(topo, topo.pressure_nodes, topo.pressure_pipes, "pressure");
  const auto order_t =
      tree_order(topo, topo.temperature_nodes, topo.temperature_pipes, "temperature");

  const int n = topo.node_count();
  const auto t_count = static_cast<Index>(loads.size());
  Matrix x(n, t_count);

  // Per-edge drops at nominal load; pressure scales with load^1.852,
  // temperature linearly.
  std::vector<double> base_drop_p(order_p.size());
  for (std::size_t e = 0; e < order_p.size(); ++e) {
    base_drop_p[e] = pressure_drop(*order_p[e].pipe) * kBarPerMeterHead;
  }
  std::vector<double> base_drop_t(order_t.size());
  for (std::size_t e = 0; e < order_t.size(); ++e) {
    base_drop_t[e] = temperature_drop(*order_t[e].pipe);
  }

  for (Index t = 0; t < t_count; ++t) {
    const double load = loads[static_cast<std::size_t>(t)];
    const double hydraulic = std::pow(load, 1.852);
    if (!topo.pressure_nodes.empty()) {
      x(topo.row_of(topo.pressure_nodes.front()), t) = config.source_pressure_bar;
    }
    for (std::size_t e = 0; e < order_p.size(); ++e) {
      x(order_p[e].child_row, t) = x(order_p[e].parent_row, t) - base_drop_p[e] * hydraulic;
    }
    if (!topo.temperature_nodes.empty()) {
      x(topo.row_of(topo.temperature_nodes.front()), t) = config.source_temperature_c;
    }
    for (std::size_t e = 0; e < order_t.size(); ++e) {
      x(order_t[e].child_row, t) = x(order_t[e].parent_row, t) - base_drop_t[e] * load;
    }
  }
  return x;
}

const KindStats& NormStats::of(SensorKind kind) const {
  return kind == SensorKind::pressure ? pressure : temperature;
}

KindStats& NormStats::of(SensorKind kind) {
  return kind == SensorKind::pressure ? pressure : temperature;
}

NormStats compute_norm_stats(const Matrix& physical, const std::vector<NodeLabel>& labels) {
  if (static_cast<Index>(labels.size()) != physical.rows()) {
    throw DataError("norm stats: " + std::to_string(labels.size()) + " labels for " +
                    std::to_string(physical.rows()) + " rows");
  }
  NormStats stats;
  for (SensorKind kind : {SensorKind::pressure, SensorKind::temperature}) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    bool seen = false;
    for (Index i = 0; i < physical.rows(); ++i) {
      if (labels[static_cast<std::size_t>(i)].kind != kind) continue;
      seen = true;
      lo = std::min(lo, physical.row(i).minCoeff());
      hi = std::max(hi, physical.row(i).maxCoeff());
    }
    KindStats& k = stats.of(kind);
    if (!seen || hi == lo) {
      k = KindStats{0.0, 1.0, true};
      if (seen) k = KindStats{lo, lo, true};
    } else {
      k = KindStats{lo, hi, false};
    }
  }
  return stats;
}

namespace {

Matrix map_rows(const Matrix& x, const NormStats& stats, const std::vector<NodeLabel>& labels,
                bool forward) {
  if (static_cast<Index>(labels.size()) != x.rows()) {
    throw DataError("normalize: " + std::to_string(labels.size()) + " labels for " +
                    std::to_string(x.rows()) + " rows");
  }
  Matrix out(x.rows(), x.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    const KindStats& k = stats.of(labels[static_cast<std::size_t>(i)].kind);
    if (k.degenerate) {
      out.row(i) = x.row(i);
    } else if (forward) {
      out.row(i) = (x.row(i).array() - k.min) / (k.max - k.min);
    } else {
      out.row(i) = x.row(i).array() * (k.max - k.min) + k.min;
    }
  }
  return out;
}

}  // namespace

Matrix normalize(const Matrix& physical, const NormStats& stats,
                 const std::vector<NodeLabel>& labels) {
  return map_rows(physical, stats, labels, true);
}

Matrix denormalize(const Matrix& normalized, const NormStats& stats,
                   const std::vector<NodeLabel>& labels) {
  return map_rows(normalized, stats, labels, false);
}

Matrix add_noise(const Matrix& x, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw ConfigError("add_noise: sigma must be nonnegative");
  Rng rng(seed);
  Matrix out = x;
  for (Index c = 0; c < out.cols(); ++c) {
    for (Index r = 0; r < out.rows(); ++r) {
      out(r, c) += sigma * rng.gaussian();
    }
  }
  return out;
}

Matrix make_mask(Index rows, Index cols, double rho, std::uint64_t seed) {
  if (!(rho >= 0.0) || !(rho <= 1.0)) {
    throw ConfigError("make_mask: rho must be in [0, 1], got " + std::to_string(rho));
  }
  Rng rng(seed);
  Matrix mask(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) {
      mask(r, c) = rng.bernoulli(rho) ? 1.0 : 0.0;
    }
  }
  return mask;
}

Dataset generate(const GenerationConfig& config) {
  config.validate();

  const std::vector<double> loads =
      load_factors(config.load_profile, config.n_samples, config.seed);
  const Matrix physical = propagate_signals(config.topology, config, loads);

  Dataset data;
  data.labels = config.topology.labels();

  const Matrix train_phys = physical.leftCols(config.train_size);
  const Matrix test_phys = physical.rightCols(config.n_samples - config.train_size);

  data.stats = compute_norm_stats(train_phys, data.labels);
  for (SensorKind kind : {SensorKind::pressure, SensorKind::temperature}) {
    if (data.stats.of(kind).degenerate) {
      data.warnings.push_back(std::string("degenerate ") + to_string(kind) +
                              " range in training data; normalization is the identity");
    }
  }

  data.train_clean = normalize(train_phys, data.stats, data.labels);
  data.test = normalize(test_phys, data.stats, data.labels);

  const std::uint64_t noise_seed = mix_seed(config.seed, 1);
  if (config.noise_in_physical_units) {
    data.train_noisy = normalize(add_noise(train_phys, config.noise_sigma_train, noise_seed),
                                 data.stats, data.labels);
  } else {
    data.train_noisy = add_noise(data.train_clean, config.noise_sigma_train, noise_seed);
  }
  return data;
}

NetworkTopology default_topology() {
  NetworkTopology topo;
  for (int id = 0; id <= 16; ++id) topo.pressure_nodes.push_back(id);
  for (int id = 17; id <= 36; ++id) topo.temperature_nodes.push_back(id);

  // Pressure tree. Demands (m3/s) sit at every non-source node; each pipe
  // carries the demand of the subtree below it.
  struct PipeGeometry {
    int from, to;
    double length, diameter, roughness;
  };
  const PipeGeometry pressure_geometry[] = {
      {0, 1, 180.0, 0.25, 140.0},   {1, 2, 240.0, 0.22, 135.0},   {2, 3, 200.0, 0.18, 130.0},
      {1, 4, 160.0, 0.15, 145.0},   {4, 5, 120.0, 0.10, 140.0},   {4, 6, 90.0, 0.09, 130.0},
      {2, 7, 210.0, 0.15, 135.0},   {7, 8, 140.0, 0.10, 145.0},   {7, 9, 100.0, 0.09, 140.0},
      {3, 10, 260.0, 0.15, 130.0},  {10, 11, 150.0, 0.09, 135.0}, {10, 12, 170.0, 0.10, 140.0},
      {0, 13, 300.0, 0.16, 150.0},  {13, 14, 190.0, 0.12, 140.0}, {14, 15, 110.0, 0.09, 135.0},
      {13, 16, 130.0, 0.09, 145.0},
  };
  const std::map<int, double> demand_m3s = {
      {1, 0.010}, {2, 0.008},  {3, 0.008},  {4, 0.010},  {5, 0.012},  {6, 0.008},
      {7, 0.010}, {8, 0.012},  {9, 0.006},  {10, 0.010}, {11, 0.008}, {12, 0.012},
      {13, 0.008}, {14, 0.010}, {15, 0.006}, {16, 0.008},
  };

  // Temperature tree. Heat losses are per-meter rates; mass demands (kg/s)
  // aggregate the same way as volumetric ones.
  struct HeatGeometry {
    int from, to;
    double length, loss_w_per_m;
  };
  const HeatGeometry temperature_geometry[] = {
      {17, 18, 220.0, 80.0}, {18, 19, 180.0, 75.0}, {19, 20, 200.0, 85.0}, {20, 21, 150.0, 80.0},
      {18, 22, 120.0, 70.0}, {22, 23, 90.0, 80.0},  {22, 24, 110.0, 75.0}, {19, 25, 140.0, 80.0},
      {25, 26, 100.0, 70.0}, {25, 27, 80.0, 85.0},  {20, 28, 160.0, 75.0}, {28, 29, 120.0, 80.0},
      {28, 30, 90.0, 70.0},  {21, 31, 130.0, 80.0}, {31, 32, 100.0, 75.0}, {17, 33, 250.0, 85.0},
      {33, 34, 170.0, 80.0}, {33, 35, 110.0, 70.0}, {34, 36, 140.0, 75.0},
  };
  const std::map<int, double> demand_kgs = {
      {18, 0.50}, {19, 0.40}, {20, 0.45}, {21, 0.35}, {22, 0.50}, {23, 0.30}, {24, 0.40},
      {25, 0.45}, {26, 0.30}, {27, 0.35}, {28, 0.45}, {29, 0.30}, {30, 0.40}, {31, 0.50},
      {32, 0.35}, {33, 0.55}, {34, 0.40}, {35, 0.30}, {36, 0.45},
  };

  // Subtree aggregation: edges are listed parent-first, so one reverse
  // sweep accumulates child flows into parents.
  const auto aggregate = [](const auto& edges, const std::map<int, double>& demands) {
    std::map<int, double> subtree = demands;
    std::vector<double> flow(std::size(edges));
    for (std::size_t e = std::size(edges); e-- > 0;) {
      flow[e] = subtree.at(edges[e].to);
      subtree[edges[e].from] += flow[e];
    }
    return flow;
  };

  const std::vector<double> pressure_flow = aggregate(pressure_geometry, demand_m3s);
  for (std::size_t e = 0; e < std::size(pressure_geometry); ++e) {
    const PipeGeometry& g = pressure_geometry[e];
    PipeSpec pipe;
    pipe.from = g.from;
    pipe.to = g.to;
    pipe.length_m = g.length;
    pipe.diameter_m = g.diameter;
    pipe.roughness = g.roughness;
    pipe.flow_m3s = pressure_flow[e];
    pipe.mass_flow_kgs = pressure_flow[e] * 1000.0;
    pipe.heat_rate_w = 0.0;
    topo.pressure_pipes.push_back(pipe);
  }

  const std::vector<double> temperature_flow = aggregate(temperature_geometry, demand_kgs);
  for (std::size_t e = 0; e < std::size(temperature_geometry); ++e) {
    const HeatGeometry& g = temperature_geometry[e];
    PipeSpec pipe;
    pipe.from = g.from;
    pipe.to = g.to;
    pipe.length_m = g.length;
    pipe.diameter_m = 0.12;
    pipe.roughness = 140.0;
    pipe.flow_m3s = temperature_flow[e] / 1000.0;
    pipe.mass_flow_kgs = temperature_flow[e];
    pipe.heat_rate_w = g.loss_w_per_m * g.length;
    topo.temperature_pipes.push_back(pipe);
  }

  topo.validate();
  return topo;
}

GenerationConfig default_generation_config() {
  GenerationConfig config;
  config.topology = default_topology();
  return config;
}

}  // namespace glearn
