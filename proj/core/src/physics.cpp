#include "glearn/physics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

#include "glearn/errors.hpp"

namespace glearn {

namespace {

std::string pipe_name(const PipeSpec& p) {
  return "pipe " + std::to_string(p.from) + "-" + std::to_string(p.to);
}

void require_positive(double v, const char* field, const PipeSpec& p) {
  if (!(v > 0.0)) {
    throw ConfigError(pipe_name(p) + ": " + field + " must be positive, got " +
                      std::to_string(v));
  }
}

}  // namespace

void PipeSpec::validate() const {
  if (from == to) throw ConfigError(pipe_name(*this) + ": endpoints must differ");
  require_positive(length_m, "length_m", *this);
  require_positive(diameter_m, "diameter_m", *this);
  require_positive(roughness, "roughness", *this);
  require_positive(flow_m3s, "flow_m3s", *this);
  require_positive(mass_flow_kgs, "mass_flow_kgs", *this);
  require_positive(heat_capacity, "heat_capacity", *this);
  if (!(heat_rate_w >= 0.0)) {
    throw ConfigError(pipe_name(*this) + ": heat_rate_w must be non-negative");
  }
}

std::vector<NodeLabel> NetworkTopology::labels() const {
  std::vector<NodeLabel> out;
  out.reserve(pressure_nodes.size() + temperature_nodes.size());
  for (int id : pressure_nodes) out.push_back({id, SensorKind::pressure});
  for (int id : temperature_nodes) out.push_back({id, SensorKind::temperature});
  return out;
}

int NetworkTopology::row_of(int node_id) const {
  for (std::size_t k = 0; k < pressure_nodes.size(); ++k) {
    if (pressure_nodes[k] == node_id) return static_cast<int>(k);
  }
  for (std::size_t k = 0; k < temperature_nodes.size(); ++k) {
    if (temperature_nodes[k] == node_id) {
      return static_cast<int>(pressure_nodes.size() + k);
    }
  }
  throw ConfigError("unknown node id " + std::to_string(node_id));
}

void NetworkTopology::validate() const {
  std::set<int> pressure_set(pressure_nodes.begin(), pressure_nodes.end());
  std::set<int> temperature_set(temperature_nodes.begin(), temperature_nodes.end());
  if (pressure_set.size() != pressure_nodes.size()) {
    throw ConfigError("duplicate pressure node id");
  }
  if (temperature_set.size() != temperature_nodes.size()) {
    throw ConfigError("duplicate temperature node id");
  }
  for (int id : pressure_nodes) {
    if (temperature_set.count(id)) {
      throw ConfigError("node id " + std::to_string(id) +
                        " appears in both pressure and temperature lists");
    }
  }
  auto check_pipes = [](const std::vector<PipeSpec>& pipes, const std::set<int>& nodes,
                        const char* kind) {
    std::set<std::pair<int, int>> seen;
    for (const PipeSpec& p : pipes) {
      p.validate();
      if (!nodes.count(p.from) || !nodes.count(p.to)) {
        throw ConfigError(std::string(kind) + " " + pipe_name(p) +
                          ": endpoint is not a " + kind + " node");
      }
      auto key = std::minmax(p.from, p.to);
      if (!seen.insert(key).second) {
        throw ConfigError(std::string("duplicate ") + kind + " " + pipe_name(p));
      }
    }
  };
  check_pipes(pressure_pipes, pressure_set, "pressure");
  check_pipes(temperature_pipes, temperature_set, "temperature");
}

double pressure_drop(const PipeSpec& p) {
  require_positive(p.length_m, "length_m", p);
  require_positive(p.flow_m3s, "flow_m3s", p);
  require_positive(p.roughness, "roughness", p);
  require_positive(p.diameter_m, "diameter_m", p);
  return std::abs(10.67 * p.length_m * std::pow(p.flow_m3s, 1.852) /
                  (std::pow(p.roughness, 1.852) * std::pow(p.diameter_m, 4.87)));
}

double temperature_drop(const PipeSpec& p) {
  require_positive(p.mass_flow_kgs, "mass_flow_kgs", p);
  require_positive(p.heat_capacity, "heat_capacity", p);
  return std::abs(p.heat_rate_w / (p.mass_flow_kgs * p.heat_capacity));
}

namespace {

// One block of W_PI: inverse drops, rescaled by the largest finite weight
// (infinite weights from zero drops map to 1), then thresholded.
Matrix build_block(const std::vector<int>& nodes, const std::vector<PipeSpec>& pipes,
                   double (*drop)(const PipeSpec&), double threshold, const char* kind,
                   std::vector<std::string>& warnings) {
  const int n = static_cast<int>(nodes.size());
  std::unordered_map<int, int> row;
  for (int k = 0; k < n; ++k) row[nodes[k]] = k;

  Matrix W = Matrix::Zero(n, n);
  double max_finite = 0.0;
  bool any_infinite = false;
  std::vector<std::pair<std::pair<int, int>, double>> weights;
  weights.reserve(pipes.size());
  for (const PipeSpec& p : pipes) {
    const double d = drop(p);
    double w;
    if (d > 0.0) {
      w = 1.0 / d;
      max_finite = std::max(max_finite, w);
    } else {
      w = std::numeric_limits<double>::infinity();
      any_infinite = true;
    }
    weights.push_back({{row.at(p.from), row.at(p.to)}, w});
  }

  const double scale = max_finite > 0.0 ? max_finite : 1.0;
  int kept = 0;
  for (const auto& [pair, w] : weights) {
    double s = std::isinf(w) ? 1.0 : w / scale;
    if (s < threshold) continue;
    W(pair.first, pair.second) = s;
    W(pair.second, pair.first) = s;
    ++kept;
  }
  if (!pipes.empty() && kept == 0) {
    warnings.push_back(std::string(kind) + " block lost all edges to the threshold " +
                       std::to_string(threshold));
  }
  (void)any_infinite;
  return W;
}

}  // namespace

PriorGraph build_prior_graph(const NetworkTopology& topo, double threshold) {
  topo.validate();
  if (!(threshold >= 0.0 && threshold < 1.0)) {
    throw ConfigError("prior-graph threshold must lie in [0, 1)");
  }
  PriorGraph prior;
  const int np = static_cast<int>(topo.pressure_nodes.size());
  const int nt = static_cast<int>(topo.temperature_nodes.size());
  const int n = np + nt;

  Matrix W = Matrix::Zero(n, n);
  W.topLeftCorner(np, np) = build_block(topo.pressure_nodes, topo.pressure_pipes,
                                        &pressure_drop, threshold, "pressure", prior.warnings);
  W.bottomRightCorner(nt, nt) =
      build_block(topo.temperature_nodes, topo.temperature_pipes, &temperature_drop, threshold,
                  "temperature", prior.warnings);

  prior.mask = (W.array() != 0.0).cast<double>();
  prior.w_pi = SensorGraph{std::move(W), topo.labels()};
  return prior;
}

}  // namespace glearn
