#pragma once

#include <string>
#include <vector>

#include "glearn/graph.hpp"
#include "glearn/types.hpp"

namespace glearn {

/// One pipe of a district-heating network, with the hydraulic and thermal
/// quantities needed to estimate pressure and temperature drops.
struct PipeSpec {
  int from = -1;
  int to = -1;
  double length_m = 0.0;       // > 0
  double diameter_m = 0.0;     // > 0
  double roughness = 0.0;      // Hazen-Williams coefficient, > 0
  double flow_m3s = 0.0;       // volumetric flow, > 0
  double heat_rate_w = 0.0;    // >= 0
  double mass_flow_kgs = 0.0;  // > 0
  double heat_capacity = 4186.0;

  /// Throws ConfigError naming the pipe when a field is out of range.
  void validate() const;
};

/// Pipe-level description of the sensor network. Pressure and temperature
/// sensors form disjoint subnetworks; pipes connect nodes of one kind.
/// Matrix row order is the pressure list followed by the temperature list.
struct NetworkTopology {
  std::vector<int> pressure_nodes;
  std::vector<int> temperature_nodes;
  std::vector<PipeSpec> pressure_pipes;
  std::vector<PipeSpec> temperature_pipes;

  int node_count() const {
    return static_cast<int>(pressure_nodes.size() + temperature_nodes.size());
  }

  /// Row-ordered labels: pressure nodes first, then temperature nodes.
  std::vector<NodeLabel> labels() const;

  /// Matrix row of a node id; throws ConfigError for unknown ids.
  int row_of(int node_id) const;

  void validate() const;
};

/// Head loss along a pipe by the Hazen-Williams equation,
/// 10.67 L Q^1.852 / (R^1.852 D^4.87), in meters of water column.
double pressure_drop(const PipeSpec& p);

/// Temperature drop along a pipe, q / (mdot c), in kelvin. Zero when the
/// pipe transfers no heat.
double temperature_drop(const PipeSpec& p);

/// Domain-knowledge prior: block-diagonal adjacency W_PI over all sensors
/// plus the binary mask M marking pairs where knowledge exists
/// (M(i,j) = 1 iff W_PI(i,j) != 0).
struct PriorGraph {
  SensorGraph w_pi;
  Matrix mask;
  std::vector<std::string> warnings;
};

/// Build W_PI from inverse pressure/temperature drops: each block is
/// rescaled by its largest finite weight so weights fall in (0, 1]
/// (zero-drop pipes map to 1), then edges below `threshold` are removed.
PriorGraph build_prior_graph(const NetworkTopology& topo, double threshold = 0.1);

}  // namespace glearn
