#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace glearn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class SensorKind { pressure, temperature };

inline const char* to_string(SensorKind k) {
  return k == SensorKind::pressure ? "pressure" : "temperature";
}

SensorKind sensor_kind_from_string(const std::string& s);

struct NodeLabel {
  int id = 0;
  SensorKind kind = SensorKind::pressure;

  friend bool operator==(const NodeLabel&, const NodeLabel&) = default;
};

/// Sensor readings, rows = nodes, columns = time snapshots. `normalized`
/// records whether values are min-max normalized or in physical units.
struct SignalMatrix {
  Matrix values;
  bool normalized = false;

  Index nodes() const { return values.rows(); }
  Index snapshots() const { return values.cols(); }
};

}  // namespace glearn
