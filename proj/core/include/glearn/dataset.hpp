#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glearn/physics.hpp"
#include "glearn/types.hpp"

namespace glearn {

/// Synthetic sensor data: physical pressure/temperature signals propagated
/// down each subnetwork tree from its source node under a shared load
/// profile, then min-max normalized per sensor kind on training statistics.

/// Shared demand level over time: two sinusoids plus clamped AR(1) noise.
struct LoadProfileParams {
  double base = 0.9;
  double seasonal_amplitude = 0.35;
  double daily_amplitude = 0.15;
  double ar_coeff = 0.9;
  double ar_sigma = 0.05;
  double min_load = 0.3;
  double max_load = 1.5;
  double samples_per_day = 24.0;
  double samples_per_year = 8760.0;

  void validate() const;
};

struct GenerationConfig {
  NetworkTopology topology;
  int n_samples = 8760;
  int train_size = 5000;
  double source_pressure_bar = 6.0;
  double source_temperature_c = 85.0;
  LoadProfileParams load_profile;
  double noise_sigma_train = 0.25;
  bool noise_in_physical_units = false;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Min-max range of one sensor kind on the training split. A degenerate
/// range (max == min) falls back to the identity map.
struct KindStats {
  double min = 0.0;
  double max = 1.0;
  bool degenerate = false;
};

struct NormStats {
  KindStats pressure;
  KindStats temperature;

  const KindStats& of(SensorKind kind) const;
  KindStats& of(SensorKind kind);
};

struct Dataset {
  Matrix train_clean;  ///< normalized, nodes x train_size
  Matrix train_noisy;  ///< train_clean plus Gaussian noise
  Matrix test;         ///< normalized with training stats, clean
  NormStats stats;
  std::vector<NodeLabel> labels;
  std::vector<std::string> warnings;
};

/// Head-to-pressure conversion for water, bar per meter of column.
inline constexpr double kBarPerMeterHead = 0.0980665;

/// Deterministic load factors; stream is independent of the noise streams.
std::vector<double> load_factors(const LoadProfileParams& p, int n_samples, std::uint64_t seed);

/// Physical signals for all nodes (pressure rows first), one column per
/// sample. Requires each kind's pipes to form a tree rooted at the first
/// listed node of that kind.
Matrix propagate_signals(const NetworkTopology& topo, const GenerationConfig& config,
                         const std::vector<double>& loads);

NormStats compute_norm_stats(const Matrix& physical, const std::vector<NodeLabel>& labels);
Matrix normalize(const Matrix& physical, const NormStats& stats,
                 const std::vector<NodeLabel>& labels);
Matrix denormalize(const Matrix& normalized, const NormStats& stats,
                   const std::vector<NodeLabel>& labels);

/// Adds independent N(0, sigma^2) noise to every entry, column-major order.
Matrix add_noise(const Matrix& x, double sigma, std::uint64_t seed);

/// Bernoulli(rho) observation mask, column-major order; 1 = observed.
Matrix make_mask(Index rows, Index cols, double rho, std::uint64_t seed);

Dataset generate(const GenerationConfig& config);

/// Built-in 37-node district-heating network: 17 pressure sensors (ids
/// 0-16) and 20 temperature sensors (ids 17-36), each kind a tree.
NetworkTopology default_topology();

GenerationConfig default_generation_config();

}  // namespace glearn
