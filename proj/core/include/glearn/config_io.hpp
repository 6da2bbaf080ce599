#pragma once

#include <filesystem>
#include <string>

#include "glearn/dataset.hpp"
#include "glearn/experiment.hpp"
#include "glearn/igl.hpp"
#include "glearn/lap_smooth.hpp"
#include "glearn/physics.hpp"
#include "glearn/reconstruction.hpp"

namespace glearn {

/// Loaders for the key-value config files. Unknown keys or sections are
/// configuration errors; every key has a documented default.

/// Topology files: a [nodes] section with per-kind id lists and one
/// [pipe] section per pipe.
NetworkTopology load_topology(const std::filesystem::path& path);
void save_topology(const std::filesystem::path& path, const NetworkTopology& topo);

/// Generation config; `topology = default` or a path resolved relative to
/// the config file's directory.
GenerationConfig load_generation_config(const std::filesystem::path& path);

/// Graph-learning parameters shared by the `learn` methods.
struct LearnParams {
  IglParams igl;
  LapSmoothParams lap;
  ZScaling z_scaling = ZScaling::sum;
  double prior_threshold = 0.1;
};
LearnParams default_learn_params();
LearnParams load_learn_params(const std::filesystem::path& path);

ReconstructionParams load_reconstruction_params(const std::filesystem::path& path);

/// Experiment description: the settings plus where the dataset comes from.
struct ExperimentInputs {
  ExperimentSpec spec;
  std::filesystem::path dataset_dir;  ///< empty means generate inline
  GenerationConfig generation;        ///< used when dataset_dir is empty
};
ExperimentInputs load_experiment_file(const std::filesystem::path& path);

/// Round-trip of the files `generate` writes into a dataset directory.
struct StoredDataset {
  Dataset data;
  NetworkTopology topology;
};
StoredDataset load_dataset_dir(const std::filesystem::path& dir);

}  // namespace glearn
