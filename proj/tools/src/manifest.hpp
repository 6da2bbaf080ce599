#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace glearn::cli {

class OutputStager;

/// Reproducibility record emitted next to every command's outputs: tool
/// version, the fully resolved configuration, input digests, the seed in
/// effect (when the command uses randomness), and wall-clock timestamps.
class RunManifest {
 public:
  explicit RunManifest(std::string subcommand);

  void set_config(std::string key, nlohmann::ordered_json value);
  void set_result(std::string key, nlohmann::ordered_json value);
  void set_seed(std::uint64_t seed);
  void add_input(const std::filesystem::path& path);

  /// Digests the staged outputs (before rename) and stages the manifest
  /// itself at `manifest_path`.
  void stage(OutputStager& stager, const std::filesystem::path& manifest_path);

 private:
  nlohmann::ordered_json doc_;
};

std::string iso8601_utc_now();

}  // namespace glearn::cli
