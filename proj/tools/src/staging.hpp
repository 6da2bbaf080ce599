#pragma once

#include <filesystem>
#include <utility>
#include <vector>

namespace glearn::cli {

/// Two-phase output writing: every file is produced under a temporary
/// name and renamed into place only when the whole run has succeeded, so
/// a failing command leaves no partial outputs behind.
class OutputStager {
 public:
  OutputStager() = default;
  OutputStager(const OutputStager&) = delete;
  OutputStager& operator=(const OutputStager&) = delete;
  ~OutputStager();

  /// Registers a final destination and returns the path to write now.
  std::filesystem::path stage(const std::filesystem::path& final_path);

  /// Temporary location of an already staged destination.
  std::filesystem::path staged_path(const std::filesystem::path& final_path) const;

  /// Final destinations in staging order.
  std::vector<std::filesystem::path> outputs() const;

  /// Renames everything into place.
  void commit();

 private:
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> entries_;  // temp, final
  bool committed_ = false;
};

}  // namespace glearn::cli
