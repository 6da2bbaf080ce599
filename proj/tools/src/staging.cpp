#include "staging.hpp"

#include <unistd.h>

#include <string>
#include <system_error>

#include "glearn/errors.hpp"

namespace glearn::cli {

OutputStager::~OutputStager() {
  if (committed_) return;
  for (const auto& [temp, final_path] : entries_) {
    std::error_code ec;
    std::filesystem::remove(temp, ec);  // best effort; nothing to report
  }
}

std::filesystem::path OutputStager::stage(const std::filesystem::path& final_path) {
  std::filesystem::path temp = final_path;
  temp += ".partial-" + std::to_string(::getpid());
  entries_.emplace_back(temp, final_path);
  return temp;
}

std::filesystem::path OutputStager::staged_path(const std::filesystem::path& final_path) const {
  for (const auto& [temp, final] : entries_) {
    if (final == final_path) return temp;
  }
  throw DataError("internal: '" + final_path.string() + "' was never staged");
}

std::vector<std::filesystem::path> OutputStager::outputs() const {
  std::vector<std::filesystem::path> out;
  out.reserve(entries_.size());
  for (const auto& [temp, final_path] : entries_) out.push_back(final_path);
  return out;
}

void OutputStager::commit() {
  for (const auto& [temp, final_path] : entries_) {
    std::filesystem::rename(temp, final_path);
  }
  committed_ = true;
}

}  // namespace glearn::cli
