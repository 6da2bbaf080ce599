#include "manifest.hpp"

#include <ctime>
#include <fstream>

#include "glearn/errors.hpp"
#include "glearn/version.hpp"
#include "sha256.hpp"
#include "staging.hpp"

namespace glearn::cli {

std::string iso8601_utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

RunManifest::RunManifest(std::string subcommand) {
  doc_["tool"] = std::string("glearn ") + glearn::version();
  doc_["subcommand"] = std::move(subcommand);
  doc_["config"] = nlohmann::ordered_json::object();
  doc_["inputs"] = nlohmann::ordered_json::array();
  doc_["outputs"] = nlohmann::ordered_json::array();
  doc_["seed"] = nullptr;
  doc_["started_at"] = iso8601_utc_now();
}

void RunManifest::set_config(std::string key, nlohmann::ordered_json value) {
  doc_["config"][std::move(key)] = std::move(value);
}

void RunManifest::set_result(std::string key, nlohmann::ordered_json value) {
  if (!doc_.contains("result")) doc_["result"] = nlohmann::ordered_json::object();
  doc_["result"][std::move(key)] = std::move(value);
}

void RunManifest::set_seed(std::uint64_t seed) { doc_["seed"] = seed; }

void RunManifest::add_input(const std::filesystem::path& path) {
  nlohmann::ordered_json entry;
  entry["path"] = path.string();
  entry["sha256"] = sha256_file(path);
  doc_["inputs"].push_back(std::move(entry));
}

void RunManifest::stage(OutputStager& stager,
                        const std::filesystem::path& manifest_path) {
  for (const auto& final_path : stager.outputs()) {
    nlohmann::ordered_json entry;
    entry["path"] = final_path.string();
    entry["sha256"] = sha256_file(stager.staged_path(final_path));
    doc_["outputs"].push_back(std::move(entry));
  }
  doc_["finished_at"] = iso8601_utc_now();

  std::ofstream out(stager.stage(manifest_path));
  if (!out) {
    throw DataError("cannot write manifest: " + manifest_path.string());
  }
  out << doc_.dump(2) << '\n';
}

}  // namespace glearn::cli
