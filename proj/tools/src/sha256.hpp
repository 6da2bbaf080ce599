#pragma once

#include <filesystem>
#include <string>

namespace glearn::cli {

/// Lowercase hex SHA-256 digest of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace glearn::cli
