#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "glearn/dataset.hpp"
#include "glearn/graph.hpp"
#include "glearn/types.hpp"

namespace glearn {

/// CSV persistence. Doubles are written in shortest round-trip form
/// (well above the 12-significant-digit floor), so write -> read is exact
/// and deterministic inputs give byte-identical files.
std::string format_double(double value);

/// Plain matrix: one row per line, comma-separated, no header.
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);

/// Reads a rectangular CSV matrix; `#` lines and blank lines are skipped.
Matrix read_matrix_csv(const std::filesystem::path& path);

/// Signal matrices are plain matrices with an optional `#` snapshot-index
/// header: rows = nodes, columns = snapshots.
void write_signal_csv(const std::filesystem::path& path, const Matrix& m,
                      bool snapshot_header = false);
Matrix read_signal_csv(const std::filesystem::path& path);

/// Adjacency: first row lists node ids (labels when present, else 0..n-1),
/// then the dense weight matrix. Reading validates symmetry and returns a
/// graph without labels; sensor kinds live in labels files.
void write_adjacency_csv(const std::filesystem::path& path, const SensorGraph& g);
SensorGraph read_adjacency_csv(const std::filesystem::path& path);

/// Observation masks share the signal shape and hold only 0/1.
void write_mask_csv(const std::filesystem::path& path, const Matrix& mask);
Matrix read_mask_csv(const std::filesystem::path& path);

void write_norm_stats_csv(const std::filesystem::path& path, const NormStats& stats);
NormStats read_norm_stats_csv(const std::filesystem::path& path);

void write_labels_csv(const std::filesystem::path& path, const std::vector<NodeLabel>& labels);
std::vector<NodeLabel> read_labels_csv(const std::filesystem::path& path);

}  // namespace glearn
