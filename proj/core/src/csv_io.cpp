#include "glearn/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>

#include "glearn/errors.hpp"

namespace glearn {

namespace {

[[noreturn]] void fail_data(const std::filesystem::path& path, const std::string& what) {
  throw DataError(path.string() + ": " + what);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  return in;
}

double parse_cell(const std::filesystem::path& path, int line_no, std::string_view cell) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
    fail_data(path, "line " + std::to_string(line_no) + ": '" + std::string(cell) +
                        "' is not a number");
  }
  return value;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

/// Data lines of a CSV file with their 1-based line numbers.
std::vector<std::pair<int, std::string>> data_lines(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::vector<std::pair<int, std::string>> lines;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (line.empty() || line.front() == '#') continue;
    lines.emplace_back(line_no, std::string(line));
  }
  return lines;
}

Matrix parse_matrix(const std::filesystem::path& path,
                    const std::vector<std::pair<int, std::string>>& lines) {
  if (lines.empty()) fail_data(path, "no data rows");
  const std::size_t cols = split_cells(lines.front().second).size();
  Matrix m(static_cast<Index>(lines.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto& [line_no, text] = lines[r];
    const std::vector<std::string_view> cells = split_cells(text);
    if (cells.size() != cols) {
      fail_data(path, "line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                          " columns, found " + std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = parse_cell(path, line_no, cells[c]);
    }
  }
  return m;
}

void write_rows(std::ofstream& out, const Matrix& m) {
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out = open_out(path);
  write_rows(out, m);
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  return parse_matrix(path, data_lines(path));
}

void write_signal_csv(const std::filesystem::path& path, const Matrix& m, bool snapshot_header) {
  std::ofstream out = open_out(path);
  if (snapshot_header) {
    out << "# snapshot";
    for (Index c = 0; c < m.cols(); ++c) out << ' ' << c;
    out << '\n';
  }
  write_rows(out, m);
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

Matrix read_signal_csv(const std::filesystem::path& path) { return read_matrix_csv(path); }

void write_adjacency_csv(const std::filesystem::path& path, const SensorGraph& g) {
  g.validate(1e-9);
  std::ofstream out = open_out(path);
  for (int i = 0; i < g.size(); ++i) {
    if (i > 0) out << ',';
    out << (g.labels.empty() ? i : g.labels[static_cast<std::size_t>(i)].id);
  }
  out << '\n';
  write_rows(out, g.adjacency);
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

SensorGraph read_adjacency_csv(const std::filesystem::path& path) {
  const auto lines = data_lines(path);
  if (lines.size() < 2) fail_data(path, "adjacency file needs an id row and a weight matrix");

  const auto id_cells = split_cells(lines.front().second);
  for (std::string_view cell : id_cells) {
    int id = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), id);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
      fail_data(path, "id row entry '" + std::string(cell) + "' is not an integer");
    }
  }

  SensorGraph g;
  g.adjacency =
      parse_matrix(path, std::vector<std::pair<int, std::string>>(lines.begin() + 1, lines.end()));
  if (g.adjacency.rows() != static_cast<Index>(id_cells.size())) {
    fail_data(path, "id row has " + std::to_string(id_cells.size()) + " entries but matrix has " +
                        std::to_string(g.adjacency.rows()) + " rows");
  }
  g.validate(1e-9);
  return g;
}

void write_mask_csv(const std::filesystem::path& path, const Matrix& mask) {
  if (((mask.array() != 0.0) && (mask.array() != 1.0)).any()) {
    throw DataError("mask entries must be 0 or 1");
  }
  write_matrix_csv(path, mask);
}

Matrix read_mask_csv(const std::filesystem::path& path) {
  Matrix mask = read_matrix_csv(path);
  if (((mask.array() != 0.0) && (mask.array() != 1.0)).any()) {
    fail_data(path, "mask entries must be 0 or 1");
  }
  return mask;
}

void write_norm_stats_csv(const std::filesystem::path& path, const NormStats& stats) {
  std::ofstream out = open_out(path);
  out << "sensor_kind,min,max\n";
  for (SensorKind kind : {SensorKind::pressure, SensorKind::temperature}) {
    const KindStats& k = stats.of(kind);
    out << to_string(kind) << ',' << format_double(k.min) << ',' << format_double(k.max) << '\n';
  }
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

NormStats read_norm_stats_csv(const std::filesystem::path& path) {
  NormStats stats;
  bool seen_any = false;
  for (const auto& [line_no, text] : data_lines(path)) {
    const auto cells = split_cells(text);
    if (cells.size() != 3) {
      fail_data(path, "line " + std::to_string(line_no) + ": expected kind,min,max");
    }
    if (cells[0] == "sensor_kind") continue;  // header
    const SensorKind kind = sensor_kind_from_string(std::string(cells[0]));
    KindStats& k = stats.of(kind);
    k.min = parse_cell(path, line_no, cells[1]);
    k.max = parse_cell(path, line_no, cells[2]);
    k.degenerate = k.max == k.min;
    seen_any = true;
  }
  if (!seen_any) fail_data(path, "no stats rows");
  return stats;
}

void write_labels_csv(const std::filesystem::path& path, const std::vector<NodeLabel>& labels) {
  std::ofstream out = open_out(path);
  out << "node_id,kind\n";
  for (const NodeLabel& label : labels) {
    out << label.id << ',' << to_string(label.kind) << '\n';
  }
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

std::vector<NodeLabel> read_labels_csv(const std::filesystem::path& path) {
  std::vector<NodeLabel> labels;
  for (const auto& [line_no, text] : data_lines(path)) {
    const auto cells = split_cells(text);
    if (cells.size() != 2) {
      fail_data(path, "line " + std::to_string(line_no) + ": expected node_id,kind");
    }
    if (cells[0] == "node_id") continue;  // header
    int id = 0;
    const auto [ptr, ec] = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), id);
    if (ec != std::errc{} || ptr != cells[0].data() + cells[0].size()) {
      fail_data(path, "line " + std::to_string(line_no) + ": bad node id '" +
                          std::string(cells[0]) + "'");
    }
    labels.push_back({id, sensor_kind_from_string(std::string(cells[1]))});
  }
  if (labels.empty()) fail_data(path, "no label rows");
  return labels;
}

}  // namespace glearn
