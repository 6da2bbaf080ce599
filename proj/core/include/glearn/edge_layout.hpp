#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "glearn/errors.hpp"

namespace glearn {

/// Number of undirected edges of a simple graph on n nodes: n(n-1)/2.
constexpr std::size_t edge_count(int n) {
  return n < 2 ? 0 : static_cast<std::size_t>(n) * (n - 1) / 2;
}

/// Row-major upper-triangular index of the node pair (i, j), i < j < n.
/// Pairs are laid out (0,1), (0,2), ..., (0,n-1), (1,2), ...
inline std::size_t edge_index(int i, int j, int n) {
  if (i < 0 || i >= j || j >= n) {
    throw std::out_of_range("edge_index: require 0 <= i < j < n, got i=" + std::to_string(i) +
                            " j=" + std::to_string(j) + " n=" + std::to_string(n));
  }
  // sum_{r<i} (n-1-r) + (j-i-1)
  const std::size_t row_start =
      static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i + 1) / 2;
  return row_start + static_cast<std::size_t>(j - i - 1);
}

/// Inverse of edge_count: the n with n(n-1)/2 == edges, or throws.
inline int nodes_from_edge_count(std::size_t edges) {
  // n = (1 + sqrt(1 + 8E)) / 2, validated exactly.
  std::size_t n = 2;
  while (edge_count(static_cast<int>(n)) < edges) ++n;
  if (edge_count(static_cast<int>(n)) != edges) {
    throw ConfigError("vector length " + std::to_string(edges) +
                      " is not n(n-1)/2 for any integer n");
  }
  return static_cast<int>(n);
}

}  // namespace glearn
