#pragma once

#include <cmath>
#include <string>

#include "glearn/errors.hpp"
#include "glearn/types.hpp"

namespace glearn {

inline void check_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DataError(std::string(what) + ": shapes " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()) + " differ");
  }
}

inline double rmse(const Matrix& estimate, const Matrix& reference) {
  check_same_shape(estimate, reference, "rmse");
  if (estimate.size() == 0) throw DataError("rmse: empty input");
  return std::sqrt((estimate - reference).squaredNorm() / static_cast<double>(estimate.size()));
}

inline double mae(const Matrix& estimate, const Matrix& reference) {
  check_same_shape(estimate, reference, "mae");
  if (estimate.size() == 0) throw DataError("mae: empty input");
  return (estimate - reference).cwiseAbs().sum() / static_cast<double>(estimate.size());
}

/// Metrics restricted to entries where `mask` is zero (the unobserved set).
inline double rmse_unobserved(const Matrix& estimate, const Matrix& reference,
                              const Matrix& mask) {
  check_same_shape(estimate, reference, "rmse");
  check_same_shape(estimate, mask, "rmse mask");
  const double count = (mask.array() == 0.0).count();
  if (count == 0.0) throw DataError("rmse: mask leaves no unobserved entries");
  const Matrix diff = (mask.array() == 0.0).select(estimate - reference, Matrix::Zero(
                          estimate.rows(), estimate.cols()));
  return std::sqrt(diff.squaredNorm() / count);
}

inline double mae_unobserved(const Matrix& estimate, const Matrix& reference, const Matrix& mask) {
  check_same_shape(estimate, reference, "mae");
  check_same_shape(estimate, mask, "mae mask");
  const double count = (mask.array() == 0.0).count();
  if (count == 0.0) throw DataError("mae: mask leaves no unobserved entries");
  const Matrix diff = (mask.array() == 0.0).select(estimate - reference, Matrix::Zero(
                          estimate.rows(), estimate.cols()));
  return diff.cwiseAbs().sum() / count;
}

}  // namespace glearn
