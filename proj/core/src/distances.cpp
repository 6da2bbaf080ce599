#include "glearn/distances.hpp"

#include <string>

#include "glearn/edge_layout.hpp"
#include "glearn/errors.hpp"

namespace glearn {

Vector pairwise_distances(const Matrix& X) {
  const int n = static_cast<int>(X.rows());
  if (n < 2 || X.cols() < 1) throw DataError("pairwise_distances: need >= 2 rows and >= 1 column");
  Vector z(static_cast<Index>(edge_count(n)));
  Index e = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++e) {
      z[e] = (X.row(i) - X.row(j)).squaredNorm();
    }
  }
  return z;
}

double smoothness(const Matrix& X, const Matrix& L) {
  if (X.rows() != L.rows() || L.rows() != L.cols()) {
    throw DataError("smoothness: signal has " + std::to_string(X.rows()) +
                    " rows but Laplacian is " + std::to_string(L.rows()) + "x" +
                    std::to_string(L.cols()));
  }
  return (X.transpose() * L * X).trace();
}

}  // namespace glearn
