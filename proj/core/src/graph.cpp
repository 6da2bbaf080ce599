#include "glearn/graph.hpp"

#include <cmath>
#include <string>

#include "glearn/errors.hpp"

namespace glearn {

SensorKind sensor_kind_from_string(const std::string& s) {
  if (s == "pressure") return SensorKind::pressure;
  if (s == "temperature") return SensorKind::temperature;
  throw DataError("unknown sensor kind '" + s + "'");
}

EdgeWeightVector EdgeWeightVector::zeros(int n) {
  if (n < 2) throw DataError("EdgeWeightVector: need at least 2 nodes, got " + std::to_string(n));
  return {n, Vector::Zero(static_cast<Index>(edge_count(n)))};
}

void EdgeWeightVector::validate() const {
  if (nodes < 2) throw DataError("EdgeWeightVector: need at least 2 nodes");
  if (weights.size() != static_cast<Index>(edge_count(nodes))) {
    throw DataError("EdgeWeightVector: length " + std::to_string(weights.size()) +
                    " != n(n-1)/2 = " + std::to_string(edge_count(nodes)));
  }
  for (Index e = 0; e < weights.size(); ++e) {
    if (!(weights[e] >= 0.0)) {
      throw DataError("EdgeWeightVector: negative or non-finite weight at index " +
                      std::to_string(e));
    }
  }
}

void SensorGraph::validate(double tol) const {
  const Index n = adjacency.rows();
  if (adjacency.cols() != n) throw DataError("SensorGraph: adjacency must be square");
  if (!labels.empty() && static_cast<Index>(labels.size()) != n) {
    throw DataError("SensorGraph: label count " + std::to_string(labels.size()) +
                    " != node count " + std::to_string(n));
  }
  for (Index i = 0; i < n; ++i) {
    if (std::abs(adjacency(i, i)) > tol) {
      throw DataError("SensorGraph: nonzero diagonal at node " + std::to_string(i));
    }
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(adjacency(i, j) - adjacency(j, i)) > tol) {
        throw DataError("SensorGraph: asymmetric at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
      }
      if (!(adjacency(i, j) >= -tol)) {
        throw DataError("SensorGraph: negative weight at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
      }
    }
  }
}

SensorGraph vector_to_adjacency(const EdgeWeightVector& w, std::vector<NodeLabel> labels) {
  w.validate();
  const int n = w.nodes;
  Matrix W = Matrix::Zero(n, n);
  std::size_t e = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++e) {
      W(i, j) = w.weights[static_cast<Index>(e)];
      W(j, i) = w.weights[static_cast<Index>(e)];
    }
  }
  return SensorGraph{std::move(W), std::move(labels)};
}

EdgeWeightVector adjacency_to_vector(const SensorGraph& g) {
  g.validate(1e-12);
  const int n = g.size();
  EdgeWeightVector w = EdgeWeightVector::zeros(n);
  std::size_t e = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++e) {
      w.weights[static_cast<Index>(e)] = g.adjacency(i, j);
    }
  }
  return w;
}

EdgeWeightVector normalize_and_threshold(EdgeWeightVector w, double threshold) {
  w.validate();
  if (!(threshold >= 0.0)) throw DataError("normalize_and_threshold: threshold must be >= 0");
  const double peak = w.weights.maxCoeff();
  if (peak > 0.0) {
    w.weights /= peak;
    w.weights = (w.weights.array() < threshold).select(0.0, w.weights);
  }
  return w;
}

Vector upper_triangle(const Matrix& m) {
  const Index n = m.rows();
  if (m.cols() != n) throw DataError("upper_triangle: matrix must be square");
  if (n < 2) throw DataError("upper_triangle: need at least 2 rows");
  Vector v(static_cast<Index>(edge_count(static_cast<int>(n))));
  Index e = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j, ++e) {
      v[e] = m(i, j);
    }
  }
  return v;
}

Matrix laplacian(const SensorGraph& g) {
  const Matrix& W = g.adjacency;
  Matrix L = -W;
  L.diagonal() = W.rowwise().sum();
  return L;
}

bool is_valid_laplacian(const Matrix& L, double tol) {
  const Index n = L.rows();
  if (L.cols() != n) return false;
  for (Index i = 0; i < n; ++i) {
    if (L(i, i) < -tol) return false;
    if (std::abs(L.row(i).sum()) > tol) return false;
    for (Index j = 0; j < n; ++j) {
      if (std::abs(L(i, j) - L(j, i)) > tol) return false;
      if (i != j && L(i, j) > tol) return false;
    }
  }
  return true;
}

}  // namespace glearn
