#include "glearn/degree_operator.hpp"

#include <cmath>
#include <string>

#include "glearn/edge_layout.hpp"
#include "glearn/errors.hpp"

namespace glearn {

Vector degree_operator_apply(const Vector& w, int n) {
  if (w.size() != static_cast<Index>(edge_count(n))) {
    throw DataError("degree_operator_apply: vector length " + std::to_string(w.size()) +
                    " does not match n=" + std::to_string(n));
  }
  Vector d = Vector::Zero(n);
  Index e = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++e) {
      d[i] += w[e];
      d[j] += w[e];
    }
  }
  return d;
}

Vector degree_operator_adjoint(const Vector& d) {
  const int n = static_cast<int>(d.size());
  Vector out(static_cast<Index>(edge_count(n)));
  Index e = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++e) {
      out[e] = d[i] + d[j];
    }
  }
  return out;
}

double degree_operator_norm(int n) { return std::sqrt(2.0 * (n - 1)); }

Matrix degree_operator_matrix(int n) {
  Matrix S = Matrix::Zero(n, static_cast<Index>(edge_count(n)));
  Index e = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++e) {
      S(i, e) = 1.0;
      S(j, e) = 1.0;
    }
  }
  return S;
}

}  // namespace glearn
