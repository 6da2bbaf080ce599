#include "glearn/prox.hpp"

#include "glearn/errors.hpp"

namespace glearn {

Vector prox_weighted_l1_nonneg(const Vector& y, double gamma, const Vector& z) {
  if (y.size() != z.size()) {
    throw DataError("prox_weighted_l1_nonneg: length mismatch (" + std::to_string(y.size()) +
                    " vs " + std::to_string(z.size()) + ")");
  }
  if (!(gamma > 0.0)) {
    throw ConfigError("prox_weighted_l1_nonneg: gamma must be positive");
  }
  if ((z.array() < 0.0).any()) {
    throw DataError("prox_weighted_l1_nonneg: z must be nonnegative");
  }
  return (y - 2.0 * gamma * z).cwiseMax(0.0);
}

Vector prox_log_barrier(const Vector& y, double lambda, double alpha) {
  if (!(lambda > 0.0) || !(alpha > 0.0)) {
    throw ConfigError("prox_log_barrier: lambda and alpha must be positive");
  }
  const double c = 4.0 * alpha * lambda;
  return ((y.array() + (y.array().square() + c).sqrt()) / 2.0).matrix();
}

Vector prox_log_barrier_conjugate(const Vector& y, double gamma, double alpha) {
  if (!(gamma > 0.0) || !(alpha > 0.0)) {
    throw ConfigError("prox_log_barrier_conjugate: gamma and alpha must be positive");
  }
  const double c = 4.0 * alpha * gamma;
  return ((y.array() - (y.array().square() + c).sqrt()) / 2.0).matrix();
}

}  // namespace glearn
