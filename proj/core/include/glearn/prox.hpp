#pragma once

#include "glearn/types.hpp"

namespace glearn {

/// Proximal operators used by the primal-dual graph-learning solver.

/// prox of gamma * (2 z^T w + indicator{w >= 0}): elementwise
/// max(0, y - 2 gamma z). Requires z >= 0 and matching lengths.
Vector prox_weighted_l1_nonneg(const Vector& y, double gamma, const Vector& z);

/// prox of lambda * (-alpha 1^T log(u)): elementwise
/// (y + sqrt(y^2 + 4 alpha lambda)) / 2. Always strictly positive.
Vector prox_log_barrier(const Vector& y, double lambda, double alpha);

/// prox of the convex conjugate of the log barrier, via the Moreau
/// decomposition: elementwise (y - sqrt(y^2 + 4 alpha gamma)) / 2.
/// Always strictly negative.
Vector prox_log_barrier_conjugate(const Vector& y, double gamma, double alpha);

}  // namespace glearn
