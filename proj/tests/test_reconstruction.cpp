#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "glearn/distances.hpp"
#include "glearn/errors.hpp"
#include "glearn/graph.hpp"
#include "glearn/reconstruction.hpp"
#include "oracles.hpp"

using glearn::ConfigError;
using glearn::DataError;
using glearn::Index;
using glearn::Matrix;
using glearn::ReconstructionParams;
using glearn::Vector;

namespace {

Matrix path_laplacian(int n) {
  Matrix w = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) w(i, i + 1) = w(i + 1, i) = 1.0;
  glearn::SensorGraph g;
  g.adjacency = std::move(w);
  return glearn::laplacian(g);
}

Matrix two_node_laplacian() {
  Matrix lap(2, 2);
  lap << 1, -1, -1, 1;
  return lap;
}

}  // namespace

TEST_CASE("denoising the unit two-node graph") {
  Matrix y(2, 1);
  y << 1.0, 0.0;
  const Matrix x = glearn::denoise(y, two_node_laplacian(), 1.0);
  CHECK(x(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(x(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("denoised output solves the normal equations") {
  oracle::TestRng rng(501);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.integer(2, 10);
    glearn::SensorGraph g;
    g.adjacency = oracle::random_connected_adjacency(n, rng);
    const Matrix lap = glearn::laplacian(g);
    const Matrix y = oracle::random_matrix(n, rng.integer(1, 6), rng);
    const double mu = rng.uniform(0.05, 5.0);
    const Matrix x = glearn::denoise(y, lap, mu);
    const Matrix residual = x + mu * (lap * x) - y;
    CHECK(residual.cwiseAbs().maxCoeff() < 1e-10);

    // Smoothing never roughens the signal.
    CHECK(glearn::smoothness(x, lap) <= glearn::smoothness(y, lap) + 1e-12);
  }
}

TEST_CASE("denoising limits: tiny weight and empty graph") {
  oracle::TestRng rng(503);
  const Matrix y = oracle::random_matrix(5, 3, rng);
  const Matrix lap = path_laplacian(5);

  const Matrix nearly = glearn::denoise(y, lap, 1e-12);
  CHECK((nearly - y).cwiseAbs().maxCoeff() <= 1e-9);

  const Matrix same = glearn::denoise(y, Matrix::Zero(5, 5), 1.0);
  CHECK((same - y).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("denoising a matrix equals denoising its columns") {
  oracle::TestRng rng(509);
  const Matrix lap = path_laplacian(6);
  const Matrix y = oracle::random_matrix(6, 4, rng);
  const Matrix joint = glearn::denoise(y, lap, 0.7);
  for (Index c = 0; c < y.cols(); ++c) {
    const Matrix single = glearn::denoise(y.col(c), lap, 0.7);
    CHECK((joint.col(c) - single.col(0)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("denoise argument validation") {
  const Matrix y = Matrix::Zero(3, 2);
  CHECK_THROWS_AS(glearn::denoise(y, path_laplacian(3), 0.0), ConfigError);
  CHECK_THROWS_AS(glearn::denoise(y, path_laplacian(4), 1.0), ConfigError);
  CHECK_THROWS_AS(glearn::denoise(y, Matrix::Zero(3, 4), 1.0), DataError);

  Matrix bad = y;
  bad(1, 1) = std::nan("");
  CHECK_THROWS_AS(glearn::denoise(bad, path_laplacian(3), 1.0), DataError);
}

TEST_CASE("imputing the middle of a three-node path") {
  Matrix y(3, 1);
  y << 1.0, 0.0, 3.0;
  Matrix mask(3, 1);
  mask << 1.0, 0.0, 1.0;
  const auto result = glearn::impute(y, mask, path_laplacian(3));
  CHECK(result.converged);
  CHECK(std::abs(result.values(1, 0) - 2.0) < 1e-6);
  CHECK(result.values(0, 0) == 1.0);
  CHECK(result.values(2, 0) == 3.0);
}

TEST_CASE("imputation matches the per-column harmonic solution") {
  oracle::TestRng rng(521);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = rng.integer(3, 8);
    glearn::SensorGraph g;
    g.adjacency = oracle::random_connected_adjacency(n, rng);
    const Matrix lap = glearn::laplacian(g);

    const Index cols = rng.integer(1, 4);
    const Matrix truth = oracle::random_matrix(n, cols, rng);
    Matrix mask(n, cols);
    for (Index c = 0; c < cols; ++c) {
      for (Index r = 0; r < n; ++r) mask(r, c) = rng.chance(0.6) ? 1.0 : 0.0;
      mask(rng.integer(0, n - 1), c) = 1.0;  // at least one anchor per column
    }
    const Matrix observed = mask.cwiseProduct(truth);

    ReconstructionParams params;
    params.tol = 1e-13;
    params.max_iters = 2000000;
    const auto result = glearn::impute(observed, mask, lap, params);
    const Matrix expected = oracle::harmonic_impute(observed, mask, lap);
    CHECK((result.values - expected).cwiseAbs().maxCoeff() < 1e-5);

    // Observed entries pass through untouched, bit for bit.
    for (Index c = 0; c < cols; ++c) {
      for (Index r = 0; r < n; ++r) {
        if (mask(r, c) == 1.0) CHECK(result.values(r, c) == observed(r, c));
      }
    }
  }
}

TEST_CASE("fully observed input comes back unchanged") {
  oracle::TestRng rng(523);
  const Matrix y = oracle::random_matrix(4, 3, rng);
  const auto result = glearn::impute(y, Matrix::Ones(4, 3), path_laplacian(4));
  CHECK(result.converged);
  CHECK((result.values - y).cwiseAbs().maxCoeff() == 0.0);
  CHECK(result.warnings.empty());
}

TEST_CASE("smoothness history never increases") {
  oracle::TestRng rng(527);
  const Matrix lap = path_laplacian(7);
  const Matrix truth = oracle::random_matrix(7, 3, rng);
  Matrix mask(7, 3);
  for (Index c = 0; c < 3; ++c) {
    for (Index r = 0; r < 7; ++r) mask(r, c) = rng.chance(0.5) ? 1.0 : 0.0;
    mask(0, c) = 1.0;
  }
  ReconstructionParams params;
  params.record_objective = true;
  const auto result = glearn::impute(mask.cwiseProduct(truth), mask, lap, params);
  REQUIRE(result.objective.size() == static_cast<std::size_t>(result.iterations) + 1);
  for (std::size_t k = 1; k < result.objective.size(); ++k) {
    CHECK(result.objective[k] <= result.objective[k - 1] + 1e-12);
  }
}

TEST_CASE("components with no observations fall back to column means") {
  // Two disjoint pairs: nodes {0,1} and {2,3}.
  Matrix w = Matrix::Zero(4, 4);
  w(0, 1) = w(1, 0) = 1.0;
  w(2, 3) = w(3, 2) = 1.0;
  glearn::SensorGraph g;
  g.adjacency = std::move(w);
  const Matrix lap = glearn::laplacian(g);

  Matrix y(4, 1);
  y << 2.0, 4.0, 0.0, 0.0;
  Matrix mask(4, 1);
  mask << 1.0, 1.0, 0.0, 0.0;  // second pair entirely hidden

  const auto result = glearn::impute(y, mask, lap);
  REQUIRE(result.warnings.size() == 1);
  CHECK(result.warnings[0].find("2 unobserved entries") != std::string::npos);
  CHECK(result.values(2, 0) == doctest::Approx(3.0).epsilon(1e-9));  // observed column mean
  CHECK(result.values(3, 0) == doctest::Approx(3.0).epsilon(1e-9));

  // A fully hidden column falls back to the global observed mean.
  Matrix y2(4, 2);
  y2 << 2.0, 0.0, 4.0, 0.0, 6.0, 0.0, 8.0, 0.0;
  Matrix mask2(4, 2);
  mask2 << 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0;
  const auto blind = glearn::impute(y2, mask2, lap);
  CHECK(blind.values(0, 1) == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(blind.values(3, 1) == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("manual step size reproduces the automatic choice") {
  oracle::TestRng rng(541);
  const Matrix lap = path_laplacian(5);
  const Matrix truth = oracle::random_matrix(5, 2, rng);
  Matrix mask = Matrix::Ones(5, 2);
  mask(2, 0) = 0.0;
  mask(4, 1) = 0.0;

  ReconstructionParams automatic;
  ReconstructionParams manual;
  manual.xi = 1.0 / glearn::symmetric_lambda_max(lap);
  const auto a = glearn::impute(mask.cwiseProduct(truth), mask, lap, automatic);
  const auto b = glearn::impute(mask.cwiseProduct(truth), mask, lap, manual);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("imputation iteration cap") {
  oracle::TestRng rng(547);
  const Matrix lap = path_laplacian(6);
  Matrix mask = Matrix::Ones(6, 1);
  mask(3, 0) = 0.0;
  ReconstructionParams params;
  params.tol = 1e-17;
  params.max_iters = 4;
  const auto result =
      glearn::impute(mask.cwiseProduct(oracle::random_matrix(6, 1, rng)), mask, lap, params);
  CHECK(result.iterations == 4);
  CHECK_FALSE(result.converged);
}

TEST_CASE("largest eigenvalue by power iteration") {
  CHECK(glearn::symmetric_lambda_max(Matrix::Zero(4, 4)) == 0.0);
  CHECK(glearn::symmetric_lambda_max(two_node_laplacian()) == doctest::Approx(2.0).epsilon(1e-8));

  Matrix diag = Matrix::Zero(3, 3);
  diag.diagonal() << 1.0, 2.0, 3.0;
  CHECK(glearn::symmetric_lambda_max(diag) == doctest::Approx(3.0).epsilon(1e-8));

  oracle::TestRng rng(557);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = rng.integer(2, 10);
    glearn::SensorGraph g;
    g.adjacency = oracle::random_connected_adjacency(n, rng);
    const Matrix lap = glearn::laplacian(g);
    const double expected = oracle::power_lambda_max(lap);
    CHECK(glearn::symmetric_lambda_max(lap) == doctest::Approx(expected).epsilon(1e-6));
  }

  CHECK_THROWS_AS(glearn::symmetric_lambda_max(Matrix::Zero(2, 3)), DataError);
}

TEST_CASE("connected components are labeled in first-seen order") {
  const auto path = glearn::connected_components(path_laplacian(4));
  CHECK(path == std::vector<int>{0, 0, 0, 0});

  Matrix w = Matrix::Zero(5, 5);
  w(0, 2) = w(2, 0) = 1.0;
  w(3, 4) = w(4, 3) = 0.5;
  glearn::SensorGraph g;
  g.adjacency = std::move(w);
  const auto split = glearn::connected_components(glearn::laplacian(g));
  CHECK(split == std::vector<int>{0, 1, 0, 2, 2});
}

TEST_CASE("mask validation") {
  CHECK_NOTHROW(glearn::validate_mask(Matrix::Ones(2, 3), 2, 3));
  CHECK_THROWS_AS(glearn::validate_mask(Matrix::Ones(2, 3), 3, 2), ConfigError);
  Matrix fractional = Matrix::Ones(2, 2);
  fractional(0, 1) = 0.5;
  CHECK_THROWS_AS(glearn::validate_mask(fractional, 2, 2), DataError);
}
