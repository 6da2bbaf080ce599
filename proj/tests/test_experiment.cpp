#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>

#include <json.hpp>

#include "glearn/errors.hpp"
#include "glearn/experiment.hpp"
#include "glearn/physics.hpp"
#include "oracles.hpp"
#include "subprocess.hpp"

using glearn::ConfigError;
using glearn::Dataset;
using glearn::ExperimentResult;
using glearn::ExperimentSpec;
using glearn::Matrix;
using glearn::Method;
using glearn::NetworkTopology;
using glearn::PipeSpec;
using glearn::PriorGraph;
using glearn::SensorKind;

namespace {

/// Four-node network, one pipe per kind plus a spur, quick to learn on.
NetworkTopology tiny_topology() {
  NetworkTopology topo;
  topo.pressure_nodes = {0, 1};
  topo.temperature_nodes = {2, 3};

  PipeSpec p;
  p.from = 0;
  p.to = 1;
  p.length_m = 150.0;
  p.diameter_m = 0.12;
  p.roughness = 130.0;
  p.flow_m3s = 0.03;
  p.mass_flow_kgs = 30.0;
  topo.pressure_pipes.push_back(p);

  PipeSpec t;
  t.from = 2;
  t.to = 3;
  t.length_m = 90.0;
  t.diameter_m = 0.1;
  t.roughness = 110.0;
  t.flow_m3s = 0.02;
  t.heat_rate_w = 40000.0;
  t.mass_flow_kgs = 1.5;
  topo.temperature_pipes.push_back(t);
  return topo;
}

Dataset tiny_dataset(std::uint64_t seed = 3) {
  glearn::GenerationConfig config;
  config.topology = tiny_topology();
  config.n_samples = 30;
  config.train_size = 20;
  config.seed = seed;
  return glearn::generate(config);
}

ExperimentSpec small_spec() {
  ExperimentSpec spec;
  spec.methods = {Method::physics, Method::adj_smooth, Method::igl};
  spec.rhos = {0.5, 0.9};
  spec.cv_folds = 2;
  spec.grid.beta = {0.2, 0.4};
  spec.grid.upsilon = {0.2};
  spec.grid.mu = {0.5, 1.0};
  spec.k_max = 5000;
  return spec;
}

/// All-zero signals: every grid point scores identically, exposing the
/// deterministic tie policy.
Dataset zero_dataset() {
  Dataset data;
  data.train_clean = Matrix::Zero(3, 6);
  data.train_noisy = Matrix::Zero(3, 6);
  data.test = Matrix::Zero(3, 4);
  data.labels = {{0, SensorKind::pressure}, {1, SensorKind::pressure},
                 {2, SensorKind::pressure}};
  return data;
}

PriorGraph three_node_prior() {
  NetworkTopology topo;
  topo.pressure_nodes = {0, 1, 2};
  PipeSpec p;
  p.from = 0;
  p.to = 1;
  p.length_m = 100.0;
  p.diameter_m = 0.1;
  p.roughness = 120.0;
  p.flow_m3s = 0.05;
  p.mass_flow_kgs = 50.0;
  topo.pressure_pipes.push_back(p);
  p.from = 1;
  p.to = 2;
  p.length_m = 150.0;
  topo.pressure_pipes.push_back(p);
  return glearn::build_prior_graph(topo, 0.1);
}

}  // namespace

TEST_CASE("method names round-trip") {
  for (Method m : {Method::physics, Method::lap_smooth, Method::adj_smooth, Method::igl}) {
    CHECK(glearn::method_from_string(glearn::to_string(m)) == m);
  }
  CHECK_THROWS_AS(glearn::method_from_string("kriging"), ConfigError);
}

TEST_CASE("experiment spec validation") {
  ExperimentSpec spec;
  spec.methods = {Method::igl, Method::igl};
  CHECK_THROWS_AS(spec.validate(), ConfigError);

  spec = ExperimentSpec{};
  spec.rhos = {0.0};
  CHECK_THROWS_AS(spec.validate(), ConfigError);

  spec = ExperimentSpec{};
  spec.cv_folds = 1;
  CHECK_THROWS_AS(spec.validate(), ConfigError);

  spec = ExperimentSpec{};
  spec.grid.mu.clear();
  CHECK_THROWS_AS(spec.validate(), ConfigError);

  CHECK_NOTHROW(ExperimentSpec{}.validate());
}

TEST_CASE("exact score ties resolve to the smallest hyperparameters") {
  const Dataset data = zero_dataset();
  const PriorGraph prior = three_node_prior();

  ExperimentSpec spec;
  spec.methods = {Method::igl};
  spec.cv_folds = 3;
  spec.grid.alpha = {1.0};
  spec.grid.beta = {0.4, 0.1, 0.2};
  spec.grid.upsilon = {0.8, 0.2};
  spec.grid.mu = {5.0, 0.5};
  spec.k_max = 2000;

  const auto choice = glearn::cross_validate(data, Method::igl, spec, &prior);
  CHECK(choice.mean_rmse == 0.0);
  CHECK(choice.params.alpha == 1.0);
  CHECK(choice.params.beta == 0.1);
  CHECK(choice.params.upsilon == 0.2);
  CHECK(choice.params.mu == 0.5);

  const auto adj = glearn::cross_validate(data, Method::adj_smooth, spec, &prior);
  CHECK(adj.params.upsilon == 0.0);
  CHECK(adj.params.beta == 0.1);

  const auto lap = glearn::cross_validate(data, Method::lap_smooth, spec, &prior);
  CHECK(lap.params.alpha == 0.0);
  CHECK(lap.params.beta == 0.1);

  const auto phys = glearn::cross_validate(data, Method::physics, spec, &prior);
  CHECK(phys.params.beta == 0.0);
  CHECK(phys.params.mu == 0.5);
}

TEST_CASE("a larger grid never selects a worse score") {
  const Dataset data = tiny_dataset();
  const PriorGraph prior = glearn::build_prior_graph(tiny_topology(), 0.1);

  ExperimentSpec base = small_spec();
  base.methods = {Method::igl};

  ExperimentSpec wider = base;
  wider.grid.beta = {0.1, 0.2, 0.4};
  wider.grid.upsilon = {0.2, 0.4};
  wider.grid.mu = {0.5, 1.0, 2.0};

  const auto narrow = glearn::cross_validate(data, Method::igl, base, &prior);
  const auto wide = glearn::cross_validate(data, Method::igl, wider, &prior);
  CHECK(wide.mean_rmse <= narrow.mean_rmse + 1e-12);
}

TEST_CASE("cross-validation needs enough snapshots for the folds") {
  Dataset data = zero_dataset();
  data.train_clean = Matrix::Zero(3, 4);
  data.train_noisy = Matrix::Zero(3, 4);
  const PriorGraph prior = three_node_prior();
  ExperimentSpec spec;
  spec.cv_folds = 5;
  CHECK_THROWS_AS(glearn::cross_validate(data, Method::physics, spec, &prior),
                  glearn::DataError);
}

TEST_CASE("the physics method returns the prior graph with data labels") {
  const Dataset data = tiny_dataset();
  const PriorGraph prior = glearn::build_prior_graph(tiny_topology(), 0.1);
  const auto graph =
      glearn::learn_graph(Method::physics, data, glearn::HyperParams{}, small_spec(), &prior);
  CHECK((graph.adjacency - prior.w_pi.adjacency).cwiseAbs().maxCoeff() == 0.0);
  CHECK(graph.labels == data.labels);
}

TEST_CASE("learned graphs differ across methods but share the node set") {
  const Dataset data = tiny_dataset();
  const PriorGraph prior = glearn::build_prior_graph(tiny_topology(), 0.1);
  const ExperimentSpec spec = small_spec();
  glearn::HyperParams hp{1.0, 0.2, 0.2, 1.0};

  const auto adj = glearn::learn_graph(Method::adj_smooth, data, hp, spec, &prior);
  const auto igl = glearn::learn_graph(Method::igl, data, hp, spec, &prior);
  CHECK(adj.adjacency.rows() == 4);
  CHECK(igl.adjacency.rows() == 4);
  CHECK((adj.adjacency - igl.adjacency).cwiseAbs().maxCoeff() > 0.0);
  CHECK_NOTHROW(adj.validate(1e-12));
  CHECK_NOTHROW(igl.validate(1e-12));
}

TEST_CASE("a full experiment fills every scenario-method cell") {
  const Dataset data = tiny_dataset();
  const PriorGraph prior = glearn::build_prior_graph(tiny_topology(), 0.1);
  const ExperimentSpec spec = small_spec();

  const ExperimentResult result = glearn::run_experiment(spec, data, prior);
  REQUIRE(result.scenarios.size() == 3);  // denoising plus two densities
  CHECK(result.scenarios[0].find("Denoising") != std::string::npos);
  CHECK(result.scenarios[1].find("0.5") != std::string::npos);
  REQUIRE(result.cells.size() == 9);

  for (const auto& cell : result.cells) {
    CHECK(cell.ok);
    CHECK(cell.rmse >= cell.mae - 1e-12);  // quadratic mean dominates
    CHECK(cell.rmse >= 0.0);
  }

  // Both smoothness learners ran, so the disagreement map exists.
  CHECK(result.heatmap.rows() == 4);
  CHECK((result.heatmap.array() >= 0.0).all());

  CHECK(result.chosen.size() == 3);
  CHECK(result.graphs.size() == 3);
  CHECK(result.find(result.scenarios[0], Method::igl) != nullptr);
  CHECK(result.find("nonexistent", Method::igl) == nullptr);

  // Determinism: the same inputs give the same numbers.
  const ExperimentResult again = glearn::run_experiment(spec, data, prior);
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    CHECK(result.cells[i].rmse == again.cells[i].rmse);
    CHECK(result.cells[i].mae == again.cells[i].mae);
  }
}

TEST_CASE("the disagreement map needs both smoothness learners") {
  const Dataset data = tiny_dataset();
  const PriorGraph prior = glearn::build_prior_graph(tiny_topology(), 0.1);
  ExperimentSpec spec = small_spec();
  spec.methods = {Method::physics, Method::igl};
  const ExperimentResult result = glearn::run_experiment(spec, data, prior);
  CHECK(result.heatmap.size() == 0);
}

TEST_CASE("a method failure marks its cells but the run continues") {
  Dataset data = tiny_dataset();
  data.train_clean = data.train_clean.leftCols(3).eval();
  data.train_noisy = data.train_noisy.leftCols(3).eval();  // fewer snapshots than folds
  const PriorGraph prior = glearn::build_prior_graph(tiny_topology(), 0.1);
  ExperimentSpec spec = small_spec();
  spec.cv_folds = 5;

  const ExperimentResult result = glearn::run_experiment(spec, data, prior);
  REQUIRE(!result.cells.empty());
  for (const auto& cell : result.cells) {
    CHECK_FALSE(cell.ok);
    CHECK(!cell.error.empty());
  }
  CHECK(glearn::format_results_text(result).find("failed") != std::string::npos);
}

TEST_CASE("the text table stars the best method per row") {
  const Dataset data = tiny_dataset();
  const PriorGraph prior = glearn::build_prior_graph(tiny_topology(), 0.1);
  const ExperimentResult result = glearn::run_experiment(small_spec(), data, prior);

  const std::string text = glearn::format_results_text(result);
  CHECK(text.find("Scenario") != std::string::npos);
  CHECK(text.find("RMSE") != std::string::npos);
  CHECK(text.find("MAE") != std::string::npos);
  CHECK(text.find("physics") != std::string::npos);
  CHECK(text.find("igl") != std::string::npos);

  // One star per metric row: 2 rows per scenario.
  const std::size_t stars = std::count(text.begin(), text.end(), '*');
  CHECK(stars == 2 * result.scenarios.size());

  // A single-method table has nothing to rank.
  ExperimentSpec solo = small_spec();
  solo.methods = {Method::physics};
  const ExperimentResult alone = glearn::run_experiment(solo, data, prior);
  const std::string solo_text = glearn::format_results_text(alone);
  CHECK(std::count(solo_text.begin(), solo_text.end(), '*') == 0);
}

TEST_CASE("the results file is machine-readable and time-free") {
  const Dataset data = tiny_dataset();
  const PriorGraph prior = glearn::build_prior_graph(tiny_topology(), 0.1);
  const ExperimentResult result = glearn::run_experiment(small_spec(), data, prior);

  const auto dir = testproc::make_temp_dir("glearn_results");
  const auto file = dir / "results.json";
  glearn::write_results_json(file, result);

  const auto doc = nlohmann::json::parse(testproc::slurp(file));
  CHECK(doc.at("methods").size() == 3);
  CHECK(doc.at("cells").size() == 9);
  for (const auto& cell : doc.at("cells")) {
    CHECK(cell.at("ok").get<bool>());
    CHECK(cell.at("rmse").get<double>() >= 0.0);
    CHECK(cell.contains("scenario"));
  }
  CHECK(doc.at("chosen_hyperparameters").contains("igl"));
  CHECK(doc.at("chosen_hyperparameters").at("igl").contains("cv_rmse"));
  CHECK_FALSE(doc.contains("started_at"));
  CHECK_FALSE(doc.contains("finished_at"));

  std::filesystem::remove_all(dir);
}
