#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "pwcheck/errors.hpp"
#include "pwcheck/pipeline.hpp"
#include "pwcheck/report_io.hpp"

using namespace pwcheck;
using std::numbers::pi;

namespace {
ExperimentConfig base_config() {
  ExperimentConfig cfg;
  cfg.t = Complex(2.0, 0.5);
  return cfg;
}
}  // namespace

TEST_CASE("config validation") {
  auto cfg = base_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.samples = 10;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.R_values = {100.0, -1.0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.vertex_threshold = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.mu = "random";
  cfg.seed = 9;
  CHECK(cfg.mu_profile().to_string() == "random:9");
}

TEST_CASE("trajectory at R = 1e4 closes and winds once") {
  auto cfg = base_config();
  const auto traj = run_trajectory(cfg, 1e4);
  CHECK(traj.closed);
  REQUIRE(traj.samples.size() >= 361);
  CHECK(traj.samples.front().phi == 0.0);
  CHECK(traj.samples.back().phi == 2 * pi);
  for (std::size_t i = 1; i < traj.samples.size(); ++i)
    CHECK(traj.samples[i].phi > traj.samples[i - 1].phi);
  const int w = winding_number(traj);
  CHECK(std::abs(w) == 1);

  cfg.mu = "random:7";
  CHECK(winding_number(run_trajectory(cfg, 1e4)) == w);
  cfg.mu = "zero";
  cfg.partition.scheme = PartitionScheme::kLogRatio;
  CHECK(winding_number(run_trajectory(cfg, 1e4)) == w);
}

TEST_CASE("tiny R is not near infinity") {
  CHECK_THROWS_AS(run_trajectory(base_config(), 1e-6), NotNearInfinityError);
}

TEST_CASE("refinement cap exhausted reports undersampling") {
  auto cfg = base_config();
  cfg.samples = 36;
  cfg.refinement_cap = 0;
  CHECK_THROWS_AS(run_trajectory(cfg, 1e6), UndersampledError);
  cfg.refinement_cap = 12;
  CHECK(std::abs(winding_number(run_trajectory(cfg, 1e6))) == 1);
}

TEST_CASE("verification over the default R sweep") {
  const auto cfg = base_config();
  const auto report = verify_theorem(cfg);
  REQUIRE(report.runs.size() == 3);
  for (const auto& run : report.runs) {
    CHECK(std::abs(run.winding) == 1);
    CHECK(run.winding == report.runs.front().winding);
    CHECK(run.mismatches == 0);
    CHECK(run.guarded_samples > 0);
    CHECK(run.min_margin > 0.0);
  }
  REQUIRE(report.smallest_passing_R().has_value());
  CHECK(*report.smallest_passing_R() == 1e2);
}

TEST_CASE("degenerate triangle surfaces the t value") {
  auto cfg = base_config();
  cfg.degeneracy_floor = 1e3;
  try {
    prepare_problem(cfg);
    FAIL("expected DegenerateTriangleError");
  } catch (const DegenerateTriangleError& e) {
    CHECK(std::string(e.what()).find("t = 2") != std::string::npos);
  }
}

TEST_CASE("zero guard band: mismatches reported, not fatal") {
  auto cfg = base_config();
  cfg.guard_band = 0.0;
  cfg.R_values = {1e2};
  cfg.samples = 3600;
  const auto report = run_verification(cfg);
  CHECK_NOTHROW(assert_theorem(report));
  CHECK(report.runs[0].guarded_samples > 0);
}

TEST_CASE("transition widths shrink like R^-1/2") {
  auto cfg = base_config();
  const auto problem = prepare_problem(cfg);
  const auto w1 = transition_widths(problem, cfg, 1e4, cfg.vertex_threshold);
  const auto w4 = transition_widths(problem, cfg, 4e4, cfg.vertex_threshold);
  for (int j = 0; j < 3; ++j) {
    const double ratio = w4[j] / w1[j];
    CHECK(ratio >= 0.4);
    CHECK(ratio <= 0.6);
  }
  const auto a = transition_widths(problem, cfg, 1e2, cfg.vertex_threshold);
  const auto b = transition_widths(problem, cfg, 1e3, cfg.vertex_threshold);
  for (int j = 0; j < 3; ++j) {
    CHECK(a[j] > b[j]);
    CHECK(b[j] > w1[j]);
  }
  auto cfg_mu = cfg;
  cfg_mu.mu = "random:3";
  const auto wm = transition_widths(problem, cfg_mu, 1e4, cfg.vertex_threshold);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(wm[j] / w1[j] - 1.0) <= 0.2);
  CHECK_THROWS_AS(transition_widths(problem, cfg, 1e-6, cfg.vertex_threshold),
                  NotNearInfinityError);
}

TEST_CASE("guarded dominance gap doubles with sqrt(R)") {
  auto cfg = base_config();
  cfg.R_values = {1e4, 4e4};
  const auto report = run_verification(cfg);
  const double ratio = report.runs[1].min_margin / report.runs[0].min_margin;
  CHECK(std::abs(ratio - 2.0) <= 0.1);
}

TEST_CASE("guard bands respect the arcs") {
  const auto cfg = base_config();
  const auto problem = prepare_problem(cfg);
  const auto g = guard_bands(problem, cfg);
  for (int j = 0; j < 3; ++j) {
    CHECK(g[j] > 0.0);
    CHECK(g[j] <= 0.25 * problem.arcs[(j + 1) % 3].length() + 1e-15);
    CHECK(g[j] <= 0.25 * problem.arcs[(j + 2) % 3].length() + 1e-15);
  }
  auto fixed = cfg;
  fixed.guard_band = 0.05;
  const auto gf = guard_bands(problem, fixed);
  for (double x : gf) CHECK(x == 0.05);
}

TEST_CASE("identical configs give identical reports") {
  auto cfg = base_config();
  cfg.mu = "random:5";
  CHECK(report_to_json(run_verification(cfg)) == report_to_json(run_verification(cfg)));
}
