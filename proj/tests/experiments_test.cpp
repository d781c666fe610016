#include "photonfilter/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "photonfilter/io.hpp"

namespace pf = photonfilter;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("photonfilter_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Config, DefaultsPerExperiment) {
  const auto curves = pf::default_config(pf::ExperimentKind::FilterCurves);
  EXPECT_EQ(curves.g0, 5.0);
  EXPECT_EQ(curves.T, 0.1);
  EXPECT_EQ(curves.delta_omega, 0.5);
  EXPECT_EQ(curves.l, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(curves.truncation(), 100);

  const auto sweep = pf::default_config(pf::ExperimentKind::QSweep);
  EXPECT_EQ(sweep.n_bar, 20.0);
  EXPECT_EQ(sweep.m, std::vector<int>{25});
  EXPECT_EQ(sweep.g0_grid.size(), 40u);
  EXPECT_EQ(sweep.g0_grid.front(), 1.0);
  EXPECT_EQ(sweep.g0_grid.back(), 10.0);
  EXPECT_EQ(sweep.truncation(), 65);

  const auto sens = pf::default_config(pf::ExperimentKind::DetuningSensitivity);
  EXPECT_EQ(sens.delta_omega_grid, pf::linspace(0.0, 5.0, 11));
  EXPECT_EQ(sens.probe_n, 49);
}

TEST(Config, JsonOverridesAndValidation) {
  const auto c = pf::config_from_json(
      nlohmann::json::parse(R"({"experiment": "sharpen", "n_bar": 9, "m": [2, 4],
                                "g0_grid": {"start": 2, "stop": 3, "points": 3},
                                "step": {"tolerance": 1e-7}})"),
      pf::ExperimentKind::SharpeningSequence);
  EXPECT_EQ(c.n_bar, 9.0);
  EXPECT_EQ(c.m, (std::vector<int>{2, 4}));
  EXPECT_EQ(c.g0_grid, (std::vector<double>{2.0, 2.5, 3.0}));
  EXPECT_EQ(c.step.tolerance, 1e-7);

  EXPECT_THROW(pf::config_from_json({{"bogus", 1}}, pf::ExperimentKind::QSweep), std::invalid_argument);
  EXPECT_THROW(pf::config_from_json({{"experiment", "sharpen"}}, pf::ExperimentKind::QSweep),
               std::invalid_argument);
  EXPECT_THROW(pf::config_from_json({{"g0", -1.0}}, pf::ExperimentKind::QSweep), std::invalid_argument);
  EXPECT_THROW(pf::config_from_json({{"l", nlohmann::json::array()}}, pf::ExperimentKind::FilterCurves),
               std::invalid_argument);
}

TEST(Config, JsonRoundTrip) {
  auto c = pf::default_config(pf::ExperimentKind::DetuningSensitivity);
  c.pulses = {pf::make_rosen_zener(5.0, 0.1), pf::make_gaussian(5.0, 0.3, 0.3)};
  c.n_max = 70;
  const auto back = pf::config_from_json(pf::to_json(c), pf::ExperimentKind::DetuningSensitivity);
  EXPECT_EQ(pf::to_json(back), pf::to_json(c));
}

TEST(FilterCurves, ShapesAgreeAtSmallDetuning) {
  const auto r = pf::compute_filter_curves(pf::default_config(pf::ExperimentKind::FilterCurves));
  EXPECT_TRUE(r.convergence_flags.empty());
  const auto& l1 = r.curve("microwave_l1").filter.p_minus;
  const auto& l2 = r.curve("microwave_l2").filter.p_minus;
  const auto& l3 = r.curve("microwave_l3").filter.p_minus;
  const auto& rz = r.curve("rz_analytic").filter.p_minus;
  EXPECT_LT((l1 - l3).cwiseAbs().maxCoeff(), 3e-3);
  // Away from extrema the odd-l curves track the sech filter closely.
  EXPECT_LT((l1 - rz).cwiseAbs().maxCoeff(), 1e-2);
  EXPECT_GT(l2.minCoeff(), 0.95);
}

TEST(FilterCurves, EvenModeDeviatesAtLargeDetuning) {
  auto c = pf::default_config(pf::ExperimentKind::FilterCurves);
  c.delta_omega = 5.0;
  c.l = {2};
  const auto r = pf::compute_filter_curves(c);
  EXPECT_LT(r.curve("microwave_l2").filter.p_minus.minCoeff(), 0.95);
}

TEST(Sharpening, VarianceFallsAndModeStaysAtSixteen) {
  const auto r = pf::compute_sharpening(pf::default_config(pf::ExperimentKind::SharpeningSequence));
  ASSERT_EQ(r.steps.size(), 4u);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(r.nearest_maximum.location, 16.0);
  EXPECT_EQ(r.steps[0].m, 0);
  EXPECT_EQ(r.steps[0].distribution.probs(), pf::poisson_distribution(16.0, 56).probs());
  for (std::size_t i = 1; i < r.steps.size(); ++i) {
    EXPECT_LT(r.steps[i].stats.variance, r.steps[i - 1].stats.variance);
    EXPECT_LT(r.steps[i].probability, r.steps[i - 1].probability);
  }
  Eigen::Index mode;
  r.steps.back().distribution.probs().maxCoeff(&mode);
  EXPECT_EQ(mode, 16);
  EXPECT_LT(r.steps.back().stats.mandel_q, 0.0);
}

TEST(Sharpening, WarnsWhenOffMaximum) {
  auto c = pf::default_config(pf::ExperimentKind::SharpeningSequence);
  c.n_bar = 25;  // between the maxima at 16 and 36
  c.n_max = 80;
  const auto r = pf::compute_sharpening(c);
  EXPECT_EQ(r.warnings.size(), 1u);
}

// Q after 25 lower-level detections from Poisson(20), frozen from an
// independent scipy DOP853 integration of the l = 1 microwave filter.
TEST(QSweep, MatchesIndependentIntegration) {
  auto c = pf::default_config(pf::ExperimentKind::QSweep);
  c.g0_grid = {1.0, 3.0, 5.0, 6.0, 8.0};
  const std::vector<double> expected = {-0.1185465066, -0.8839956022, -0.7337861314,
                                        0.05083068464, 0.4294742039};
  const auto r = pf::compute_q_sweep(c);
  ASSERT_EQ(r.points.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    ASSERT_EQ(r.points[i].status, pf::SweepStatus::Ok);
    EXPECT_NEAR(r.points[i].stats->mandel_q, expected[i], 1e-7) << "g0=" << c.g0_grid[i];
  }
  ASSERT_TRUE(r.optimum.has_value());
  EXPECT_EQ(*r.optimum, 1u);
}

TEST(QSweep, WeakCouplingPreservesPoisson) {
  auto c = pf::default_config(pf::ExperimentKind::QSweep);
  c.g0_grid = {1e-6};
  const auto r = pf::compute_q_sweep(c);
  EXPECT_NEAR(r.points[0].stats->mandel_q, 0.0, 1e-6);
}

TEST(QSweep, DegeneratePointsAreFlaggedNotDropped) {
  // The vacuum never excites the atom, so Q stays undefined after filtering.
  auto c = pf::default_config(pf::ExperimentKind::QSweep);
  c.n_bar = 0.0;
  c.n_max = 3;
  c.g0_grid = {5.0};
  const auto r = pf::compute_q_sweep(c);
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_EQ(r.points[0].status, pf::SweepStatus::UndefinedQ);
  EXPECT_FALSE(r.optimum.has_value());
}

TEST(DetuningSensitivity, BaselineIsZeroAndRzMatchesClosedForm) {
  auto c = pf::default_config(pf::ExperimentKind::DetuningSensitivity);
  c.delta_omega_grid = {0.0, 5.0};
  const auto r = pf::compute_detuning_sensitivity(c);
  EXPECT_TRUE(r.convergence_flags.empty());
  for (const auto& name : r.names) EXPECT_EQ(r.shift(name, 0.0), 0.0);
  const double sech = 1.0 / std::cosh(std::numbers::pi * 0.1 * 5.0 / 2.0);
  EXPECT_NEAR(r.shift("rosen_zener", 5.0), 1.0 - sech * sech, 1e-4);
}

TEST(Feasibility, TypicalMicrowaveNumbers) {
  const auto f = pf::feasibility(300.0, 50e9);
  EXPECT_NEAR(f.interaction_time, 1e-5, 0.01e-5);
  EXPECT_NEAR(f.ratio, 3.33e-5, 0.01e-5);
  EXPECT_NEAR(pf::feasibility(600.0, 50e9).interaction_time, f.interaction_time / 2, 1e-18);
  EXPECT_THROW(pf::feasibility(0.0, 50e9), std::invalid_argument);
}

TEST(Runs, OutputsAreDeterministicAndReparseable) {
  auto c = pf::default_config(pf::ExperimentKind::SharpeningSequence);
  const fs::path first = scratch("sharpen_a");
  const fs::path dir = scratch("sharpen_b");
  c.out_dir = first;
  const auto a = pf::run_experiment(c);
  c.out_dir = dir;
  const auto b = pf::run_experiment(c);
  EXPECT_TRUE(a.converged());
  ASSERT_EQ(a.manifest.size(), b.manifest.size());
  for (std::size_t i = 0; i < a.manifest.size(); ++i) {
    EXPECT_EQ(a.manifest[i].path, b.manifest[i].path);
    EXPECT_EQ(a.manifest[i].sha256, b.manifest[i].sha256);
  }
  EXPECT_EQ(slurp(first / "manifest.csv"), slurp(dir / "manifest.csv"));

  std::ifstream dist(dir / "distribution_m25.csv");
  const auto d = pf::read_distribution(dist);
  EXPECT_EQ(d.n_max(), 56);
  std::ifstream filter(dir / "filter.csv");
  EXPECT_EQ(pf::read_filter_function(filter).n_max(), 56);
  const auto stats = pf::read_table(dir / "stats.csv");
  EXPECT_EQ(stats.rows.size(), 4u);
  const auto manifest = pf::read_table(dir / "manifest.csv");
  for (std::size_t i = 0; i < manifest.rows.size(); ++i) {
    EXPECT_EQ(pf::sha256_hex(dir / manifest.text(i, "path")), manifest.text(i, "sha256"));
  }
  EXPECT_TRUE(fs::exists(dir / "run.json"));
}

TEST(Runs, EveryExperimentWritesItsFiles) {
  for (auto kind : {pf::ExperimentKind::QSweep, pf::ExperimentKind::DetuningSensitivity,
                    pf::ExperimentKind::Feasibility}) {
    auto c = pf::default_config(kind);
    c.g0_grid = {2.0, 4.0};
    c.delta_omega_grid = {0.0, 2.5};
    c.out_dir = scratch(std::string(pf::to_string(kind)));
    const auto record = pf::run_experiment(c);
    EXPECT_TRUE(record.converged()) << pf::to_string(kind);
    for (const auto& e : record.manifest) {
      EXPECT_TRUE(fs::exists(c.out_dir / e.path));
      if (e.path.ends_with(".csv")) EXPECT_NO_THROW(pf::read_table(c.out_dir / e.path));
    }
  }
}
