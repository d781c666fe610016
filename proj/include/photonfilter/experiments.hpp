#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "photonfilter/dynamics.hpp"
#include "photonfilter/field.hpp"
#include "photonfilter/manifest.hpp"
#include "photonfilter/pulses.hpp"
#include "photonfilter/stats.hpp"

namespace photonfilter {

enum class ExperimentKind { FilterCurves, SharpeningSequence, QSweep, DetuningSensitivity, Feasibility };

/// CLI subcommand name: filter-curves, sharpen, q-sweep, detuning-sensitivity, feasibility.
std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> experiment_kind_from_string(std::string_view name);

/// `points` equally spaced values from start to stop inclusive.
std::vector<double> linspace(double start, double stop, int points);

/// Declarative description of one run. See default_config for per-experiment
/// overrides.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::FilterCurves;

  double g0 = 5.0;
  double T = 0.1;
  double delta_omega = 0.5;
  /// Half-wavelength indices; microwave pulses use amplitude g0 * l and kv = 2/(pi T).
  std::vector<int> l = {1, 2, 3};
  double n_bar = 16.0;
  /// Numbers of lower-level detections.
  std::vector<int> m = {1, 5, 25};
  std::vector<double> g0_grid = linspace(1.0, 10.0, 40);
  std::vector<double> delta_omega_grid = linspace(0.0, 5.0, 11);
  /// Photon block probed by the detuning scan (the resonant minimum at k = 3).
  int probe_n = 49;
  /// Explicit pulses for the detuning scan; empty means the area-matched suite.
  std::vector<Pulse<double>> pulses;

  /// Fock truncation; unset means 100 for filter curves, n_bar + 10 sqrt(n_bar) otherwise.
  std::optional<int> n_max;
  StepControl<double> step;

  double velocity = 300.0;     // m/s
  double frequency = 50e9;     // Hz
  double loss_time = 0.3;      // s

  std::filesystem::path out_dir = "out";

  int truncation() const;
  void validate() const;
};

ExperimentConfig default_config(ExperimentKind kind);

/// Starts from default_config(kind) and overrides every key present in j.
/// Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentKind kind);
nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentKind kind);

// ---------------------------------------------------------------------------
// In-memory results

struct Curve {
  std::string name;
  FilterFunction<double> filter;
};

struct FilterCurvesResult {
  std::vector<Curve> curves;
  std::vector<std::string> convergence_flags;

  const Curve& curve(const std::string& name) const;
};

/// Sech-pulse filter (closed form and integrated) plus one microwave filter per l.
FilterCurvesResult compute_filter_curves(const ExperimentConfig& config);

struct SharpeningStep {
  int m;
  PhotonDistribution<double> distribution;
  DistributionStats<double> stats;
  /// Probability that all m atoms exit in the lower level.
  double probability;
};

struct SharpeningResult {
  FilterFunction<double> filter;
  FilterMaximum<double> nearest_maximum;
  /// m = 0 (the initial Poisson field) first, then each requested m.
  std::vector<SharpeningStep> steps;
  std::vector<std::string> warnings;
};

SharpeningResult compute_sharpening(const ExperimentConfig& config);

enum class SweepStatus { Ok, ImpossibleOutcome, UndefinedQ, NonConvergence };
std::string_view to_string(SweepStatus status);

struct QSweepPoint {
  double g0;
  SweepStatus status;
  std::optional<DistributionStats<double>> stats;
};

struct QSweepResult {
  int m;
  std::vector<QSweepPoint> points;
  /// Index of the smallest Q among Ok points.
  std::optional<std::size_t> optimum;
};

QSweepResult compute_q_sweep(const ExperimentConfig& config);

struct SensitivityRow {
  std::string pulse;
  double delta_omega;
  double p_minus;
  /// p_minus(probe_n; dw) - p_minus(probe_n; 0)
  double shift;
};

struct SensitivityResult {
  std::vector<Pulse<double>> pulses;
  std::vector<std::string> names;
  std::vector<double> sharpness;
  std::vector<SensitivityRow> rows;
  std::vector<std::string> convergence_flags;

  /// Shift of the named pulse at the given detuning (must be on the grid).
  double shift(const std::string& pulse, double delta_omega) const;
};

SensitivityResult compute_detuning_sensitivity(const ExperimentConfig& config);

struct FeasibilityEstimate {
  double wavenumber;        // k = 2 pi nu / c, 1/m
  double interaction_time;  // pi / (k v), s
  double loss_time;         // s
  double ratio;             // interaction_time / loss_time
};

FeasibilityEstimate feasibility(double velocity, double frequency, double loss_time = 0.3);

// ---------------------------------------------------------------------------
// File-producing runs

struct RunRecord {
  nlohmann::json config;
  std::vector<ManifestEntry> manifest;
  double seconds = 0;
  std::vector<std::string> convergence_flags;
  std::vector<std::string> warnings;
  nlohmann::json summary;

  bool converged() const { return convergence_flags.empty(); }
};

/// Runs the experiment, writes its data files, a gnuplot script and
/// manifest.csv into config.out_dir, and run.json with timing and flags.
/// Everything listed in the manifest is a pure function of the config.
RunRecord run_experiment(const ExperimentConfig& config);

RunRecord run_filter_curves(const ExperimentConfig& config);
RunRecord run_sharpening(const ExperimentConfig& config);
RunRecord run_q_sweep(const ExperimentConfig& config);
RunRecord run_detuning_sensitivity(const ExperimentConfig& config);
RunRecord run_feasibility(const ExperimentConfig& config);

}  // namespace photonfilter
