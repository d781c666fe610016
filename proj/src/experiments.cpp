#include "photonfilter/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "photonfilter/io.hpp"

namespace photonfilter {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

std::string microwave_name(int l) { return "microwave_l" + std::to_string(l); }

DetunedDrive<double> microwave_drive(double g0, double T, int l, double delta_omega) {
  return {make_rescaled_microwave(g0, T, l), delta_omega};
}

std::vector<double> read_grid(const nlohmann::json& j, const char* key) {
  if (j.is_array()) return j.get<std::vector<double>>();
  if (j.is_object()) {
    return linspace(j.at("start").get<double>(), j.at("stop").get<double>(),
                    j.at("points").get<int>());
  }
  throw std::invalid_argument(std::string(key) + " must be a list or {start, stop, points}");
}

void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument("invalid config: " + message);
}

/// Collects output files and their manifest entries.
class OutputWriter {
 public:
  explicit OutputWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    {
      std::ofstream out(dir_ / name, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
      body(out);
    }
    entries_.push_back(describe_output(dir_, name));
  }

  void write_table(const std::string& name, const Table& table) {
    write(name, [&](std::ostream& out) { photonfilter::write_table(out, table); });
  }

  const std::vector<ManifestEntry>& entries() const { return entries_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<ManifestEntry> entries_;
};

nlohmann::json stats_json(const DistributionStats<double>& s) {
  return {{"mean", s.mean}, {"variance", s.variance}, {"Q", s.mandel_q},
          {"class", std::string(to_string(classify(s)))}};
}

RunRecord finish(const ExperimentConfig& config, OutputWriter& writer, RunRecord record,
                 std::chrono::steady_clock::time_point started) {
  write_manifest(writer.dir(), writer.entries());
  record.config = to_json(config);
  record.manifest = writer.entries();
  record.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  nlohmann::json manifest = nlohmann::json::array();
  for (const auto& e : record.manifest) {
    manifest.push_back({{"path", e.path}, {"bytes", e.bytes}, {"sha256", e.sha256}});
  }
  const nlohmann::json run = {{"config", record.config},
                              {"manifest", manifest},
                              {"seconds", record.seconds},
                              {"convergence_flags", record.convergence_flags},
                              {"warnings", record.warnings},
                              {"summary", record.summary}};
  std::ofstream(writer.dir() / "run.json") << run.dump(2) << '\n';
  return record;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::FilterCurves: return "filter-curves";
    case ExperimentKind::SharpeningSequence: return "sharpen";
    case ExperimentKind::QSweep: return "q-sweep";
    case ExperimentKind::DetuningSensitivity: return "detuning-sensitivity";
    case ExperimentKind::Feasibility: return "feasibility";
  }
  return "unknown";
}

std::optional<ExperimentKind> experiment_kind_from_string(std::string_view name) {
  for (auto kind : {ExperimentKind::FilterCurves, ExperimentKind::SharpeningSequence,
                    ExperimentKind::QSweep, ExperimentKind::DetuningSensitivity,
                    ExperimentKind::Feasibility}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::vector<double> linspace(double start, double stop, int points) {
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> values(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    values[static_cast<std::size_t>(i)] =
        points == 1 ? start : start + (stop - start) * i / (points - 1);
  }
  return values;
}

int ExperimentConfig::truncation() const {
  if (n_max) return *n_max;
  switch (kind) {
    case ExperimentKind::FilterCurves: return 100;
    case ExperimentKind::DetuningSensitivity: return probe_n;
    default: return default_truncation(n_bar);
  }
}

void ExperimentConfig::validate() const {
  require(g0 > 0 && std::isfinite(g0), "g0 must be positive");
  require(T > 0 && std::isfinite(T), "T must be positive");
  require(std::isfinite(delta_omega), "delta_omega must be finite");
  require(!l.empty(), "l list is empty");
  require(std::all_of(l.begin(), l.end(), [](int v) { return v >= 1; }), "every l must be >= 1");
  require(n_bar >= 0 && std::isfinite(n_bar), "n_bar must be >= 0");
  require(!m.empty(), "m list is empty");
  require(std::all_of(m.begin(), m.end(), [](int v) { return v >= 0; }), "every m must be >= 0");
  require(!g0_grid.empty(), "g0_grid is empty");
  require(std::all_of(g0_grid.begin(), g0_grid.end(), [](double v) { return v > 0; }),
          "g0_grid values must be positive");
  require(!delta_omega_grid.empty(), "delta_omega_grid is empty");
  require(probe_n >= 1, "probe_n must be >= 1");
  require(!n_max || *n_max >= 1, "n_max must be >= 1");
  require(step.max_phase_step > 0 && step.tolerance > 0 && step.max_halvings >= 1,
          "step control values must be positive");
  require(velocity > 0 && frequency > 0 && loss_time > 0,
          "velocity, frequency and loss_time must be positive");
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  switch (kind) {
    case ExperimentKind::FilterCurves:
      break;
    case ExperimentKind::SharpeningSequence:
      c.l = {1};
      c.n_bar = 16;
      c.m = {1, 5, 25};
      break;
    case ExperimentKind::QSweep:
      c.l = {1};
      c.n_bar = 20;
      c.m = {25};
      break;
    case ExperimentKind::DetuningSensitivity:
      c.l = {1};
      break;
    case ExperimentKind::Feasibility:
      break;
  }
  return c;
}

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentKind kind) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  ExperimentConfig c = default_config(kind);
  for (const auto& [key, value] : j.items()) {
    if (key == "experiment") {
      const auto named = experiment_kind_from_string(value.get<std::string>());
      if (named != kind) {
        throw std::invalid_argument("config is for '" + value.get<std::string>() +
                                    "' but was given to '" + std::string(to_string(kind)) + "'");
      }
    } else if (key == "g0") {
      c.g0 = value.get<double>();
    } else if (key == "T") {
      c.T = value.get<double>();
    } else if (key == "delta_omega") {
      c.delta_omega = value.get<double>();
    } else if (key == "l") {
      c.l = value.is_array() ? value.get<std::vector<int>>() : std::vector<int>{value.get<int>()};
    } else if (key == "n_bar") {
      c.n_bar = value.get<double>();
    } else if (key == "m") {
      c.m = value.is_array() ? value.get<std::vector<int>>() : std::vector<int>{value.get<int>()};
    } else if (key == "g0_grid") {
      c.g0_grid = read_grid(value, "g0_grid");
    } else if (key == "delta_omega_grid") {
      c.delta_omega_grid = read_grid(value, "delta_omega_grid");
    } else if (key == "probe_n") {
      c.probe_n = value.get<int>();
    } else if (key == "pulses") {
      c.pulses.clear();
      for (const auto& p : value) c.pulses.push_back(pulse_from_json(p));
    } else if (key == "n_max") {
      if (!value.is_null()) c.n_max = value.get<int>();
    } else if (key == "step") {
      for (const auto& [skey, svalue] : value.items()) {
        if (skey == "max_phase_step") {
          c.step.max_phase_step = svalue.get<double>();
        } else if (skey == "tolerance") {
          c.step.tolerance = svalue.get<double>();
        } else if (skey == "max_halvings") {
          c.step.max_halvings = svalue.get<int>();
        } else {
          throw std::invalid_argument("unknown step key '" + skey + "'");
        }
      }
    } else if (key == "velocity") {
      c.velocity = value.get<double>();
    } else if (key == "frequency") {
      c.frequency = value.get<double>();
    } else if (key == "loss_time") {
      c.loss_time = value.get<double>();
    } else if (key == "out") {
      c.out_dir = value.get<std::string>();
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json pulses = nlohmann::json::array();
  for (const auto& p : c.pulses) pulses.push_back(pulse_to_json(p));
  nlohmann::json j = {
      {"experiment", std::string(to_string(c.kind))},
      {"g0", c.g0},
      {"T", c.T},
      {"delta_omega", c.delta_omega},
      {"l", c.l},
      {"n_bar", c.n_bar},
      {"m", c.m},
      {"g0_grid", c.g0_grid},
      {"delta_omega_grid", c.delta_omega_grid},
      {"probe_n", c.probe_n},
      {"pulses", pulses},
      {"step",
       {{"max_phase_step", c.step.max_phase_step},
        {"tolerance", c.step.tolerance},
        {"max_halvings", c.step.max_halvings}}},
      {"velocity", c.velocity},
      {"frequency", c.frequency},
      {"loss_time", c.loss_time},
      {"out", c.out_dir.string()},
  };
  j["n_max"] = c.n_max ? nlohmann::json(*c.n_max) : nlohmann::json(nullptr);
  return j;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentKind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j, kind);
}

// ---------------------------------------------------------------------------
// Computations

const Curve& FilterCurvesResult::curve(const std::string& name) const {
  for (const auto& c : curves) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no curve '" + name + "'");
}

FilterCurvesResult compute_filter_curves(const ExperimentConfig& config) {
  config.validate();
  const int n_max = config.truncation();
  FilterCurvesResult result;
  result.curves.push_back(
      {"rz_analytic", analytic_rosen_zener(config.g0, config.T, config.delta_omega, n_max)});

  auto add_numeric = [&](const std::string& name, const DetunedDrive<double>& drive) {
    try {
      result.curves.push_back({name, filter_function(drive, n_max, InitialLevel::Lower, config.step)});
      result.curves.back().filter.descriptor = name;
    } catch (const NonConvergence& e) {
      result.convergence_flags.push_back(name + ": " + e.what());
    }
  };
  add_numeric("rz_numeric", {make_rosen_zener(config.g0, config.T), config.delta_omega});
  for (int l : config.l) {
    add_numeric(microwave_name(l), microwave_drive(config.g0, config.T, l, config.delta_omega));
  }
  return result;
}

SharpeningResult compute_sharpening(const ExperimentConfig& config) {
  config.validate();
  const int n_max = config.truncation();
  const int l = config.l.front();
  SharpeningResult result{
      filter_function(microwave_drive(config.g0, config.T, l, config.delta_omega), n_max,
                      InitialLevel::Lower, config.step),
      {},
      {},
      {}};

  const int k = static_cast<int>(std::lround(config.T * config.g0 * std::sqrt(config.n_bar)));
  result.nearest_maximum = rz_maxima(config.T, config.g0, k);
  if (std::abs(config.n_bar - result.nearest_maximum.location) > result.nearest_maximum.width / 2) {
    std::ostringstream msg;
    msg << "n_bar = " << config.n_bar << " is off the nearest filter maximum n_M = "
        << result.nearest_maximum.location << " by more than half its width "
        << result.nearest_maximum.width;
    result.warnings.push_back(msg.str());
  }

  const PhotonDistribution<double> initial = poisson_distribution(config.n_bar, n_max);
  result.steps.push_back({0, initial, moments(initial), 1.0});
  for (int m : config.m) {
    const std::vector<MeasurementOutcome> outcomes(static_cast<std::size_t>(m),
                                                   MeasurementOutcome::Lower);
    const SequenceResult<double> seq = apply_sequence(initial, result.filter, outcomes);
    double probability = 1.0;
    for (double p : seq.probabilities) probability *= p;
    result.steps.push_back({m, seq.distribution, moments(seq.distribution), probability});
  }
  return result;
}

std::string_view to_string(SweepStatus status) {
  switch (status) {
    case SweepStatus::Ok: return "ok";
    case SweepStatus::ImpossibleOutcome: return "impossible_outcome";
    case SweepStatus::UndefinedQ: return "undefined_q";
    case SweepStatus::NonConvergence: return "non_convergence";
  }
  return "unknown";
}

QSweepResult compute_q_sweep(const ExperimentConfig& config) {
  config.validate();
  const int n_max = config.truncation();
  const int l = config.l.front();
  QSweepResult result;
  result.m = *std::max_element(config.m.begin(), config.m.end());
  const PhotonDistribution<double> initial = poisson_distribution(config.n_bar, n_max);
  const std::vector<MeasurementOutcome> outcomes(static_cast<std::size_t>(result.m),
                                                 MeasurementOutcome::Lower);

  for (double g0 : config.g0_grid) {
    QSweepPoint point{g0, SweepStatus::Ok, std::nullopt};
    try {
      const auto filter = filter_function(microwave_drive(g0, config.T, l, config.delta_omega),
                                          n_max, InitialLevel::Lower, config.step);
      point.stats = moments(apply_sequence(initial, filter, outcomes).distribution);
    } catch (const NonConvergence&) {
      point.status = SweepStatus::NonConvergence;
    } catch (const ImpossibleOutcome&) {
      point.status = SweepStatus::ImpossibleOutcome;
    } catch (const UndefinedQ&) {
      point.status = SweepStatus::UndefinedQ;
    }
    result.points.push_back(point);
  }

  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& p = result.points[i];
    if (!p.stats) continue;
    if (!result.optimum || p.stats->mandel_q < result.points[*result.optimum].stats->mandel_q) {
      result.optimum = i;
    }
  }
  return result;
}

double SensitivityResult::shift(const std::string& pulse, double delta_omega) const {
  for (const auto& row : rows) {
    if (row.pulse == pulse && row.delta_omega == delta_omega) return row.shift;
  }
  throw std::out_of_range("no sensitivity row for " + pulse);
}

SensitivityResult compute_detuning_sensitivity(const ExperimentConfig& config) {
  config.validate();
  SensitivityResult result;
  if (config.pulses.empty()) {
    const auto suite = make_area_matched_suite(config.g0, config.T);
    result.pulses.assign(suite.begin(), suite.end());
  } else {
    result.pulses = config.pulses;
  }

  for (std::size_t i = 0; i < result.pulses.size(); ++i) {
    std::string name(to_string(result.pulses[i].kind()));
    if (std::count(result.names.begin(), result.names.end(), name) > 0) {
      name += "_" + std::to_string(i);
    }
    result.names.push_back(name);
  }

  const int n = config.probe_n;
  const auto lower = initial_amplitudes<double>(InitialLevel::Lower, n);
  for (std::size_t i = 0; i < result.pulses.size(); ++i) {
    const Pulse<double>& pulse = result.pulses[i];
    result.sharpness.push_back(switching_sharpness(pulse));
    try {
      const double baseline = solve_block({pulse, 0.0}, n, lower, config.step).amplitudes.p_minus();
      for (double dw : config.delta_omega_grid) {
        const double p = solve_block({pulse, dw}, n, lower, config.step).amplitudes.p_minus();
        result.rows.push_back({result.names[i], dw, p, p - baseline});
      }
    } catch (const NonConvergence& e) {
      result.convergence_flags.push_back(result.names[i] + ": " + e.what());
    }
  }
  return result;
}

FeasibilityEstimate feasibility(double velocity, double frequency, double loss_time) {
  if (!(velocity > 0) || !(frequency > 0) || !(loss_time > 0)) {
    throw std::invalid_argument("velocity, frequency and loss time must be positive");
  }
  const double k = 2 * std::numbers::pi * frequency / kSpeedOfLight;
  const double interaction = std::numbers::pi / (k * velocity);
  return {k, interaction, loss_time, interaction / loss_time};
}

// ---------------------------------------------------------------------------
// Runs

RunRecord run_filter_curves(const ExperimentConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const FilterCurvesResult result = compute_filter_curves(config);
  OutputWriter writer(config.out_dir);
  RunRecord record;
  record.convergence_flags = result.convergence_flags;

  std::ostringstream plot;
  plot << "# gnuplot script: lower-level filter functions\n"
       << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set xlabel 'n'\nset ylabel '|a_-(n)|^2'\n"
       << "set title 'dw = " << format_real(config.delta_omega) << "'\n"
       << "plot ";
  nlohmann::json summary = nlohmann::json::object();
  for (std::size_t i = 0; i < result.curves.size(); ++i) {
    const Curve& c = result.curves[i];
    const std::string file = "filter_" + c.name + ".csv";
    writer.write(file, [&](std::ostream& out) { write_filter_function(out, c.filter); });
    plot << (i ? ", \\\n     " : "") << "'" << file << "' using 1:3 with lines title '" << c.name
         << "'";
    summary[c.name] = {{"min_p_minus", c.filter.p_minus.minCoeff()},
                       {"max_p_minus", c.filter.p_minus.maxCoeff()},
                       {"max_richardson_delta", c.filter.max_richardson_delta},
                       {"max_unitarity_defect", c.filter.max_unitarity_defect}};
  }
  plot << "\n";
  writer.write("plot.gp", [&](std::ostream& out) { out << plot.str(); });
  record.summary = summary;
  return finish(config, writer, std::move(record), started);
}

RunRecord run_sharpening(const ExperimentConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const SharpeningResult result = compute_sharpening(config);
  OutputWriter writer(config.out_dir);
  RunRecord record;
  record.warnings = result.warnings;
  if (result.filter.max_richardson_delta > config.step.tolerance) {
    record.convergence_flags.push_back("filter step-halving change exceeds tolerance");
  }

  writer.write("filter.csv", [&](std::ostream& out) { write_filter_function(out, result.filter); });
  Table stats{{"m", "mean", "variance", "Q", "probability"}, {}};
  std::ostringstream plot;
  plot << "# gnuplot script: photon distribution after m lower-level detections\n"
       << "set datafile separator ','\n"
       << "set xlabel 'n'\nset ylabel 'P_n'\nset style data linespoints\n"
       << "plot ";
  nlohmann::json summary = nlohmann::json::array();
  for (std::size_t i = 0; i < result.steps.size(); ++i) {
    const SharpeningStep& s = result.steps[i];
    const std::string file = "distribution_m" + std::to_string(s.m) + ".csv";
    writer.write(file, [&](std::ostream& out) { write_distribution(out, s.distribution); });
    stats.rows.push_back({std::to_string(s.m), format_real(s.stats.mean),
                          format_real(s.stats.variance), format_real(s.stats.mandel_q),
                          format_real(s.probability)});
    plot << (i ? ", \\\n     " : "") << "'" << file << "' using 1:2 title 'm = " << s.m << "'";
    nlohmann::json row = stats_json(s.stats);
    row["m"] = s.m;
    row["probability"] = s.probability;
    summary.push_back(row);
  }
  plot << "\n";
  writer.write_table("stats.csv", stats);
  writer.write("plot.gp", [&](std::ostream& out) { out << plot.str(); });
  record.summary = {{"steps", summary},
                    {"nearest_maximum",
                     {{"n_M", result.nearest_maximum.location},
                      {"width", result.nearest_maximum.width}}}};
  return finish(config, writer, std::move(record), started);
}

RunRecord run_q_sweep(const ExperimentConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const QSweepResult result = compute_q_sweep(config);
  OutputWriter writer(config.out_dir);
  RunRecord record;

  Table table{{"g0", "mean", "variance", "Q", "status"}, {}};
  for (const auto& p : result.points) {
    if (p.status == SweepStatus::NonConvergence) {
      record.convergence_flags.push_back("g0 = " + format_real(p.g0) + ": non-convergence");
    }
    if (p.stats) {
      table.rows.push_back({format_real(p.g0), format_real(p.stats->mean),
                            format_real(p.stats->variance), format_real(p.stats->mandel_q),
                            std::string(to_string(p.status))});
    } else {
      table.rows.push_back({format_real(p.g0), "nan", "nan", "nan", std::string(to_string(p.status))});
    }
  }
  writer.write_table("q_sweep.csv", table);
  writer.write("plot.gp", [&](std::ostream& out) {
    out << "# gnuplot script: Mandel Q after " << result.m << " lower-level detections\n"
        << "set datafile separator ','\n"
        << "set xlabel 'g0'\nset ylabel 'Q'\n"
        << "plot 'q_sweep.csv' using 1:4 with linespoints title 'Q', 0 with lines dt 2 notitle\n";
  });

  record.summary = {{"m", result.m}};
  if (result.optimum) {
    const auto& best = result.points[*result.optimum];
    record.summary["optimal_g0"] = best.g0;
    record.summary["optimal_Q"] = best.stats->mandel_q;
  }
  const auto negative = std::count_if(result.points.begin(), result.points.end(), [](const auto& p) {
    return p.stats && p.stats->mandel_q < 0;
  });
  record.summary["sub_poissonian_points"] = negative;
  return finish(config, writer, std::move(record), started);
}

RunRecord run_detuning_sensitivity(const ExperimentConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const SensitivityResult result = compute_detuning_sensitivity(config);
  OutputWriter writer(config.out_dir);
  RunRecord record;
  record.convergence_flags = result.convergence_flags;

  Table table{{"pulse", "delta_omega", "p_minus", "shift"}, {}};
  for (const auto& r : result.rows) {
    table.rows.push_back({r.pulse, format_real(r.delta_omega), format_real(r.p_minus),
                          format_real(r.shift)});
  }
  writer.write_table("detuning_sensitivity.csv", table);

  nlohmann::json pulses = nlohmann::json::array();
  Table shapes{{"pulse", "amplitude", "area", "sharpness"}, {}};
  for (std::size_t i = 0; i < result.pulses.size(); ++i) {
    const double a = quadrature_area(result.pulses[i]);
    shapes.rows.push_back({result.names[i], format_real(result.pulses[i].amplitude()),
                           format_real(a), format_real(result.sharpness[i])});
    nlohmann::json p = pulse_to_json(result.pulses[i]);
    p["name"] = result.names[i];
    p["sharpness"] = result.sharpness[i];
    pulses.push_back(p);
  }
  writer.write_table("pulses.csv", shapes);

  std::ostringstream plot;
  plot << "# gnuplot script: shift of p_minus at n = " << config.probe_n << " versus detuning\n"
       << "set datafile separator ','\n"
       << "set xlabel 'dw'\nset ylabel 'shift'\nset key left top\n"
       << "plot ";
  for (std::size_t i = 0; i < result.names.size(); ++i) {
    plot << (i ? ", \\\n     " : "") << "'detuning_sensitivity.csv' using 2:(strcol(1) eq '"
         << result.names[i] << "' ? $4 : NaN) with linespoints title '" << result.names[i] << "'";
  }
  plot << "\n";
  writer.write("plot.gp", [&](std::ostream& out) { out << plot.str(); });

  record.summary = {{"probe_n", config.probe_n}, {"pulses", pulses}};
  if (result.convergence_flags.empty()) {
    const double dw_max =
        *std::max_element(config.delta_omega_grid.begin(), config.delta_omega_grid.end());
    std::vector<std::string> ranking = result.names;
    std::stable_sort(ranking.begin(), ranking.end(), [&](const auto& a, const auto& b) {
      return result.shift(a, dw_max) > result.shift(b, dw_max);
    });
    record.summary["ranking_at_max_detuning"] = ranking;
  }
  return finish(config, writer, std::move(record), started);
}

RunRecord run_feasibility(const ExperimentConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  config.validate();
  const FeasibilityEstimate f = feasibility(config.velocity, config.frequency, config.loss_time);
  OutputWriter writer(config.out_dir);
  RunRecord record;
  writer.write_table("feasibility.csv",
                     {{"velocity", "frequency", "wavenumber", "interaction_time", "loss_time", "ratio"},
                      {{format_real(config.velocity), format_real(config.frequency),
                        format_real(f.wavenumber), format_real(f.interaction_time),
                        format_real(f.loss_time), format_real(f.ratio)}}});
  record.summary = {{"interaction_time", f.interaction_time}, {"ratio", f.ratio}};
  return finish(config, writer, std::move(record), started);
}

RunRecord run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::FilterCurves: return run_filter_curves(config);
    case ExperimentKind::SharpeningSequence: return run_sharpening(config);
    case ExperimentKind::QSweep: return run_q_sweep(config);
    case ExperimentKind::DetuningSensitivity: return run_detuning_sensitivity(config);
    case ExperimentKind::Feasibility: return run_feasibility(config);
  }
  throw std::invalid_argument("unknown experiment kind");
}

}  // namespace photonfilter
