#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "photonfilter/errors.hpp"
#include "photonfilter/pulses.hpp"

namespace photonfilter {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Amplitudes (a+, a-) of |n-1,+> and |n,-> inside excitation block n.
template <typename Scalar>
struct BlockAmplitudes {
  std::complex<Scalar> a_plus;
  std::complex<Scalar> a_minus;
  int n = 0;

  Scalar p_plus() const { return std::norm(a_plus); }
  Scalar p_minus() const { return std::norm(a_minus); }
  Scalar norm2() const { return p_plus() + p_minus(); }
};

/// Which atomic level the atom enters in.
enum class InitialLevel { Lower, Upper };

template <typename Scalar>
BlockAmplitudes<Scalar> initial_amplitudes(InitialLevel level, int n) {
  if (level == InitialLevel::Lower) return {Scalar(0), Scalar(1), n};
  return {Scalar(1), Scalar(0), n};
}

/// Constant detuning (atom minus mode frequency) together with the coupling pulse.
template <typename Scalar>
struct DetunedDrive {
  Pulse<Scalar> pulse;
  Scalar delta_omega = 0;
};

template <typename Scalar>
struct StepControl {
  /// Upper bound on max(|dw|/2, g_peak sqrt(n)) * dt for the coarsest grid.
  Scalar max_phase_step = Scalar(0.02);
  /// Accepted change of |a-|^2 between a grid and its half-step refinement.
  Scalar tolerance = Scalar(1e-9);
  int max_halvings = 8;
};

template <typename Scalar>
struct BlockSolution {
  BlockAmplitudes<Scalar> amplitudes;
  Scalar richardson_delta = 0;
  std::int64_t steps = 0;
};

/// Classic fourth-order Runge-Kutta over the pulse support with `steps` equal
/// steps, integrating i da/dt = [[dw/2, g sqrt(n)], [g sqrt(n), -dw/2]] a.
template <typename Scalar>
BlockAmplitudes<Scalar> propagate_fixed(const DetunedDrive<Scalar>& drive, int n,
                                        const BlockAmplitudes<Scalar>& init,
                                        std::int64_t steps) {
  using Complex = std::complex<Scalar>;
  using State = Eigen::Matrix<Complex, 2, 1>;
  using Hamiltonian = Eigen::Matrix<Complex, 2, 2>;

  if (steps < 1) throw std::invalid_argument("need at least one step");
  const Pulse<Scalar>& pulse = drive.pulse;
  const Scalar t0 = pulse.t_start();
  const Scalar t1 = pulse.t_end();
  const Scalar h = (t1 - t0) / static_cast<Scalar>(steps);
  const Scalar half_dw = drive.delta_omega / 2;
  const Scalar sqrt_n = std::sqrt(static_cast<Scalar>(n));
  const Complex minus_i(0, -1);

  auto rhs = [&](Scalar g, const State& y) -> State {
    Hamiltonian H;
    H << Complex(half_dw), Complex(g), Complex(g), Complex(-half_dw);
    return minus_i * (H * y);
  };

  State y(init.a_plus, init.a_minus);
  Scalar g_start = pulse(t0) * sqrt_n;
  for (std::int64_t i = 0; i < steps; ++i) {
    const Scalar t = t0 + h * static_cast<Scalar>(i);
    const Scalar t_next = (i + 1 == steps) ? t1 : t0 + h * static_cast<Scalar>(i + 1);
    const Scalar g_mid = pulse(t + h / 2) * sqrt_n;
    const Scalar g_end = pulse(t_next) * sqrt_n;
    const State k1 = rhs(g_start, y);
    const State k2 = rhs(g_mid, y + (h / 2) * k1);
    const State k3 = rhs(g_mid, y + (h / 2) * k2);
    const State k4 = rhs(g_end, y + h * k3);
    y += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    g_start = g_end;
  }
  return {y(0), y(1), n};
}

/// Coarsest step count allowed by the phase-per-step bound for block n.
template <typename Scalar>
std::int64_t coarse_steps(const DetunedDrive<Scalar>& drive, int n,
                          const StepControl<Scalar>& control) {
  const Scalar rate = std::max(std::abs(drive.delta_omega) / 2,
                               drive.pulse.peak() * std::sqrt(static_cast<Scalar>(n)));
  const Scalar needed = std::ceil(drive.pulse.duration() * rate / control.max_phase_step);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(needed));
}

/// Integrates one block across the pulse and checks the result by step
/// halving. The returned amplitudes come from the finest grid used.
///
/// Block 0 holds only |0,-> and just picks up the phase exp(i dw t / 2).
template <typename Scalar>
BlockSolution<Scalar> solve_block(const DetunedDrive<Scalar>& drive, int n,
                                  const BlockAmplitudes<Scalar>& init,
                                  const StepControl<Scalar>& control = {}) {
  if (n < 0) throw std::invalid_argument("block index must be non-negative");
  if (n == 0) {
    const Scalar phase = drive.delta_omega * drive.pulse.duration() / 2;
    const Scalar magnitude = std::sqrt(init.norm2());
    return {{Scalar(0), std::polar(magnitude, phase), 0}, Scalar(0), 0};
  }
  std::int64_t steps = coarse_steps(drive, n, control);
  BlockAmplitudes<Scalar> coarse = propagate_fixed(drive, n, init, steps);
  Scalar delta = 0;
  for (int halving = 1; halving <= control.max_halvings; ++halving) {
    steps *= 2;
    BlockAmplitudes<Scalar> fine = propagate_fixed(drive, n, init, steps);
    delta = std::abs(fine.p_minus() - coarse.p_minus());
    if (delta <= control.tolerance) return {fine, delta, steps};
    coarse = fine;
  }
  throw NonConvergence(n, static_cast<double>(delta));
}

template <typename Scalar>
BlockAmplitudes<Scalar> integrate_block(const DetunedDrive<Scalar>& drive, int n,
                                        const BlockAmplitudes<Scalar>& init,
                                        const StepControl<Scalar>& control = {}) {
  return solve_block(drive, n, init, control).amplitudes;
}

// ---------------------------------------------------------------------------
// Filter functions

enum class FilterSource { Numeric, ZeroDetuningAnalytic, RosenZenerAnalytic };

constexpr std::string_view to_string(FilterSource source) {
  switch (source) {
    case FilterSource::Numeric: return "numeric";
    case FilterSource::ZeroDetuningAnalytic: return "zero_detuning_analytic";
    case FilterSource::RosenZenerAnalytic: return "rosen_zener_analytic";
  }
  return "unknown";
}

/// |a+^inf(n)|^2 and |a-^inf(n)|^2 for n = 0..n_max.
template <typename Scalar>
struct FilterFunction {
  Vector<Scalar> p_plus;
  Vector<Scalar> p_minus;
  FilterSource source = FilterSource::Numeric;
  std::string descriptor;
  Scalar delta_omega = 0;
  /// Largest step-halving change and largest | |a+|^2 + |a-|^2 - 1 | seen
  /// over all blocks (zero for analytic filters).
  Scalar max_richardson_delta = 0;
  Scalar max_unitarity_defect = 0;

  int n_max() const { return static_cast<int>(p_minus.size()) - 1; }
};

template <typename Scalar>
FilterFunction<Scalar> filter_function(const DetunedDrive<Scalar>& drive, int n_max,
                                       InitialLevel level = InitialLevel::Lower,
                                       const StepControl<Scalar>& control = {}) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  FilterFunction<Scalar> f;
  f.p_plus = Vector<Scalar>::Zero(n_max + 1);
  f.p_minus = Vector<Scalar>::Zero(n_max + 1);
  f.source = FilterSource::Numeric;
  f.descriptor = std::string(to_string(drive.pulse.kind()));
  f.delta_omega = drive.delta_omega;
  f.p_minus(0) = 1;
  for (int n = 1; n <= n_max; ++n) {
    const BlockSolution<Scalar> s = solve_block(drive, n, initial_amplitudes<Scalar>(level, n), control);
    f.p_plus(n) = s.amplitudes.p_plus();
    f.p_minus(n) = s.amplitudes.p_minus();
    f.max_richardson_delta = std::max(f.max_richardson_delta, s.richardson_delta);
    f.max_unitarity_defect =
        std::max(f.max_unitarity_defect, std::abs(s.amplitudes.norm2() - Scalar(1)));
  }
  return f;
}

/// Resonant filter, which depends on the pulse only through its area:
/// p- = cos^2(sqrt(n) A), p+ = sin^2(sqrt(n) A).
template <typename Scalar>
FilterFunction<Scalar> analytic_zero_detuning(Scalar area, int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  FilterFunction<Scalar> f;
  const Vector<Scalar> angle =
      Vector<Scalar>::LinSpaced(n_max + 1, 0, static_cast<Scalar>(n_max)).array().sqrt() * area;
  f.p_plus = angle.array().sin().square();
  f.p_minus = angle.array().cos().square();
  f.source = FilterSource::ZeroDetuningAnalytic;
  f.descriptor = "area=" + std::to_string(static_cast<double>(area));
  return f;
}

template <typename Scalar>
FilterFunction<Scalar> analytic_zero_detuning(const PulseArea<Scalar>& area, int n_max) {
  return analytic_zero_detuning(area.value, n_max);
}

/// Closed-form sech-pulse filter:
/// p+ = sin^2(pi T g0 sqrt(n)) sech^2(pi T dw / 2), p- = 1 - p+.
template <typename Scalar>
FilterFunction<Scalar> analytic_rosen_zener(Scalar g0, Scalar T, Scalar delta_omega, int n_max) {
  if (!(T > 0)) throw std::invalid_argument("T must be positive");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar sech = Scalar(1) / std::cosh(pi * T * delta_omega / 2);
  FilterFunction<Scalar> f;
  const Vector<Scalar> angle =
      Vector<Scalar>::LinSpaced(n_max + 1, 0, static_cast<Scalar>(n_max)).array().sqrt() *
      (pi * T * g0);
  f.p_plus = angle.array().sin().square() * (sech * sech);
  f.p_minus = Scalar(1) - f.p_plus.array();
  f.source = FilterSource::RosenZenerAnalytic;
  f.descriptor = "rosen_zener";
  f.delta_omega = delta_omega;
  return f;
}

template <typename Scalar>
struct FilterMaximum {
  Scalar location;  // n_M
  Scalar width;     // filter width around n_M
};

/// k-th maximum of the resonant sech-pulse lower-level filter,
/// n_M = k^2 / (T g0)^2, with width sqrt(n_M) / (T g0).
template <typename Scalar>
FilterMaximum<Scalar> rz_maxima(Scalar T, Scalar g0, int k) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  const Scalar tg = T * g0;
  if (!(tg > 0)) throw std::invalid_argument("T g0 must be positive");
  const Scalar location = static_cast<Scalar>(k) * static_cast<Scalar>(k) / (tg * tg);
  return {location, std::sqrt(location) / tg};
}

}  // namespace photonfilter
