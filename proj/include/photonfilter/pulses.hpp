#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "photonfilter/quadrature.hpp"

namespace photonfilter {

enum class PulseKind { Trigonometric, RosenZener, SquareWave, Gaussian, Lorentzian };

constexpr std::string_view to_string(PulseKind kind) {
  switch (kind) {
    case PulseKind::Trigonometric: return "trigonometric";
    case PulseKind::RosenZener: return "rosen_zener";
    case PulseKind::SquareWave: return "square_wave";
    case PulseKind::Gaussian: return "gaussian";
    case PulseKind::Lorentzian: return "lorentzian";
  }
  return "unknown";
}

inline std::optional<PulseKind> pulse_kind_from_string(std::string_view name) {
  for (auto kind : {PulseKind::Trigonometric, PulseKind::RosenZener, PulseKind::SquareWave,
                    PulseKind::Gaussian, PulseKind::Lorentzian}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

/// Standing-wave mode seen by an atom crossing at speed v: cos(kv l t) for odd
/// l, sin(kv l t) for even l.
template <typename Scalar>
struct TrigonometricShape {
  Scalar kv;
  int l;
};

/// sech(t / T)
template <typename Scalar>
struct RosenZenerShape {
  Scalar T;
};

/// Smoothed box: (tanh((t + tau)/t_s) - tanh((t - tau)/t_s)) / 2
template <typename Scalar>
struct SquareWaveShape {
  Scalar tau;
  Scalar t_s;
};

/// exp(-(t/tau)^2 / (4 sigma^2)) / (2 sigma sqrt(pi)); unit-amplitude area is tau.
template <typename Scalar>
struct GaussianShape {
  Scalar tau;
  Scalar sigma;
};

/// (gamma/pi)^2 / ((t/tau)^2 + gamma^2)
template <typename Scalar>
struct LorentzianShape {
  Scalar tau;
  Scalar gamma;
};

/// A real, time-dependent atom-mode coupling g(t) with a finite support.
///
/// Values are immutable; `scaled` returns a new pulse. Outside
/// [t_start, t_end] the coupling is exactly zero.
template <typename Scalar>
class Pulse {
 public:
  using Shape = std::variant<TrigonometricShape<Scalar>, RosenZenerShape<Scalar>,
                             SquareWaveShape<Scalar>, GaussianShape<Scalar>,
                             LorentzianShape<Scalar>>;

  Pulse(Scalar amplitude, Shape shape, Scalar t_start, Scalar t_end)
      : amplitude_(amplitude), shape_(shape), t_start_(t_start), t_end_(t_end) {
    if (!(amplitude > 0) || !std::isfinite(amplitude)) {
      throw std::invalid_argument("pulse amplitude must be positive and finite");
    }
    if (!(t_start < t_end) || !std::isfinite(t_start) || !std::isfinite(t_end)) {
      throw std::invalid_argument("pulse support must be a finite interval with t_start < t_end");
    }
    std::visit([](const auto& s) { validate(s); }, shape_);
  }

  PulseKind kind() const { return static_cast<PulseKind>(shape_.index()); }
  Scalar amplitude() const { return amplitude_; }
  const Shape& shape() const { return shape_; }
  Scalar t_start() const { return t_start_; }
  Scalar t_end() const { return t_end_; }
  Scalar duration() const { return t_end_ - t_start_; }

  Scalar operator()(Scalar t) const {
    if (t < t_start_ || t > t_end_) return Scalar(0);
    return amplitude_ * std::visit([t](const auto& s) { return unit_value(s, t); }, shape_);
  }

  /// Largest |g(t)| on the support.
  Scalar peak() const {
    return amplitude_ * std::visit([](const auto& s) { return unit_peak(s); }, shape_);
  }

  Pulse scaled(Scalar factor) const {
    return Pulse(amplitude_ * factor, shape_, t_start_, t_end_);
  }

  Pulse with_support(Scalar t_start, Scalar t_end) const {
    return Pulse(amplitude_, shape_, t_start, t_end);
  }

  /// Shape parameters by name (kv, l, T, tau, t_s, sigma, gamma).
  std::map<std::string, Scalar> parameters() const {
    return std::visit([](const auto& s) { return named(s); }, shape_);
  }

 private:
  static Scalar sech(Scalar x) { return Scalar(1) / std::cosh(x); }

  static void require_positive(Scalar v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("pulse parameter ") + name + " must be positive");
    }
  }
  static void validate(const TrigonometricShape<Scalar>& s) {
    require_positive(s.kv, "kv");
    if (s.l < 1) throw std::invalid_argument("half-wavelength index l must be >= 1");
  }
  static void validate(const RosenZenerShape<Scalar>& s) { require_positive(s.T, "T"); }
  static void validate(const SquareWaveShape<Scalar>& s) {
    require_positive(s.tau, "tau");
    require_positive(s.t_s, "t_s");
  }
  static void validate(const GaussianShape<Scalar>& s) {
    require_positive(s.tau, "tau");
    require_positive(s.sigma, "sigma");
  }
  static void validate(const LorentzianShape<Scalar>& s) {
    require_positive(s.tau, "tau");
    require_positive(s.gamma, "gamma");
  }

  static Scalar unit_value(const TrigonometricShape<Scalar>& s, Scalar t) {
    const Scalar phase = s.kv * s.l * t;
    return (s.l % 2 == 1) ? std::cos(phase) : std::sin(phase);
  }
  static Scalar unit_value(const RosenZenerShape<Scalar>& s, Scalar t) { return sech(t / s.T); }
  static Scalar unit_value(const SquareWaveShape<Scalar>& s, Scalar t) {
    return (std::tanh((t + s.tau) / s.t_s) - std::tanh((t - s.tau) / s.t_s)) / 2;
  }
  static Scalar unit_value(const GaussianShape<Scalar>& s, Scalar t) {
    const Scalar x = t / s.tau;
    return std::exp(-x * x / (4 * s.sigma * s.sigma)) /
           (2 * s.sigma * std::sqrt(std::numbers::pi_v<Scalar>));
  }
  static Scalar unit_value(const LorentzianShape<Scalar>& s, Scalar t) {
    const Scalar x = t / s.tau;
    const Scalar r = s.gamma / std::numbers::pi_v<Scalar>;
    return r * r / (x * x + s.gamma * s.gamma);
  }

  static Scalar unit_peak(const TrigonometricShape<Scalar>&) { return Scalar(1); }
  static Scalar unit_peak(const RosenZenerShape<Scalar>&) { return Scalar(1); }
  static Scalar unit_peak(const SquareWaveShape<Scalar>& s) { return std::tanh(s.tau / s.t_s); }
  static Scalar unit_peak(const GaussianShape<Scalar>& s) {
    return Scalar(1) / (2 * s.sigma * std::sqrt(std::numbers::pi_v<Scalar>));
  }
  static Scalar unit_peak(const LorentzianShape<Scalar>&) {
    const Scalar pi = std::numbers::pi_v<Scalar>;
    return Scalar(1) / (pi * pi);
  }

  static std::map<std::string, Scalar> named(const TrigonometricShape<Scalar>& s) {
    return {{"kv", s.kv}, {"l", Scalar(s.l)}};
  }
  static std::map<std::string, Scalar> named(const RosenZenerShape<Scalar>& s) {
    return {{"T", s.T}};
  }
  static std::map<std::string, Scalar> named(const SquareWaveShape<Scalar>& s) {
    return {{"tau", s.tau}, {"t_s", s.t_s}};
  }
  static std::map<std::string, Scalar> named(const GaussianShape<Scalar>& s) {
    return {{"tau", s.tau}, {"sigma", s.sigma}};
  }
  static std::map<std::string, Scalar> named(const LorentzianShape<Scalar>& s) {
    return {{"tau", s.tau}, {"gamma", s.gamma}};
  }

  Scalar amplitude_;
  Shape shape_;
  Scalar t_start_;
  Scalar t_end_;
};

template <typename Scalar>
Scalar eval(const Pulse<Scalar>& pulse, Scalar t) {
  return pulse(t);
}

// ---------------------------------------------------------------------------
// Construction

/// Cavity-mode coupling for an atom crossing l half wavelengths, support
/// [-pi/(2kv), pi/(2kv)].
template <typename Scalar>
Pulse<Scalar> make_microwave(Scalar g0, Scalar kv, int l) {
  if (l < 1) throw std::invalid_argument("half-wavelength index l must be >= 1");
  if (!(kv > 0)) throw std::invalid_argument("kv must be positive");
  const Scalar half = std::numbers::pi_v<Scalar> / (2 * kv);
  return Pulse<Scalar>(g0, TrigonometricShape<Scalar>{kv, l}, -half, half);
}

/// Microwave pulse comparable across l: kv = 2/(pi T) and amplitude g0 * l, so
/// |area| = pi T g0 for every odd l.
template <typename Scalar>
Pulse<Scalar> make_rescaled_microwave(Scalar g0, Scalar T, int l) {
  const Scalar kv = 2 / (std::numbers::pi_v<Scalar> * T);
  return make_microwave(g0 * l, kv, l);
}

/// sech pulse truncated to |t| <= 15 T.
template <typename Scalar>
Pulse<Scalar> make_rosen_zener(Scalar g0, Scalar T) {
  return Pulse<Scalar>(g0, RosenZenerShape<Scalar>{T}, -15 * T, 15 * T);
}

/// tanh box, truncated 20 t_s beyond each edge.
template <typename Scalar>
Pulse<Scalar> make_square_wave(Scalar g0, Scalar tau, Scalar t_s) {
  const Scalar half = tau + 20 * t_s;
  return Pulse<Scalar>(g0, SquareWaveShape<Scalar>{tau, t_s}, -half, half);
}

/// Truncated to |t| <= 16 sigma tau (eight standard deviations of the envelope).
template <typename Scalar>
Pulse<Scalar> make_gaussian(Scalar g0, Scalar tau, Scalar sigma) {
  const Scalar half = 16 * sigma * tau;
  return Pulse<Scalar>(g0, GaussianShape<Scalar>{tau, sigma}, -half, half);
}

/// Truncated to |t| <= 200 gamma tau; the clipped tails hold ~0.3% of the area.
template <typename Scalar>
Pulse<Scalar> make_lorentzian(Scalar g0, Scalar tau, Scalar gamma) {
  const Scalar half = 200 * gamma * tau;
  return Pulse<Scalar>(g0, LorentzianShape<Scalar>{tau, gamma}, -half, half);
}

/// Rebuilds a pulse from its kind tag and named parameters. Missing support
/// falls back to the default truncation of that kind.
template <typename Scalar>
Pulse<Scalar> make_pulse(PulseKind kind, Scalar amplitude,
                         const std::map<std::string, Scalar>& params,
                         std::optional<std::pair<std::type_identity_t<Scalar>, std::type_identity_t<Scalar>>> support =
                             std::nullopt) {
  auto get = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end()) {
      throw std::invalid_argument(std::string("missing pulse parameter '") + key + "' for " +
                                  std::string(to_string(kind)));
    }
    return it->second;
  };
  auto build = [&]() -> Pulse<Scalar> {
    switch (kind) {
      case PulseKind::Trigonometric: {
        const Scalar l = get("l");
        if (l != std::round(l)) throw std::invalid_argument("l must be an integer");
        return make_microwave(amplitude, get("kv"), static_cast<int>(l));
      }
      case PulseKind::RosenZener: return make_rosen_zener(amplitude, get("T"));
      case PulseKind::SquareWave: return make_square_wave(amplitude, get("tau"), get("t_s"));
      case PulseKind::Gaussian: return make_gaussian(amplitude, get("tau"), get("sigma"));
      case PulseKind::Lorentzian: return make_lorentzian(amplitude, get("tau"), get("gamma"));
    }
    throw std::invalid_argument("unknown pulse kind");
  };
  Pulse<Scalar> pulse = build();
  if (support) pulse = pulse.with_support(support->first, support->second);
  return pulse;
}

// ---------------------------------------------------------------------------
// Area

enum class AreaMethod { Analytic, Quadrature };

template <typename Scalar>
struct PulseArea {
  Scalar value;
  AreaMethod method;
};

template <typename Scalar>
Scalar quadrature_area(const Pulse<Scalar>& pulse, Scalar abs_tol = Scalar(1e-10)) {
  return adaptive_simpson(pulse, pulse.t_start(), pulse.t_end(), abs_tol);
}

/// Integral of g(t). Closed forms for the sech, Gaussian and trigonometric
/// shapes (taken over the whole line; the truncated tails are below 1e-6
/// relative); adaptive Simpson over the support for the rest.
template <typename Scalar>
PulseArea<Scalar> area(const Pulse<Scalar>& pulse) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar g0 = pulse.amplitude();
  const auto& shape = pulse.shape();
  if (const auto* rz = std::get_if<RosenZenerShape<Scalar>>(&shape)) {
    return {pi * rz->T * g0, AreaMethod::Analytic};
  }
  if (const auto* gs = std::get_if<GaussianShape<Scalar>>(&shape)) {
    return {g0 * gs->tau, AreaMethod::Analytic};
  }
  if (const auto* tr = std::get_if<TrigonometricShape<Scalar>>(&shape)) {
    const Scalar half = pi / (2 * tr->kv);
    const bool canonical = pulse.t_start() == -half && pulse.t_end() == half;
    if (canonical) {
      if (tr->l % 2 == 0) return {Scalar(0), AreaMethod::Analytic};
      // sin(l pi / 2) = +1 for l = 1, 5, ...; -1 for l = 3, 7, ...
      const Scalar sign = ((tr->l / 2) % 2 == 0) ? Scalar(1) : Scalar(-1);
      return {sign * 2 * g0 / (tr->kv * tr->l), AreaMethod::Analytic};
    }
  }
  return {quadrature_area(pulse), AreaMethod::Quadrature};
}

/// Rescales the amplitude so that the integral over the support equals target.
template <typename Scalar>
Pulse<Scalar> normalized_to_area(const Pulse<Scalar>& pulse, Scalar target) {
  const Scalar current = quadrature_area(pulse);
  if (current == 0) throw std::invalid_argument("cannot normalize a pulse with zero area");
  return pulse.scaled(target / current);
}

/// The five comparison shapes with the tabulated parameters (tau = pi T,
/// t_s = 0.02, sigma = gamma = 0.3, kv = 2/(pi T)), without area matching.
/// Ordered from fastest to slowest switching.
template <typename Scalar>
std::array<Pulse<Scalar>, 5> make_area_matched_suite_raw(Scalar g0, Scalar T) {
  if (!(g0 > 0) || !(T > 0)) throw std::invalid_argument("g0 and T must be positive");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar tau = pi * T;
  return {make_square_wave(g0, tau, Scalar(0.02)),
          make_microwave(g0, 2 / (pi * T), 1),
          make_gaussian(g0, tau, Scalar(0.3)),
          make_rosen_zener(g0, T),
          make_lorentzian(g0, tau, Scalar(0.3))};
}

/// The five comparison shapes, each rescaled so its area over the support is
/// exactly pi T g0.
template <typename Scalar>
std::array<Pulse<Scalar>, 5> make_area_matched_suite(Scalar g0, Scalar T) {
  auto raw = make_area_matched_suite_raw(g0, T);
  const Scalar target = std::numbers::pi_v<Scalar> * T * g0;
  return {normalized_to_area(raw[0], target), normalized_to_area(raw[1], target),
          normalized_to_area(raw[2], target), normalized_to_area(raw[3], target),
          normalized_to_area(raw[4], target)};
}

/// Ratio of the central widths holding 50% and 99% of the integrated |g|.
///
/// Close to 0.5 for a box, small for heavy tails. Assumes the pulse is centred
/// on t = 0.
template <typename Scalar>
Scalar switching_sharpness(const Pulse<Scalar>& pulse) {
  const Scalar half = std::max(-pulse.t_start(), pulse.t_end());
  auto magnitude = [&](Scalar t) { return std::abs(pulse(t)); };
  const Scalar tol = Scalar(1e-12) * pulse.peak() * half;
  const Scalar total = adaptive_simpson(magnitude, -half, half, tol);
  auto central_width = [&](Scalar fraction) {
    Scalar lo = 0;
    Scalar hi = half;
    for (int it = 0; it < 80; ++it) {
      const Scalar mid = (lo + hi) / 2;
      const Scalar held = adaptive_simpson(magnitude, -mid, mid, tol);
      (held < fraction * total ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
  };
  return central_width(Scalar(0.5)) / central_width(Scalar(0.99));
}

}  // namespace photonfilter
