#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "photonfilter/dynamics.hpp"
#include "photonfilter/errors.hpp"

namespace photonfilter {

/// Normalized photon-number probabilities P_n, n = 0..n_max.
template <typename Scalar>
class PhotonDistribution {
 public:
  /// Normalizes non-negative weights; throws if they sum to zero.
  template <typename Derived>
  static PhotonDistribution from_weights(const Eigen::MatrixBase<Derived>& weights) {
    if (weights.size() < 1) throw std::invalid_argument("empty photon distribution");
    if ((weights.array() < 0).any()) throw std::invalid_argument("negative photon probability");
    const Scalar total = weights.sum();
    if (!(total > 0)) throw std::invalid_argument("photon distribution has zero total weight");
    PhotonDistribution d;
    d.probs_ = weights / total;
    return d;
  }

  /// All probability in |k>.
  static PhotonDistribution fock(int k, int n_max) {
    if (k < 0 || k > n_max) throw std::invalid_argument("Fock index outside truncation");
    Vector<Scalar> w = Vector<Scalar>::Zero(n_max + 1);
    w(k) = 1;
    return from_weights(w);
  }

  const Vector<Scalar>& probs() const { return probs_; }
  Scalar operator[](int n) const { return probs_(n); }
  int n_max() const { return static_cast<int>(probs_.size()) - 1; }

 private:
  Vector<Scalar> probs_;
};

/// Probability that a Poisson(n_bar) count exceeds n_max, summed term by term.
template <typename Scalar>
Scalar poisson_tail_mass(Scalar n_bar, int n_max) {
  if (n_bar == 0) return Scalar(0);
  Scalar tail = 0;
  const Scalar log_nbar = std::log(n_bar);
  for (int n = n_max + 1;; ++n) {
    const Scalar term = std::exp(-n_bar + n * log_nbar - std::lgamma(Scalar(n + 1)));
    tail += term;
    if (n > n_bar && term < tail * std::numeric_limits<Scalar>::epsilon()) break;
    if (n > n_max + 100000) break;
  }
  return tail;
}

/// Coherent-state photon statistics exp(-n_bar) n_bar^n / n!, truncated at
/// n_max and renormalized. Throws TruncationTooSmall when the dropped tail
/// exceeds 1e-9.
template <typename Scalar>
PhotonDistribution<Scalar> poisson_distribution(Scalar n_bar, int n_max) {
  if (!(n_bar >= 0) || !std::isfinite(n_bar)) throw std::invalid_argument("n_bar must be >= 0");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  const Scalar tail = poisson_tail_mass(n_bar, n_max);
  if (tail > Scalar(1e-9)) throw TruncationTooSmall(n_max, static_cast<double>(tail));
  Vector<Scalar> w(n_max + 1);
  if (n_bar == 0) {
    w.setZero();
    w(0) = 1;
  } else {
    const Scalar log_nbar = std::log(n_bar);
    for (int n = 0; n <= n_max; ++n) {
      w(n) = std::exp(-n_bar + n * log_nbar - std::lgamma(Scalar(n + 1)));
    }
  }
  return PhotonDistribution<Scalar>::from_weights(w);
}

/// Truncation that keeps the Poisson tail negligible: n_bar + 10 sqrt(n_bar), rounded up.
inline int default_truncation(double n_bar) {
  return static_cast<int>(std::ceil(n_bar + 10 * std::sqrt(n_bar)));
}

enum class MeasurementOutcome { Lower, Upper };

template <typename Scalar>
struct MeasurementResult {
  PhotonDistribution<Scalar> distribution;
  /// Unnormalized weight, i.e. the probability of observing the outcome.
  Scalar probability;
};

/// Conditions the field on the exit level of one atom.
///
/// Lower: P_n <- p-(n) P_n. Upper: P_n <- p+(n+1) P_{n+1}, the atom having
/// taken one photon; the top entry becomes 0.
template <typename Scalar>
MeasurementResult<Scalar> apply_measurement(const PhotonDistribution<Scalar>& dist,
                                            const FilterFunction<Scalar>& filter,
                                            MeasurementOutcome outcome) {
  if (dist.n_max() != filter.n_max()) {
    throw std::invalid_argument("distribution and filter truncations differ");
  }
  const int n_max = dist.n_max();
  Vector<Scalar> w(n_max + 1);
  if (outcome == MeasurementOutcome::Lower) {
    w = filter.p_minus.cwiseProduct(dist.probs());
  } else {
    w.head(n_max) = filter.p_plus.tail(n_max).cwiseProduct(dist.probs().tail(n_max));
    w(n_max) = 0;
  }
  const Scalar probability = w.sum();
  if (!(probability > 0)) {
    throw ImpossibleOutcome(outcome == MeasurementOutcome::Lower
                                ? "lower-level detection has zero probability"
                                : "upper-level detection has zero probability");
  }
  return {PhotonDistribution<Scalar>::from_weights(w), probability};
}

template <typename Scalar>
struct SequenceResult {
  PhotonDistribution<Scalar> distribution;
  std::vector<Scalar> probabilities;
};

/// Left fold of apply_measurement over identically prepared atoms.
template <typename Scalar>
SequenceResult<Scalar> apply_sequence(const PhotonDistribution<Scalar>& dist,
                                      const FilterFunction<Scalar>& filter,
                                      std::span<const MeasurementOutcome> outcomes) {
  SequenceResult<Scalar> result{dist, {}};
  result.probabilities.reserve(outcomes.size());
  for (MeasurementOutcome outcome : outcomes) {
    MeasurementResult<Scalar> step = apply_measurement(result.distribution, filter, outcome);
    result.distribution = std::move(step.distribution);
    result.probabilities.push_back(step.probability);
  }
  return result;
}

/// m lower-level detections in closed form: P_n ∝ p-(n)^m P_n.
template <typename Scalar>
PhotonDistribution<Scalar> repeated_lower_filter(const PhotonDistribution<Scalar>& dist,
                                                 const FilterFunction<Scalar>& filter, int m) {
  if (m < 0) throw std::invalid_argument("m must be >= 0");
  if (dist.n_max() != filter.n_max()) {
    throw std::invalid_argument("distribution and filter truncations differ");
  }
  const Vector<Scalar> w = filter.p_minus.array().pow(Scalar(m)) * dist.probs().array();
  if (!(w.sum() > 0)) throw ImpossibleOutcome("lower-level detection sequence has zero probability");
  return PhotonDistribution<Scalar>::from_weights(w);
}

}  // namespace photonfilter
