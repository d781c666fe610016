#pragma once

#include <cmath>
#include <stdexcept>
#include <string_view>

#include <Eigen/Core>

#include "photonfilter/errors.hpp"
#include "photonfilter/field.hpp"

namespace photonfilter {

template <typename Scalar>
struct DistributionStats {
  Scalar mean;
  Scalar variance;
  /// (<n^2> - <n>^2 - <n>) / <n>
  Scalar mandel_q;

  Scalar width() const { return std::sqrt(variance); }
};

/// Mean, variance and Mandel Q of photon-number weights (normalized here, so
/// any non-negative weight vector is accepted).
template <typename Derived>
DistributionStats<typename Derived::Scalar> moments(const Eigen::MatrixBase<Derived>& weights) {
  using Scalar = typename Derived::Scalar;
  const Scalar total = weights.sum();
  if (!(total > 0)) throw std::invalid_argument("photon distribution has zero total weight");
  const auto n = Vector<Scalar>::LinSpaced(weights.size(), 0, Scalar(weights.size() - 1));
  const Scalar mean = n.dot(weights) / total;
  if (mean == 0) throw UndefinedQ();
  // Centred second moment avoids cancellation in <n^2> - <n>^2.
  const Scalar variance =
      (n.array() - mean).square().matrix().dot(weights) / total;
  return {mean, variance, (variance - mean) / mean};
}

template <typename Scalar>
DistributionStats<Scalar> moments(const PhotonDistribution<Scalar>& dist) {
  return moments(dist.probs());
}

enum class PhotonStatistics { SubPoissonian, Poissonian, SuperPoissonian };

constexpr std::string_view to_string(PhotonStatistics s) {
  switch (s) {
    case PhotonStatistics::SubPoissonian: return "sub_poissonian";
    case PhotonStatistics::Poissonian: return "poissonian";
    case PhotonStatistics::SuperPoissonian: return "super_poissonian";
  }
  return "unknown";
}

template <typename Scalar>
PhotonStatistics classify(const DistributionStats<Scalar>& stats, Scalar threshold = Scalar(1e-9)) {
  if (stats.mandel_q < -threshold) return PhotonStatistics::SubPoissonian;
  if (stats.mandel_q > threshold) return PhotonStatistics::SuperPoissonian;
  return PhotonStatistics::Poissonian;
}

}  // namespace photonfilter
