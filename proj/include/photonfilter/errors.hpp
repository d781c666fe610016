#pragma once

#include <stdexcept>
#include <string>

namespace photonfilter {

/// Step halving failed to bring successive |a-|^2 estimates within tolerance.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(int block, double delta)
      : std::runtime_error("integrator did not converge in block n=" + std::to_string(block) +
                           " (step-halving change " + std::to_string(delta) + ")"),
        block_(block),
        delta_(delta) {}

  int block() const noexcept { return block_; }
  double delta() const noexcept { return delta_; }

 private:
  int block_;
  double delta_;
};

/// The Fock truncation drops more probability than allowed.
class TruncationTooSmall : public std::runtime_error {
 public:
  TruncationTooSmall(int n_max, double tail_mass)
      : std::runtime_error("n_max=" + std::to_string(n_max) + " leaves tail mass " +
                           std::to_string(tail_mass)),
        n_max_(n_max),
        tail_mass_(tail_mass) {}

  int n_max() const noexcept { return n_max_; }
  double tail_mass() const noexcept { return tail_mass_; }

 private:
  int n_max_;
  double tail_mass_;
};

/// The measured atomic level has zero probability for the given field state.
class ImpossibleOutcome : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mandel Q needs a non-zero mean photon number.
class UndefinedQ : public std::domain_error {
 public:
  UndefinedQ() : std::domain_error("Mandel Q is undefined for the vacuum (<n> = 0)") {}
};

}  // namespace photonfilter
