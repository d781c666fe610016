#include "photonfilter/dynamics.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

namespace pf = photonfilter;
using std::numbers::pi;

namespace {

constexpr double kG0 = 5.0;
constexpr double kT = 0.1;

// 1 - sech^2(pi * 0.1 * 5 / 2): lower-level survival at n = 49, dw = 5 for the
// sech pulse (sin^2(pi T g0 7) = 1 there).
const double kRzMinimumAtDw5 = 1.0 - std::pow(1.0 / std::cosh(pi * kT * 5.0 / 2.0), 2);

pf::DetunedDrive<double> drive(pf::Pulse<double> pulse, double dw) { return {pulse, dw}; }

const auto kLower = [](int n) { return pf::initial_amplitudes<double>(pf::InitialLevel::Lower, n); };

}  // namespace

TEST(FixtureSanity, RzMinimumValue) { EXPECT_NEAR(kRzMinimumAtDw5, 0.43006603620662, 1e-12); }

TEST(IntegrateBlock, ResonantRotationDependsOnlyOnArea) {
  const auto pulses = {pf::make_rosen_zener(kG0, kT), pf::make_microwave(kG0, 2 / (pi * kT), 1)};
  for (const auto& p : pulses) {
    const double a = pf::quadrature_area(p);
    for (int n : {1, 2, 7, 16, 30}) {
      const auto out = pf::integrate_block(drive(p, 0.0), n, kLower(n));
      EXPECT_NEAR(out.p_minus(), std::pow(std::cos(std::sqrt(n) * a), 2), 1e-8);
      EXPECT_NEAR(out.p_plus(), std::pow(std::sin(std::sqrt(n) * a), 2), 1e-8);
    }
  }
}

TEST(IntegrateBlock, VanishingCouplingLeavesAtomAlone) {
  // l = 2 has zero area; at dw = 0 the rotation undoes itself.
  const auto p = pf::make_microwave(kG0, 10.0, 2);
  const auto out = pf::integrate_block(drive(p, 0.0), 9, kLower(9));
  EXPECT_NEAR(out.p_minus(), 1.0, 1e-9);
}

TEST(IntegrateBlock, WeakCouplingIsNearlyTrivialAtAnyDetuning) {
  const auto p = pf::make_rosen_zener(1e-9, kT);
  for (double dw : {0.0, 1.0, 5.0}) {
    const auto out = pf::integrate_block(drive(p, dw), 4, kLower(4));
    EXPECT_LT(out.p_plus(), 1e-15);
    EXPECT_NEAR(out.p_minus(), 1.0, 1e-10);
  }
}

TEST(IntegrateBlock, SechPulseMatchesClosedFormAtDetunedMinimum) {
  const auto out = pf::integrate_block(drive(pf::make_rosen_zener(kG0, kT), 5.0), 49, kLower(49));
  EXPECT_NEAR(out.p_minus(), kRzMinimumAtDw5, 1e-5);
}

TEST(IntegrateBlock, UnitarityAndConvergenceDiagnostics) {
  const auto suite = pf::make_area_matched_suite(kG0, kT);
  for (const auto& p : suite) {
    const auto s = pf::solve_block(drive(p, 5.0), 49, kLower(49));
    EXPECT_LT(std::abs(s.amplitudes.norm2() - 1.0), 1e-8) << to_string(p.kind());
    EXPECT_LE(s.richardson_delta, 1e-9);
    EXPECT_GE(s.steps, 2 * pf::coarse_steps(drive(p, 5.0), 49, pf::StepControl<double>{}));
  }
}

TEST(IntegrateBlock, NonConvergenceNamesTheBlock) {
  pf::StepControl<double> strict;
  strict.max_phase_step = 2.0;
  strict.tolerance = 1e-15;
  strict.max_halvings = 1;
  try {
    pf::integrate_block(drive(pf::make_rosen_zener(kG0, kT), 2.0), 25, kLower(25), strict);
    FAIL() << "expected NonConvergence";
  } catch (const pf::NonConvergence& e) {
    EXPECT_EQ(e.block(), 25);
    EXPECT_GT(e.delta(), 1e-15);
  }
}

TEST(IntegrateBlock, RungeKuttaIsFourthOrder) {
  const auto d = drive(pf::make_gaussian(kG0, pi * kT, 0.3), 2.0);
  const auto reference = pf::propagate_fixed(d, 9, kLower(9), 1 << 16);
  auto error = [&](int steps) {
    return std::abs(pf::propagate_fixed(d, 9, kLower(9), steps).p_minus() - reference.p_minus());
  };
  EXPECT_NEAR(std::log2(error(800) / error(1600)), 4.0, 0.3);
  EXPECT_NEAR(std::log2(error(1600) / error(3200)), 4.0, 0.3);
}

TEST(IntegrateBlock, VacuumBlockOnlyAcquiresPhase) {
  const auto p = pf::make_rosen_zener(kG0, kT);
  const auto out = pf::integrate_block(drive(p, 3.0), 0, kLower(0));
  EXPECT_EQ(out.p_plus(), 0.0);
  EXPECT_NEAR(out.p_minus(), 1.0, 1e-15);
  EXPECT_NEAR(std::arg(out.a_minus), std::remainder(3.0 * p.duration() / 2, 2 * pi), 1e-12);
  EXPECT_THROW(pf::integrate_block(drive(p, 0.0), -1, kLower(0)), std::invalid_argument);
}

TEST(IntegrateBlock, UpperBranchMirrorsLowerAtResonance) {
  const auto d = drive(pf::make_rosen_zener(kG0, kT), 0.0);
  const auto up = pf::integrate_block(d, 5, pf::initial_amplitudes<double>(pf::InitialLevel::Upper, 5));
  const auto down = pf::integrate_block(d, 5, kLower(5));
  EXPECT_NEAR(up.p_plus(), down.p_minus(), 1e-9);
}

TEST(IntegrateBlock, LongDoubleAgreesWithDouble) {
  const auto pd = pf::make_rosen_zener(kG0, kT);
  const auto pl = pf::make_rosen_zener<long double>(5.0L, 0.1L);
  const auto d = pf::integrate_block(drive(pd, 0.5), 16, kLower(16));
  const auto l = pf::integrate_block(pf::DetunedDrive<long double>{pl, 0.5L}, 16,
                                     pf::initial_amplitudes<long double>(pf::InitialLevel::Lower, 16));
  EXPECT_NEAR(static_cast<double>(l.p_minus()), d.p_minus(), 1e-8);
}

TEST(FilterFunction, EvenMicrowaveIsIdentityAtResonance) {
  const auto f = pf::filter_function(drive(pf::make_rescaled_microwave(kG0, kT, 2), 0.0), 100);
  EXPECT_EQ(f.source, pf::FilterSource::Numeric);
  EXPECT_EQ(f.n_max(), 100);
  EXPECT_LT((f.p_minus.array() - 1.0).abs().maxCoeff(), 1e-8);
}

TEST(FilterFunction, NormalizedEntries) {
  const auto f = pf::filter_function(drive(pf::make_rescaled_microwave(kG0, kT, 1), 5.0), 60);
  EXPECT_EQ(f.p_plus(0), 0.0);
  EXPECT_EQ(f.p_minus(0), 1.0);
  EXPECT_LT(((f.p_plus + f.p_minus).array() - 1.0).abs().maxCoeff(), 1e-8);
  EXPECT_LE(f.p_minus.maxCoeff(), 1.0 + 1e-12);
  EXPECT_GE(f.p_minus.minCoeff(), 0.0);
  EXPECT_LT(f.max_unitarity_defect, 1e-8);
  EXPECT_THROW(pf::filter_function(drive(pf::make_rosen_zener(kG0, kT), 0.0), 0), std::invalid_argument);
}

// Largest pointwise gap between the l = 1 and l = 3 microwave filters, frozen
// from an independent scipy DOP853 integration (rtol 1e-11).
TEST(FilterFunction, FirstAndThirdHarmonicNearlyCoincideAtSmallDetuning) {
  const auto f1 = pf::filter_function(drive(pf::make_rescaled_microwave(kG0, kT, 1), 0.5), 100);
  const auto f3 = pf::filter_function(drive(pf::make_rescaled_microwave(kG0, kT, 3), 0.5), 100);
  const double gap = (f1.p_minus - f3.p_minus).cwiseAbs().maxCoeff();
  EXPECT_NEAR(gap, 2.371506395676737e-3, 1e-6);
  EXPECT_LT(gap, 3e-3);
}

TEST(FilterFunction, FirstAndThirdHarmonicDifferAtLargeDetuning) {
  const auto f1 = pf::filter_function(drive(pf::make_rescaled_microwave(kG0, kT, 1), 5.0), 100);
  const auto f3 = pf::filter_function(drive(pf::make_rescaled_microwave(kG0, kT, 3), 5.0), 100);
  const double gap = (f1.p_minus - f3.p_minus).cwiseAbs().maxCoeff();
  EXPECT_GT(gap, 1e-2);
  EXPECT_NEAR(gap, 0.19693393315785496, 1e-5);
}

TEST(FilterFunction, MicrowaveMinimaDeepenWithPhotonNumber) {
  const auto f = pf::filter_function(drive(pf::make_rescaled_microwave(kG0, kT, 1), 5.0), 60);
  auto local_min = [&](int centre) {
    double best = 1.0;
    for (int n = centre - 3; n <= centre + 3; ++n) best = std::min(best, f.p_minus(n));
    return best;
  };
  EXPECT_LT(local_min(49), kRzMinimumAtDw5);
  EXPECT_LT(local_min(49), local_min(9));
}

TEST(AnalyticZeroDetuning, Values) {
  const auto zero = pf::analytic_zero_detuning(0.0, 20);
  EXPECT_TRUE((zero.p_minus.array() == 1.0).all());
  const auto half = pf::analytic_zero_detuning(pi / 2, 4);
  EXPECT_NEAR(half.p_minus(4), 1.0, 1e-15);
  EXPECT_NEAR(half.p_minus(1), 0.0, 1e-15);
  EXPECT_EQ(half.source, pf::FilterSource::ZeroDetuningAnalytic);
  const auto from_area = pf::analytic_zero_detuning(pf::area(pf::make_rosen_zener(kG0, kT)), 4);
  EXPECT_EQ(from_area.p_minus, half.p_minus);
}

TEST(AnalyticRosenZener, ReducesToResonantFormula) {
  const auto rz = pf::analytic_rosen_zener(kG0, kT, 0.0, 100);
  const auto cos2 = pf::analytic_zero_detuning(pi * kT * kG0, 100);
  EXPECT_LT((rz.p_minus - cos2.p_minus).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_EQ(rz.source, pf::FilterSource::RosenZenerAnalytic);
}

TEST(AnalyticRosenZener, Landmarks) {
  const auto small = pf::analytic_rosen_zener(kG0, kT, 0.5, 60);
  EXPECT_NEAR(small.p_minus(16), 1.0, 1e-14);
  const auto large = pf::analytic_rosen_zener(kG0, kT, 5.0, 60);
  EXPECT_NEAR(large.p_minus(49), kRzMinimumAtDw5, 1e-14);
  EXPECT_THROW(pf::analytic_rosen_zener(kG0, 0.0, 0.0, 10), std::invalid_argument);
}

TEST(AnalyticRosenZener, MinimumRisesMonotonicallyWithDetuning) {
  double previous = -1.0;
  for (double dw : {0.0, 1.0, 2.0, 3.0, 4.0, 5.0}) {
    const double v = pf::integrate_block(drive(pf::make_rosen_zener(kG0, kT), dw), 49, kLower(49)).p_minus();
    EXPECT_GT(v, previous) << "dw=" << dw;
    previous = v;
  }
}

TEST(RzMaxima, LocationAndWidth) {
  const auto second = pf::rz_maxima(kT, kG0, 2);
  EXPECT_DOUBLE_EQ(second.location, 16.0);
  EXPECT_DOUBLE_EQ(second.width, 8.0);
  EXPECT_EQ(pf::rz_maxima(kT, kG0, 0).location, 0.0);
  EXPECT_THROW(pf::rz_maxima(kT, kG0, -1), std::invalid_argument);
  EXPECT_THROW(pf::rz_maxima(0.0, kG0, 1), std::invalid_argument);
}
