#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "trotter/error_lab.hpp"

namespace trotter {

/// Real and imaginary parts of <psi| U_ref^dag U' |psi>. The one-ancilla
/// interferometric circuits measure the ancilla 0-outcome with probability
/// (1 + x)/2 and (1 + y)/2 respectively; the simulation works at the
/// amplitude level, which is statistically identical for an ideal device.
struct AmplitudePair {
  double x;
  double y;
};

struct ShotEstimate {
  double estimate;
  double stderr_;  // plug-in standard error
  std::int64_t shots;
  std::pair<double, double> ci95;  // estimate -/+ 1.96 * stderr
};

/// Noiseless circuit expectation, exact from two statevector passes.
AmplitudePair hadamard_amplitude(const RotationSchedule& target,
                                 const RotationSchedule& reference,
                                 const StateVector& psi);

/// Each part estimated as (n0 - n1)/n over n Bernoulli draws with success
/// probability (1 + v)/2; stderr sqrt((1 - est^2)/n). Deterministic per
/// seed.
std::pair<ShotEstimate, ShotEstimate> sample_amplitude(
    const AmplitudePair& truth, std::int64_t shots_per_part,
    const RngSeed& seed);

/// Uncertainty of atan2(y, x) from per-part uncertainties; reduces to
/// delta / sqrt(x^2 + y^2) when the parts are measured equally.
double propagate_phase_stderr(double x, double y, double dx, double dy);

/// Phase estimate from finite shots, split equally between the real and
/// imaginary circuits. Throws UndefinedPhaseError when the estimated
/// modulus is too small to carry a phase (x^2 + y^2 < 1e-8).
ShotEstimate estimate_phase_with_shots(const RotationSchedule& target,
                                       const RotationSchedule& reference,
                                       const StateVector& psi,
                                       std::int64_t shots,
                                       const RngSeed& seed);

/// sqrt(f) |target> + sqrt(1 - f) |phi>, with |phi> Haar-random in the
/// orthogonal complement. The squared overlap with the target equals f to
/// floating-point accuracy.
StateVector random_state_with_fidelity(const StateVector& target, double f,
                                       const RngSeed& seed);

struct FidelityPoint {
  double fidelity;
  double mean_theta;
  double ci_low;
  double ci_high;
};

/// Mean phase error over states_per_point freshly sampled fidelity-f states
/// per grid value, with a 95% confidence interval from the sample standard
/// deviation. The f = 1 row has zero CI width by construction.
std::vector<FidelityPoint> fidelity_sweep(const SpectralData& spectrum,
                                          const RotationSchedule& schedule,
                                          Eigen::Index k,
                                          std::span<const double> f_grid,
                                          int states_per_point,
                                          const RngSeed& seed);
std::vector<FidelityPoint> fidelity_sweep(const PauliSum& h,
                                          const RotationSchedule& schedule,
                                          Eigen::Index k,
                                          std::span<const double> f_grid,
                                          int states_per_point,
                                          const RngSeed& seed,
                                          int dense_limit = kDefaultDenseLimit);

}  // namespace trotter
