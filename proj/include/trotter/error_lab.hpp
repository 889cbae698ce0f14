#pragma once

#include <optional>
#include <vector>

#include "trotter/dynamics.hpp"
#include "trotter/hamiltonians.hpp"
#include "trotter/rng.hpp"

namespace trotter {

/// Overlap magnitude below which a phase is refused instead of reported.
inline constexpr double kPhaseGuardTol = 1e-13;

/// Error magnitude below which a power-law fit is refused.
inline constexpr double kDegenerateErrorTol = 1e-13;

/// The measured amplitude has no usable phase (modulus below the guard).
struct UndefinedPhaseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Grid errors too close to the floating-point floor to fit.
struct UnfittableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// |lambda_k - lambda'_k| where lambda'_k comes from the effective spectrum
/// of the schedule unitary, matched by largest squared overlap.
double trotter_error(const SpectralData& spectrum,
                     const RotationSchedule& schedule, Eigen::Index k,
                     int dense_limit = kDefaultDenseLimit);

/// Convenience form; requires 0 < t <= pi/||h||.
double trotter_error(const PauliSum& h, int order, int n_steps, double t,
                     Eigen::Index k, int dense_limit = kDefaultDenseLimit);

/// arg <psi| U^dag(t) U'(t) |psi> with U exact and U' the schedule, both at
/// the schedule's total time. Principal branch. Throws UndefinedPhaseError
/// when the overlap modulus is below the guard.
double phase_error(const SpectralData& spectrum,
                   const RotationSchedule& schedule, const StateVector& psi);

/// arg <psi| U_ref^dag(t) U'(t) |psi> from two schedule passes; no
/// diagonalization involved. Schedules must share width and total time.
double approx_phase_error(const RotationSchedule& target,
                          const RotationSchedule& reference,
                          const StateVector& psi);

/// 1 - |<psi| U^dag(t) U'(t) |psi>|^2
double fidelity_error_exact(const SpectralData& spectrum,
                            const RotationSchedule& schedule,
                            const StateVector& psi);

/// 1 - x^2 - y^2 from the reference-approximation amplitude.
double fidelity_error_approx(const RotationSchedule& target,
                             const RotationSchedule& reference,
                             const StateVector& psi);

/// Largest singular value of U(t) - U'(t).
double operator_norm_exact(const SpectralData& spectrum,
                           const RotationSchedule& schedule,
                           int dense_limit = kDefaultDenseLimit);

/// Max |phase error| over n_states Haar-random states. State m depends only
/// on (seed, m), so the estimate is a prefix maximum: non-decreasing in
/// n_states for a fixed seed.
double operator_norm_sampled(const SpectralData& spectrum,
                             const RotationSchedule& schedule, int n_states,
                             const RngSeed& seed);

/// All error metrics of one configuration, for reporting.
struct ErrorReport {
  double trotter_error;       // |lambda_k - lambda'_k|
  double phase_error;         // radians, principal branch
  double approx_phase_error;  // radians, from the reference schedule
  double phase_error_energy;  // |phase_error| / t
  double fidelity_error;      // in [0, 1]
  double operator_norm;       // ||U - U'||
  double sampled_norm;        // max over sampled states
};

ErrorReport error_report(const PauliSum& h, int order, int reference_order,
                         int n_steps, double t, Eigen::Index k, int n_states,
                         const RngSeed& seed,
                         int dense_limit = kDefaultDenseLimit);

enum class FitSource {
  exact,         // |lambda_k - lambda'_k|, needs diagonalization
  approx_phase,  // |approx phase error| / t, measurable on hardware
};

struct WkFitOptions {
  int grid_points = 10;
  int reference_order = 4;             // approx_phase source only
  std::optional<double> t_lo;          // default pi / (4 ||H||)
  std::optional<double> t_hi;          // default pi / (2 ||H||)
};

/// Power-law fit of the error over a log-spaced time grid.
struct WkFit {
  double w;               // fixed-slope amplitude: log eps = log w + p log t
  double exponent_check;  // free-slope regression over the same points
  double r_squared;       // of the fixed-slope fit, in log space
  std::vector<double> t_grid;
  std::vector<double> errors;
  std::optional<double> w_commutator;
  std::optional<double> w_operator;
};

/// Fits w such that error ~ w t^order over grid_points log-spaced times,
/// default range [pi/(4||H||), pi/(2||H||)]. The slope is pinned at the
/// formula order; a free-slope fit is reported alongside as a scaling
/// check. Throws UnfittableError when any grid error is degenerate.
WkFit fit_wk(const PauliSum& h, int order, Eigen::Index k, FitSource source,
             const WkFitOptions& options = {},
             int dense_limit = kDefaultDenseLimit);

/// The log-spaced grid used by fit_wk.
std::vector<double> fit_time_grid(double norm_h, int points = 10,
                                  std::optional<double> t_lo = {},
                                  std::optional<double> t_hi = {});

}  // namespace trotter
