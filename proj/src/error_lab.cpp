#include "trotter/error_lab.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "trotter/parallel.hpp"

namespace trotter {

namespace {

Complex overlap_or_throw(const StateVector& a, const StateVector& b) {
  const Complex amp = a.inner(b);
  if (std::abs(amp) < kPhaseGuardTol) {
    throw UndefinedPhaseError("overlap modulus " +
                              std::to_string(std::abs(amp)) +
                              " is below the phase guard");
  }
  return amp;
}

void check_compatible(const RotationSchedule& a, const RotationSchedule& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("schedule width mismatch");
  }
  const double ta = a.total_time(), tb = b.total_time();
  if (std::abs(ta - tb) > 1e-12 * std::max({1.0, std::abs(ta), std::abs(tb)})) {
    throw std::invalid_argument("schedules cover different evolution times");
  }
}

}  // namespace

double trotter_error(const SpectralData& spectrum,
                     const RotationSchedule& schedule, Eigen::Index k,
                     int dense_limit) {
  const Eigen::MatrixXcd u = schedule_unitary(schedule, dense_limit);
  const EffectiveSpectrum eff = effective_spectrum(u, schedule.total_time());
  const EigenpairMatch m = match_eigenpair(
      Eigen::VectorXcd(spectrum.eigenvectors.col(k)), eff);
  return std::abs(spectrum.eigenvalues(k) - eff.eigenvalues(m.index));
}

double trotter_error(const PauliSum& h, int order, int n_steps, double t,
                     Eigen::Index k, int dense_limit) {
  const SpectralData spectrum = exact_eigenpairs(h, dense_limit);
  const Eigen::Index dim = spectrum.eigenvalues.size();
  const double norm_h = std::max(std::abs(spectrum.eigenvalues(0)),
                                 std::abs(spectrum.eigenvalues(dim - 1)));
  if (t <= 0.0 || (norm_h > 0.0 && t > std::numbers::pi / norm_h * (1 + 1e-12))) {
    throw std::invalid_argument(
        "evolution time must lie in (0, pi/||H||] for unambiguous phases");
  }
  return trotter_error(spectrum, trotter_schedule(h, order, n_steps, t), k,
                       dense_limit);
}

double phase_error(const SpectralData& spectrum,
                   const RotationSchedule& schedule, const StateVector& psi) {
  const StateVector desired = exact_evolve(spectrum, schedule.total_time(), psi);
  const StateVector achieved = apply_schedule(schedule, psi);
  return std::arg(overlap_or_throw(desired, achieved));
}

double approx_phase_error(const RotationSchedule& target,
                          const RotationSchedule& reference,
                          const StateVector& psi) {
  check_compatible(target, reference);
  const StateVector ref_state = apply_schedule(reference, psi);
  const StateVector achieved = apply_schedule(target, psi);
  return std::arg(overlap_or_throw(ref_state, achieved));
}

double fidelity_error_exact(const SpectralData& spectrum,
                            const RotationSchedule& schedule,
                            const StateVector& psi) {
  const StateVector desired = exact_evolve(spectrum, schedule.total_time(), psi);
  const StateVector achieved = apply_schedule(schedule, psi);
  const double mag2 = std::norm(desired.inner(achieved));
  return std::clamp(1.0 - mag2, 0.0, 1.0);
}

double fidelity_error_approx(const RotationSchedule& target,
                             const RotationSchedule& reference,
                             const StateVector& psi) {
  check_compatible(target, reference);
  const StateVector ref_state = apply_schedule(reference, psi);
  const StateVector achieved = apply_schedule(target, psi);
  const double mag2 = std::norm(ref_state.inner(achieved));
  return 1.0 - mag2;  // may dip below 0 by fp rounding; callers tolerate
}

double operator_norm_exact(const SpectralData& spectrum,
                           const RotationSchedule& schedule, int dense_limit) {
  const Eigen::MatrixXcd diff =
      evolution_matrix(spectrum, schedule.total_time()) -
      schedule_unitary(schedule, dense_limit);
  // sigma_max via the Hermitian product; cheaper and as accurate as an SVD
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff.adjoint() * diff,
                                                         Eigen::EigenvaluesOnly);
  const double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

double operator_norm_sampled(const SpectralData& spectrum,
                             const RotationSchedule& schedule, int n_states,
                             const RngSeed& seed) {
  if (n_states < 1) throw std::invalid_argument("need at least one state");
  const int n = schedule.n_qubits();
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<double> magnitudes(static_cast<std::size_t>(n_states), 0.0);
  parallel_for(n_states, 0, [&](std::int64_t m) {
    Rng rng(seed.derived("state/" + std::to_string(m)));
    std::vector<Complex> amps(dim);
    for (auto& a : amps) a = Complex{rng.gaussian(), rng.gaussian()};
    const StateVector psi =
        StateVector::from_amplitudes(n, std::move(amps), /*normalize=*/true);
    magnitudes[static_cast<std::size_t>(m)] =
        std::abs(phase_error(spectrum, schedule, psi));
  });
  double best = 0.0;
  for (double v : magnitudes) best = std::max(best, v);
  return best;
}

ErrorReport error_report(const PauliSum& h, int order, int reference_order,
                         int n_steps, double t, Eigen::Index k, int n_states,
                         const RngSeed& seed, int dense_limit) {
  const SpectralData spectrum = exact_eigenpairs(h, dense_limit);
  const RotationSchedule target = trotter_schedule(h, order, n_steps, t);
  const RotationSchedule reference =
      trotter_schedule(h, reference_order, n_steps, t);
  const StateVector psi = eigenstate(spectrum, k);

  ErrorReport report{};
  report.trotter_error = trotter_error(spectrum, target, k, dense_limit);
  report.phase_error = phase_error(spectrum, target, psi);
  report.approx_phase_error = approx_phase_error(target, reference, psi);
  report.phase_error_energy = std::abs(report.phase_error) / t;
  report.fidelity_error = fidelity_error_exact(spectrum, target, psi);
  report.operator_norm = operator_norm_exact(spectrum, target, dense_limit);
  report.sampled_norm =
      operator_norm_sampled(spectrum, target, n_states, seed);
  return report;
}

std::vector<double> fit_time_grid(double norm_h, int points,
                                  std::optional<double> t_lo,
                                  std::optional<double> t_hi) {
  if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
  const double lo = t_lo.value_or(std::numbers::pi / (4.0 * norm_h));
  const double hi = t_hi.value_or(std::numbers::pi / (2.0 * norm_h));
  if (!(lo > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("invalid fit time range");
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double ratio = hi / lo;
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        lo * std::pow(ratio, static_cast<double>(i) / (points - 1));
  }
  return grid;
}

WkFit fit_wk(const PauliSum& h, int order, Eigen::Index k, FitSource source,
             const WkFitOptions& options, int dense_limit) {
  const SpectralData spectrum = exact_eigenpairs(h, dense_limit);
  const Eigen::Index dim = spectrum.eigenvalues.size();
  const double norm_h = std::max(std::abs(spectrum.eigenvalues(0)),
                                 std::abs(spectrum.eigenvalues(dim - 1)));
  const std::vector<double> grid =
      fit_time_grid(norm_h, options.grid_points, options.t_lo, options.t_hi);
  const StateVector psi = eigenstate(spectrum, k);

  std::vector<double> errors(grid.size(), 0.0);
  parallel_for(static_cast<std::int64_t>(grid.size()), 0, [&](std::int64_t i) {
    const double t = grid[static_cast<std::size_t>(i)];
    const RotationSchedule target = trotter_schedule(h, order, 1, t);
    double eps;
    if (source == FitSource::exact) {
      eps = trotter_error(spectrum, target, k, dense_limit);
    } else {
      const RotationSchedule reference =
          trotter_schedule(h, options.reference_order, 1, t);
      eps = std::abs(approx_phase_error(target, reference, psi)) / t;
    }
    errors[static_cast<std::size_t>(i)] = eps;
  });

  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (errors[i] <= kDegenerateErrorTol) {
      throw UnfittableError(
          "grid error " + std::to_string(errors[i]) + " at t = " +
          std::to_string(grid[i]) +
          " is below the floating-point floor; power-law fit refused");
    }
  }

  const std::size_t m = grid.size();
  std::vector<double> lt(m), le(m);
  for (std::size_t i = 0; i < m; ++i) {
    lt[i] = std::log(grid[i]);
    le[i] = std::log(errors[i]);
  }
  double mean_lt = 0.0, mean_le = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mean_lt += lt[i];
    mean_le += le[i];
  }
  mean_lt /= static_cast<double>(m);
  mean_le /= static_cast<double>(m);

  // fixed slope: log eps = log w + order * log t
  double log_w = 0.0;
  for (std::size_t i = 0; i < m; ++i) log_w += le[i] - order * lt[i];
  log_w /= static_cast<double>(m);

  double sxx = 0.0, sxy = 0.0, ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lt[i] - mean_lt) * (lt[i] - mean_lt);
    sxy += (lt[i] - mean_lt) * (le[i] - mean_le);
    const double resid = le[i] - (log_w + order * lt[i]);
    ss_res += resid * resid;
    ss_tot += (le[i] - mean_le) * (le[i] - mean_le);
  }

  WkFit fit;
  fit.w = std::exp(log_w);
  fit.exponent_check = sxy / sxx;
  fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 0.0;
  fit.t_grid = grid;
  fit.errors = errors;
  return fit;
}

}  // namespace trotter
