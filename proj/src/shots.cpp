#include "trotter/shots.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "trotter/parallel.hpp"

namespace trotter {

namespace {

constexpr double kCi95 = 1.96;

ShotEstimate sample_part(double truth, std::int64_t n, Rng& rng) {
  const double p0 = (1.0 + truth) / 2.0;
  std::int64_t n0 = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (rng.bernoulli(p0)) ++n0;
  }
  const double est = 2.0 * static_cast<double>(n0) / static_cast<double>(n) - 1.0;
  const double var = std::max(0.0, 1.0 - est * est);
  const double se = std::sqrt(var / static_cast<double>(n));
  return {est, se, n, {est - kCi95 * se, est + kCi95 * se}};
}

}  // namespace

AmplitudePair hadamard_amplitude(const RotationSchedule& target,
                                 const RotationSchedule& reference,
                                 const StateVector& psi) {
  const StateVector ref_state = apply_schedule(reference, psi);
  const StateVector achieved = apply_schedule(target, psi);
  const Complex amp = ref_state.inner(achieved);
  return {amp.real(), amp.imag()};
}

std::pair<ShotEstimate, ShotEstimate> sample_amplitude(
    const AmplitudePair& truth, std::int64_t shots_per_part,
    const RngSeed& seed) {
  if (shots_per_part < 1) {
    throw std::invalid_argument("need at least one shot per part");
  }
  Rng rng_x(seed.derived("re"));
  Rng rng_y(seed.derived("im"));
  return {sample_part(truth.x, shots_per_part, rng_x),
          sample_part(truth.y, shots_per_part, rng_y)};
}

double propagate_phase_stderr(double x, double y, double dx, double dy) {
  const double r2 = x * x + y * y;
  return std::sqrt(y * y * dx * dx + x * x * dy * dy) / r2;
}

ShotEstimate estimate_phase_with_shots(const RotationSchedule& target,
                                       const RotationSchedule& reference,
                                       const StateVector& psi,
                                       std::int64_t shots,
                                       const RngSeed& seed) {
  if (shots < 2) throw std::invalid_argument("need at least 2 shots");
  const AmplitudePair truth = hadamard_amplitude(target, reference, psi);
  const auto [ex, ey] = sample_amplitude(truth, shots / 2, seed);
  const double r2 = ex.estimate * ex.estimate + ey.estimate * ey.estimate;
  if (r2 < 1e-8) {
    throw UndefinedPhaseError(
        "estimated amplitude modulus^2 " + std::to_string(r2) +
        " too small to define a phase uncertainty");
  }
  const double theta = std::atan2(ey.estimate, ex.estimate);
  const double se = propagate_phase_stderr(ex.estimate, ey.estimate,
                                           ex.stderr_, ey.stderr_);
  return {theta, se, shots, {theta - kCi95 * se, theta + kCi95 * se}};
}

StateVector random_state_with_fidelity(const StateVector& target, double f,
                                       const RngSeed& seed) {
  if (f < 0.0 || f > 1.0) {
    throw std::invalid_argument("fidelity must lie in [0, 1]");
  }
  const std::uint64_t dim = target.dim();
  if (f == 1.0) return target;

  Rng rng(seed);
  std::vector<Complex> perp(dim);
  double nrm = 0.0;
  // Gaussian draw projected onto the orthogonal complement; the projection
  // of an isotropic draw stays isotropic there.
  do {
    for (auto& a : perp) a = Complex{rng.gaussian(), rng.gaussian()};
    Complex overlap{0.0, 0.0};
    for (std::uint64_t i = 0; i < dim; ++i) {
      overlap += std::conj(target[i]) * perp[i];
    }
    nrm = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) {
      perp[i] -= overlap * target[i];
      nrm += std::norm(perp[i]);
    }
    nrm = std::sqrt(nrm);
  } while (nrm < 1e-12);

  const double a = std::sqrt(f);
  const double b = std::sqrt(1.0 - f) / nrm;
  std::vector<Complex> amps(dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    amps[i] = a * target[i] + b * perp[i];
  }
  return StateVector::from_amplitudes(target.n_qubits(), std::move(amps));
}

std::vector<FidelityPoint> fidelity_sweep(const SpectralData& spectrum,
                                          const RotationSchedule& schedule,
                                          Eigen::Index k,
                                          std::span<const double> f_grid,
                                          int states_per_point,
                                          const RngSeed& seed) {
  if (states_per_point < 2) {
    throw std::invalid_argument("need at least 2 states per grid point");
  }
  const StateVector target = eigenstate(spectrum, k);
  std::vector<FidelityPoint> table(f_grid.size());

  const std::int64_t total =
      static_cast<std::int64_t>(f_grid.size()) * states_per_point;
  std::vector<double> thetas(static_cast<std::size_t>(total), 0.0);
  parallel_for(total, 0, [&](std::int64_t task) {
    const std::size_t fi = static_cast<std::size_t>(task / states_per_point);
    const int rep = static_cast<int>(task % states_per_point);
    const StateVector psi = random_state_with_fidelity(
        target, f_grid[fi],
        seed.derived("f" + std::to_string(fi) + "/r" + std::to_string(rep)));
    thetas[static_cast<std::size_t>(task)] = phase_error(spectrum, schedule, psi);
  });

  for (std::size_t fi = 0; fi < f_grid.size(); ++fi) {
    const double* block = thetas.data() + fi * static_cast<std::size_t>(states_per_point);
    bool all_equal = true;
    for (int r = 1; r < states_per_point; ++r) {
      all_equal = all_equal && block[r] == block[0];
    }
    if (all_equal) {  // f = 1 duplicates the target state exactly
      table[fi] = {f_grid[fi], block[0], block[0], block[0]};
      continue;
    }
    double mean = 0.0;
    for (int r = 0; r < states_per_point; ++r) mean += block[r];
    mean /= states_per_point;
    double var = 0.0;
    for (int r = 0; r < states_per_point; ++r) {
      var += (block[r] - mean) * (block[r] - mean);
    }
    var /= (states_per_point - 1);
    const double half = kCi95 * std::sqrt(var / states_per_point);
    table[fi] = {f_grid[fi], mean, mean - half, mean + half};
  }
  return table;
}

std::vector<FidelityPoint> fidelity_sweep(const PauliSum& h,
                                          const RotationSchedule& schedule,
                                          Eigen::Index k,
                                          std::span<const double> f_grid,
                                          int states_per_point,
                                          const RngSeed& seed,
                                          int dense_limit) {
  return fidelity_sweep(exact_eigenpairs(h, dense_limit), schedule, k, f_grid,
                        states_per_point, seed);
}

}  // namespace trotter
