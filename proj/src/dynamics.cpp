#include "trotter/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "trotter/parallel.hpp"

namespace trotter {

int SpectralData::n_qubits() const {
  int n = 0;
  while ((Eigen::Index{1} << n) < eigenvalues.size()) ++n;
  return n;
}

SpectralData exact_eigenpairs(const PauliSum& h, int dense_limit) {
  const Eigen::MatrixXcd m = to_dense_matrix(h, dense_limit);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

StateVector exact_evolve(const SpectralData& spectrum, double t,
                         const StateVector& psi) {
  const Eigen::Index dim = spectrum.eigenvalues.size();
  if (static_cast<std::uint64_t>(dim) != psi.dim()) {
    throw std::invalid_argument("spectrum/state dimension mismatch");
  }
  Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), dim);
  Eigen::VectorXcd coeffs = spectrum.eigenvectors.adjoint() * v;
  for (Eigen::Index k = 0; k < dim; ++k) {
    coeffs(k) *= std::polar(1.0, -spectrum.eigenvalues(k) * t);
  }
  Eigen::VectorXcd out = spectrum.eigenvectors * coeffs;
  return StateVector::from_amplitudes(
      psi.n_qubits(), std::vector<Complex>(out.data(), out.data() + dim));
}

Eigen::MatrixXcd evolution_matrix(const SpectralData& spectrum, double t) {
  const Eigen::Index dim = spectrum.eigenvalues.size();
  Eigen::VectorXcd phases(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    phases(k) = std::polar(1.0, -spectrum.eigenvalues(k) * t);
  }
  return spectrum.eigenvectors * phases.asDiagonal() *
         spectrum.eigenvectors.adjoint();
}

Eigen::MatrixXcd schedule_unitary(const RotationSchedule& schedule,
                                  int dense_limit) {
  const int n = schedule.n_qubits();
  if (n > dense_limit) {
    throw std::invalid_argument("schedule unitary for " + std::to_string(n) +
                                " qubits exceeds limit " +
                                std::to_string(dense_limit));
  }
  const std::int64_t dim = std::int64_t{1} << n;
  Eigen::MatrixXcd u(dim, dim);
  parallel_for(dim, 0, [&](std::int64_t col) {
    std::vector<Complex> v(static_cast<std::size_t>(dim), Complex{0.0, 0.0});
    v[static_cast<std::size_t>(col)] = 1.0;
    for (const auto& r : schedule.rotations()) {
      kernels::apply_pauli_rotation(v, n, r.pauli, r.angle);
    }
    for (std::int64_t row = 0; row < dim; ++row) {
      u(row, col) = v[static_cast<std::size_t>(row)];
    }
  });
  return u;
}

EffectiveSpectrum effective_spectrum(const Eigen::MatrixXcd& u, double t) {
  if (t <= 0.0) {
    throw std::invalid_argument("evolution time must be positive");
  }
  const Eigen::Index dim = u.rows();
  if (u.cols() != dim) throw std::invalid_argument("matrix is not square");
  const double defect =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim))
          .cwiseAbs()
          .maxCoeff();
  if (defect > 1e-8) {
    throw std::invalid_argument("matrix is not unitary (defect " +
                                std::to_string(defect) + ")");
  }

  // For a unitary input the Schur form is diagonal, so the Schur basis is an
  // orthonormal eigenbasis; plain eigenvector routines lose orthogonality in
  // degenerate phase clusters.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u, /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    throw std::runtime_error("Schur decomposition failed");
  }

  constexpr double pi = std::numbers::pi;
  Eigen::VectorXd values(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    double lam = -std::arg(schur.matrixT()(j, j)) / t;
    if (lam <= -pi / t) lam += 2.0 * pi / t;  // keep the (-pi/t, pi/t] branch
    values(j) = lam;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return values(a) < values(b);
                   });

  EffectiveSpectrum out;
  out.evolution_time = t;
  out.eigenvalues.resize(dim);
  out.eigenvectors.resize(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    out.eigenvalues(j) = values(order[static_cast<std::size_t>(j)]);
    out.eigenvectors.col(j) = schur.matrixU().col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

EigenpairMatch match_eigenpair(const Eigen::VectorXcd& target,
                               const EffectiveSpectrum& spectrum) {
  if (target.size() != spectrum.eigenvectors.rows()) {
    throw std::invalid_argument("target dimension mismatch");
  }
  const Eigen::VectorXd overlaps =
      (spectrum.eigenvectors.adjoint() * target).cwiseAbs2();
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < overlaps.size(); ++j) {
    if (overlaps(j) > overlaps(best)) best = j;  // strict: ties keep lowest
  }
  return {best, overlaps(best)};
}

EigenpairMatch match_eigenpair(const StateVector& target,
                               const EffectiveSpectrum& spectrum) {
  Eigen::Map<const Eigen::VectorXcd> v(target.amplitudes().data(),
                                       static_cast<Eigen::Index>(target.dim()));
  return match_eigenpair(Eigen::VectorXcd(v), spectrum);
}

StateVector eigenstate(const SpectralData& spectrum, Eigen::Index k) {
  const Eigen::Index dim = spectrum.eigenvalues.size();
  if (k < 0 || k >= dim) throw std::invalid_argument("eigenindex out of range");
  std::vector<Complex> amps(spectrum.eigenvectors.col(k).data(),
                            spectrum.eigenvectors.col(k).data() + dim);
  return StateVector::from_amplitudes(spectrum.n_qubits(), std::move(amps));
}

}  // namespace trotter
