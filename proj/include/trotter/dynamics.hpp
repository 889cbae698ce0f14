#pragma once

#include <Eigen/Dense>

#include "trotter/pauli.hpp"
#include "trotter/schedule.hpp"
#include "trotter/statevector.hpp"

namespace trotter {

/// Exact eigenpairs of a Hermitian operator; eigenvalues ascending, index 0
/// is the ground state, eigenvectors are orthonormal columns.
struct SpectralData {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;

  int n_qubits() const;
};

SpectralData exact_eigenpairs(const PauliSum& h,
                              int dense_limit = kDefaultDenseLimit);

/// sum_k exp(-i lambda_k t) <lambda_k|psi> |lambda_k>
StateVector exact_evolve(const SpectralData& spectrum, double t,
                         const StateVector& psi);

/// Dense V exp(-i Lambda t) V^dagger.
Eigen::MatrixXcd evolution_matrix(const SpectralData& spectrum, double t);

/// Dense unitary of a rotation schedule, built by applying the schedule to
/// each computational basis state. Columns are independent and build in
/// parallel.
Eigen::MatrixXcd schedule_unitary(const RotationSchedule& schedule,
                                  int dense_limit = kDefaultDenseLimit);

/// Eigenpairs of the Hermitian generator behind a unitary U = exp(-i H' t):
/// eigenvalue j is -arg(mu_j)/t with the principal branch, so every value
/// lies in (-pi/t, pi/t]. Sorted ascending.
struct EffectiveSpectrum {
  double evolution_time;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
};

/// Decomposes a unitary via a complex Schur factorization (orthonormal
/// basis even across degenerate phases). Throws when u deviates from
/// unitarity by more than 1e-8 or t <= 0.
EffectiveSpectrum effective_spectrum(const Eigen::MatrixXcd& u, double t);

struct EigenpairMatch {
  Eigen::Index index;
  double overlap_sq;
};

/// Index of the effective eigenvector with the largest squared overlap
/// against the target; ties resolve to the lowest index.
EigenpairMatch match_eigenpair(const Eigen::VectorXcd& target,
                               const EffectiveSpectrum& spectrum);
EigenpairMatch match_eigenpair(const StateVector& target,
                               const EffectiveSpectrum& spectrum);

/// View of a spectral eigenvector as a state.
StateVector eigenstate(const SpectralData& spectrum, Eigen::Index k);

}  // namespace trotter
