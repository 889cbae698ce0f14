#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "trotter/pauli.hpp"

namespace trotter {

/// Pure statevector application is allowed well past the dense-matrix limit.
inline constexpr int kDefaultStateLimit = 20;

class StateVector {
 public:
  /// |00...0>
  explicit StateVector(int n_qubits);

  static StateVector basis_state(int n_qubits, std::uint64_t index);

  /// Takes ownership of the amplitudes. Throws unless the L2 norm is within
  /// 1e-9 of one, or normalize is set.
  static StateVector from_amplitudes(int n_qubits,
                                     std::vector<Complex> amplitudes,
                                     bool normalize = false);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_qubits_; }

  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> amplitudes() { return amplitudes_; }
  const Complex& operator[](std::uint64_t i) const { return amplitudes_[i]; }

  double norm() const;

  /// <this|other>
  Complex inner(const StateVector& other) const;

 private:
  StateVector(int n_qubits, std::vector<Complex> amplitudes)
      : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

  int n_qubits_;
  std::vector<Complex> amplitudes_;
};

namespace kernels {

/// In-place exp(-i * angle * P) on 2^n_qubits amplitudes. Pairs (j, j^x)
/// update independently; the loop parallelizes with OpenMP once the vector
/// is large enough to pay for it.
void apply_pauli_rotation(std::span<Complex> amplitudes, int n_qubits,
                          const PauliString& pauli, double angle);

/// Reference implementation: materializes P|psi> in a scratch buffer and
/// combines cos(angle)*psi - i*sin(angle)*P|psi>. Serial. Kept as the
/// oracle the production kernel is tested against.
void apply_pauli_rotation_serial(std::span<Complex> amplitudes, int n_qubits,
                                 const PauliString& pauli, double angle);

}  // namespace kernels

}  // namespace trotter
