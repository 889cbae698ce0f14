#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trotter/pauli.hpp"
#include "trotter/statevector.hpp"

namespace trotter {

/// exp(-i * angle * pauli)
struct PauliRotation {
  PauliString pauli;
  double angle;
};

/// Ordered Pauli-rotation sequence realizing a product-formula unitary.
/// Entry 0 acts on the state first, so the realized operator is
/// R_{m-1} * ... * R_1 * R_0.
class RotationSchedule {
 public:
  RotationSchedule(int n_qubits, std::vector<PauliRotation> rotations,
                   int order, int n_steps, double step_time,
                   std::string ordering_tag);

  int n_qubits() const { return n_qubits_; }
  const std::vector<PauliRotation>& rotations() const { return rotations_; }
  std::size_t size() const { return rotations_.size(); }

  int order() const { return order_; }
  int n_steps() const { return n_steps_; }
  double step_time() const { return step_time_; }
  double total_time() const { return step_time_ * n_steps_; }
  const std::string& ordering_tag() const { return ordering_tag_; }

 private:
  int n_qubits_;
  std::vector<PauliRotation> rotations_;
  int order_;
  int n_steps_;
  double step_time_;
  std::string ordering_tag_;
};

/// Product-formula schedule for n_steps repetitions of an order-p step of
/// duration t / n_steps, in the operator's stored term order:
///   p = 1       exp(-i c_0 P_0 tau) ... exp(-i c_{L-1} P_{L-1} tau)
///   p = 2       half-angle forward pass followed by the reversed pass
///   p >= 4 even recursive five-fold composition of order p-2 with
///               a_p = (4 - 4^{1/(p-1)})^{-1}
/// The literal sequence is emitted; merge_adjacent folds consecutive equal
/// strings into one rotation (off by default so schedules stay auditable).
RotationSchedule trotter_schedule(const PauliSum& h, int order, int n_steps,
                                  double t, bool merge_adjacent = false);

/// Applies every rotation in order. Norm is preserved (each factor is
/// unitary).
StateVector apply_schedule(const RotationSchedule& schedule,
                           const StateVector& psi);

struct QueryCount {
  std::uint64_t queries;     // calls to the order-2 step: n_steps * 5^{p/2-1}
  std::uint64_t operations;  // Pauli-exponential count: queries * 2L
};

/// Cost of an order-p (even), S-step schedule over an L-term operator,
/// counted in queries to the second-order step.
QueryCount query_count(int order, int n_steps, int n_terms);

}  // namespace trotter
