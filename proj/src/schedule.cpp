#include "trotter/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace trotter {

RotationSchedule::RotationSchedule(int n_qubits,
                                   std::vector<PauliRotation> rotations,
                                   int order, int n_steps, double step_time,
                                   std::string ordering_tag)
    : n_qubits_(n_qubits),
      rotations_(std::move(rotations)),
      order_(order),
      n_steps_(n_steps),
      step_time_(step_time),
      ordering_tag_(std::move(ordering_tag)) {
  for (const auto& r : rotations_) {
    if (r.pauli.n_qubits() != n_qubits_) {
      throw std::invalid_argument("rotation width mismatch in schedule");
    }
  }
}

namespace {

void emit_step(const PauliSum& h, int order, double tau,
               std::vector<PauliRotation>& out) {
  if (order == 1) {
    for (const auto& t : h) out.push_back({t.pauli, t.coefficient * tau});
    return;
  }
  if (order == 2) {
    for (const auto& t : h) out.push_back({t.pauli, t.coefficient * tau / 2});
    for (auto it = h.terms().rbegin(); it != h.terms().rend(); ++it) {
      out.push_back({it->pauli, it->coefficient * tau / 2});
    }
    return;
  }
  const double a = 1.0 / (4.0 - std::pow(4.0, 1.0 / (order - 1)));
  emit_step(h, order - 2, a * tau, out);
  emit_step(h, order - 2, a * tau, out);
  emit_step(h, order - 2, (1.0 - 4.0 * a) * tau, out);
  emit_step(h, order - 2, a * tau, out);
  emit_step(h, order - 2, a * tau, out);
}

}  // namespace

RotationSchedule trotter_schedule(const PauliSum& h, int order, int n_steps,
                                  double t, bool merge_adjacent) {
  if (order < 1 || (order > 1 && order % 2 != 0)) {
    throw std::invalid_argument("product-formula order must be 1 or even, got " +
                                std::to_string(order));
  }
  if (n_steps < 1) {
    throw std::invalid_argument("n_steps must be positive");
  }
  const double tau = t / n_steps;
  std::vector<PauliRotation> rotations;
  std::size_t per_step = h.size();
  if (order >= 2) per_step *= 2;
  for (int p = order; p > 2; p -= 2) per_step *= 5;
  rotations.reserve(per_step * static_cast<std::size_t>(n_steps));
  for (int s = 0; s < n_steps; ++s) emit_step(h, order, tau, rotations);

  if (merge_adjacent) {
    std::vector<PauliRotation> merged;
    merged.reserve(rotations.size());
    for (const auto& r : rotations) {
      if (!merged.empty() && merged.back().pauli == r.pauli) {
        merged.back().angle += r.angle;
      } else {
        merged.push_back(r);
      }
    }
    rotations = std::move(merged);
  }

  return RotationSchedule(h.n_qubits(), std::move(rotations), order, n_steps,
                          tau, "stored-order");
}

StateVector apply_schedule(const RotationSchedule& schedule,
                           const StateVector& psi) {
  if (schedule.n_qubits() != psi.n_qubits()) {
    throw std::invalid_argument("schedule/state width mismatch");
  }
  std::vector<Complex> amps(psi.amplitudes().begin(), psi.amplitudes().end());
  for (const auto& r : schedule.rotations()) {
    kernels::apply_pauli_rotation(amps, schedule.n_qubits(), r.pauli, r.angle);
  }
  return StateVector::from_amplitudes(psi.n_qubits(), std::move(amps));
}

QueryCount query_count(int order, int n_steps, int n_terms) {
  if (order < 2 || order % 2 != 0) {
    throw std::invalid_argument("query counting requires an even order >= 2");
  }
  if (n_steps < 1 || n_terms < 0) {
    throw std::invalid_argument("invalid query_count arguments");
  }
  std::uint64_t q = static_cast<std::uint64_t>(n_steps);
  for (int p = order; p > 2; p -= 2) q *= 5;
  return {q, q * 2 * static_cast<std::uint64_t>(n_terms)};
}

}  // namespace trotter
