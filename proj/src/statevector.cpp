#include "trotter/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace trotter {

StateVector::StateVector(int n_qubits)
    : n_qubits_(n_qubits),
      amplitudes_(std::uint64_t{1} << n_qubits, Complex{0.0, 0.0}) {
  if (n_qubits < 1 || n_qubits > kDefaultStateLimit + 8) {
    throw std::invalid_argument("unsupported statevector width " +
                                std::to_string(n_qubits));
  }
  amplitudes_[0] = 1.0;
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  StateVector sv(n_qubits);
  if (index >= sv.dim()) {
    throw std::invalid_argument("basis index out of range");
  }
  sv.amplitudes_[0] = 0.0;
  sv.amplitudes_[index] = 1.0;
  return sv;
}

StateVector StateVector::from_amplitudes(int n_qubits,
                                         std::vector<Complex> amplitudes,
                                         bool normalize) {
  if (amplitudes.size() != (std::uint64_t{1} << n_qubits)) {
    throw std::invalid_argument("amplitude count does not match width");
  }
  double nrm = 0.0;
  for (const auto& a : amplitudes) nrm += std::norm(a);
  nrm = std::sqrt(nrm);
  if (normalize) {
    if (nrm < 1e-300) throw std::invalid_argument("cannot normalize zero state");
    for (auto& a : amplitudes) a /= nrm;
  } else if (std::abs(nrm - 1.0) > 1e-9) {
    throw std::invalid_argument("state is not normalized");
  }
  return StateVector(n_qubits, std::move(amplitudes));
}

double StateVector::norm() const {
  double nrm = 0.0;
  for (const auto& a : amplitudes_) nrm += std::norm(a);
  return std::sqrt(nrm);
}

Complex StateVector::inner(const StateVector& other) const {
  if (n_qubits_ != other.n_qubits_) {
    throw std::invalid_argument("statevector width mismatch");
  }
  Complex acc{0.0, 0.0};
  for (std::uint64_t i = 0; i < dim(); ++i) {
    acc += std::conj(amplitudes_[i]) * other.amplitudes_[i];
  }
  return acc;
}

namespace kernels {

namespace {

// OpenMP pays off only for reasonably long vectors.
constexpr std::uint64_t kParallelThreshold = std::uint64_t{1} << 14;

constexpr Complex kQuarterPhases[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

void check(std::span<Complex> amplitudes, int n_qubits,
           const PauliString& pauli) {
  if (pauli.n_qubits() != n_qubits) {
    throw std::invalid_argument("rotation width mismatch");
  }
  if (amplitudes.size() != (std::uint64_t{1} << n_qubits)) {
    throw std::invalid_argument("amplitude count does not match width");
  }
}

}  // namespace

void apply_pauli_rotation(std::span<Complex> amplitudes, int n_qubits,
                          const PauliString& pauli, double angle) {
  check(amplitudes, n_qubits, pauli);
  const std::uint64_t dim = amplitudes.size();
  const std::uint64_t x = pauli.x_bits();
  const std::uint64_t z = pauli.z_bits();
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Complex* a = amplitudes.data();

  if (x == 0) {
    // diagonal action: amplitude j picks up exp(-i*angle*(-1)^{|z&j|})
    const Complex e_minus{c, -s};
    const Complex e_plus{c, s};
#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(dim); ++j) {
      a[j] *= (std::popcount(z & static_cast<std::uint64_t>(j)) & 1) ? e_plus
                                                                     : e_minus;
    }
    return;
  }

  // P|b> = phase(b) |b^x| with phase(b) = i^{|x&z|} (-1)^{|z&b|}
  const Complex base = kQuarterPhases[std::popcount(x & z) & 3];
  const Complex mis{s * base.imag(), -s * base.real()};  // -i*s*base
  const std::uint64_t pivot = x & (~x + 1);
  const std::uint64_t low = pivot - 1;
  const std::uint64_t pairs = dim >> 1;

#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
  for (std::int64_t p = 0; p < static_cast<std::int64_t>(pairs); ++p) {
    const std::uint64_t pi = static_cast<std::uint64_t>(p);
    const std::uint64_t j = ((pi & ~low) << 1) | (pi & low);  // pivot bit clear
    const std::uint64_t k = j ^ x;
    const double sign_j = (std::popcount(z & j) & 1) ? -1.0 : 1.0;
    const double sign_k = (std::popcount(z & k) & 1) ? -1.0 : 1.0;
    const Complex aj = a[j];
    const Complex ak = a[k];
    a[j] = c * aj + mis * (sign_k * ak);
    a[k] = c * ak + mis * (sign_j * aj);
  }
}

void apply_pauli_rotation_serial(std::span<Complex> amplitudes, int n_qubits,
                                 const PauliString& pauli, double angle) {
  check(amplitudes, n_qubits, pauli);
  const std::uint64_t dim = amplitudes.size();
  const std::uint64_t x = pauli.x_bits();
  const std::uint64_t z = pauli.z_bits();
  const Complex base = kQuarterPhases[std::popcount(x & z) & 3];
  const double c = std::cos(angle);
  const Complex mis = Complex{0.0, -1.0} * std::sin(angle);

  std::vector<Complex> pw(dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(z & b) & 1) ? -1.0 : 1.0;
    pw[b ^ x] = base * sign * amplitudes[b];
  }
  for (std::uint64_t j = 0; j < dim; ++j) {
    amplitudes[j] = c * amplitudes[j] + mis * pw[j];
  }
}

}  // namespace kernels

}  // namespace trotter
