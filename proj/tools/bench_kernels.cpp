// Timing comparison of the OpenMP rotation kernel against the serial
// reference, plus the parallel basis-column unitary build. Run with
// OMP_NUM_THREADS set to taste.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "trotter/dynamics.hpp"
#include "trotter/hamiltonians.hpp"
#include "trotter/schedule.hpp"
#include "trotter/statevector.hpp"

using namespace trotter;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double bench_rotations(int n_qubits, int reps, bool parallel) {
  Rng rng(RngSeed{7, "bench"});
  std::vector<PauliString> paulis;
  for (int i = 0; i < 16; ++i) {
    paulis.emplace_back(n_qubits, rng.bits(n_qubits), rng.bits(n_qubits));
  }
  StateVector psi(n_qubits);
  std::vector<Complex> amps(psi.amplitudes().begin(), psi.amplitudes().end());

  const auto t0 = Clock::now();
  for (int r = 0; r < reps; ++r) {
    for (std::size_t i = 0; i < paulis.size(); ++i) {
      const double angle = 0.01 * static_cast<double>(i + 1);
      if (parallel) {
        kernels::apply_pauli_rotation(amps, n_qubits, paulis[i], angle);
      } else {
        kernels::apply_pauli_rotation_serial(amps, n_qubits, paulis[i], angle);
      }
    }
  }
  return seconds_since(t0);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif

  std::printf("\nrotation kernel, 16 rotations x reps\n");
  std::printf("%8s %6s %12s %12s %8s\n", "qubits", "reps", "serial[s]",
              "openmp[s]", "speedup");
  for (int n : {12, 14, 16, 18, 20}) {
    const int reps = n >= 18 ? 4 : 32;
    const double ts = bench_rotations(n, reps, false);
    const double tp = bench_rotations(n, reps, true);
    std::printf("%8d %6d %12.4f %12.4f %8.2fx\n", n, reps, ts, tp, ts / tp);
  }

  std::printf("\nbasis-column unitary build (order 2, one step)\n");
  std::printf("%8s %12s\n", "qubits", "build[s]");
  for (int n : {6, 8, 10}) {
    const PauliSum h =
        random_pauli_hamiltonian(n, static_cast<std::size_t>(n) * n,
                                 RngSeed{11, "bench/unitary"});
    const RotationSchedule sched = trotter_schedule(h, 2, 1, 0.1);
    const auto t0 = Clock::now();
    const Eigen::MatrixXcd u = schedule_unitary(sched);
    const double dt = seconds_since(t0);
    std::printf("%8d %12.4f   (|U00|=%.3f)\n", n, dt, std::abs(u(0, 0)));
  }
  return 0;
}
