#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "oracles.hpp"
#include "trotter/dynamics.hpp"
#include "trotter/hamiltonians.hpp"

using namespace trotter;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

PauliSum xz_hamiltonian() {
  PauliSum h(1);
  h.add_term(1.0, PauliString::from_string("X"));
  h.add_term(1.0, PauliString::from_string("Z"));
  return h;
}

PauliSum commuting_hamiltonian() {
  PauliSum h(2);
  h.add_term(0.7, PauliString::from_string("ZI"));
  h.add_term(-0.4, PauliString::from_string("ZZ"));
  return h;
}

StateVector random_state(int n, Rng& rng) {
  std::vector<Complex> amps(std::size_t{1} << n);
  for (auto& a : amps) a = Complex{rng.gaussian(), rng.gaussian()};
  return StateVector::from_amplitudes(n, std::move(amps), true);
}

double max_state_diff(const StateVector& a, const StateVector& b) {
  double d = 0.0;
  for (std::uint64_t i = 0; i < a.dim(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

}  // namespace

TEST_CASE("eigenpairs of pinned operators") {
  PauliSum z(1);
  z.add_term(1.0, PauliString::from_string("Z"));
  const SpectralData sz = exact_eigenpairs(z);
  CHECK(sz.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(sz.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));

  const SpectralData sxz = exact_eigenpairs(xz_hamiltonian());
  CHECK(sxz.eigenvalues(0) ==
        doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(sxz.eigenvalues(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("eigendecomposition reconstructs and is orthonormal") {
  const PauliSum h = random_pauli_hamiltonian(4, 16, RngSeed{21, "dyn"});
  const SpectralData s = exact_eigenpairs(h);
  const Eigen::MatrixXcd hd = to_dense_matrix(h);
  const Eigen::MatrixXcd rebuilt = s.eigenvectors *
                                   s.eigenvalues.asDiagonal() *
                                   s.eigenvectors.adjoint();
  CHECK(max_abs(hd - rebuilt) < 1e-9);
  const Eigen::Index dim = s.eigenvalues.size();
  CHECK(max_abs(s.eigenvectors.adjoint() * s.eigenvectors -
                Eigen::MatrixXcd::Identity(dim, dim)) < 1e-10);
  for (Eigen::Index k = 1; k < dim; ++k) {
    CHECK(s.eigenvalues(k) >= s.eigenvalues(k - 1));
  }
}

TEST_CASE("exact evolution of an eigenstate is a phase") {
  PauliSum z(1);
  z.add_term(1.0, PauliString::from_string("Z"));
  const SpectralData s = exact_eigenpairs(z);
  const StateVector psi0 = StateVector::basis_state(1, 0);
  const StateVector evolved = exact_evolve(s, 0.37, psi0);
  CHECK(std::abs(evolved[0] - std::polar(1.0, -0.37)) < 1e-12);
  CHECK(std::abs(evolved[1]) < 1e-14);
}

TEST_CASE("exact evolution: identity at t=0 and the group property") {
  const PauliSum h = random_pauli_hamiltonian(3, 9, RngSeed{22, "dyn"});
  const SpectralData s = exact_eigenpairs(h);
  Rng rng(RngSeed{23, "dyn/state"});
  const StateVector psi = random_state(3, rng);

  CHECK(max_state_diff(exact_evolve(s, 0.0, psi), psi) < 1e-12);

  const StateVector once = exact_evolve(s, 0.8, psi);
  const StateVector twice = exact_evolve(s, 0.4, exact_evolve(s, 0.4, psi));
  CHECK(max_state_diff(once, twice) < 1e-10);
  CHECK(std::abs(once.norm() - 1.0) < 1e-10);
}

TEST_CASE("first- and second-order schedules have the literal shape") {
  const PauliSum h = xz_hamiltonian();
  const double t = 0.3;

  const RotationSchedule s1 = trotter_schedule(h, 1, 1, t);
  REQUIRE(s1.size() == 2);
  CHECK(s1.rotations()[0].pauli.str() == "X");
  CHECK(s1.rotations()[0].angle == doctest::Approx(t));
  CHECK(s1.rotations()[1].pauli.str() == "Z");
  CHECK(s1.rotations()[1].angle == doctest::Approx(t));

  const RotationSchedule s2 = trotter_schedule(h, 2, 1, t);
  REQUIRE(s2.size() == 4);
  const char* expected[] = {"X", "Z", "Z", "X"};
  for (int i = 0; i < 4; ++i) {
    CHECK(s2.rotations()[static_cast<std::size_t>(i)].pauli.str() ==
          expected[i]);
    CHECK(s2.rotations()[static_cast<std::size_t>(i)].angle ==
          doctest::Approx(t / 2));
  }

  CHECK_THROWS_AS(trotter_schedule(h, 3, 1, t), std::invalid_argument);
  CHECK_THROWS_AS(trotter_schedule(h, 2, 0, t), std::invalid_argument);
}

TEST_CASE("fourth order splits into five second-order blocks") {
  const PauliSum h = xz_hamiltonian();
  const double t = 0.5;
  const RotationSchedule s4 = trotter_schedule(h, 4, 1, t);
  const std::size_t block = 2 * h.size();  // rotations per order-2 block
  REQUIRE(s4.size() == 5 * block);

  const double a4 = 1.0 / (4.0 - std::pow(4.0, 1.0 / 3.0));
  CHECK(a4 == doctest::Approx(0.4144915).epsilon(1e-6));
  const double block_times[] = {a4 * t, a4 * t, (1.0 - 4.0 * a4) * t, a4 * t,
                                a4 * t};
  for (int b = 0; b < 5; ++b) {
    // X angles within one block sum to the block's step time (coeff 1)
    double x_angle = 0.0;
    for (std::size_t i = 0; i < block; ++i) {
      const auto& r = s4.rotations()[static_cast<std::size_t>(b) * block + i];
      if (r.pauli.str() == "X") x_angle += r.angle;
    }
    CHECK(x_angle == doctest::Approx(block_times[b]).epsilon(1e-12));
  }
}

TEST_CASE("even-order schedules are palindromes, any step count") {
  const PauliSum h = random_pauli_hamiltonian(3, 9, RngSeed{24, "dyn"});
  for (int p : {2, 4, 6}) {
    for (int steps : {1, 2}) {
      const RotationSchedule s = trotter_schedule(h, p, steps, 0.7);
      const auto& r = s.rotations();
      for (std::size_t i = 0; i < r.size() / 2; ++i) {
        CHECK(r[i].pauli == r[r.size() - 1 - i].pauli);
        CHECK(r[i].angle ==
              doctest::Approx(r[r.size() - 1 - i].angle).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("total signed angle per string equals coefficient times time") {
  PauliSum h(2);
  h.add_term(0.8, PauliString::from_string("XY"));
  h.add_term(-1.3, PauliString::from_string("ZI"));
  h.add_term(0.4, PauliString::from_string("IZ"));
  const double t = 0.9;
  for (int p : {1, 2, 4, 6}) {
    for (int steps : {1, 3}) {
      const RotationSchedule s = trotter_schedule(h, p, steps, t);
      std::map<std::string, double> totals;
      for (const auto& r : s.rotations()) totals[r.pauli.str()] += r.angle;
      for (const auto& term : h) {
        CHECK(totals[term.pauli.str()] ==
              doctest::Approx(term.coefficient * t).epsilon(1e-12));
      }
      CHECK(s.total_time() == doctest::Approx(t).epsilon(1e-14));
    }
  }
}

TEST_CASE("adjacent-rotation merging folds the second-order midpoint") {
  const PauliSum h = xz_hamiltonian();
  const RotationSchedule merged = trotter_schedule(h, 2, 1, 0.3, true);
  REQUIRE(merged.size() == 3);  // X, merged Z, X
  CHECK(merged.rotations()[1].pauli.str() == "Z");
  CHECK(merged.rotations()[1].angle == doctest::Approx(0.3));
}

TEST_CASE("apply_schedule basics") {
  PauliSum z(1);
  z.add_term(1.0, PauliString::from_string("Z"));
  const StateVector psi0 = StateVector::basis_state(1, 0);

  const RotationSchedule empty(1, {}, 1, 1, 0.0, "custom");
  CHECK(max_state_diff(apply_schedule(empty, psi0), psi0) == 0.0);

  const RotationSchedule zrot(
      1, {{PauliString::from_string("Z"), 0.41}}, 1, 1, 0.41, "custom");
  const StateVector out = apply_schedule(zrot, psi0);
  CHECK(std::abs(out[0] - std::polar(1.0, -0.41)) < 1e-12);
}

TEST_CASE("apply_schedule matches the dense matrix-product oracle") {
  Rng rng(RngSeed{25, "dyn/apply"});
  const PauliSum h = random_pauli_hamiltonian(4, 16, RngSeed{25, "h"});
  const RotationSchedule s = trotter_schedule(h, 2, 2, 0.6);
  const Eigen::MatrixXcd u = oracle::schedule_product(s);
  for (int rep = 0; rep < 5; ++rep) {
    const StateVector psi = random_state(4, rng);
    Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), 16);
    const Eigen::VectorXcd expected = u * v;
    const StateVector got = apply_schedule(s, psi);
    for (int i = 0; i < 16; ++i) {
      CHECK(std::abs(got[static_cast<std::uint64_t>(i)] - expected(i)) <
            1e-10);
    }
  }
}

TEST_CASE("production kernel equals the serial reference") {
  Rng rng(RngSeed{26, "dyn/kern"});
  for (int n : {1, 3, 6, 10}) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<Complex> a(dim), b;
    for (auto& x : a) x = Complex{rng.gaussian(), rng.gaussian()};
    b = a;
    for (int rep = 0; rep < 8; ++rep) {
      const PauliString p = oracle::random_pauli(n, rng);
      const double angle = rng.gaussian();
      kernels::apply_pauli_rotation(a, n, p, angle);
      kernels::apply_pauli_rotation_serial(b, n, p, angle);
    }
    double diff = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) {
      diff = std::max(diff, std::abs(a[i] - b[i]));
    }
    CHECK(diff < 1e-13);
  }
}

TEST_CASE("schedule unitary: commuting terms make the formula exact") {
  const PauliSum h = commuting_hamiltonian();
  const SpectralData s = exact_eigenpairs(h);
  const double t = 0.8;
  for (int p : {1, 2, 4}) {
    const Eigen::MatrixXcd u = schedule_unitary(trotter_schedule(h, p, 1, t));
    CHECK(max_abs(u - evolution_matrix(s, t)) < 1e-10);
  }
}

TEST_CASE("schedule unitary closed form for the two-term system") {
  const PauliSum h = xz_hamiltonian();
  const double t = 0.3;
  const Eigen::MatrixXcd u = schedule_unitary(trotter_schedule(h, 2, 1, t));
  Eigen::MatrixXcd expected =
      std::cos(t) * std::cos(t) * Eigen::MatrixXcd::Identity(2, 2) -
      Complex(0, 1) * std::sin(t) * std::cos(t) *
          oracle::dense(PauliString::from_string("X")) -
      Complex(0, 1) * std::sin(t) *
          oracle::dense(PauliString::from_string("Z"));
  CHECK(max_abs(u - expected) < 1e-12);

  const Eigen::MatrixXcd u0 = schedule_unitary(trotter_schedule(h, 2, 1, 0.0));
  CHECK(max_abs(u0 - Eigen::MatrixXcd::Identity(2, 2)) < 1e-14);
}

TEST_CASE("schedule unitary is unitary") {
  const PauliSum h = random_pauli_hamiltonian(5, 25, RngSeed{27, "dyn"});
  const Eigen::MatrixXcd u = schedule_unitary(trotter_schedule(h, 2, 1, 0.2));
  CHECK(max_abs(u.adjoint() * u - Eigen::MatrixXcd::Identity(32, 32)) < 1e-9);
}

TEST_CASE("effective spectrum of an exact evolution recovers eigenvalues") {
  PauliSum z(1);
  z.add_term(1.0, PauliString::from_string("Z"));
  const SpectralData s = exact_eigenpairs(z);
  const EffectiveSpectrum eff = effective_spectrum(evolution_matrix(s, 0.3), 0.3);
  CHECK(eff.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(eff.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("effective eigenvalues of the two-term system match the closed form") {
  const PauliSum h = xz_hamiltonian();
  const double t = 0.3;
  const Eigen::MatrixXcd u = schedule_unitary(trotter_schedule(h, 2, 1, t));
  const EffectiveSpectrum eff = effective_spectrum(u, t);
  const double expected = std::acos(std::cos(t) * std::cos(t)) / t;
  CHECK(std::abs(eff.eigenvalues(0)) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::abs(eff.eigenvalues(1)) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("effective eigenvalues stay on the principal branch") {
  const PauliSum h = random_pauli_hamiltonian(4, 16, RngSeed{28, "dyn"});
  const double t = default_time(h, 2.0);
  const Eigen::MatrixXcd u = schedule_unitary(trotter_schedule(h, 2, 1, t));
  const EffectiveSpectrum eff = effective_spectrum(u, t);
  for (Eigen::Index j = 0; j < eff.eigenvalues.size(); ++j) {
    CHECK(eff.eigenvalues(j) > -kPi / t);
    CHECK(eff.eigenvalues(j) <= kPi / t);
  }
  // orthonormal basis even with clustered phases
  CHECK(max_abs(eff.eigenvectors.adjoint() * eff.eigenvectors -
                Eigen::MatrixXcd::Identity(16, 16)) < 1e-9);
}

TEST_CASE("effective_spectrum rejects non-unitary input") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
  m(0, 0) = 1.5;
  CHECK_THROWS_AS(effective_spectrum(m, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(effective_spectrum(Eigen::MatrixXcd::Identity(2, 2), 0.0),
                  std::invalid_argument);
}

TEST_CASE("eigenpair matching") {
  const PauliSum h = commuting_hamiltonian();
  const SpectralData s = exact_eigenpairs(h);
  const double t = 0.4;
  const EffectiveSpectrum eff =
      effective_spectrum(schedule_unitary(trotter_schedule(h, 2, 1, t)), t);
  for (Eigen::Index k = 0; k < 4; ++k) {
    const EigenpairMatch m = match_eigenpair(eigenstate(s, k), eff);
    CHECK(m.overlap_sq == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(eff.eigenvalues(m.index) ==
          doctest::Approx(s.eigenvalues(k)).epsilon(1e-9));
  }

  const PauliSum hxz = xz_hamiltonian();
  const SpectralData sxz = exact_eigenpairs(hxz);
  const EffectiveSpectrum effxz = effective_spectrum(
      schedule_unitary(trotter_schedule(hxz, 2, 1, 0.1)), 0.1);
  CHECK(match_eigenpair(eigenstate(sxz, 0), effxz).overlap_sq > 0.999);
}

TEST_CASE("overlap ties resolve to the lowest index") {
  EffectiveSpectrum eff;
  eff.evolution_time = 1.0;
  eff.eigenvalues = Eigen::VectorXd::Zero(2);
  eff.eigenvectors.resize(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  eff.eigenvectors << r, r, r, -r;
  Eigen::VectorXcd target(2);
  target << 1.0, 0.0;  // overlap 1/2 with both columns
  CHECK(match_eigenpair(target, eff).index == 0);
}

TEST_CASE("query counting") {
  CHECK(query_count(2, 1, 10).queries == 1);
  CHECK(query_count(4, 1, 10).queries == 5);
  CHECK(query_count(6, 1, 10).queries == 25);
  CHECK(query_count(2, 3, 10).queries == 3);
  CHECK(query_count(2, 1, 10).operations == 20);
  CHECK(query_count(4, 2, 7).operations == 10 * 14);
  CHECK_THROWS_AS(query_count(3, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(query_count(1, 1, 10), std::invalid_argument);
}

TEST_CASE("apply_schedule agrees with the built unitary on random states") {
  Rng rng(RngSeed{29, "dyn/agree"});
  for (int n : {2, 4, 6}) {
    const PauliSum h = random_pauli_hamiltonian(
        n, static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
        RngSeed{static_cast<std::uint64_t>(30 + n), "dyn"});
    const RotationSchedule s = trotter_schedule(h, 2, 1, 0.15);
    const Eigen::MatrixXcd u = schedule_unitary(s);
    const StateVector psi = random_state(n, rng);
    Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(),
                                         Eigen::Index{1} << n);
    const Eigen::VectorXcd expected = u * v;
    const StateVector got = apply_schedule(s, psi);
    for (Eigen::Index i = 0; i < expected.size(); ++i) {
      CHECK(std::abs(got[static_cast<std::uint64_t>(i)] - expected(i)) < 1e-9);
    }
  }
}
