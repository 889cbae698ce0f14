#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "trotter/hamiltonians.hpp"

using namespace trotter;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "trotter_ham_tests";
  fs::create_directories(dir);
  return dir / name;
}

// Independent route to ||H||: power iteration on H^2 (H is Hermitian, so
// ||H|| = sqrt(lambda_max(H^2))).
double power_iteration_norm(const Eigen::MatrixXcd& h) {
  const Eigen::MatrixXcd h2 = h * h;
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(h.rows());
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 4000; ++it) {
    v = h2 * v;
    lambda = v.norm();
    v /= lambda;
  }
  return std::sqrt(lambda);
}

}  // namespace

TEST_CASE("random operator defaults to n^2 terms") {
  const PauliSum h = random_pauli_hamiltonian(3, 0, RngSeed{5, "h"});
  CHECK(h.size() == 9);
  CHECK(h.n_qubits() == 3);
  for (const auto& t : h) CHECK(t.coefficient == 1.0);
}

TEST_CASE("exhausting the one-qubit set yields {I, X, Y, Z}") {
  for (std::uint64_t seed : {1ULL, 77ULL, 2024ULL}) {
    const PauliSum h = random_pauli_hamiltonian(1, 4, RngSeed{seed, "h1"});
    std::set<std::string> seen;
    for (const auto& t : h) seen.insert(t.pauli.str());
    CHECK(seen == std::set<std::string>{"I", "X", "Y", "Z"});
  }
  CHECK_THROWS_AS(random_pauli_hamiltonian(1, 5, RngSeed{1, "h"}),
                  std::invalid_argument);
}

TEST_CASE("sampling is deterministic per seed and duplicate-free") {
  const RngSeed seed{99, "det"};
  const PauliSum a = random_pauli_hamiltonian(4, 16, seed);
  const PauliSum b = random_pauli_hamiltonian(4, 16, seed);
  REQUIRE(a.size() == b.size());
  std::set<std::string> seen;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.term(i).pauli == b.term(i).pauli);
    seen.insert(a.term(i).pauli.str());
  }
  CHECK(seen.size() == 16);

  const PauliSum c = random_pauli_hamiltonian(4, 16, RngSeed{100, "det"});
  bool all_equal = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    all_equal = all_equal && c.term(i).pauli == a.term(i).pauli;
  }
  CHECK(!all_equal);
}

TEST_CASE("file round-trip is bit-exact") {
  PauliSum h(2);
  h.add_term(1.0, PauliString::from_string("XI"));
  h.add_term(-0.12345678901234567, PauliString::from_string("ZY"));
  h.add_term(1.0 / 3.0, PauliString::from_string("IY"));
  HamiltonianFile file{h, {{"molecule", "test"}, {"basis", "sto-3g"}}};

  const fs::path path = temp_file("roundtrip.json");
  save_hamiltonian(file, path);
  const HamiltonianFile loaded = load_hamiltonian(path);

  REQUIRE(loaded.hamiltonian.size() == h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    CHECK(loaded.hamiltonian.term(i).pauli == h.term(i).pauli);
    CHECK(loaded.hamiltonian.term(i).coefficient == h.term(i).coefficient);
  }
  CHECK(loaded.metadata.at("molecule") == "test");

  // canonical serialization is byte-stable
  CHECK(serialize_hamiltonian(loaded) == serialize_hamiltonian(file));
}

TEST_CASE("simple file parses") {
  const HamiltonianFile f = parse_hamiltonian(
      R"({"n_qubits": 1, "terms": [{"pauli": "X", "coeff": 1.0},
                                   {"pauli": "Z", "coeff": 1.0}]})");
  CHECK(f.hamiltonian.n_qubits() == 1);
  CHECK(f.hamiltonian.size() == 2);
}

TEST_CASE("load errors carry the offending line") {
  const char* dup = R"({
  "n_qubits": 2,
  "terms": [
    {"pauli": "XZ", "coeff": 1.0},
    {"pauli": "XZ", "coeff": 2.0}
  ]
})";
  CHECK_THROWS_WITH_AS(parse_hamiltonian(dup),
                       doctest::Contains("duplicate"),
                       HamiltonianFormatError);
  try {
    parse_hamiltonian(dup);
  } catch (const HamiltonianFormatError& e) {
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  }

  const char* bad_width = R"({
  "n_qubits": 2,
  "terms": [
    {"pauli": "XZI", "coeff": 1.0}
  ]
})";
  CHECK_THROWS_WITH_AS(parse_hamiltonian(bad_width),
                       doctest::Contains("width"), HamiltonianFormatError);

  CHECK_THROWS_AS(parse_hamiltonian("{ not json"), HamiltonianFormatError);
  CHECK_THROWS_AS(parse_hamiltonian(R"({"terms": []})"),
                  HamiltonianFormatError);
}

TEST_CASE("metadata-bearing large tapered file survives a round trip") {
  PauliSum h = random_pauli_hamiltonian(10, 1035, RngSeed{7, "h2o"});
  HamiltonianFile file{
      h, {{"molecule", "H2O"}, {"basis", "sto-3g"}, {"tapered", "true"}}};
  const fs::path path = temp_file("h2o.json");
  save_hamiltonian(file, path);
  const HamiltonianFile loaded = load_hamiltonian(path);
  CHECK(loaded.hamiltonian.n_qubits() == 10);
  CHECK(loaded.hamiltonian.size() == 1035);
  CHECK(loaded.metadata.at("molecule") == "H2O");
  CHECK(loaded.metadata.at("tapered") == "true");
}

TEST_CASE("spectral norm pinned values") {
  PauliSum single(2);
  single.add_term(-2.5, PauliString::from_string("XY"));
  CHECK(spectral_norm(single) == doctest::Approx(2.5).epsilon(1e-12));

  PauliSum xz(1);
  xz.add_term(1.0, PauliString::from_string("X"));
  xz.add_term(1.0, PauliString::from_string("Z"));
  CHECK(spectral_norm(xz) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("spectral norm agrees with power iteration") {
  const PauliSum h = random_pauli_hamiltonian(4, 16, RngSeed{11, "norm"});
  const double expected = power_iteration_norm(oracle::dense(h));
  CHECK(spectral_norm(h) == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("spectral norm is absolutely homogeneous") {
  Rng rng(RngSeed{12, "homog"});
  const PauliSum h = random_pauli_hamiltonian(3, 9, RngSeed{12, "h"});
  const double base = spectral_norm(h);
  for (int rep = 0; rep < 5; ++rep) {
    const double c = 4.0 * rng.uniform01() - 2.0;
    PauliSum scaled(h.n_qubits());
    for (const auto& t : h) scaled.add_term(c * t.coefficient, t.pauli);
    CHECK(spectral_norm(scaled) ==
          doctest::Approx(std::abs(c) * base).epsilon(1e-10));
  }
}

TEST_CASE("default time") {
  PauliSum z(1);
  z.add_term(std::numbers::pi, PauliString::from_string("Z"));
  CHECK(default_time(z, 4.0) == doctest::Approx(0.25).epsilon(1e-12));

  PauliSum xz(1);
  xz.add_term(1.0, PauliString::from_string("X"));
  xz.add_term(1.0, PauliString::from_string("Z"));
  CHECK(default_time(xz, 4.0) ==
        doctest::Approx(std::numbers::pi / (4.0 * std::sqrt(2.0)))
            .epsilon(1e-12));
  CHECK(default_time(xz, 2.0) ==
        doctest::Approx(2.0 * default_time(xz, 4.0)).epsilon(1e-12));

  PauliSum zero(1);
  CHECK_THROWS_AS(default_time(zero, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(default_time(xz, 0.0), std::invalid_argument);
}
