#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "trotter/dynamics.hpp"
#include "trotter/pauli.hpp"
#include "trotter/rng.hpp"

namespace trotter {

/// Raised for unparseable or inconsistent operator files; the message names
/// the offending line.
struct HamiltonianFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operator plus free-form provenance (molecule name, basis, ...).
struct HamiltonianFile {
  PauliSum hamiltonian;
  std::map<std::string, std::string> metadata;
};

/// n_terms strings sampled uniformly without replacement from all 4^N
/// tensor products (identity included), every coefficient 1, in sampling
/// order. Deterministic in the seed. n_terms == 0 selects the default N^2.
PauliSum random_pauli_hamiltonian(int n_qubits, std::size_t n_terms,
                                  const RngSeed& seed);

/// Canonical UTF-8 JSON, one term per line:
///   { "n_qubits": N, "terms": [ {"pauli": "XZIY...", "coeff": c}, ... ],
///     "metadata": { ... } }
/// Character 0 of a pauli string acts on qubit 0. Coefficients carry 17
/// significant digits, so save/load round-trips are bit-exact.
void save_hamiltonian(const HamiltonianFile& file,
                      const std::filesystem::path& path);
void save_hamiltonian(const PauliSum& h, const std::filesystem::path& path);

HamiltonianFile load_hamiltonian(const std::filesystem::path& path);
HamiltonianFile parse_hamiltonian(const std::string& text);
std::string serialize_hamiltonian(const HamiltonianFile& file);

/// Largest singular value == max |eigenvalue| for a Hermitian operator.
double spectral_norm(const PauliSum& h, int dense_limit = kDefaultDenseLimit);

/// t = pi / (divisor * ||h||). Throws on a zero operator.
double default_time(const PauliSum& h, double divisor,
                    int dense_limit = kDefaultDenseLimit);
double default_time_from_norm(double norm_h, double divisor);

}  // namespace trotter
