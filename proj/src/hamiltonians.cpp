#include "trotter/hamiltonians.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace trotter {

namespace {

using nlohmann::json;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// 1-based line of the i-th (0-based) "pauli" key in the raw text; used to
/// point diagnostics at the offending term of a canonical file.
std::size_t line_of_term(const std::string& text, std::size_t term_index) {
  std::size_t pos = 0;
  for (std::size_t i = 0;; ++i) {
    pos = text.find("\"pauli\"", pos);
    if (pos == std::string::npos) return 0;
    if (i == term_index) break;
    ++pos;
  }
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<long>(pos),
                            '\n'));
}

[[noreturn]] void fail_term(const std::string& text, std::size_t term_index,
                            const std::string& what) {
  const std::size_t line = line_of_term(text, term_index);
  std::ostringstream msg;
  msg << what << " (term " << term_index;
  if (line > 0) msg << ", line " << line;
  msg << ")";
  throw HamiltonianFormatError(msg.str());
}

}  // namespace

PauliSum random_pauli_hamiltonian(int n_qubits, std::size_t n_terms,
                                  const RngSeed& seed) {
  if (n_terms == 0) {
    n_terms = static_cast<std::size_t>(n_qubits) *
              static_cast<std::size_t>(n_qubits);
  }
  const double space = std::pow(4.0, n_qubits);
  if (n_qubits <= 31 &&
      n_terms > static_cast<std::size_t>(space)) {
    throw std::invalid_argument("requested " + std::to_string(n_terms) +
                                " terms but only " +
                                std::to_string(static_cast<std::size_t>(space)) +
                                " distinct strings exist");
  }
  // Uniform over 4^N == uniform over (x, z) mask pairs; duplicates are
  // rejected so the accepted sequence is a without-replacement sample.
  Rng rng(seed);
  PauliSum h(n_qubits);
  while (h.size() < n_terms) {
    const std::uint64_t x = rng.bits(n_qubits);
    const std::uint64_t z = rng.bits(n_qubits);
    const PauliString p(n_qubits, x, z);
    if (!h.contains(p)) h.add_term(1.0, p);
  }
  return h;
}

std::string serialize_hamiltonian(const HamiltonianFile& file) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"n_qubits\": " << file.hamiltonian.n_qubits() << ",\n";
  out << "  \"terms\": [\n";
  const auto& terms = file.hamiltonian.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    out << "    {\"pauli\": " << json(terms[i].pauli.str())
        << ", \"coeff\": " << g17(terms[i].coefficient) << "}"
        << (i + 1 < terms.size() ? "," : "") << "\n";
  }
  out << "  ],\n";
  out << "  \"metadata\": ";
  json meta = json::object();
  for (const auto& [k, v] : file.metadata) meta[k] = v;
  out << meta.dump() << "\n";
  out << "}\n";
  return out.str();
}

void save_hamiltonian(const HamiltonianFile& file,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << serialize_hamiltonian(file);
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

void save_hamiltonian(const PauliSum& h, const std::filesystem::path& path) {
  save_hamiltonian(HamiltonianFile{h, {}}, path);
}

HamiltonianFile parse_hamiltonian(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw HamiltonianFormatError(std::string("malformed operator file: ") +
                                 e.what());
  }
  if (!doc.is_object() || !doc.contains("n_qubits") || !doc.contains("terms")) {
    throw HamiltonianFormatError(
        "operator file must be an object with \"n_qubits\" and \"terms\"");
  }
  if (!doc["n_qubits"].is_number_integer()) {
    throw HamiltonianFormatError("\"n_qubits\" must be an integer");
  }
  const int n = doc["n_qubits"].get<int>();
  if (n < 1 || n > 64) {
    throw HamiltonianFormatError("\"n_qubits\" out of range [1, 64]");
  }
  if (!doc["terms"].is_array()) {
    throw HamiltonianFormatError("\"terms\" must be an array");
  }

  PauliSum h(n);
  std::size_t i = 0;
  for (const auto& entry : doc["terms"]) {
    if (!entry.is_object() || !entry.contains("pauli") ||
        !entry.contains("coeff") || !entry["pauli"].is_string() ||
        !entry["coeff"].is_number()) {
      fail_term(text, i, "term must be {\"pauli\": string, \"coeff\": number}");
    }
    const std::string pstr = entry["pauli"].get<std::string>();
    if (pstr.size() != static_cast<std::size_t>(n)) {
      fail_term(text, i,
                "pauli string \"" + pstr + "\" has width " +
                    std::to_string(pstr.size()) + ", expected " +
                    std::to_string(n));
    }
    PauliString p = PauliString::identity(n);
    try {
      p = PauliString::from_string(pstr);
    } catch (const std::invalid_argument& e) {
      fail_term(text, i, e.what());
    }
    if (h.contains(p)) {
      fail_term(text, i, "duplicate pauli string \"" + pstr + "\"");
    }
    h.add_term(entry["coeff"].get<double>(), p);
    ++i;
  }

  HamiltonianFile out{std::move(h), {}};
  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_object()) {
      throw HamiltonianFormatError("\"metadata\" must be an object");
    }
    for (const auto& [k, v] : doc["metadata"].items()) {
      out.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  return out;
}

HamiltonianFile load_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_hamiltonian(buf.str());
}

double spectral_norm(const PauliSum& h, int dense_limit) {
  const SpectralData spec = exact_eigenpairs(h, dense_limit);
  const Eigen::Index dim = spec.eigenvalues.size();
  return std::max(std::abs(spec.eigenvalues(0)),
                  std::abs(spec.eigenvalues(dim - 1)));
}

double default_time_from_norm(double norm_h, double divisor) {
  if (divisor <= 0.0) throw std::invalid_argument("divisor must be positive");
  if (norm_h <= 0.0) {
    throw std::invalid_argument("operator norm is zero; no natural time scale");
  }
  return std::numbers::pi / (divisor * norm_h);
}

double default_time(const PauliSum& h, double divisor, int dense_limit) {
  return default_time_from_norm(spectral_norm(h, dense_limit), divisor);
}

}  // namespace trotter
