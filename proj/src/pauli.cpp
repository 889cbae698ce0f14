#include "trotter/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace trotter {

namespace {

void check_width(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 64) {
    throw std::invalid_argument("n_qubits must be in [1, 64], got " +
                                std::to_string(n_qubits));
  }
}

void check_same_width(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("Pauli width mismatch: " +
                                std::to_string(a.n_qubits()) + " vs " +
                                std::to_string(b.n_qubits()));
  }
}

std::uint64_t width_mask(int n_qubits) {
  return n_qubits == 64 ? ~std::uint64_t{0}
                        : (std::uint64_t{1} << n_qubits) - 1;
}

constexpr Complex kQuarterPhases[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

}  // namespace

PauliString::PauliString(int n_qubits, std::uint64_t x_bits,
                         std::uint64_t z_bits)
    : n_qubits_(n_qubits), x_bits_(x_bits), z_bits_(z_bits) {
  check_width(n_qubits);
  const std::uint64_t mask = width_mask(n_qubits);
  if ((x_bits & ~mask) != 0 || (z_bits & ~mask) != 0) {
    throw std::invalid_argument("Pauli bitmask exceeds declared width");
  }
}

PauliString PauliString::identity(int n_qubits) {
  return PauliString(n_qubits, 0, 0);
}

PauliString PauliString::from_string(std::string_view chars) {
  check_width(static_cast<int>(chars.size()));
  std::uint64_t x = 0, z = 0;
  for (std::size_t q = 0; q < chars.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (chars[q]) {
      case 'I':
        break;
      case 'X':
        x |= bit;
        break;
      case 'Y':
        x |= bit;
        z |= bit;
        break;
      case 'Z':
        z |= bit;
        break;
      default:
        throw std::invalid_argument(
            std::string("invalid Pauli character '") + chars[q] +
            "' at position " + std::to_string(q));
    }
  }
  return PauliString(static_cast<int>(chars.size()), x, z);
}

std::string PauliString::str() const {
  std::string out(static_cast<std::size_t>(n_qubits_), 'I');
  for (int q = 0; q < n_qubits_; ++q) {
    const bool x = (x_bits_ >> q) & 1;
    const bool z = (z_bits_ >> q) & 1;
    if (x && z)
      out[static_cast<std::size_t>(q)] = 'Y';
    else if (x)
      out[static_cast<std::size_t>(q)] = 'X';
    else if (z)
      out[static_cast<std::size_t>(q)] = 'Z';
  }
  return out;
}

bool PauliString::commutes_with(const PauliString& other) const {
  check_same_width(*this, other);
  const int sym = std::popcount(x_bits_ & other.z_bits_) +
                  std::popcount(z_bits_ & other.x_bits_);
  return (sym & 1) == 0;
}

std::size_t PauliStringHash::operator()(const PauliString& p) const noexcept {
  // splitmix64-style mix of the two masks
  std::uint64_t h = p.x_bits() * 0x9e3779b97f4a7c15ULL;
  h ^= p.z_bits() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::uint64_t>(p.n_qubits());
  h *= 0xbf58476d1ce4e5b9ULL;
  return static_cast<std::size_t>(h ^ (h >> 31));
}

ScaledPauli multiply(const PauliString& a, const PauliString& b) {
  check_same_width(a, b);
  const std::uint64_t x = a.x_bits() ^ b.x_bits();
  const std::uint64_t z = a.z_bits() ^ b.z_bits();
  // Each factor is written i^{x.z} X^x Z^z; commuting Z^za past X^xb
  // contributes (-1)^{za.xb} and the result is renormalized to the same
  // form, leaving a power of i per qubit that popcounts accumulate.
  int e = std::popcount(a.x_bits() & a.z_bits()) +
          std::popcount(b.x_bits() & b.z_bits()) +
          2 * std::popcount(a.z_bits() & b.x_bits()) - std::popcount(x & z);
  e = ((e % 4) + 4) % 4;
  return {kQuarterPhases[e], PauliString(a.n_qubits(), x, z)};
}

std::optional<ScaledPauli> commutator(const PauliString& a,
                                      const PauliString& b) {
  if (a.commutes_with(b)) return std::nullopt;
  ScaledPauli prod = multiply(a, b);
  prod.coefficient *= 2.0;  // ab - ba = 2ab when a, b anticommute
  return prod;
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) { check_width(n_qubits); }

void PauliSum::add_term(double coefficient, const PauliString& pauli) {
  if (pauli.n_qubits() != n_qubits_) {
    throw std::invalid_argument("term width " +
                                std::to_string(pauli.n_qubits()) +
                                " does not match operator width " +
                                std::to_string(n_qubits_));
  }
  if (index_.contains(pauli)) {
    throw std::invalid_argument("duplicate Pauli term \"" + pauli.str() +
                                "\"");
  }
  index_.emplace(pauli, terms_.size());
  terms_.push_back({coefficient, pauli});
}

bool PauliSum::contains(const PauliString& pauli) const {
  return index_.contains(pauli);
}

PauliAccumulator::PauliAccumulator(int n_qubits) : n_qubits_(n_qubits) {
  check_width(n_qubits);
}

void PauliAccumulator::add(Complex coefficient, const PauliString& pauli) {
  if (pauli.n_qubits() != n_qubits_) {
    throw std::invalid_argument("accumulator width mismatch");
  }
  auto it = index_.find(pauli);
  if (it == index_.end()) {
    index_.emplace(pauli, entries_.size());
    entries_.emplace_back(coefficient, pauli);
  } else {
    entries_[it->second].first += coefficient;
  }
}

std::vector<std::pair<Complex, PauliString>> PauliAccumulator::terms() const {
  std::vector<std::pair<Complex, PauliString>> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (std::abs(e.first) > kCoeffPruneTol) out.push_back(e);
  }
  return out;
}

double PauliAccumulator::l1_norm() const {
  double sum = 0.0;
  for (const auto& e : entries_) {
    const double mag = std::abs(e.first);
    if (mag > kCoeffPruneTol) sum += mag;
  }
  return sum;
}

double l1_norm(const PauliSum& h) {
  double sum = 0.0;
  for (const auto& t : h) sum += std::abs(t.coefficient);
  return sum;
}

Eigen::MatrixXcd to_dense_matrix(const PauliSum& h, int dense_limit) {
  if (h.n_qubits() > dense_limit) {
    throw std::invalid_argument("dense matrix for " +
                                std::to_string(h.n_qubits()) +
                                " qubits exceeds limit " +
                                std::to_string(dense_limit));
  }
  const std::uint64_t dim = std::uint64_t{1} << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (const auto& term : h) {
    const std::uint64_t x = term.pauli.x_bits();
    const std::uint64_t z = term.pauli.z_bits();
    const Complex base =
        term.coefficient * kQuarterPhases[std::popcount(x & z) & 3];
    for (std::uint64_t col = 0; col < dim; ++col) {
      const double sign = (std::popcount(z & col) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(col ^ x), static_cast<Eigen::Index>(col)) +=
          base * sign;
    }
  }
  return m;
}

double commutator_bound(const PauliSum& h) {
  const std::size_t n_terms = h.size();
  if (n_terms < 2) return 0.0;
  double total = 0.0;
  for (std::size_t b = 0; b + 1 < n_terms; ++b) {
    const auto& hb = h.term(b);
    // single layer: sum_{c>b} [H_b, H_c]
    PauliAccumulator layer(h.n_qubits());
    for (std::size_t c = b + 1; c < n_terms; ++c) {
      const auto& hc = h.term(c);
      if (auto com = commutator(hb.pauli, hc.pauli)) {
        layer.add(com->coefficient * hb.coefficient * hc.coefficient,
                  com->pauli);
      }
    }
    const auto layer_terms = layer.terms();
    if (layer_terms.empty()) continue;
    // nested layers: [layer, sum_{a>b} H_a] and [layer, H_b]
    PauliAccumulator tail(h.n_qubits());
    PauliAccumulator self(h.n_qubits());
    for (const auto& [coeff, pauli] : layer_terms) {
      for (std::size_t a = b + 1; a < n_terms; ++a) {
        const auto& ha = h.term(a);
        if (auto com = commutator(pauli, ha.pauli)) {
          tail.add(com->coefficient * coeff * ha.coefficient, com->pauli);
        }
      }
      if (auto com = commutator(pauli, hb.pauli)) {
        self.add(com->coefficient * coeff * hb.coefficient, com->pauli);
      }
    }
    total += tail.l1_norm() + 0.5 * self.l1_norm();
  }
  return total / 12.0;
}

}  // namespace trotter
