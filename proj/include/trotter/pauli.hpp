#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace trotter {

using Complex = std::complex<double>;

/// Matrices larger than 2^12 are refused by default; override per call.
inline constexpr int kDefaultDenseLimit = 12;

/// Coefficients with magnitude below this are dropped when accumulating
/// sums of Pauli strings (exact integer-phase cancellations land here).
inline constexpr double kCoeffPruneTol = 1e-14;

/// Tensor product of single-qubit I/X/Y/Z factors in symplectic form:
/// qubit q carries an X factor iff bit q of x_bits() is set and a Z factor
/// iff bit q of z_bits() is set; both set means Y. Character form uses
/// position 0 for qubit 0, and qubit 0 is the least significant bit of
/// basis-state indices.
class PauliString {
 public:
  PauliString(int n_qubits, std::uint64_t x_bits, std::uint64_t z_bits);

  static PauliString identity(int n_qubits);
  static PauliString from_string(std::string_view chars);

  std::string str() const;

  int n_qubits() const { return n_qubits_; }
  std::uint64_t x_bits() const { return x_bits_; }
  std::uint64_t z_bits() const { return z_bits_; }

  bool is_identity() const { return x_bits_ == 0 && z_bits_ == 0; }

  /// Pauli strings either commute or anticommute; true when the symplectic
  /// inner product is even.
  bool commutes_with(const PauliString& other) const;

  friend bool operator==(const PauliString& a, const PauliString& b) = default;

 private:
  int n_qubits_;
  std::uint64_t x_bits_;
  std::uint64_t z_bits_;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept;
};

/// A Pauli string with a complex scale factor. Products of Pauli strings
/// always land on phases in {1, i, -1, -i}.
struct ScaledPauli {
  Complex coefficient;
  PauliString pauli;
};

/// Symplectic product: the result masks are the XOR of the inputs and the
/// phase follows from the per-qubit single-Pauli multiplication table.
ScaledPauli multiply(const PauliString& a, const PauliString& b);

/// [a, b] = ab - ba. Returns nullopt when the strings commute; otherwise
/// the result is 2 * multiply(a, b).
std::optional<ScaledPauli> commutator(const PauliString& a,
                                      const PauliString& b);

/// Hermitian operator sum_l coeff_l * P_l with real coefficients and
/// pairwise-distinct strings. Term order is preserved as inserted; several
/// downstream quantities (product-formula schedules, the nested-commutator
/// bound) depend on it.
class PauliSum {
 public:
  struct Term {
    double coefficient;
    PauliString pauli;
  };

  explicit PauliSum(int n_qubits);

  /// Throws on width mismatch or duplicate string.
  void add_term(double coefficient, const PauliString& pauli);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  const Term& term(std::size_t i) const { return terms_[i]; }
  const std::vector<Term>& terms() const { return terms_; }
  bool contains(const PauliString& pauli) const;

  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

 private:
  int n_qubits_;
  std::vector<Term> terms_;
  std::unordered_map<PauliString, std::size_t, PauliStringHash> index_;
};

/// Complex-weighted sum of Pauli strings in which equal strings merge.
/// Insertion order of first appearance is kept stable so results do not
/// depend on hashing details.
class PauliAccumulator {
 public:
  explicit PauliAccumulator(int n_qubits);

  void add(Complex coefficient, const PauliString& pauli);
  void add(const ScaledPauli& scaled) { add(scaled.coefficient, scaled.pauli); }

  /// Terms with |coefficient| <= kCoeffPruneTol are dropped.
  std::vector<std::pair<Complex, PauliString>> terms() const;

  /// Sum of |coefficient| over surviving terms.
  double l1_norm() const;

  int n_qubits() const { return n_qubits_; }

 private:
  int n_qubits_;
  std::vector<std::pair<Complex, PauliString>> entries_;
  std::unordered_map<PauliString, std::size_t, PauliStringHash> index_;
};

/// sum_l |coeff_l|
double l1_norm(const PauliSum& h);

/// Dense 2^N x 2^N matrix of the operator. Throws when N exceeds the limit.
Eigen::MatrixXcd to_dense_matrix(const PauliSum& h,
                                 int dense_limit = kDefaultDenseLimit);

/// Nested-commutator constant for second-order product formulas:
///
///   W_C = (1/12) * sum_{b=0}^{L-2} ( ||sum_{c>b} sum_{a>b} [[H_b,H_c],H_a]||_1
///                                    + (1/2) ||sum_{c>b} [[H_b,H_c],H_b]||_1 )
///
/// where H_i = coeff_i * P_i in stored order and ||.||_1 is the coefficient
/// L1 norm after merging equal strings. The value depends on term order.
/// Runs in O(L^3) Pauli products.
double commutator_bound(const PauliSum& h);

}  // namespace trotter
