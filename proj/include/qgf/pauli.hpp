#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qgf/common.hpp"

namespace qgf {

enum class Pauli : std::uint8_t { I = 0, X, Y, Z };

/// A tensor product of single-qubit Paulis over an n-qubit register.
/// Character i of the text form acts on qubit i (qubit 0 is the least
/// significant bit of a basis-state index). Phases live in coefficients,
/// never here.
class PauliString {
 public:
  explicit PauliString(int n_qubits);
  static PauliString parse(std::string_view text);

  int n_qubits() const { return static_cast<int>(ops_.size()); }
  Pauli op(int qubit) const { return ops_[qubit]; }
  void set(int qubit, Pauli p) { ops_[qubit] = p; }
  bool is_identity() const;
  std::string str() const;

  bool operator==(const PauliString&) const = default;

  /// Bit-mask view used by the amplitude kernels: x has a bit per X or Y
  /// site, z a bit per Z or Y site. P|b> = i^{n_Y} (-1)^{popcount(b&z)} |b^x>.
  struct Masks {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    int y_count = 0;
  };
  Masks masks() const;

 private:
  std::vector<Pauli> ops_;
};

struct PauliTerm {
  double coeff = 0.0;
  PauliString string;
};

/// A Hermitian operator as a real-weighted sum of Pauli strings plus a
/// separately tracked identity offset. Duplicate strings are merged on
/// insertion and exact-zero terms dropped; insertion order of surviving
/// strings is preserved and fixes the Trotter term order.
class PauliSum {
 public:
  explicit PauliSum(int n_qubits);

  void add(double coeff, const PauliString& s);
  void add_identity(double coeff) { identity_offset_ += coeff; }

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return std::size_t{1} << n_qubits_; }
  double identity_offset() const { return identity_offset_; }
  std::span<const PauliTerm> terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  /// Text form: header `n=<int> offset=<real>` then one `coeff\tstring`
  /// line per term.
  void to_text(std::ostream& out) const;
  static PauliSum from_text(std::istream& in);

 private:
  int n_qubits_;
  double identity_offset_ = 0.0;
  std::vector<PauliTerm> terms_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Dense eigendecomposition of a PauliSum, eigenvalues ascending.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;  // columns, same order as eigenvalues

  int n_qubits() const;
};

class StateVector;  // statevector.hpp

/// Transverse-field Ising chain -J sum Z_i Z_{i+1} + g sum X_i, with the
/// wrap bond Z_N Z_1 when periodic. The n = 2 periodic chain merges both
/// bonds into a single ZZ term of weight -2J.
PauliSum build_tfim(int n, double J, double g, bool periodic);

/// Adds e_shift to every eigenvalue by bumping the identity offset.
PauliSum shift_spectrum(const PauliSum& h, double e_shift);

/// Dense matrix of the operator, identity offset included.
Eigen::MatrixXcd dense_matrix(const PauliSum& h);

/// Brute-force Hermitian eigensolve; the ground-truth oracle for everything
/// downstream. Rejects registers above 12 qubits.
Spectrum diagonalize(const PauliSum& h);

/// H|psi>, identity offset included. Unnormalized.
StateVector apply(const PauliSum& h, const StateVector& psi);

}  // namespace qgf
