#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qgf/common.hpp"
#include "qgf/pauli.hpp"

namespace qgf {

/// A normalized pure state on n qubits. Operations return new states;
/// existing values are never mutated through the public API.
class StateVector {
 public:
  /// |0...0>
  explicit StateVector(int n_qubits);
  static StateVector from_amplitudes(int n_qubits, std::vector<cplx> amps);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }

  std::span<const cplx> amplitudes() const { return amps_; }
  std::span<cplx> amplitudes() { return amps_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }
  cplx& operator[](std::size_t i) { return amps_[i]; }

  double norm() const;
  void normalize();

  /// <this|other>
  cplx inner(const StateVector& other) const;

 private:
  int n_qubits_;
  std::vector<cplx> amps_;
};

/// First-order Trotterization settings. A slice is one interval of length
/// delta_y; evolving for time t uses round(|t|/delta_y) slices of
/// steps_per_slice steps each, so the step size stays fixed as t grows.
/// The term order is the fixed insertion order of the PauliSum (for
/// build_tfim: ZZ bonds in site order, then X terms in site order).
struct TrotterConfig {
  double delta_y = 0.1;
  int steps_per_slice = 1;
};

/// V e^{-i lambda t} V^dag |psi> through the eigenbasis. Exact and unitary.
StateVector exact_evolve(const Spectrum& spec, double t, const StateVector& psi);

/// First-order product formula [prod_l e^{-i c_l h_l t/n}]^n in the fixed
/// term order, times the exact identity-offset phase.
StateVector trotter_evolve(const PauliSum& h, double t, const TrotterConfig& cfg,
                           const StateVector& psi);

/// (|0..0> + (-1)^n |1..1>)/sqrt(2): Hadamard, CNOT chain, then Z on every
/// qubit.
StateVector prepare_ghz_z(int n);

/// Tensor power of (|0> - |1>)/sqrt(2), the -1 eigenstate of X.
StateVector prepare_x_ground(int n);

/// n alternating-operator layers on |0...0>: each layer applies the X-mixer
/// rotation e^{-i gamma_j sum X} then the ring-coupler rotation
/// e^{-i beta_j sum Z Z}, with explicit angles.
StateVector prepare_qaoa_layers(int n, std::span<const double> betas,
                                std::span<const double> gammas);

/// prepare_qaoa_layers with all 2n angles drawn uniformly from [-pi, pi)
/// using the portable generator; output depends only on (n, seed).
StateVector prepare_qaoa_random(int n, std::uint64_t seed);

/// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace qgf
