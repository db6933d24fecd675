#pragma once

#include <span>
#include <string>
#include <vector>

#include "qgf/common.hpp"
#include "qgf/overlap.hpp"
#include "qgf/pauli.hpp"
#include "qgf/statevector.hpp"

namespace qgf {

/// Mixed state on n qubits, row-major 2^n x 2^n.
class DensityMatrix {
 public:
  explicit DensityMatrix(int n_qubits);
  static DensityMatrix pure(const StateVector& psi);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return std::size_t{1} << n_qubits_; }
  cplx& at(std::size_t r, std::size_t c) { return m_[r * dim() + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return m_[r * dim() + c]; }
  std::span<cplx> data() { return m_; }
  std::span<const cplx> data() const { return m_; }

  double trace_real() const;
  double hermiticity_error() const;

 private:
  int n_qubits_;
  std::vector<cplx> m_;
};

enum class NoiseChannel { BitFlip, PhaseFlip };

struct NoiseModel {
  NoiseChannel channel = NoiseChannel::BitFlip;
  double p = 0.0;  // per gate, per qubit

  void validate() const;
};

NoiseChannel channel_from_name(const std::string& name);
std::string channel_name(NoiseChannel c);

/// One Kraus application of the channel on a single qubit.
DensityMatrix apply_channel(const DensityMatrix& rho, const NoiseModel& m,
                            int qubit);

/// Density-matrix simulation of the Hadamard-test protocol on n+1 qubits
/// (ancilla last). The controlled Trotter evolution of the traceless part is
/// decomposed into elementary gates -- Toffoli-conjugated controlled-Rz for
/// ZZ terms, controlled single-qubit rotations for X terms -- and the channel
/// strikes every qubit after each elementary gate. D_k comes from the ancilla
/// expectation, N_k from per-term runs with a trailing controlled Pauli
/// string; the identity offset enters as classical phase and offset*D_k.
/// Fully deterministic. Supports Z-type strings and single-qubit terms.
OverlapTable noisy_overlap_table(const PauliSum& h, const StateVector& psi,
                                 double delta_y, int m_y,
                                 const TrotterConfig& cfg, const NoiseModel& m);

/// Richardson extrapolation of deterministic values at distinct noise scales
/// (e.g. {1,2} or {1,2,3} times p) to scale zero; polynomial degree is
/// points - 1.
double zne_extrapolate(std::span<const double> scales,
                       std::span<const double> values);

/// TableBuilder over the noisy protocol, pluggable into iterative_deepen.
class NoisyTableBuilder final : public TableBuilder {
 public:
  NoisyTableBuilder(const PauliSum& h, StateVector psi, double delta_y,
                    TrotterConfig cfg, NoiseModel model)
      : h_(h), psi_(std::move(psi)), delta_y_(delta_y), cfg_(cfg), model_(model) {}

  OverlapTable build(int m_y) const override {
    return noisy_overlap_table(h_, psi_, delta_y_, m_y, cfg_, model_);
  }
  /// Re-runs the deterministic evolution, keeping stored entries bitwise and
  /// filling only the new ones.
  OverlapTable extend(const OverlapTable& t, int new_m_y) const override;

 private:
  PauliSum h_;
  StateVector psi_;
  double delta_y_;
  TrotterConfig cfg_;
  NoiseModel model_;
};

}  // namespace qgf
