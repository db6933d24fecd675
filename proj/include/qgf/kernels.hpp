#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qgf/common.hpp"
#include "qgf/pauli.hpp"

namespace qgf::kernels {

/// A Pauli string prepared for amplitude-level application.
struct MaskedTerm {
  double coeff = 0.0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  cplx y_phase = 1.0;  // i^{number of Y sites}
};

MaskedTerm mask_term(double coeff, const PauliString& s);
std::vector<MaskedTerm> mask_terms(const PauliSum& h);

/// 2x2 gate matrix, row-major.
using Gate1q = std::array<std::array<cplx, 2>, 2>;

// ---------------------------------------------------------------------------
// OpenMP-parallel kernels. Each output element is computed independently with
// a fixed per-element expression, so results are identical to the serial
// reference bit for bit and do not depend on the thread count.
// ---------------------------------------------------------------------------

/// out[i] = offset*in[i] + sum_t c_t (P_t in)[i]
void apply_pauli_sum(std::span<const MaskedTerm> terms, double offset,
                     std::span<const cplx> in, std::span<cplx> out);

/// psi <- e^{-i theta P} psi, in place. Exact for any Pauli string.
void apply_pauli_rotation(double theta, const MaskedTerm& term,
                          std::span<cplx> psi);

/// psi[j] <- psi[j] * e^{-i eigenvalues[j] t}
void apply_phases(std::span<const double> eigenvalues, double t,
                  std::span<cplx> psi);

/// rho <- U rho U^dag for a single-qubit gate u on `target`, applied only
/// where every bit of ctrl_mask is set. rho is row-major dim x dim.
void density_apply_controlled_1q(std::span<cplx> rho, int n_total,
                                 const Gate1q& u, int target,
                                 std::uint64_t ctrl_mask);

/// rho <- (1-p) rho + p X rho X on `qubit`.
void density_bit_flip(std::span<cplx> rho, int n_total, int qubit, double p);

/// rho <- (1-p) rho + p Z rho Z on `qubit`.
void density_phase_flip(std::span<cplx> rho, int n_total, int qubit, double p);

// ---------------------------------------------------------------------------
// Serial reference implementations, kept for correctness tests and the
// kernel benchmark.
// ---------------------------------------------------------------------------
namespace serial {

void apply_pauli_sum(std::span<const MaskedTerm> terms, double offset,
                     std::span<const cplx> in, std::span<cplx> out);
void apply_pauli_rotation(double theta, const MaskedTerm& term,
                          std::span<cplx> psi);
void apply_phases(std::span<const double> eigenvalues, double t,
                  std::span<cplx> psi);
void density_apply_controlled_1q(std::span<cplx> rho, int n_total,
                                 const Gate1q& u, int target,
                                 std::uint64_t ctrl_mask);
void density_bit_flip(std::span<cplx> rho, int n_total, int qubit, double p);
void density_phase_flip(std::span<cplx> rho, int n_total, int qubit, double p);

}  // namespace serial

}  // namespace qgf::kernels
