#pragma once

#include <bit>
#include <cstdint>

#include "qgf/kernels.hpp"

// Per-element arithmetic shared by the OpenMP and serial kernel variants so
// the two produce bit-identical results.

namespace qgf::kernels::detail {

inline cplx string_phase(const MaskedTerm& t, std::uint64_t basis) {
  const int parity = std::popcount(basis & t.z) & 1;
  return parity ? -t.y_phase : t.y_phase;
}

inline cplx gathered_element(std::span<const MaskedTerm> terms, double offset,
                             std::span<const cplx> in, std::uint64_t i) {
  cplx acc = offset * in[i];
  for (const MaskedTerm& t : terms) {
    const std::uint64_t src = i ^ t.x;
    acc += t.coeff * string_phase(t, src) * in[src];
  }
  return acc;
}

/// Index with bit value 0 inserted at position `pivot` of j.
inline std::uint64_t insert_zero_bit(std::uint64_t j, std::uint64_t pivot_mask) {
  const std::uint64_t low = j & (pivot_mask - 1);
  return ((j ^ low) << 1) | low;
}

struct RotationPair {
  cplx a0, a1;
};

inline RotationPair rotate_pair(double c, double s, const MaskedTerm& t,
                                std::uint64_t b0, std::uint64_t b1, cplx a0,
                                cplx a1) {
  const cplx l0 = string_phase(t, b0);
  const cplx l1 = string_phase(t, b1);
  return {c * a0 - imag_unit * s * l1 * a1, c * a1 - imag_unit * s * l0 * a0};
}

inline void mix_rows(std::span<cplx> rho, std::size_t dim, const Gate1q& u,
                     std::uint64_t r0, std::uint64_t r1) {
  cplx* row0 = rho.data() + r0 * dim;
  cplx* row1 = rho.data() + r1 * dim;
  for (std::size_t c = 0; c < dim; ++c) {
    const cplx a = row0[c], b = row1[c];
    row0[c] = u[0][0] * a + u[0][1] * b;
    row1[c] = u[1][0] * a + u[1][1] * b;
  }
}

inline void mix_cols_conj(cplx* row, const Gate1q& u, std::uint64_t c0,
                          std::uint64_t c1) {
  const cplx a = row[c0], b = row[c1];
  row[c0] = std::conj(u[0][0]) * a + std::conj(u[0][1]) * b;
  row[c1] = std::conj(u[1][0]) * a + std::conj(u[1][1]) * b;
}

}  // namespace qgf::kernels::detail
