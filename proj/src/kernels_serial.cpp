#include <bit>
#include <cmath>
#include <cstdint>

#include "kernels_detail.hpp"
#include "qgf/kernels.hpp"

namespace qgf::kernels::serial {

void apply_pauli_sum(std::span<const MaskedTerm> terms, double offset,
                     std::span<const cplx> in, std::span<cplx> out) {
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i] = detail::gathered_element(terms, offset, in, i);
  }
}

void apply_pauli_rotation(double theta, const MaskedTerm& term,
                          std::span<cplx> psi) {
  const std::size_t dim = psi.size();
  const double c = std::cos(theta), s = std::sin(theta);
  if (term.x == 0) {
    for (std::size_t b = 0; b < dim; ++b) {
      const int parity = std::popcount(b & term.z) & 1;
      psi[b] *= cplx{c, parity ? s : -s};
    }
    return;
  }
  const std::uint64_t pivot = std::uint64_t{1} << (63 - std::countl_zero(term.x));
  for (std::size_t j = 0; j < dim / 2; ++j) {
    const std::uint64_t b0 = detail::insert_zero_bit(j, pivot);
    const std::uint64_t b1 = b0 ^ term.x;
    const auto r = detail::rotate_pair(c, s, term, b0, b1, psi[b0], psi[b1]);
    psi[b0] = r.a0;
    psi[b1] = r.a1;
  }
}

void apply_phases(std::span<const double> eigenvalues, double t,
                  std::span<cplx> psi) {
  for (std::size_t j = 0; j < psi.size(); ++j) {
    psi[j] *= std::exp(cplx{0.0, -eigenvalues[j] * t});
  }
}

void density_apply_controlled_1q(std::span<cplx> rho, int n_total,
                                 const Gate1q& u, int target,
                                 std::uint64_t ctrl_mask) {
  const std::size_t dim = std::size_t{1} << n_total;
  const std::uint64_t tbit = std::uint64_t{1} << target;
  for (std::size_t j = 0; j < dim / 2; ++j) {
    const std::uint64_t r0 = detail::insert_zero_bit(j, tbit);
    if ((r0 & ctrl_mask) != ctrl_mask) continue;
    detail::mix_rows(rho, dim, u, r0, r0 | tbit);
  }
  for (std::size_t r = 0; r < dim; ++r) {
    cplx* row = rho.data() + r * dim;
    for (std::size_t j = 0; j < dim / 2; ++j) {
      const std::uint64_t c0 = detail::insert_zero_bit(j, tbit);
      if ((c0 & ctrl_mask) != ctrl_mask) continue;
      detail::mix_cols_conj(row, u, c0, c0 | tbit);
    }
  }
}

void density_bit_flip(std::span<cplx> rho, int n_total, int qubit, double p) {
  const std::size_t dim = std::size_t{1} << n_total;
  const std::uint64_t qbit = std::uint64_t{1} << qubit;
  const double keep = 1.0 - p;
  for (std::size_t j = 0; j < dim / 2; ++j) {
    const std::uint64_t r0 = detail::insert_zero_bit(j, qbit);
    const std::uint64_t r1 = r0 | qbit;
    cplx* rowa = rho.data() + r0 * dim;
    cplx* rowb = rho.data() + r1 * dim;
    for (std::size_t c = 0; c < dim; ++c) {
      const std::size_t cf = c ^ qbit;
      if (cf < c) continue;
      const cplx a = rowa[c], b = rowb[cf];
      rowa[c] = keep * a + p * b;
      rowb[cf] = keep * b + p * a;
      const cplx d = rowa[cf], e = rowb[c];
      rowa[cf] = keep * d + p * e;
      rowb[c] = keep * e + p * d;
    }
  }
}

void density_phase_flip(std::span<cplx> rho, int n_total, int qubit, double p) {
  const std::size_t dim = std::size_t{1} << n_total;
  const std::uint64_t qbit = std::uint64_t{1} << qubit;
  const double damp = 1.0 - 2.0 * p;
  for (std::size_t r = 0; r < dim; ++r) {
    cplx* row = rho.data() + r * dim;
    const std::uint64_t rb = r & qbit;
    for (std::size_t c = 0; c < dim; ++c) {
      if ((c & qbit) != rb) row[c] *= damp;
    }
  }
}

}  // namespace qgf::kernels::serial
