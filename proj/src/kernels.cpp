#include "qgf/kernels.hpp"

#include <cmath>
#include <cstdint>

#include "kernels_detail.hpp"

namespace qgf::kernels {

namespace {
// Below this many elements the parallel-for fork costs more than the loop.
constexpr std::int64_t kParallelGrain = 1 << 12;

cplx i_power(int n) {
  switch (n & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}
}  // namespace

MaskedTerm mask_term(double coeff, const PauliString& s) {
  const auto m = s.masks();
  return {coeff, m.x, m.z, i_power(m.y_count)};
}

std::vector<MaskedTerm> mask_terms(const PauliSum& h) {
  std::vector<MaskedTerm> out;
  out.reserve(h.term_count());
  for (const auto& t : h.terms()) out.push_back(mask_term(t.coeff, t.string));
  return out;
}

void apply_pauli_sum(std::span<const MaskedTerm> terms, double offset,
                     std::span<const cplx> in, std::span<cplx> out) {
  const std::int64_t dim = static_cast<std::int64_t>(in.size());
#pragma omp parallel for schedule(static) if (dim >= kParallelGrain)
  for (std::int64_t i = 0; i < dim; ++i) {
    out[i] = detail::gathered_element(terms, offset, in, i);
  }
}

void apply_pauli_rotation(double theta, const MaskedTerm& term,
                          std::span<cplx> psi) {
  const std::int64_t dim = static_cast<std::int64_t>(psi.size());
  const double c = std::cos(theta), s = std::sin(theta);
  if (term.x == 0) {
    // Diagonal string: pure phases, no Y sites possible.
#pragma omp parallel for schedule(static) if (dim >= kParallelGrain)
    for (std::int64_t b = 0; b < dim; ++b) {
      const int parity = std::popcount(static_cast<std::uint64_t>(b) & term.z) & 1;
      psi[b] *= cplx{c, parity ? s : -s};  // e^{-i theta (+-1)}
    }
    return;
  }
  const std::uint64_t pivot = std::uint64_t{1} << (63 - std::countl_zero(term.x));
  const std::int64_t pairs = dim / 2;
#pragma omp parallel for schedule(static) if (pairs >= kParallelGrain)
  for (std::int64_t j = 0; j < pairs; ++j) {
    const std::uint64_t b0 = detail::insert_zero_bit(j, pivot);
    const std::uint64_t b1 = b0 ^ term.x;
    const auto r = detail::rotate_pair(c, s, term, b0, b1, psi[b0], psi[b1]);
    psi[b0] = r.a0;
    psi[b1] = r.a1;
  }
}

void apply_phases(std::span<const double> eigenvalues, double t,
                  std::span<cplx> psi) {
  const std::int64_t dim = static_cast<std::int64_t>(psi.size());
#pragma omp parallel for schedule(static) if (dim >= kParallelGrain)
  for (std::int64_t j = 0; j < dim; ++j) {
    psi[j] *= std::exp(cplx{0.0, -eigenvalues[j] * t});
  }
}

void density_apply_controlled_1q(std::span<cplx> rho, int n_total,
                                 const Gate1q& u, int target,
                                 std::uint64_t ctrl_mask) {
  const std::size_t dim = std::size_t{1} << n_total;
  const std::uint64_t tbit = std::uint64_t{1} << target;
  const std::int64_t half = static_cast<std::int64_t>(dim / 2);
  // U rho: mix row pairs (contiguous slabs).
#pragma omp parallel for schedule(static) if (half* static_cast<std::int64_t>(dim) >= kParallelGrain)
  for (std::int64_t j = 0; j < half; ++j) {
    const std::uint64_t r0 = detail::insert_zero_bit(j, tbit);
    if ((r0 & ctrl_mask) != ctrl_mask) continue;
    detail::mix_rows(rho, dim, u, r0, r0 | tbit);
  }
  // (U rho) U^dag: mix column pairs within each row.
#pragma omp parallel for schedule(static) if (static_cast<std::int64_t>(dim* dim / 2) >= kParallelGrain)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(dim); ++r) {
    cplx* row = rho.data() + r * dim;
    for (std::int64_t j = 0; j < half; ++j) {
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
  // Entry pairs {(r,c), (r^q, c^q)} mix among themselves; iterate rows with
  // the qubit bit clear so each pair is visited once.
  const std::int64_t half = static_cast<std::int64_t>(dim / 2);
#pragma omp parallel for schedule(static) if (half* static_cast<std::int64_t>(dim) >= kParallelGrain)
  for (std::int64_t j = 0; j < half; ++j) {
    const std::uint64_t r0 = detail::insert_zero_bit(j, qbit);
    const std::uint64_t r1 = r0 | qbit;
    cplx* rowa = rho.data() + r0 * dim;
    cplx* rowb = rho.data() + r1 * dim;
    for (std::size_t c = 0; c < dim; ++c) {
      const std::size_t cf = c ^ qbit;
      if (cf < c) continue;  // partner handles it
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
#pragma omp parallel for schedule(static) if (static_cast<std::int64_t>(dim* dim) >= kParallelGrain)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(dim); ++r) {
    cplx* row = rho.data() + r * dim;
    const std::uint64_t rb = static_cast<std::uint64_t>(r) & qbit;
    for (std::size_t c = 0; c < dim; ++c) {
      if ((c & qbit) != rb) row[c] *= damp;
    }
  }
}

}  // namespace qgf::kernels
