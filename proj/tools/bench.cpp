// Kernel benchmark: OpenMP-parallel paths against the serial reference.

#include <omp.h>

#include <cstdio>
#include <functional>
#include <vector>

#include "qgf/kernels.hpp"
#include "qgf/noise.hpp"
#include "qgf/pauli.hpp"
#include "qgf/statevector.hpp"

namespace {

using namespace qgf;

std::vector<cplx> random_state(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<cplx> amps(std::size_t{1} << n);
  for (auto& a : amps) a = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  return amps;
}

double time_best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = omp_get_wtime();
    fn();
    best = std::min(best, omp_get_wtime() - t0);
  }
  return best;
}

void report(const char* name, double serial_s, double parallel_s) {
  std::printf("%-28s serial %9.3f ms   parallel %9.3f ms   speedup %.2fx\n",
              name, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  {  // Pauli-sum application, 18-qubit chain Hamiltonian
    const int n = 18;
    const PauliSum h = build_tfim(n, 1.0, 2.0, true);
    const auto terms = kernels::mask_terms(h);
    const auto in = random_state(n, 11);
    std::vector<cplx> out(in.size());
    const double ts = time_best_of(3, [&] {
      kernels::serial::apply_pauli_sum(terms, 0.5, in, out);
    });
    const double tp = time_best_of(3, [&] {
      kernels::apply_pauli_sum(terms, 0.5, in, out);
    });
    report("apply_pauli_sum n=18", ts, tp);
  }

  {  // Trotter-style rotation sweep
    const int n = 18;
    const PauliSum h = build_tfim(n, 1.0, 2.0, true);
    const auto terms = kernels::mask_terms(h);
    auto amps_s = random_state(n, 12);
    auto amps_p = amps_s;
    const double ts = time_best_of(3, [&] {
      for (const auto& t : terms)
        kernels::serial::apply_pauli_rotation(0.01 * t.coeff, t, amps_s);
    });
    const double tp = time_best_of(3, [&] {
      for (const auto& t : terms)
        kernels::apply_pauli_rotation(0.01 * t.coeff, t, amps_p);
    });
    report("pauli_rotation sweep n=18", ts, tp);
  }

  {  // Density-matrix controlled gate + channels on 9 qubits
    const int n = 9;
    auto rho_s = random_state(2 * n, 13);  // 2^18 entries = 512 x 512
    auto rho_p = rho_s;
    const kernels::Gate1q had = {{{0.7071067811865476, 0.7071067811865476},
                                  {0.7071067811865476, -0.7071067811865476}}};
    const double ts = time_best_of(3, [&] {
      kernels::serial::density_apply_controlled_1q(rho_s, n, had, 3, 1u << 8);
      for (int q = 0; q < n; ++q)
        kernels::serial::density_bit_flip(rho_s, n, q, 1e-4);
    });
    const double tp = time_best_of(3, [&] {
      kernels::density_apply_controlled_1q(rho_p, n, had, 3, 1u << 8);
      for (int q = 0; q < n; ++q) kernels::density_bit_flip(rho_p, n, q, 1e-4);
    });
    report("density gate+channels n=9", ts, tp);
  }

  return 0;
}
