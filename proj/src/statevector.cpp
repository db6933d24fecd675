#include "qgf/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "qgf/kernels.hpp"

namespace qgf {

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw ParameterError("StateVector needs n >= 1 qubits");
  if (n_qubits > 30) throw ResourceError("StateVector register too large");
  amps_.assign(std::size_t{1} << n_qubits, cplx{});
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(int n_qubits, std::vector<cplx> amps) {
  StateVector s(n_qubits);
  if (amps.size() != s.dim())
    throw DimensionError("amplitude count is not 2^n");
  s.amps_ = std::move(amps);
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const cplx& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw UnderflowAnnihilated("cannot normalize the zero state");
  for (cplx& a : amps_) a /= n;
}

cplx StateVector::inner(const StateVector& other) const {
  if (other.n_qubits_ != n_qubits_)
    throw DimensionError("inner: state sizes differ");
  cplx acc{};
  for (std::size_t i = 0; i < amps_.size(); ++i)
    acc += std::conj(amps_[i]) * other.amps_[i];
  return acc;
}

StateVector exact_evolve(const Spectrum& spec, double t, const StateVector& psi) {
  const auto dim = static_cast<Eigen::Index>(psi.dim());
  if (spec.eigenvalues.size() != dim)
    throw DimensionError("exact_evolve: spectrum and state sizes differ");
  Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), dim);
  Eigen::VectorXcd coeffs = spec.eigenvectors.adjoint() * v;
  kernels::apply_phases(
      std::span<const double>(spec.eigenvalues.data(), spec.eigenvalues.size()),
      t, std::span<cplx>(coeffs.data(), coeffs.size()));
  Eigen::VectorXcd out = spec.eigenvectors * coeffs;
  return StateVector::from_amplitudes(
      psi.n_qubits(), std::vector<cplx>(out.data(), out.data() + dim));
}

StateVector trotter_evolve(const PauliSum& h, double t, const TrotterConfig& cfg,
                           const StateVector& psi) {
  if (h.n_qubits() != psi.n_qubits())
    throw DimensionError("trotter_evolve: operator and state sizes differ");
  if (cfg.steps_per_slice < 1 || cfg.delta_y <= 0.0)
    throw ParameterError("trotter_evolve: bad TrotterConfig");
  StateVector out = psi;
  if (t == 0.0) return out;
  const long slices = std::max<long>(1, std::lround(std::abs(t) / cfg.delta_y));
  const long steps = slices * cfg.steps_per_slice;
  const double dt = t / static_cast<double>(steps);
  const auto terms = kernels::mask_terms(h);
  auto amps = out.amplitudes();
  for (long s = 0; s < steps; ++s) {
    for (const auto& term : terms)
      kernels::apply_pauli_rotation(term.coeff * dt, term, amps);
  }
  if (h.identity_offset() != 0.0) {
    const cplx phase = std::exp(cplx{0.0, -h.identity_offset() * t});
    for (cplx& a : amps) a *= phase;
  }
  return out;
}

StateVector prepare_ghz_z(int n) {
  StateVector s(n);
  const double r = 1.0 / std::numbers::sqrt2;
  auto a = s.amplitudes();
  a[0] = r;
  a[a.size() - 1] = (n % 2 == 0) ? r : -r;  // Z^n flips the all-ones sign
  return s;
}

StateVector prepare_x_ground(int n) {
  StateVector s(n);
  const double scale = std::pow(2.0, -0.5 * n);
  auto a = s.amplitudes();
  for (std::size_t b = 0; b < a.size(); ++b) {
    const int ones = std::popcount(b);
    a[b] = (ones & 1) ? -scale : scale;
  }
  return s;
}

StateVector prepare_qaoa_layers(int n, std::span<const double> betas,
                                std::span<const double> gammas) {
  if (n < 2) throw ParameterError("qaoa layers need n >= 2 (ZZ bonds)");
  if (betas.size() != gammas.size())
    throw ParameterError("qaoa: angle lists differ in length");
  StateVector s(n);
  auto amps = s.amplitudes();
  std::vector<kernels::MaskedTerm> zz, xs;
  for (int i = 0; i < n; ++i) {
    PauliString b(n);
    b.set(i, Pauli::Z);
    b.set((i + 1) % n, Pauli::Z);
    zz.push_back(kernels::mask_term(1.0, b));
    PauliString x(n);
    x.set(i, Pauli::X);
    xs.push_back(kernels::mask_term(1.0, x));
  }
  for (std::size_t layer = 0; layer < betas.size(); ++layer) {
    for (const auto& term : xs)
      kernels::apply_pauli_rotation(gammas[layer], term, amps);
    for (const auto& term : zz)
      kernels::apply_pauli_rotation(betas[layer], term, amps);
  }
  return s;
}

StateVector prepare_qaoa_random(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> betas(n), gammas(n);
  for (int j = 0; j < n; ++j) {
    betas[j] = rng.uniform(-std::numbers::pi, std::numbers::pi);
    gammas[j] = rng.uniform(-std::numbers::pi, std::numbers::pi);
  }
  return prepare_qaoa_layers(n, betas, gammas);
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(a.inner(b));
}

}  // namespace qgf
