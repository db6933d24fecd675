#include "qgf/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qgf/kernels.hpp"

namespace qgf {

namespace {

using kernels::Gate1q;

Gate1q rotation_z(double theta) {
  return {{{std::exp(cplx{0.0, -theta}), 0.0}, {0.0, std::exp(cplx{0.0, theta})}}};
}

Gate1q rotation_x(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {{{c, cplx{0.0, -s}}, {cplx{0.0, -s}, c}}};
}

Gate1q pauli_gate(Pauli p) {
  switch (p) {
    case Pauli::X: return {{{0.0, 1.0}, {1.0, 0.0}}};
    case Pauli::Y: return {{{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}};
    case Pauli::Z: return {{{1.0, 0.0}, {0.0, -1.0}}};
    default: return {{{1.0, 0.0}, {0.0, 1.0}}};
  }
}

const Gate1q kHadamard = {{{std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0},
                           {std::numbers::sqrt2 / 2.0, -std::numbers::sqrt2 / 2.0}}};
const Gate1q kSdag = {{{1.0, 0.0}, {0.0, cplx{0.0, -1.0}}}};
const Gate1q kX = pauli_gate(Pauli::X);

/// One elementary gate of the controlled circuit: a single-qubit unitary
/// plus a control mask (always containing the ancilla).
struct ElementaryGate {
  Gate1q u;
  int target = 0;
  std::uint64_t ctrl = 0;
};

/// Decomposes one controlled Trotter step of the traceless terms into
/// elementary gates. Z-type strings of any weight become a CNOT ladder onto
/// the last site, a controlled-Rz, and the reversed ladder, every element
/// carrying the ancilla control; single-qubit terms become one controlled
/// rotation.
std::vector<ElementaryGate> controlled_step_gates(const PauliSum& h, double dt,
                                                  int ancilla) {
  std::vector<ElementaryGate> gates;
  const std::uint64_t anc_bit = std::uint64_t{1} << ancilla;
  for (const auto& term : h.terms()) {
    const double theta = term.coeff * dt;
    std::vector<int> sites;
    bool all_z = true;
    for (int q = 0; q < term.string.n_qubits(); ++q) {
      const Pauli p = term.string.op(q);
      if (p == Pauli::I) continue;
      sites.push_back(q);
      if (p != Pauli::Z) all_z = false;
    }
    if (sites.size() == 1) {
      const Pauli p = term.string.op(sites[0]);
      Gate1q u;
      if (p == Pauli::Z) {
        u = rotation_z(theta);
      } else if (p == Pauli::X) {
        u = rotation_x(theta);
      } else {  // e^{-i theta Y}
        const double c = std::cos(theta), s = std::sin(theta);
        u = {{{c, -s}, {s, c}}};
      }
      gates.push_back({u, sites[0], anc_bit});
      continue;
    }
    if (!all_z)
      throw ParameterError(
          "noisy protocol supports Z-type strings and single-qubit terms only");
    const int last = sites.back();
    for (std::size_t i = 0; i + 1 < sites.size(); ++i)
      gates.push_back({kX, last, anc_bit | (std::uint64_t{1} << sites[i])});
    gates.push_back({rotation_z(theta), last, anc_bit});
    for (std::size_t i = sites.size() - 1; i-- > 0;)
      gates.push_back({kX, last, anc_bit | (std::uint64_t{1} << sites[i])});
  }
  return gates;
}

void apply_channel_all(DensityMatrix& rho, const NoiseModel& m) {
  if (m.p == 0.0) return;
  for (int q = 0; q < rho.n_qubits(); ++q) {
    if (m.channel == NoiseChannel::BitFlip)
      kernels::density_bit_flip(rho.data(), rho.n_qubits(), q, m.p);
    else
      kernels::density_phase_flip(rho.data(), rho.n_qubits(), q, m.p);
  }
}

void noisy_gate(DensityMatrix& rho, const ElementaryGate& g, const NoiseModel& m) {
  kernels::density_apply_controlled_1q(rho.data(), rho.n_qubits(), g.u, g.target,
                                       g.ctrl);
  apply_channel_all(rho, m);
}

/// <Z_ancilla> after the readout branch: S^dag (imaginary part only), then
/// Hadamard, channel after each.
double ancilla_readout(DensityMatrix rho, int ancilla, const NoiseModel& m,
                       bool imaginary_part) {
  if (imaginary_part) noisy_gate(rho, {kSdag, ancilla, 0}, m);
  noisy_gate(rho, {kHadamard, ancilla, 0}, m);
  const std::uint64_t anc_bit = std::uint64_t{1} << ancilla;
  double z = 0.0;
  for (std::size_t b = 0; b < rho.dim(); ++b)
    z += (b & anc_bit) ? -rho.at(b, b).real() : rho.at(b, b).real();
  return z;
}

cplx readout_overlap(const DensityMatrix& rho, int ancilla, const NoiseModel& m) {
  return {ancilla_readout(rho, ancilla, m, false),
          ancilla_readout(rho, ancilla, m, true)};
}

void fill_noisy_entries(OverlapTable& table, const PauliSum& h,
                        const StateVector& psi, const TrotterConfig& cfg,
                        const NoiseModel& model, int k_from) {
  const int n = h.n_qubits();
  const int ancilla = n;
  if (n + 1 > 9)
    throw ResourceError("noisy protocol capped at 9 total qubits");
  const std::uint64_t anc_bit = std::uint64_t{1} << ancilla;

  // Ancilla in |+>, register in psi.
  std::vector<cplx> amps(std::size_t{1} << (n + 1));
  const double r = 1.0 / std::numbers::sqrt2;
  for (std::size_t b = 0; b < psi.dim(); ++b) {
    amps[b] = r * psi[b];
    amps[b | anc_bit] = r * psi[b];
  }
  DensityMatrix rho =
      DensityMatrix::pure(StateVector::from_amplitudes(n + 1, std::move(amps)));

  const double dt = table.delta_y / cfg.steps_per_slice;
  const auto step_gates = controlled_step_gates(h, dt, ancilla);

  // Controlled Pauli strings of the numerator terms, one controlled
  // single-qubit Pauli per non-identity site.
  std::vector<std::vector<ElementaryGate>> term_gates;
  for (const auto& term : h.terms()) {
    std::vector<ElementaryGate> gates;
    for (int q = 0; q < n; ++q) {
      const Pauli p = term.string.op(q);
      if (p != Pauli::I) gates.push_back({pauli_gate(p), q, anc_bit});
    }
    term_gates.push_back(std::move(gates));
  }

  const int k_max = 2 * table.m_y;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) {
      for (int s = 0; s < cfg.steps_per_slice; ++s)
        for (const auto& g : step_gates) noisy_gate(rho, g, model);
    }
    if (k < k_from) continue;
    // The identity offset is classical bookkeeping: a phase on D_k and an
    // offset*D_k contribution to N_k.
    const cplx phase =
        std::exp(cplx{0.0, -h.identity_offset() * k * table.delta_y});
    const cplx d_raw = readout_overlap(rho, ancilla, model);
    cplx num = h.identity_offset() * d_raw;
    auto terms = h.terms();
    for (std::size_t l = 0; l < terms.size(); ++l) {
      DensityMatrix probe = rho;
      for (const auto& g : term_gates[l]) noisy_gate(probe, g, model);
      num += terms[l].coeff * readout_overlap(probe, ancilla, model);
    }
    table.d[static_cast<std::size_t>(k)] = phase * d_raw;
    table.n_h[static_cast<std::size_t>(k)] = phase * num;
  }
}

}  // namespace

DensityMatrix::DensityMatrix(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw ParameterError("DensityMatrix needs n >= 1 qubits");
  if (n_qubits > 13) throw ResourceError("DensityMatrix register too large");
  m_.assign((std::size_t{1} << n_qubits) * (std::size_t{1} << n_qubits), cplx{});
  m_[0] = 1.0;
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  DensityMatrix rho(psi.n_qubits());
  const std::size_t dim = rho.dim();
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      rho.m_[r * dim + c] = psi[r] * std::conj(psi[c]);
  return rho;
}

double DensityMatrix::trace_real() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += at(i, i).real();
  return t;
}

double DensityMatrix::hermiticity_error() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = r; c < dim(); ++c)
      worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
  return worst;
}

void NoiseModel::validate() const {
  if (p < 0.0 || p > 1.0)
    throw ParameterError("noise probability must lie in [0, 1]");
}

NoiseChannel channel_from_name(const std::string& name) {
  if (name == "bit_flip") return NoiseChannel::BitFlip;
  if (name == "phase_flip") return NoiseChannel::PhaseFlip;
  throw ParameterError("unknown noise channel: " + name);
}

std::string channel_name(NoiseChannel c) {
  return c == NoiseChannel::BitFlip ? "bit_flip" : "phase_flip";
}

DensityMatrix apply_channel(const DensityMatrix& rho, const NoiseModel& m,
                            int qubit) {
  m.validate();
  if (qubit < 0 || qubit >= rho.n_qubits())
    throw ParameterError("apply_channel: qubit index out of range");
  DensityMatrix out = rho;
  if (m.channel == NoiseChannel::BitFlip)
    kernels::density_bit_flip(out.data(), out.n_qubits(), qubit, m.p);
  else
    kernels::density_phase_flip(out.data(), out.n_qubits(), qubit, m.p);
  return out;
}

OverlapTable noisy_overlap_table(const PauliSum& h, const StateVector& psi,
                                 double delta_y, int m_y,
                                 const TrotterConfig& cfg, const NoiseModel& m) {
  m.validate();
  if (cfg.steps_per_slice < 1)
    throw ParameterError("noisy table: steps_per_slice must be >= 1");
  if (delta_y <= 0.0) throw ParameterError("noisy table: delta_y must be positive");
  if (m_y < 0) throw ParameterError("noisy table: m_y must be >= 0");
  if (h.n_qubits() != psi.n_qubits())
    throw DimensionError("noisy table: operator and state sizes differ");

  OverlapTable t;
  t.delta_y = delta_y;
  t.m_y = m_y;
  t.mode.kind = TableModeKind::Noisy;
  t.mode.channel = channel_name(m.channel);
  t.mode.p = m.p;
  t.mode.steps_per_slice = cfg.steps_per_slice;
  t.d.assign(static_cast<std::size_t>(2 * m_y + 1), cplx{});
  t.n_h.assign(static_cast<std::size_t>(2 * m_y + 1), cplx{});
  t.shots_per_entry.assign(static_cast<std::size_t>(2 * m_y + 1), 0);
  fill_noisy_entries(t, h, psi, cfg, m, 0);
  return t;
}

double zne_extrapolate(std::span<const double> scales,
                       std::span<const double> values) {
  if (scales.size() != values.size())
    throw ParameterError("zne: scales and values differ in length");
  if (scales.size() < 2) throw ParameterError("zne: need at least 2 scale points");
  for (std::size_t i = 0; i < scales.size(); ++i)
    for (std::size_t j = i + 1; j < scales.size(); ++j)
      if (scales[i] == scales[j]) throw ParameterError("zne: duplicate scales");
  // Lagrange interpolation evaluated at scale 0.
  double acc = 0.0;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    double basis = 1.0;
    for (std::size_t j = 0; j < scales.size(); ++j) {
      if (j == i) continue;
      basis *= -scales[j] / (scales[i] - scales[j]);
    }
    acc += values[i] * basis;
  }
  return acc;
}

OverlapTable NoisyTableBuilder::extend(const OverlapTable& t, int new_m_y) const {
  if (new_m_y < t.m_y)
    throw ParameterError("extend: new cutoff below existing one");
  if (new_m_y == t.m_y) return t;
  OverlapTable out = t;
  out.m_y = new_m_y;
  out.d.resize(static_cast<std::size_t>(2 * new_m_y + 1), cplx{});
  out.n_h.resize(static_cast<std::size_t>(2 * new_m_y + 1), cplx{});
  out.shots_per_entry.resize(static_cast<std::size_t>(2 * new_m_y + 1), 0);
  fill_noisy_entries(out, h_, psi_, cfg_, model_, static_cast<int>(t.d.size()));
  return out;
}

}  // namespace qgf
