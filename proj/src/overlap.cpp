#include "qgf/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

#include "qgf/kernels.hpp"

namespace qgf {

using nlohmann::json;

namespace {

json complex_array_to_json(const std::vector<cplx>& v) {
  json out = json::array();
  for (const cplx& z : v) out.push_back({z.real(), z.imag()});
  return out;
}

std::vector<cplx> complex_array_from_json(const json& j) {
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& e : j) out.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  return out;
}

long shots_for_entry(const TableMode& mode, int k) {
  if (mode.shots_schedule.empty()) return mode.shots;
  if (static_cast<std::size_t>(k) >= mode.shots_schedule.size())
    throw ParameterError("shots schedule shorter than table");
  return std::max<long>(1, mode.shots_schedule[static_cast<std::size_t>(k)]);
}

/// Per-entry raw measurements of one evolved state: the plain overlap and
/// one overlap per local term (Hadamard test with a trailing controlled
/// Pauli string, all of modulus <= 1).
struct EntryProbe {
  cplx d;
  std::vector<cplx> per_term;
};

EntryProbe probe_state(const StateVector& psi0,
                       const std::vector<StateVector>& term_states,
                       const StateVector& evolved) {
  EntryProbe e;
  e.d = psi0.inner(evolved);
  e.per_term.reserve(term_states.size());
  for (const auto& hl_psi : term_states) e.per_term.push_back(hl_psi.inner(evolved));
  return e;
}

/// h_l |psi0> for every term (h_l Hermitian), reused across all k.
std::vector<StateVector> term_probe_states(const PauliSum& op,
                                           const StateVector& psi0) {
  std::vector<StateVector> out;
  out.reserve(op.term_count());
  for (const auto& term : op.terms()) {
    const auto mt = kernels::mask_term(1.0, term.string);
    std::vector<cplx> amps(psi0.dim());
    kernels::apply_pauli_sum(std::span<const kernels::MaskedTerm>(&mt, 1), 0.0,
                             psi0.amplitudes(), amps);
    out.push_back(StateVector::from_amplitudes(psi0.n_qubits(), std::move(amps)));
  }
  return out;
}

cplx assemble_numerator(const PauliSum& op, const EntryProbe& e) {
  cplx acc = op.identity_offset() * e.d;
  auto terms = op.terms();
  for (std::size_t l = 0; l < terms.size(); ++l)
    acc += terms[l].coeff * e.per_term[l];
  return acc;
}

EntryProbe sample_probe(const EntryProbe& truth, long shots, std::uint64_t base,
                        int k) {
  EntryProbe out;
  out.d = sample_hadamard_test(truth.d, shots, Rng::derive(base, k, 0));
  out.per_term.resize(truth.per_term.size());
  for (std::size_t l = 0; l < truth.per_term.size(); ++l)
    out.per_term[l] = sample_hadamard_test(truth.per_term[l], shots,
                                           Rng::derive(base, k, l + 1));
  return out;
}

/// Fills table entries for k in [k_from, 2 m_y]. `numerator_op` is the
/// operator of the numerator row; when it is the Hamiltonian itself and no
/// sampling is requested, both rows come straight from the eigenbasis.
void fill_entries(OverlapTable& table, const PauliSum& h,
                  const PauliSum& numerator_op, const StateVector& psi,
                  const Evolver& evolver, int k_from,
                  bool numerator_is_hamiltonian) {
  const int k_max = 2 * table.m_y;
  const bool sampled = table.mode.kind == TableModeKind::Sampled;

  if (evolver.kind == EvolverKind::Exact && numerator_is_hamiltonian &&
      !sampled) {
    // Oracle path: both rows directly in the eigenbasis.
    const Spectrum spec = diagonalize(h);
    const auto dim = spec.eigenvalues.size();
    Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), dim);
    const Eigen::VectorXcd a = spec.eigenvectors.adjoint() * v;
    std::vector<double> prob(dim), lam(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      prob[j] = std::norm(a[j]);
      lam[j] = spec.eigenvalues[j];
    }
#pragma omp parallel for schedule(static)
    for (int k = k_from; k <= k_max; ++k) {
      std::complex<long double> dk{}, nk{};
      const double t = k * table.delta_y;
      for (Eigen::Index j = 0; j < dim; ++j) {
        const std::complex<long double> ph = std::exp(cplx{0.0, -lam[j] * t});
        dk += static_cast<long double>(prob[j]) * ph;
        nk += static_cast<long double>(prob[j] * lam[j]) * ph;
      }
      table.d[static_cast<std::size_t>(k)] = static_cast<cplx>(dk);
      table.n_h[static_cast<std::size_t>(k)] = static_cast<cplx>(nk);
    }
    return;
  }

  const auto term_states = term_probe_states(numerator_op, psi);

  if (evolver.kind == EvolverKind::Exact) {
    const Spectrum spec = diagonalize(h);
#pragma omp parallel for schedule(dynamic)
    for (int k = k_from; k <= k_max; ++k) {
      const StateVector evolved = exact_evolve(spec, k * table.delta_y, psi);
      EntryProbe probe = probe_state(psi, term_states, evolved);
      long shots = 0;
      if (sampled) {
        shots = shots_for_entry(table.mode, k);
        probe = sample_probe(probe, shots, table.mode.seed, k);
      }
      table.d[static_cast<std::size_t>(k)] = probe.d;
      table.n_h[static_cast<std::size_t>(k)] = assemble_numerator(numerator_op, probe);
      table.shots_per_entry[static_cast<std::size_t>(k)] = shots;
    }
    return;
  }

  // Trotterized evolver: states are built incrementally, one slice per k.
  TrotterConfig cfg = evolver.trotter;
  cfg.delta_y = table.delta_y;
  StateVector evolved = psi;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) evolved = trotter_evolve(h, table.delta_y, cfg, evolved);
    if (k < k_from) continue;
    EntryProbe probe = probe_state(psi, term_states, evolved);
    long shots = 0;
    if (sampled) {
      shots = shots_for_entry(table.mode, k);
      probe = sample_probe(probe, shots, table.mode.seed, k);
    }
    table.d[static_cast<std::size_t>(k)] = probe.d;
    table.n_h[static_cast<std::size_t>(k)] = assemble_numerator(numerator_op, probe);
    table.shots_per_entry[static_cast<std::size_t>(k)] = shots;
  }
}

OverlapTable make_table_shell(double delta_y, int m_y, const TableMode& mode) {
  if (delta_y <= 0.0) throw ParameterError("compute_table: delta_y must be positive");
  if (m_y < 0) throw ParameterError("compute_table: m_y must be >= 0");
  OverlapTable t;
  t.delta_y = delta_y;
  t.m_y = m_y;
  t.mode = mode;
  t.d.assign(static_cast<std::size_t>(2 * m_y + 1), cplx{});
  t.n_h.assign(static_cast<std::size_t>(2 * m_y + 1), cplx{});
  t.shots_per_entry.assign(static_cast<std::size_t>(2 * m_y + 1), 0);
  return t;
}

void check_state(const PauliSum& h, const StateVector& psi) {
  if (h.n_qubits() != psi.n_qubits())
    throw DimensionError("table: operator and state sizes differ");
  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw ParameterError("table: initial state is not normalized");
}

}  // namespace

OverlapTable compute_table(const PauliSum& h, const StateVector& psi,
                           double delta_y, int m_y, const TableMode& mode,
                           const Evolver& evolver) {
  if (mode.kind == TableModeKind::Noisy)
    throw ParameterError("noisy tables are built by noisy_overlap_table");
  if (mode.kind == TableModeKind::Sampled && mode.shots < 1 &&
      mode.shots_schedule.empty())
    throw ParameterError("sampled mode needs shots >= 1");
  check_state(h, psi);
  OverlapTable t = make_table_shell(delta_y, m_y, mode);
  fill_entries(t, h, h, psi, evolver, 0, true);
  return t;
}

OverlapTable observable_table(const PauliSum& a, const PauliSum& h,
                              const StateVector& psi, double delta_y, int m_y,
                              const TableMode& mode, const Evolver& evolver) {
  if (mode.kind == TableModeKind::Noisy)
    throw ParameterError("noisy tables are built by noisy_overlap_table");
  if (a.n_qubits() != h.n_qubits())
    throw DimensionError("observable_table: register mismatch");
  check_state(h, psi);
  OverlapTable t = make_table_shell(delta_y, m_y, mode);
  fill_entries(t, h, a, psi, evolver, 0, false);
  return t;
}

OverlapTable extend_table(const OverlapTable& t, int new_m_y, const PauliSum& h,
                          const StateVector& psi, const Evolver& evolver) {
  if (t.mode.kind == TableModeKind::Noisy)
    throw ParameterError("noisy tables extend through their density-matrix builder");
  if (new_m_y < t.m_y)
    throw ParameterError("extend_table: new cutoff below existing one");
  if (new_m_y == t.m_y) return t;
  check_state(h, psi);
  OverlapTable out = make_table_shell(t.delta_y, new_m_y, t.mode);
  const std::size_t keep = t.d.size();
  std::copy_n(t.d.begin(), keep, out.d.begin());
  std::copy_n(t.n_h.begin(), keep, out.n_h.begin());
  std::copy_n(t.shots_per_entry.begin(), keep, out.shots_per_entry.begin());
  fill_entries(out, h, h, psi, evolver, static_cast<int>(keep), true);
  return out;
}

cplx sample_hadamard_test(cplx true_value, long shots, std::uint64_t seed) {
  if (shots < 1) throw ParameterError("sample_hadamard_test: shots must be >= 1");
  const double p_re = std::clamp((1.0 + true_value.real()) / 2.0, 0.0, 1.0);
  const double p_im = std::clamp((1.0 + true_value.imag()) / 2.0, 0.0, 1.0);
  Rng rng(seed);
  long hits_re = 0, hits_im = 0;
  for (long i = 0; i < shots; ++i) hits_re += rng.bernoulli(p_re) ? 1 : 0;
  for (long i = 0; i < shots; ++i) hits_im += rng.bernoulli(p_im) ? 1 : 0;
  const double inv = 1.0 / static_cast<double>(shots);
  return {2.0 * hits_re * inv - 1.0, 2.0 * hits_im * inv - 1.0};
}

std::string OverlapTable::to_json() const {
  json j;
  j["delta_y"] = delta_y;
  j["m_y"] = m_y;
  json jm;
  switch (mode.kind) {
    case TableModeKind::Exact: jm["kind"] = "exact"; break;
    case TableModeKind::Sampled:
      jm["kind"] = "sampled";
      jm["shots"] = mode.shots;
      jm["seed"] = mode.seed;
      break;
    case TableModeKind::Noisy:
      jm["kind"] = "noisy";
      jm["channel"] = mode.channel;
      jm["p"] = mode.p;
      jm["steps_per_slice"] = mode.steps_per_slice;
      break;
  }
  j["mode"] = jm;
  j["d"] = complex_array_to_json(d);
  j["n_h"] = complex_array_to_json(n_h);
  j["shots_per_entry"] = shots_per_entry;
  return j.dump(2);
}

OverlapTable OverlapTable::from_json(const std::string& text) {
  json j = json::parse(text);
  OverlapTable t;
  t.delta_y = j.at("delta_y").get<double>();
  t.m_y = j.at("m_y").get<int>();
  const json& jm = j.at("mode");
  const std::string kind = jm.at("kind").get<std::string>();
  if (kind == "exact") {
    t.mode.kind = TableModeKind::Exact;
  } else if (kind == "sampled") {
    t.mode.kind = TableModeKind::Sampled;
    t.mode.shots = jm.at("shots").get<long>();
    t.mode.seed = jm.at("seed").get<std::uint64_t>();
  } else if (kind == "noisy") {
    t.mode.kind = TableModeKind::Noisy;
    t.mode.channel = jm.at("channel").get<std::string>();
    t.mode.p = jm.at("p").get<double>();
    t.mode.steps_per_slice = jm.at("steps_per_slice").get<int>();
  } else {
    throw ParameterError("unknown table mode: " + kind);
  }
  t.d = complex_array_from_json(j.at("d"));
  t.n_h = complex_array_from_json(j.at("n_h"));
  t.shots_per_entry = j.at("shots_per_entry").get<std::vector<long>>();
  if (t.d.size() != static_cast<std::size_t>(2 * t.m_y + 1) ||
      t.n_h.size() != t.d.size())
    throw ParameterError("table entry count inconsistent with m_y");
  return t;
}

void OverlapTable::save(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw Error("cannot write table file " + file.string());
  out << to_json() << '\n';
}

OverlapTable OverlapTable::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot read table file " + file.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json(text);
}

}  // namespace qgf
