#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qgf/common.hpp"
#include "qgf/pauli.hpp"
#include "qgf/statevector.hpp"

namespace qgf {

enum class EvolverKind { Exact, Trotter };

/// How a table's time-evolved states are produced: the eigenbasis (exact) or
/// the first-order product formula.
struct Evolver {
  EvolverKind kind = EvolverKind::Exact;
  TrotterConfig trotter{};

  static Evolver exact() { return {EvolverKind::Exact, {}}; }
  static Evolver trotterized(int steps_per_slice) {
    return {EvolverKind::Trotter, {0.0, steps_per_slice}};
  }
};

enum class TableModeKind { Exact, Sampled, Noisy };

/// Measurement model of a table. Exact tables carry true expectation values;
/// sampled tables push every value through a simulated Hadamard test with a
/// finite shot budget; noisy tables come from the density-matrix protocol
/// (see noise.hpp) and record its channel settings here.
struct TableMode {
  TableModeKind kind = TableModeKind::Exact;
  // sampled
  long shots = 0;
  std::uint64_t seed = 0;
  std::vector<long> shots_schedule;  // optional per-k override
  // noisy
  std::string channel;  // "bit_flip" | "phase_flip"
  double p = 0.0;
  int steps_per_slice = 0;

  static TableMode exact() { return {}; }
  static TableMode sampled(long shots, std::uint64_t seed) {
    TableMode m;
    m.kind = TableModeKind::Sampled;
    m.shots = shots;
    m.seed = seed;
    return m;
  }
};

/// Cached overlaps D_k = <psi| e^{-i k dy H} |psi> and
/// N_k = <psi| H e^{-i k dy H} |psi> for k = 0..2 m_y. Negative k are never
/// stored; Hermiticity gives D_{-k} = conj(D_k), N_{-k} = conj(N_k).
class OverlapTable {
 public:
  double delta_y = 0.0;
  int m_y = 0;
  TableMode mode;
  std::vector<cplx> d;
  std::vector<cplx> n_h;
  std::vector<long> shots_per_entry;

  std::size_t entries() const { return d.size(); }
  double phi_m() const { return m_y * delta_y; }

  std::string to_json() const;
  static OverlapTable from_json(const std::string& text);
  void save(const std::filesystem::path& file) const;
  static OverlapTable load(const std::filesystem::path& file);
};

/// Builds the table for k = 0..2 m_y. Exact mode stores expectation values
/// from the chosen evolver; sampled mode additionally pushes each value
/// through sample_hadamard_test, assembling N_k per local term (the
/// physical protocol) with per-(k, term, part) derived seeds, so entries are
/// reproducible regardless of evaluation order.
OverlapTable compute_table(const PauliSum& h, const StateVector& psi,
                           double delta_y, int m_y, const TableMode& mode,
                           const Evolver& evolver);

/// Same denominator row with the numerator row replaced by
/// <psi| A e^{-i k dy H} |psi> for an observable A.
OverlapTable observable_table(const PauliSum& a, const PauliSum& h,
                              const StateVector& psi, double delta_y, int m_y,
                              const TableMode& mode, const Evolver& evolver);

/// Grows a table to a larger cutoff, reusing entries k <= 2 m_y bitwise and
/// computing only the new ones. Inputs must match the original build.
OverlapTable extend_table(const OverlapTable& t, int new_m_y, const PauliSum& h,
                          const StateVector& psi, const Evolver& evolver);

/// Simulated Hadamard test of a complex overlap with |value| <= 1: the real
/// part is the mean of `shots` Bernoulli draws at success probability
/// (1+Re)/2, the imaginary part the mean of an independent `shots` draws at
/// (1+Im)/2 (ancilla prepared in (|0> - i|1>)/sqrt(2)). Unbiased and
/// deterministic per seed.
cplx sample_hadamard_test(cplx true_value, long shots, std::uint64_t seed);

/// Table construction abstraction used by iterative deepening so density-
/// matrix-backed tables (noise.hpp) plug into the same schedule loop.
class TableBuilder {
 public:
  virtual ~TableBuilder() = default;
  virtual OverlapTable build(int m_y) const = 0;
  virtual OverlapTable extend(const OverlapTable& t, int new_m_y) const = 0;
};

/// Exact- or sampled-mode builder over a fixed Hamiltonian and initial state.
class StateTableBuilder final : public TableBuilder {
 public:
  StateTableBuilder(const PauliSum& h, StateVector psi, double delta_y,
                    TableMode mode, Evolver evolver)
      : h_(h), psi_(std::move(psi)), delta_y_(delta_y), mode_(std::move(mode)),
        evolver_(evolver) {}

  OverlapTable build(int m_y) const override {
    return compute_table(h_, psi_, delta_y_, m_y, mode_, evolver_);
  }
  OverlapTable extend(const OverlapTable& t, int new_m_y) const override {
    return extend_table(t, new_m_y, h_, psi_, evolver_);
  }

 private:
  PauliSum h_;
  StateVector psi_;
  double delta_y_;
  TableMode mode_;
  Evolver evolver_;
};

}  // namespace qgf
