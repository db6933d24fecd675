#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qgf/common.hpp"
#include "qgf/noise.hpp"
#include "qgf/overlap.hpp"

namespace qgf {

/// Resolved run configuration. Parsed from a JSON file with defaults filled
/// in and every field validated; errors name the offending field.
struct ExperimentConfig {
  struct Model {
    int n = 4;
    double coupling_j = 1.0;
    double field_g = 2.0;
    bool periodic = true;
    double shift = 0.0;
    std::string hamiltonian_file;  // optional PauliSum text, overrides TFIM
  } model;

  struct InitialState {
    std::string kind = "qaoa_random";  // ghz_z | x_ground | qaoa_random
    std::uint64_t seed = 1;
  } initial_state;

  struct Filter {
    double delta_y = 0.16;
    int m_y = 50;
    std::vector<int> m_y_schedule;  // iterate stages; defaults from m_y
  } filter;

  struct EvolverCfg {
    std::string kind = "exact";  // exact | trotter
    int steps_per_slice = 20;
  } evolver;

  struct Mode {
    std::string kind = "exact";  // exact | sampled | noisy
    long shots = 100000;
    std::uint64_t seed = 7;
    bool weighted_shots = false;  // Gaussian per-k schedule from resources
  } mode;

  struct ScanCfg {
    std::string mu_anchor = "absolute";  // absolute | lambda0
    double mu_min = -1.0;
    double mu_max = 0.0;
    double mu_step = 0.1;
    double isq_min = 0.1;
    double isq_max = 3.0;
    double isq_step = 0.1;
  } scan;

  struct NoiseCfg {
    std::string channel = "both";  // bit_flip | phase_flip | both
    double p = 1e-4;
    int steps_per_slice = 20;
    std::vector<double> zne_scales = {1.0, 2.0};
    std::vector<int> m_y_stages = {10, 15, 20, 25, 30};
  } noise;

  struct CvCfg {
    double s = 1.0;
    int fock_cutoff = 50;
    std::string schedule_start = "auto";  // auto (= -lambda0) | absolute
    double start = 0.0;
    double step = 0.5;
    int count = 8;
    std::vector<double> schedule;  // explicit shifts; overrides start/step
  } cv;

  struct ResponseCfg {
    double lambda_min = 0.0;
    double lambda_max = 6.0;
    double lambda_step = 0.02;
    struct Set {
      double mu = 0.0;
      double inv_sigma_sq = 2.0;
      double phi_m = 8.0;
      double delta_y = 0.16;
    };
    std::vector<Set> sets;
    bool cosine = false;
    double cosine_big_l = 0.0;
    double cosine_delta = 0.0;
    double cosine_e_center = 0.0;
    double cosine_x = 0.0;
  } response;

  struct BudgetCfg {
    double a0_sq = 0.01;
    double epsilon = 1e-2;
    double sigma_sq = 0.5;
    double lambda_m = 2.0;
    double big_l = 16.0;
    double delta_gap = 1.0;
    double delta_y = 0.16;
    double eps_term = 1e-3;
  } budget;

  std::string output_directory = "out";

  /// Parses JSON text, applying defaults and validating.
  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig load(const std::filesystem::path& file);

  /// Fully resolved configuration, written as the run's provenance sidecar.
  std::string to_json_text() const;

  PauliSum build_hamiltonian() const;
  StateVector build_initial_state() const;
  Evolver build_evolver() const;
};

namespace cli {

/// Entry point shared by the binary and the in-process tests. args excludes
/// the program name. Returns the process exit code: 0 success, 2 config
/// error, 3 resource limit, 4 degenerate filter.
int run(const std::vector<std::string>& args);

int cmd_scan(const ExperimentConfig& cfg, const std::filesystem::path& out);
int cmd_iterate(const ExperimentConfig& cfg, const std::filesystem::path& out);
int cmd_noise(const ExperimentConfig& cfg, const std::filesystem::path& out);
int cmd_cv(const ExperimentConfig& cfg, const std::filesystem::path& out);
int cmd_filter_response(const ExperimentConfig& cfg,
                        const std::filesystem::path& out);
int cmd_budget(const ExperimentConfig& cfg, const std::filesystem::path& out);

}  // namespace cli

}  // namespace qgf
