#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>

#include "qgf/config.hpp"
#include "qgf/cv.hpp"
#include "qgf/filter.hpp"
#include "qgf/noise.hpp"
#include "qgf/resources.hpp"
#include "qgf/scan.hpp"

namespace qgf::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_file(const fs::path& file, const std::string& text) {
  std::ofstream out(file);
  if (!out) throw Error("cannot write " + file.string());
  out << text;
}

void write_sidecar(const ExperimentConfig& cfg, const fs::path& dir) {
  write_file(dir / "config-resolved.json", cfg.to_json_text() + "\n");
}

fs::path prepare_out_dir(const ExperimentConfig& cfg, const fs::path& dir) {
  fs::create_directories(dir);
  fs::create_directories(dir / "tables");
  write_sidecar(cfg, dir);
  return dir;
}

/// Runs that build a Hamiltonian also emit it in the text operator format.
void write_hamiltonian(const PauliSum& h, const fs::path& dir) {
  std::ofstream out(dir / "hamiltonian.txt");
  h.to_text(out);
}

/// Ground energy of the configured problem when the dense oracle can reach
/// it; nullopt above the diagonalization budget.
std::optional<double> exact_lambda0(const PauliSum& h) {
  if (h.n_qubits() > 12) return std::nullopt;
  return diagonalize(h).eigenvalues[0];
}

ScanGrid resolve_grid(const ExperimentConfig& cfg, std::optional<double> lambda0) {
  double lo = cfg.scan.mu_min, hi = cfg.scan.mu_max;
  if (cfg.scan.mu_anchor == "lambda0") {
    if (!lambda0)
      throw ConfigError("scan.mu_anchor: lambda0 anchoring needs a diagonalizable model");
    lo += *lambda0;
    hi += *lambda0;
  }
  return ScanGrid::from_ranges(lo, hi, cfg.scan.mu_step, cfg.scan.isq_min,
                               cfg.scan.isq_max, cfg.scan.isq_step);
}

TableMode resolve_mode(const ExperimentConfig& cfg) {
  if (cfg.mode.kind == "exact") return TableMode::exact();
  if (cfg.mode.kind == "sampled") {
    TableMode m = TableMode::sampled(cfg.mode.shots, cfg.mode.seed);
    if (cfg.mode.weighted_shots) {
      // Gaussian per-k schedule centered on the scan's widest filter.
      const double sigma_sq = cfg.scan.isq_min > 0 ? 1.0 / cfg.scan.isq_max : 1.0;
      m.shots_schedule =
          shot_schedule(sigma_sq, cfg.filter.delta_y, cfg.filter.m_y, cfg.mode.shots);
    }
    return m;
  }
  throw ConfigError("mode.kind: " + cfg.mode.kind + " is not table-buildable here");
}

std::unique_ptr<TableBuilder> make_builder(const ExperimentConfig& cfg,
                                           const PauliSum& h,
                                           const StateVector& psi) {
  if (cfg.mode.kind == "noisy") {
    NoiseModel model{channel_from_name(cfg.noise.channel == "both"
                                           ? std::string("bit_flip")
                                           : cfg.noise.channel),
                     cfg.noise.p};
    TrotterConfig tcfg{cfg.filter.delta_y, cfg.noise.steps_per_slice};
    return std::make_unique<NoisyTableBuilder>(h, psi, cfg.filter.delta_y, tcfg,
                                               model);
  }
  return std::make_unique<StateTableBuilder>(h, psi, cfg.filter.delta_y,
                                             resolve_mode(cfg), cfg.build_evolver());
}

json summary_json(const ScanPoint& best, std::optional<double> lambda0) {
  json s;
  s["best_mu"] = best.mu;
  s["best_inv_sigma_sq"] = best.inv_sigma_sq;
  s["best_energy"] = best.energy;
  if (lambda0) {
    s["exact_lambda0"] = *lambda0;
    s["error"] = std::abs(best.energy - *lambda0);
  }
  return s;
}

/// Truncated view of a table, reusing stored entries for a smaller cutoff.
OverlapTable table_prefix(const OverlapTable& t, int m_y) {
  if (m_y > t.m_y) throw ParameterError("table_prefix: cutoff above table");
  OverlapTable out = t;
  out.m_y = m_y;
  const std::size_t n = static_cast<std::size_t>(2 * m_y + 1);
  out.d.resize(n);
  out.n_h.resize(n);
  out.shots_per_entry.resize(n);
  return out;
}

}  // namespace

int cmd_scan(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const fs::path dir = prepare_out_dir(cfg, out_dir);
  const PauliSum h = cfg.build_hamiltonian();
  write_hamiltonian(h, dir);
  const StateVector psi = cfg.build_initial_state();
  const auto lambda0 = exact_lambda0(h);
  const ScanGrid grid = resolve_grid(cfg, lambda0);

  const auto builder = make_builder(cfg, h, psi);
  const OverlapTable table = builder->build(cfg.filter.m_y);
  table.save(dir / "tables" / "table.json");

  const ScanResult result = grid_scan(table, grid);
  std::ofstream csv(dir / "scan.csv");
  scan_to_csv(result, csv);
  write_file(dir / "summary.json", summary_json(result.best(), lambda0).dump(2) + "\n");
  return 0;
}

int cmd_iterate(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const fs::path dir = prepare_out_dir(cfg, out_dir);
  const PauliSum h = cfg.build_hamiltonian();
  write_hamiltonian(h, dir);
  const StateVector psi = cfg.build_initial_state();
  const auto lambda0 = exact_lambda0(h);
  const ScanGrid grid = resolve_grid(cfg, lambda0);

  std::vector<int> schedule = cfg.filter.m_y_schedule;
  if (schedule.empty()) schedule = {cfg.filter.m_y};

  const auto builder = make_builder(cfg, h, psi);
  // Inline deepening loop so each stage row is written with its table.
  std::ofstream csv(dir / "iterate.csv");
  csv << "stage,m_y,phi_m,best_mu,best_inv_sigma_sq,best_energy";
  if (lambda0) csv << ",error";
  csv << "\n";
  OverlapTable table = builder->build(schedule.front());
  json last;
  for (std::size_t stage = 0; stage < schedule.size(); ++stage) {
    if (stage > 0) table = builder->extend(table, schedule[stage]);
    const ScanResult r = grid_scan(table, grid);
    csv << stage << ',' << table.m_y << ',' << fmt(table.phi_m()) << ','
        << fmt(r.best().mu) << ',' << fmt(r.best().inv_sigma_sq) << ','
        << fmt(r.best().energy);
    if (lambda0) csv << ',' << fmt(std::abs(r.best().energy - *lambda0));
    csv << "\n";
    last = summary_json(r.best(), lambda0);
    last["m_y"] = table.m_y;
    last["phi_m"] = table.phi_m();
  }
  table.save(dir / "tables" / "table_final.json");
  write_file(dir / "summary.json", last.dump(2) + "\n");
  return 0;
}

int cmd_noise(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const fs::path dir = prepare_out_dir(cfg, out_dir);
  const PauliSum h = cfg.build_hamiltonian();
  write_hamiltonian(h, dir);
  const StateVector psi = cfg.build_initial_state();
  const auto lambda0 = exact_lambda0(h);
  const ScanGrid grid = resolve_grid(cfg, lambda0);
  const TrotterConfig tcfg{cfg.filter.delta_y, cfg.noise.steps_per_slice};
  const int m_max = *std::max_element(cfg.noise.m_y_stages.begin(),
                                      cfg.noise.m_y_stages.end());

  std::vector<std::string> channels;
  if (cfg.noise.channel == "both")
    channels = {"bit_flip", "phase_flip"};
  else
    channels = {cfg.noise.channel};

  for (const std::string& name : channels) {
    const NoiseChannel channel = channel_from_name(name);
    // One deterministic table per noise scale, zero included.
    std::vector<OverlapTable> tables;
    std::vector<double> scales = {0.0};
    for (double sc : cfg.noise.zne_scales) scales.push_back(sc);
    for (double sc : scales) {
      const NoiseModel model{channel, cfg.noise.p * sc};
      tables.push_back(noisy_overlap_table(h, psi, cfg.filter.delta_y, m_max,
                                           tcfg, model));
    }
    tables[1].save(dir / "tables" / ("table_" + name + ".json"));

    std::ofstream csv(dir / ("noise_" + name + ".csv"));
    csv << "phi_m,m_y,energy_noiseless,energy_noisy,energy_mitigated";
    if (lambda0) csv << ",err_noiseless,err_noisy,err_mitigated";
    csv << ",dev_noisy,dev_mitigated\n";
    for (int m : cfg.noise.m_y_stages) {
      const OverlapTable t0 = table_prefix(tables[0], m);
      const double e_clean = grid_scan(t0, grid).best().energy;
      // The scan at the physical noise level reports the optimal filter;
      // mitigation extrapolates the energy at that reported optimum across
      // the configured noise scales.
      double e_noisy = 1e300;
      FilterParams best{};
      bool found = false;
      for (double mu : grid.mu_values) {
        for (double isq : grid.inv_sigma_sq_values) {
          const FilterParams params{mu, isq, cfg.filter.delta_y, m};
          try {
            const double e =
                estimate_energy(table_prefix(tables[1], m),
                                gaussian_coefficients(params));
            if (!found || e < e_noisy) {
              e_noisy = e;
              best = params;
              found = true;
            }
          } catch (const DegenerateDenominator&) {
          }
        }
      }
      if (!found) throw AllDegenerate("noise scan: every point degenerate");
      std::vector<double> values;
      for (std::size_t si = 1; si < scales.size(); ++si)
        values.push_back(estimate_energy(table_prefix(tables[si], m),
                                         gaussian_coefficients(best)));
      const double e_mit = zne_extrapolate(
          std::span<const double>(cfg.noise.zne_scales), values);
      csv << fmt(m * cfg.filter.delta_y) << ',' << m << ',' << fmt(e_clean)
          << ',' << fmt(e_noisy) << ',' << fmt(e_mit);
      if (lambda0)
        csv << ',' << fmt(std::abs(e_clean - *lambda0)) << ','
            << fmt(std::abs(e_noisy - *lambda0)) << ','
            << fmt(std::abs(e_mit - *lambda0));
      csv << ',' << fmt(std::abs(e_noisy - e_clean)) << ','
          << fmt(std::abs(e_mit - e_clean)) << "\n";
    }
  }
  return 0;
}

int cmd_cv(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const fs::path dir = prepare_out_dir(cfg, out_dir);
  const PauliSum h = cfg.build_hamiltonian();
  write_hamiltonian(h, dir);
  const StateVector psi = cfg.build_initial_state();

  std::vector<double> schedule = cfg.cv.schedule;
  if (schedule.empty()) {
    double start = cfg.cv.start;
    if (cfg.cv.schedule_start == "auto") {
      const auto lambda0 = exact_lambda0(h);
      if (!lambda0)
        throw ConfigError("cv.schedule_start: auto anchoring needs a diagonalizable model");
      start = -*lambda0;
    }
    for (int i = 0; i < cfg.cv.count; ++i)
      schedule.push_back(start + i * cfg.cv.step);
  }
  const auto records = cv_iterate(h, psi, cfg.cv.s, schedule);
  std::ofstream csv(dir / "cv.csv");
  cv_records_to_csv(records, csv);

  json s;
  s["final_error"] = records.back().energy_error;
  s["final_success_probability"] = records.back().success_probability;
  write_file(dir / "summary.json", s.dump(2) + "\n");
  return 0;
}

int cmd_filter_response(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const fs::path dir = prepare_out_dir(cfg, out_dir);
  std::vector<ExperimentConfig::ResponseCfg::Set> sets = cfg.response.sets;
  if (sets.empty()) sets.push_back({});  // one default set

  std::ofstream csv(dir / "filter_response.csv");
  csv << "set,kind,lambda,re_g,im_g,exact_gauss,window_lambda\n";
  const auto emit = [&](int id, const char* kind, double lambda, cplx g,
                        double exact, double window) {
    csv << id << ',' << kind << ',' << fmt(lambda) << ',' << fmt(g.real()) << ','
        << fmt(g.imag()) << ',' << fmt(exact) << ',' << fmt(window) << "\n";
  };
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& s = sets[i];
    const int m_y = static_cast<int>(std::lround(s.phi_m / s.delta_y));
    const FilterParams params{s.mu, s.inv_sigma_sq, s.delta_y, m_y};
    const CoefficientSet coeffs = gaussian_coefficients(params);
    const double window = params.phi_m() / (2.0 * s.inv_sigma_sq);
    for (double lam = cfg.response.lambda_min; lam <= cfg.response.lambda_max + 1e-12;
         lam += cfg.response.lambda_step) {
      const double exact =
          std::exp(-(lam - s.mu) * (lam - s.mu) * s.inv_sigma_sq);
      emit(static_cast<int>(i), "gaussian", lam, response(coeffs, lam), exact,
           window);
    }
  }
  if (cfg.response.cosine) {
    const CoefficientSet cos_coeffs =
        cosine_coefficients(cfg.response.cosine_big_l, cfg.response.cosine_delta,
                            cfg.response.cosine_e_center, cfg.response.cosine_x);
    const double sigma_sq = 2.0 * cfg.response.cosine_delta * cfg.response.cosine_delta;
    const double window = cos_coeffs.m_y * cos_coeffs.dt * sigma_sq / 2.0;
    for (double lam = cfg.response.lambda_min; lam <= cfg.response.lambda_max + 1e-12;
         lam += cfg.response.lambda_step) {
      const double exact = std::exp(-(lam - cfg.response.cosine_e_center) *
                                    (lam - cfg.response.cosine_e_center) / sigma_sq);
      emit(-1, "cosine", lam, response(cos_coeffs, lam), exact, window);
    }
  }
  return 0;
}

int cmd_budget(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const fs::path dir = prepare_out_dir(cfg, out_dir);
  const auto& b = cfg.budget;
  const ResourceInputs r{b.a0_sq, b.epsilon, b.sigma_sq, b.lambda_m,
                         b.big_l, b.delta_gap};
  const double phi_m = max_evolution_time(r);
  const long y_max = std::lround(std::floor(2.0 * phi_m / b.delta_y));
  double summed = 0.0;
  std::ofstream csv(dir / "budget.csv");
  csv << "y,t,shots\n";
  for (long y = -y_max; y <= y_max; ++y) {
    const double shots = shots_per_term(r, y, b.delta_y);
    summed += shots;
    csv << y << ',' << fmt(y * b.delta_y) << ',' << fmt(shots) << "\n";
  }
  const auto depth = worst_case_depth(r, b.eps_term);
  json s;
  s["phi_m"] = phi_m;
  s["shots_summed"] = summed;
  s["shots_closed_form"] = shots_total_closed_form(r, b.delta_y);
  s["trotter_gates_at_phi_m"] = trotter_gate_count(r, phi_m, b.eps_term);
  s["worst_case_t"] = depth.t;
  s["worst_case_gates"] = depth.count;
  const std::string text = s.dump(2);
  write_file(dir / "summary.json", text + "\n");
  std::cout << text << "\n";
  return 0;
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"quantum Gaussian filter ground-state toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::optional<std::uint64_t> seed_override;
  std::vector<std::string> set_overrides;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file")->required();
    cmd->add_option("--out", out_override, "output directory override");
    cmd->add_option("--seed", seed_override,
                    "override initial_state.seed and mode.seed");
    cmd->add_option("--set", set_overrides,
                    "config override as dotted.path=json-value");
  };

  CLI::App* scan = app.add_subcommand("scan", "single filter-parameter scan");
  CLI::App* iterate = app.add_subcommand("iterate", "deepening cutoff schedule");
  CLI::App* noise = app.add_subcommand("noise", "noisy protocol with mitigation");
  CLI::App* cv = app.add_subcommand("cv", "squeezed-qumode iterative filter");
  CLI::App* resp = app.add_subcommand("filter-response", "response curve data");
  CLI::App* budget = app.add_subcommand("budget", "resource-formula evaluation");
  for (CLI::App* cmd : {scan, iterate, noise, cv, resp, budget}) add_common(cmd);

  std::vector<const char*> argv;
  argv.push_back("qgf");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config file " + config_path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    // Apply --set overrides onto the raw JSON before validation.
    if (!set_overrides.empty()) {
      nlohmann::json j = nlohmann::json::parse(text);
      for (const std::string& kv : set_overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
          throw ConfigError("--set expects dotted.path=value: " + kv);
        std::string pointer = "/" + kv.substr(0, eq);
        for (auto& ch : pointer)
          if (ch == '.') ch = '/';
        nlohmann::json value;
        try {
          value = nlohmann::json::parse(kv.substr(eq + 1));
        } catch (const nlohmann::json::exception&) {
          value = kv.substr(eq + 1);  // bare string
        }
        j[nlohmann::json::json_pointer(pointer)] = value;
      }
      text = j.dump();
    }
    ExperimentConfig cfg = ExperimentConfig::from_json_text(text);
    if (seed_override) {
      cfg.initial_state.seed = *seed_override;
      cfg.mode.seed = *seed_override;
    }
    const fs::path out =
        out_override.empty() ? fs::path(cfg.output_directory) : fs::path(out_override);

    if (*scan) return cmd_scan(cfg, out);
    if (*iterate) return cmd_iterate(cfg, out);
    if (*noise) return cmd_noise(cfg, out);
    if (*cv) return cmd_cv(cfg, out);
    if (*resp) return cmd_filter_response(cfg, out);
    return cmd_budget(cfg, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateDenominator& e) {
    std::cerr << "degenerate filter: " << e.what() << "\n";
    return 4;
  } catch (const AllDegenerate& e) {
    std::cerr << "degenerate filter: " << e.what() << "\n";
    return 4;
  } catch (const UnderflowAnnihilated& e) {
    std::cerr << "degenerate filter: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qgf::cli
