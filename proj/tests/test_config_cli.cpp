#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qgf/config.hpp"
#include "qgf/filter.hpp"
#include "qgf/scan.hpp"

using namespace qgf;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qgf_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path file = dir / "config.json";
  std::ofstream out(file);
  out << text;
  return file;
}

}  // namespace

TEST_CASE("defaults parse and invalid fields are reported by path") {
  CHECK_NOTHROW(ExperimentConfig::from_json_text("{}"));
  try {
    ExperimentConfig::from_json_text(R"({"model": {"n": "four"}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("model.n") != std::string::npos);
  }
  CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"model": {"n": 0}})"),
                  ConfigError);
  CHECK_THROWS_AS(
      ExperimentConfig::from_json_text(R"({"initial_state": {"kind": "bell"}})"),
      ConfigError);
  CHECK_THROWS_AS(
      ExperimentConfig::from_json_text(R"({"mode": {"kind": "sampled", "shots": 0}})"),
      ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text("not json"), ConfigError);
  CHECK_THROWS_AS(
      ExperimentConfig::from_json_text(R"({"scan": {"mu_step": -0.1}})"),
      ConfigError);
}

TEST_CASE("resolved config round trips") {
  const ExperimentConfig a = ExperimentConfig::from_json_text(
      R"({"model": {"n": 6, "shift": 15.0}, "filter": {"m_y": 30}})");
  const ExperimentConfig b = ExperimentConfig::from_json_text(a.to_json_text());
  CHECK(b.model.n == 6);
  CHECK(b.model.shift == 15.0);
  CHECK(b.filter.m_y == 30);
  CHECK(b.to_json_text() == a.to_json_text());
}

TEST_CASE("scan command writes deterministic outputs") {
  const fs::path dir = fresh_dir("scan");
  const fs::path cfg_file = write_config(dir, R"({
    "model": {"n": 4, "J": 1.0, "g": 2.0, "periodic": true, "shift": 15.0},
    "initial_state": {"kind": "qaoa_random", "seed": 1},
    "filter": {"delta_y": 0.16, "m_y": 50},
    "scan": {"mu_anchor": "lambda0", "mu_min": -1.0, "mu_max": 0.0, "mu_step": 0.25,
             "inv_sigma_sq_min": 1.0, "inv_sigma_sq_max": 3.0, "inv_sigma_sq_step": 0.5}
  })");
  const int rc = cli::run({"scan", "--config", cfg_file.string(), "--out",
                           (dir / "run1").string()});
  REQUIRE(rc == 0);
  CHECK(fs::exists(dir / "run1" / "scan.csv"));
  CHECK(fs::exists(dir / "run1" / "summary.json"));
  CHECK(fs::exists(dir / "run1" / "config-resolved.json"));
  CHECK(fs::exists(dir / "run1" / "tables" / "table.json"));

  const auto summary = nlohmann::json::parse(slurp(dir / "run1" / "summary.json"));
  CHECK(summary.at("error").get<double>() < 1e-2);

  // Re-running the same config is byte identical.
  REQUIRE(cli::run({"scan", "--config", cfg_file.string(), "--out",
                    (dir / "run2").string()}) == 0);
  CHECK(slurp(dir / "run1" / "scan.csv") == slurp(dir / "run2" / "scan.csv"));
  CHECK(slurp(dir / "run1" / "summary.json") == slurp(dir / "run2" / "summary.json"));
  CHECK(slurp(dir / "run1" / "tables" / "table.json") ==
        slurp(dir / "run2" / "tables" / "table.json"));
}

TEST_CASE("zero-cutoff scan returns the initial Rayleigh quotient") {
  const fs::path dir = fresh_dir("rayleigh");
  const fs::path cfg_file = write_config(dir, R"({
    "model": {"n": 3, "shift": 5.0},
    "initial_state": {"kind": "x_ground"},
    "filter": {"m_y": 0},
    "scan": {"mu_anchor": "lambda0", "mu_min": -0.5, "mu_max": 0.0, "mu_step": 0.5,
             "inv_sigma_sq_min": 1.0, "inv_sigma_sq_max": 2.0, "inv_sigma_sq_step": 1.0}
  })");
  REQUIRE(cli::run({"scan", "--config", cfg_file.string(), "--out",
                    (dir / "run").string()}) == 0);
  const auto summary = nlohmann::json::parse(slurp(dir / "run" / "summary.json"));
  const ExperimentConfig cfg = ExperimentConfig::load(cfg_file);
  const PauliSum h = cfg.build_hamiltonian();
  const StateVector psi = cfg.build_initial_state();
  const double rayleigh = psi.inner(apply(h, psi)).real();
  CHECK(summary.at("best_energy").get<double>() ==
        doctest::Approx(rayleigh).epsilon(1e-12));
}

TEST_CASE("saved tables reload into the library types") {
  const fs::path dir = fresh_dir("reload");
  const fs::path cfg_file = write_config(dir, R"({
    "model": {"n": 3, "shift": 5.0},
    "initial_state": {"kind": "ghz_z"},
    "filter": {"delta_y": 0.1, "m_y": 10},
    "scan": {"mu_anchor": "lambda0", "mu_min": -0.5, "mu_max": 0.0, "mu_step": 0.25,
             "inv_sigma_sq_min": 1.0, "inv_sigma_sq_max": 2.0, "inv_sigma_sq_step": 0.5}
  })");
  REQUIRE(cli::run({"scan", "--config", cfg_file.string(), "--out",
                    (dir / "run").string()}) == 0);
  const OverlapTable loaded = OverlapTable::load(dir / "run" / "tables" / "table.json");
  const ExperimentConfig cfg = ExperimentConfig::load(cfg_file);
  const OverlapTable direct =
      compute_table(cfg.build_hamiltonian(), cfg.build_initial_state(), 0.1, 10,
                    TableMode::exact(), Evolver::exact());
  REQUIRE(loaded.d.size() == direct.d.size());
  for (std::size_t k = 0; k < direct.d.size(); ++k) CHECK(loaded.d[k] == direct.d[k]);
}

TEST_CASE("iterate command emits one row per stage") {
  const fs::path dir = fresh_dir("iterate");
  const fs::path cfg_file = write_config(dir, R"({
    "model": {"n": 3, "shift": 13.0},
    "initial_state": {"kind": "qaoa_random", "seed": 3},
    "filter": {"delta_y": 0.08, "m_y_schedule": [30, 50, 70]},
    "scan": {"mu_anchor": "lambda0", "mu_min": -1.0, "mu_max": 0.0, "mu_step": 0.25,
             "inv_sigma_sq_min": 0.5, "inv_sigma_sq_max": 3.0, "inv_sigma_sq_step": 0.5}
  })");
  REQUIRE(cli::run({"iterate", "--config", cfg_file.string(), "--out",
                    (dir / "run").string()}) == 0);
  const std::string csv = slurp(dir / "run" / "iterate.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 stages
  CHECK(csv.find("stage,m_y,phi_m,best_mu,best_inv_sigma_sq,best_energy,error") == 0);
}

TEST_CASE("noise command: zero probability collapses the three curves") {
  const fs::path dir = fresh_dir("noise");
  const fs::path cfg_file = write_config(dir, R"({
    "model": {"n": 2, "shift": 6.0},
    "initial_state": {"kind": "qaoa_random", "seed": 1},
    "filter": {"delta_y": 0.08},
    "scan": {"mu_anchor": "lambda0", "mu_min": -0.3, "mu_max": 0.0, "mu_step": 0.15,
             "inv_sigma_sq_min": 1.0, "inv_sigma_sq_max": 2.0, "inv_sigma_sq_step": 0.5},
    "noise": {"channel": "bit_flip", "p": 0.0, "steps_per_slice": 4,
              "zne_scales": [1.0, 2.0], "m_y_stages": [2, 4]}
  })");
  REQUIRE(cli::run({"noise", "--config", cfg_file.string(), "--out",
                    (dir / "run").string()}) == 0);
  std::ifstream csv(dir / "run" / "noise_bit_flip.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header.find("phi_m,m_y,energy_noiseless,energy_noisy,energy_mitigated") == 0);
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    // noiseless, noisy and mitigated energies coincide at p = 0
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    const double e0 = std::stod(cells[2]), e1 = std::stod(cells[3]),
                 em = std::stod(cells[4]);
    CHECK(e0 == doctest::Approx(e1).epsilon(1e-12));
    CHECK(e0 == doctest::Approx(em).epsilon(1e-12));
  }
  CHECK(rows == 2);
  CHECK(fs::exists(dir / "run" / "hamiltonian.txt"));
}

TEST_CASE("cv command writes one row per schedule entry") {
  const fs::path dir = fresh_dir("cv");
  const fs::path cfg_file = write_config(dir, R"({
    "model": {"n": 2},
    "initial_state": {"kind": "qaoa_random", "seed": 2},
    "cv": {"s": 1.0, "schedule_start": "auto", "count": 1, "step": 0.5}
  })");
  REQUIRE(cli::run({"cv", "--config", cfg_file.string(), "--out",
                    (dir / "run").string()}) == 0);
  const std::string csv = slurp(dir / "run" / "cv.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header + 1 row
}

TEST_CASE("filter-response window markers scale with phi_m") {
  const fs::path dir = fresh_dir("response");
  const fs::path cfg_file = write_config(dir, R"({
    "filter_response": {
      "lambda_min": 0.0, "lambda_max": 0.1, "lambda_step": 0.1,
      "sets": [{"mu": 0.0, "inv_sigma_sq": 2.0, "phi_m": 4.0, "delta_y": 0.16},
               {"mu": 0.0, "inv_sigma_sq": 2.0, "phi_m": 8.0, "delta_y": 0.16},
               {"mu": 0.0, "inv_sigma_sq": 2.0, "phi_m": 12.0, "delta_y": 0.16}]
    }
  })");
  REQUIRE(cli::run({"filter-response", "--config", cfg_file.string(), "--out",
                    (dir / "run").string()}) == 0);
  std::ifstream csv(dir / "run" / "filter_response.csv");
  std::string line;
  std::getline(csv, line);  // header
  std::vector<double> windows;
  while (std::getline(csv, line)) {
    const auto last_comma = line.rfind(',');
    const double window = std::stod(line.substr(last_comma + 1));
    if (windows.empty() || windows.back() != window) windows.push_back(window);
  }
  REQUIRE(windows.size() == 3);
  CHECK(windows[0] == doctest::Approx(1.0));
  CHECK(windows[1] == doctest::Approx(2.0));
  CHECK(windows[2] == doctest::Approx(3.0));
}

TEST_CASE("budget command reconciles the closed form") {
  const fs::path dir = fresh_dir("budget");
  const fs::path cfg_file = write_config(dir, R"({
    "budget": {"a0_sq": 0.04, "epsilon": 0.01, "sigma_sq": 1.0, "lambda_m": 2.0,
               "big_l": 12.0, "delta_gap": 1.0, "delta_y": 0.1, "eps_term": 1e-3}
  })");
  REQUIRE(cli::run({"budget", "--config", cfg_file.string(), "--out",
                    (dir / "run").string()}) == 0);
  const auto summary = nlohmann::json::parse(slurp(dir / "run" / "summary.json"));
  const double summed = summary.at("shots_summed").get<double>();
  const double closed = summary.at("shots_closed_form").get<double>();
  CHECK(std::abs(summed - closed) / closed < 0.02);
  CHECK(fs::exists(dir / "run" / "budget.csv"));
}

TEST_CASE("exit codes follow the error taxonomy") {
  const fs::path dir = fresh_dir("codes");
  // Missing config file.
  CHECK(cli::run({"scan", "--config", (dir / "absent.json").string()}) == 2);
  // Unknown subcommand/flag both come back as usage errors.
  CHECK(cli::run({"warp", "--config", "x"}) == 2);
  // Resource limit: exact-mode scan beyond the dense budget.
  const fs::path big = write_config(dir, R"({
    "model": {"n": 13}, "initial_state": {"kind": "ghz_z"},
    "filter": {"m_y": 1},
    "scan": {"mu_min": 0.0, "mu_max": 0.1, "mu_step": 0.1,
             "inv_sigma_sq_min": 1.0, "inv_sigma_sq_max": 1.0, "inv_sigma_sq_step": 1.0}
  })");
  CHECK(cli::run({"scan", "--config", big.string(), "--out", (dir / "big").string()}) == 3);
  // Degenerate filter: hopeless absolute scan window.
  const fs::path degen_cfg = dir / "degen.json";
  {
    std::ofstream out(degen_cfg);
    out << R"({
      "model": {"n": 2}, "initial_state": {"kind": "ghz_z"},
      "filter": {"delta_y": 0.1, "m_y": 400},
      "scan": {"mu_min": -50.5, "mu_max": -50.0, "mu_step": 0.5,
               "inv_sigma_sq_min": 0.5, "inv_sigma_sq_max": 0.5, "inv_sigma_sq_step": 1.0}
    })";
  }
  CHECK(cli::run({"scan", "--config", degen_cfg.string(), "--out",
                  (dir / "degen").string()}) == 4);
}

TEST_CASE("set overrides and the global seed flag take precedence") {
  const fs::path dir = fresh_dir("override");
  const fs::path cfg_file = write_config(dir, R"({
    "model": {"n": 3, "shift": 5.0},
    "initial_state": {"kind": "qaoa_random", "seed": 1},
    "filter": {"delta_y": 0.1, "m_y": 5},
    "scan": {"mu_anchor": "lambda0", "mu_min": -0.5, "mu_max": 0.0, "mu_step": 0.25,
             "inv_sigma_sq_min": 1.0, "inv_sigma_sq_max": 2.0, "inv_sigma_sq_step": 0.5}
  })");
  REQUIRE(cli::run({"scan", "--config", cfg_file.string(), "--out",
                    (dir / "a").string(), "--set", "filter.m_y=8"}) == 0);
  const auto resolved =
      nlohmann::json::parse(slurp(dir / "a" / "config-resolved.json"));
  CHECK(resolved.at("filter").at("m_y").get<int>() == 8);

  REQUIRE(cli::run({"scan", "--config", cfg_file.string(), "--out",
                    (dir / "b").string(), "--seed", "99"}) == 0);
  const auto reseeded =
      nlohmann::json::parse(slurp(dir / "b" / "config-resolved.json"));
  CHECK(reseeded.at("initial_state").at("seed").get<std::uint64_t>() == 99);
  CHECK(slurp(dir / "a" / "summary.json") != slurp(dir / "b" / "summary.json"));
}

TEST_CASE("hamiltonian files feed the model") {
  const fs::path dir = fresh_dir("hamfile");
  const PauliSum h = build_tfim(3, 1.0, 2.0, true);
  {
    std::ofstream out(dir / "ham.txt");
    h.to_text(out);
  }
  nlohmann::json cfg;
  cfg["model"] = {{"hamiltonian_file", (dir / "ham.txt").string()}, {"shift", 2.0}};
  const ExperimentConfig parsed = ExperimentConfig::from_json_text(cfg.dump());
  const PauliSum loaded = parsed.build_hamiltonian();
  CHECK(loaded.n_qubits() == 3);
  CHECK(loaded.identity_offset() == doctest::Approx(2.0));
  CHECK(loaded.term_count() == h.term_count());
}
