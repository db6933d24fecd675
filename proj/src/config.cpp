#include "qgf/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace qgf {

using nlohmann::json;

namespace {

/// Field-by-field reader that names the offending path on type errors.
template <typename T>
void read_field(const json& j, const std::string& path, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(path + "." + key + ": " + e.what());
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig c;

  if (j.contains("model")) {
    const json& m = j["model"];
    read_field(m, "model", "n", c.model.n);
    read_field(m, "model", "J", c.model.coupling_j);
    read_field(m, "model", "g", c.model.field_g);
    read_field(m, "model", "periodic", c.model.periodic);
    read_field(m, "model", "shift", c.model.shift);
    read_field(m, "model", "hamiltonian_file", c.model.hamiltonian_file);
  }
  if (j.contains("initial_state")) {
    const json& s = j["initial_state"];
    read_field(s, "initial_state", "kind", c.initial_state.kind);
    read_field(s, "initial_state", "seed", c.initial_state.seed);
  }
  if (j.contains("filter")) {
    const json& f = j["filter"];
    read_field(f, "filter", "delta_y", c.filter.delta_y);
    read_field(f, "filter", "m_y", c.filter.m_y);
    read_field(f, "filter", "m_y_schedule", c.filter.m_y_schedule);
  }
  if (j.contains("evolver")) {
    const json& e = j["evolver"];
    read_field(e, "evolver", "kind", c.evolver.kind);
    read_field(e, "evolver", "steps_per_slice", c.evolver.steps_per_slice);
  }
  if (j.contains("mode")) {
    const json& m = j["mode"];
    read_field(m, "mode", "kind", c.mode.kind);
    read_field(m, "mode", "shots", c.mode.shots);
    read_field(m, "mode", "seed", c.mode.seed);
    read_field(m, "mode", "weighted_shots", c.mode.weighted_shots);
  }
  if (j.contains("scan")) {
    const json& s = j["scan"];
    read_field(s, "scan", "mu_anchor", c.scan.mu_anchor);
    read_field(s, "scan", "mu_min", c.scan.mu_min);
    read_field(s, "scan", "mu_max", c.scan.mu_max);
    read_field(s, "scan", "mu_step", c.scan.mu_step);
    read_field(s, "scan", "inv_sigma_sq_min", c.scan.isq_min);
    read_field(s, "scan", "inv_sigma_sq_max", c.scan.isq_max);
    read_field(s, "scan", "inv_sigma_sq_step", c.scan.isq_step);
  }
  if (j.contains("noise")) {
    const json& n = j["noise"];
    read_field(n, "noise", "channel", c.noise.channel);
    read_field(n, "noise", "p", c.noise.p);
    read_field(n, "noise", "steps_per_slice", c.noise.steps_per_slice);
    read_field(n, "noise", "zne_scales", c.noise.zne_scales);
    read_field(n, "noise", "m_y_stages", c.noise.m_y_stages);
  }
  if (j.contains("cv")) {
    const json& v = j["cv"];
    read_field(v, "cv", "s", c.cv.s);
    read_field(v, "cv", "fock_cutoff", c.cv.fock_cutoff);
    read_field(v, "cv", "schedule_start", c.cv.schedule_start);
    read_field(v, "cv", "start", c.cv.start);
    read_field(v, "cv", "step", c.cv.step);
    read_field(v, "cv", "count", c.cv.count);
    read_field(v, "cv", "schedule", c.cv.schedule);
  }
  if (j.contains("filter_response")) {
    const json& r = j["filter_response"];
    read_field(r, "filter_response", "lambda_min", c.response.lambda_min);
    read_field(r, "filter_response", "lambda_max", c.response.lambda_max);
    read_field(r, "filter_response", "lambda_step", c.response.lambda_step);
    if (r.contains("sets")) {
      c.response.sets.clear();
      for (const auto& js : r.at("sets")) {
        ResponseCfg::Set set;
        read_field(js, "filter_response.sets[]", "mu", set.mu);
        read_field(js, "filter_response.sets[]", "inv_sigma_sq", set.inv_sigma_sq);
        read_field(js, "filter_response.sets[]", "phi_m", set.phi_m);
        read_field(js, "filter_response.sets[]", "delta_y", set.delta_y);
        c.response.sets.push_back(set);
      }
    }
    read_field(r, "filter_response", "cosine", c.response.cosine);
    read_field(r, "filter_response", "cosine_big_l", c.response.cosine_big_l);
    read_field(r, "filter_response", "cosine_delta", c.response.cosine_delta);
    read_field(r, "filter_response", "cosine_e_center", c.response.cosine_e_center);
    read_field(r, "filter_response", "cosine_x", c.response.cosine_x);
  }
  if (j.contains("budget")) {
    const json& b = j["budget"];
    read_field(b, "budget", "a0_sq", c.budget.a0_sq);
    read_field(b, "budget", "epsilon", c.budget.epsilon);
    read_field(b, "budget", "sigma_sq", c.budget.sigma_sq);
    read_field(b, "budget", "lambda_m", c.budget.lambda_m);
    read_field(b, "budget", "big_l", c.budget.big_l);
    read_field(b, "budget", "delta_gap", c.budget.delta_gap);
    read_field(b, "budget", "delta_y", c.budget.delta_y);
    read_field(b, "budget", "eps_term", c.budget.eps_term);
  }
  if (j.contains("output")) {
    read_field(j["output"], "output", "directory", c.output_directory);
  }

  // Cross-field validation.
  require(c.model.n >= 1, "model.n: must be >= 1");
  require(!c.model.periodic || c.model.n >= 2,
          "model.n: periodic chain needs n >= 2");
  require(c.initial_state.kind == "ghz_z" || c.initial_state.kind == "x_ground" ||
              c.initial_state.kind == "qaoa_random",
          "initial_state.kind: must be ghz_z, x_ground or qaoa_random");
  require(c.initial_state.kind != "qaoa_random" || c.model.n >= 2,
          "initial_state.kind: qaoa_random needs n >= 2");
  require(c.filter.delta_y > 0, "filter.delta_y: must be positive");
  require(c.filter.m_y >= 0, "filter.m_y: must be >= 0");
  for (std::size_t i = 1; i < c.filter.m_y_schedule.size(); ++i)
    require(c.filter.m_y_schedule[i] > c.filter.m_y_schedule[i - 1],
            "filter.m_y_schedule: must be strictly increasing");
  require(c.evolver.kind == "exact" || c.evolver.kind == "trotter",
          "evolver.kind: must be exact or trotter");
  require(c.evolver.steps_per_slice >= 1,
          "evolver.steps_per_slice: must be >= 1");
  require(c.mode.kind == "exact" || c.mode.kind == "sampled" ||
              c.mode.kind == "noisy",
          "mode.kind: must be exact, sampled or noisy");
  require(c.mode.kind != "sampled" || c.mode.shots >= 1,
          "mode.shots: sampled mode needs shots >= 1");
  require(c.scan.mu_anchor == "absolute" || c.scan.mu_anchor == "lambda0",
          "scan.mu_anchor: must be absolute or lambda0");
  require(c.scan.mu_step > 0, "scan.mu_step: must be positive");
  require(c.scan.isq_step > 0, "scan.inv_sigma_sq_step: must be positive");
  require(c.scan.isq_min > 0, "scan.inv_sigma_sq_min: must be positive");
  require(c.noise.channel == "bit_flip" || c.noise.channel == "phase_flip" ||
              c.noise.channel == "both",
          "noise.channel: must be bit_flip, phase_flip or both");
  require(c.noise.p >= 0 && c.noise.p <= 1, "noise.p: must lie in [0, 1]");
  require(c.noise.steps_per_slice >= 1, "noise.steps_per_slice: must be >= 1");
  require(c.noise.zne_scales.size() >= 2, "noise.zne_scales: need >= 2 scales");
  require(!c.noise.m_y_stages.empty(), "noise.m_y_stages: must be non-empty");
  require(c.cv.s > 0, "cv.s: must be positive");
  require(c.cv.count >= 1, "cv.count: must be >= 1");
  require(c.response.lambda_step > 0, "filter_response.lambda_step: must be positive");
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config file " + file.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json_text(text);
}

std::string ExperimentConfig::to_json_text() const {
  json j;
  j["model"] = {{"n", model.n},
                {"J", model.coupling_j},
                {"g", model.field_g},
                {"periodic", model.periodic},
                {"shift", model.shift},
                {"hamiltonian_file", model.hamiltonian_file}};
  j["initial_state"] = {{"kind", initial_state.kind}, {"seed", initial_state.seed}};
  j["filter"] = {{"delta_y", filter.delta_y},
                 {"m_y", filter.m_y},
                 {"m_y_schedule", filter.m_y_schedule}};
  j["evolver"] = {{"kind", evolver.kind},
                  {"steps_per_slice", evolver.steps_per_slice}};
  j["mode"] = {{"kind", mode.kind},
               {"shots", mode.shots},
               {"seed", mode.seed},
               {"weighted_shots", mode.weighted_shots}};
  j["scan"] = {{"mu_anchor", scan.mu_anchor},
               {"mu_min", scan.mu_min},
               {"mu_max", scan.mu_max},
               {"mu_step", scan.mu_step},
               {"inv_sigma_sq_min", scan.isq_min},
               {"inv_sigma_sq_max", scan.isq_max},
               {"inv_sigma_sq_step", scan.isq_step}};
  j["noise"] = {{"channel", noise.channel},
                {"p", noise.p},
                {"steps_per_slice", noise.steps_per_slice},
                {"zne_scales", noise.zne_scales},
                {"m_y_stages", noise.m_y_stages}};
  j["cv"] = {{"s", cv.s},
             {"fock_cutoff", cv.fock_cutoff},
             {"schedule_start", cv.schedule_start},
             {"start", cv.start},
             {"step", cv.step},
             {"count", cv.count},
             {"schedule", cv.schedule}};
  json sets = json::array();
  for (const auto& s : response.sets)
    sets.push_back({{"mu", s.mu},
                    {"inv_sigma_sq", s.inv_sigma_sq},
                    {"phi_m", s.phi_m},
                    {"delta_y", s.delta_y}});
  j["filter_response"] = {{"lambda_min", response.lambda_min},
                          {"lambda_max", response.lambda_max},
                          {"lambda_step", response.lambda_step},
                          {"sets", sets},
                          {"cosine", response.cosine},
                          {"cosine_big_l", response.cosine_big_l},
                          {"cosine_delta", response.cosine_delta},
                          {"cosine_e_center", response.cosine_e_center},
                          {"cosine_x", response.cosine_x}};
  j["budget"] = {{"a0_sq", budget.a0_sq},
                 {"epsilon", budget.epsilon},
                 {"sigma_sq", budget.sigma_sq},
                 {"lambda_m", budget.lambda_m},
                 {"big_l", budget.big_l},
                 {"delta_gap", budget.delta_gap},
                 {"delta_y", budget.delta_y},
                 {"eps_term", budget.eps_term}};
  j["output"] = {{"directory", output_directory}};
  return j.dump(2);
}

PauliSum ExperimentConfig::build_hamiltonian() const {
  if (!model.hamiltonian_file.empty()) {
    std::ifstream in(model.hamiltonian_file);
    if (!in)
      throw ConfigError("model.hamiltonian_file: cannot read " +
                        model.hamiltonian_file);
    PauliSum h = PauliSum::from_text(in);
    return shift_spectrum(h, model.shift);
  }
  PauliSum h = build_tfim(model.n, model.coupling_j, model.field_g, model.periodic);
  return shift_spectrum(h, model.shift);
}

StateVector ExperimentConfig::build_initial_state() const {
  const int n = model.hamiltonian_file.empty()
                    ? model.n
                    : build_hamiltonian().n_qubits();
  if (initial_state.kind == "ghz_z") return prepare_ghz_z(n);
  if (initial_state.kind == "x_ground") return prepare_x_ground(n);
  return prepare_qaoa_random(n, initial_state.seed);
}

Evolver ExperimentConfig::build_evolver() const {
  if (evolver.kind == "exact") return Evolver::exact();
  return Evolver::trotterized(evolver.steps_per_slice);
}

}  // namespace qgf
