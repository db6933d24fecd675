#include "qgf/resources.hpp"

#include <cmath>

namespace qgf {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

void ResourceInputs::validate() const {
  if (!(a0_sq > 0.0) || a0_sq > 1.0)
    throw ParameterError("resources: a0^2 must lie in (0, 1]");
  if (!(epsilon > 0.0)) throw ParameterError("resources: epsilon must be positive");
  if (!(sigma_sq > 0.0)) throw ParameterError("resources: sigma^2 must be positive");
  if (!(lambda_m > 0.0)) throw ParameterError("resources: lambda_m must be positive");
  if (!(big_l > 0.0)) throw ParameterError("resources: L must be positive");
  if (!(delta_gap > 0.0)) throw ParameterError("resources: gap must be positive");
}

double max_evolution_time(const ResourceInputs& r) {
  r.validate();
  return 2.0 * r.lambda_m / r.sigma_sq;
}

double shots_per_term(const ResourceInputs& r, long y, double delta_y) {
  r.validate();
  if (delta_y <= 0.0) throw ParameterError("resources: delta_y must be positive");
  const double sigma = std::sqrt(r.sigma_sq);
  const double window = r.lambda_m - r.delta_gap;
  const double t = static_cast<double>(y) * delta_y;
  return sigma / (2.0 * kSqrtPi) / r.epsilon / r.a0_sq *
         std::exp(2.0 * window * window / r.sigma_sq) *
         std::exp(-t * t * r.sigma_sq / 4.0);
}

double shots_total_closed_form(const ResourceInputs& r, double delta_y) {
  r.validate();
  if (delta_y <= 0.0) throw ParameterError("resources: delta_y must be positive");
  const double sigma = std::sqrt(r.sigma_sq);
  const double window = r.lambda_m - r.delta_gap;
  const double phi_m = max_evolution_time(r);
  return std::exp(2.0 * window * window / r.sigma_sq) / r.epsilon / r.a0_sq /
         delta_y * std::erf(sigma * phi_m);
}

double trotter_gate_count(const ResourceInputs& r, double t, double eps_term) {
  r.validate();
  if (!(eps_term > 0.0))
    throw ParameterError("resources: per-term accuracy must be positive");
  return r.big_l * r.big_l * r.big_l * t * t / eps_term;
}

WorstCaseDepth worst_case_depth(const ResourceInputs& r, double eps_term) {
  r.validate();
  if (!(eps_term > 0.0))
    throw ParameterError("resources: per-term accuracy must be positive");
  const double sigma = std::sqrt(r.sigma_sq);
  const double t = (sigma <= 2.0 * r.lambda_m) ? 2.0 / sigma
                                               : 4.0 * r.lambda_m / r.sigma_sq;
  const double count = trotter_gate_count(r, t, eps_term) * sigma / r.a0_sq *
                       std::exp(2.0 * r.lambda_m * r.lambda_m / r.sigma_sq) *
                       std::exp(-t * t * r.sigma_sq / 4.0);
  return {t, count};
}

std::vector<long> shot_schedule(double sigma_sq, double delta_y, int m_y,
                                long base_shots) {
  if (!(sigma_sq > 0.0) || delta_y <= 0.0 || m_y < 0 || base_shots < 1)
    throw ParameterError("shot_schedule: bad arguments");
  std::vector<long> out(static_cast<std::size_t>(2 * m_y + 1));
  for (int k = 0; k <= 2 * m_y; ++k) {
    const double t = k * delta_y;
    const double scale = std::exp(-t * t * sigma_sq / 4.0);
    out[static_cast<std::size_t>(k)] =
        std::max<long>(1, std::lround(static_cast<double>(base_shots) * scale));
  }
  return out;
}

}  // namespace qgf
