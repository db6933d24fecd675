#include "qgf/scan.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace qgf {

namespace {
std::vector<double> range_values(double lo, double hi, double step) {
  if (step <= 0.0) throw ParameterError("scan range: step must be positive");
  if (hi < lo) std::swap(lo, hi);
  std::vector<double> out;
  const long count = std::lround(std::floor((hi - lo) / step + 1e-9)) + 1;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(lo + step * static_cast<double>(i));
  return out;
}

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}
}  // namespace

ScanGrid ScanGrid::from_ranges(double mu_min, double mu_max, double mu_step,
                               double isq_min, double isq_max, double isq_step) {
  ScanGrid g;
  g.mu_values = range_values(mu_min, mu_max, mu_step);
  g.inv_sigma_sq_values = range_values(isq_min, isq_max, isq_step);
  g.validate();
  return g;
}

void ScanGrid::validate() const {
  if (mu_values.empty() || inv_sigma_sq_values.empty())
    throw ParameterError("scan grid must be non-empty");
  for (double m : mu_values)
    if (!std::isfinite(m)) throw ParameterError("scan grid: non-finite mu");
  for (double s : inv_sigma_sq_values)
    if (!(s > 0.0) || !std::isfinite(s))
      throw ParameterError("scan grid: 1/sigma^2 must be positive and finite");
}

ScanResult grid_scan(const OverlapTable& t, const ScanGrid& grid,
                     double denom_floor) {
  grid.validate();
  ScanResult r;
  const std::size_t n_mu = grid.mu_values.size();
  const std::size_t n_isq = grid.inv_sigma_sq_values.size();
  r.points.resize(n_mu * n_isq);
  const auto total = static_cast<std::int64_t>(r.points.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const std::size_t i = static_cast<std::size_t>(idx) / n_isq;
    const std::size_t j = static_cast<std::size_t>(idx) % n_isq;
    ScanPoint& pt = r.points[static_cast<std::size_t>(idx)];
    pt.mu = grid.mu_values[i];
    pt.inv_sigma_sq = grid.inv_sigma_sq_values[j];
    const FilterParams params{pt.mu, pt.inv_sigma_sq, t.delta_y, t.m_y};
    try {
      const auto est =
          estimate_energy_detail(t, gaussian_coefficients(params), denom_floor);
      pt.energy = est.energy;
      pt.denom_magnitude = est.denom_magnitude;
      pt.status = PointStatus::Ok;
    } catch (const DegenerateDenominator&) {
      pt.status = PointStatus::Degenerate;
    }
  }
  // Deterministic selection pass, independent of evaluation order: lowest
  // energy wins; ties within 1e-12 go to the earlier row-major point.
  bool found = false;
  for (std::size_t idx = 0; idx < r.points.size(); ++idx) {
    const ScanPoint& pt = r.points[idx];
    if (pt.status != PointStatus::Ok) continue;
    if (!found || pt.energy < r.points[r.best_index].energy - 1e-12) {
      r.best_index = idx;
      found = true;
    }
  }
  if (!found) throw AllDegenerate("every scan point hit a degenerate denominator");
  return r;
}

std::vector<StageResult> iterative_deepen(const TableBuilder& builder,
                                          std::span<const int> m_y_schedule,
                                          const ScanGrid& grid,
                                          double denom_floor) {
  if (m_y_schedule.empty()) throw ParameterError("empty deepening schedule");
  for (std::size_t i = 1; i < m_y_schedule.size(); ++i)
    if (m_y_schedule[i] <= m_y_schedule[i - 1])
      throw ParameterError("deepening schedule must be strictly increasing");

  std::vector<StageResult> out;
  OverlapTable table = builder.build(m_y_schedule[0]);
  for (std::size_t stage = 0; stage < m_y_schedule.size(); ++stage) {
    if (stage > 0) table = builder.extend(table, m_y_schedule[stage]);
    const ScanResult r = grid_scan(table, grid, denom_floor);
    out.push_back({table.m_y, table.phi_m(), r.best().mu, r.best().inv_sigma_sq,
                   r.best().energy});
  }
  return out;
}

void scan_to_csv(const ScanResult& r, std::ostream& out) {
  out << "mu,inv_sigma_sq,energy,denom_magnitude,status\n";
  for (const ScanPoint& pt : r.points) {
    out << csv_double(pt.mu) << ',' << csv_double(pt.inv_sigma_sq) << ',';
    if (pt.status == PointStatus::Ok)
      out << csv_double(pt.energy) << ',' << csv_double(pt.denom_magnitude)
          << ",OK\n";
    else
      out << ",,DEGENERATE\n";
  }
}

}  // namespace qgf
