#pragma once

#include <iosfwd>
#include <vector>

#include "qgf/filter.hpp"
#include "qgf/overlap.hpp"

namespace qgf {

/// Grid of Gaussian filter parameters to scan.
struct ScanGrid {
  std::vector<double> mu_values;
  std::vector<double> inv_sigma_sq_values;

  static ScanGrid from_ranges(double mu_min, double mu_max, double mu_step,
                              double isq_min, double isq_max, double isq_step);
  void validate() const;
};

enum class PointStatus { Ok, Degenerate };

struct ScanPoint {
  double mu = 0.0;
  double inv_sigma_sq = 0.0;
  double energy = 0.0;
  double denom_magnitude = 0.0;
  PointStatus status = PointStatus::Ok;
};

struct ScanResult {
  std::vector<ScanPoint> points;  // row-major: mu outer, 1/sigma^2 inner
  std::size_t best_index = 0;

  const ScanPoint& best() const { return points[best_index]; }
};

/// Evaluates the filtered energy at every grid point against one table.
/// Degenerate-denominator points are marked and excluded from the minimum;
/// the best point is the lowest energy, ties within 1e-12 resolved toward
/// the first point in row-major (mu, then 1/sigma^2) order, so the result
/// does not depend on evaluation order. Throws AllDegenerate when nothing
/// survives.
ScanResult grid_scan(const OverlapTable& t, const ScanGrid& grid,
                     double denom_floor = kDefaultDenomFloor);

struct StageResult {
  int m_y = 0;
  double phi_m = 0.0;
  double best_mu = 0.0;
  double best_inv_sigma_sq = 0.0;
  double best_energy = 0.0;
};

/// Runs grid_scan at each cutoff of a strictly increasing schedule, growing
/// the table through TableBuilder::extend between stages so previously
/// measured overlaps are reused.
std::vector<StageResult> iterative_deepen(const TableBuilder& builder,
                                          std::span<const int> m_y_schedule,
                                          const ScanGrid& grid,
                                          double denom_floor = kDefaultDenomFloor);

/// CSV with header mu,inv_sigma_sq,energy,denom_magnitude,status.
void scan_to_csv(const ScanResult& r, std::ostream& out);

}  // namespace qgf
