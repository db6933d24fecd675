#pragma once

#include <vector>

#include "qgf/common.hpp"

namespace qgf {

/// Inputs of the resource formulas. Big-O constants are set to one
/// throughout: outputs are planning estimates, not predictions.
struct ResourceInputs {
  double a0_sq = 0.0;      // initial ground-state overlap
  double epsilon = 0.0;    // target accuracy
  double sigma_sq = 0.0;   // filter variance
  double lambda_m = 0.0;   // spectral window
  double big_l = 0.0;      // local term count
  double delta_gap = 0.0;  // spectral gap

  void validate() const;
};

/// phi_m = 2 lambda_m / sigma^2
double max_evolution_time(const ResourceInputs& r);

/// Shot budget of the y-th overlap term:
/// (sigma / 2 sqrt(pi)) eps^-1 a0^-2 e^{2 (lambda_m - gap)^2 / sigma^2}
/// e^{-(y dy)^2 sigma^2 / 4}.
double shots_per_term(const ResourceInputs& r, long y, double delta_y);

/// Closed-form total of the profile over y in [-2 phi_m/dy, 2 phi_m/dy]:
/// eps^-1 a0^-2 e^{2 (lambda_m - gap)^2 / sigma^2} dy^-1 erf(sigma phi_m).
double shots_total_closed_form(const ResourceInputs& r, double delta_y);

/// Trotter gate-count estimate L^3 t^2 / eps_term for one evolution.
double trotter_gate_count(const ResourceInputs& r, double t, double eps_term);

struct WorstCaseDepth {
  double t = 0.0;      // evolution time maximizing the weighted gate count
  double count = 0.0;  // the corresponding estimate
};

/// Maximizes t^2 sigma e^{-t^2 sigma^2/4} weighted gate demand over
/// t in [0, 2 phi_m]: the interior optimum t = 2/sigma when sigma <= 2
/// lambda_m, else the endpoint t = 4 lambda_m / sigma^2.
WorstCaseDepth worst_case_depth(const ResourceInputs& r, double eps_term);

/// Per-k shot schedule following the Gaussian profile e^{-(k dy sigma)^2/4},
/// scaled so k = 0 receives base_shots; every entry at least 1.
std::vector<long> shot_schedule(double sigma_sq, double delta_y, int m_y,
                                long base_shots);

}  // namespace qgf
