#pragma once

#include <vector>

#include "qgf/common.hpp"

namespace qgf {

class OverlapTable;  // overlap.hpp

/// Gaussian filter parameters: center mu, inverse variance 1/sigma^2, slice
/// size delta_y and cutoff m_y. The maximum evolution time is always the
/// derived product phi_m = m_y * delta_y.
struct FilterParams {
  double mu = 0.0;
  double inv_sigma_sq = 1.0;
  double delta_y = 0.1;
  int m_y = 0;

  double phi_m() const { return m_y * delta_y; }
  void validate() const;
};

/// Continuous-variable filter parameters (consumed by the cv module). The
/// Fock cutoff is run metadata only; the eigenbasis model does not truncate.
struct CvParams {
  double s = 1.0;
  int fock_cutoff = 50;
  std::vector<double> shift_schedule;
};

/// Classical weights of a linear-combination-of-unitaries filter.
///
/// b[y + m_y] is the weight of the evolution time t_y = y*dt for
/// y in [-m_y, m_y]; w[k + 2 m_y] = scale^2 * sum_{y-y'=k} b_y conj(b_{y'})
/// is the collapsed kernel over time differences, the object every energy
/// estimate contracts against. `response_scale` is the factor the response
/// sum carries per term (delta_y for the Gaussian set, 1 for the cosine set).
struct CoefficientSet {
  int m_y = 0;
  double dt = 0.0;
  double response_scale = 1.0;
  std::vector<cplx> b;  // size 2 m_y + 1
  std::vector<cplx> w;  // size 4 m_y + 1

  cplx b_at(int y) const { return b[static_cast<std::size_t>(y + m_y)]; }
  cplx w_at(int k) const { return w[static_cast<std::size_t>(k + 2 * m_y)]; }
};

/// Result of an energy estimate with its diagnostics.
struct EnergyEstimate {
  double energy = 0.0;
  double denom_magnitude = 0.0;
  double imag_residual = 0.0;  // Im(num/den); ~0 for Hermitian input
};

/// Relative floor below which the weighted-overlap denominator counts as
/// degenerate: |sum_k w_k D_k| < eps * sum_k |w_k|.
inline constexpr double kDefaultDenomFloor = 1e-12;

/// Gaussian weights b_y = (sigma/2 sqrt(pi)) e^{-(y dy sigma)^2/4}
/// e^{i mu y dy} and their collapsed kernel.
CoefficientSet gaussian_coefficients(const FilterParams& p);

/// Effective weight the truncated, discretized filter applies to an
/// eigenvalue: g(lambda) = sum_y b_y e^{-i lambda y dy} dy.
cplx filter_response(const FilterParams& p, double lambda);

/// Response of an arbitrary coefficient set at eigenvalue lambda.
cplx response(const CoefficientSet& c, double lambda);

/// Filtered Rayleigh quotient Re[sum_k w_k N_k / sum_k w_k D_k] using the
/// Hermitian extension D_{-k} = conj(D_k). The coefficient cutoff may be at
/// most the table's (a smaller set evaluates against the table prefix).
/// Throws DegenerateDenominator below the relative floor.
EnergyEstimate estimate_energy_detail(const OverlapTable& t,
                                      const CoefficientSet& c,
                                      double denom_floor = kDefaultDenomFloor);
double estimate_energy(const OverlapTable& t, const CoefficientSet& c,
                       double denom_floor = kDefaultDenomFloor);

/// Same contraction against a table whose numerator row holds an observable
/// other than the Hamiltonian. The collapsed time-difference sum is exact
/// only when the observable commutes with H (A = H, A = I, conserved
/// charges); for a noncommuting A it converges to the mixed element
/// Re[<psi_i|A|lambda_0> / <psi_i|lambda_0>] instead of the ground-state
/// expectation, because the filter acts on one side of A only.
double estimate_observable(const OverlapTable& t_a, const CoefficientSet& c,
                           double denom_floor = kDefaultDenomFloor);

class StateVector;  // statevector.hpp
struct Spectrum;    // pauli.hpp
class PauliSum;     // pauli.hpp

/// Ground-state expectation of an arbitrary observable through the filtered
/// state itself: <psi_f|A|psi_f> with |psi_f> proportional to G|psi_i>. This
/// keeps the filter on both sides of A (per-pair overlaps on hardware, the
/// eigenbasis here) and converges to <lambda_0|A|lambda_0> like the energy
/// does. Throws DegenerateDenominator when the filtered norm underflows.
double filtered_observable(const Spectrum& spec, const StateVector& psi,
                           const CoefficientSet& c, const PauliSum& a,
                           double denom_floor = kDefaultDenomFloor);

/// Truncated-binomial weights of the cosine filter
/// [cos((H - E)/L)]^{L^2/delta^2}: b_y = 2^{-m} C(m, m/2 - y) e^{i 2 y E / L}
/// at time spacing 2/L, truncated to |y| <= x L / (2 delta). The power
/// m = L^2/delta^2 must round to an even integer >= 2. Binomials are
/// evaluated in log space.
CoefficientSet cosine_coefficients(double big_l, double delta, double e_center,
                                   double x_trunc);

/// f_Y(h) = (sigma/2 sqrt(pi)) Int_{-Y}^{Y} e^{-sigma^2 y^2/4 - i h y} dy,
/// evaluated by adaptive quadrature. The imaginary part vanishes by symmetry;
/// the real part is returned.
double truncated_response_fY(double h, double sigma, double y_cut);

}  // namespace qgf
