#include "qgf/filter.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "qgf/overlap.hpp"
#include "qgf/pauli.hpp"
#include "qgf/statevector.hpp"

namespace qgf {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

void FilterParams::validate() const {
  if (inv_sigma_sq <= 0.0)
    throw ParameterError("FilterParams: 1/sigma^2 must be positive");
  if (delta_y <= 0.0) throw ParameterError("FilterParams: delta_y must be positive");
  if (m_y < 0) throw ParameterError("FilterParams: m_y must be >= 0");
  if (!std::isfinite(mu)) throw ParameterError("FilterParams: mu must be finite");
}

namespace {

/// w_k = scale^2 sum_{y - y' = k} b_y conj(b_{y'}), k in [-2M, 2M].
void fill_kernel(CoefficientSet& c) {
  const int m = c.m_y;
  const double s2 = c.response_scale * c.response_scale;
  c.w.assign(static_cast<std::size_t>(4 * m + 1), cplx{});
  for (int k = -2 * m; k <= 2 * m; ++k) {
    const int lo = std::max(-m, k - m);
    const int hi = std::min(m, k + m);
    cplx acc{};
    for (int y = lo; y <= hi; ++y) acc += c.b_at(y) * std::conj(c.b_at(y - k));
    c.w[static_cast<std::size_t>(k + 2 * m)] = s2 * acc;
  }
}

}  // namespace

CoefficientSet gaussian_coefficients(const FilterParams& p) {
  p.validate();
  CoefficientSet c;
  c.m_y = p.m_y;
  c.dt = p.delta_y;
  c.response_scale = p.delta_y;
  const double sigma = 1.0 / std::sqrt(p.inv_sigma_sq);
  const double front = sigma / (2.0 * kSqrtPi);
  c.b.resize(static_cast<std::size_t>(2 * p.m_y + 1));
  for (int y = -p.m_y; y <= p.m_y; ++y) {
    const double t = y * p.delta_y;
    const double damp = std::exp(-(t * sigma) * (t * sigma) / 4.0);
    c.b[static_cast<std::size_t>(y + p.m_y)] =
        front * damp * std::exp(cplx{0.0, p.mu * t});
  }
  fill_kernel(c);
  return c;
}

cplx response(const CoefficientSet& c, double lambda) {
  cplx acc{};
  for (int y = -c.m_y; y <= c.m_y; ++y)
    acc += c.b_at(y) * std::exp(cplx{0.0, -lambda * y * c.dt});
  return acc * c.response_scale;
}

cplx filter_response(const FilterParams& p, double lambda) {
  return response(gaussian_coefficients(p), lambda);
}

EnergyEstimate estimate_energy_detail(const OverlapTable& t,
                                      const CoefficientSet& c,
                                      double denom_floor) {
  if (c.m_y > t.m_y)
    throw DimensionError("estimate_energy: coefficient cutoff exceeds table");
  if (c.m_y > 0 && std::abs(c.dt - t.delta_y) > 1e-12 * std::abs(t.delta_y))
    throw DimensionError("estimate_energy: time spacing mismatch");
  // Extended-precision accumulation: the sharpened-filter regime cancels the
  // sums down to a tiny residue that the energy ratio then amplifies.
  std::complex<long double> den{}, num{};
  long double wabs = 0.0;
  for (int k = -2 * c.m_y; k <= 2 * c.m_y; ++k) {
    const cplx w = c.w_at(k);
    const std::size_t a = static_cast<std::size_t>(std::abs(k));
    const cplx dk = k >= 0 ? t.d[a] : std::conj(t.d[a]);
    const cplx nk = k >= 0 ? t.n_h[a] : std::conj(t.n_h[a]);
    den += std::complex<long double>(w) * std::complex<long double>(dk);
    num += std::complex<long double>(w) * std::complex<long double>(nk);
    wabs += std::abs(std::complex<long double>(w));
  }
  if (std::abs(den) < denom_floor * wabs)
    throw DegenerateDenominator("filter annihilated the state numerically");
  const std::complex<long double> ratio = num / den;
  return {static_cast<double>(ratio.real()),
          static_cast<double>(std::abs(den)),
          static_cast<double>(ratio.imag())};
}

double estimate_energy(const OverlapTable& t, const CoefficientSet& c,
                       double denom_floor) {
  return estimate_energy_detail(t, c, denom_floor).energy;
}

double estimate_observable(const OverlapTable& t_a, const CoefficientSet& c,
                           double denom_floor) {
  return estimate_energy_detail(t_a, c, denom_floor).energy;
}

double filtered_observable(const Spectrum& spec, const StateVector& psi,
                           const CoefficientSet& c, const PauliSum& a,
                           double denom_floor) {
  const auto dim = static_cast<Eigen::Index>(psi.dim());
  if (spec.eigenvalues.size() != dim || a.n_qubits() != psi.n_qubits())
    throw DimensionError("filtered_observable: size mismatch");
  Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), dim);
  Eigen::VectorXcd coeffs = spec.eigenvectors.adjoint() * v;
  double norm_sq = 0.0, scale = 0.0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    coeffs[j] *= response(c, spec.eigenvalues[j]);
    norm_sq += std::norm(coeffs[j]);
    scale = std::max(scale, std::norm(response(c, spec.eigenvalues[j])));
  }
  if (norm_sq < denom_floor * std::max(scale, 1e-300))
    throw DegenerateDenominator("filter annihilated the state numerically");
  const Eigen::VectorXcd filtered = spec.eigenvectors * coeffs;
  const StateVector psi_f = StateVector::from_amplitudes(
      psi.n_qubits(), std::vector<cplx>(filtered.data(), filtered.data() + dim));
  return psi_f.inner(apply(a, psi_f)).real() / norm_sq;
}

CoefficientSet cosine_coefficients(double big_l, double delta, double e_center,
                                   double x_trunc) {
  if (big_l <= 0.0 || delta <= 0.0)
    throw ParameterError("cosine_coefficients: L and delta must be positive");
  const double power = (big_l * big_l) / (delta * delta);
  const long long m = std::llround(power);
  if (std::abs(power - static_cast<double>(m)) > 1e-6 * std::max(1.0, power) ||
      m < 2 || m % 2 != 0)
    throw ParameterError("cosine_coefficients: L^2/delta^2 must round to an even integer >= 2");
  const long long half = m / 2;
  long long y_max = static_cast<long long>(std::floor(x_trunc * big_l / (2.0 * delta) + 1e-12));
  if (y_max < 0) throw ParameterError("cosine_coefficients: empty truncation window");
  y_max = std::min(y_max, half);

  CoefficientSet c;
  c.m_y = static_cast<int>(y_max);
  c.dt = 2.0 / big_l;
  c.response_scale = 1.0;
  c.b.resize(static_cast<std::size_t>(2 * y_max + 1));
  const double log2m = static_cast<double>(m) * std::numbers::ln2;
  const double lg_m1 = std::lgamma(static_cast<double>(m) + 1.0);
  for (long long y = -y_max; y <= y_max; ++y) {
    const double lg = lg_m1 - std::lgamma(static_cast<double>(half - y) + 1.0) -
                      std::lgamma(static_cast<double>(half + y) + 1.0);
    const double mag = std::exp(lg - log2m);
    c.b[static_cast<std::size_t>(y + y_max)] =
        mag * std::exp(cplx{0.0, 2.0 * static_cast<double>(y) * e_center / big_l});
  }
  fill_kernel(c);
  return c;
}

double truncated_response_fY(double h, double sigma, double y_cut) {
  if (y_cut <= 0.0) throw ParameterError("truncated_response_fY: Y must be positive");
  const auto integrand = [&](double y) {
    return std::exp(-sigma * sigma * y * y / 4.0) * std::cos(h * y);
  };
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          integrand, -y_cut, y_cut, 15, 1e-14);
  return sigma / (2.0 * kSqrtPi) * integral;
}

}  // namespace qgf
