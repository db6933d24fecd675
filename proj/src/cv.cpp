#include "qgf/cv.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace qgf {

std::pair<StateVector, double> cv_filtered_state(const Spectrum& spec,
                                                 const StateVector& psi,
                                                 double s) {
  if (s <= 0.0) throw ParameterError("cv filter: squeezing factor must be positive");
  const auto dim = static_cast<Eigen::Index>(psi.dim());
  if (spec.eigenvalues.size() != dim)
    throw DimensionError("cv filter: spectrum and state sizes differ");
  Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), dim);
  Eigen::VectorXcd a = spec.eigenvectors.adjoint() * v;
  double c = 0.0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double lam = spec.eigenvalues[j];
    const double w = std::exp(-s * lam * lam / 2.0);
    a[j] *= w;
    c += std::norm(a[j]);
  }
  if (c < 1e-300)
    throw UnderflowAnnihilated("cv filter drove the state norm to zero");
  a /= std::sqrt(c);
  Eigen::VectorXcd out = spec.eigenvectors * a;
  return {StateVector::from_amplitudes(psi.n_qubits(),
                                       std::vector<cplx>(out.data(), out.data() + dim)),
          c};
}

std::vector<CvRunRecord> cv_iterate(const PauliSum& h, const StateVector& psi,
                                    double s, std::span<const double> schedule) {
  if (schedule.empty()) throw ParameterError("cv_iterate: empty shift schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] < schedule[i - 1])
      throw ParameterError("cv_iterate: schedule must be nondecreasing");
  const Spectrum spec = diagonalize(h);
  const double lambda0 = spec.eigenvalues[0];
  const auto dim = spec.eigenvalues.size();
  Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), dim);
  const Eigen::VectorXcd a = spec.eigenvectors.adjoint() * v;

  std::vector<CvRunRecord> records;
  records.reserve(schedule.size());
  for (const double shift : schedule) {
    double c = 0.0, energy_num = 0.0;
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double lam = spec.eigenvalues[j] + shift;
      const double w2 = std::exp(-s * lam * lam);
      const double p = std::norm(a[j]) * w2;
      c += p;
      energy_num += p * spec.eigenvalues[j];
    }
    if (c < 1e-300)
      throw UnderflowAnnihilated("cv filter drove the state norm to zero");
    const double energy = energy_num / c;
    records.push_back({shift, energy, std::abs(energy - lambda0), c,
                       std::ceil(1.0 / c)});
  }
  return records;
}

StateVector momentum_grid_overlap(const Spectrum& spec, const StateVector& psi,
                                  double s, const MomentumGrid& grid) {
  if (s <= 0.0) throw ParameterError("momentum grid: squeezing factor must be positive");
  if (grid.p_max < 6.0 * s)
    throw ParameterError("momentum grid: p_max must cover >= 6 s");
  if (grid.n_points < 200)
    throw ParameterError("momentum grid: need at least 200 points");
  const auto dim = static_cast<Eigen::Index>(psi.dim());
  if (spec.eigenvalues.size() != dim)
    throw DimensionError("momentum grid: spectrum and state sizes differ");

  Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), dim);
  Eigen::VectorXcd a = spec.eigenvectors.adjoint() * v;
  const double dp = 2.0 * grid.p_max / (grid.n_points - 1);
  const double front = 1.0 / (s * std::sqrt(std::numbers::pi));
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double lam = spec.eigenvalues[j];
    // Trapezoid over the symmetric grid; the sine part cancels, so only the
    // cosine component is accumulated and the weight stays real.
    double acc = 0.0;
    for (int i = 0; i < grid.n_points; ++i) {
      const double p = -grid.p_max + i * dp;
      const double f = std::exp(-p * p / (s * s)) * std::cos(p * lam);
      acc += (i == 0 || i == grid.n_points - 1) ? 0.5 * f : f;
    }
    a[j] *= front * acc * dp;
  }
  Eigen::VectorXcd out = spec.eigenvectors * a;
  return StateVector::from_amplitudes(
      psi.n_qubits(), std::vector<cplx>(out.data(), out.data() + dim));
}

void cv_records_to_csv(std::span<const CvRunRecord> records, std::ostream& out) {
  auto fmt = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  out << "shift,energy,error,success_prob,required_measurements\n";
  for (const auto& r : records)
    out << fmt(r.shift_energy) << ',' << fmt(r.estimated_energy) << ','
        << fmt(r.energy_error) << ',' << fmt(r.success_probability) << ','
        << fmt(r.required_measurements) << '\n';
}

}  // namespace qgf
