#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qgf/filter.hpp"
#include "qgf/overlap.hpp"
#include "qgf/pauli.hpp"

using namespace qgf;

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

StateVector random_normalized(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<cplx> amps(std::size_t{1} << n);
  for (auto& a : amps) a = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  StateVector psi = StateVector::from_amplitudes(n, std::move(amps));
  psi.normalize();
  return psi;
}

/// Independent eigenbasis route for the filtered Rayleigh quotient:
/// sum_j p_j |g(lambda_j)|^2 lambda_j / sum_j p_j |g(lambda_j)|^2,
/// with g evaluated through filter_response, never through a table.
double eigenbasis_energy(const Spectrum& spec, const StateVector& psi,
                         const FilterParams& params) {
  const auto dim = spec.eigenvalues.size();
  Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), dim);
  const Eigen::VectorXcd a = spec.eigenvectors.adjoint() * v;
  double num = 0.0, den = 0.0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double w = std::norm(a[j]) * std::norm(filter_response(params, spec.eigenvalues[j]));
    den += w;
    num += w * spec.eigenvalues[j];
  }
  return num / den;
}

}  // namespace

TEST_CASE("gaussian coefficient values and symmetries") {
  const FilterParams p{0.7, 2.0, 0.16, 25};
  const CoefficientSet c = gaussian_coefficients(p);
  const double sigma = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(c.b_at(0) - cplx{sigma / (2 * kSqrtPi), 0.0}) < 1e-15);
  for (int y = 1; y <= p.m_y; ++y) {
    CHECK(std::abs(c.b_at(-y) - std::conj(c.b_at(y))) < 1e-15);
    CHECK(std::abs(std::abs(c.b_at(-y)) - std::abs(c.b_at(y))) < 1e-15);
    const double expected_arg = std::remainder(p.mu * y * p.delta_y, 2 * std::numbers::pi);
    CHECK(std::remainder(std::arg(c.b_at(y)) - expected_arg, 2 * std::numbers::pi) ==
          doctest::Approx(0.0).epsilon(1e-9));
  }
  cplx w_sum{};
  for (int k = -2 * p.m_y; k <= 2 * p.m_y; ++k) {
    CHECK(std::abs(c.w_at(-k) - std::conj(c.w_at(k))) < 1e-15);
    w_sum += c.w_at(k);
  }
  CHECK(w_sum.imag() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(w_sum.real() > 0.0);
}

TEST_CASE("single-term kernel at m_y = 0") {
  const FilterParams p{0.0, 2.0, 0.16, 0};
  const CoefficientSet c = gaussian_coefficients(p);
  REQUIRE(c.w.size() == 1);
  const double sigma_sq = 0.5;
  CHECK(c.w_at(0).real() ==
        doctest::Approx(0.16 * 0.16 * sigma_sq / (4 * std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("coefficient sum approximates the unit response at the center") {
  const FilterParams p{0.0, 2.0, 0.16, 50};
  const cplx g0 = filter_response(p, 0.0);
  CHECK(std::abs(g0 - cplx{1.0, 0.0}) < 1e-3);
}

TEST_CASE("response is periodic in lambda with period 2 pi / delta_y") {
  const FilterParams p{0.3, 1.5, 0.16, 30};
  const double period = 2 * std::numbers::pi / p.delta_y;
  for (double lam : {0.2, 1.7, 4.0}) {
    const cplx a = filter_response(p, lam);
    const cplx b = filter_response(p, lam + period);
    CHECK(std::abs(a - b) < 1e-9);
  }
}

TEST_CASE("response approximates the gaussian inside the window") {
  // 1/sigma^2 = 2, phi_m = 8: the window edge sits at lambda = 2.
  const FilterParams p{0.0, 2.0, 0.16, 50};
  double worst = 0.0;
  for (double lam = 0.0; lam <= 1.8 + 1e-9; lam += 0.01)
    worst = std::max(worst,
                     std::abs(filter_response(p, lam) - std::exp(-2 * lam * lam)));
  CHECK(worst < 0.02);
  // Beyond the window the response oscillates around the truncation floor.
  int sign_changes = 0;
  double prev = filter_response(p, 2.5).real();
  for (double lam = 2.51; lam <= 6.0 + 1e-9; lam += 0.01) {
    const double cur = filter_response(p, lam).real();
    if ((cur > 0) != (prev > 0)) ++sign_changes;
    prev = cur;
  }
  CHECK(sign_changes >= 2);
}

TEST_CASE("zero-cutoff estimate returns the bare Rayleigh quotient") {
  const PauliSum h = shift_spectrum(build_tfim(3, 1.0, 2.0, true), 9.0);
  const StateVector psi = random_normalized(3, 11);
  const OverlapTable t =
      compute_table(h, psi, 0.1, 0, TableMode::exact(), Evolver::exact());
  const CoefficientSet c = gaussian_coefficients({2.0, 1.3, 0.1, 0});
  const double rayleigh = psi.inner(apply(h, psi)).real();
  CHECK(estimate_energy(t, c) == doctest::Approx(rayleigh).epsilon(1e-12));
}

TEST_CASE("table route equals the eigenbasis route") {
  const PauliSum h = shift_spectrum(build_tfim(4, 1.0, 2.0, true), 15.0);
  const Spectrum spec = diagonalize(h);
  const StateVector psi = random_normalized(4, 12);
  const OverlapTable t =
      compute_table(h, psi, 0.16, 50, TableMode::exact(), Evolver::exact());
  for (const double mu_off : {0.0, -0.5, -1.0}) {
    const FilterParams params{spec.eigenvalues[0] + mu_off, 2.0, 0.16, 50};
    const auto est = estimate_energy_detail(t, gaussian_coefficients(params));
    const double oracle = eigenbasis_energy(spec, psi, params);
    CHECK(std::abs(est.energy - oracle) < 1e-10);
    CHECK(std::abs(est.imag_residual) < 1e-9);
    CHECK(est.energy > spec.eigenvalues[0] - 1e-9);
    CHECK(est.energy < spec.eigenvalues[spec.eigenvalues.size() - 1] + 1e-9);
  }
}

TEST_CASE("estimate accepts coefficient prefixes and rejects oversized sets") {
  const PauliSum h = build_tfim(2, 1.0, 2.0, true);
  const StateVector psi = random_normalized(2, 13);
  const OverlapTable t =
      compute_table(h, psi, 0.1, 10, TableMode::exact(), Evolver::exact());
  const CoefficientSet small = gaussian_coefficients({0.0, 1.0, 0.1, 5});
  CHECK_NOTHROW(estimate_energy(t, small));
  const CoefficientSet big = gaussian_coefficients({0.0, 1.0, 0.1, 11});
  CHECK_THROWS_AS(estimate_energy(t, big), DimensionError);
  const CoefficientSet wrong_dt = gaussian_coefficients({0.0, 1.0, 0.2, 5});
  CHECK_THROWS_AS(estimate_energy(t, wrong_dt), DimensionError);
}

TEST_CASE("degenerate denominator raises") {
  PauliSum h(1);
  PauliString z(1);
  z.set(0, Pauli::Z);
  h.add(1.0, z);
  const double r = 1.0 / std::numbers::sqrt2;
  const StateVector plus = StateVector::from_amplitudes(1, {r, r});
  const OverlapTable t =
      compute_table(h, plus, 0.1, 400, TableMode::exact(), Evolver::exact());
  // A long, sharp filter centered far below the spectrum (and away from the
  // 2 pi / delta_y alias peaks) suppresses both eigenvalues past the
  // double-precision floor.
  const CoefficientSet c = gaussian_coefficients({-50.0, 0.5, 0.1, 400});
  CHECK_THROWS_AS(estimate_energy(t, c), DegenerateDenominator);
}

TEST_CASE("wide-filter limit recovers the bare Rayleigh quotient") {
  const PauliSum h = shift_spectrum(build_tfim(3, 1.0, 2.0, true), 7.0);
  const StateVector psi = random_normalized(3, 14);
  const OverlapTable t =
      compute_table(h, psi, 0.1, 30, TableMode::exact(), Evolver::exact());
  const double rayleigh = psi.inner(apply(h, psi)).real();
  const double wide = estimate_energy(t, gaussian_coefficients({0.0, 1e-8, 0.1, 30}));
  CHECK(wide == doctest::Approx(rayleigh).epsilon(1e-6));
}

TEST_CASE("estimate_observable trivial cases") {
  const PauliSum h = shift_spectrum(build_tfim(3, 1.0, 2.0, true), 7.0);
  const StateVector psi = random_normalized(3, 15);
  const FilterParams params{7.0 - 2.0, 2.0, 0.1, 20};
  const CoefficientSet c = gaussian_coefficients(params);

  PauliSum identity(3);
  identity.add_identity(1.0);
  const OverlapTable t_id =
      observable_table(identity, h, psi, 0.1, 20, TableMode::exact(), Evolver::exact());
  CHECK(estimate_observable(t_id, c) == doctest::Approx(1.0).epsilon(1e-12));

  const OverlapTable t_h =
      observable_table(h, h, psi, 0.1, 20, TableMode::exact(), Evolver::exact());
  const OverlapTable t_base =
      compute_table(h, psi, 0.1, 20, TableMode::exact(), Evolver::exact());
  CHECK(estimate_observable(t_h, c) ==
        doctest::Approx(estimate_energy(t_base, c)).epsilon(1e-10));
}

TEST_CASE("filtered observables: two-sided route vs the one-sided protocol") {
  const PauliSum h = shift_spectrum(build_tfim(4, 1.0, 2.0, true), 15.0);
  const Spectrum spec = diagonalize(h);
  PauliSum a(4);
  for (int q = 0; q < 4; ++q) {
    PauliString x(4);
    x.set(q, Pauli::X);
    a.add(1.0, x);
  }
  const StateVector psi = prepare_ghz_z(4);
  const OverlapTable t_h =
      compute_table(h, psi, 0.16, 50, TableMode::exact(), Evolver::exact());
  // Pick the best filter by scanning the energy, then reuse it for A.
  double best_e = 1e300;
  FilterParams best{};
  for (double mu = spec.eigenvalues[0] - 1.0; mu <= spec.eigenvalues[0] + 1e-9; mu += 0.1)
    for (double isq : {1.0, 1.5, 2.0, 2.5, 3.0}) {
      const FilterParams params{mu, isq, 0.16, 50};
      const double e = estimate_energy(t_h, gaussian_coefficients(params));
      if (e < best_e) {
        best_e = e;
        best = params;
      }
    }
  Eigen::VectorXcd ground = spec.eigenvectors.col(0);
  const Eigen::MatrixXcd a_dense = dense_matrix(a);
  const double exact_a = (ground.adjoint() * a_dense * ground)(0).real();

  // Keeping the filter on both sides of A recovers the ground expectation
  // within the same kind of budget as the energy.
  const double two_sided =
      filtered_observable(spec, psi, gaussian_coefficients(best), a);
  CHECK(std::abs(two_sided - exact_a) < 2e-2);

  // The collapsed one-sided protocol instead converges to the mixed element
  // <psi|A|lambda_0>/<psi|lambda_0>; for ZZ-dominated GHZ input that sits far
  // from the ground expectation. Assert its actual limit.
  const OverlapTable t_a =
      observable_table(a, h, psi, 0.16, 50, TableMode::exact(), Evolver::exact());
  const double one_sided = estimate_observable(t_a, gaussian_coefficients(best));
  Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), 16);
  const cplx overlap_a = (v.adjoint() * a_dense * ground)(0);
  const cplx overlap = (v.adjoint() * ground)(0);
  const double mixed_limit = (overlap_a / overlap).real();
  CHECK(std::abs(one_sided - mixed_limit) < 2e-2);
  CHECK(std::abs(mixed_limit - exact_a) > 0.1);  // the distinction is real
}

TEST_CASE("untruncated cosine weights reproduce the cosine power exactly") {
  Rng rng(17);
  const double big_l = 2.0, e_center = 0.3;
  for (int power : {2, 10, 60, 200}) {
    const double delta = big_l / std::sqrt(static_cast<double>(power));
    const CoefficientSet c = cosine_coefficients(big_l, delta, e_center, 1e9);
    CHECK(c.m_y == power / 2);
    cplx csum{};
    for (int y = -c.m_y; y <= c.m_y; ++y) csum += c.b_at(y) * std::exp(cplx{0.0, -2.0 * y * e_center / big_l});
    CHECK(std::abs(csum - cplx{1.0, 0.0}) < 1e-12);  // binomial normalization
    for (int trial = 0; trial < 100; ++trial) {
      const double lam = rng.uniform(-3.0, 3.0);
      const double expected =
          std::pow(std::cos((lam - e_center) / big_l), power);
      CHECK(std::abs(response(c, lam) - cplx{expected, 0.0}) <= 1e-12);
    }
  }
  // The identity holds for every even power up to 200.
  double worst = 0.0;
  for (int power = 2; power <= 200; power += 2) {
    const double delta = big_l / std::sqrt(static_cast<double>(power));
    const CoefficientSet c = cosine_coefficients(big_l, delta, e_center, 1e9);
    for (int trial = 0; trial < 5; ++trial) {
      const double lam = rng.uniform(-3.0, 3.0);
      const double expected = std::pow(std::cos((lam - e_center) / big_l), power);
      worst = std::max(worst, std::abs(response(c, lam) - cplx{expected, 0.0}));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("cosine parameter validation") {
  CHECK_THROWS_AS(cosine_coefficients(2.0, 2.0 / std::sqrt(3.0), 0.0, 1.0),
                  ParameterError);  // odd power
  CHECK_THROWS_AS(cosine_coefficients(2.0, 1.1, 0.0, 1.0), ParameterError);
  const CoefficientSet truncated = cosine_coefficients(2.0, 0.2, 0.0, 0.5);
  CHECK(truncated.m_y == 2);  // floor(0.5 * 2 / 0.4) = 2
  CHECK(truncated.dt == doctest::Approx(1.0));
}

TEST_CASE("cosine set runs through the energy estimator") {
  const double big_l = 4.0;
  const PauliSum h = build_tfim(3, 1.0, 2.0, true);
  const Spectrum spec = diagonalize(h);
  const StateVector psi = random_normalized(3, 18);
  const CoefficientSet c =
      cosine_coefficients(big_l, big_l / 10.0, spec.eigenvalues[0], 1e9);
  const OverlapTable t = compute_table(h, psi, 2.0 / big_l, c.m_y,
                                       TableMode::exact(), Evolver::exact());
  const double table_route = estimate_energy(t, c);
  // Independent eigenbasis route with the cosine response.
  Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), 8);
  const Eigen::VectorXcd a = spec.eigenvectors.adjoint() * v;
  double num = 0.0, den = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double w = std::norm(a[j]) * std::norm(response(c, spec.eigenvalues[j]));
    den += w;
    num += w * spec.eigenvalues[j];
  }
  CHECK(table_route == doctest::Approx(num / den).epsilon(1e-10));
  CHECK(table_route > spec.eigenvalues[0] - 1e-9);
}

TEST_CASE("truncated gaussian integral basics") {
  const double sigma = 0.9;
  CHECK(truncated_response_fY(0.0, sigma, 100.0 / sigma) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(truncated_response_fY(0.0, 1.0, 0.0), ParameterError);
}

TEST_CASE("truncation error obeys the asymptotic envelope") {
  const double sigma = 1.0;
  for (double a : {1.0, 2.0, 3.0, 4.0}) {
    const double h = a * sigma;
    const double y_cut = 2.0 * h / (sigma * sigma);
    const double exact = std::exp(-h * h / (sigma * sigma));
    const double truncated = truncated_response_fY(h, sigma, y_cut);
    const double ratio = std::abs(exact - truncated) / ((sigma / h) * exact);
    CHECK(ratio > 0.0);
    CHECK(ratio <= 1.5);
  }
}

TEST_CASE("discrete sum error tracks the aliasing estimate") {
  const double sigma = std::sqrt(0.5), dy = 0.16, y_cut = 8.0;
  const int j_max = 50;  // y_cut / dy
  for (double h : {0.15, 0.3, 0.5, 1.3, 1.9}) {  // points where sin(h Y) is not small
    double discrete = 0.0;
    for (int j = -j_max; j <= j_max; ++j) {
      const double y = j * dy;
      discrete += std::exp(-sigma * sigma * y * y / 4.0) * std::cos(h * y);
    }
    discrete *= sigma / (2.0 * kSqrtPi) * dy;
    const double integral = truncated_response_fY(h, sigma, y_cut);
    const double actual = std::abs(discrete - integral);
    const double estimate = sigma * dy / (2.0 * kSqrtPi) *
                            std::exp(-sigma * sigma * y_cut * y_cut / 4.0) *
                            std::abs(std::sin(h * y_cut));
    CHECK(actual / estimate > 1.0 / 3.0);
    CHECK(actual / estimate < 3.0);
  }
}
