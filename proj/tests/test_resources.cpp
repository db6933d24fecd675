#include <doctest.h>

#include <cmath>

#include "qgf/resources.hpp"

using namespace qgf;

namespace {
ResourceInputs base() {
  return {0.04, 1e-2, 0.5, 2.0, 16.0, 1.0};
}
}  // namespace

TEST_CASE("maximum evolution time formula") {
  ResourceInputs r = base();
  CHECK(max_evolution_time(r) == doctest::Approx(8.0));
  r.sigma_sq = 1.0;
  r.lambda_m = 1.2;
  CHECK(max_evolution_time(r) == doctest::Approx(2.4));
  r.sigma_sq = 2.0;
  CHECK(max_evolution_time(r) == doctest::Approx(1.2));  // halves when sigma^2 doubles
}

TEST_CASE("shot profile shape") {
  const ResourceInputs r = base();
  const double dy = 0.1;
  const double phi_m = max_evolution_time(r);
  const long y_edge = std::lround(phi_m / dy);
  const double center = shots_per_term(r, 0, dy);
  const double edge = shots_per_term(r, y_edge, dy);
  CHECK(center > edge);
  const double sigma = std::sqrt(r.sigma_sq);
  CHECK(center / edge ==
        doctest::Approx(std::exp(phi_m * phi_m * sigma * sigma / 4.0)).epsilon(1e-9));
  // Halving epsilon doubles every budget.
  ResourceInputs tight = r;
  tight.epsilon = r.epsilon / 2;
  CHECK(shots_per_term(tight, 3, dy) ==
        doctest::Approx(2 * shots_per_term(r, 3, dy)).epsilon(1e-12));
}

TEST_CASE("summed profile matches the closed form within two percent") {
  for (double phi_sigma : {3.0, 4.0, 6.0, 8.0}) {
    ResourceInputs r = base();
    r.sigma_sq = 1.0;
    r.lambda_m = phi_sigma / 2.0;  // sigma phi_m = phi_sigma
    const double dy = 0.1;
    const double phi_m = max_evolution_time(r);
    const long y_max = std::lround(std::floor(2.0 * phi_m / dy));
    double summed = 0.0;
    for (long y = -y_max; y <= y_max; ++y) summed += shots_per_term(r, y, dy);
    const double closed = shots_total_closed_form(r, dy);
    CHECK(std::abs(summed - closed) / closed < 0.02);
  }
}

TEST_CASE("trotter gate count formula") {
  const ResourceInputs r = base();
  CHECK(trotter_gate_count(r, 0.0, 1e-3) == 0.0);
  CHECK(trotter_gate_count(r, 2.0, 1e-3) ==
        doctest::Approx(4 * trotter_gate_count(r, 1.0, 1e-3)).epsilon(1e-12));
  ResourceInputs spec_case = base();
  spec_case.big_l = 12.0;
  CHECK(trotter_gate_count(spec_case, 8.0, 1e-3) == doctest::Approx(1.10592e8));
}

TEST_CASE("worst-case depth case split") {
  ResourceInputs narrow = base();  // sigma = 0.707 <= 2 lambda_m = 4
  const auto a = worst_case_depth(narrow, 1e-3);
  CHECK(a.t == doctest::Approx(2.0 / std::sqrt(narrow.sigma_sq)));
  ResourceInputs wide = base();
  wide.sigma_sq = 9.0;  // sigma = 3 > 2 lambda_m = 2
  wide.lambda_m = 1.0;
  const auto b = worst_case_depth(wide, 1e-3);
  CHECK(b.t == doctest::Approx(4.0 * wide.lambda_m / wide.sigma_sq));
  CHECK(a.count > 0.0);
  CHECK(b.count > 0.0);
  // The endpoint never exceeds the unconstrained optimum value.
  ResourceInputs at_opt = wide;
  const double t_opt = 2.0 / std::sqrt(at_opt.sigma_sq);
  const double unconstrained = trotter_gate_count(at_opt, t_opt, 1e-3) *
                               std::sqrt(at_opt.sigma_sq) / at_opt.a0_sq *
                               std::exp(2 * at_opt.lambda_m * at_opt.lambda_m /
                                        at_opt.sigma_sq) *
                               std::exp(-1.0);
  CHECK(b.count <= unconstrained + 1e-9);
}

TEST_CASE("outputs are monotone in the documented directions") {
  const ResourceInputs r = base();
  ResourceInputs larger_window = r;
  larger_window.lambda_m = r.lambda_m * 1.5;
  CHECK(max_evolution_time(larger_window) > max_evolution_time(r));
  CHECK(shots_total_closed_form(larger_window, 0.1) >
        shots_total_closed_form(r, 0.1));
  ResourceInputs better_overlap = r;
  better_overlap.a0_sq = r.a0_sq * 2;
  CHECK(shots_per_term(better_overlap, 0, 0.1) < shots_per_term(r, 0, 0.1));
  CHECK(shots_per_term(r, 0, 0.1) > 0.0);
}

TEST_CASE("input validation") {
  ResourceInputs bad = base();
  bad.a0_sq = 0.0;
  CHECK_THROWS_AS(bad.validate(), ParameterError);
  bad = base();
  bad.epsilon = -1.0;
  CHECK_THROWS_AS(max_evolution_time(bad), ParameterError);
  CHECK_THROWS_AS(shots_per_term(base(), 0, 0.0), ParameterError);
  CHECK_THROWS_AS(trotter_gate_count(base(), 1.0, 0.0), ParameterError);
}

TEST_CASE("per-entry schedule follows the gaussian profile") {
  const auto sched = shot_schedule(0.5, 0.16, 50, 100000);
  REQUIRE(sched.size() == 101);
  CHECK(sched[0] == 100000);
  for (std::size_t k = 1; k < sched.size(); ++k) {
    CHECK(sched[k] <= sched[k - 1]);
    CHECK(sched[k] >= 1);
  }
  const double expected_mid =
      100000 * std::exp(-std::pow(50 * 0.16, 2) * 0.5 / 4.0);
  CHECK(sched[50] == std::lround(expected_mid));
  CHECK_THROWS_AS(shot_schedule(0.0, 0.1, 5, 100), ParameterError);
}
