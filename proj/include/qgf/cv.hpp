#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "qgf/pauli.hpp"
#include "qgf/statevector.hpp"

namespace qgf {

/// One stage of the iterative squeezed-qumode run.
struct CvRunRecord {
  double shift_energy = 0.0;
  double estimated_energy = 0.0;  // Rayleigh quotient of the filtered state
  double energy_error = 0.0;      // against the exact ground energy
  double success_probability = 0.0;
  double required_measurements = 0.0;  // ceil(1/C)
};

/// Projects the qumode filter onto the register: eigencomponent a_j is
/// rescaled by e^{-s lambda_j^2 / 2} and the state renormalized. Returns the
/// filtered state and the success probability C = sum |a_j|^2 e^{-s lambda_j^2}.
std::pair<StateVector, double> cv_filtered_state(const Spectrum& spec,
                                                 const StateVector& psi,
                                                 double s);

/// Runs cv_filtered_state once per shift of a nondecreasing schedule at a
/// fixed squeezing factor, recording errors against the exact ground energy.
std::vector<CvRunRecord> cv_iterate(const PauliSum& h, const StateVector& psi,
                                    double s, std::span<const double> schedule);

struct MomentumGrid {
  double p_max = 0.0;
  int n_points = 0;
};

/// Quadrature oracle for the qumode projection integral
/// (1/(s sqrt(pi))) Int e^{-p^2/s^2} e^{-i p H} |psi> dp over a finite
/// momentum grid: each eigencomponent is weighted by the discretized
/// integral (which tends to e^{-s^2 lambda^2 / 4}). Returns the unnormalized
/// filtered amplitudes.
StateVector momentum_grid_overlap(const Spectrum& spec, const StateVector& psi,
                                  double s, const MomentumGrid& grid);

/// CSV with header shift,energy,error,success_prob,required_measurements.
void cv_records_to_csv(std::span<const CvRunRecord> records, std::ostream& out);

}  // namespace qgf
