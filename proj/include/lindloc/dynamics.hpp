#pragma once

#include <optional>
#include <vector>

#include "lindloc/liouvillian.hpp"
#include "lindloc/thermo.hpp"

namespace lindloc {

/// How each RK4 step is carried out. All three produce the classical RK4
/// iterate rho_{k+1} = P(dt L) rho_k with P(x) = 1 + x + x^2/2 + x^3/6 + x^4/24.
enum class Stepper {
  automatic,   // propagator when d^2 <= kMaxPropagatorRows, else superop/direct
  propagator,  // P(dt L) formed once, raised to record_stride by squaring
  superop,     // four superoperator mat-vecs per step
  direct,      // four operator-form generator applications per step
};

struct SolverConfig {
  double dt = 0.0;
  double t_max = 0.0;
  std::size_t record_stride = 1;
  double positivity_tol = 1e-9;
  Stepper stepper = Stepper::automatic;
  bool audit = true;  // fill per-record ThermoReports

  static constexpr std::size_t kMaxPropagatorRows = 256;
  static constexpr double kStabilityLimit = 0.1;  // dt * ||L||_inf
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexMatrix> states;
  std::vector<ThermoReport> reports;  // empty unless SolverConfig::audit
};

/// Fixed-step classical RK4 on the vectorized state. Checks trace,
/// Hermiticity and positivity of every recorded state; throws
/// IntegrationError (with the time) on violation and ConfigError when the
/// stability guard dt * ||L||_inf <= 0.1 fails.
Trajectory evolve(const Generator& gen, const ComplexMatrix& rho0, const SolverConfig& cfg);

/// Largest dt passing the stability guard.
double max_stable_dt(const Generator& gen);

/// Estimate of the slowest relaxation time: 2 / min_i Gamma_i where
/// Gamma_i is the summed (scaled) rate of bath i's channels, i.e. the
/// coherence decay time of the slowest-relaxing subsystem.
double slowest_relaxation_time(const Generator& gen);

struct SteadyStateResult {
  ComplexMatrix rho_ss;
  double residual = 0.0;  // ||L[rho_ss]||_max
  int null_dim = 0;
  double smallest_singular_value = 0.0;
  double next_singular_value = 0.0;
  bool ill_conditioned = false;
};

/// Null vector of the superoperator via SVD, Hermitized and trace
/// normalized. Throws NonUniqueSteadyStateError when the numerical null
/// space has dimension > 1.
SteadyStateResult steady_state(const Generator& gen);

/// Throws IntegrationError at `time` when rho is not a density matrix
/// within the Trajectory tolerances.
void check_density_matrix(const ComplexMatrix& rho, double positivity_tol, double time);

}  // namespace lindloc
