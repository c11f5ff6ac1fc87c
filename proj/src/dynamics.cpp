#include "lindloc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lindloc/eigen.hpp"
#include "lindloc/errors.hpp"
#include "lindloc/log.hpp"
#include "lindloc/simd/kernels.hpp"

namespace lindloc {

namespace {

constexpr double kTraceTol = 1e-8;
constexpr double kHermitianTol = 1e-9;
constexpr double kNullRelTol = 1e-10;
constexpr double kSeparationFactor = 1e3;

Stepper resolve_stepper(const Generator& gen, Stepper requested) {
  const bool has_superop = gen.full.has_superop();
  const std::size_t rows = gen.dim() * gen.dim();
  if (requested == Stepper::automatic) {
    if (has_superop && rows <= SolverConfig::kMaxPropagatorRows) return Stepper::propagator;
    return has_superop ? Stepper::superop : Stepper::direct;
  }
  if ((requested == Stepper::propagator || requested == Stepper::superop) && !has_superop) {
    throw ConfigError("stepper requires a materialized superoperator, which is unavailable at "
                      "dimension " + std::to_string(gen.dim()));
  }
  return requested;
}

// P(dt L) = I + X (I + X/2 (I + X/3 (I + X/4))), X = dt L.
ComplexMatrix rk4_propagator(const ComplexMatrix& superop, double dt) {
  const std::size_t n = superop.rows();
  const auto id = ComplexMatrix::identity(n);
  const ComplexMatrix x = dt * superop;
  ComplexMatrix t = id + 0.25 * x;
  t = id + (1.0 / 3.0) * (x * t);
  t = id + 0.5 * (x * t);
  return id + x * t;
}

ComplexMatrix matrix_power(ComplexMatrix base, std::size_t exponent) {
  ComplexMatrix result = ComplexMatrix::identity(base.rows());
  bool first = true;
  while (exponent > 0) {
    if (exponent & 1U) {
      result = first ? base : result * base;
      first = false;
    }
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

// Classical RK4 on a vector, given y = L x.
template <typename ApplyFn>
void rk4_steps(std::vector<cplx>& v, double dt, std::size_t steps, ApplyFn&& apply_l) {
  const std::size_t n = v.size();
  std::vector<cplx> k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (std::size_t s = 0; s < steps; ++s) {
    apply_l(v, k1);
    tmp = v;
    simd::axpy(n, 0.5 * dt, k1.data(), tmp.data());
    apply_l(tmp, k2);
    tmp = v;
    simd::axpy(n, 0.5 * dt, k2.data(), tmp.data());
    apply_l(tmp, k3);
    tmp = v;
    simd::axpy(n, dt, k3.data(), tmp.data());
    apply_l(tmp, k4);
    simd::axpy(n, dt / 6.0, k1.data(), v.data());
    simd::axpy(n, dt / 3.0, k2.data(), v.data());
    simd::axpy(n, dt / 3.0, k3.data(), v.data());
    simd::axpy(n, dt / 6.0, k4.data(), v.data());
  }
}

}  // namespace

void check_density_matrix(const ComplexMatrix& rho, double positivity_tol, double time) {
  const cplx tr = rho.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream msg;
    msg << "trace drifted to " << tr << " at t=" << time;
    throw IntegrationError(msg.str(), time);
  }
  const double asym = rho.hermitian_asymmetry();
  if (asym > kHermitianTol) {
    std::ostringstream msg;
    msg << "state lost Hermiticity (max |rho - rho^dagger| = " << asym << ") at t=" << time;
    throw IntegrationError(msg.str(), time);
  }
  const double lmin = min_eigenvalue(hermitian_part(rho));
  if (lmin < -positivity_tol) {
    std::ostringstream msg;
    msg << "positivity violated (min eigenvalue " << lmin << " < -" << positivity_tol
        << ") at t=" << time;
    throw IntegrationError(msg.str(), time);
  }
}

double max_stable_dt(const Generator& gen) {
  const double norm = gen.full.norm_inf();
  return norm > 0.0 ? SolverConfig::kStabilityLimit / norm
                    : std::numeric_limits<double>::infinity();
}

double slowest_relaxation_time(const Generator& gen) {
  double slowest = std::numeric_limits<double>::infinity();
  for (const auto& d : gen.dissipators) {
    double total = 0.0;
    for (const auto& ch : d.channels) total += ch.rate;
    slowest = std::min(slowest, total);
  }
  if (!(slowest > 0.0)) return std::numeric_limits<double>::infinity();
  return 2.0 / slowest;
}

Trajectory evolve(const Generator& gen, const ComplexMatrix& rho0, const SolverConfig& cfg) {
  if (!(cfg.dt > 0.0) || !(cfg.t_max > 0.0)) throw ConfigError("solver: dt and t_max must be > 0");
  if (cfg.record_stride == 0) throw ConfigError("solver: record_stride must be >= 1");
  if (rho0.rows() != gen.dim() || rho0.cols() != gen.dim()) {
    throw DimensionError("evolve: initial state dimension does not match the generator");
  }
  check_density_matrix(rho0, cfg.positivity_tol, 0.0);

  const double norm = gen.full.norm_inf();
  if (cfg.dt * norm > SolverConfig::kStabilityLimit) {
    std::ostringstream msg;
    msg << "solver: stability guard failed, dt * ||L||_inf = " << cfg.dt * norm << " > "
        << SolverConfig::kStabilityLimit << " (use dt <= " << max_stable_dt(gen) << ")";
    throw ConfigError(msg.str());
  }
  if (gen.alpha > 0.0 && cfg.t_max >= 0.1 / (gen.alpha * gen.alpha)) {
    log().warn("t_max = {} reaches 0.1/alpha^2 = {}; outside the validity window of the "
               "weak-coupling master equation", cfg.t_max, 0.1 / (gen.alpha * gen.alpha));
  }

  const auto total_steps =
      static_cast<std::size_t>(std::ceil(cfg.t_max / cfg.dt - 1e-9));
  const Stepper stepper = resolve_stepper(gen, cfg.stepper);
  log().debug("evolve: {} steps of dt={} with stepper {}", total_steps, cfg.dt,
              static_cast<int>(stepper));

  Trajectory traj;
  auto record = [&](std::vector<cplx> const& v, std::size_t step) {
    const double t = static_cast<double>(step) * cfg.dt;
    ComplexMatrix rho = unvectorize(v);
    check_density_matrix(rho, cfg.positivity_tol, t);
    if (cfg.audit) traj.reports.push_back(audit(gen, rho));
    traj.times.push_back(t);
    traj.states.push_back(std::move(rho));
  };

  std::vector<cplx> v = vectorize(rho0);
  record(v, 0);

  if (stepper == Stepper::propagator) {
    const ComplexMatrix one_step = rk4_propagator(gen.superop(), cfg.dt);
    const std::size_t stride = std::min(cfg.record_stride, std::max<std::size_t>(total_steps, 1));
    const ComplexMatrix stride_map = matrix_power(one_step, stride);
    std::vector<cplx> next(v.size());
    std::size_t step = 0;
    while (step + stride <= total_steps) {
      simd::gemv(next.size(), v.size(), stride_map.data().data(), v.data(), next.data());
      std::swap(v, next);
      step += stride;
      record(v, step);
    }
    if (step < total_steps) {
      const ComplexMatrix tail = matrix_power(one_step, total_steps - step);
      simd::gemv(next.size(), v.size(), tail.data().data(), v.data(), next.data());
      std::swap(v, next);
      record(v, total_steps);
    }
    return traj;
  }

  auto advance = [&](std::size_t steps) {
    if (stepper == Stepper::superop) {
      const ComplexMatrix& l = gen.superop();
      rk4_steps(v, cfg.dt, steps, [&](const std::vector<cplx>& x, std::vector<cplx>& y) {
        simd::gemv(y.size(), x.size(), l.data().data(), x.data(), y.data());
      });
    } else {
      rk4_steps(v, cfg.dt, steps, [&](const std::vector<cplx>& x, std::vector<cplx>& y) {
        y = vectorize(gen.apply(unvectorize(x)));
      });
    }
  };
  std::size_t step = 0;
  while (step < total_steps) {
    const std::size_t n = std::min(cfg.record_stride, total_steps - step);
    advance(n);
    step += n;
    record(v, step);
  }
  return traj;
}

SteadyStateResult steady_state(const Generator& gen) {
  const ComplexMatrix& l = gen.superop();
  const auto svd = singular_value_decomposition(l);
  const auto& sigma = svd.singular_values;
  const std::size_t n = sigma.size();
  const double threshold = kNullRelTol * std::max(sigma.front(), 1e-300);

  SteadyStateResult out;
  out.null_dim = static_cast<int>(
      std::count_if(sigma.begin(), sigma.end(), [&](double s) { return s <= threshold; }));
  if (out.null_dim > 1) {
    std::ostringstream msg;
    msg << "non-unique steady state: null space of the generator has dimension "
        << out.null_dim;
    throw NonUniqueSteadyStateError(msg.str(), out.null_dim);
  }
  out.smallest_singular_value = sigma[n - 1];
  out.next_singular_value = n > 1 ? sigma[n - 2] : 0.0;
  if (out.next_singular_value < kSeparationFactor * out.smallest_singular_value) {
    out.ill_conditioned = true;
    log().warn("steady state ill-conditioned: smallest singular values {} and {}",
               out.smallest_singular_value, out.next_singular_value);
  }
  if (out.null_dim == 0) out.null_dim = 1;

  std::vector<cplx> null_vec(n);
  for (std::size_t r = 0; r < n; ++r) null_vec[r] = svd.v(r, n - 1);
  ComplexMatrix rho = unvectorize(null_vec);
  const cplx tr = rho.trace();
  if (std::abs(tr) < 1e-300) throw Error("steady state: null vector is traceless");
  rho *= 1.0 / tr;
  rho = hermitian_part(rho);
  rho *= 1.0 / rho.trace().real();

  const double lmin = min_eigenvalue(rho);
  if (lmin < -1e-9) {
    std::ostringstream msg;
    msg << "steady state is not positive (min eigenvalue " << lmin << ")";
    throw PositivityError(msg.str(), lmin);
  }
  out.residual = gen.apply(rho).max_abs();
  out.rho_ss = std::move(rho);
  return out;
}

}  // namespace lindloc
