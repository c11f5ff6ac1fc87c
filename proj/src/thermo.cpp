#include "lindloc/thermo.hpp"

#include <cmath>
#include <numeric>

#include "lindloc/eigen.hpp"
#include "lindloc/errors.hpp"

namespace lindloc {

namespace {

void require_state_dim(const Generator& gen, const ComplexMatrix& rho, const char* what) {
  if (rho.rows() != gen.dim() || rho.cols() != gen.dim()) {
    throw DimensionError(std::string(what) + ": state dimension does not match the generator");
  }
}

struct LogState {
  ComplexMatrix rho;
  ComplexMatrix log_rho;
};

LogState log_state(const ComplexMatrix& rho) {
  const auto eig = hermitian_eig(hermitian_part(rho));
  if (eig.eigenvalues.front() >= kLogRegularization) {
    return {rho, eig.reconstruct([](double x) { return std::log(x); })};
  }
  // (1 - eps) rho + eps I/d shares rho's eigenvectors.
  const double eps = kLogRegularization;
  const double shift = eps / static_cast<double>(rho.rows());
  auto mixed = [&](double x) { return (1.0 - eps) * std::max(x, 0.0) + shift; };
  return {eig.reconstruct(mixed), eig.reconstruct([&](double x) { return std::log(mixed(x)); })};
}

}  // namespace

double ThermoReport::total_heat() const {
  return std::accumulate(q_dot.begin(), q_dot.end(), 0.0);
}

double heat_current(const Generator& gen, const ComplexMatrix& rho, std::size_t bath_index) {
  if (bath_index >= gen.dissipators.size()) {
    throw Error("heat_current: bath index " + std::to_string(bath_index) + " out of range (" +
                std::to_string(gen.dissipators.size()) + " baths)");
  }
  require_state_dim(gen, rho, "heat_current");
  return trace_of_product(gen.h_s, gen.dissipators[bath_index].apply(rho)).real();
}

double internal_energy_rate(const Generator& gen, const ComplexMatrix& rho) {
  require_state_dim(gen, rho, "internal_energy_rate");
  return trace_of_product(gen.h_s, gen.apply(rho)).real();
}

ComplexMatrix regularize_for_log(const ComplexMatrix& rho) { return log_state(rho).rho; }

double entropy_rate(const Generator& gen, const ComplexMatrix& rho, GeneratorPart part) {
  require_state_dim(gen, rho, "entropy_rate");
  const auto ls = log_state(rho);
  const auto drho = part == GeneratorPart::full ? gen.apply(ls.rho) : gen.apply_partial(ls.rho);
  return -trace_of_product(drho, ls.log_rho).real();
}

ThermoReport audit(const Generator& gen, const ComplexMatrix& rho) {
  require_state_dim(gen, rho, "audit");
  ThermoReport r;
  const auto betas = gen.bath_betas();
  double weighted_heat = 0.0;
  for (std::size_t i = 0; i < gen.dissipators.size(); ++i) {
    r.q_dot.push_back(heat_current(gen, rho, i));
    weighted_heat += betas[i] * r.q_dot.back();
  }
  r.e_dot = internal_energy_rate(gen, rho);
  r.first_law_residual = r.e_dot - r.total_heat();

  const auto ls = log_state(rho);
  r.s_dot = -trace_of_product(gen.apply(ls.rho), ls.log_rho).real();
  r.entropy_production = r.s_dot - weighted_heat;

  const auto partial = gen.apply_partial(ls.rho);
  r.spohn_lhs = -trace_of_product(partial, ls.log_rho).real();
  r.spohn_rhs = -trace_of_product(partial, log_product_gibbs_state(gen)).real();
  r.spohn_rhs_mismatch = std::abs(r.spohn_rhs - weighted_heat);

  r.second_law_ok = r.entropy_production >= -kSecondLawTol;
  r.spohn_ok = r.spohn_lhs >= r.spohn_rhs - kSecondLawTol;
  return r;
}

}  // namespace lindloc
