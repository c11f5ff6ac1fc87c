#pragma once

#include <vector>

#include "lindloc/liouvillian.hpp"

namespace lindloc {

/// Thermodynamic bookkeeping for one state under one generator.
struct ThermoReport {
  std::vector<double> q_dot;  // heat current from each bath into the system
  double e_dot = 0.0;         // d/dt tr(H_s rho)
  double s_dot = 0.0;         // d/dt of von Neumann entropy
  double first_law_residual = 0.0;   // e_dot - sum q_dot
  double entropy_production = 0.0;   // s_dot - sum beta_i q_dot_i
  double spohn_lhs = 0.0;            // -tr(L'[rho] ln rho)
  double spohn_rhs = 0.0;            // -tr(L'[rho] ln tau_s)
  double spohn_rhs_mismatch = 0.0;   // |spohn_rhs - sum beta_i q_dot_i|
  bool second_law_ok = true;         // entropy_production >= -kSecondLawTol
  bool spohn_ok = true;              // spohn_lhs >= spohn_rhs - kSecondLawTol

  double total_heat() const;
};

inline constexpr double kSecondLawTol = 1e-9;
/// Mixing weight toward I/d used when rho has eigenvalues below 1e-12.
inline constexpr double kLogRegularization = 1e-12;

/// beta^2 tr(H_s D_i[rho]) with the generator's stored strength.
double heat_current(const Generator& gen, const ComplexMatrix& rho, std::size_t bath_index);
/// tr(H_s L[rho])
double internal_energy_rate(const Generator& gen, const ComplexMatrix& rho);

enum class GeneratorPart { full, partial };

/// -tr(L[rho] ln rho), on (1 - eps) rho + eps I/d when rho is not
/// strictly positive.
double entropy_rate(const Generator& gen, const ComplexMatrix& rho,
                    GeneratorPart part = GeneratorPart::full);

/// Returns rho itself when its smallest eigenvalue is >= 1e-12, otherwise
/// the regularized mixture.
ComplexMatrix regularize_for_log(const ComplexMatrix& rho);

ThermoReport audit(const Generator& gen, const ComplexMatrix& rho);

}  // namespace lindloc
