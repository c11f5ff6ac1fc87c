#pragma once

#include <numbers>
#include <vector>

#include "lindloc/baths.hpp"
#include "lindloc/liouvillian.hpp"

namespace lindloc {

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// sigma^+ = (x + i y)/2 = |0><1|; |0> is the +1 eigenstate of z.
ComplexMatrix plus();
/// sigma^- = (x - i y)/2 = |1><0|
ComplexMatrix minus();
}  // namespace pauli

enum class QubitCoupling { xx, zz };

struct TwoQubitParams {
  double e1 = 1.0;
  double e2 = 1.0;
  double alpha = 0.01;
  double beta_coupling = 0.01;
  double t1 = 2.0;
  double t2 = 1.0;
  SpectralModel spectral{SpectralKind::flat, 0.5 * std::numbers::inv_pi, 1.0};
  QubitCoupling coupling = QubitCoupling::xx;

  void validate() const;
};

/// H_i = (E_i/2) sigma^z_i, alpha sigma^x_1 sigma^x_2, baths coupled via sigma^x_i.
SystemSpec two_qubit_model(const TwoQubitParams& p);

/// One qubit (E/2) sigma^z with a bath at temperature t through sigma^x.
SystemSpec single_qubit_model(double e, double t, const SpectralModel& spectral,
                              double beta_coupling);

inline constexpr std::size_t kMaxChainQubits = 8;

/// Open chain of n qubits with nearest-neighbour sigma^x sigma^x terms and
/// one sigma^x-coupled bath per site.
SystemSpec qubit_chain_model(std::size_t n, const std::vector<double>& energies, double alpha,
                             double beta_coupling, const std::vector<double>& temperatures,
                             const SpectralModel& spectral,
                             QubitCoupling coupling = QubitCoupling::xx);

}  // namespace lindloc
