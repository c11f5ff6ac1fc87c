#pragma once

#include <string>

#include "lindloc/matrix.hpp"

namespace lindloc {

enum class SpectralKind { flat, ohmic };

std::string to_string(SpectralKind k);

/// Squared coupling function h^2(omega) of a bosonic bath:
///   flat:  kappa
///   ohmic: kappa * omega * exp(-omega / cutoff)
struct SpectralModel {
  SpectralKind kind = SpectralKind::flat;
  double coupling_scale = 0.0;  // kappa >= 0
  double cutoff = 1.0;          // ohmic only, > 0

  /// h^2(omega) for omega > 0.
  double coupling_squared(double omega) const;
  void validate() const;

  friend bool operator==(const SpectralModel&, const SpectralModel&) = default;
};

/// Thermal bath attached to one subsystem through a single Hermitian
/// coupling operator acting on that subsystem's factor.
struct BathSpec {
  std::string label;
  double beta = 1.0;  // inverse temperature
  SpectralModel spectral;
  ComplexMatrix coupling_op;  // local, d_i x d_i

  static BathSpec at_temperature(std::string label, double temperature,
                                 SpectralModel spectral, ComplexMatrix coupling_op);
  void validate() const;
};

/// 1 / (e^{beta omega} - 1); domain error for omega <= 0 or beta <= 0.
double bose_einstein(double omega, double beta);

/// Transition rate gamma(omega):
///   omega > 0: 2 pi h^2(omega) (n(omega) + 1)    (emission)
///   omega < 0: 2 pi h^2(|omega|) n(|omega|)      (absorption)
///   omega = 0: 0
double rate(double omega, const BathSpec& bath);
double rate(double omega, double beta, const SpectralModel& spectral);

}  // namespace lindloc
