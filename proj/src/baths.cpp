#include "lindloc/baths.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lindloc/errors.hpp"

namespace lindloc {

std::string to_string(SpectralKind k) {
  return k == SpectralKind::flat ? "flat" : "ohmic";
}

double SpectralModel::coupling_squared(double omega) const {
  switch (kind) {
    case SpectralKind::flat:
      return coupling_scale;
    case SpectralKind::ohmic:
      return coupling_scale * omega * std::exp(-omega / cutoff);
  }
  return 0.0;
}

void SpectralModel::validate() const {
  if (!(coupling_scale >= 0.0) || !std::isfinite(coupling_scale))
    throw Error("spectral model: coupling_scale must be finite and >= 0");
  if (kind == SpectralKind::ohmic && !(cutoff > 0.0))
    throw Error("spectral model: ohmic cutoff must be > 0");
}

BathSpec BathSpec::at_temperature(std::string label, double temperature,
                                  SpectralModel spectral, ComplexMatrix coupling_op) {
  if (!(temperature > 0.0)) {
    throw Error("bath '" + label + "': temperature must be > 0");
  }
  return BathSpec{std::move(label), 1.0 / temperature, spectral, std::move(coupling_op)};
}

void BathSpec::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw Error("bath '" + label + "': inverse temperature must be finite and > 0");
  spectral.validate();
  require_hermitian(coupling_op, 1e-10, ("bath '" + label + "' coupling operator").c_str());
}

double bose_einstein(double omega, double beta) {
  if (!(omega > 0.0) || !(beta > 0.0)) {
    std::ostringstream msg;
    msg << "bose_einstein: requires omega > 0 and beta > 0 (got omega=" << omega
        << ", beta=" << beta << ")";
    throw Error(msg.str());
  }
  return 1.0 / std::expm1(beta * omega);
}

double rate(double omega, double beta, const SpectralModel& spectral) {
  if (omega == 0.0) return 0.0;
  const double w = std::abs(omega);
  const double h2 = spectral.coupling_squared(w);
  const double n = bose_einstein(w, beta);
  return 2.0 * std::numbers::pi * h2 * (omega > 0.0 ? n + 1.0 : n);
}

double rate(double omega, const BathSpec& bath) {
  return rate(omega, bath.beta, bath.spectral);
}

}  // namespace lindloc
