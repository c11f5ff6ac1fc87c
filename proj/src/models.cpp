#include "lindloc/models.hpp"

#include <sstream>

#include "lindloc/errors.hpp"

namespace lindloc {

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix plus() { return {{0.0, 1.0}, {0.0, 0.0}}; }
ComplexMatrix minus() { return {{0.0, 0.0}, {1.0, 0.0}}; }
}  // namespace pauli

namespace {

ComplexMatrix qubit_hamiltonian(double e) { return (0.5 * e) * pauli::z(); }

ComplexMatrix coupling_pauli(QubitCoupling c) {
  return c == QubitCoupling::xx ? pauli::x() : pauli::z();
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    std::ostringstream msg;
    msg << "model parameter " << name << " must be > 0 (got " << v << ")";
    throw Error(msg.str());
  }
}

}  // namespace

void TwoQubitParams::validate() const {
  require_positive(e1, "e1");
  require_positive(e2, "e2");
  require_positive(beta_coupling, "beta_coupling");
  require_positive(t1, "t1");
  require_positive(t2, "t2");
  if (!(alpha >= 0.0)) throw Error("model parameter alpha must be >= 0");
  spectral.validate();
}

SystemSpec two_qubit_model(const TwoQubitParams& p) {
  p.validate();
  return qubit_chain_model(2, {p.e1, p.e2}, p.alpha, p.beta_coupling, {p.t1, p.t2},
                           p.spectral, p.coupling);
}

SystemSpec single_qubit_model(double e, double t, const SpectralModel& spectral,
                              double beta_coupling) {
  require_positive(e, "e");
  require_positive(t, "t");
  require_positive(beta_coupling, "beta_coupling");
  SystemSpec spec;
  spec.subsystems.push_back({"q1", qubit_hamiltonian(e)});
  spec.baths.push_back(BathSpec::at_temperature("b1", t, spectral, pauli::x()));
  spec.beta_coupling = beta_coupling;
  spec.validate();
  return spec;
}

SystemSpec qubit_chain_model(std::size_t n, const std::vector<double>& energies, double alpha,
                             double beta_coupling, const std::vector<double>& temperatures,
                             const SpectralModel& spectral, QubitCoupling coupling) {
  if (n == 0) throw Error("qubit chain: n must be >= 1");
  if (n > kMaxChainQubits) {
    std::ostringstream msg;
    msg << "qubit chain: n = " << n << " exceeds the dimension guard (n <= "
        << kMaxChainQubits << ", 2^n <= " << (1U << kMaxChainQubits) << ")";
    throw DimensionError(msg.str());
  }
  if (energies.size() != n || temperatures.size() != n) {
    throw DimensionError("qubit chain: need one energy and one temperature per qubit");
  }
  SystemSpec spec;
  spec.alpha = alpha;
  spec.beta_coupling = beta_coupling;
  for (std::size_t i = 0; i < n; ++i) {
    require_positive(energies[i], "energy");
    const std::string idx = std::to_string(i + 1);
    spec.subsystems.push_back({"q" + idx, qubit_hamiltonian(energies[i])});
    spec.baths.push_back(BathSpec::at_temperature("b" + idx, temperatures[i], spectral, pauli::x()));
  }
  const std::vector<std::size_t> dims(n, 2);
  const ComplexMatrix s = coupling_pauli(coupling);
  for (std::size_t i = 0; i + 1 < n; ++i) spec.interactions.push_back(embed(s, dims, i) * embed(s, dims, i + 1));
  spec.validate();
  return spec;
}

}  // namespace lindloc
