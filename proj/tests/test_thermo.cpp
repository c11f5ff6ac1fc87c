#include <doctest.h>

#include <numbers>

#include "lindloc/eigen.hpp"
#include "lindloc/models.hpp"
#include "lindloc/thermo.hpp"
#include "support.hpp"

using namespace lindloc;
using namespace lindloc::test;

namespace {

const SpectralModel kFlat{SpectralKind::flat, 0.5 * std::numbers::inv_pi, 1.0};

std::vector<Generator> bundled() {
  TwoQubitParams detuned;
  detuned.e2 = 1.5;
  TwoQubitParams zz;
  zz.coupling = QubitCoupling::zz;
  std::vector<Generator> out;
  out.push_back(build_modified_local(single_qubit_model(1.0, 1.0, kFlat, 0.1)));
  out.push_back(build_modified_local(two_qubit_model({})));
  out.push_back(build_modified_local(two_qubit_model(detuned)));
  out.push_back(build_modified_local(two_qubit_model(zz)));
  out.push_back(build_modified_local(
      qubit_chain_model(3, {1.0, 1.0, 1.0}, 0.01, 0.01, {2.0, 1.5, 1.0}, kFlat)));
  return out;
}

}  // namespace

TEST_SUITE("thermo") {

TEST_CASE("first law holds on random states") {
  std::mt19937_64 rng(61);
  for (const auto& gen : bundled()) {
    for (int i = 0; i < 20; ++i) {
      const auto r = audit(gen, random_density(gen.dim(), rng));
      CHECK(std::abs(r.first_law_residual) <= 1e-10);
    }
  }
}

TEST_CASE("second law and the Spohn identity on random states") {
  std::mt19937_64 rng(62);
  for (const auto& gen : bundled()) {
    for (int i = 0; i < 20; ++i) {
      const auto r = audit(gen, random_density(gen.dim(), rng));
      CHECK(r.entropy_production >= -1e-9);
      CHECK(r.spohn_rhs_mismatch <= 1e-9);
      CHECK(r.second_law_ok);
      CHECK(r.spohn_ok);
    }
  }
}

TEST_CASE("product Gibbs state at equal temperatures produces no entropy") {
  TwoQubitParams p;
  p.t1 = p.t2 = 1.3;
  const auto gen = build_modified_local(two_qubit_model(p));
  const auto r = audit(gen, product_gibbs_state(gen));
  for (double q : r.q_dot) CHECK(std::abs(q) < 1e-15);
  CHECK(std::abs(r.entropy_production) < 1e-14);
}

TEST_CASE("heat current of a single qubit") {
  // Excited qubit: Q_dot = tr(H D[rho]) = -(E) gamma_down.
  const auto gen = build_modified_local(single_qubit_model(1.0, 1.0, kFlat, 0.1));
  const ComplexMatrix excited = ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0});
  const double n = 1.0 / std::expm1(1.0);
  CHECK(heat_current(gen, excited, 0) == doctest::Approx(-(n + 1.0) * 0.01).epsilon(1e-13));
  CHECK_THROWS(heat_current(gen, excited, 1));
}

TEST_CASE("pure states are regularized before taking logs") {
  const ComplexMatrix pure = ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0});
  const auto reg = regularize_for_log(pure);
  CHECK(min_eigenvalue(reg) > 0.0);
  CHECK(std::abs(reg.trace() - 1.0) < 1e-15);
  const auto gen = build_modified_local(single_qubit_model(1.0, 1.0, kFlat, 0.1));
  const auto r = audit(gen, pure);
  CHECK(r.entropy_production > 0.0);
}

}
