#include <doctest.h>

#include "lindloc/eigen.hpp"
#include "lindloc/errors.hpp"
#include "lindloc/models.hpp"
#include "lindloc/spectral.hpp"
#include "support.hpp"

using namespace lindloc;
using namespace lindloc::test;

namespace {

EnergyLevels levels_of(const ComplexMatrix& h) {
  const auto eig = hermitian_eig(h);
  return group_levels(eig, default_grouping_tol(eig));
}

ComplexMatrix two_qubit_hs(double e1, double e2) {
  const auto i2 = ComplexMatrix::identity(2);
  return kron(0.5 * e1 * pauli::z(), i2) + kron(i2, 0.5 * e2 * pauli::z());
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("level grouping merges degeneracies") {
  const auto lv = levels_of(two_qubit_hs(1.0, 1.0));
  REQUIRE(lv.count() == 3);
  CHECK(lv.energies[0] == doctest::Approx(-1.0));
  CHECK(lv.energies[1] == doctest::Approx(0.0));
  CHECK(lv.degeneracy(1) == 2);
  ComplexMatrix total(4, 4);
  for (std::size_t l = 0; l < lv.count(); ++l) total += lv.projector(l);
  CHECK(max_abs_diff(total, ComplexMatrix::identity(4)) < 1e-14);
  const auto w = lv.bohr_frequencies();
  CHECK(std::find(w.begin(), w.end(), 0.0) != w.end());
}

TEST_CASE("ambiguous clusters are rejected") {
  // Chain of levels spaced just under the tolerance: one cluster whose
  // diameter exceeds 10x the tolerance.
  std::vector<double> vals;
  for (int i = 0; i < 30; ++i) vals.push_back(1.0 + 0.9e-3 * i);
  const auto eig = hermitian_eig(ComplexMatrix::diagonal(vals));
  CHECK_THROWS_AS(group_levels(eig, 1e-3), AmbiguousSpectrumError);
}

TEST_CASE("secular filter: resonant sx sx keeps the flip-flop term exactly") {
  const auto lv = levels_of(two_qubit_hs(1.0, 1.0));
  const auto filtered = secular_filter(kron(pauli::x(), pauli::x()), lv);
  const auto expected = kron(pauli::plus(), pauli::minus()) + kron(pauli::minus(), pauli::plus());
  CHECK(max_abs_diff(filtered, expected) <= 1e-12);
}

TEST_CASE("secular filter: detuned sx sx vanishes") {
  const auto lv = levels_of(two_qubit_hs(1.0, 1.5));
  CHECK(secular_filter(kron(pauli::x(), pauli::x()), lv).max_abs() <= 1e-12);
}

TEST_CASE("secular filter leaves commuting operators alone") {
  const auto lv = levels_of(two_qubit_hs(1.0, 1.0));
  const auto zz = kron(pauli::z(), pauli::z());
  CHECK(max_abs_diff(secular_filter(zz, lv), zz) <= 1e-12);
}

TEST_CASE("Bohr decomposition is complete and conjugation symmetric") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + trial % 15;
    const auto lv = levels_of(random_hermitian(d, rng));
    const auto a = random_hermitian(d, rng);
    const auto dec = decompose_operator(a, lv);
    CHECK(max_abs_diff(dec.sum(), a) <= 1e-10);
    for (const auto& t : dec.terms) {
      const auto* partner = dec.find(-t.omega, 1e-9);
      REQUIRE(partner != nullptr);
      CHECK(max_abs_diff(t.op.adjoint(), partner->op) <= 1e-10);
    }
  }
}

TEST_CASE("sigma^x splits into lowering and raising parts") {
  const auto lv = levels_of(0.5 * pauli::z());
  const auto dec = decompose_operator(pauli::x(), lv);
  REQUIRE(dec.terms.size() == 2);
  const auto* down = dec.find(1.0, 1e-12);
  REQUIRE(down != nullptr);
  // positive omega lowers the energy: |1><0| with |0> the excited state
  CHECK(max_abs_diff(down->op, pauli::minus()) == 0.0);
}

TEST_CASE("sparse spectrum diagnostics") {
  const auto lv = levels_of(two_qubit_hs(1.0, 1.5));
  CHECK(sparse_spectrum_diagnostics(lv, 0.01).status == DiagnosticStatus::pass);
  CHECK(sparse_spectrum_diagnostics(lv, 0.2).status == DiagnosticStatus::warn);
  CHECK(sparse_spectrum_diagnostics(lv, 1.0).status == DiagnosticStatus::fail);
  const auto d = sparse_spectrum_diagnostics(lv, 0.01);
  REQUIRE(d.min_frequency);
  CHECK(*d.min_frequency == doctest::Approx(0.5));
  CHECK(d.summary().find("PASS") != std::string::npos);
}

}
