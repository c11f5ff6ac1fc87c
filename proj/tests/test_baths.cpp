#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lindloc/baths.hpp"
#include "lindloc/errors.hpp"
#include "lindloc/models.hpp"

using namespace lindloc;

TEST_SUITE("baths") {

TEST_CASE("Bose-Einstein occupation") {
  CHECK(bose_einstein(1.0, 1.0) == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)));
  CHECK(bose_einstein(1e-8, 1.0) == doctest::Approx(1e8).epsilon(1e-7));
  CHECK_THROWS(bose_einstein(0.0, 1.0));
  CHECK_THROWS(bose_einstein(1.0, -1.0));
}

TEST_CASE("rates: flat spectrum values and zero frequency") {
  const SpectralModel flat{SpectralKind::flat, 0.5 * std::numbers::inv_pi, 1.0};
  const double n = 1.0 / std::expm1(0.5);
  CHECK(rate(1.0, 0.5, flat) == doctest::Approx(n + 1.0).epsilon(1e-14));
  CHECK(rate(-1.0, 0.5, flat) == doctest::Approx(n).epsilon(1e-14));
  CHECK(rate(0.0, 0.5, flat) == 0.0);
}

TEST_CASE("detailed balance over a frequency grid") {
  for (auto kind : {SpectralKind::flat, SpectralKind::ohmic}) {
    const SpectralModel s{kind, 0.3, 2.5};
    for (double beta : {0.1, 1.0, 3.7}) {
      double worst = 0.0;
      for (int k = 1; k <= 100; ++k) {
        const double w = 0.05 * k;
        const double lhs = rate(w, beta, s);
        const double rhs = rate(-w, beta, s) * std::exp(beta * w);
        worst = std::max(worst, std::abs(lhs - rhs) / lhs);
      }
      CHECK(worst <= 1e-12);
    }
  }
}

TEST_CASE("ohmic coupling function") {
  const SpectralModel s{SpectralKind::ohmic, 0.2, 3.0};
  CHECK(s.coupling_squared(1.5) == doctest::Approx(0.2 * 1.5 * std::exp(-0.5)));
  CHECK_THROWS((SpectralModel{SpectralKind::ohmic, 0.2, 0.0}.validate()));
  CHECK_THROWS((SpectralModel{SpectralKind::flat, -1.0, 1.0}.validate()));
}

TEST_CASE("bath spec validation") {
  const SpectralModel flat{SpectralKind::flat, 0.1, 1.0};
  const auto b = BathSpec::at_temperature("b", 2.0, flat, pauli::x());
  CHECK(b.beta == doctest::Approx(0.5));
  CHECK_THROWS(BathSpec::at_temperature("b", 0.0, flat, pauli::x()));
  CHECK_THROWS_AS(BathSpec::at_temperature("b", 1.0, flat, pauli::plus()).validate(),
                  NotHermitianError);
}

}
