#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <vector>

#include "semirel/error.hpp"
#include "semirel/fit.hpp"
#include "semirel/spectra.hpp"

using namespace semirel;
using namespace semirel::spectra;

namespace {

using big = boost::multiprecision::cpp_dec_float_50;

// 50-digit evaluation of m / sqrt(1 + a^2/(n - eps)^2), eps = k - sqrt(k^2 - a^2).
big exact_total(int n, double kappa, double alpha, double mass = 1.0) {
  const big a(alpha), k(kappa), m(mass);
  const big eps = k - sqrt(k * k - a * a);
  const big d = big(n) - eps;
  return m / sqrt(1 + a * a / (d * d));
}

CouplingConfig at(double alpha, double mass = 1.0) {
  CouplingConfig c;
  c.alpha = alpha;
  c.mass = mass;
  return c;
}

}  // namespace

TEST_SUITE("spectra") {
  TEST_CASE("quantum number validation") {
    CHECK_NOTHROW(QuantumNumbers::make(3, 2).validate());
    CHECK_THROWS_AS(QuantumNumbers::make(2, 2).validate(), InvalidArgument);
    CHECK_THROWS_AS(QuantumNumbers::make(0, 0).validate(), InvalidArgument);
    CHECK_THROWS_AS(QuantumNumbers::make(2, 1, 2.5).validate(), InvalidArgument);
    CHECK_THROWS_AS(QuantumNumbers::make(2, 0, -0.5).validate(), InvalidArgument);
    CHECK_THROWS_AS(QuantumNumbers::make(1, 0).j_value(), InvalidArgument);
    CHECK(QuantumNumbers::make(2, 1, 1.5).label() == "n=2 l=1 j=3/2");
    CHECK_THROWS_AS(at(0.0).validate(), InvalidArgument);
    CHECK_THROWS_AS(at(0.1, -1.0).validate(), InvalidArgument);
  }

  TEST_CASE("rest and free energies follow the branch") {
    CouplingConfig c = at(0.1, 2.0);
    CHECK(rest_energy(c) == 2.0);
    CHECK(free_energy(1.5, c) == doctest::Approx(2.5).epsilon(1e-15));
    c.branch = Branch::antiparticle;
    CHECK(rest_energy(c) == -2.0);
    CHECK(free_energy(1.5, c) == doctest::Approx(-2.5).epsilon(1e-15));
  }

  TEST_CASE("Schroedinger levels") {
    CHECK(schroedinger_energy(QuantumNumbers::make(1, 0), at(0.1)).binding ==
          doctest::Approx(-0.005).epsilon(1e-15));
    CHECK(schroedinger_energy(QuantumNumbers::make(2, 1), at(0.1)).binding ==
          doctest::Approx(-0.00125).epsilon(1e-15));
    CHECK(std::abs(schroedinger_energy(QuantumNumbers::make(1, 0), at(1e-9)).binding) < 1e-17);
  }

  TEST_CASE("Klein-Gordon exact levels against a 50-digit oracle") {
    const EnergyValue e = kg_exact_energy(QuantumNumbers::make(1, 0), at(0.1));
    // quoted to seven digits; the exact total is 0.994936153...
    CHECK(std::abs(e.total() - 0.9949365) < 1e-6);
    CHECK(e.total() == doctest::Approx(0.99493615300512405).epsilon(1e-14));
    CHECK(e.tag == Formula::kg_exact);
    for (double alpha : {1e-4, 0.01, 0.1, 0.3}) {
      for (int n = 1; n <= 6; ++n) {
        for (int l = 0; l < n; ++l) {
          const big want = exact_total(n, l + 0.5, alpha) - 1;
          const double got = kg_exact_energy(QuantumNumbers::make(n, l), at(alpha)).binding;
          CHECK(std::abs(got - want.convert_to<double>()) <=
                1e-13 * std::abs(want.convert_to<double>()));
        }
      }
    }
  }

  TEST_CASE("exact closed forms refuse supercritical coupling") {
    try {
      kg_exact_energy(QuantumNumbers::make(1, 0), at(0.6));
      FAIL("expected SupercriticalCoupling");
    } catch (const SupercriticalCoupling& e) {
      CHECK(std::string(e.what()).find("n=1 l=0") != std::string::npos);
    }
    CHECK_NOTHROW(kg_exact_energy(QuantumNumbers::make(2, 1), at(0.6)));
    CHECK_THROWS_AS(dirac_exact_energy(QuantumNumbers::make(1, 0, 0.5), at(1.0)), SupercriticalCoupling);
  }

  TEST_CASE("free limit") {
    const auto qn = QuantumNumbers::make(3, 1, 1.5);
    CHECK(kg_exact_energy(qn, at(1e-12)).total() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dirac_exact_energy(qn, at(1e-12)).total() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(kg_series_energy(qn, at(1e-12)).binding) < 1e-24);
  }

  TEST_CASE("Dirac ground state is m sqrt(1 - alpha^2)") {
    for (double alpha : {0.01, 0.05, 0.1, 0.5}) {
      const double want = std::sqrt(1.0 - alpha * alpha);
      const double got = dirac_exact_energy(QuantumNumbers::make(1, 0, 0.5), at(alpha)).total();
      CHECK(std::abs(got - want) <= 1e-14 * want);
    }
    CHECK(dirac_exact_energy(QuantumNumbers::make(1, 0, 0.5), at(0.1)).total() ==
          doctest::Approx(0.99498744).epsilon(1e-8));
  }

  TEST_CASE("Dirac levels depend on n and j only, bit for bit") {
    for (double alpha : {0.01, 0.1, 0.3}) {
      for (int n = 2; n <= 5; ++n) {
        for (int twice_j = 1; twice_j <= 2 * n - 3; twice_j += 2) {
          const double j = 0.5 * twice_j;
          const auto lo = QuantumNumbers::make(n, (twice_j - 1) / 2, j);
          const auto hi = QuantumNumbers::make(n, (twice_j + 1) / 2, j);
          CHECK(dirac_exact_energy(lo, at(alpha)).binding == dirac_exact_energy(hi, at(alpha)).binding);
          CHECK(dirac_series_energy(lo, at(alpha)).binding == dirac_series_energy(hi, at(alpha)).binding);
        }
      }
    }
  }

  TEST_CASE("series values") {
    CHECK(kg_series_energy(QuantumNumbers::make(1, 0), at(0.1)).binding ==
          doctest::Approx(-0.0050625).epsilon(1e-14));
    CHECK(kg_series_energy(QuantumNumbers::make(2, 1), at(0.1)).binding ==
          doctest::Approx(-0.00125 * (1 + 0.01 * (2.0 / 1.5 - 0.75) / 4)).epsilon(1e-14));
    CHECK(kg_series_energy(QuantumNumbers::make(2, 1), at(0.1)).binding ==
          doctest::Approx(-0.0012518229166666).epsilon(1e-12));
    CHECK(dirac_series_energy(QuantumNumbers::make(1, 0, 0.5), at(0.1)).binding ==
          doctest::Approx(-0.0050125).epsilon(1e-14));
    CHECK(dirac_series_energy(QuantumNumbers::make(2, 0, 0.5), at(0.1)).binding ==
          doctest::Approx(-0.00125390625).epsilon(1e-14));
    // exact n=1 binding sqrt(0.99) - 1 agrees with the series up to O(alpha^6)
    const double exact = dirac_exact_energy(QuantumNumbers::make(1, 0, 0.5), at(0.1)).binding;
    CHECK(exact == doctest::Approx(-0.00501256).epsilon(1e-6));
    CHECK(std::abs(exact + 0.0050125) < 1e-6 * 1.0);
  }

  TEST_CASE("binding and total are consistent") {
    const EnergyValue e = kg_exact_energy(QuantumNumbers::make(2, 1), at(0.1, 3.0));
    CHECK(e.binding < 0.0);
    CHECK(e.total() > 0.0);
    CHECK(std::abs((e.total() - e.mass) - e.binding) <= 4.0 * 3.0 * 1.2e-16);
  }

  TEST_CASE("ordering in l and in j") {
    for (double alpha : {0.05, 0.2}) {
      for (int n = 2; n <= 6; ++n) {
        for (int l = 1; l < n; ++l) {
          CHECK(kg_exact_energy(QuantumNumbers::make(n, l), at(alpha)).total() >
                kg_exact_energy(QuantumNumbers::make(n, l - 1), at(alpha)).total());
        }
        for (int twice_j = 3; twice_j <= 2 * n - 1; twice_j += 2) {
          const auto up = QuantumNumbers::make(n, (twice_j - 1) / 2, 0.5 * twice_j);
          const auto dn = QuantumNumbers::make(n, (twice_j - 3) / 2, 0.5 * (twice_j - 2));
          CHECK(dirac_exact_energy(up, at(alpha)).total() > dirac_exact_energy(dn, at(alpha)).total());
        }
      }
    }
  }

  TEST_CASE("exact minus series is of order alpha^6") {
    const std::vector<double> alphas{0.01, 0.02, 0.05};
    for (auto [n, l] : std::vector<std::pair<int, int>>{{1, 0}, {2, 0}, {2, 1}, {3, 2}, {4, 1}}) {
      std::vector<double> kg, di;
      for (double a : alphas) {
        const auto qn = QuantumNumbers::make(n, l, l + 0.5);
        kg.push_back(std::abs(kg_exact_energy(qn, at(a)).binding - kg_series_energy(qn, at(a)).binding));
        di.push_back(
            std::abs(dirac_exact_energy(qn, at(a)).binding - dirac_series_energy(qn, at(a)).binding));
      }
      CHECK(fit_power_law(alphas, kg).slope >= 5.5);
      CHECK(fit_power_law(alphas, di).slope >= 5.5);
    }
  }

  TEST_CASE("numerical Taylor coefficients") {
    const auto c = taylor_coefficients(ExactFormula::klein_gordon, QuantumNumbers::make(1, 0), at(0.1), 4);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c[1] == doctest::Approx(-0.5).epsilon(1e-6));
    const auto d = taylor_coefficients(ExactFormula::dirac, QuantumNumbers::make(1, 0, 0.5), at(0.1), 4);
    CHECK(d[2] == doctest::Approx(-0.125).epsilon(1e-6));
    const auto d6 = taylor_coefficients(ExactFormula::dirac, QuantumNumbers::make(1, 0, 0.5), at(0.1), 6);
    CHECK(d6.size() == 4);
    CHECK(d6[3] == doctest::Approx(-1.0 / 16).epsilon(1e-4));
    CHECK_THROWS_AS(taylor_coefficients(ExactFormula::klein_gordon, QuantumNumbers::make(1, 0), at(0.1), 3),
                    InvalidArgument);
    CHECK_THROWS_AS(taylor_coefficients(ExactFormula::klein_gordon, QuantumNumbers::make(1, 0), at(0.1), 4, 1e-30),
                    IllConditioned);
  }

  TEST_CASE("Klein-Gordon Taylor coefficients reproduce the fourth-order series") {
    const double m = 1.7;
    for (int n = 1; n <= 4; ++n) {
      for (int l = 0; l < n; ++l) {
        const auto c = taylor_coefficients(ExactFormula::klein_gordon, QuantumNumbers::make(n, l), at(0.1, m), 4);
        const double c2 = -m / (2.0 * n * n);
        const double c4 = -m / (2.0 * n * n * n * n) * (n / (l + 0.5) - 0.75);
        CHECK(c[0] == doctest::Approx(m).epsilon(1e-12));
        CHECK(c[1] == doctest::Approx(c2).epsilon(1e-6));
        CHECK(c[2] == doctest::Approx(c4).epsilon(1e-6));
      }
    }
  }
}
