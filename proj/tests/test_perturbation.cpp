#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "semirel/error.hpp"
#include "semirel/hydrogenics.hpp"
#include "semirel/perturbation.hpp"
#include "semirel/spectra.hpp"

using namespace semirel;
using namespace semirel::perturbation;

namespace {

CouplingConfig at(double alpha, double mass = 1.0) {
  CouplingConfig c;
  c.alpha = alpha;
  c.mass = mass;
  return c;
}

std::vector<std::string> strings(const HamiltonianExpansion& e) {
  std::vector<std::string> out;
  for (const auto& w : e.terms) out.push_back(w.to_string());
  return out;
}

// Simpson over r = u^2, u in (0, sqrt(b)].
template <class F>
double radial_simpson(F f, double b, int panels = 40000) {
  const double ub = std::sqrt(b), h = ub / panels;
  double sum = 0.0;
  for (int i = 1; i <= panels; ++i) {
    const double u = i * h;
    sum += (i == panels ? 1.0 : (i % 2 ? 4.0 : 2.0)) * f(u * u) * 2.0 * u;
  }
  return sum * h / 3.0;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(std::abs(y[i]));
  }
  mx /= x.size();
  my /= x.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(std::abs(y[i])) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

double dirac_series_binding(int n, double j, const CouplingConfig& cfg) {
  const double en = -cfg.mass * cfg.alpha * cfg.alpha / (2.0 * n * n);
  return en * (1.0 + cfg.alpha * cfg.alpha / (n * n) * (n / (j + 0.5) - 0.75));
}

// Second-order odd shift on channel l of (n, j) from the intertwining identity
// (E_n - h_x) D R = alpha R / r^2: the resolvent image is Q D R / alpha.
double odd_second_order_oracle(int n, int l, int lx, const CouplingConfig& cfg) {
  const auto st = hydrogenics::radial_wavefunction(QuantumNumbers::make(n, l), cfg);
  const double c = lx == l + 1 ? -static_cast<double>(l) : l + 1.0;
  const auto dr = [&](double r) { return st.derivative(r) + c * st.value(r) / r; };
  const double b = 120.0 * n * st.bohr_radius();
  double overlap = 0.0;
  std::function<double(double)> partner = [](double) { return 0.0; };
  if (lx <= n - 1) {
    const auto px = hydrogenics::radial_wavefunction(QuantumNumbers::make(n, lx), cfg);
    overlap = radial_simpson([&](double r) { return px.value(r) * dr(r) * r * r; }, b);
    partner = [px, overlap](double r) { return overlap * px.value(r); };
  }
  const double inner = radial_simpson([&](double r) { return st.value(r) * (dr(r) - partner(r)); }, b);
  const double k = cfg.alpha / (2.0 * cfg.mass);
  return -k * k * inner / cfg.alpha;
}

}  // namespace

TEST_SUITE("perturbation") {
  TEST_CASE("iteration goldens") {
    const auto cfg = at(0.1);
    CHECK(strings(iterate_hamiltonian(0, SpinSector::spin_zero, cfg)) == std::vector<std::string>{"1 M"});
    CHECK(strings(iterate_hamiltonian(2, SpinSector::spin_zero, cfg)) == std::vector<std::string>{"1 T", "1 V"});
    CHECK(strings(iterate_hamiltonian(4, SpinSector::spin_zero, cfg)) ==
          std::vector<std::string>{"1 T", "1 V", "-1/2 m^-1 T T", "-1/2 m^-1 T V", "1/2 m^-1 V T"});
    const auto half = iterate_hamiltonian(4, SpinSector::spin_half, cfg);
    CHECK(strings(half) ==
          std::vector<std::string>{"1 T", "1 V", "1 S", "-1/2 m^-1 T T", "-1/2 m^-1 T V", "1/2 m^-1 V T"});
    REQUIRE(half.odd_terms().size() == 1);
    CHECK(half.odd_terms()[0] == word(1, 0, {Generator::S}));
    CHECK(strings(iterate_hamiltonian(2, SpinSector::spin_half, cfg)) == std::vector<std::string>{"1 T", "1 V"});
  }

  TEST_CASE("iteration rejects unsupported orders") {
    CHECK_THROWS_AS(iterate_hamiltonian(6, SpinSector::spin_zero, at(0.1)), UnsupportedOrder);
    CHECK_THROWS_AS(iterate_hamiltonian(8, SpinSector::spin_half, at(0.1)), UnsupportedOrder);
    CHECK_THROWS_AS(iterate_hamiltonian(3, SpinSector::spin_zero, at(0.1)), InvalidArgument);
    CHECK_THROWS_AS(iterate_hamiltonian(-2, SpinSector::spin_zero, at(0.1)), InvalidArgument);
  }

  TEST_CASE("order-4 expansion is a fixed point of the iteration") {
    for (auto spin : {SpinSector::spin_zero, SpinSector::spin_half}) {
      const auto e = iterate_hamiltonian(4, spin, at(0.1));
      CHECK(iteration_step(e.terms, 4, spin) == e.terms);
      const auto e2 = iterate_hamiltonian(2, spin, at(0.1));
      CHECK(iteration_step(e2.terms, 2, spin) == e2.terms);
    }
  }

  TEST_CASE("grades bound the words and set their alpha scaling") {
    const auto e = iterate_hamiltonian(4, SpinSector::spin_zero, at(0.1));
    for (const auto& w : e.terms) {
      CHECK(w.grade() <= 4);
      CHECK(w.grade() % 2 == 0);
      const std::vector<double> alphas = {0.05, 0.1, 0.2};
      std::vector<double> values;
      for (double a : alphas) values.push_back(closed_form_expectation(w, QuantumNumbers::make(2, 1), at(a)));
      if (std::abs(values[1]) < 1e-14) continue;  // the commutator word vanishes identically
      CHECK(std::abs(least_squares_slope(alphas, values) - w.grade()) < 0.05);
    }
    const auto half = iterate_hamiltonian(4, SpinSector::spin_half, at(0.1));
    for (const auto& w : half.terms) CHECK((w.grade() <= 4));
    CHECK(half.odd_terms()[0].grade() == 3);
  }

  TEST_CASE("first-order shift examples") {
    const auto e = iterate_hamiltonian(4, SpinSector::spin_zero, at(0.1));
    const auto s = first_order_shift(QuantumNumbers::make(1, 0), at(0.1), e);
    CHECK(s.total == doctest::Approx(-6.25e-5).epsilon(1e-13));
    CHECK(-0.005 + s.total == doctest::Approx(-0.0050625).epsilon(1e-13));
    CHECK(std::abs(first_order_shift(QuantumNumbers::make(1, 0), at(1e-6), e).total) < 1e-24);
    double commutator_part = 0.0;
    for (const auto& t : s.terms) {
      if (t.word.factors.size() == 2 && t.word.factors[0] != t.word.factors[1]) commutator_part += t.value;
    }
    CHECK(std::abs(commutator_part) <= 1e-14);
  }

  TEST_CASE("first-order shift reproduces the Klein-Gordon series for n <= 5") {
    const auto cfg = at(0.1);
    const auto e = iterate_hamiltonian(4, SpinSector::spin_zero, cfg);
    for (int n = 1; n <= 5; ++n) {
      for (int l = 0; l < n; ++l) {
        const auto qn = QuantumNumbers::make(n, l);
        const double en = -cfg.mass * cfg.alpha * cfg.alpha / (2.0 * n * n);
        // E_n [1 + alpha^2/n^2 (n/(l+1/2) - 3/4)]
        const double want = en * (1.0 + cfg.alpha * cfg.alpha / (n * n) * (n / (l + 0.5) - 0.75));
        CHECK(std::abs(en + first_order_shift(qn, cfg, e).total - want) <= 1e-12 * std::abs(want));
      }
    }
  }

  TEST_CASE("closed-form and quadrature expectations agree") {
    const auto cfg = at(0.1);
    const auto e = iterate_hamiltonian(4, SpinSector::spin_zero, cfg);
    for (int n = 1; n <= 5; ++n) {
      for (int l = 0; l < n; ++l) {
        const auto qn = QuantumNumbers::make(n, l);
        const auto st = hydrogenics::radial_wavefunction(qn, cfg);
        for (const auto& w : e.terms) {
          const double a = closed_form_expectation(w, qn, cfg);
          const double b = quadrature_expectation(w, st);
          CHECK(std::abs(a - b) <= 1e-10 * std::max(std::abs(a), cfg.mass * std::pow(cfg.alpha, w.grade())));
        }
      }
    }
    CHECK_THROWS_AS(closed_form_expectation(word(1, 0, {Generator::S}), QuantumNumbers::make(1, 0), cfg),
                    InvalidArgument);
  }

  TEST_CASE("commutator expectation vanishes by quadrature for n <= 5") {
    for (double alpha : {0.1, 0.02}) {
      const auto cfg = at(alpha, 1.4);
      for (int n = 1; n <= 5; ++n) {
        for (int l = 0; l < n; ++l) {
          CHECK(std::abs(commutator_expectation(QuantumNumbers::make(n, l), cfg)) <=
                1e-13 * cfg.mass * std::pow(alpha, 4));
        }
      }
    }
  }

  TEST_CASE("channels and angular factors") {
    CHECK(channels(1, HalfInteger{1}) == std::vector<int>{0});
    CHECK(channels(2, HalfInteger{1}) == std::vector<int>{0, 1});
    CHECK(channels(2, HalfInteger{3}) == std::vector<int>{1});
    CHECK(channels(3, HalfInteger{5}) == std::vector<int>{2});
    CHECK_THROWS_AS(channels(1, HalfInteger{3}), ChannelMismatch);
    for (int tj = 1; tj <= 7; tj += 2) {
      const int lo = (tj - 1) / 2, hi = (tj + 1) / 2;
      for (int tm = -tj; tm <= tj; tm += 2) {
        CHECK(angular_factor(lo, hi, HalfInteger{tj}, HalfInteger{tm}) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(angular_factor(hi, lo, HalfInteger{tj}, HalfInteger{tm}) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(std::abs(angular_factor(lo, lo, HalfInteger{tj}, HalfInteger{tm})) < 1e-13);
        CHECK(std::abs(angular_factor(hi, hi, HalfInteger{tj}, HalfInteger{tm})) < 1e-13);
      }
    }
  }

  TEST_CASE("odd matrix elements") {
    const auto cfg = at(0.1);
    CHECK(std::abs(odd_matrix_element(1, HalfInteger{1}, 0, 0, cfg)) <= 1e-12 * cfg.mass * std::pow(cfg.alpha, 3));
    const auto off = odd_matrix_element(2, HalfInteger{1}, 1, 0, cfg);
    CHECK(std::abs(off) <= 1e-12 * cfg.mass * std::pow(cfg.alpha, 3));
    CHECK_THROWS_AS(odd_matrix_element(2, HalfInteger{3}, 0, 1, cfg), ChannelMismatch);
    CHECK_THROWS_AS(odd_matrix_element(1, HalfInteger{1}, 0, 1, cfg), ChannelMismatch);
    // Every off-diagonal element up to n = 5 is recorded as zero.
    for (int n = 2; n <= 5; ++n) {
      for (int tj = 1; tj <= 2 * n - 3; tj += 2) {
        const int lo = (tj - 1) / 2, hi = lo + 1;
        const auto v = odd_matrix_element(n, HalfInteger{tj}, lo, hi, cfg);
        CHECK(v.real() == 0.0);
        CHECK(std::abs(v) <= 1e-12 * cfg.mass * std::pow(cfg.alpha, 3));
        const auto diag = odd_matrix_element(n, HalfInteger{tj}, lo, lo, cfg);
        CHECK(diag.real() == 0.0);
        CHECK(std::abs(diag) <= 1e-12 * cfg.mass * std::pow(cfg.alpha, 3));
      }
    }
  }

  TEST_CASE("odd elements are imaginary and flip with the branch") {
    // -sign i alpha/(2m) A I with A = -1 and I recomputed here.
    auto cfg = at(0.2);
    const auto p = hydrogenics::radial_wavefunction(QuantumNumbers::make(3, 1), cfg);
    const auto s = hydrogenics::radial_wavefunction(QuantumNumbers::make(3, 0), cfg);
    const double integral = hydrogenics::cross_radial_integral(p, s, -2);
    const auto particle = odd_matrix_element(3, HalfInteger{1}, 1, 0, cfg);
    CHECK(std::abs(particle.imag() - cfg.alpha / (2 * cfg.mass) * integral) <= 1e-15 * std::pow(cfg.alpha, 3));
    cfg.branch = Branch::antiparticle;
    const auto anti = odd_matrix_element(3, HalfInteger{1}, 1, 0, cfg);
    CHECK(anti.imag() == -particle.imag());
    CHECK(anti.real() == 0.0);
  }

  TEST_CASE("reduced resolvent annihilates eigenstates") {
    const auto cfg = at(0.1);
    for (auto [n, l] : {std::pair{2, 1}, std::pair{3, 0}, std::pair{3, 2}}) {
      const auto st = hydrogenics::radial_wavefunction(QuantumNumbers::make(n, l), cfg);
      ResolventOptions opts;
      opts.check_convergence = false;  // the output is pure round-off here
      const auto res = reduced_resolvent_apply(l, n, [&](double r) { return st.value(r); }, cfg, 48, opts);
      CHECK(res.norm <= 1e-9 * std::abs(res.source.norm()) / (cfg.mass * cfg.alpha * cfg.alpha));
      CHECK(res.deflated == 1);
    }
  }

  TEST_CASE("reduced resolvent is self-adjoint") {
    const auto cfg = at(0.1);
    const double a0 = cfg.bohr_radius();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int l : {0, 1, 2}) {
      std::vector<double> cu(4), cv(4);
      for (auto& c : cu) c = coef(rng);
      for (auto& c : cv) c = coef(rng);
      const auto make = [&](const std::vector<double>& c) {
        return [c, l, a0](double r) {
          const double x = r / a0;
          return std::pow(x, l) * std::exp(-x / 2.0) * (c[0] + c[1] * x + c[2] * x * x + c[3] * x * x * x);
        };
      };
      ResolventOptions opts;
      opts.check_convergence = false;
      const auto ru = reduced_resolvent_apply(l, 3, make(cu), cfg, 64, opts);
      const auto rv = reduced_resolvent_apply(l, 3, make(cv), cfg, 64, opts);
      const double uv = ru.source.dot(rv.coefficients);
      const double vu = rv.source.dot(ru.coefficients);
      CHECK(std::abs(uv - vu) <= 1e-9 * std::max(std::abs(uv), 1e-300));
    }
  }

  TEST_CASE("reduced resolvent matches the intertwining solution") {
    const auto cfg = at(0.1);
    for (auto [n, l, lx] : {std::tuple{1, 0, 1}, std::tuple{2, 0, 1}, std::tuple{2, 1, 0}, std::tuple{3, 1, 2},
                            std::tuple{3, 2, 1}}) {
      const auto st = hydrogenics::radial_wavefunction(QuantumNumbers::make(n, l), cfg);
      const auto res =
          reduced_resolvent_apply(lx, n, [&](double r) { return st.value(r) / (r * r); }, cfg, 96);
      const double c = lx == l + 1 ? -static_cast<double>(l) : l + 1.0;
      double overlap = 0.0;
      std::optional<hydrogenics::RadialState> partner;
      if (lx <= n - 1) {
        partner = hydrogenics::radial_wavefunction(QuantumNumbers::make(n, lx), cfg);
        overlap = radial_simpson(
            [&](double r) { return partner->value(r) * (st.derivative(r) + c * st.value(r) / r) * r * r; },
            120.0 * n * cfg.bohr_radius());
      }
      for (double x : {0.5, 2.0, 6.0}) {
        const double r = x * n * cfg.bohr_radius();
        double want = st.derivative(r) + c * st.value(r) / r;
        if (partner) want -= overlap * partner->value(r);
        want /= cfg.alpha;
        const double scale = std::abs(st.value(0.5 * cfg.bohr_radius())) / (cfg.alpha * cfg.bohr_radius());
        CHECK(std::abs(res.value(r) - want) <= 1e-6 * scale);
      }
    }
  }

  TEST_CASE("reduced resolvent convergence and failure modes") {
    const auto cfg = at(0.1);
    const auto st = hydrogenics::radial_wavefunction(QuantumNumbers::make(2, 0), cfg);
    const auto source = [&](double r) { return st.value(r) / (r * r); };
    const auto res = reduced_resolvent_apply(1, 2, source, cfg, 64);
    CHECK(res.relative_change <= 1e-8);
    ResolventOptions none;
    none.deflation_tolerance = 0.0;
    CHECK_THROWS_AS(reduced_resolvent_apply(1, 2, source, cfg, 64, none), SingularSystem);
    const double a0 = cfg.bohr_radius();
    const auto rough = [a0](double r) { return r / (a0 * a0 + r * r); };
    CHECK_THROWS_AS(reduced_resolvent_apply(1, 2, rough, cfg, 4), NonConverged);
  }

  TEST_CASE("odd term at second order against the intertwining oracle") {
    for (double alpha : {0.1, 0.03}) {
      const auto cfg = at(alpha, 0.8);
      for (int n = 1; n <= 4; ++n) {
        for (int tj = 1; tj <= 2 * n - 1; tj += 2) {
          for (int l : channels(n, HalfInteger{tj})) {
            const auto got = odd_second_order(n, HalfInteger{tj}, l, cfg, 96);
            const int lx = tj - l;
            CHECK(got.intermediate_l == lx);
            const double want = odd_second_order_oracle(n, l, lx, cfg);
            CHECK(std::abs(got.value - want) <= 1e-10 * cfg.mass * std::pow(alpha, 4));
          }
        }
      }
    }
  }

  TEST_CASE("second-order odd shift is independent of the branch") {
    auto cfg = at(0.1);
    const double p = odd_second_order(2, HalfInteger{1}, 0, cfg, 64).value;
    cfg.branch = Branch::antiparticle;
    CHECK(odd_second_order(2, HalfInteger{1}, 0, cfg, 64).value == doctest::Approx(p).epsilon(1e-14));
  }

  TEST_CASE("effective fine structure examples") {
    const auto cfg = at(0.1);
    const auto g = effective_fine_structure(1, HalfInteger{1}, cfg);
    REQUIRE(g.channels.size() == 1);
    CHECK(g.second_order(0, 0).real() == doctest::Approx(5.0e-5).epsilon(1e-9));
    CHECK(g.bindings()[0] == doctest::Approx(-0.0050125).epsilon(1e-10));

    const auto p = effective_fine_structure(2, HalfInteger{1}, cfg);
    REQUIRE(p.channels.size() == 2);
    for (double b : p.bindings()) CHECK(std::abs(b - -0.00125390625) <= 1e-12);
    CHECK(std::abs(p.shifts[0] - p.shifts[1]) <= 1e-10 * std::pow(cfg.alpha, 4));
    CHECK(p.max_imaginary <= 1e-10 * std::pow(cfg.alpha, 4));
    CHECK(std::abs(p.first_order(0, 0).imag()) <= 1e-12 * std::pow(cfg.alpha, 4));
    CHECK(std::abs(p.first_order(1, 1).imag()) <= 1e-12 * std::pow(cfg.alpha, 4));

    const auto d = effective_fine_structure(2, HalfInteger{3}, cfg);
    REQUIRE(d.channels == std::vector<int>{1});
    CHECK(std::abs(d.bindings()[0] - dirac_series_binding(2, 1.5, cfg)) <= 1e-12);
  }

  TEST_CASE("oracle triangle for n <= 4") {
    for (double alpha : {0.1, 0.05}) {
      const auto cfg = at(alpha);
      for (int n = 1; n <= 4; ++n) {
        for (int tj = 1; tj <= 2 * n - 1; tj += 2) {
          const double j = 0.5 * tj;
          const auto eff = effective_fine_structure(n, HalfInteger{tj}, cfg);
          const double series = dirac_series_binding(n, j, cfg);
          const double lib_series =
              spectra::dirac_series_energy(QuantumNumbers::make(n, (tj - 1) / 2, j), cfg).binding;
          CHECK(std::abs(series - lib_series) <= 1e-15);
          for (double b : eff.bindings()) CHECK(std::abs(b - series) <= 1e-9 * cfg.mass);
          for (int l : eff.channels) {
            const double tb = eff.unperturbed + textbook_hamiltonian_shift(QuantumNumbers::make(n, l, j), cfg);
            CHECK(std::abs(tb - series) <= 1e-9 * cfg.mass);
            for (double b : eff.bindings()) CHECK(std::abs(tb - b) <= 1e-9 * cfg.mass);
          }
          if (eff.channels.size() == 2) {
            CHECK(std::abs(eff.shifts[0] - eff.shifts[1]) <= 1e-10 * std::pow(alpha, 4));
          }
        }
      }
    }
  }

  TEST_CASE("textbook shift") {
    const auto cfg = at(0.1);
    CHECK(-0.005 + textbook_hamiltonian_shift(QuantumNumbers::make(1, 0, 0.5), cfg) ==
          doctest::Approx(-0.0050125).epsilon(1e-12));
    // For l = 0 only the kinetic and Darwin pieces remain: -5/8 + 1/2 in units of m alpha^4.
    CHECK(textbook_hamiltonian_shift(QuantumNumbers::make(1, 0, 0.5), cfg) ==
          doctest::Approx(-0.125 * std::pow(0.1, 4)).epsilon(1e-12));
    const auto eff = effective_fine_structure(2, HalfInteger{3}, cfg);
    CHECK(std::abs(eff.unperturbed + textbook_hamiltonian_shift(QuantumNumbers::make(2, 1, 1.5), cfg) -
                   eff.bindings()[0]) <= 1e-10 * cfg.mass);
    CHECK_THROWS_AS(textbook_hamiltonian_shift(QuantumNumbers::make(2, 1), cfg), InvalidArgument);
  }

  TEST_CASE("bilinear second order on three-level toys") {
    Eigen::VectorXd e(3);
    e << 0.0, 1.0, 3.0;
    Eigen::MatrixXcd h(3, 3);
    h << 0.0, 0.2, std::complex<double>(0.0, 0.3), 0.2, 0.0, 0.1, std::complex<double>(0.0, -0.3), 0.1, 0.0;
    CHECK((h - h.adjoint()).norm() == 0.0);
    // standard form: |0.2|^2/(0-1) + |0.3|^2/(0-3) = -0.04 - 0.03
    const auto herm = bilinear_second_order(e, h, 0);
    CHECK(herm.real() == doctest::Approx(-0.07).epsilon(1e-14));
    CHECK(std::abs(herm.imag()) < 1e-16);
    const Eigen::MatrixXcd anti = std::complex<double>(0.0, 1.0) * h;
    const auto a = bilinear_second_order(e, anti, 0);
    CHECK(a.real() == doctest::Approx(+0.07).epsilon(1e-14));
    // degenerate partners are skipped
    Eigen::VectorXd d(3);
    d << 0.0, 0.0, 2.0;
    CHECK(bilinear_second_order(d, h, 0).real() == doctest::Approx(-0.09 / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(bilinear_second_order(e, h, 3), InvalidArgument);
  }

  TEST_CASE("commutator word at second order is of order alpha^6") {
    const double m = 1.0;
    for (auto [n, l] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{3, 2}}) {
      const auto qn = QuantumNumbers::make(n, l);
      const auto cfg = at(0.1, m);
      const auto st = hydrogenics::radial_wavefunction(qn, cfg);
      const double a = cfg.alpha, en = st.energy();
      const double cent = l * (l + 1.0);
      // -(1/4m^2) <V R|(E_n - h)|V R>, with V R = -alpha R/r
      const auto vr = [&](double r) { return -a * st.value(r) / r; };
      const auto dvr = [&](double r) { return -a * (st.derivative(r) / r - st.value(r) / (r * r)); };
      const double b = 150.0 * n * st.bohr_radius();
      const double norm2 = radial_simpson([&](double r) { return vr(r) * vr(r) * r * r; }, b);
      const double kin =
          radial_simpson([&](double r) { return (dvr(r) * dvr(r) + cent * vr(r) * vr(r) / (r * r)) * r * r; }, b) /
          (2.0 * m);
      const double pot = radial_simpson([&](double r) { return -a / r * vr(r) * vr(r) * r * r; }, b);
      const double want = -(en * norm2 - kin - pot) / (4.0 * m * m);
      const double got = commutator_second_order(qn, cfg, 64);
      CHECK(std::abs(got - want) <= 1e-7 * std::abs(want));
      CHECK(std::abs(got) <= 10.0 * m * std::pow(cfg.alpha, 6));
    }
    std::vector<double> alphas = {0.025, 0.05, 0.1}, values;
    for (double a : alphas) values.push_back(commutator_second_order(QuantumNumbers::make(2, 1), at(a), 64));
    CHECK(std::abs(least_squares_slope(alphas, values) - 6.0) < 0.05);
    CHECK_THROWS_AS(commutator_second_order(QuantumNumbers::make(2, 0), at(0.1)), DivergentMoment);
  }
}
