#include "semirel/spectra.hpp"

#include <cmath>
#include <sstream>

#include "semirel/error.hpp"

namespace semirel::spectra {

const char* to_string(Formula f) {
  switch (f) {
    case Formula::kg_exact: return "exact-KG";
    case Formula::dirac_exact: return "exact-Dirac";
    case Formula::kg_series: return "series-KG";
    case Formula::dirac_series: return "series-Dirac";
    case Formula::schroedinger: return "schroedinger";
  }
  return "unknown";
}

namespace detail {

double kg_binding_of_x(int n, double kappa, double mass, double x) {
  const double radicand = kappa * kappa - x;
  if (!(radicand > 0.0)) {
    std::ostringstream msg;
    msg << "supercritical coupling: (" << kappa << ")^2 <= alpha^2 = " << x;
    throw SupercriticalCoupling(msg.str());
  }
  // eps = kappa - sqrt(kappa^2 - x), rationalised so that eps ~ x/(2 kappa)
  // keeps its relative precision for small x.
  const double eps = x / (kappa + std::sqrt(radicand));
  const double d = n - eps;
  const double u = x / (d * d);
  const double root = std::sqrt(1.0 + u);
  // m/sqrt(1+u) - m
  return -mass * u / (root * (1.0 + root));
}

}  // namespace detail

double rest_energy(const CouplingConfig& cfg) { return cfg.branch_sign() * cfg.mass; }

double free_energy(double momentum, const CouplingConfig& cfg) {
  return cfg.branch_sign() * std::hypot(cfg.mass, momentum);
}

namespace {

void check(const QuantumNumbers& qn, const CouplingConfig& cfg) {
  qn.validate();
  cfg.validate();
}

double nonrel(int n, const CouplingConfig& cfg) {
  return -cfg.mass * cfg.alpha * cfg.alpha / (2.0 * n * n);
}

double series(int n, double kappa, const CouplingConfig& cfg) {
  const double a2 = cfg.alpha * cfg.alpha;
  const double en = nonrel(n, cfg);
  return en * (1.0 - (a2 / (n * n)) * (0.75 - n / kappa));
}

}  // namespace

EnergyValue schroedinger_energy(const QuantumNumbers& qn, const CouplingConfig& cfg) {
  check(qn, cfg);
  return {cfg.mass, nonrel(qn.n, cfg), Formula::schroedinger};
}

EnergyValue kg_exact_energy(const QuantumNumbers& qn, const CouplingConfig& cfg) {
  check(qn, cfg);
  try {
    return {cfg.mass,
            detail::kg_binding_of_x(qn.n, qn.l + 0.5, cfg.mass, cfg.alpha * cfg.alpha),
            Formula::kg_exact};
  } catch (const SupercriticalCoupling&) {
    throw SupercriticalCoupling("supercritical coupling for Klein-Gordon level " + qn.label());
  }
}

EnergyValue dirac_exact_energy(const QuantumNumbers& qn, const CouplingConfig& cfg) {
  check(qn, cfg);
  const double j = qn.j_value();
  try {
    return {cfg.mass, detail::kg_binding_of_x(qn.n, j + 0.5, cfg.mass, cfg.alpha * cfg.alpha),
            Formula::dirac_exact};
  } catch (const SupercriticalCoupling&) {
    throw SupercriticalCoupling("supercritical coupling for Dirac level " + qn.label());
  }
}

EnergyValue kg_series_energy(const QuantumNumbers& qn, const CouplingConfig& cfg) {
  check(qn, cfg);
  return {cfg.mass, series(qn.n, qn.l + 0.5, cfg), Formula::kg_series};
}

EnergyValue dirac_series_energy(const QuantumNumbers& qn, const CouplingConfig& cfg) {
  check(qn, cfg);
  return {cfg.mass, series(qn.n, qn.j_value() + 0.5, cfg), Formula::dirac_series};
}

namespace {

struct Derivatives {
  double d1, d2, d3;
};

// Central differences about x = 0, each with O(h^2) truncation error.
template <class F>
Derivatives central(const F& f, double h) {
  const double fp1 = f(h), fm1 = f(-h), fp2 = f(2 * h), fm2 = f(-2 * h), f0 = f(0.0);
  return {(fp1 - fm1) / (2 * h), (fp1 - 2 * f0 + fm1) / (h * h),
          (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * h * h * h)};
}

Derivatives richardson(const Derivatives& coarse, const Derivatives& fine) {
  return {(4 * fine.d1 - coarse.d1) / 3, (4 * fine.d2 - coarse.d2) / 3,
          (4 * fine.d3 - coarse.d3) / 3};
}

}  // namespace

std::vector<double> taylor_coefficients(ExactFormula formula, const QuantumNumbers& qn,
                                        const CouplingConfig& cfg, int order, double tolerance) {
  check(qn, cfg);
  if (order < 0 || order > 6 || order % 2 != 0) {
    throw InvalidArgument("taylor order must be an even integer in [0, 6]");
  }
  const double kappa =
      formula == ExactFormula::klein_gordon ? qn.l + 0.5 : qn.j_value() + 0.5;
  const double m = cfg.mass;
  const int n = qn.n;
  auto binding = [&](double x) { return detail::kg_binding_of_x(n, kappa, m, x); };

  const double h = cfg.alpha * cfg.alpha / 8.0;
  if (4.0 * h >= kappa * kappa) {
    throw IllConditioned("difference stencil reaches the critical coupling");
  }
  const Derivatives r1 = richardson(central(binding, h), central(binding, h / 2));
  const Derivatives r2 = richardson(central(binding, h / 2), central(binding, h / 4));

  const double est[3] = {r1.d1, r1.d2 / 2.0, r1.d3 / 6.0};
  const double alt[3] = {r2.d1, r2.d2 / 2.0, r2.d3 / 6.0};

  std::vector<double> coeffs{m + binding(0.0)};
  for (int k = 1; k <= order / 2; ++k) {
    const double c = est[k - 1];
    const double scale = std::max(std::abs(c), m);
    if (std::abs(c - alt[k - 1]) > tolerance * scale || !std::isfinite(c)) {
      std::ostringstream msg;
      msg << "Richardson estimates of the alpha^" << 2 * k << " coefficient disagree: " << c
          << " vs " << alt[k - 1];
      throw IllConditioned(msg.str());
    }
    coeffs.push_back(c);
  }
  return coeffs;
}

}  // namespace semirel::spectra
