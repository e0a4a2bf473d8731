#include "semirel/salpeter.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_roots.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "semirel/error.hpp"
#include "semirel/spectra.hpp"

namespace semirel::salpeter {

namespace {

constexpr double kCritical = 2.0 / std::numbers::pi;

void require_subcritical(double alpha) {
  if (alpha >= kCritical) {
    std::ostringstream msg;
    msg << "alpha = " << alpha << " >= 2/pi: the square-root Coulomb Hamiltonian is unbounded below";
    throw SupercriticalSalpeter(msg.str());
  }
}

double indicial_function(double a, void* params) {
  const double alpha = *static_cast<double*>(params);
  return 2.0 * std::tgamma(0.5 * (3.0 - a)) * std::tgamma(0.5 * (a + 1.0)) /
             (std::tgamma(0.5 * a) * std::tgamma(1.0 - 0.5 * a)) -
         alpha;
}

}  // namespace

double indicial_exponent(double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  require_subcritical(alpha);
  gsl_set_error_handler_off();
  gsl_function f{&indicial_function, &alpha};
  std::unique_ptr<gsl_root_fsolver, decltype(&gsl_root_fsolver_free)> solver(
      gsl_root_fsolver_alloc(gsl_root_fsolver_brent), &gsl_root_fsolver_free);
  double lo = 1e-300, hi = 1.0;
  gsl_root_fsolver_set(solver.get(), &f, lo, hi);
  for (int it = 0; it < 200; ++it) {
    gsl_root_fsolver_iterate(solver.get());
    lo = gsl_root_fsolver_x_lower(solver.get());
    hi = gsl_root_fsolver_x_upper(solver.get());
    if (gsl_root_test_interval(lo, hi, 0.0, 1e-15) == GSL_SUCCESS) break;
  }
  return gsl_root_fsolver_root(solver.get());
}

SturmianBasis SturmianBasis::make(int l, const CouplingConfig& cfg, int size, double scale,
                                  BasisPower power) {
  cfg.validate();
  if (l < 0) throw InvalidArgument("l must be >= 0");
  SturmianBasis b;
  b.l = l;
  b.size = size;
  b.scale = scale > 0.0 ? scale : cfg.mass * cfg.alpha;
  b.power = (power == BasisPower::adapted && l == 0) ? -indicial_exponent(cfg.alpha)
                                                      : static_cast<double>(l);
  return b;
}

BasisMatrices overlap_and_potential_matrices(const SturmianBasis& basis, const CouplingConfig& cfg) {
  cfg.validate();
  const LaguerreBasis f = basis.functions();
  BasisMatrices out{f.overlap(), -cfg.alpha * f.inverse_r(), 1.0};
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out.overlap, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff(), hi = eig.eigenvalues().maxCoeff();
  out.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(lo > 0.0) || out.condition > 1e12) {
    std::ostringstream msg;
    msg << "overlap matrix condition number " << out.condition << " exceeds 1e12";
    throw IllConditionedBasis(msg.str());
  }
  return out;
}

QuadratureSpec default_quadrature(int size) { return {std::max(400, 4 * size), 1e-12, 0.0}; }

namespace {

Eigen::MatrixXd kinetic_once(const LaguerreBasis& f, double mass, double map_scale, int nodes) {
  // int g(p) p^2 dp, p = c t/(1-t): the Jacobi weight (1-t)^{2s+1} matches
  // the decay phi~(p)^2 p^2 dp/dt ~ (1-t)^{2s+1}.
  const double tail = 2.0 * f.power() + 1.0;
  const QuadratureRule rule = gauss_jacobi_unit(nodes, tail);
  std::vector<double> p(rule.size()), w(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.nodes[i];
    const double u = 1.0 - t;
    p[i] = map_scale * t / u;
    const double jac = map_scale / (u * u);
    const double trel = p[i] * p[i] / (std::sqrt(mass * mass + p[i] * p[i]) + mass);
    w[i] = rule.weights[i] * jac * std::pow(u, -tail) * p[i] * p[i] * trel;
  }
  const Eigen::MatrixXd phi = f.momentum_values(p);
  Eigen::MatrixXd scaled = phi;
  for (Eigen::Index q = 0; q < scaled.cols(); ++q) scaled.col(q) *= w[q];
  Eigen::MatrixXd k = scaled * phi.transpose();
  return 0.5 * (k + k.transpose());
}

}  // namespace

KineticMatrix kinetic_matrix(const SturmianBasis& basis, const CouplingConfig& cfg,
                             const QuadratureSpec& quad) {
  cfg.validate();
  if (quad.node_count < 16) throw InvalidArgument("kinetic quadrature needs at least 16 nodes");
  const LaguerreBasis f = basis.functions();
  const double c = quad.map_scale > 0.0 ? quad.map_scale : basis.scale;
  KineticMatrix out;
  out.nodes = quad.node_count;
  out.relative = kinetic_once(f, cfg.mass, c, quad.node_count);
  const Eigen::MatrixXd fine = kinetic_once(f, cfg.mass, c, 2 * quad.node_count);
  const double scale = std::max(fine.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  out.change = (fine - out.relative).cwiseAbs().maxCoeff() / scale;
  if (out.change > quad.tolerance) {
    std::ostringstream msg;
    msg << "kinetic matrix moved by " << out.change << " (relative) when the momentum rule grew from "
        << quad.node_count << " to " << 2 * quad.node_count << " nodes";
    throw QuadratureNotConverged(msg.str());
  }
  out.full = out.relative + cfg.mass * f.overlap();
  return out;
}

int SalpeterSolveReport::bound_levels() const {
  return static_cast<int>(std::count_if(bindings.begin(), bindings.end(), [](double b) { return b < 0.0; }));
}

namespace {

struct Spectrum {
  std::vector<double> bindings;
  double condition;
  double change;
};

Spectrum spectrum(const SturmianBasis& basis, const CouplingConfig& cfg, const QuadratureSpec& quad) {
  const BasisMatrices m = overlap_and_potential_matrices(basis, cfg);
  const KineticMatrix k = kinetic_matrix(basis, cfg, quad);
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(k.relative + m.potential,
                                                                      m.overlap);
  if (eig.info() != Eigen::Success) throw IllConditionedBasis("generalized eigensolve failed");
  const Eigen::VectorXd& ev = eig.eigenvalues();
  return {std::vector<double>(ev.data(), ev.data() + ev.size()), m.condition, k.change};
}

}  // namespace

SalpeterSolveReport solve(int l, const CouplingConfig& cfg, int size, double mu,
                          const SolveOptions& options) {
  cfg.validate();
  require_subcritical(cfg.alpha);
  if (size < 4) throw InvalidArgument("the Salpeter basis needs N >= 4");
  SalpeterSolveReport out;
  out.cfg = cfg;
  out.basis = SturmianBasis::make(l, cfg, size, mu, options.power);
  out.quadrature = options.quadrature.node_count > 0 ? options.quadrature : default_quadrature(size);

  const Spectrum main = spectrum(out.basis, cfg, out.quadrature);
  out.bindings = main.bindings;
  out.condition = main.condition;
  out.quadrature_change = main.change;
  for (double b : out.bindings) out.eigenvalues.push_back(cfg.mass + b);

  if (options.with_history) {
    for (int n : {size / 4, size / 2}) {
      if (n < 1) continue;
      SturmianBasis small = out.basis;
      small.size = n;
      QuadratureSpec q = out.quadrature;
      if (options.quadrature.node_count <= 0) q = default_quadrature(n);
      out.history.push_back({n, spectrum(small, cfg, q).bindings});
    }
    out.history.push_back({size, out.bindings});
  }
  return out;
}

ScalingReport residual_scaling(int l, const CouplingConfig& cfg_template,
                               std::span<const double> alphas, int size, double mu_factor,
                               Reference reference, const SolveOptions& options) {
  if (alphas.size() < 2) throw InsufficientPoints("residual scaling needs at least two couplings");
  if (!(mu_factor > 0.0)) throw InvalidArgument("mu factor must be positive");
  SolveOptions opts = options;
  opts.with_history = false;
  ScalingReport out;
  std::vector<double> xs, ys;
  const QuantumNumbers qn = QuantumNumbers::make(l + 1, l);
  for (double a : alphas) {
    const CouplingConfig cfg = cfg_template.with_alpha(a);
    const SalpeterSolveReport r = solve(l, cfg, size, mu_factor * cfg.mass * a, opts);
    ScalingPoint pt;
    pt.alpha = a;
    pt.binding = r.bindings.front();
    pt.reference = reference == Reference::series_alpha4
                       ? spectra::kg_series_energy(qn, cfg).binding
                       : spectra::schroedinger_energy(qn, cfg).binding;
    pt.residual = std::abs(pt.binding - pt.reference);
    out.points.push_back(pt);
    xs.push_back(a);
    ys.push_back(pt.residual);
  }
  out.fit = fit_power_law(xs, ys);
  return out;
}

}  // namespace semirel::salpeter
