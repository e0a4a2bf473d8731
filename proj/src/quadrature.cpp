#include "semirel/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <string>

#include "semirel/error.hpp"

namespace semirel {

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
  return sum;
}

namespace {

struct FixedDeleter {
  void operator()(gsl_integration_fixed_workspace* w) const { gsl_integration_fixed_free(w); }
};

QuadratureRule fixed_rule(const gsl_integration_fixed_type* type, int n, double a, double b,
                          double alpha, double beta) {
  if (n < 1) throw InvalidArgument("quadrature needs at least one node");
  gsl_set_error_handler_off();
  std::unique_ptr<gsl_integration_fixed_workspace, FixedDeleter> ws(
      gsl_integration_fixed_alloc(type, static_cast<std::size_t>(n), a, b, alpha, beta));
  if (!ws) throw InvalidArgument("could not build quadrature rule with " + std::to_string(n) + " nodes");
  const double* x = gsl_integration_fixed_nodes(ws.get());
  const double* w = gsl_integration_fixed_weights(ws.get());
  QuadratureRule rule;
  rule.nodes.reserve(n);
  rule.weights.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (w[i] > 0.0 && std::isfinite(x[i])) {
      rule.nodes.push_back(x[i]);
      rule.weights.push_back(w[i]);
    }
  }
  return rule;
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  return fixed_rule(gsl_integration_fixed_legendre, n, a, b, 0.0, 0.0);
}

QuadratureRule gauss_laguerre(int n, double alpha) {
  if (!(alpha > -1.0)) throw InvalidArgument("Gauss-Laguerre needs alpha > -1");
  return fixed_rule(gsl_integration_fixed_laguerre, n, 0.0, 1.0, alpha, 0.0);
}

QuadratureRule gauss_jacobi_unit(int n, double tail_exponent) {
  if (!(tail_exponent > -1.0)) throw InvalidArgument("Gauss-Jacobi needs exponent > -1");
  // GSL weight: (b - x)^alpha (x - a)^beta
  return fixed_rule(gsl_integration_fixed_jacobi, n, 0.0, 1.0, tail_exponent, 0.0);
}

QuadratureRule half_line_rule(int n, double scale) {
  if (!(scale > 0.0)) throw InvalidArgument("half-line map needs a positive scale");
  QuadratureRule rule = gauss_legendre(n, 0.0, 1.0);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.nodes[i];
    const double s = 1.0 - t;
    rule.nodes[i] = scale * t / s;
    rule.weights[i] *= scale / (s * s);
  }
  return rule;
}

}  // namespace semirel
