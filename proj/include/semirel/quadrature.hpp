#pragma once

#include <functional>
#include <vector>

namespace semirel {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double integrate(const std::function<double(double)>& f) const;
};

/// Requested accuracy of a radial or momentum integral. Doubling node_count
/// must move the result by less than `tolerance` (relative), otherwise the
/// caller reports non-convergence. `map_scale` overrides the length (or
/// momentum) scale of the half-line map t/(1-t); 0 keeps the caller's default.
struct QuadratureSpec {
  int node_count = 200;
  double tolerance = 1e-12;
  double map_scale = 0.0;

  QuadratureSpec doubled() const {
    QuadratureSpec s = *this;
    s.node_count *= 2;
    return s;
  }
};

QuadratureRule gauss_legendre(int n, double a, double b);

/// Generalised Gauss-Laguerre: weight x^alpha e^{-x} on (0, inf). Nodes whose
/// weight underflows are dropped.
QuadratureRule gauss_laguerre(int n, double alpha);

/// Gauss-Jacobi on (0, 1) with weight (1 - t)^tail_exponent.
QuadratureRule gauss_jacobi_unit(int n, double tail_exponent);

/// Gauss-Legendre in t on (0, 1) mapped to r = scale * t / (1 - t); weights
/// include the Jacobian dr/dt.
QuadratureRule half_line_rule(int n, double scale);

}  // namespace semirel
