#include "semirel/hydrogenics.hpp"

#include <cmath>
#include <sstream>

#include "semirel/error.hpp"
#include "semirel/special_functions.hpp"

namespace semirel::hydrogenics {

namespace {
constexpr int kMaxN = 50;
}

RadialState::RadialState(const QuantumNumbers& qn, const CouplingConfig& cfg)
    : qn_(qn), cfg_(cfg) {
  qn_.validate();
  cfg_.validate();
  if (qn_.n > kMaxN) throw InvalidArgument("radial functions are supported for n <= 50");
  a0_ = cfg_.bohr_radius();
  const int n = qn_.n, l = qn_.l;
  x_scale_ = 2.0 / (n * a0_);
  // N^2 = (2/(n a0))^3 (n-l-1)! / (2n (n+l)!)
  norm_ = std::exp(0.5 * (3.0 * std::log(x_scale_) + special::log_factorial(n - l - 1) -
                          std::log(2.0 * n) - special::log_factorial(n + l)));
}

double RadialState::energy() const {
  return -cfg_.mass * cfg_.alpha * cfg_.alpha / (2.0 * qn_.n * qn_.n);
}

RadialState::Terms RadialState::terms(double x, int order) const {
  const int l = qn_.l;
  const int k = qn_.n - l - 1;
  const double a = 2.0 * l + 1.0;
  const double p = special::laguerre(k, a, x);
  const double e = std::exp(-0.5 * x);
  Terms t{};
  t.g = (l == 0 ? 1.0 : std::pow(x, l)) * e * p;
  if (order < 1) return t;
  // L' = -L_{k-1}^{(a+1)}, L'' = L_{k-2}^{(a+2)}
  const double dp = -special::laguerre(k - 1, a + 1.0, x);
  const double xl = l == 0 ? 1.0 : std::pow(x, l);
  const double xl1 = l == 0 ? 0.0 : (l == 1 ? 1.0 : std::pow(x, l - 1));
  t.dg = e * (l * xl1 * p + xl * (dp - 0.5 * p));
  if (order < 2) return t;
  const double d2p = special::laguerre(k - 2, a + 2.0, x);
  const double xl2 = l < 2 ? 0.0 : (l == 2 ? 1.0 : std::pow(x, l - 2));
  t.d2g = e * (l * (l - 1) * xl2 * p + 2.0 * l * xl1 * (dp - 0.5 * p) +
               xl * (d2p - dp + 0.25 * p));
  return t;
}

double RadialState::value(double r) const { return norm_ * terms(x_scale_ * r, 0).g; }

double RadialState::derivative(double r) const {
  return norm_ * x_scale_ * terms(x_scale_ * r, 1).dg;
}

double RadialState::second_derivative(double r) const {
  return norm_ * x_scale_ * x_scale_ * terms(x_scale_ * r, 2).d2g;
}

double RadialState::at_origin() const { return qn_.l == 0 ? value(0.0) : 0.0; }

int RadialState::count_nodes() const {
  // Laguerre zeros lie below x = 4n + 2l + 2; scan well past that.
  const double x_max = 8.0 * qn_.n + 4.0 * qn_.l + 20.0;
  const int samples = 20000;
  int nodes = 0;
  double prev = 0.0;
  for (int i = 1; i <= samples; ++i) {
    const double x = x_max * i / samples;
    const double v = special::laguerre(qn_.n - qn_.l - 1, 2.0 * qn_.l + 1.0, x);
    if (prev != 0.0 && v != 0.0 && (v > 0) != (prev > 0)) ++nodes;
    if (v != 0.0) prev = v;
  }
  return nodes;
}

QuadratureRule RadialState::quadrature(const QuadratureSpec& spec) const {
  const double scale = spec.map_scale > 0.0 ? spec.map_scale : qn_.n * a0_;
  return half_line_rule(spec.node_count, scale);
}

void RadialState::require_same_config(const RadialState& other) const {
  if (a0_ != other.a0_ || cfg_.mass != other.cfg_.mass) {
    throw ConfigMismatch("radial states built for different coupling configurations");
  }
}

RadialState radial_wavefunction(const QuantumNumbers& qn, const CouplingConfig& cfg) {
  return RadialState(qn, cfg);
}

double integrate_radial(const RadialState& state, const std::function<double(double)>& f,
                        const QuadratureSpec& spec) {
  if (spec.node_count < 16) throw InvalidArgument("quadrature needs at least 16 nodes");
  auto run = [&](const QuadratureSpec& s, double* magnitude) {
    const QuadratureRule rule = state.quadrature(s);
    double sum = 0.0, abs_sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double v = rule.weights[i] * f(rule.nodes[i]);
      sum += v;
      abs_sum += std::abs(v);
    }
    if (magnitude) *magnitude = abs_sum;
    return sum;
  };
  double magnitude = 0.0;
  const double coarse = run(spec, &magnitude);
  const double fine = run(spec.doubled(), nullptr);
  if (std::abs(fine - coarse) > spec.tolerance * std::max(magnitude, std::abs(fine))) {
    std::ostringstream msg;
    msg << "radial quadrature not converged for " << state.quantum_numbers().label() << ": "
        << coarse << " vs " << fine;
    throw QuadratureNotConverged(msg.str());
  }
  return fine;
}

double expectation_r_power(const QuantumNumbers& qn, const CouplingConfig& cfg, int k,
                           const QuadratureSpec& spec) {
  if (k <= -(2 * qn.l + 3)) {
    std::ostringstream msg;
    msg << "<r^" << k << "> diverges at the origin for " << qn.label();
    throw DivergentMoment(msg.str());
  }
  const RadialState state(qn, cfg);
  return integrate_radial(
      state,
      [&](double r) {
        const double v = state.value(r);
        return v * v * std::pow(r, k + 2);
      },
      spec);
}

double expectation_inv_r(const QuantumNumbers& qn, const CouplingConfig& cfg) {
  qn.validate();
  cfg.validate();
  return 1.0 / (cfg.bohr_radius() * qn.n * qn.n);
}

double expectation_inv_r2(const QuantumNumbers& qn, const CouplingConfig& cfg) {
  qn.validate();
  cfg.validate();
  const double a0 = cfg.bohr_radius();
  return 1.0 / (a0 * a0 * std::pow(qn.n, 3) * (qn.l + 0.5));
}

double expectation_inv_r3(const QuantumNumbers& qn, const CouplingConfig& cfg) {
  qn.validate();
  cfg.validate();
  if (qn.l == 0) throw DivergentMoment("<1/r^3> diverges for l = 0");
  const double a0 = cfg.bohr_radius();
  return 1.0 / (std::pow(a0, 3) * std::pow(qn.n, 3) * qn.l * (qn.l + 0.5) * (qn.l + 1.0));
}

KineticMoments kinetic_moments(const QuantumNumbers& qn, const CouplingConfig& cfg) {
  const double inv_r = expectation_inv_r(qn, cfg);
  const double inv_r2 = expectation_inv_r2(qn, cfg);
  const double a = cfg.alpha, m = cfg.mass;
  const double en = -m * a * a / (2.0 * qn.n * qn.n);
  KineticMoments out{};
  out.t1 = en + a * inv_r;
  out.p4 = 4.0 * m * m * (en * en + 2.0 * en * a * inv_r + a * a * inv_r2);
  return out;
}

double cross_radial_integral(const RadialState& bra, const RadialState& ket, int weight,
                             const QuadratureSpec& spec) {
  bra.require_same_config(ket);
  if (bra.quantum_numbers().n != ket.quantum_numbers().n) {
    throw InvalidArgument("cross radial integrals are defined between states of equal n");
  }
  const int lsum = bra.quantum_numbers().l + ket.quantum_numbers().l;
  if (weight <= -(lsum + 3)) {
    throw DivergentMoment("cross radial integrand is not integrable at the origin");
  }
  return integrate_radial(
      ket, [&](double r) { return bra.value(r) * ket.value(r) * std::pow(r, weight + 2); }, spec);
}

}  // namespace semirel::hydrogenics
