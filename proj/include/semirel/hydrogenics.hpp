#pragma once

#include <functional>

#include "semirel/quadrature.hpp"
#include "semirel/types.hpp"

// Bound hydrogenic radial eigenfunctions of p^2/2m - alpha/r and the radial
// integrals built from them.
namespace semirel::hydrogenics {

/// R_nl(r) = N (2r/(n a0))^l exp(-r/(n a0)) L_{n-l-1}^{(2l+1)}(2r/(n a0)),
/// normalised to 1 with weight r^2, a0 = 1/(m alpha). Positive near r = 0.
/// Immutable after construction.
class RadialState {
 public:
  RadialState(const QuantumNumbers& qn, const CouplingConfig& cfg);

  const QuantumNumbers& quantum_numbers() const { return qn_; }
  const CouplingConfig& config() const { return cfg_; }
  double bohr_radius() const { return a0_; }
  /// Non-relativistic level E_n = -m alpha^2 / (2 n^2).
  double energy() const;

  double value(double r) const;
  double derivative(double r) const;
  double second_derivative(double r) const;
  double operator()(double r) const { return value(r); }
  /// R_nl(0); zero unless l = 0.
  double at_origin() const;

  /// Sign changes of R_nl on (0, inf).
  int count_nodes() const;

  /// Mapped Gauss-Legendre rule r = s t/(1-t) with s = n a0 unless spec.map_scale
  /// overrides it.
  QuadratureRule quadrature(const QuadratureSpec& spec) const;

  /// Throws ConfigMismatch if the two states were built for different a0.
  void require_same_config(const RadialState& other) const;

 private:
  struct Terms {
    double g, dg, d2g;  // g(x) = x^l e^{-x/2} L(x) and its x-derivatives
  };
  Terms terms(double x, int order) const;

  QuantumNumbers qn_;
  CouplingConfig cfg_;
  double a0_;
  double x_scale_;  // 2/(n a0)
  double norm_;
};

RadialState radial_wavefunction(const QuantumNumbers& qn, const CouplingConfig& cfg);

/// Integrates f(r) dr over (0, inf) with the state's mapped rule. The rule is
/// doubled once; a change beyond spec.tolerance relative to the integral of
/// |f| raises QuadratureNotConverged.
double integrate_radial(const RadialState& state, const std::function<double(double)>& f,
                        const QuadratureSpec& spec = {});

/// <r^k> by quadrature. Throws DivergentMoment for k <= -(2l+3).
double expectation_r_power(const QuantumNumbers& qn, const CouplingConfig& cfg, int k,
                           const QuadratureSpec& spec = {});

/// <1/r> = 1/(a0 n^2)
double expectation_inv_r(const QuantumNumbers& qn, const CouplingConfig& cfg);
/// <1/r^2> = 1/(a0^2 n^3 (l + 1/2))
double expectation_inv_r2(const QuantumNumbers& qn, const CouplingConfig& cfg);
/// <1/r^3> = 1/(a0^3 n^3 l (l + 1/2)(l + 1)); DivergentMoment for l = 0.
double expectation_inv_r3(const QuantumNumbers& qn, const CouplingConfig& cfg);

struct KineticMoments {
  double t1;  // <T>, T = p^2/2m
  double p4;  // <p^4>
};

/// Closed forms: <T> = E_n - <V>, <p^4> = 4 m^2 <(E_n + alpha/r)^2>.
KineticMoments kinetic_moments(const QuantumNumbers& qn, const CouplingConfig& cfg);

/// int_0^inf R_{n l_bra} r^weight R_{n l_ket} r^2 dr. Both states must share
/// n and a0.
double cross_radial_integral(const RadialState& bra, const RadialState& ket, int weight,
                             const QuadratureSpec& spec = {});

}  // namespace semirel::hydrogenics
