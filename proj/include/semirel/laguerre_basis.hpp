#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>

// Laguerre-type radial basis shared by the resolvent solver and the
// square-root Hamiltonian solver.
namespace semirel {

/// phi_k(r) = c_k (2mu)^{3/2} x^s e^{-x/2} L_k^{(2s+2)}(x), x = 2 mu r,
/// c_k = sqrt(k! / Gamma(k+2s+3)), k = 0..size-1.
///
/// The set is orthonormal with weight r^2 and spans r^s e^{-mu r} times
/// polynomials of degree < size. With s = l this is the span of the Coulomb
/// Sturmians of scale mu; s may be lowered (s > -1) when the functions to be
/// represented are less regular at the origin than r^l.
class LaguerreBasis {
 public:
  LaguerreBasis(int l, double power, double scale, int size);

  int l() const { return l_; }
  double power() const { return s_; }
  double scale() const { return mu_; }
  int size() const { return size_; }

  /// phi_k(r) for all k.
  Eigen::VectorXd values(double r) const;
  double evaluate(const Eigen::VectorXd& coeffs, double r) const;

  /// <phi_i|phi_j>; the identity by construction.
  Eigen::MatrixXd overlap() const;
  /// <phi_i|1/r|phi_j> in closed form.
  Eigen::MatrixXd inverse_r() const;
  /// <phi_i|p^2/2m|phi_j> including the centrifugal term, evaluated with a
  /// Gauss-Laguerre rule that is exact for this integrand.
  Eigen::MatrixXd kinetic(double mass) const;
  /// int phi_k(r) f(r) r^2 dr by Gauss-Laguerre quadrature in x.
  Eigen::VectorXd project(const std::function<double(double)>& f, int extra_nodes = 32) const;

  /// Radial momentum-space functions
  ///   phi~_k(p) = sqrt(2/pi) int_0^inf j_l(p r) phi_k(r) r^2 dr,
  /// one row per basis function and one column per momentum (p > 0).
  Eigen::MatrixXd momentum_values(std::span<const double> momenta) const;
  /// Closed form through Gegenbauer polynomials in y = (p^2-mu^2)/(p^2+mu^2);
  /// requires s = l.
  Eigen::MatrixXd momentum_values_gegenbauer(std::span<const double> momenta) const;
  /// Generating-function series valid for l = 0 and any power s > -1.
  Eigen::MatrixXd momentum_values_swave(std::span<const double> momenta) const;

 private:
  int l_;
  double s_;
  double mu_;
  int size_;
};

}  // namespace semirel
