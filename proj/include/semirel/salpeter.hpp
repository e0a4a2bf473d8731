#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "semirel/fit.hpp"
#include "semirel/laguerre_basis.hpp"
#include "semirel/quadrature.hpp"
#include "semirel/types.hpp"

// Rayleigh-Ritz solution of sqrt(m^2 + p^2) + V(r) with V = -alpha/r.
namespace semirel::salpeter {

/// Exponent a in (0, 1) of the s-wave behaviour psi ~ r^{-a} at the origin:
/// 2 Gamma((3-a)/2) Gamma((a+1)/2) / (Gamma(a/2) Gamma(1-a/2)) = alpha.
/// Throws SupercriticalSalpeter for alpha >= 2/pi.
double indicial_exponent(double alpha);

enum class BasisPower {
  adapted,  // l = 0: r^{-a} e^{-mu r} x polynomials; l >= 1: r^l
  regular,  // r^l e^{-mu r} x polynomials (Coulomb-Sturmian span)
};

/// Laguerre-type radial set of size N and scale mu; `power` is the exponent
/// of r in front of the exponential.
struct SturmianBasis {
  int l = 0;
  double power = 0.0;
  double scale = 0.0;
  int size = 0;

  static SturmianBasis make(int l, const CouplingConfig& cfg, int size, double scale,
                            BasisPower power = BasisPower::adapted);
  LaguerreBasis functions() const { return LaguerreBasis(l, power, scale, size); }
};

struct BasisMatrices {
  Eigen::MatrixXd overlap;    // S
  Eigen::MatrixXd potential;  // V_mat
  double condition = 1.0;     // of S
};

/// Closed forms. Throws IllConditionedBasis if S is not positive definite or
/// its condition number exceeds 1e12.
BasisMatrices overlap_and_potential_matrices(const SturmianBasis& basis, const CouplingConfig& cfg);

struct KineticMatrix {
  /// int p^2 phi~_i (sqrt(m^2+p^2) - m) phi~_j dp, kept separate so that
  /// binding energies never pass through a difference of numbers close to m.
  Eigen::MatrixXd relative;
  Eigen::MatrixXd full;  // relative + m S
  int nodes = 0;
  double change = 0.0;  // max entry change under node doubling, relative
};

/// Default rule for a basis of size N: max(400, 4N) nodes, tolerance 1e-12.
QuadratureSpec default_quadrature(int size);

/// Momentum-space quadrature with p = mu t/(1-t) and a Gauss-Jacobi rule in t
/// whose weight absorbs the algebraic large-p tail. Throws
/// QuadratureNotConverged when doubling the rule moves an entry by more than
/// quad.tolerance relative to the largest entry.
KineticMatrix kinetic_matrix(const SturmianBasis& basis, const CouplingConfig& cfg,
                             const QuadratureSpec& quad);

struct HistoryEntry {
  int size = 0;
  std::vector<double> bindings;  // ascending
};

struct SalpeterSolveReport {
  CouplingConfig cfg;
  SturmianBasis basis;
  QuadratureSpec quadrature;
  std::vector<double> eigenvalues;  // total energies m + E', ascending
  std::vector<double> bindings;     // E', ascending
  std::vector<HistoryEntry> history;  // sizes N/4, N/2, N
  double condition = 1.0;
  double quadrature_change = 0.0;

  int bound_levels() const;  // eigenvalues below m
};

struct SolveOptions {
  BasisPower power = BasisPower::adapted;
  /// Node count 0 selects default_quadrature(N).
  QuadratureSpec quadrature{0, 1e-12, 0.0};
  bool with_history = true;
};

/// Throws SupercriticalSalpeter for alpha >= 2/pi, InvalidArgument for N < 4,
/// plus the basis and quadrature errors above. mu <= 0 selects m alpha.
SalpeterSolveReport solve(int l, const CouplingConfig& cfg, int size, double mu = 0.0,
                          const SolveOptions& options = {});

enum class Reference {
  series_alpha4,  // Klein-Gordon fourth-order series
  alpha2,         // Schroedinger level
};

struct ScalingPoint {
  double alpha = 0.0;
  double binding = 0.0;
  double reference = 0.0;
  double residual = 0.0;  // |binding - reference|
};

struct ScalingReport {
  std::vector<ScalingPoint> points;
  PowerLawFit fit;
};

/// Ground level of channel l (n = l + 1) at each alpha with mu = mu_factor m alpha;
/// fits log residual against log alpha. Throws InsufficientPoints for fewer
/// than two couplings.
ScalingReport residual_scaling(int l, const CouplingConfig& cfg_template,
                               std::span<const double> alphas, int size, double mu_factor = 1.0,
                               Reference reference = Reference::series_alpha4,
                               const SolveOptions& options = {});

}  // namespace semirel::salpeter
