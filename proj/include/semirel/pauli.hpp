#pragma once

#include <Eigen/Dense>
#include <array>
#include <boost/rational.hpp>
#include <cstdint>
#include <vector>

// Pointwise checks of the Pauli-matrix algebra, of the minimal-coupling
// square identity and of the square-root series.
namespace semirel::pauli {

using Mat2 = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;
using Spinor = Eigen::Vector2cd;
using Rational = boost::rational<long long>;

const std::array<Mat2, 3>& sigma();
Mat2 sigma_dot(const Vec3& v);

/// max_{k,j} || sigma_k sigma_j - (delta_kj + i eps_kjl sigma_l) ||_max
double sigma_product_check();

/// || (sigma.a)(sigma.b) - (a.b) - i sigma.(a x b) ||_max
double sigma_vector_identity_residual(const Vec3& a, const Vec3& b);

/// Largest residual of the vector identity over `pairs` random unit-vector
/// pairs drawn from a seeded generator.
double sigma_random_check(int pairs, std::uint64_t seed = 12345);

/// Vector potential A(x) = g(x) M x, with g = exp(-|x|^2 / w^2) or g = 1.
/// The zero field, a uniform field (M = [B x]/2, g = 1) and a Gaussian-damped
/// linear field make up the built-in family.
class SampledField {
 public:
  static SampledField zero();
  static SampledField uniform(const Vec3& b);
  /// Gaussian envelope of width w times a fixed non-symmetric linear map
  /// scaled by `amplitude`.
  static SampledField gaussian(double amplitude = 0.7, double width = 1.2);

  Vec3 potential(const Vec3& x) const;
  /// Jacobian J(i, j) = d A_i / d x_j, analytic.
  Eigen::Matrix3d jacobian(const Vec3& x) const;
  /// B = curl A, analytic.
  Vec3 magnetic(const Vec3& x) const;
  bool is_zero() const { return m_.isZero(0.0); }

  /// Sample points of the check: a fixed 3x3x3 lattice in [-0.6, 0.6]^3
  /// shifted off the symmetry planes.
  std::vector<Vec3> sample_points() const;

 private:
  SampledField(const Eigen::Matrix3d& m, double width) : m_(m), width_(width) {}
  Eigen::Matrix3d m_;
  double width_;  // <= 0: no envelope
};

/// Built-in spinor test function: a Gaussian times a complex linear spinor
/// polynomial.
Spinor test_spinor(const Vec3& x);

struct MinimalCouplingReport {
  double h = 0.0;
  double residual = 0.0;       // max pointwise |lhs - rhs| at spacing h
  double residual_half = 0.0;  // same at h/2
  double ratio = 0.0;          // residual / residual_half
  double sigma_b_scale = 0.0;  // max |e sigma.B psi|, for scale
};

/// Max over the sample points of |(sigma.pi)^2 psi - (pi.pi - e sigma.B) psi|,
/// pi_k = -i d_k - e A_k, with d_k the central difference of spacing h.
double minimal_coupling_residual(const SampledField& field, double charge, double h);

/// Residuals at h and h/2. Throws FieldTooRough unless the ratio lies in
/// [3.5, 4.5]; the zero field is exempt because its residual is roundoff.
MinimalCouplingReport minimal_coupling_square_check(const SampledField& field, double charge,
                                                    double h = 1e-2);

/// The e sigma.B psi term at x.
Spinor sigma_b_term(const SampledField& field, double charge, const Vec3& x);

/// Coefficients of sqrt(1 + x) = sum_k c_k x^k for k = 0..order, exact.
std::vector<Rational> sqrt_series_coefficients(int order);

/// Bound on |sqrt(1+x) - (1 + x/2 - x^2/8)| for |x| <= x_max:
/// x_max^3/16 (1 - x_max)^{-5/2}. Throws DomainError for x_max >= 1.
double sqrt_remainder_bound(double x_max);

struct PlaneWaveCheck {
  double exact = 0.0;      // sqrt(m^2 + p^2)
  double truncated = 0.0;  // m + p^2/2m - p^4/8m^3
  double error = 0.0;
  double bound = 0.0;      // m * sqrt_remainder_bound(p^2/m^2)
};

PlaneWaveCheck plane_wave_check(double mass, double momentum);

}  // namespace semirel::pauli
