#include "semirel/pauli.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "semirel/error.hpp"

namespace semirel::pauli {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

const std::array<Mat2, 3>& sigma() {
  static const std::array<Mat2, 3> s = [] {
    std::array<Mat2, 3> out;
    out[0] << 0, 1, 1, 0;
    out[1] << 0, -I, I, 0;
    out[2] << 1, 0, 0, -1;
    return out;
  }();
  return s;
}

Mat2 sigma_dot(const Vec3& v) {
  const auto& s = sigma();
  return v[0] * s[0] + v[1] * s[1] + v[2] * s[2];
}

double sigma_product_check() {
  const auto& s = sigma();
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) {
      Mat2 expected = (k == j ? 1.0 : 0.0) * Mat2::Identity();
      for (int l = 0; l < 3; ++l) {
        // eps_kjl for indices in {0,1,2}
        const int eps = (k - j) * (j - l) * (l - k) / 2;
        if (eps != 0) expected += I * static_cast<double>(eps) * s[l];
      }
      worst = std::max(worst, (s[k] * s[j] - expected).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double sigma_vector_identity_residual(const Vec3& a, const Vec3& b) {
  const Mat2 lhs = sigma_dot(a) * sigma_dot(b);
  const Mat2 rhs = a.dot(b) * Mat2::Identity() + I * sigma_dot(a.cross(b));
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double sigma_random_check(int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto unit = [&] {
    Vec3 v(normal(rng), normal(rng), normal(rng));
    return Vec3(v / v.norm());
  };
  double worst = 0.0;
  for (int i = 0; i < pairs; ++i) worst = std::max(worst, sigma_vector_identity_residual(unit(), unit()));
  return worst;
}

// ---------------------------------------------------------------------------

SampledField SampledField::zero() { return SampledField(Eigen::Matrix3d::Zero(), 0.0); }

SampledField SampledField::uniform(const Vec3& b) {
  Eigen::Matrix3d cross;
  cross << 0, -b[2], b[1], b[2], 0, -b[0], -b[1], b[0], 0;
  return SampledField(0.5 * cross, 0.0);
}

SampledField SampledField::gaussian(double amplitude, double width) {
  if (!(width > 0.0)) throw InvalidArgument("field envelope width must be positive");
  Eigen::Matrix3d m;
  m << 0.2, -1.0, 0.3, 0.8, 0.1, -0.4, 0.5, 0.6, -0.3;
  return SampledField(amplitude * m, width);
}

Vec3 SampledField::potential(const Vec3& x) const {
  const double g = width_ > 0.0 ? std::exp(-x.squaredNorm() / (width_ * width_)) : 1.0;
  return g * (m_ * x);
}

Eigen::Matrix3d SampledField::jacobian(const Vec3& x) const {
  if (width_ <= 0.0) return m_;
  const double g = std::exp(-x.squaredNorm() / (width_ * width_));
  const Vec3 grad_g = -2.0 * g / (width_ * width_) * x;
  return g * m_ + (m_ * x) * grad_g.transpose();
}

Vec3 SampledField::magnetic(const Vec3& x) const {
  const Eigen::Matrix3d j = jacobian(x);
  return Vec3(j(2, 1) - j(1, 2), j(0, 2) - j(2, 0), j(1, 0) - j(0, 1));
}

std::vector<Vec3> SampledField::sample_points() const {
  const double ticks[3] = {-0.55, 0.05, 0.6};
  std::vector<Vec3> out;
  for (double a : ticks)
    for (double b : ticks)
      for (double c : ticks) out.emplace_back(a + 0.013, b - 0.021, c + 0.007);
  return out;
}

Spinor test_spinor(const Vec3& x) {
  const double g = std::exp(-0.5 * x.squaredNorm());
  return g * Spinor(cplx(1.0 + 0.3 * x[1], 0.5 * x[0]), cplx(0.4 - 0.2 * x[2], 0.6 * x[0]));
}

namespace {

using SpinorField = std::function<Spinor(const Vec3&)>;

// (pi_k F)(x) = -i (F(x + h e_k) - F(x - h e_k)) / 2h - e A_k(x) F(x)
Spinor pi_apply(const SpinorField& f, const SampledField& field, double e, int k, double h,
                const Vec3& x) {
  Vec3 step = Vec3::Zero();
  step[k] = h;
  const Spinor d = (f(x + step) - f(x - step)) / (2.0 * h);
  return -I * d - e * field.potential(x)[k] * f(x);
}

}  // namespace

Spinor sigma_b_term(const SampledField& field, double charge, const Vec3& x) {
  return charge * (sigma_dot(field.magnetic(x)) * test_spinor(x));
}

double minimal_coupling_residual(const SampledField& field, double charge, double h) {
  if (!(h > 0.0)) throw InvalidArgument("finite-difference spacing must be positive");
  const auto& s = sigma();
  const SpinorField psi = test_spinor;
  const SpinorField sigma_pi = [&](const Vec3& x) {
    Spinor acc = Spinor::Zero();
    for (int k = 0; k < 3; ++k) acc += s[k] * pi_apply(psi, field, charge, k, h, x);
    return acc;
  };
  double worst = 0.0;
  for (const Vec3& x : field.sample_points()) {
    Spinor lhs = Spinor::Zero();
    Spinor rhs = -sigma_b_term(field, charge, x);
    for (int k = 0; k < 3; ++k) {
      lhs += s[k] * pi_apply(sigma_pi, field, charge, k, h, x);
      const SpinorField pik = [&, k](const Vec3& y) { return pi_apply(psi, field, charge, k, h, y); };
      rhs += pi_apply(pik, field, charge, k, h, x);
    }
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

MinimalCouplingReport minimal_coupling_square_check(const SampledField& field, double charge,
                                                    double h) {
  MinimalCouplingReport out;
  out.h = h;
  out.residual = minimal_coupling_residual(field, charge, h);
  out.residual_half = minimal_coupling_residual(field, charge, 0.5 * h);
  out.ratio = out.residual_half > 0.0 ? out.residual / out.residual_half : 0.0;
  for (const Vec3& x : field.sample_points()) {
    out.sigma_b_scale = std::max(out.sigma_b_scale, sigma_b_term(field, charge, x).cwiseAbs().maxCoeff());
  }
  if (!field.is_zero() && charge != 0.0 && (out.ratio < 3.5 || out.ratio > 4.5)) {
    std::ostringstream msg;
    msg << "Richardson ratio " << out.ratio << " at h = " << h
        << " is not second order; the field is too rough for this spacing";
    throw FieldTooRough(msg.str());
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Rational> sqrt_series_coefficients(int order) {
  if (order < 0 || order > 25) throw InvalidArgument("series order must lie in [0, 25]");
  std::vector<Rational> c{Rational(1)};
  for (int k = 1; k <= order; ++k) c.push_back(c.back() * Rational(3 - 2 * k, 2 * k));
  return c;
}

double sqrt_remainder_bound(double x_max) {
  const double x = std::abs(x_max);
  if (x >= 1.0) throw DomainError("remainder bound needs |x| < 1");
  return x * x * x / 16.0 * std::pow(1.0 - x, -2.5);
}

PlaneWaveCheck plane_wave_check(double mass, double momentum) {
  if (!(mass > 0.0)) throw InvalidArgument("mass must be positive");
  const double x = momentum * momentum / (mass * mass);
  PlaneWaveCheck out;
  out.exact = std::sqrt(mass * mass + momentum * momentum);
  out.truncated = mass * (1.0 + 0.5 * x - 0.125 * x * x);
  out.error = std::abs(out.exact - out.truncated);
  out.bound = mass * sqrt_remainder_bound(x);
  return out;
}

}  // namespace semirel::pauli
