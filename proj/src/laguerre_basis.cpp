#include "semirel/laguerre_basis.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "semirel/error.hpp"
#include "semirel/quadrature.hpp"
#include "semirel/special_functions.hpp"

namespace semirel {

namespace {

double log_norm(int k, double a) {
  return 0.5 * (special::log_factorial(k) - std::lgamma(k + a + 1.0));
}

}  // namespace

LaguerreBasis::LaguerreBasis(int l, double power, double scale, int size)
    : l_(l), s_(power), mu_(scale), size_(size) {
  if (l < 0) throw InvalidArgument("basis channel must have l >= 0");
  if (!(power > -1.0)) throw InvalidArgument("basis power must exceed -1");
  if (!(scale > 0.0)) throw InvalidArgument("basis scale must be positive");
  if (size < 1) throw InvalidArgument("basis needs at least one function");
}

Eigen::VectorXd LaguerreBasis::values(double r) const {
  const double x = 2.0 * mu_ * r;
  const double a = 2.0 * s_ + 2.0;
  Eigen::VectorXd out(size_);
  special::normalized_laguerre(a, x, std::span<double>(out.data(), size_));
  const double pref =
      std::pow(2.0 * mu_, 1.5) * (s_ == 0.0 ? 1.0 : std::pow(x, s_)) * std::exp(-0.5 * x);
  return out * pref;
}

double LaguerreBasis::evaluate(const Eigen::VectorXd& coeffs, double r) const {
  return coeffs.dot(values(r));
}

Eigen::MatrixXd LaguerreBasis::overlap() const {
  return Eigen::MatrixXd::Identity(size_, size_);
}

Eigen::MatrixXd LaguerreBasis::inverse_r() const {
  // int x^{a-1} e^{-x} L_i^{(a)} L_j^{(a)} dx = Gamma(p+a+1) / (a p!),  p = min(i, j)
  const double a = 2.0 * s_ + 2.0;
  Eigen::MatrixXd out(size_, size_);
  for (int i = 0; i < size_; ++i) {
    for (int j = 0; j <= i; ++j) {
      const int p = j;
      const double v = 2.0 * mu_ / a *
                       std::exp(log_norm(i, a) + log_norm(j, a) + std::lgamma(p + a + 1.0) -
                                special::log_factorial(p));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

Eigen::MatrixXd LaguerreBasis::kinetic(double mass) const {
  const double a = 2.0 * s_ + 2.0;
  const QuadratureRule rule = gauss_laguerre(size_ + 4, 2.0 * s_);
  const int nq = static_cast<int>(rule.size());
  Eigen::MatrixXd p(size_, nq), q(size_, nq);
  std::vector<double> buf(size_);
  for (int iq = 0; iq < nq; ++iq) {
    const double x = rule.nodes[iq];
    const double sw = std::sqrt(rule.weights[iq]);
    special::normalized_laguerre(a, x, buf);
    for (int k = 0; k < size_; ++k) {
      // x P_k' = k P_k - sqrt(k (k + a)) P_{k-1}
      const double xdp = k * buf[k] - (k > 0 ? std::sqrt(k * (k + a)) * buf[k - 1] : 0.0);
      p(k, iq) = sw * buf[k];
      q(k, iq) = sw * (s_ * buf[k] - 0.5 * x * buf[k] + xdp);
    }
  }
  const double centrifugal = static_cast<double>(l_) * (l_ + 1);
  Eigen::MatrixXd t = q * q.transpose() + centrifugal * (p * p.transpose());
  t *= (2.0 * mu_) * (2.0 * mu_) / (2.0 * mass);
  return 0.5 * (t + t.transpose());
}

Eigen::VectorXd LaguerreBasis::project(const std::function<double(double)>& f,
                                       int extra_nodes) const {
  const double a = 2.0 * s_ + 2.0;
  const QuadratureRule rule = gauss_laguerre(size_ + extra_nodes, 2.0 * s_);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(size_);
  std::vector<double> buf(size_);
  // phi_k r^2 dr = (2mu)^{-3/2} P_k x^{s+2} e^{-x/2} dx; divide out x^{2s} e^{-x}.
  const double pref = std::pow(2.0 * mu_, -1.5);
  for (std::size_t iq = 0; iq < rule.size(); ++iq) {
    const double x = rule.nodes[iq];
    const double fx = f(x / (2.0 * mu_));
    if (fx == 0.0) continue;
    special::normalized_laguerre(a, x, buf);
    const double w = rule.weights[iq] * pref * std::pow(x, 2.0 - s_) * std::exp(0.5 * x) * fx;
    for (int k = 0; k < size_; ++k) out[k] += w * buf[k];
  }
  return out;
}

Eigen::MatrixXd LaguerreBasis::momentum_values(std::span<const double> momenta) const {
  if (l_ == 0) return momentum_values_swave(momenta);
  return momentum_values_gegenbauer(momenta);
}

Eigen::MatrixXd LaguerreBasis::momentum_values_gegenbauer(std::span<const double> momenta) const {
  if (s_ != static_cast<double>(l_)) {
    throw InvalidArgument("Gegenbauer momentum transform requires basis power s = l");
  }
  const int l = l_;
  const double lambda = l + 2.0;
  const double a = 2.0 * l + 2.0;
  // sqrt(2/pi) (2mu)^{l+3/2} 2^{l+1} (l+1)! mu
  const double base = std::sqrt(2.0 / std::numbers::pi) * std::pow(2.0 * mu_, l + 1.5) *
                      std::pow(2.0, l + 1) * std::exp(special::log_factorial(l + 1)) * mu_;
  Eigen::MatrixXd out(size_, static_cast<Eigen::Index>(momenta.size()));
  for (std::size_t ip = 0; ip < momenta.size(); ++ip) {
    const double p = momenta[ip];
    if (!(p > 0.0)) throw InvalidArgument("momentum nodes must be positive");
    const double d = p * p + mu_ * mu_;
    const double y = (p * p - mu_ * mu_) / d;
    const double shape = base * std::pow(p, l) / std::pow(d, l + 2);
    // C_k and C_{k-1} by the three-term recurrence
    double prev = 0.0, cur = 1.0;
    for (int k = 0; k < size_; ++k) {
      if (k > 0) {
        const double next =
            k == 1 ? 2.0 * lambda * y
                   : (2.0 * (k + lambda - 1.0) * y * cur - (k + 2.0 * lambda - 2.0) * prev) / k;
        prev = cur;
        cur = next;
      }
      out(k, static_cast<Eigen::Index>(ip)) = std::exp(log_norm(k, a)) * shape * (cur + prev);
    }
  }
  return out;
}

Eigen::MatrixXd LaguerreBasis::momentum_values_swave(std::span<const double> momenta) const {
  if (l_ != 0) throw InvalidArgument("series momentum transform is implemented for l = 0");
  // sum_k t^k H[r^s e^{-mu r} L_k^{(2s+2)}(2 mu r)](p)
  //   = Gamma(s+2)/p Im{ (mu - i p)^{-(s+2)} (1-t)^{-(s+1)} (1 + t w)^{-(s+2)} },
  // w = (mu + i p)/(mu - i p); the t^k coefficient is a finite convolution.
  using cplx = std::complex<double>;
  const double s = s_;
  const double a = 2.0 * s + 2.0;
  std::vector<double> lhs(size_), rhs(size_), norm(size_);
  lhs[0] = rhs[0] = 1.0;
  for (int j = 1; j < size_; ++j) {
    lhs[j] = lhs[j - 1] * (s + j) / j;      // (s+1)_j / j!
    rhs[j] = rhs[j - 1] * (s + 1.0 + j) / j;  // (s+2)_j / j!
  }
  const double base =
      std::sqrt(2.0 / std::numbers::pi) * std::pow(2.0 * mu_, s + 1.5) * std::tgamma(s + 2.0);
  for (int k = 0; k < size_; ++k) norm[k] = base * std::exp(log_norm(k, a));

  Eigen::MatrixXd out(size_, static_cast<Eigen::Index>(momenta.size()));
  std::vector<cplx> zpow(size_);
  for (std::size_t ip = 0; ip < momenta.size(); ++ip) {
    const double p = momenta[ip];
    if (!(p > 0.0)) throw InvalidArgument("momentum nodes must be positive");
    const cplx denom(mu_, -p);
    const cplx z = -cplx(mu_, p) / denom;
    const cplx pre = std::exp(-(s + 2.0) * std::log(denom));
    zpow[0] = 1.0;
    for (int i = 1; i < size_; ++i) zpow[i] = zpow[i - 1] * z;
    for (int k = 0; k < size_; ++k) {
      cplx c = 0.0;
      for (int j = 0; j <= k; ++j) c += lhs[j] * rhs[k - j] * zpow[k - j];
      out(k, static_cast<Eigen::Index>(ip)) = norm[k] * std::imag(pre * c) / p;
    }
  }
  return out;
}

}  // namespace semirel
