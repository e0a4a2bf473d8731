#include "semirel/perturbation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "semirel/error.hpp"
#include "semirel/quadrature.hpp"

namespace semirel::perturbation {

using cplx = std::complex<double>;

int grade(Generator g) {
  switch (g) {
    case Generator::M: return 0;
    case Generator::T: return 2;
    case Generator::V: return 2;
    case Generator::S: return 3;
  }
  return 0;
}

char symbol(Generator g) {
  switch (g) {
    case Generator::M: return 'M';
    case Generator::T: return 'T';
    case Generator::V: return 'V';
    case Generator::S: return 'S';
  }
  return '?';
}

const char* to_string(SpinSector s) {
  return s == SpinSector::spin_zero ? "spin-0" : "spin-1/2";
}

int OperatorWord::grade() const {
  int g = 0;
  for (Generator f : factors) g += perturbation::grade(f);
  return g;
}

bool OperatorWord::is_odd() const {
  return std::find(factors.begin(), factors.end(), Generator::S) != factors.end();
}

std::string OperatorWord::to_string() const {
  std::ostringstream os;
  os << coefficient.numerator();
  if (coefficient.denominator() != 1) os << '/' << coefficient.denominator();
  if (inverse_mass_power != 0) os << " m^-" << inverse_mass_power;
  for (Generator f : factors) os << ' ' << symbol(f);
  return os.str();
}

OperatorWord word(Rational coefficient, int inverse_mass_power, std::vector<Generator> factors) {
  return OperatorWord{std::move(factors), coefficient, inverse_mass_power};
}

std::vector<OperatorWord> HamiltonianExpansion::odd_terms() const {
  std::vector<OperatorWord> out;
  for (const auto& t : terms) {
    if (t.is_odd()) out.push_back(t);
  }
  return out;
}

std::string HamiltonianExpansion::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " | ";
    os << terms[i].to_string();
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Non-commutative polynomials in the generators

namespace {

using Key = std::pair<std::vector<Generator>, int>;
using Poly = std::map<Key, Rational>;

int key_grade(const Key& k) {
  int g = 0;
  for (Generator f : k.first) g += grade(f);
  return g;
}

void add_term(Poly& p, const Key& k, Rational c) {
  auto [it, inserted] = p.emplace(k, c);
  if (!inserted) it->second += c;
  if (it->second.numerator() == 0) p.erase(it);
}

Poly from_words(const std::vector<OperatorWord>& words) {
  Poly p;
  for (const auto& w : words) add_term(p, {w.factors, w.inverse_mass_power}, w.coefficient);
  return p;
}

Poly product(const Poly& a, const Poly& b, int max_grade) {
  Poly out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      Key k = ka;
      k.first.insert(k.first.end(), kb.first.begin(), kb.first.end());
      k.second += kb.second;
      if (key_grade(k) > max_grade) continue;
      add_term(out, k, ca * cb);
    }
  }
  return out;
}

Poly sum(Poly a, const Poly& b) {
  for (const auto& [k, c] : b) add_term(a, k, c);
  return a;
}

Poly scaled(Poly p, Rational c, int extra_mass_power) {
  Poly out;
  for (auto& [k, v] : p) add_term(out, {k.first, k.second + extra_mass_power}, v * c);
  return out;
}

Poly single(Rational c, int mass_power, std::vector<Generator> f) {
  Poly p;
  add_term(p, {std::move(f), mass_power}, c);
  return p;
}

std::vector<OperatorWord> to_words(const Poly& p) {
  std::vector<OperatorWord> out;
  for (const auto& [k, c] : p) out.push_back(word(c, k.second, k.first));
  std::stable_sort(out.begin(), out.end(), [](const OperatorWord& a, const OperatorWord& b) {
    if (a.grade() != b.grade()) return a.grade() < b.grade();
    return a.factors.size() < b.factors.size();
  });
  return out;
}

}  // namespace

std::vector<OperatorWord> iteration_step(const std::vector<OperatorWord>& previous,
                                         int target_order, SpinSector spin) {
  using G = Generator;
  const Poly prev = from_words(previous);

  // T + V + (V/m) E' - V^2/2m [+ S]
  Poly bracket = single(1, 0, {G::T});
  bracket = sum(bracket, single(1, 0, {G::V}));
  bracket = sum(bracket, scaled(product(single(1, 0, {G::V}), prev, target_order), 1, 1));
  bracket = sum(bracket, single(Rational(-1, 2), 1, {G::V, G::V}));
  if (spin == SpinSector::spin_half) bracket = sum(bracket, single(1, 0, {G::S}));

  // (1 + E'/2m)^{-1} = sum_j (-E'/2m)^j; each power raises the grade by >= 2.
  const Poly step = scaled(prev, Rational(-1, 2), 1);
  Poly prefactor = single(1, 0, {});
  Poly power = prefactor;
  for (int j = 1; 2 * j <= target_order; ++j) {
    power = product(power, step, target_order);
    prefactor = sum(prefactor, power);
  }
  return to_words(product(prefactor, bracket, target_order));
}

HamiltonianExpansion iterate_hamiltonian(int target_order, SpinSector spin,
                                         const CouplingConfig& cfg) {
  cfg.validate();
  if (target_order >= 6) {
    throw UnsupportedOrder("the iteration is implemented through order alpha^4; requested alpha^" +
                           std::to_string(target_order));
  }
  if (target_order < 0 || target_order % 2 != 0) {
    throw InvalidArgument("target order must be 0, 2 or 4");
  }
  HamiltonianExpansion out;
  out.target_order = target_order;
  out.spin = spin;
  if (target_order == 0) {
    out.terms.push_back(word(1, 0, {Generator::M}));
    return out;
  }
  std::vector<OperatorWord> current;
  for (int k = 0; k < target_order / 2; ++k) current = iteration_step(current, target_order, spin);
  out.terms = std::move(current);
  return out;
}

// ---------------------------------------------------------------------------
// Expectation values

namespace {

double level_energy(int n, const CouplingConfig& cfg) {
  return -cfg.mass * cfg.alpha * cfg.alpha / (2.0 * n * n);
}

bool only_tv(const OperatorWord& w) {
  return std::all_of(w.factors.begin(), w.factors.end(),
                     [](Generator g) { return g == Generator::T || g == Generator::V; });
}

double mass_factor(const OperatorWord& w, double mass) {
  return boost::rational_cast<double>(w.coefficient) * std::pow(mass, -w.inverse_mass_power);
}

}  // namespace

double closed_form_expectation(const OperatorWord& w, const QuantumNumbers& qn,
                               const CouplingConfig& cfg) {
  qn.validate();
  cfg.validate();
  if (w.factors.size() == 1 && w.factors[0] == Generator::M) return cfg.mass;
  if (w.is_odd()) throw InvalidArgument("odd words have no diagonal closed form; use odd_matrix_element");
  if (!only_tv(w) || w.factors.size() > 2) {
    throw InvalidArgument("closed forms cover words of at most two T/V factors: " + w.to_string());
  }
  const double e = level_energy(qn.n, cfg);
  const double v = -cfg.alpha * hydrogenics::expectation_inv_r(qn, cfg);
  const double v2 = cfg.alpha * cfg.alpha * hydrogenics::expectation_inv_r2(qn, cfg);
  if (w.factors.empty()) return 1.0;
  if (w.factors.size() == 1) return w.factors[0] == Generator::V ? v : e - v;
  const Generator a = w.factors[0], b = w.factors[1];
  if (a == Generator::V && b == Generator::V) return v2;
  if (a == Generator::T && b == Generator::T) return e * e - 2.0 * e * v + v2;
  return e * v - v2;  // VT and TV: T psi = (E_n - V) psi on either side
}

namespace {

// T R for the radial function, from R' and R''.
double kinetic_on(const hydrogenics::RadialState& st, double r) {
  const int l = st.quantum_numbers().l;
  const double m = st.config().mass;
  return -(st.second_derivative(r) + 2.0 * st.derivative(r) / r -
           l * (l + 1.0) * st.value(r) / (r * r)) /
         (2.0 * m);
}

}  // namespace

double quadrature_expectation(const OperatorWord& w, const hydrogenics::RadialState& st,
                              const QuadratureSpec& spec) {
  const double alpha = st.config().alpha;
  const double m = st.config().mass;
  const int l = st.quantum_numbers().l;
  using G = Generator;
  const auto& f = w.factors;
  std::function<double(double)> integrand;
  if (f.empty()) {
    integrand = [&](double r) { return st.value(r) * st.value(r) * r * r; };
  } else if (f.size() == 1 && f[0] == G::M) {
    return m;
  } else if (f.size() == 1 && f[0] == G::T) {
    integrand = [&](double r) { return st.value(r) * kinetic_on(st, r) * r * r; };
  } else if (f.size() == 1 && f[0] == G::V) {
    integrand = [&](double r) { return -alpha * st.value(r) * st.value(r) * r; };
  } else if (f.size() == 2 && f[0] == G::T && f[1] == G::T) {
    integrand = [&](double r) {
      const double t = kinetic_on(st, r);
      return t * t * r * r;
    };
  } else if (f.size() == 2 && f[0] == G::V && f[1] == G::T) {
    integrand = [&](double r) { return -alpha * st.value(r) * kinetic_on(st, r) * r; };
  } else if (f.size() == 2 && f[0] == G::T && f[1] == G::V) {
    // (1/2m) int [R' (V R)' + l(l+1) R (V R) / r^2] r^2 dr with V R = -alpha R / r
    integrand = [&](double r) {
      const double R = st.value(r), dR = st.derivative(r);
      const double vr = -alpha * R / r;
      const double dvr = -alpha * (dR / r - R / (r * r));
      return (dR * dvr * r * r + l * (l + 1.0) * R * vr) / (2.0 * m);
    };
  } else if (f.size() == 2 && f[0] == G::V && f[1] == G::V) {
    integrand = [&](double r) { return alpha * alpha * st.value(r) * st.value(r); };
  } else {
    throw InvalidArgument("quadrature covers words of at most two T/V factors: " + w.to_string());
  }
  return hydrogenics::integrate_radial(st, integrand, spec);
}

double commutator_expectation(const QuantumNumbers& qn, const CouplingConfig& cfg,
                              const QuadratureSpec& spec) {
  const auto st = hydrogenics::radial_wavefunction(qn, cfg);
  const double vt = quadrature_expectation(word(1, 0, {Generator::V, Generator::T}), st, spec);
  const double tv = quadrature_expectation(word(1, 0, {Generator::T, Generator::V}), st, spec);
  return (vt - tv) / (2.0 * cfg.mass);
}

FirstOrderShift first_order_shift(const QuantumNumbers& qn, const CouplingConfig& cfg,
                                  const HamiltonianExpansion& expansion) {
  qn.validate();
  cfg.validate();
  FirstOrderShift out;
  for (const auto& w : expansion.terms) {
    if (w.is_odd()) {
      if (qn.j) {
        const cplx d = odd_matrix_element(qn.n, *qn.j, qn.l, qn.l, cfg);
        out.odd_diagonal = std::max(out.odd_diagonal, std::abs(d) * mass_factor(w, cfg.mass));
      }
      continue;
    }
    if (w.grade() != 4) continue;
    const double v = mass_factor(w, cfg.mass) * closed_form_expectation(w, qn, cfg);
    out.terms.push_back({w, v});
    out.total += v;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spin-1/2 odd term

std::vector<int> channels(int n, HalfInteger j) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (j.twice < 1 || j.twice % 2 == 0) throw InvalidArgument("j must be a positive half-odd integer");
  std::vector<int> out;
  for (int l : {(j.twice - 1) / 2, (j.twice + 1) / 2}) {
    if (l <= n - 1) out.push_back(l);
  }
  if (out.empty()) {
    throw ChannelMismatch("j = " + std::to_string(j.twice) + "/2 has no channel with l <= n-1 for n = " +
                          std::to_string(n));
  }
  return out;
}

namespace {

cplx spherical_harmonic(int l, int m, double theta, double phi) {
  if (std::abs(m) > l) return 0.0;
  const double p = std::sph_legendre(l, std::abs(m), theta);
  const double sign = (m < 0 && (m % 2 != 0)) ? -1.0 : 1.0;
  return sign * p * std::polar(1.0, m * phi);
}

// Two-component spin-angle function Omega_{j l mj}.
std::array<cplx, 2> spin_angle(int l, HalfInteger j, HalfInteger mj, double theta, double phi) {
  const double mjv = mj.value();
  const double d = 2.0 * l + 1.0;
  const int m_up = (mj.twice - 1) / 2;  // mj - 1/2
  const int m_dn = (mj.twice + 1) / 2;  // mj + 1/2
  const cplx y_up = spherical_harmonic(l, m_up, theta, phi);
  const cplx y_dn = spherical_harmonic(l, m_dn, theta, phi);
  if (j.twice == 2 * l + 1) {
    return {std::sqrt(std::max(0.0, (l + mjv + 0.5) / d)) * y_up,
            std::sqrt(std::max(0.0, (l - mjv + 0.5) / d)) * y_dn};
  }
  return {-std::sqrt(std::max(0.0, (l - mjv + 0.5) / d)) * y_up,
          std::sqrt(std::max(0.0, (l + mjv + 0.5) / d)) * y_dn};
}

}  // namespace

double angular_factor(int l_bra, int l_ket, HalfInteger j, HalfInteger mj) {
  for (int l : {l_bra, l_ket}) {
    if (l < 0 || std::abs(j.twice - 2 * l) != 1) {
      throw ChannelMismatch("l = " + std::to_string(l) + " is not a channel of j = " +
                            std::to_string(j.twice) + "/2");
    }
  }
  if (std::abs(mj.twice) > j.twice || mj.twice % 2 == 0) {
    throw InvalidArgument("m_j must satisfy |m_j| <= j");
  }
  const int lmax = std::max(l_bra, l_ket);
  const QuadratureRule ct = gauss_legendre(lmax + 4, -1.0, 1.0);
  const int nphi = 2 * lmax + 6;
  cplx acc = 0.0;
  for (std::size_t it = 0; it < ct.size(); ++it) {
    const double c = ct.nodes[it];
    const double theta = std::acos(c);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int ip = 0; ip < nphi; ++ip) {
      const double phi = 2.0 * std::numbers::pi * ip / nphi;
      const auto b = spin_angle(l_bra, j, mj, theta, phi);
      const auto k = spin_angle(l_ket, j, mj, theta, phi);
      // sigma.rhat = [[cos, sin e^{-i phi}], [sin e^{i phi}, -cos]]
      const cplx up = c * k[0] + s * std::polar(1.0, -phi) * k[1];
      const cplx dn = s * std::polar(1.0, phi) * k[0] - c * k[1];
      acc += ct.weights[it] * (2.0 * std::numbers::pi / nphi) *
             (std::conj(b[0]) * up + std::conj(b[1]) * dn);
    }
  }
  return acc.real();
}

std::complex<double> odd_matrix_element(int n, HalfInteger j, int l_bra, int l_ket,
                                        const CouplingConfig& cfg) {
  cfg.validate();
  const auto ch = channels(n, j);
  for (int l : {l_bra, l_ket}) {
    if (std::find(ch.begin(), ch.end(), l) == ch.end()) {
      throw ChannelMismatch("l = " + std::to_string(l) + " is not a channel of (n = " +
                            std::to_string(n) + ", j = " + std::to_string(j.twice) + "/2)");
    }
  }
  const double a = angular_factor(l_bra, l_ket, j);
  const auto bra = hydrogenics::radial_wavefunction(QuantumNumbers::make(n, l_bra), cfg);
  const auto ket = hydrogenics::radial_wavefunction(QuantumNumbers::make(n, l_ket), cfg);
  const double radial = hydrogenics::cross_radial_integral(bra, ket, -2);
  return cplx(0.0, -cfg.branch_sign() * cfg.alpha / (2.0 * cfg.mass) * a * radial);
}

// ---------------------------------------------------------------------------
// Reduced resolvent

namespace {

ResolventResult resolvent_once(int l, int n, const std::function<double(double)>& source,
                               const CouplingConfig& cfg, int size, const ResolventOptions& o) {
  const double s = o.basis_power < 0.0 ? std::max(l - 1, 0) : o.basis_power;
  const double mu = o.basis_scale > 0.0 ? o.basis_scale : cfg.mass * cfg.alpha / n;
  LaguerreBasis basis(l, s, mu, size);
  const Eigen::MatrixXd h = basis.kinetic(cfg.mass) - cfg.alpha * basis.inverse_r();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  if (eig.info() != Eigen::Success) throw SingularSystem("basis Hamiltonian eigensolve failed");

  const double en = level_energy(n, cfg);
  const Eigen::VectorXd b = basis.project(source);
  const Eigen::VectorXd c = eig.eigenvectors().transpose() * b;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(size);
  int deflated = 0;
  for (int i = 0; i < size; ++i) {
    const double gap = en - eig.eigenvalues()[i];
    if (std::abs(gap) <= o.deflation_tolerance * std::abs(en)) {
      ++deflated;
      continue;
    }
    if (std::abs(gap) <= 1e-6 * std::abs(en)) {
      std::ostringstream msg;
      msg << "basis eigenvalue " << eig.eigenvalues()[i] << " lies within " << std::abs(gap)
          << " of E_n = " << en << " but cannot be deflated";
      throw SingularSystem(msg.str());
    }
    y[i] = c[i] / gap;
  }
  const int expected = l <= n - 1 ? 1 : 0;
  if (deflated > expected) {
    throw SingularSystem("more basis states than expected are degenerate with E_n in channel l = " +
                         std::to_string(l));
  }
  ResolventResult out{basis, eig.eigenvectors() * y, b, 0.0, deflated, 0.0};
  out.norm = out.coefficients.norm();
  return out;
}

}  // namespace

ResolventResult reduced_resolvent_apply(int l_channel, int n,
                                        const std::function<double(double)>& source,
                                        const CouplingConfig& cfg, int basis_size,
                                        const ResolventOptions& options) {
  cfg.validate();
  if (n < 1 || l_channel < 0) throw InvalidArgument("resolvent needs n >= 1 and l >= 0");
  if (basis_size < 4) throw InvalidArgument("resolvent basis needs at least 4 functions");
  ResolventResult out = resolvent_once(l_channel, n, source, cfg, basis_size, options);
  if (options.check_convergence) {
    const ResolventResult fine = resolvent_once(l_channel, n, source, cfg, 2 * basis_size, options);
    // Floor at a millionth of the unprojected response so that a source lying
    // in the deflated space does not turn round-off into a relative change.
    const double floor = 1e-6 * out.source.norm() / std::abs(level_energy(n, cfg));
    const double scale = std::max({out.norm, fine.norm, floor});
    out.relative_change = scale > 0.0 ? std::abs(fine.norm - out.norm) / scale : 0.0;
    if (out.relative_change > options.tolerance) {
      std::ostringstream msg;
      msg << "reduced resolvent in channel l = " << l_channel << " changed by "
          << out.relative_change << " (relative) when the basis grew from " << basis_size
          << " to " << 2 * basis_size;
      throw NonConverged(msg.str());
    }
  }
  return out;
}

OddSecondOrder odd_second_order(int n, HalfInteger j, int l, const CouplingConfig& cfg,
                                int basis_size, const ResolventOptions& options) {
  const auto ch = channels(n, j);
  if (std::find(ch.begin(), ch.end(), l) == ch.end()) {
    throw ChannelMismatch("l = " + std::to_string(l) + " is not a channel of (n, j)");
  }
  // sigma.rhat maps l to the other orbital value of the same j.
  const int lx = j.twice - l;
  const double a = angular_factor(l, lx, j) * angular_factor(lx, l, j);
  const auto st = hydrogenics::radial_wavefunction(QuantumNumbers::make(n, l), cfg);
  const auto src = [&st](double r) { return st.value(r) / (r * r); };
  const ResolventResult res = reduced_resolvent_apply(lx, n, src, cfg, basis_size, options);
  // (-+ i alpha/2m)^2 = -(alpha/2m)^2 for either branch
  const double k = cfg.alpha / (2.0 * cfg.mass);
  return {-k * k * a * res.source.dot(res.coefficients), lx, res.relative_change};
}

std::vector<double> EffectiveMatrix::bindings() const {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < shifts.size(); ++i) out.push_back(unperturbed + shifts[i]);
  return out;
}

EffectiveMatrix effective_fine_structure(int n, HalfInteger j, const CouplingConfig& cfg,
                                         int basis_size, const ResolventOptions& options) {
  cfg.validate();
  EffectiveMatrix out;
  out.n = n;
  out.j = j;
  out.channels = channels(n, j);
  out.unperturbed = level_energy(n, cfg);
  const auto d = static_cast<Eigen::Index>(out.channels.size());
  out.first_order = Eigen::MatrixXcd::Zero(d, d);
  out.second_order = Eigen::MatrixXcd::Zero(d, d);

  const HamiltonianExpansion h4 = iterate_hamiltonian(4, SpinSector::spin_half, cfg);
  for (Eigen::Index b = 0; b < d; ++b) {
    const QuantumNumbers qb = QuantumNumbers::make(n, out.channels[b], j.value());
    out.first_order(b, b) += first_order_shift(qb, cfg, h4).total;
    for (Eigen::Index k = 0; k < d; ++k) {
      out.first_order(b, k) += odd_matrix_element(n, j, out.channels[b], out.channels[k], cfg);
    }
    // Intermediate channel 2j - l differs between the two channels, so the
    // second-order block is diagonal.
    out.second_order(b, b) = odd_second_order(n, j, out.channels[b], cfg, basis_size, options).value;
  }
  out.entries = out.first_order + out.second_order;

  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(out.entries);
  const Eigen::VectorXcd ev = eig.eigenvalues();
  std::vector<double> re;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    re.push_back(ev[i].real());
    out.max_imaginary = std::max(out.max_imaginary, std::abs(ev[i].imag()));
  }
  std::sort(re.begin(), re.end());
  out.shifts = Eigen::Map<Eigen::VectorXd>(re.data(), static_cast<Eigen::Index>(re.size()));
  const double a2 = cfg.alpha * cfg.alpha;
  if (out.max_imaginary > 1e-10 * cfg.mass * a2 * a2) {
    std::ostringstream msg;
    msg << "effective matrix for n = " << n << ", j = " << j.twice
        << "/2 has eigenvalues with imaginary part " << out.max_imaginary;
    throw ComplexEigenvalues(msg.str());
  }
  return out;
}

double textbook_hamiltonian_shift(const QuantumNumbers& qn, const CouplingConfig& cfg) {
  qn.validate();
  cfg.validate();
  const double m = cfg.mass, alpha = cfg.alpha;
  const double jv = qn.j_value();
  const double kinetic = -hydrogenics::kinetic_moments(qn, cfg).p4 / (8.0 * m * m * m);
  double darwin = 0.0, spin_orbit = 0.0;
  if (qn.l == 0) {
    const double r0 = hydrogenics::radial_wavefunction(qn, cfg).at_origin();
    darwin = alpha * r0 * r0 / (8.0 * m * m);
  } else {
    const double sl = jv * (jv + 1.0) - qn.l * (qn.l + 1.0) - 0.75;
    spin_orbit = alpha / (4.0 * m * m) * hydrogenics::expectation_inv_r3(qn, cfg) * sl;
  }
  return kinetic + darwin + spin_orbit;
}

std::complex<double> bilinear_second_order(const Eigen::VectorXd& energies,
                                           const Eigen::MatrixXcd& w, int target) {
  const Eigen::Index n = energies.size();
  if (w.rows() != n || w.cols() != n || target < 0 || target >= n) {
    throw InvalidArgument("bilinear_second_order: inconsistent dimensions");
  }
  const double et = energies[target];
  const double tol = 1e-14 * std::max(1.0, std::abs(et));
  cplx acc = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double gap = et - energies[k];
    if (std::abs(gap) <= tol) continue;
    acc += w(target, k) * w(k, target) / gap;
  }
  return acc;
}

double commutator_second_order(const QuantumNumbers& qn, const CouplingConfig& cfg,
                               int basis_size, const ResolventOptions& options) {
  qn.validate();
  cfg.validate();
  if (qn.l == 0) {
    throw DivergentMoment("second order of the commutator word diverges for s states");
  }
  const auto st = hydrogenics::radial_wavefunction(qn, cfg);
  const double m = cfg.mass, alpha = cfg.alpha;
  const int l = qn.l;
  const double cent = l * (l + 1.0);
  // W R = (V T R - T (V R)) / 2m with V R = -alpha g, g = R / r
  const auto source = [&](double r) {
    const double R = st.value(r), dR = st.derivative(r), d2R = st.second_derivative(r);
    const double tR = -(d2R + 2.0 * dR / r - cent * R / (r * r)) / (2.0 * m);
    const double g = R / r;
    const double dg = dR / r - R / (r * r);
    const double d2g = d2R / r - 2.0 * dR / (r * r) + 2.0 * R / (r * r * r);
    const double tg = -(d2g + 2.0 * dg / r - cent * g / (r * r)) / (2.0 * m);
    return ((-alpha / r) * tR + alpha * tg) / (2.0 * m);
  };
  const ResolventResult res = reduced_resolvent_apply(l, qn.n, source, cfg, basis_size, options);
  // <psi|W = -(W psi)^T for the real operators T and V
  return -res.source.dot(res.coefficients);
}

}  // namespace semirel::perturbation
