#pragma once

#include <Eigen/Dense>
#include <boost/rational.hpp>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "semirel/hydrogenics.hpp"
#include "semirel/laguerre_basis.hpp"
#include "semirel/types.hpp"

// Order-graded iteration of the Klein-Gordon-type equation, first-order
// shifts on hydrogenic states, and the second-order treatment of the
// anti-Hermitian spin-1/2 odd term.
namespace semirel::perturbation {

using Rational = boost::rational<long long>;

/// M: rest mass, T: p^2/2m, V: -alpha/r, S: the odd term -+(i/2m) sigma.grad V.
enum class Generator { M, T, V, S };

int grade(Generator g);
char symbol(Generator g);

enum class SpinSector { spin_zero, spin_half };

const char* to_string(SpinSector s);

/// coefficient * m^{-inverse_mass_power} * factors[0] factors[1] ...
/// Factors keep their order; generators do not commute.
struct OperatorWord {
  std::vector<Generator> factors;
  Rational coefficient{1};
  int inverse_mass_power = 0;

  int grade() const;
  bool is_odd() const;  // contains S
  std::string to_string() const;

  friend bool operator==(const OperatorWord&, const OperatorWord&) = default;
};

OperatorWord word(Rational coefficient, int inverse_mass_power, std::vector<Generator> factors);

struct HamiltonianExpansion {
  int target_order = 0;
  SpinSector spin = SpinSector::spin_zero;
  std::vector<OperatorWord> terms;  // canonical order: by grade, then factors

  /// Odd (grade-3) words kept because they act at second order.
  std::vector<OperatorWord> odd_terms() const;
  std::string to_string() const;
};

/// Runs the iteration E'_{k+1} = [sum_j (-E'_k/2m)^j] (T + V + (V/m) E'_k - V^2/2m [+ S])
/// from E'_0 = 0 and truncates by grade. Order 0 returns {M}. Throws
/// UnsupportedOrder unless target_order is 0, 2 or 4.
HamiltonianExpansion iterate_hamiltonian(int target_order, SpinSector spin,
                                         const CouplingConfig& cfg);

/// One iteration step applied to `previous`, truncated at `target_order`;
/// exposed so tests can check that the order-4 result is a fixed point.
std::vector<OperatorWord> iteration_step(const std::vector<OperatorWord>& previous,
                                         int target_order, SpinSector spin);

// ---------------------------------------------------------------------------
// Expectation values on hydrogenic states

/// <word> for words of at most two factors from {T, V}, using T psi = (E_n - V) psi
/// and the closed forms for <1/r>, <1/r^2>. Odd words throw InvalidArgument
/// (use odd_matrix_element).
double closed_form_expectation(const OperatorWord& w, const QuantumNumbers& qn,
                               const CouplingConfig& cfg);

/// Same words by explicit radial quadrature: T acts through R'' and R'. A
/// trailing T acts on psi directly; a T that acts on V psi is evaluated in the
/// symmetric gradient form, which stays valid for s states.
double quadrature_expectation(const OperatorWord& w, const hydrogenics::RadialState& state,
                              const QuadratureSpec& spec = {});

/// <(V T - T V)/2m> by quadrature.
double commutator_expectation(const QuantumNumbers& qn, const CouplingConfig& cfg,
                              const QuadratureSpec& spec = {});

struct WordShift {
  OperatorWord word;
  double value;  // coefficient * m^{-p} * <word>
};

struct FirstOrderShift {
  double total = 0.0;
  std::vector<WordShift> terms;  // grade-4 even words only
  /// |<S>| on the state when the expansion has odd words and qn carries j.
  double odd_diagonal = 0.0;
};

/// Sum over the grade-4 even words of `expansion`; the grade-2 words make up
/// H0 and give E_n. Odd words are not part of the sum: their diagonal element
/// is evaluated with odd_matrix_element and reported in odd_diagonal.
FirstOrderShift first_order_shift(const QuantumNumbers& qn, const CouplingConfig& cfg,
                                  const HamiltonianExpansion& expansion);

// ---------------------------------------------------------------------------
// Spin-1/2 odd term

/// Orbital channels l = j -+ 1/2 with 0 <= l <= n-1, ascending.
std::vector<int> channels(int n, HalfInteger j);

/// <Omega_{j l_bra m}| sigma.rhat |Omega_{j l_ket m}> by quadrature over the
/// sphere (Condon-Shortley phases). It is -1 between the two channels of a j
/// and 0 on the diagonal.
double angular_factor(int l_bra, int l_ket, HalfInteger j, HalfInteger mj = HalfInteger{1});

/// <n l_bra j| -+(i/2m) sigma.grad V |n l_ket j>, with grad V = alpha rhat / r^2.
/// Throws ChannelMismatch if either label is not a channel of (n, j).
std::complex<double> odd_matrix_element(int n, HalfInteger j, int l_bra, int l_ket,
                                        const CouplingConfig& cfg);

struct ResolventOptions {
  /// Basis power s; negative selects max(l_channel - 1, 0).
  double basis_power = -1.0;
  /// Basis scale; 0 selects m alpha / n.
  double basis_scale = 0.0;
  /// Eigenvalues within this relative distance of E_n are deflated.
  double deflation_tolerance = 1e-9;
  /// Allowed relative change of the output norm when the basis is doubled.
  double tolerance = 1e-8;
  bool check_convergence = true;
};

struct ResolventResult {
  LaguerreBasis basis;
  Eigen::VectorXd coefficients;  // output x in the orthonormal basis
  Eigen::VectorXd source;        // projection of the source onto the basis
  double norm = 0.0;
  int deflated = 0;
  double relative_change = 0.0;  // norm change under basis doubling (0 if unchecked)

  double value(double r) const { return basis.evaluate(coefficients, r); }
};

/// Solves (E_n - H0^{(l)}) x = Q source in a Laguerre basis of size basis_size,
/// with Q removing the E_n eigenstates of channel l. `source` is a radial
/// function f(r) (the basis projection is int phi_k f r^2 dr). Throws
/// SingularSystem when an eigenvalue of the basis Hamiltonian sits next to E_n
/// without being deflatable, NonConverged when the doubling check fails.
ResolventResult reduced_resolvent_apply(int l_channel, int n,
                                        const std::function<double(double)>& source,
                                        const CouplingConfig& cfg, int basis_size,
                                        const ResolventOptions& options = {});

/// Second-order odd-term contribution on channel l of (n, j):
///   sum_x <l|S|x><x|S|l> / (E_n - E_x), bilinear (no conjugation).
struct OddSecondOrder {
  double value = 0.0;
  int intermediate_l = 0;
  double relative_change = 0.0;
};

OddSecondOrder odd_second_order(int n, HalfInteger j, int l, const CouplingConfig& cfg,
                                int basis_size, const ResolventOptions& options = {});

struct EffectiveMatrix {
  int n = 1;
  HalfInteger j;
  std::vector<int> channels;
  Eigen::MatrixXcd entries;       // first- plus second-order shifts
  Eigen::MatrixXcd first_order;   // even words (diagonal) and odd term
  Eigen::MatrixXcd second_order;  // odd term at second order
  Eigen::VectorXd shifts;         // ascending real parts of the eigenvalues
  double max_imaginary = 0.0;
  double unperturbed = 0.0;  // E_n

  /// E_n + shift, one per eigenvalue.
  std::vector<double> bindings() const;
};

/// Quasi-degenerate matrix over the channels of (n, j). Throws
/// ComplexEigenvalues when an eigenvalue has |Im| > 1e-10 m alpha^4.
EffectiveMatrix effective_fine_structure(int n, HalfInteger j, const CouplingConfig& cfg,
                                         int basis_size = 128,
                                         const ResolventOptions& options = {});

/// First-order shift of the kinetic, Darwin and spin-orbit corrections of the
/// textbook Pauli fine-structure Hamiltonian on |n l j>.
double textbook_hamiltonian_shift(const QuantumNumbers& qn, const CouplingConfig& cfg);

/// Bilinear second-order shift of level `target` for H0 = diag(energies)
/// perturbed by w: sum_{k: E_k != E_t} w(t,k) w(k,t) / (E_t - E_k).
std::complex<double> bilinear_second_order(const Eigen::VectorXd& energies,
                                           const Eigen::MatrixXcd& w, int target);

/// Second-order shift of the spin-0 commutator word (V T - T V)/2m on |n l>,
/// l >= 1, via the reduced resolvent. It is of order alpha^6.
double commutator_second_order(const QuantumNumbers& qn, const CouplingConfig& cfg,
                               int basis_size = 64, const ResolventOptions& options = {});

}  // namespace semirel::perturbation
