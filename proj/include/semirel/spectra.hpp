#pragma once

#include <vector>

#include "semirel/types.hpp"

// Closed-form bound-state energies of hydrogen-like systems and their
// fourth-order expansions in the coupling.
namespace semirel::spectra {

enum class Formula { kg_exact, dirac_exact, kg_series, dirac_series, schroedinger };

const char* to_string(Formula f);

/// A bound-state energy. The binding part E' = E - m is computed directly (not
/// as a difference of two numbers close to m), so it keeps full relative
/// precision at small coupling; total() adds the rest mass back.
struct EnergyValue {
  double mass = 1.0;
  double binding = 0.0;
  Formula tag = Formula::schroedinger;

  double total() const { return mass + binding; }
};

/// Rest energy on the selected branch: +m for particles, -m for antiparticles.
double rest_energy(const CouplingConfig& cfg);

/// Free dispersion +-sqrt(m^2 + p^2) on the selected branch.
double free_energy(double momentum, const CouplingConfig& cfg);

EnergyValue schroedinger_energy(const QuantumNumbers& qn, const CouplingConfig& cfg);

/// Klein-Gordon Coulomb levels. Throws SupercriticalCoupling when
/// (l + 1/2)^2 <= alpha^2.
EnergyValue kg_exact_energy(const QuantumNumbers& qn, const CouplingConfig& cfg);

/// Dirac Coulomb levels; depend on (n, j) only. qn must carry j.
EnergyValue dirac_exact_energy(const QuantumNumbers& qn, const CouplingConfig& cfg);

EnergyValue kg_series_energy(const QuantumNumbers& qn, const CouplingConfig& cfg);
EnergyValue dirac_series_energy(const QuantumNumbers& qn, const CouplingConfig& cfg);

enum class ExactFormula { klein_gordon, dirac };

/// Taylor coefficients of the exact total energy in the variable x = alpha^2,
/// estimated by central differences about x = 0 with step alpha^2/8 and one
/// Richardson step. Returns order/2 + 1 coefficients (alpha^0, alpha^2, ...).
/// Throws IllConditioned when two successive Richardson estimates disagree by
/// more than `tolerance` relative to max(|c|, m).
std::vector<double> taylor_coefficients(ExactFormula formula, const QuantumNumbers& qn,
                                        const CouplingConfig& cfg, int order,
                                        double tolerance = 1e-6);

namespace detail {
// Binding energies as analytic functions of x = alpha^2; x may be negative.
double kg_binding_of_x(int n, double kappa, double mass, double x);
}  // namespace detail

}  // namespace semirel::spectra
