#pragma once

#include <optional>
#include <string>

namespace semirel {

// Half-integer angular momentum stored as twice its value so that j = l +- 1/2
// comparisons stay exact.
struct HalfInteger {
  int twice = 1;

  static HalfInteger from_double(double value);
  constexpr double value() const { return 0.5 * twice; }
  friend constexpr bool operator==(HalfInteger, HalfInteger) = default;
};

/// Bound-level labels (n, l) with an optional total angular momentum j.
struct QuantumNumbers {
  int n = 1;
  int l = 0;
  std::optional<HalfInteger> j;

  static QuantumNumbers make(int n, int l);
  static QuantumNumbers make(int n, int l, double j);

  /// Throws InvalidArgument unless 0 <= l <= n-1 and |j-l| = 1/2.
  void validate() const;
  double j_value() const;  // throws InvalidArgument when j is absent
  std::string label() const;
};

enum class Branch { particle, antiparticle };

/// Natural units (hbar = c = 1). The branch only selects the sign of the rest
/// energy and of the odd spin-1/2 term; every bound-state formula is evaluated
/// on the particle branch.
struct CouplingConfig {
  double alpha = 1.0 / 137.035999084;
  double mass = 1.0;
  Branch branch = Branch::particle;

  void validate() const;
  double bohr_radius() const { return 1.0 / (mass * alpha); }
  double branch_sign() const { return branch == Branch::particle ? 1.0 : -1.0; }
  CouplingConfig with_alpha(double a) const {
    CouplingConfig c = *this;
    c.alpha = a;
    return c;
  }
};

}  // namespace semirel
