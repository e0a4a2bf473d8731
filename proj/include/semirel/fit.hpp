#pragma once

#include <span>

namespace semirel {

/// Least-squares line through (log x, log y).
struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  // 0 for two points
  int points = 0;
};

/// Throws InsufficientPoints for fewer than two points and InvalidArgument for
/// non-positive data.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

}  // namespace semirel
