#include "semirel/fit.hpp"

#include <gsl/gsl_fit.h>

#include <cmath>
#include <vector>

#include "semirel/error.hpp"

namespace semirel {

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("fit needs equally many x and y values");
  if (x.size() < 2) throw InsufficientPoints("a power-law fit needs at least two points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw InvalidArgument("power-law fit needs positive data");
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  double c0 = 0, c1 = 0, cov00 = 0, cov01 = 0, cov11 = 0, sumsq = 0;
  gsl_fit_linear(lx.data(), 1, ly.data(), 1, lx.size(), &c0, &c1, &cov00, &cov01, &cov11, &sumsq);
  PowerLawFit out;
  out.slope = c1;
  out.intercept = c0;
  out.points = static_cast<int>(lx.size());
  out.slope_stderr = lx.size() > 2 && std::isfinite(cov11) ? std::sqrt(cov11) : 0.0;
  return out;
}

}  // namespace semirel
