#pragma once

#include <span>

namespace semirel::special {

/// Generalised Laguerre polynomial L_k^{(a)}(x) by forward recurrence.
double laguerre(int k, double a, double x);

/// Fills out[k] = sqrt(k!/Gamma(k+a+1)) L_k^{(a)}(x) for k < out.size(); the
/// normalised recurrence never forms the factorials, so it stays finite for
/// the sizes used here.
void normalized_laguerre(double a, double x, std::span<double> out);

/// Gegenbauer polynomial C_k^{(lambda)}(y), with C_{-1} = 0.
double gegenbauer(int k, double lambda, double y);

/// log(k!) via lgamma.
double log_factorial(int k);

}  // namespace semirel::special
