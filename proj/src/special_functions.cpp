#include "semirel/special_functions.hpp"

#include <cmath>

namespace semirel::special {

double laguerre(int k, double a, double x) {
  if (k < 0) return 0.0;
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = 1.0 + a - x;
  for (int i = 2; i <= k; ++i) {
    const double next = ((2.0 * i - 1.0 + a - x) * cur - (i - 1.0 + a) * prev) / i;
    prev = cur;
    cur = next;
  }
  return cur;
}

void normalized_laguerre(double a, double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = std::exp(-0.5 * std::lgamma(a + 1.0));
  if (out.size() == 1) return;
  out[1] = (1.0 + a - x) * out[0] / std::sqrt(1.0 + a);
  for (std::size_t i = 2; i < out.size(); ++i) {
    const double k = static_cast<double>(i);
    out[i] = ((2.0 * k - 1.0 + a - x) * out[i - 1] -
              std::sqrt((k - 1.0) * (k - 1.0 + a)) * out[i - 2]) /
             std::sqrt(k * (k + a));
  }
}

double gegenbauer(int k, double lambda, double y) {
  if (k < 0) return 0.0;
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = 2.0 * lambda * y;
  for (int i = 2; i <= k; ++i) {
    const double next = (2.0 * (i + lambda - 1.0) * y * cur - (i + 2.0 * lambda - 2.0) * prev) / i;
    prev = cur;
    cur = next;
  }
  return cur;
}

double log_factorial(int k) { return std::lgamma(k + 1.0); }

}  // namespace semirel::special
