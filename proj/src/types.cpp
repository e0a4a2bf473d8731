#include "semirel/types.hpp"

#include <cmath>
#include <sstream>

#include "semirel/error.hpp"

namespace semirel {

HalfInteger HalfInteger::from_double(double value) {
  const double twice = 2.0 * value;
  const long rounded = std::lround(twice);
  if (std::abs(twice - static_cast<double>(rounded)) > 1e-9 || rounded % 2 == 0) {
    std::ostringstream msg;
    msg << "j = " << value << " is not a half-odd integer";
    throw InvalidArgument(msg.str());
  }
  return HalfInteger{static_cast<int>(rounded)};
}

QuantumNumbers QuantumNumbers::make(int n, int l) {
  QuantumNumbers qn{n, l, std::nullopt};
  qn.validate();
  return qn;
}

QuantumNumbers QuantumNumbers::make(int n, int l, double j) {
  QuantumNumbers qn{n, l, HalfInteger::from_double(j)};
  qn.validate();
  return qn;
}

void QuantumNumbers::validate() const {
  if (n < 1) throw InvalidArgument("principal quantum number must be >= 1");
  if (l < 0 || l > n - 1) {
    throw InvalidArgument("orbital quantum number must satisfy 0 <= l <= n-1 (" + label() + ")");
  }
  if (j) {
    if (j->twice < 1) throw InvalidArgument("j must be >= 1/2");
    if (std::abs(j->twice - 2 * l) != 1) {
      throw InvalidArgument("j must equal l +- 1/2 (" + label() + ")");
    }
  }
}

double QuantumNumbers::j_value() const {
  if (!j) throw InvalidArgument("level " + label() + " carries no total angular momentum j");
  return j->value();
}

std::string QuantumNumbers::label() const {
  std::ostringstream out;
  out << "n=" << n << " l=" << l;
  if (j) out << " j=" << j->twice << "/2";
  return out.str();
}

void CouplingConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("fine structure constant must be > 0");
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument("mass must be > 0");
}

}  // namespace semirel
