#include "mwqi/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "mwqi/errors.hpp"

namespace mwqi {

double log_erfc(double x) {
  if (std::isnan(x)) throw DomainError("log_erfc: NaN argument");
  if (x < 25.0) return std::log(std::erfc(x));
  if (std::isinf(x)) return -INFINITY;

  // erfc(x) = exp(-x^2) / sqrt(pi) / K(x) with the continued fraction
  // K = x + (1/2)/(x + 1/(x + (3/2)/(x + ...))), evaluated bottom-up.
  // For x >= 25 sixty levels are far past convergence.
  double k = x;
  for (int n = 60; n >= 1; --n) k = x + 0.5 * n / k;
  return -x * x - 0.5 * std::log(std::numbers::pi) - std::log(k);
}

}  // namespace mwqi
