#include "pho/errors.hpp"
#include "pho/specfun.hpp"

namespace pho::specfun {

double kummer_poly(int n, double b, double x) {
  if (n < 0) throw DomainError("kummer_poly: n must be non-negative");
  if (!(b > 0.0)) throw DomainError("kummer_poly: b must be positive");
  if (n == 0 || x == 0.0) return 1.0;

  // (b + k) M_{k+1} = (2k + b - x) M_k - k M_{k-1},  M_k = 1F1(-k; b; x)
  double previous = 1.0;
  double current = 1.0 - x / b;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + b - x) * current - k * previous) / (b + k);
    previous = current;
    current = next;
  }
  return current;
}

}  // namespace pho::specfun
