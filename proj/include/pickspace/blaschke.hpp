#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "pickspace/errors.hpp"
#include "pickspace/tolerances.hpp"

namespace pickspace {

using Complex = std::complex<double>;

// Simple zeros of a finite Blaschke product, strictly inside the disk.
struct BlaschkeData {
  std::vector<Complex> zeros;

  explicit BlaschkeData(std::vector<Complex> zs) : zeros(std::move(zs)) {
    if (zeros.empty()) throw ValidationError("Blaschke product needs a zero");
    for (Complex z : zeros)
      if (std::abs(z) >= 1.0 - kBoundaryTol)
        throw BoundaryPointError("Blaschke zero is not inside the disk");
    for (std::size_t i = 0; i < zeros.size(); ++i)
      for (std::size_t j = i + 1; j < zeros.size(); ++j)
        if (zeros[i] == zeros[j])
          throw DuplicatePointsError("Blaschke zeros must be simple");
  }

  std::size_t size() const { return zeros.size(); }
};

// One factor: B_x(z) = (|x|/x) (x - z) / (1 - conj(x) z), and B_0(z) = z.
inline Complex blaschke_factor(Complex x, Complex z) {
  if (x == Complex(0.0, 0.0)) return z;
  return (std::abs(x) / x) * (x - z) / (1.0 - std::conj(x) * z);
}

// Derivative of a factor at its own zero.
inline Complex blaschke_factor_derivative_at_zero(Complex x) {
  if (x == Complex(0.0, 0.0)) return Complex(1.0, 0.0);
  return -(std::abs(x) / x) / (1.0 - std::norm(x));
}

// Product of all factors; unimodular on the circle.
inline Complex blaschke_eval(const BlaschkeData& b, Complex z) {
  if (std::abs(z) > 1.0 + kBoundaryTol)
    throw ValidationError("blaschke_eval: |z| must be <= 1");
  Complex prod(1.0, 0.0);
  for (Complex x : b.zeros) prod *= blaschke_factor(x, z);
  return prod;
}

// B'(x_i) via the factored form: only the factor vanishing at x_i is
// differentiated.  Nonzero because the zeros are simple.
inline Complex blaschke_derivative_at_zero_i(const BlaschkeData& b,
                                             std::size_t i) {
  if (i >= b.size())
    throw ValidationError("blaschke_derivative_at_zero_i: index out of range");
  Complex d = blaschke_factor_derivative_at_zero(b.zeros[i]);
  for (std::size_t s = 0; s < b.size(); ++s)
    if (s != i) d *= blaschke_factor(b.zeros[s], b.zeros[i]);
  return d;
}

inline BlaschkeData conjugate_zeros(const BlaschkeData& b) {
  std::vector<Complex> zs;
  zs.reserve(b.size());
  for (Complex z : b.zeros) zs.push_back(std::conj(z));
  return BlaschkeData(std::move(zs));
}

}  // namespace pickspace
