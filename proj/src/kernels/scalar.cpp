#include <cmath>

#include "superframe/kernels.hpp"

namespace superframe::kernels::scalar {

Complex weighted_conj_dot(const Complex* a, const Complex* b, const double* w, std::size_t n) {
  CompensatedSum re, im;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re.add((ar * br + ai * bi) * w[i]);
    im.add((ai * br - ar * bi) * w[i]);
  }
  return {re.value(), im.value()};
}

double sum_abs2(const Complex* c, std::size_t n) {
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) {
    s.add(c[i].real() * c[i].real());
    s.add(c[i].imag() * c[i].imag());
  }
  return s.value();
}

IdentityDeviation identity_deviation(const Complex* g, std::size_t n) {
  double off2 = 0.0;
  double diag = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = g[i * n + j];
      if (i == j) {
        diag = std::max(diag, std::abs(z - 1.0));
      } else {
        off2 = std::max(off2, z.real() * z.real() + z.imag() * z.imag());
      }
    }
  return {std::sqrt(off2), diag};
}

}  // namespace superframe::kernels::scalar
