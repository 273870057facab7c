#pragma once

// Floating-point inner loops shared by the inner product, frame sums and Gram
// statistics. Each kernel has a scalar reference and vectorized variants; the
// widest variant the CPU supports is picked on first use.
//
// SUPERFRAME_SIMD=scalar|avx2|neon forces a variant (falls back to scalar if
// the requested one is unavailable).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "superframe/rational.hpp"

namespace superframe::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view name(Isa isa);

struct IdentityDeviation {
  double max_off_diagonal = 0.0;  // max |G_ij|, i != j
  double max_diagonal = 0.0;      // max |G_ii - 1|
};

struct KernelTable {
  Isa isa;
  /// sum_i a_i * conj(b_i) * w_i, compensated.
  Complex (*weighted_conj_dot)(const Complex* a, const Complex* b, const double* w, std::size_t n);
  /// sum_i |c_i|^2, compensated.
  double (*sum_abs2)(const Complex* c, std::size_t n);
  /// Deviation of a row-major n x n matrix from the identity.
  IdentityDeviation (*identity_deviation)(const Complex* g, std::size_t n);
};

/// Variants compiled into this binary and supported by the running CPU.
std::vector<Isa> available();
const KernelTable& table(Isa isa);
/// The dispatch choice, fixed after the first call.
const KernelTable& active();

inline Complex weighted_conj_dot(std::span<const Complex> a, std::span<const Complex> b, std::span<const double> w) {
  return active().weighted_conj_dot(a.data(), b.data(), w.data(), w.size());
}

inline double sum_abs2(std::span<const Complex> c) { return active().sum_abs2(c.data(), c.size()); }

inline IdentityDeviation identity_deviation(std::span<const Complex> g, std::size_t n) {
  return active().identity_deviation(g.data(), n);
}

namespace scalar {
Complex weighted_conj_dot(const Complex* a, const Complex* b, const double* w, std::size_t n);
double sum_abs2(const Complex* c, std::size_t n);
IdentityDeviation identity_deviation(const Complex* g, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
Complex weighted_conj_dot(const Complex* a, const Complex* b, const double* w, std::size_t n);
double sum_abs2(const Complex* c, std::size_t n);
IdentityDeviation identity_deviation(const Complex* g, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
Complex weighted_conj_dot(const Complex* a, const Complex* b, const double* w, std::size_t n);
double sum_abs2(const Complex* c, std::size_t n);
IdentityDeviation identity_deviation(const Complex* g, std::size_t n);
}  // namespace neon
#endif

/// Neumaier running sum; the scalar tails of every variant use it.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if ((sum < 0 ? -sum : sum) >= (x < 0 ? -x : x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace superframe::kernels
