#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "superframe/kernels.hpp"

#define SUPERFRAME_AVX2 __attribute__((target("avx2,fma")))

namespace superframe::kernels::avx2 {
namespace {

struct alignas(32) Lanes {
  double v[4];
};

// Lane-wise Neumaier step: (sum, carry) += x.
SUPERFRAME_AVX2 inline void neumaier(__m256d& sum, __m256d& carry, __m256d x) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d t = _mm256_add_pd(sum, x);
  const __m256d abs_sum = _mm256_andnot_pd(sign, sum);
  const __m256d abs_x = _mm256_andnot_pd(sign, x);
  const __m256d sum_bigger = _mm256_cmp_pd(abs_sum, abs_x, _CMP_GE_OQ);
  const __m256d from_sum = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
  const __m256d from_x = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
  carry = _mm256_add_pd(carry, _mm256_blendv_pd(from_x, from_sum, sum_bigger));
  sum = t;
}

SUPERFRAME_AVX2 inline Lanes store(__m256d v) {
  Lanes l;
  _mm256_store_pd(l.v, v);
  return l;
}

}  // namespace

SUPERFRAME_AVX2 Complex weighted_conj_dot(const Complex* a, const Complex* b, const double* w, std::size_t n) {
  const double* ap = reinterpret_cast<const double*>(a);
  const double* bp = reinterpret_cast<const double*>(b);
  __m256d sum = _mm256_setzero_pd();
  __m256d carry = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(ap + 2 * i);  // ar0 ai0 ar1 ai1
    const __m256d vb = _mm256_loadu_pd(bp + 2 * i);  // br0 bi0 br1 bi1
    const __m256d real_parts = _mm256_mul_pd(va, vb);                        // ar*br, ai*bi
    const __m256d cross = _mm256_mul_pd(_mm256_permute_pd(va, 0b0101), vb);  // ai*br, ar*bi
    const __m256d re = _mm256_hadd_pd(real_parts, real_parts);
    const __m256d im = _mm256_hsub_pd(cross, cross);
    const __m256d term = _mm256_blend_pd(re, im, 0b1010);  // re0 im0 re1 im1
    const __m256d weight = _mm256_set_pd(w[i + 1], w[i + 1], w[i], w[i]);
    neumaier(sum, carry, _mm256_mul_pd(term, weight));
  }
  const Lanes s = store(sum);
  const Lanes c = store(carry);
  CompensatedSum re, im;
  re.add(s.v[0]);
  re.add(s.v[2]);
  im.add(s.v[1]);
  im.add(s.v[3]);
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re.add((ar * br + ai * bi) * w[i]);
    im.add((ai * br - ar * bi) * w[i]);
  }
  re.add(c.v[0] + c.v[2]);
  im.add(c.v[1] + c.v[3]);
  return {re.value(), im.value()};
}

SUPERFRAME_AVX2 double sum_abs2(const Complex* c, std::size_t n) {
  const double* cp = reinterpret_cast<const double*>(c);
  const std::size_t len = 2 * n;
  __m256d sum = _mm256_setzero_pd();
  __m256d carry = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d v = _mm256_loadu_pd(cp + i);
    neumaier(sum, carry, _mm256_mul_pd(v, v));
  }
  const Lanes s = store(sum);
  const Lanes k = store(carry);
  CompensatedSum total;
  for (double x : s.v) total.add(x);
  for (; i < len; ++i) total.add(cp[i] * cp[i]);
  total.add((k.v[0] + k.v[1]) + (k.v[2] + k.v[3]));
  return total.value();
}

SUPERFRAME_AVX2 IdentityDeviation identity_deviation(const Complex* g, std::size_t n) {
  const double* gp = reinterpret_cast<const double*>(g);
  __m256d off = _mm256_setzero_pd();
  double off_scalar = 0.0;
  double diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = gp + 2 * i * n;
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
      if (i == j || i == j + 1) {
        for (std::size_t jj = j; jj < j + 2; ++jj) {
          const Complex z = g[i * n + jj];
          if (jj == i)
            diag = std::max(diag, std::abs(z - 1.0));
          else
            off_scalar = std::max(off_scalar, z.real() * z.real() + z.imag() * z.imag());
        }
        continue;
      }
      const __m256d v = _mm256_loadu_pd(row + 2 * j);
      const __m256d sq = _mm256_mul_pd(v, v);
      off = _mm256_max_pd(off, _mm256_hadd_pd(sq, sq));
    }
    for (; j < n; ++j) {
      const Complex z = g[i * n + j];
      if (j == i)
        diag = std::max(diag, std::abs(z - 1.0));
      else
        off_scalar = std::max(off_scalar, z.real() * z.real() + z.imag() * z.imag());
    }
  }
  const Lanes l = store(off);
  for (double x : l.v) off_scalar = std::max(off_scalar, x);
  return {std::sqrt(off_scalar), diag};
}

}  // namespace superframe::kernels::avx2

#endif
