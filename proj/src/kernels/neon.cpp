#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "superframe/kernels.hpp"

namespace superframe::kernels::neon {
namespace {

inline void neumaier(float64x2_t& sum, float64x2_t& carry, float64x2_t x) {
  const float64x2_t t = vaddq_f64(sum, x);
  const uint64x2_t sum_bigger = vcgeq_f64(vabsq_f64(sum), vabsq_f64(x));
  const float64x2_t from_sum = vaddq_f64(vsubq_f64(sum, t), x);
  const float64x2_t from_x = vaddq_f64(vsubq_f64(x, t), sum);
  carry = vaddq_f64(carry, vbslq_f64(sum_bigger, from_sum, from_x));
  sum = t;
}

}  // namespace

Complex weighted_conj_dot(const Complex* a, const Complex* b, const double* w, std::size_t n) {
  const double* ap = reinterpret_cast<const double*>(a);
  const double* bp = reinterpret_cast<const double*>(b);
  const double flip_init[2] = {-1.0, 1.0};
  const float64x2_t flip = vld1q_f64(flip_init);
  float64x2_t sum = vdupq_n_f64(0.0);
  float64x2_t carry = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = vld1q_f64(ap + 2 * i);                      // ar ai
    const float64x2_t vb = vld1q_f64(bp + 2 * i);                      // br bi
    const float64x2_t real_parts = vmulq_f64(va, vb);                  // ar*br, ai*bi
    const float64x2_t cross = vmulq_f64(va, vextq_f64(vb, vb, 1));     // ar*bi, ai*br
    const float64x2_t term = vpaddq_f64(real_parts, vmulq_f64(cross, flip));
    neumaier(sum, carry, vmulq_f64(term, vdupq_n_f64(w[i])));
  }
  CompensatedSum re, im;
  re.add(vgetq_lane_f64(sum, 0));
  im.add(vgetq_lane_f64(sum, 1));
  re.add(vgetq_lane_f64(carry, 0));
  im.add(vgetq_lane_f64(carry, 1));
  return {re.value(), im.value()};
}

double sum_abs2(const Complex* c, std::size_t n) {
  const double* cp = reinterpret_cast<const double*>(c);
  float64x2_t sum = vdupq_n_f64(0.0);
  float64x2_t carry = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = vld1q_f64(cp + 2 * i);
    neumaier(sum, carry, vmulq_f64(v, v));
  }
  CompensatedSum total;
  total.add(vgetq_lane_f64(sum, 0));
  total.add(vgetq_lane_f64(sum, 1));
  total.add(vgetq_lane_f64(carry, 0) + vgetq_lane_f64(carry, 1));
  return total.value();
}

IdentityDeviation identity_deviation(const Complex* g, std::size_t n) {
  const double* gp = reinterpret_cast<const double*>(g);
  double off = 0.0;
  double diag = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const float64x2_t v = vld1q_f64(gp + 2 * (i * n + j));
      if (i == j)
        diag = std::max(diag, std::abs(g[i * n + j] - 1.0));
      else
        off = std::max(off, vaddvq_f64(vmulq_f64(v, v)));
    }
  return {std::sqrt(off), diag};
}

}  // namespace superframe::kernels::neon

#endif
