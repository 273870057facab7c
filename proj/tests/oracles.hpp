#pragma once

// Test-side oracles that share no code paths with the library's algorithms.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "superframe/matrix.hpp"

namespace oracle {

using superframe::Integer;
using superframe::IntMatrix;
using superframe::Rational;
using superframe::RatVector;

inline Rational q(long num, long den) {
  Rational out(num, den);
  out.canonicalize();
  return out;
}

/// Points of B Z^d (B given by integer numerators over den) inside the window
/// |x_i| <= bound, found by enumerating coefficients up to `reach`.
inline std::set<RatVector> lattice_window(const std::vector<std::vector<long>>& num, long den, long reach,
                                          const Rational& bound) {
  const std::size_t d = num.size();
  std::set<RatVector> out;
  std::vector<long> c(d, -reach);
  while (true) {
    RatVector x(d, Rational(0));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t s = 0; s < d; ++s) x[r] += q(num[r][s] * c[s], den);
    bool inside = true;
    for (const auto& v : x) inside = inside && abs(v) <= bound;
    if (inside) out.insert(x);
    std::size_t a = d;
    while (a-- > 0) {
      if (c[a] < reach) {
        ++c[a];
        break;
      }
      c[a] = -reach;
    }
    if (a == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

/// Lattice window of A^-1 Z^d for an integer matrix, via the adjugate.
inline std::set<RatVector> inverse_lattice_window(const std::vector<std::vector<long>>& a, long reach,
                                                  const Rational& bound) {
  const std::size_t d = a.size();
  std::vector<std::vector<long>> adj(d, std::vector<long>(d));
  long det = 0;
  if (d == 1) {
    det = a[0][0];
    adj[0][0] = 1;
  } else {
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    adj = {{a[1][1], -a[0][1]}, {-a[1][0], a[0][0]}};
  }
  return lattice_window(adj, det, reach, bound);
}

/// Every point of the window intersection is integral.
inline bool intersection_is_integral(const std::set<RatVector>& a, const std::set<RatVector>& b) {
  for (const auto& x : a) {
    if (!b.count(x)) continue;
    for (const auto& v : x)
      if (v.get_den() != 1) return false;
  }
  return true;
}

inline bool is_integral_matrix(const std::vector<std::vector<Rational>>& m) {
  for (const auto& row : m)
    for (const auto& v : row)
      if (v.get_den() != 1) return false;
  return true;
}

/// P M P^-1 by the adjugate formula, d <= 2.
inline std::vector<std::vector<Rational>> conjugate(const std::vector<std::vector<long>>& m,
                                                    const std::vector<std::vector<long>>& p) {
  const std::size_t d = m.size();
  std::vector<std::vector<Rational>> pinv(d, std::vector<Rational>(d));
  if (d == 1) {
    pinv[0][0] = q(1, p[0][0]);
  } else {
    const long det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
    pinv = {{q(p[1][1], det), q(-p[0][1], det)}, {q(-p[1][0], det), q(p[0][0], det)}};
  }
  std::vector<std::vector<Rational>> out(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) out[i][j] += Rational(p[i][a] * m[a][b]) * pinv[b][j];
  return out;
}

/// Admissibility decided from lattice windows only.
inline bool admissible(const std::vector<std::vector<long>>& m, const std::vector<std::vector<long>>& p) {
  const Rational bound(3);
  const auto a = inverse_lattice_window(m, 40, bound);
  const auto b = inverse_lattice_window(p, 40, bound);
  return is_integral_matrix(conjugate(m, p)) && intersection_is_integral(a, b);
}

inline double haar_value(double x) {
  if (x >= 0.0 && x < 0.5) return 1.0;
  if (x >= 0.5 && x < 1.0) return -1.0;
  return 0.0;
}

/// <chi_[0,1), D^j T_k haar> for M = 2 by midpoint integration on a dyadic
/// grid of step 2^-(level+1); exact whenever j <= level.
inline double haar_indicator_coefficient(int j, long k, int level) {
  const double step = std::ldexp(1.0, -(level + 1));
  const double scale = std::ldexp(1.0, j);
  // Support of D^j T_k haar is [k 2^-j, (k+1) 2^-j).
  const double lo = std::max(0.0, k / scale);
  const double hi = std::min(1.0, (k + 1) / scale);
  if (!(lo < hi)) return 0.0;
  double acc = 0.0;
  for (double x = lo + step / 2; x < hi; x += step) acc += haar_value(scale * x - k);
  return std::sqrt(scale) * acc * step;
}

/// sum over j in [-J, J] and all k of the squared coefficients above.
inline double haar_indicator_frame_sum(int J) {
  double total = 0.0;
  for (int j = -J; j <= J; ++j) {
    const double scale = std::ldexp(1.0, j);
    const long k_lo = static_cast<long>(std::floor(-1.0)) - 1;
    const long k_hi = static_cast<long>(std::ceil(scale)) + 1;
    for (long k = k_lo; k <= k_hi; ++k) {
      const double c = haar_indicator_coefficient(j, k, J);
      total += c * c;
    }
  }
  return total;
}

}  // namespace oracle
