#include "superframe/frames.hpp"

#include <algorithm>
#include <cmath>

#include "superframe/kernels.hpp"
#include "superframe/parallel.hpp"

namespace superframe {
namespace {

RatMatrix dilation_linear(const IntMatrix& m, int j) {
  const IntMatrix mj = power(m, static_cast<unsigned>(std::abs(j)));
  return j >= 0 ? inverse_rational(mj) : to_rational(mj);
}

std::size_t wavelet_end(const TruncationSpec& trunc, const WaveletFamily& psi) {
  const std::size_t end = trunc.wavelet_end.value_or(psi.size());
  if (end > psi.size() || trunc.wavelet_begin > end)
    throw Error(ErrorKind::IndexOutOfRange, "wavelet range exceeds the family");
  return end;
}

void require_kind(const SystemKind& kind, const CosetSystem& cs) {
  if ((kind.tag == SystemTag::SuperPrimed || kind.tag == SystemTag::Corollary) && kind.r >= cs.order())
    throw Error(ErrorKind::IndexOutOfRange,
                "coset index r = " + std::to_string(kind.r) + " but p = " + std::to_string(cs.order()));
}

// Element support = support_map (supp psi + t), with t = param_map n + offset
// for the integer index n.
struct SupportMaps {
  RatMatrix support_map;
  RatMatrix param_map;
  RatVector offset;
};

SupportMaps support_maps(const SystemKind& kind, int j, const CosetSystem& cs) {
  const std::size_t d = cs.dim();
  const RatVector zero(d, Rational(0));
  switch (kind.tag) {
    case SystemTag::Base: return {dilation_linear(cs.M(), j), RatMatrix::identity(d), zero};
    case SystemTag::Oversampled:
    case SystemTag::Super: return {dilation_linear(cs.M(), j), cs.P_inverse(), zero};
    case SystemTag::SuperPrimed:
      return {dilation_linear(cs.M_prime(), j) * to_rational(cs.P()), RatMatrix::identity(d),
              cs.theta()[power(cs.sigma(), j)[kind.r]]};
    case SystemTag::Corollary:
      return {dilation_linear(cs.M(), j), RatMatrix::identity(d), cs.theta()[power(cs.sigma(), j)[kind.r]]};
  }
  throw Error(ErrorKind::ShapeMismatch, "unknown system kind");
}

template <typename Fn>
void for_each_point(const IntVector& lo, const IntVector& hi, Fn&& fn) {
  const std::size_t d = lo.size();
  for (std::size_t a = 0; a < d; ++a)
    if (lo[a] > hi[a]) return;
  IntVector k = lo;
  while (true) {
    fn(k);
    std::size_t a = d;
    while (a-- > 0) {
      if (k[a] < hi[a]) {
        ++k[a];
        break;
      }
      k[a] = lo[a];
    }
    if (a == static_cast<std::size_t>(-1)) return;
  }
}

bool in_box(const IntVector& k, long k_max) {
  return std::all_of(k.begin(), k.end(), [&](const Integer& x) { return abs(x) <= k_max; });
}

Complex phase_free_inner(const SystemElement& a, const SystemElement& b) { return element_inner_product(a, b); }

}  // namespace

WaveletFamily::WaveletFamily(std::vector<PiecewiseFunction> psi) : psi_(std::move(psi)) {
  if (psi_.empty()) throw Error(ErrorKind::EmptyTestSet, "wavelet family is empty");
  for (const auto& f : psi_) {
    if (f.dim() != psi_.front().dim()) throw Error(ErrorKind::ShapeMismatch, "wavelets of mixed dimension");
    if (f.is_zero()) throw Error(ErrorKind::InvalidGeometry, "wavelet with zero norm");
  }
}

void TruncationSpec::validate() const {
  if (j_min > j_max) throw Error(ErrorKind::IndexOutOfRange, "j_min > j_max");
  if (k_max && *k_max < 0) throw Error(ErrorKind::IndexOutOfRange, "k_max < 0");
}

std::string SystemKind::name() const {
  switch (tag) {
    case SystemTag::Base: return "base";
    case SystemTag::Oversampled: return "oversampled";
    case SystemTag::Super: return "super";
    case SystemTag::SuperPrimed: return "super-primed(" + std::to_string(r) + ")";
    case SystemTag::Corollary: return "corollary(" + std::to_string(r) + ")";
  }
  return "unknown";
}

SystemElement system_element(const SystemKind& kind, int j, const IntVector& k, std::size_t i, const CosetSystem& cs,
                             const WaveletFamily& psi) {
  require_kind(kind, cs);
  if (i >= psi.size()) throw Error(ErrorKind::IndexOutOfRange, "wavelet index " + std::to_string(i));
  if (k.size() != cs.dim() || static_cast<std::size_t>(psi.dim()) != cs.dim())
    throw Error(ErrorKind::ShapeMismatch, "translation index or wavelet dimension differs from M");
  const PiecewiseFunction& w = psi[i];
  switch (kind.tag) {
    case SystemTag::Base:
      return AffineUnitary::dilation(cs.M(), j).after(AffineUnitary::translation(to_rational(k))).apply(w);
    case SystemTag::Oversampled: {
      const double scale = 1.0 / std::sqrt(static_cast<double>(cs.order()));
      return AffineUnitary::amplitude_only(cs.dim(), scale)
          .after(AffineUnitary::dilation(cs.M(), j))
          .after(AffineUnitary::translation(cs.P_inverse() * to_rational(k)))
          .apply(w);
    }
    case SystemTag::Super:
      return super_dilate(super_translate(embed_S(w, cs), k, Variant::Base, cs), j, Variant::Base, cs);
    case SystemTag::SuperPrimed: {
      const std::size_t l = power(cs.sigma(), j)[kind.r];
      const RatVector shift = to_rational(cs.P()) * add(cs.theta()[l], to_rational(k));
      IntVector full;
      for (const auto& x : shift) full.push_back(x.get_num());
      return super_dilate(super_translate(embed_Sprime(w, cs), full, Variant::Primed, cs), j, Variant::Primed, cs);
    }
    case SystemTag::Corollary: {
      const std::size_t l = power(cs.sigma(), j)[kind.r];
      return AffineUnitary::dilation(cs.M(), j)
          .after(AffineUnitary::translation(add(cs.theta()[l], to_rational(k))))
          .apply(w);
    }
  }
  throw Error(ErrorKind::ShapeMismatch, "unknown system kind");
}

IndexSet box_indices(const SystemKind& kind, const TruncationSpec& trunc, const CosetSystem& cs,
                     const WaveletFamily& psi) {
  trunc.validate();
  require_kind(kind, cs);
  if (!trunc.k_max) throw Error(ErrorKind::IndexOutOfRange, "a k box (k_max) is required to enumerate the system");
  const std::size_t end = wavelet_end(trunc, psi);
  const std::size_t d = cs.dim();
  const IntVector lo(d, Integer(-*trunc.k_max));
  const IntVector hi(d, Integer(*trunc.k_max));
  IndexSet out;
  for (std::size_t i = trunc.wavelet_begin; i < end; ++i)
    for (int j = trunc.j_min; j <= trunc.j_max; ++j)
      for_each_point(lo, hi, [&](const IntVector& k) { out.indices.push_back({i, j, k}); });
  return out;
}

IndexSet window_indices(const SystemKind& kind, const TruncationSpec& trunc, const Box& support, const CosetSystem& cs,
                        const WaveletFamily& psi) {
  trunc.validate();
  require_kind(kind, cs);
  const std::size_t end = wavelet_end(trunc, psi);
  const std::size_t d = cs.dim();
  const RatVector zero(d, Rational(0));
  IndexSet out;
  for (std::size_t i = trunc.wavelet_begin; i < end; ++i) {
    const auto psi_box = psi[i].support_box();
    if (!psi_box) continue;
    for (int j = trunc.j_min; j <= trunc.j_max; ++j) {
      const SupportMaps maps = support_maps(kind, j, cs);
      // supp(e) meets the support iff t lies in A^-1 support - supp psi.
      const Box pulled = affine_image(support, inverse(maps.support_map), zero);
      Box t_box{subtract(pulled.lo, psi_box->hi), subtract(pulled.hi, psi_box->lo)};
      t_box.lo = subtract(t_box.lo, maps.offset);
      t_box.hi = subtract(t_box.hi, maps.offset);
      const Box n_box = affine_image(t_box, inverse(maps.param_map), zero);
      IntVector lo(d), hi(d);
      for (std::size_t a = 0; a < d; ++a) {
        lo[a] = ceil(n_box.lo[a]);
        hi[a] = floor(n_box.hi[a]);
      }
      for_each_point(lo, hi, [&](const IntVector& k) {
        if (trunc.k_max && !in_box(k, *trunc.k_max)) {
          out.clipped = true;
          out.outside.push_back({i, j, k});
        } else {
          out.indices.push_back({i, j, k});
        }
      });
    }
  }
  return out;
}

Complex element_inner_product(const SystemElement& a, const SystemElement& b) {
  if (a.index() != b.index()) throw Error(ErrorKind::ShapeMismatch, "inner product across L^2 and H");
  if (const auto* fa = std::get_if<PiecewiseFunction>(&a)) return inner_product(*fa, std::get<PiecewiseFunction>(b));
  return super_inner_product(std::get<SuperVector>(a), std::get<SuperVector>(b));
}

double element_norm_squared(const SystemElement& x) {
  if (const auto* f = std::get_if<PiecewiseFunction>(&x)) return f->norm_squared();
  const double n = super_norm(std::get<SuperVector>(x));
  return n * n;
}

FrameSum frame_sum(const SystemElement& x, const SystemKind& kind, const TruncationSpec& trunc, const CosetSystem& cs,
                   const WaveletFamily& psi) {
  if (std::holds_alternative<SuperVector>(x) != kind.lives_in_super_space())
    throw Error(ErrorKind::ShapeMismatch, "test vector does not live in the space of the " + kind.name() + " system");
  FrameSum out;
  out.norm_squared = element_norm_squared(x);
  const std::optional<Box> support = std::holds_alternative<PiecewiseFunction>(x)
                                         ? std::get<PiecewiseFunction>(x).support_box()
                                         : std::get<SuperVector>(x).support_box();
  if (!support) return out;
  const IndexSet set = window_indices(kind, trunc, *support, cs, psi);
  std::vector<Complex> coeffs(set.indices.size());
  parallel_for(set.indices.size(), [&](std::size_t n) {
    const ElementIndex& idx = set.indices[n];
    coeffs[n] = phase_free_inner(x, system_element(kind, idx.j, idx.k, idx.i, cs, psi));
  });
  out.value = kernels::sum_abs2(coeffs);
  out.terms = coeffs.size();
  if (!set.outside.empty()) {
    std::vector<Complex> lost(set.outside.size());
    parallel_for(set.outside.size(), [&](std::size_t n) {
      const ElementIndex& idx = set.outside[n];
      lost[n] = phase_free_inner(x, system_element(kind, idx.j, idx.k, idx.i, cs, psi));
    });
    out.clipped_mass = kernels::sum_abs2(lost);
    out.clipped = out.clipped_mass > kClippedMassTolerance;
  }
  return out;
}

GramResult gram_matrix(const SystemKind& kind, const TruncationSpec& trunc, const CosetSystem& cs,
                       const WaveletFamily& psi, std::size_t limit) {
  GramResult out;
  out.indices = box_indices(kind, trunc, cs, psi).indices;
  const std::size_t n = out.indices.size();
  if (n > limit)
    throw Error(ErrorKind::SystemTooLarge,
                std::to_string(n) + " elements exceed the Gram limit of " + std::to_string(limit));
  std::vector<std::optional<SystemElement>> elements(n);
  parallel_for(n, [&](std::size_t a) {
    const ElementIndex& idx = out.indices[a];
    elements[a] = system_element(kind, idx.j, idx.k, idx.i, cs, psi);
  });
  out.G = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  parallel_for(n, [&](std::size_t a) {
    for (std::size_t b = a; b < n; ++b)
      out.G(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = element_inner_product(*elements[a], *elements[b]);
  });
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < a; ++b)
      out.G(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          std::conj(out.G(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)));
  if (n > 0) {
    const auto dev = kernels::identity_deviation(std::span<const Complex>(out.G.data(), n * n), n);
    out.max_off_diagonal = dev.max_off_diagonal;
    out.max_diagonal_deviation = dev.max_diagonal;
    if (n <= kEigenvalueLimit) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(out.G, Eigen::EigenvaluesOnly);
      out.min_eigenvalue = solver.eigenvalues().minCoeff();
      out.max_eigenvalue = solver.eigenvalues().maxCoeff();
    }
  }
  return out;
}

BoundsEstimate frame_bounds_estimate(const SystemKind& kind, const TruncationSpec& trunc, const CosetSystem& cs,
                                     const WaveletFamily& psi, const std::vector<SystemElement>& test_set) {
  if (test_set.empty()) throw Error(ErrorKind::EmptyTestSet, "frame bound estimation needs test vectors");
  BoundsEstimate out;
  for (const auto& x : test_set) {
    const FrameSum s = frame_sum(x, kind, trunc, cs, psi);
    if (s.norm_squared == 0.0) throw Error(ErrorKind::EmptyTestSet, "test vector with zero norm");
    out.ratios.push_back(s.value / s.norm_squared);
    out.clipped = out.clipped || s.clipped;
  }
  out.lower = *std::min_element(out.ratios.begin(), out.ratios.end());
  out.upper = *std::max_element(out.ratios.begin(), out.ratios.end());
  return out;
}

Lemma3Report verify_lemma3(const CosetSystem& cs, const PiecewiseFunction& f, const PiecewiseFunction& g, int j_min,
                           int j_max, long k_max) {
  require_supported_dimension(cs.dim());
  if (j_min > j_max || k_max < 0) throw Error(ErrorKind::IndexOutOfRange, "empty sweep grid");
  const std::size_t p = cs.order();
  const std::size_t d = cs.dim();
  const SuperVector sf = embed_Sprime(f, cs);
  const SuperVector sg = embed_Sprime(g, cs);
  std::vector<SuperVector> g_super;
  std::vector<PiecewiseFunction> g_base;
  for (std::size_t r = 0; r < p; ++r) {
    g_super.push_back(super_translate(sg, cs.p_theta(r), Variant::Primed, cs));
    g_base.push_back(translate(g, cs.theta()[r]));
  }

  std::vector<std::pair<int, IntVector>> grid;
  for (int j = j_min; j <= j_max; ++j)
    for_each_point(IntVector(d, Integer(-k_max)), IntVector(d, Integer(k_max)),
                   [&](const IntVector& k) { grid.emplace_back(j, k); });

  std::vector<std::vector<Lemma3Cell>> results(grid.size());
  parallel_for(grid.size(), [&](std::size_t n) {
    const auto& [j, k] = grid[n];
    const SuperVector lhs_vec =
        super_dilate(super_translate(sf, k, Variant::Primed, cs), j, Variant::Primed, cs);
    const PiecewiseFunction rhs_f = AffineUnitary::dilation(cs.M(), j)
                                        .after(AffineUnitary::translation(cs.P_inverse() * to_rational(k)))
                                        .apply(f);
    const std::size_t l = cs.residue_index(k).index;
    const Permutation sigma_j = power(cs.sigma(), j);
    for (std::size_t r = 0; r < p; ++r) {
      Lemma3Cell cell{j, k, r, l, l == sigma_j[r], super_inner_product(lhs_vec, g_super[r]), Complex(0.0)};
      if (cell.delta) cell.rhs = inner_product(rhs_f, g_base[r]);
      results[n].push_back(std::move(cell));
    }
  });

  Lemma3Report report;
  bool first = true;
  for (const auto& row : results)
    for (const auto& cell : row) {
      ++report.cells;
      const double residual = std::abs(cell.lhs - cell.rhs);
      if (cell.delta) {
        ++report.delta_cells;
      } else {
        report.max_zero_branch = std::max(report.max_zero_branch, std::abs(cell.lhs));
      }
      if (first || residual > report.max_residual) {
        report.max_residual = residual;
        report.worst = cell;
        first = false;
      }
    }
  return report;
}

EqegReport verify_eqeg(const CosetSystem& cs, const WaveletFamily& psi, std::size_t r, const PiecewiseFunction& f,
                       const TruncationSpec& trunc) {
  require_supported_dimension(cs.dim());
  const SystemKind super_kind = SystemKind::super_primed(r);
  const SystemKind base_kind = SystemKind::corollary(r);
  require_kind(base_kind, cs);
  EqegReport report;
  report.r = r;
  const SuperVector x_super = super_translate(embed_Sprime(f, cs), cs.p_theta(r), Variant::Primed, cs);
  const PiecewiseFunction x_base = translate(f, cs.theta()[r]);
  const auto support = x_base.support_box();
  if (!support) return report;

  // One matched index set for both sides.
  const IndexSet set = window_indices(base_kind, trunc, *support, cs, psi);
  const std::size_t n = set.indices.size();
  std::vector<Complex> left(n), right(n);
  parallel_for(n, [&](std::size_t a) {
    const ElementIndex& idx = set.indices[a];
    left[a] = element_inner_product(system_element(super_kind, idx.j, idx.k, idx.i, cs, psi), SystemElement(x_super));
    right[a] = element_inner_product(system_element(base_kind, idx.j, idx.k, idx.i, cs, psi), SystemElement(x_base));
  });
  for (std::size_t a = 0; a < n; ++a) {
    report.max_coefficient_residual = std::max(report.max_coefficient_residual, std::abs(left[a] - right[a]));
    report.max_termwise_residual = std::max(report.max_termwise_residual, std::abs(std::norm(left[a]) - std::norm(right[a])));
  }
  report.terms = n;
  report.super_sum = kernels::sum_abs2(left);
  report.base_sum = kernels::sum_abs2(right);
  report.aggregate_residual = std::abs(report.super_sum - report.base_sum);
  report.clipped = set.clipped;
  return report;
}

PiecewiseFunction project_first(const SuperVector& g) { return g[0]; }

ProjectionReport verify_projection(const CosetSystem& cs, const WaveletFamily& psi, const TruncationSpec& trunc) {
  const IndexSet set = box_indices(SystemKind::super(), trunc, cs, psi);
  const std::size_t n = set.indices.size();
  std::vector<char> geometry_ok(n, 0);
  std::vector<double> residual(n, 0.0);
  parallel_for(n, [&](std::size_t a) {
    const ElementIndex& idx = set.indices[a];
    const auto super_elem = system_element(SystemKind::super(), idx.j, idx.k, idx.i, cs, psi);
    const auto over_elem = system_element(SystemKind::oversampled(), idx.j, idx.k, idx.i, cs, psi);
    const PiecewiseFunction first = project_first(std::get<SuperVector>(super_elem));
    const PiecewiseFunction& over = std::get<PiecewiseFunction>(over_elem);
    geometry_ok[a] = same_geometry(first, over) ? 1 : 0;
    residual[a] = max_abs_difference(first, over);
  });
  ProjectionReport report;
  report.elements = n;
  for (std::size_t a = 0; a < n; ++a) {
    if (!geometry_ok[a]) ++report.geometry_mismatches;
    if (!report.worst || residual[a] > report.max_value_residual) {
      report.max_value_residual = residual[a];
      report.worst = set.indices[a];
    }
  }
  return report;
}

double power_consistency_residual(const SuperVector& g, int j_min, int j_max, Variant variant, const CosetSystem& cs) {
  double worst = 0.0;
  for (int j = j_min; j <= j_max; ++j) {
    const SuperVector closed = super_dilate(g, j, variant, cs);
    SuperVector iterated = g;
    for (int s = 0; s < std::abs(j); ++s) iterated = super_dilate(iterated, j > 0 ? 1 : -1, variant, cs);
    worst = std::max(worst, super_max_abs_difference(closed, iterated));
  }
  return worst;
}

}  // namespace superframe
