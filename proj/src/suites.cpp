#include "superframe/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "superframe/parallel.hpp"

namespace superframe {
namespace {

struct Context {
  const SuiteConfig& config;
  const CosetSystem& cs;
  WaveletFamily psi;
  SuiteResult result;

  double tol(double pinned) const { return config.tolerance.value_or(pinned); }
  std::size_t samples(std::size_t fallback) const { return config.samples.value_or(fallback); }
  int dim() const { return static_cast<int>(cs.dim()); }

  void check(const std::string& name, double residual, double pinned) {
    result.checks.push_back({name, residual, tol(pinned)});
  }
};

struct MaxTracker {
  double value = 0.0;
  void add(double x) { value = std::max(value, x); }
};

double norm_gap(double a, double b) { return std::abs(a - b); }

IntVector box_point(std::size_t index, std::size_t d, long radius) {
  const long side = 2 * radius + 1;
  IntVector k(d);
  for (std::size_t a = d; a-- > 0;) {
    k[a] = static_cast<long>(index % static_cast<std::size_t>(side)) - radius;
    index /= static_cast<std::size_t>(side);
  }
  return k;
}

RatVector sample_shift(std::size_t s, std::size_t d) {
  RatVector u(d);
  for (std::size_t a = 0; a < d; ++a) u[a] = make_rational(static_cast<long>((s + 3 * a) % 7) - 3, 3);
  return u;
}

// Per-sample residuals land in fixed slots, then reduce in order.
using Residuals = std::map<std::string, double>;

void merge(Residuals& into, const Residuals& from) {
  for (const auto& [k, v] : from) into[k] = std::max(into[k], v);
}

void run_operators(Context& ctx) {
  const CosetSystem& cs = ctx.cs;
  const std::size_t d = cs.dim();
  const std::size_t n = ctx.samples(50);
  const RatMatrix m_rat = to_rational(cs.M());
  std::vector<Residuals> per(n);
  parallel_for(n, [&](std::size_t s) {
    Residuals& res = per[s];
    const PiecewiseFunction f = sample_function(ctx.dim(), ctx.config.seed, s);
    const SuperVector g = sample_super_vector(cs, ctx.config.seed, s);
    const double nf = f.norm();
    const IntVector k = box_point(s, d, 3);
    const int j = static_cast<int>(s % 5) - 2;
    const RatVector u = sample_shift(s, d);

    res["isometry_S"] = norm_gap(super_norm(embed_S(f, cs)), nf);
    res["isometry_Sprime"] = norm_gap(super_norm(embed_Sprime(f, cs)), nf);
    double iso_d = 0.0;
    for (int jj = -2; jj <= 2; ++jj) iso_d = std::max(iso_d, norm_gap(dilate(f, cs.M(), jj).norm(), nf));
    res["isometry_D"] = iso_d;
    res["isometry_T"] = norm_gap(translate(f, u).norm(), nf);
    res["isometry_UP"] = norm_gap(scale_P(f, cs.P()).norm(), nf);
    res["isometry_super_T"] = std::max(norm_gap(super_norm(super_translate(g, k, Variant::Base, cs)), super_norm(g)),
                                       norm_gap(super_norm(super_translate(g, k, Variant::Primed, cs)), super_norm(g)));
    res["isometry_super_D"] = std::max(norm_gap(super_norm(super_dilate(g, j, Variant::Base, cs)), super_norm(g)),
                                       norm_gap(super_norm(super_dilate(g, j, Variant::Primed, cs)), super_norm(g)));

    // D T_{M u} = T_u D
    res["scalar_commutation"] =
        max_abs_difference(dilate(translate(f, m_rat * u), cs.M(), 1), translate(dilate(f, cs.M(), 1), u));

    const IntVector mk = cs.M_prime() * k;
    res["super_commutation"] = super_max_abs_difference(super_dilate(super_translate(g, mk, Variant::Base, cs), 1, Variant::Base, cs),
                                                        super_translate(super_dilate(g, 1, Variant::Base, cs), k, Variant::Base, cs));
    res["primed_commutation"] =
        super_max_abs_difference(super_dilate(super_translate(g, mk, Variant::Primed, cs), 1, Variant::Primed, cs),
                                 super_translate(super_dilate(g, 1, Variant::Primed, cs), k, Variant::Primed, cs));

    // U_P D' = D U_P and U_P T_k = T_{P^-1 k} U_P, scalar and bold.
    res["intertwine_D"] = max_abs_difference(scale_P(dilate(f, cs.M_prime(), 1), cs.P()), dilate(scale_P(f, cs.P()), cs.M(), 1));
    res["intertwine_T"] = max_abs_difference(scale_P(translate(f, to_rational(k)), cs.P()),
                                             translate(scale_P(f, cs.P()), cs.P_inverse() * to_rational(k)));
    res["intertwine_super_D"] = super_max_abs_difference(super_UP(super_dilate(g, 1, Variant::Primed, cs), cs),
                                                         super_dilate(super_UP(g, cs), 1, Variant::Base, cs));
    res["intertwine_super_T"] = super_max_abs_difference(super_UP(super_translate(g, k, Variant::Primed, cs), cs),
                                                         super_translate(super_UP(g, cs), k, Variant::Base, cs));
    res["UP_Sprime_is_S"] = super_max_abs_difference(super_UP(embed_Sprime(f, cs), cs), embed_S(f, cs));

    const SuperVector chain_left = super_UP(
        super_dilate(super_translate(embed_Sprime(f, cs), k, Variant::Primed, cs), j, Variant::Primed, cs), cs);
    const SuperVector chain_right =
        super_dilate(super_translate(embed_S(f, cs), k, Variant::Base, cs), j, Variant::Base, cs);
    res["conjugacy_chain"] = super_max_abs_difference(chain_left, chain_right);

    res["power_consistency"] = std::max(power_consistency_residual(g, -4, 4, Variant::Base, cs),
                                        power_consistency_residual(g, -4, 4, Variant::Primed, cs));
  });
  Residuals total;
  for (const auto& r : per) merge(total, r);
  for (const auto& [name, value] : total) ctx.check(name, value, kDefaultTolerance);
  ctx.result.details["samples"] = n;
}

void run_lemma2(Context& ctx) {
  const CosetSystem& cs = ctx.cs;
  const std::size_t p = cs.order();
  const std::size_t n = ctx.samples(20);
  std::vector<Residuals> per(n);
  std::vector<std::size_t> exact(n, 0), total(n, 0);
  parallel_for(n, [&](std::size_t s) {
    Residuals& res = per[s];
    const SuperVector g = sample_super_vector(cs, ctx.config.seed, s);
    res["round_trip"] = super_max_abs_difference(reassemble(decompose(g, cs), cs), g);

    const PiecewiseFunction f = sample_function(ctx.dim(), ctx.config.seed, s);
    const SuperVector sf = embed_Sprime(f, cs);
    auto leak = [&](const std::vector<PiecewiseFunction>& parts, std::size_t target) {
      double worst = 0.0;
      bool clean = true;
      for (std::size_t q = 0; q < p; ++q) {
        if (q == target) continue;
        worst = std::max(worst, parts[q].norm());
        clean = clean && parts[q].is_zero();
      }
      ++total[s];
      if (clean && !parts[target].is_zero()) ++exact[s];
      return worst;
    };
    for (std::size_t r = 0; r < p; ++r) {
      const SuperVector shifted = super_translate(sf, cs.p_theta(r), Variant::Primed, cs);
      const auto parts = decompose(shifted, cs);
      res["translate_leak"] = std::max(res["translate_leak"], leak(parts, r));
      res["translate_recovery"] = std::max(res["translate_recovery"], max_abs_difference(parts[r], f));
      for (int J = -3; J <= 3; ++J) {
        const std::size_t target = power(cs.sigma(), -J)[r];
        const auto dparts = decompose(super_dilate(shifted, J, Variant::Primed, cs), cs);
        res["dilate_leak"] = std::max(res["dilate_leak"], leak(dparts, target));
        res["dilate_norm"] = std::max(res["dilate_norm"], norm_gap(dparts[target].norm(), f.norm()));
      }
    }
  });
  Residuals merged;
  for (const auto& r : per) merge(merged, r);
  for (const auto& [name, value] : merged) ctx.check(name, value, kDefaultTolerance);
  std::size_t exact_sum = 0, total_sum = 0;
  for (std::size_t s = 0; s < n; ++s) {
    exact_sum += exact[s];
    total_sum += total[s];
  }
  ctx.result.details["samples"] = n;
  ctx.result.details["decompositions"] = total_sum;
  ctx.result.details["exactly_single_index"] = exact_sum;
}

PiecewiseFunction default_f(const Context& ctx) {
  if (ctx.config.f) return *ctx.config.f;
  return ctx.dim() == 1 ? haar() : haar2d(1);
}

PiecewiseFunction default_g(const Context& ctx) {
  if (ctx.config.g) return *ctx.config.g;
  if (ctx.dim() == 1) return indicator_interval(0, 1);
  return indicator_polygon({{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(1), Rational(1)},
                            {Rational(0), Rational(1)}});
}

void run_lemma3(Context& ctx) {
  const auto report = verify_lemma3(ctx.cs, default_f(ctx), default_g(ctx), ctx.config.j_min, ctx.config.j_max,
                                    ctx.config.k_max);
  ctx.check("max_residual", report.max_residual, kDefaultTolerance);
  ctx.check("max_zero_branch", report.max_zero_branch, kDefaultTolerance);
  ctx.result.details["cells"] = report.cells;
  ctx.result.details["delta_cells"] = report.delta_cells;
  ctx.result.details["worst_cell"] = to_json(report.worst);
}

TruncationSpec suite_truncation(const Context& ctx) {
  return TruncationSpec{ctx.config.j_min, ctx.config.j_max, ctx.config.k_max, 0, std::nullopt};
}

std::vector<std::size_t> selected_cosets(const Context& ctx) {
  if (ctx.config.r) {
    if (*ctx.config.r >= ctx.cs.order())
      throw Error(ErrorKind::IndexOutOfRange, "coset index r = " + std::to_string(*ctx.config.r) + " but p = " +
                                                  std::to_string(ctx.cs.order()));
    return {*ctx.config.r};
  }
  std::vector<std::size_t> all(ctx.cs.order());
  for (std::size_t r = 0; r < all.size(); ++r) all[r] = r;
  return all;
}

std::vector<PiecewiseFunction> eqeg_functions(const Context& ctx) {
  if (ctx.config.f) return {*ctx.config.f};
  std::vector<PiecewiseFunction> fs;
  for (std::size_t s = 0; s < ctx.samples(5); ++s) fs.push_back(sample_function(ctx.dim(), ctx.config.seed, s));
  return fs;
}

// Shared by the eqeg and corollary suites.
void eqeg_checks(Context& ctx, const std::string& prefix) {
  const auto fs = eqeg_functions(ctx);
  const TruncationSpec trunc = suite_truncation(ctx);
  MaxTracker coef, term, aggregate;
  std::size_t terms = 0;
  bool clipped = false;
  Json per = Json::array();
  for (const std::size_t r : selected_cosets(ctx)) {
    for (std::size_t s = 0; s < fs.size(); ++s) {
      const auto report = verify_eqeg(ctx.cs, ctx.psi, r, fs[s], trunc);
      coef.add(report.max_coefficient_residual);
      term.add(report.max_termwise_residual);
      aggregate.add(report.aggregate_residual);
      terms += report.terms;
      clipped = clipped || report.clipped;
      per.push_back(Json{{"r", r}, {"function", s}, {"terms", report.terms}, {"super_sum", report.super_sum},
                         {"base_sum", report.base_sum}});
    }
  }
  ctx.check(prefix + "coefficient_residual", coef.value, kDefaultTolerance);
  ctx.check(prefix + "termwise_residual", term.value, kDefaultTolerance);
  ctx.check(prefix + "aggregate_residual", aggregate.value, kAggregateTolerance);
  ctx.result.details[prefix + "terms"] = terms;
  ctx.result.details[prefix + "clipped"] = clipped;
  ctx.result.details[prefix + "sums"] = per;
}

void run_eqeg(Context& ctx) { eqeg_checks(ctx, ""); }

void run_projection(Context& ctx) {
  const auto report = verify_projection(ctx.cs, ctx.psi, suite_truncation(ctx));
  ctx.check("geometry_mismatches", static_cast<double>(report.geometry_mismatches), 0.0);
  ctx.check("value_residual", report.max_value_residual, kProjectionTolerance);
  ctx.result.details["elements"] = report.elements;
  ctx.result.details["worst_element"] = report.worst ? to_json(*report.worst) : Json(nullptr);
}

Json gram_details(const GramResult& gram) {
  Json out{{"size", gram.indices.size()},
           {"max_off_diagonal", gram.max_off_diagonal},
           {"max_diagonal_deviation", gram.max_diagonal_deviation}};
  out["min_eigenvalue"] = gram.min_eigenvalue ? Json(*gram.min_eigenvalue) : Json(nullptr);
  out["max_eigenvalue"] = gram.max_eigenvalue ? Json(*gram.max_eigenvalue) : Json(nullptr);
  return out;
}

void run_theorem1(Context& ctx) {
  const CosetSystem& cs = ctx.cs;
  const TruncationSpec trunc = suite_truncation(ctx);
  const GramResult base = gram_matrix(SystemKind::base(), trunc, cs, ctx.psi);
  const GramResult super = gram_matrix(SystemKind::super(), trunc, cs, ctx.psi);
  ctx.check("base_gram_off_diagonal", base.max_off_diagonal, kDefaultTolerance);
  ctx.check("base_gram_diagonal", base.max_diagonal_deviation, kDefaultTolerance);
  ctx.check("super_gram_off_diagonal", super.max_off_diagonal, kDefaultTolerance);
  ctx.check("super_gram_diagonal", super.max_diagonal_deviation, kDefaultTolerance);
  ctx.result.details["base_gram"] = gram_details(base);
  ctx.result.details["super_gram"] = gram_details(super);

  const auto corpus = test_corpus(ctx.dim(), ctx.config.seed, ctx.samples(4));
  std::vector<SystemElement> base_set, super_set;
  for (const auto& f : corpus) {
    base_set.emplace_back(f);
    super_set.emplace_back(embed_S(f, cs));
  }
  // matched truncation: exact support windows on both sides
  TruncationSpec windows = trunc;
  windows.k_max.reset();
  MaxTracker matched;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const double a = frame_sum(base_set[s], SystemKind::base(), windows, cs, ctx.psi).value;
    const double b = frame_sum(super_set[s], SystemKind::super(), windows, cs, ctx.psi).value;
    matched.add(std::abs(a - b));
  }
  ctx.check("matched_frame_sums", matched.value, kAggregateTolerance);
  const auto base_bounds = frame_bounds_estimate(SystemKind::base(), windows, cs, ctx.psi, base_set);
  const auto super_bounds = frame_bounds_estimate(SystemKind::super(), windows, cs, ctx.psi, super_set);
  ctx.check("lower_bound_gap", std::abs(base_bounds.lower - super_bounds.lower), kBoundsTolerance);
  ctx.check("upper_bound_gap", std::abs(base_bounds.upper - super_bounds.upper), kBoundsTolerance);
  ctx.result.details["bounds"] = Json{{"base", Json::array({base_bounds.lower, base_bounds.upper})},
                                      {"super", Json::array({super_bounds.lower, super_bounds.upper})}};
  ctx.result.details["test_functions"] = corpus.size();
}

void run_corollary(Context& ctx) {
  const TruncationSpec trunc = suite_truncation(ctx);
  MaxTracker off, diag;
  Json grams = Json::array();
  for (const std::size_t r : selected_cosets(ctx)) {
    const GramResult gram = gram_matrix(SystemKind::corollary(r), trunc, ctx.cs, ctx.psi);
    off.add(gram.max_off_diagonal);
    diag.add(gram.max_diagonal_deviation);
    Json entry = gram_details(gram);
    entry["r"] = r;
    grams.push_back(std::move(entry));
  }
  ctx.check("gram_off_diagonal", off.value, kDefaultTolerance);
  ctx.check("gram_diagonal", diag.value, kDefaultTolerance);
  ctx.result.details["grams"] = grams;
  eqeg_checks(ctx, "eqeg_");
}

using Runner = std::function<void(Context&)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> suites = {
      {"operators", run_operators}, {"lemma2", run_lemma2},         {"lemma3", run_lemma3},
      {"eqeg", run_eqeg},           {"projection", run_projection}, {"theorem1-onb", run_theorem1},
      {"corollary", run_corollary}};
  return suites;
}

std::uint64_t mix_seed(std::uint64_t seed, std::size_t index, std::uint64_t stream) {
  return seed * 0x9E3779B97F4A7C15ULL + stream * 0xBF58476D1CE4E5B9ULL + index + 1;
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

const Check* SuiteResult::worst() const {
  const Check* out = nullptr;
  double ratio = -1.0;
  for (const auto& c : checks) {
    const double r = c.tolerance > 0 ? c.residual / c.tolerance : (c.residual > 0 ? INFINITY : 0.0);
    if (r > ratio) {
      ratio = r;
      out = &c;
    }
  }
  return out;
}

Json SuiteResult::to_json() const {
  Json list = Json::array();
  for (const auto& c : checks)
    list.push_back(Json{{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass()}});
  const Check* w = worst();
  return Json{{"suite", suite},
              {"pass", pass()},
              {"checks", list},
              {"worst", w ? Json{{"name", w->name}, {"residual", w->residual}, {"tolerance", w->tolerance}} : Json(nullptr)},
              {"details", details}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, run] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& config) {
  const auto it = std::find_if(registry().begin(), registry().end(), [&](const auto& e) { return e.first == name; });
  if (it == registry().end()) throw Error(ErrorKind::Parse, "unknown suite '" + name + "'");
  if (config.tolerance && !(*config.tolerance > 0)) throw Error(ErrorKind::Parse, "tolerance must be positive");
  const CosetSystem cs = CosetSystem::build(config.M, config.P);
  require_supported_dimension(cs.dim());
  Context ctx{config, cs,
              WaveletFamily(config.wavelets.empty() ? default_wavelets(static_cast<int>(cs.dim())) : config.wavelets),
              SuiteResult{}};
  ctx.result.suite = name;
  it->second(ctx);
  return ctx.result;
}

std::vector<PiecewiseFunction> default_wavelets(int dim) {
  require_supported_dimension(static_cast<std::size_t>(dim));
  if (dim == 1) return {haar()};
  return {haar2d(1), haar2d(2), haar2d(3)};
}

std::vector<PiecewiseFunction> test_corpus(int dim, std::uint64_t seed, std::size_t random_count) {
  require_supported_dimension(static_cast<std::size_t>(dim));
  std::vector<PiecewiseFunction> out;
  const Rational h = make_rational(1, 2), q = make_rational(1, 4), tq = make_rational(3, 4);
  if (dim == 1) {
    out.push_back(indicator_interval(0, 1));
    out.push_back(indicator_interval(0, h));
    out.push_back(indicator_interval(q, tq));
    out.push_back(steps({Rational(0), q, h, Rational(1)}, {1.0, -1.0, 2.0}));
  } else {
    auto square = [](const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1) {
      return indicator_polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
    };
    out.push_back(square(Rational(0), Rational(0), Rational(1), Rational(1)));
    out.push_back(square(Rational(0), Rational(0), h, h));
    out.push_back(square(q, q, tq, tq));
    out.push_back(add(square(Rational(0), Rational(0), h, Rational(1)), square(h, Rational(0), Rational(1), h).scaled(-2.0)));
  }
  const Box unit{RatVector(static_cast<std::size_t>(dim), Rational(0)), RatVector(static_cast<std::size_t>(dim), Rational(1))};
  for (std::size_t s = 0; s < random_count; ++s) out.push_back(random_step(mix_seed(seed, s, 1), 4, unit));
  return out;
}

PiecewiseFunction sample_function(int dim, std::uint64_t seed, std::size_t index) {
  const Box box{RatVector(static_cast<std::size_t>(dim), Rational(-1)), RatVector(static_cast<std::size_t>(dim), Rational(2))};
  return random_step(mix_seed(seed, index, 2), 3 + index % 5, box);
}

SuperVector sample_super_vector(const CosetSystem& cs, std::uint64_t seed, std::size_t index) {
  const Box box{RatVector(cs.dim(), Rational(-1)), RatVector(cs.dim(), Rational(2))};
  std::vector<PiecewiseFunction> comps;
  for (std::size_t q = 0; q < cs.order(); ++q)
    comps.push_back(random_step(mix_seed(seed, index * cs.order() + q, 3), 2 + (index + q) % 4, box));
  return SuperVector(std::move(comps));
}

}  // namespace superframe
