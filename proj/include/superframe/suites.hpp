#pragma once

// Named verification suites. Each suite evaluates a list of residual checks
// against pinned tolerances and reports the worst one.

#include <optional>
#include <string>
#include <vector>

#include "superframe/serialize.hpp"

namespace superframe {

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kProjectionTolerance = 1e-12;
inline constexpr double kAggregateTolerance = 1e-9;
inline constexpr double kBoundsTolerance = 1e-6;
inline constexpr double kCosetTolerance = 1e-12;
inline constexpr long kDefaultKMax = 8;
inline constexpr int kDefaultJMax = 3;

struct SuiteConfig {
  IntMatrix M;
  IntMatrix P;
  std::vector<PiecewiseFunction> wavelets;  // empty: haar (d = 1) or the haar2d family (d = 2)
  std::optional<PiecewiseFunction> f;
  std::optional<PiecewiseFunction> g;
  int j_min = -kDefaultJMax;
  int j_max = kDefaultJMax;
  long k_max = kDefaultKMax;
  std::optional<std::size_t> r;          // eqeg and corollary: one coset instead of all
  std::optional<double> tolerance;       // replaces every pinned tolerance
  std::uint64_t seed = 0;
  std::optional<std::size_t> samples;
};

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return residual <= tolerance; }
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  Json details = Json::object();
  bool pass() const;
  /// The check with the largest residual-to-tolerance ratio.
  const Check* worst() const;
  Json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Throws NotAdmissible before running anything when P is not admissible.
SuiteResult run_suite(const std::string& name, const SuiteConfig& config);

std::vector<PiecewiseFunction> default_wavelets(int dim);

/// Dyadic step functions in the unit box followed by `random_count` seeded
/// random step functions.
std::vector<PiecewiseFunction> test_corpus(int dim, std::uint64_t seed, std::size_t random_count);

/// Seeded random function used by the property suites, supported in [-1, 2]^dim.
PiecewiseFunction sample_function(int dim, std::uint64_t seed, std::size_t index);
SuperVector sample_super_vector(const CosetSystem& cs, std::uint64_t seed, std::size_t index);

}  // namespace superframe
