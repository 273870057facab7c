#include "superframe/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "superframe/literals.hpp"
#include "superframe/suites.hpp"

namespace superframe::cli {
namespace {

struct RunConfig {
  std::string command;
  std::string M = "2";
  std::string P = "1";
  std::vector<std::string> wavelets;
  std::vector<std::string> functions;
  std::optional<std::string> g;
  std::string system = "base";
  std::optional<std::size_t> r;
  std::optional<std::string> suite;
  std::optional<int> j_min;
  std::optional<int> j_max;
  std::optional<long> k_max;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::optional<std::size_t> samples;
  std::string format = "json";
  std::string output;
};

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json config_json(const RunConfig& c) {
  return Json{{"command", c.command},   {"M", c.M},
              {"P", c.P},               {"wavelet", c.wavelets},
              {"f", c.functions},       {"g", optional_json(c.g)},
              {"system", c.system},     {"r", optional_json(c.r)},
              {"suite", optional_json(c.suite)}, {"jmin", optional_json(c.j_min)},
              {"jmax", optional_json(c.j_max)},  {"kmax", optional_json(c.k_max)},
              {"tol", optional_json(c.tol)},     {"seed", c.seed},
              {"samples", optional_json(c.samples)}, {"format", c.format}};
}

// Parsed view of a RunConfig.
struct Inputs {
  IntMatrix M;
  IntMatrix P;
  int dim = 0;
  std::vector<PiecewiseFunction> wavelets;  // resolved family, empty for d > 2
  bool wavelets_given = false;
};

Inputs parse_inputs(const RunConfig& c) {
  Inputs in{parse_int_matrix(c.M), parse_int_matrix(c.P), 0, {}, !c.wavelets.empty()};
  if (in.M.rows() != in.P.rows())
    throw Error(ErrorKind::ShapeMismatch, "M is " + std::to_string(in.M.rows()) + "x" + std::to_string(in.M.rows()) +
                                              " but P is " + std::to_string(in.P.rows()) + "x" + std::to_string(in.P.rows()));
  in.dim = static_cast<int>(in.M.rows());
  for (const auto& w : c.wavelets) {
    auto family = parse_wavelets(w, in.dim);
    in.wavelets.insert(in.wavelets.end(), family.begin(), family.end());
  }
  if (in.wavelets.empty() && (in.dim == 1 || in.dim == 2)) in.wavelets = default_wavelets(in.dim);
  return in;
}

Json envelope(const RunConfig& c, const Inputs& in, Json result) {
  return Json{{"schema", kReportSchema},
              {"command", c.command},
              {"config", config_json(c)},
              {"fingerprint", content_fingerprint(in.M, in.P, in.wavelets)},
              {"result", std::move(result)}};
}

TruncationSpec truncation(const RunConfig& c, std::optional<long> fallback_kmax) {
  TruncationSpec t;
  t.j_max = c.j_max.value_or(kDefaultJMax);
  t.j_min = c.j_min.value_or(-t.j_max);
  t.k_max = c.k_max ? c.k_max : fallback_kmax;
  t.validate();
  return t;
}

SystemKind parse_system(const RunConfig& c) {
  const std::size_t r = c.r.value_or(0);
  if (c.system == "base") return SystemKind::base();
  if (c.system == "oversampled") return SystemKind::oversampled();
  if (c.system == "super") return SystemKind::super();
  if (c.system == "super-primed") return SystemKind::super_primed(r);
  if (c.system == "corollary") return SystemKind::corollary(r);
  throw Error(ErrorKind::Parse, "unknown system '" + c.system + "'");
}

// The test vector a system acts on: f, S f or S' f.
SystemElement lift(const PiecewiseFunction& f, const SystemKind& kind, const CosetSystem& cs) {
  if (kind.tag == SystemTag::Super) return embed_S(f, cs);
  if (kind.tag == SystemTag::SuperPrimed) return embed_Sprime(f, cs);
  return f;
}

struct Outcome {
  Json report;
  int code = kExitPass;
  std::string csv;  // set when the command has a CSV form
  std::string diagnostic;
};

Outcome cmd_admissible(const RunConfig& c) {
  const Inputs in = parse_inputs(c);
  const AdmissibilityReport report = check_admissible(in.M, in.P);
  return {envelope(c, in, to_json(report)), report.admissible ? kExitPass : kExitNotAdmissible, {},
          report.admissible ? "" : "P is not admissible for M"};
}

Outcome cmd_cosets(const RunConfig& c) {
  const Inputs in = parse_inputs(c);
  const CosetSystem cs = CosetSystem::build(in.M, in.P);
  return {envelope(c, in, to_json(cs)), kExitPass, {}, {}};
}

Outcome cmd_verify(const RunConfig& c) {
  if (!c.suite) throw Error(ErrorKind::Parse, "verify needs --suite");
  const Inputs in = parse_inputs(c);
  SuiteConfig sc;
  sc.M = in.M;
  sc.P = in.P;
  if (in.wavelets_given) sc.wavelets = in.wavelets;
  if (!c.functions.empty()) {
    if (c.functions.size() > 1) throw Error(ErrorKind::Parse, "verify takes a single --f");
    sc.f = parse_function(c.functions.front(), in.dim);
  }
  if (c.g) sc.g = parse_function(*c.g, in.dim);
  const TruncationSpec t = truncation(c, kDefaultKMax);
  sc.j_min = t.j_min;
  sc.j_max = t.j_max;
  sc.k_max = *t.k_max;
  sc.r = c.r;
  sc.tolerance = c.tol;
  sc.seed = c.seed;
  sc.samples = c.samples;
  const SuiteResult result = run_suite(*c.suite, sc);
  Json body = result.to_json();
  body["truncation"] = to_json(t);
  Outcome out{envelope(c, in, std::move(body)), result.pass() ? kExitPass : kExitVerificationFailed, {}, {}};
  if (!result.pass()) {
    const Check* w = result.worst();
    std::ostringstream msg;
    msg << "suite " << *c.suite << " failed; worst check " << w->name << " residual " << w->residual
        << " > tolerance " << w->tolerance;
    out.diagnostic = msg.str();
  }
  return out;
}

Outcome cmd_framesum(const RunConfig& c) {
  const Inputs in = parse_inputs(c);
  const CosetSystem cs = CosetSystem::build(in.M, in.P);
  require_supported_dimension(cs.dim());
  const SystemKind kind = parse_system(c);
  const TruncationSpec t = truncation(c, std::nullopt);
  const WaveletFamily psi(in.wavelets);

  std::vector<std::string> labels;
  std::vector<PiecewiseFunction> fs;
  if (c.functions.empty()) {
    fs = test_corpus(in.dim, c.seed, c.samples.value_or(4));
    for (std::size_t s = 0; s < fs.size(); ++s) labels.push_back("corpus[" + std::to_string(s) + "]");
  } else {
    for (const auto& lit : c.functions) {
      fs.push_back(parse_function(lit, in.dim));
      labels.push_back(lit);
    }
  }

  Json sums = Json::array();
  std::vector<SystemElement> nonzero;
  bool clipped = false;
  std::ostringstream csv;
  csv << "function,frame_sum,norm_squared,terms\n";
  for (std::size_t s = 0; s < fs.size(); ++s) {
    const SystemElement x = lift(fs[s], kind, cs);
    const FrameSum sum = frame_sum(x, kind, t, cs, psi);
    clipped = clipped || sum.clipped;
    if (sum.norm_squared > 0) nonzero.push_back(x);
    Json entry{{"function", labels[s]},
               {"frame_sum", sum.value},
               {"norm_squared", sum.norm_squared},
               {"terms", sum.terms},
               {"clipped_mass", sum.clipped_mass},
               {"clipped", sum.clipped}};
    entry["ratio"] = sum.norm_squared > 0 ? Json(sum.value / sum.norm_squared) : Json(nullptr);
    sums.push_back(std::move(entry));
    csv << labels[s] << ',' << Json(sum.value).dump() << ',' << Json(sum.norm_squared).dump() << ',' << sum.terms
        << '\n';
  }
  Json result{{"system", kind.name()}, {"truncation", to_json(t)}, {"sums", sums}};
  if (nonzero.empty()) {
    result["A_est"] = nullptr;
    result["B_est"] = nullptr;
  } else {
    const auto bounds = frame_bounds_estimate(kind, t, cs, psi, nonzero);
    result["A_est"] = bounds.lower;
    result["B_est"] = bounds.upper;
  }
  Json warnings = Json::array();
  if (clipped) warnings.push_back("the k box clips terms with nonzero coefficients; see clipped_mass");
  result["warnings"] = warnings;
  return {envelope(c, in, std::move(result)), kExitPass, csv.str(), {}};
}

Outcome cmd_gram(const RunConfig& c) {
  const Inputs in = parse_inputs(c);
  const CosetSystem cs = CosetSystem::build(in.M, in.P);
  require_supported_dimension(cs.dim());
  const SystemKind kind = parse_system(c);
  const TruncationSpec t = truncation(c, kDefaultKMax);
  const GramResult gram = gram_matrix(kind, t, cs, WaveletFamily(in.wavelets));
  Json result{{"system", kind.name()},
              {"truncation", to_json(t)},
              {"size", gram.indices.size()},
              {"max_off_diagonal", gram.max_off_diagonal},
              {"max_diagonal_deviation", gram.max_diagonal_deviation}};
  result["min_eigenvalue"] = gram.min_eigenvalue ? Json(*gram.min_eigenvalue) : Json(nullptr);
  result["max_eigenvalue"] = gram.max_eigenvalue ? Json(*gram.max_eigenvalue) : Json(nullptr);
  std::ostringstream csv;
  csv << "row,col,re,im\n";
  const auto n = static_cast<Eigen::Index>(gram.indices.size());
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      csv << a << ',' << b << ',' << Json(gram.G(a, b).real()).dump() << ',' << Json(gram.G(a, b).imag()).dump() << '\n';
  return {envelope(c, in, std::move(result)), kExitPass, csv.str(), {}};
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedDimension:
    case ErrorKind::DimensionLimit:
    case ErrorKind::SystemTooLarge: return kExitUnsupported;
    case ErrorKind::NotAdmissible: return kExitNotAdmissible;
    default: return kExitInputError;
  }
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--M", c.M, "dilation matrix, rows ';' entries ','")->capture_default_str();
  sub->add_option("--P", c.P, "oversampling matrix")->capture_default_str();
  sub->add_option("--wavelet", c.wavelets, "wavelet literal (repeatable)");
  sub->add_option("--tol", c.tol, "replaces the pinned tolerances");
  sub->add_option("--seed", c.seed, "seed for random test functions")->capture_default_str();
  sub->add_option("--samples", c.samples, "number of random samples");
  sub->add_option("--format", c.format, "json, csv or pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();
  sub->add_option("--output", c.output, "write the report here instead of stdout");
}

void add_functions(CLI::App* sub, RunConfig& c) {
  sub->add_option("--f", c.functions, "function literal (repeatable)");
  sub->add_option("--g", c.g, "second function literal");
}

void add_truncation(CLI::App* sub, RunConfig& c) {
  sub->add_option("--jmin", c.j_min, "smallest scale (default -jmax)");
  sub->add_option("--jmax", c.j_max, "largest scale (default 3)");
  sub->add_option("--kmax", c.k_max, "translation box |k_i| <= kmax");
}

void add_system(CLI::App* sub, RunConfig& c) {
  sub->add_option("--system", c.system, "base, oversampled, super, super-primed or corollary")
      ->check(CLI::IsMember({"base", "oversampled", "super", "super-primed", "corollary"}))
      ->capture_default_str();
  sub->add_option("--r", c.r, "coset index for super-primed and corollary");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Admissibility, coset systems and super-wavelet frame verification", "superframe"};
  app.require_subcommand(1);

  auto* admissible = app.add_subcommand("admissible", "decide whether P is admissible for M");
  add_common(admissible, c);
  auto* cosets = app.add_subcommand("cosets", "dump representatives, permutations and the duality matrix");
  add_common(cosets, c);
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, c);
  add_functions(verify, c);
  add_truncation(verify, c);
  verify->add_option("--suite", c.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--r", c.r, "restrict eqeg and corollary to one coset");
  auto* framesum = app.add_subcommand("framesum", "truncated frame sums and bound estimates");
  add_common(framesum, c);
  add_functions(framesum, c);
  add_truncation(framesum, c);
  add_system(framesum, c);
  auto* gram = app.add_subcommand("gram", "Gram matrix of a truncated system");
  add_common(gram, c);
  add_truncation(gram, c);
  add_system(gram, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "superframe: " << e.what() << '\n';
    return kExitInputError;
  }

  Outcome outcome;
  try {
    if (admissible->parsed()) {
      c.command = "admissible";
      outcome = cmd_admissible(c);
    } else if (cosets->parsed()) {
      c.command = "cosets";
      outcome = cmd_cosets(c);
    } else if (verify->parsed()) {
      c.command = "verify";
      outcome = cmd_verify(c);
    } else if (framesum->parsed()) {
      c.command = "framesum";
      outcome = cmd_framesum(c);
    } else {
      c.command = "gram";
      outcome = cmd_gram(c);
    }
    if (c.format == "csv" && c.command != "framesum" && c.command != "gram")
      throw Error(ErrorKind::Parse, "--format csv is only available for framesum and gram");
  } catch (const Error& e) {
    err << "superframe: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "superframe: " << e.what() << '\n';
    return kExitInputError;
  }

  std::string text;
  if (c.format == "csv")
    text = outcome.csv;
  else if (c.format == "pretty")
    text = pretty(outcome.report);
  else
    text = outcome.report.dump(2) + "\n";

  if (c.output.empty()) {
    out << text;
  } else {
    std::ofstream file(c.output, std::ios::binary);
    file << text;
    if (!file) {
      err << "superframe: cannot write " << c.output << '\n';
      return kExitInputError;
    }
  }
  if (!outcome.diagnostic.empty()) err << "superframe: " << outcome.diagnostic << '\n';
  return outcome.code;
}

}  // namespace superframe::cli
