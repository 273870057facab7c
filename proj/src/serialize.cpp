#include "superframe/serialize.hpp"

#include <sstream>

#include "superframe/errors.hpp"

namespace superframe {
namespace {

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw Error(ErrorKind::Parse, "expected a rational string, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorKind::Parse, "expected [re, im], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

Json permutation_json(const Permutation& perm) {
  Json out = Json::array();
  for (auto v : perm) out.push_back(v);
  return out;
}

Json reps_json(const std::vector<RatVector>& reps, std::size_t d) {
  Json out = Json::array();
  for (const auto& v : reps) {
    if (d == 1)
      out.push_back(to_string(v[0]));
    else
      out.push_back(to_json(v));
  }
  return out;
}

void render(const Json& j, const std::string& path, std::ostringstream& out) {
  auto scalar_array = [](const Json& a) {
    for (const auto& e : a)
      if (e.is_structured()) return false;
    return true;
  };
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) render(value, path.empty() ? key : path + "." + key, out);
  } else if (j.is_array() && !scalar_array(j)) {
    for (std::size_t i = 0; i < j.size(); ++i) render(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

}  // namespace

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p())
      out.push_back(x.get_si());
    else
      out.push_back(to_string(x));
  }
  return out;
}

Json to_json(const Region& region) {
  if (const auto* iv = std::get_if<Interval>(&region))
    return Json{{"interval", Json::array({to_string(iv->lo), to_string(iv->hi)})}};
  Json vertices = Json::array();
  for (const auto& v : std::get<Polygon>(region).vertices)
    vertices.push_back(Json::array({to_string(v[0]), to_string(v[1])}));
  return Json{{"polygon", vertices}};
}

Json to_json(const PiecewiseFunction& f) {
  Json cells = Json::array();
  for (const auto& c : f.cells()) {
    Json cell = to_json(c.region);
    cell["value"] = to_json(c.value);
    cells.push_back(std::move(cell));
  }
  return Json{{"dim", f.dim()}, {"cells", cells}};
}

Json to_json(const SuperVector& g, const CosetSystem& cs) {
  Json comps = Json::array();
  for (const auto& c : g.components()) comps.push_back(to_json(c));
  return Json{{"fingerprint", cs.fingerprint()}, {"components", comps}};
}

Json to_json(const LatticeBasis& lattice) {
  return Json{{"denominator", to_string(lattice.denominator())}, {"hermite", format_matrix(lattice.hermite())}};
}

Json to_json(const AdmissibilityReport& report) {
  // p as a number while it fits, a decimal string beyond that
  const Json p = report.p.fits_slong_p() ? Json(report.p.get_si()) : Json(to_string(report.p));
  return Json{{"admissible", report.admissible},
              {"p", p},
              {"m_prime_integral", report.m_prime_integral},
              {"m_prime", format_matrix(report.m_prime)},
              {"intersection_is_integer_lattice", report.intersection_is_integer_lattice},
              {"intersection", to_json(report.intersection)}};
}

Json to_json(const CosetSystem& cs) {
  Json h = Json::array();
  for (Eigen::Index r = 0; r < cs.H().rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index q = 0; q < cs.H().cols(); ++q) row.push_back(to_json(Complex(cs.H()(r, q))));
    h.push_back(std::move(row));
  }
  return Json{{"fingerprint", cs.fingerprint()},
              {"d", cs.dim()},
              {"p", cs.order()},
              {"M", format_matrix(cs.M())},
              {"P", format_matrix(cs.P())},
              {"M_prime", format_matrix(cs.M_prime())},
              {"theta", reps_json(cs.theta(), cs.dim())},
              {"theta_star", reps_json(cs.theta_star(), cs.dim())},
              {"sigma", permutation_json(cs.sigma())},
              {"sigma_star", permutation_json(cs.sigma_star())},
              {"H", h},
              {"unitarity_residual", cs.unitarity_residual()},
              {"compatibility_residual", cs.compatibility_residual()}};
}

Json to_json(const ElementIndex& index) { return Json{{"i", index.i}, {"j", index.j}, {"k", to_json(index.k)}}; }

Json to_json(const TruncationSpec& trunc) {
  Json out{{"j_min", trunc.j_min}, {"j_max", trunc.j_max}};
  out["k_max"] = trunc.k_max ? Json(*trunc.k_max) : Json(nullptr);
  return out;
}

Json to_json(const Lemma3Cell& cell) {
  return Json{{"j", cell.j},     {"k", to_json(cell.k)},     {"r", cell.r},
              {"l", cell.l},     {"delta", cell.delta},      {"lhs", to_json(cell.lhs)},
              {"rhs", to_json(cell.rhs)}};
}

PiecewiseFunction function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("cells"))
    throw Error(ErrorKind::Parse, "function JSON needs dim and cells");
  const int dim = j.at("dim").get<int>();
  std::vector<Cell> cells;
  for (const auto& c : j.at("cells")) {
    const Complex value = complex_from_json(c.at("value"));
    if (c.contains("interval")) {
      const auto& iv = c.at("interval");
      if (!iv.is_array() || iv.size() != 2) throw Error(ErrorKind::Parse, "interval needs two endpoints");
      const Rational lo = rational_from_json(iv[0]);
      const Rational hi = rational_from_json(iv[1]);
      if (!(lo < hi)) throw Error(ErrorKind::InvalidGeometry, "empty interval in function JSON");
      cells.push_back({Interval{lo, hi}, value});
    } else if (c.contains("polygon")) {
      std::vector<Point2> vertices;
      for (const auto& v : c.at("polygon")) {
        if (!v.is_array() || v.size() != 2) throw Error(ErrorKind::Parse, "polygon vertex needs two coordinates");
        vertices.push_back({rational_from_json(v[0]), rational_from_json(v[1])});
      }
      if (!is_convex_ccw(vertices)) throw Error(ErrorKind::InvalidGeometry, "polygon is not convex counter-clockwise");
      cells.push_back({*make_polygon(vertices), value});
    } else {
      throw Error(ErrorKind::Parse, "cell needs an interval or a polygon");
    }
  }
  return PiecewiseFunction(dim, std::move(cells));
}

SuperVector super_vector_from_json(const Json& j, const CosetSystem& cs) {
  if (j.at("fingerprint").get<std::string>() != cs.fingerprint())
    throw Error(ErrorKind::ShapeMismatch, "super vector belongs to a different coset system");
  std::vector<PiecewiseFunction> comps;
  for (const auto& c : j.at("components")) comps.push_back(function_from_json(c));
  if (comps.size() != cs.order()) throw Error(ErrorKind::ShapeMismatch, "super vector has the wrong number of components");
  return SuperVector(std::move(comps));
}

std::string content_fingerprint(const IntMatrix& m, const IntMatrix& p, const std::vector<PiecewiseFunction>& psi) {
  std::string text = format_matrix(m) + "|" + format_matrix(p);
  for (const auto& f : psi) text += "|" + to_json(f).dump();
  return fnv1a_hex(text);
}

std::string pretty(const Json& j) {
  std::ostringstream out;
  render(j, "", out);
  return out.str();
}

}  // namespace superframe
