#include "superframe/literals.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "superframe/errors.hpp"

namespace superframe {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

double parse_double(std::string_view text, std::string_view context) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorKind::Parse, "bad number '" + std::string(text) + "' in " + std::string(context));
  return v;
}

unsigned long parse_count(std::string_view text, std::string_view context) {
  text = trim(text);
  unsigned long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorKind::Parse, "bad count '" + std::string(text) + "' in " + std::string(context));
  return v;
}

void require_dim(int dim, int wanted, std::string_view literal) {
  if (dim != wanted)
    throw Error(ErrorKind::ShapeMismatch, "literal '" + std::string(literal) + "' needs d = " + std::to_string(wanted) +
                                              ", the matrices have d = " + std::to_string(dim));
}

Box unit_box(int dim) {
  return Box{RatVector(static_cast<std::size_t>(dim), Rational(0)), RatVector(static_cast<std::size_t>(dim), Rational(1))};
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string_view t = trim(text);
  if (t.empty()) throw Error(ErrorKind::Parse, "empty value");
  if (t.back() != 'i') return {parse_double(t, "value"), 0.0};
  const std::string_view body = t.substr(0, t.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split_at = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  auto imag = [&](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s, "imaginary part");
  };
  if (split_at == std::string_view::npos) return {0.0, imag(body)};
  return {parse_double(body.substr(0, split_at), "real part"), imag(body.substr(split_at))};
}

PiecewiseFunction parse_function(std::string_view text, int dim) {
  require_supported_dimension(static_cast<std::size_t>(dim));
  const std::string_view t = trim(text);
  const std::size_t colon = t.find(':');
  const std::string_view head = t.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : t.substr(colon + 1);

  if (head == "zero" && colon == std::string_view::npos) return PiecewiseFunction(dim);
  if (head == "haar" && colon == std::string_view::npos) {
    require_dim(dim, 1, t);
    return haar();
  }
  if (head == "haar2d") {
    require_dim(dim, 2, t);
    if (colon == std::string_view::npos)
      throw Error(ErrorKind::Parse, "a single function needs haar2d:1, haar2d:2 or haar2d:3");
    const unsigned long kind = parse_count(args, t);
    if (kind < 1 || kind > 3) throw Error(ErrorKind::Parse, "haar2d kind must be 1, 2 or 3");
    return haar2d(static_cast<int>(kind));
  }
  if (head == "chi") {
    require_dim(dim, 1, t);
    const auto parts = split(args, ',');
    if (parts.size() != 2) throw Error(ErrorKind::Parse, "chi takes two endpoints: chi:a,b");
    return indicator_interval(parse_rational(parts[0]), parse_rational(parts[1]));
  }
  if (head == "steps") {
    require_dim(dim, 1, t);
    const auto parts = split(args, ',');
    if (parts.size() < 3 || parts.size() % 2 == 0)
      throw Error(ErrorKind::Parse, "steps takes b0,v0,b1,v1,...,bn");
    std::vector<Rational> breaks;
    std::vector<Complex> values;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i % 2 == 0)
        breaks.push_back(parse_rational(parts[i]));
      else
        values.push_back(parse_complex(parts[i]));
    }
    return steps(breaks, values);
  }
  if (head == "poly") {
    require_dim(dim, 2, t);
    const std::size_t eq = args.rfind('=');
    const Complex value = eq == std::string_view::npos ? Complex(1.0) : parse_complex(args.substr(eq + 1));
    std::vector<Point2> vertices;
    for (const auto v : split(args.substr(0, eq), ';')) {
      const auto xy = split(v, ',');
      if (xy.size() != 2) throw Error(ErrorKind::Parse, "polygon vertex '" + std::string(v) + "' is not x,y");
      vertices.push_back({parse_rational(xy[0]), parse_rational(xy[1])});
    }
    return indicator_polygon(vertices, value);
  }
  if (head == "random") {
    const auto parts = split(args, ',');
    if (parts.size() != 2) throw Error(ErrorKind::Parse, "random takes n,seed");
    return random_step(parse_count(parts[1], t), parse_count(parts[0], t), unit_box(dim));
  }
  throw Error(ErrorKind::Parse, "unknown function literal '" + std::string(t) + "'");
}

std::vector<PiecewiseFunction> parse_wavelets(std::string_view text, int dim) {
  if (trim(text) == "haar2d") {
    require_dim(dim, 2, text);
    return {haar2d(1), haar2d(2), haar2d(3)};
  }
  return {parse_function(text, dim)};
}

}  // namespace superframe
