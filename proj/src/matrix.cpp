#include "superframe/matrix.hpp"

#include <sstream>

namespace superframe {
namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
std::string format_any(const Matrix<T>& a) {
  std::string out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out += ',';
      out += to_string(a(i, j));
    }
  }
  return out;
}

}  // namespace

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rational(a(i, j));
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

bool is_integral(const RatMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j).get_den() != 1) return false;
  return true;
}

bool is_integral(const RatVector& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

IntMatrix to_integer(const RatMatrix& a) {
  if (!is_integral(a)) throw Error(ErrorKind::ShapeMismatch, "matrix is not integral: " + format_matrix(a));
  IntMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).get_num();
  return r;
}

IntMatrix power(const IntMatrix& a, unsigned j) {
  IntMatrix result = IntMatrix::identity(a.rows());
  IntMatrix base = a;
  while (j) {
    if (j & 1u) result = result * base;
    j >>= 1u;
    if (j) base = base * base;
  }
  return result;
}

RatMatrix parse_rat_matrix(std::string_view text) {
  if (text.find_first_not_of(" \t") == std::string_view::npos)
    throw Error(ErrorKind::Parse, "empty matrix");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : split(text, ';')) {
    std::vector<Rational> entries;
    for (const auto& entry : split(row, ',')) entries.push_back(parse_rational(entry));
    rows.push_back(std::move(entries));
  }
  for (const auto& r : rows)
    if (r.size() != rows.front().size())
      throw Error(ErrorKind::Parse, "ragged matrix '" + std::string(text) + "'");
  return RatMatrix::from_rows(rows);
}

IntMatrix parse_int_matrix(std::string_view text) {
  const RatMatrix r = parse_rat_matrix(text);
  if (!is_integral(r)) throw Error(ErrorKind::Parse, "expected integer matrix '" + std::string(text) + "'");
  return to_integer(r);
}

std::string format_matrix(const RatMatrix& a) { return format_any(a); }
std::string format_matrix(const IntMatrix& a) { return format_any(a); }

std::string format_vector(const RatVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += to_string(v[i]);
  }
  return out;
}

std::string format_vector(const IntVector& v) { return format_vector(to_rational(v)); }

RatVector frac(const RatVector& v) {
  RatVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(frac(x));
  return r;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "dot product");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVector add(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "vector sum");
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVector subtract(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "vector difference");
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

}  // namespace superframe
