#pragma once

// JSON forms of the library's values. Rationals are strings, complex numbers
// are [re, im], key order is fixed.

#include "json.hpp"

#include "superframe/frames.hpp"

namespace superframe {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "superframe-report/1";

Json to_json(const Complex& z);
Json to_json(const RatVector& v);
Json to_json(const IntVector& v);
Json to_json(const Region& region);
Json to_json(const PiecewiseFunction& f);
Json to_json(const SuperVector& g, const CosetSystem& cs);
Json to_json(const LatticeBasis& lattice);
Json to_json(const AdmissibilityReport& report);
Json to_json(const CosetSystem& cs);
Json to_json(const ElementIndex& index);
Json to_json(const TruncationSpec& trunc);
Json to_json(const Lemma3Cell& cell);

PiecewiseFunction function_from_json(const Json& j);
/// Throws ShapeMismatch when the fingerprint does not match cs.
SuperVector super_vector_from_json(const Json& j, const CosetSystem& cs);

/// Hex digest of M, P and the wavelet family.
std::string content_fingerprint(const IntMatrix& m, const IntMatrix& p, const std::vector<PiecewiseFunction>& psi);

/// Indented "path: value" lines rendered from a JSON document.
std::string pretty(const Json& j);

}  // namespace superframe
