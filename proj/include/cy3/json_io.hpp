#pragma once

#include "cy3/bounds.hpp"
#include "cy3/cone2.hpp"
#include "cy3/flops.hpp"
#include "cy3/forms.hpp"
#include "cy3/pipeline.hpp"
#include "cy3/real_algebra.hpp"
#include "cy3/surfaces.hpp"

#include <json.hpp>

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace cy3 {

// Insertion-ordered so that emitted documents are byte-stable.
using Json = nlohmann::ordered_json;

// Integers become JSON numbers inside the 53-bit safe range and strings otherwise.
Json to_json(const Z& z);
// Rationals are always strings "p" or "p/q".
Json to_json(const Q& q);
Json to_json(const DivisorClass& d);
Json to_json(const RealAlgebraic& a);
Json to_json(const Ray2& r);
Json to_json(const Cone2& c);
Json to_json(const CubicCase& c);
Json to_json(const ComponentSet& s);
Json to_json(const DeltaResult& d);
Json to_json(const MovBound& m);
Json to_json(const EffectivityResult& e);
Json to_json(const SurfacePairCandidate& p);
Json to_json(const SurfaceClassCandidate& s);
Json to_json(const SlopeBound& s);
Json to_json(const MovableCandidate& m);
Json to_json(const C2LineRelation& r);
Json forms_to_json(const TrilinearForm& t, const LinearFormC2& c);
Json report_to_json(const AnalysisReport& r, const TrilinearForm& t, const LinearFormC2& c);

Z integer_from_json(const Json& j);
Q rational_from_json(const Json& j);
DivisorClass class_from_json(const Json& j);
RealAlgebraic algebraic_from_json(const Json& j);
Ray2 ray_from_json(const Json& j);
FormsState forms_from_json(const Json& j);
// Parses text as JSON, mapping syntax errors to DomainError("parse").
Json parse_json(const std::string& text);

std::string report_text(const AnalysisReport& r);
// Generic "path: value" rendering for the text output format.
std::string json_text(const Json& j);

struct JsonlRecord {
    std::size_t line = 0;
    std::optional<FormsState> forms;
    std::string error_code, error_message;
};

// One record per non-blank line; malformed lines become error records.
std::vector<JsonlRecord> ingest_jsonl(std::istream& in);

// One JSON line per record in input order; records are analyzed on up to `jobs` threads.
std::vector<std::string> analyze_batch(const std::vector<JsonlRecord>& records, const AnalysisParams& params,
                                       int jobs);

}  // namespace cy3
