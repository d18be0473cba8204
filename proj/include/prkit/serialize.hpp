#ifndef PRKIT_SERIALIZE_HPP
#define PRKIT_SERIALIZE_HPP

#include <span>
#include <string>

#include <json.hpp>

#include "prkit/linalg.hpp"
#include "prkit/regularity.hpp"
#include "prkit/search.hpp"

namespace prkit {

using Json = nlohmann::ordered_json;

// {"rows": u, "cols": v, "entries": [["p/q", ...], ...]}; entries may also be
// JSON integers on input.
Json matrix_to_json(const FiniteMatrix& m);
FiniteMatrix matrix_from_json(const Json& j);

// {"blocks": [[0,2],[1]], "witnesses": [["1","0"]]}
Json certificate_to_json(const ColumnsPropertyCertificate& cert);
ColumnsPropertyCertificate certificate_from_json(const Json& j);

// {"kind", "assignment": {label: value}, "coloring", "nodes", "ms"?, ...}.
// Wall time is only written when requested so that reruns are byte-identical.
Json outcome_to_json(const SearchOutcome& o, std::span<const std::string> labels, bool include_timing = false);

Json blocking_to_json(const BlockingReport& r);
Json sample_to_json(const PropertySample& s);

/// Parses JSON text, mapping syntax errors to ParseError.
Json parse_json(const std::string& text);

}  // namespace prkit

#endif  // PRKIT_SERIALIZE_HPP
