#include "prkit/serialize.hpp"

#include "prkit/errors.hpp"

namespace prkit {

namespace {

Rational rational_from_json(const Json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw ParseError("expected a rational string or integer, got " + v.dump());
}

Json rationals_to_json(std::span<const Rational> values) {
  Json out = Json::array();
  for (const auto& r : values) out.push_back(r.str());
  return out;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json matrix_to_json(const FiniteMatrix& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) entries.push_back(rationals_to_json(m.row(i).values()));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

FiniteMatrix matrix_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("entries")) throw ParseError("matrix JSON needs an \"entries\" array");
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.empty()) throw ParseError("matrix entries must be a non-empty array");
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : entries) {
      if (!row.is_array()) throw ParseError("matrix row must be an array");
      std::vector<Rational> r;
      for (const auto& v : row) r.push_back(rational_from_json(v));
      rows.push_back(std::move(r));
    }
    FiniteMatrix m = FiniteMatrix::from_rows(rows);
    if (j.contains("rows") && j.at("rows").get<std::size_t>() != m.rows())
      throw ParseError("matrix \"rows\" disagrees with entries");
    if (j.contains("cols") && j.at("cols").get<std::size_t>() != m.cols())
      throw ParseError("matrix \"cols\" disagrees with entries");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed matrix JSON: ") + e.what());
  } catch (const DimensionError& e) {
    throw ParseError(std::string("malformed matrix JSON: ") + e.what());
  }
}

Json certificate_to_json(const ColumnsPropertyCertificate& cert) {
  Json witnesses = Json::array();
  for (const auto& w : cert.witnesses) witnesses.push_back(rationals_to_json(w));
  return Json{{"blocks", cert.blocks}, {"witnesses", std::move(witnesses)}};
}

ColumnsPropertyCertificate certificate_from_json(const Json& j) {
  try {
    ColumnsPropertyCertificate cert;
    cert.blocks = j.at("blocks").get<std::vector<std::vector<std::size_t>>>();
    for (const auto& w : j.at("witnesses")) {
      std::vector<Rational> coeffs;
      for (const auto& v : w) coeffs.push_back(rational_from_json(v));
      cert.witnesses.push_back(std::move(coeffs));
    }
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate JSON: ") + e.what());
  }
}

Json outcome_to_json(const SearchOutcome& o, std::span<const std::string> labels, bool include_timing) {
  Json j;
  j["kind"] = to_string(o.kind);
  Json assignment = Json::object();
  for (std::size_t i = 0; i < o.assignment.size(); ++i) {
    const std::string key = i < labels.size() ? labels[i] : "x" + std::to_string(i);
    assignment[key] = o.assignment[i].str();
  }
  j["assignment"] = std::move(assignment);
  j["coloring"] = o.coloring;
  j["nodes"] = o.stats.nodes;
  if (include_timing) j["ms"] = o.stats.millis;
  j["complete"] = o.complete;
  if (o.forcing_number) j["forcing_number"] = *o.forcing_number;
  return j;
}

Json blocking_to_json(const BlockingReport& r) {
  Json j;
  j["property"] = to_string(r.property);
  j["bound"] = r.bound;
  j["checked"] = r.checked;
  if (r.counterexample) {
    j["counterexample"] = rationals_to_json(*r.counterexample);
    j["result"] = "counterexample found";
  } else {
    j["counterexample"] = nullptr;
    j["result"] = "none found";
  }
  return j;
}

Json sample_to_json(const PropertySample& s) {
  Json j;
  j["property"] = s.property;
  j["samples"] = s.samples;
  j["seed"] = s.seed;
  j["failures"] = s.failures;
  j["first_failure"] = s.first_failure ? rationals_to_json(*s.first_failure) : Json(nullptr);
  return j;
}

}  // namespace prkit
