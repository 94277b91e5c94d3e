#pragma once

#include <string>

#include <json.hpp>

#include "noarb/classify.hpp"
#include "noarb/market.hpp"
#include "noarb/parity.hpp"
#include "noarb/portfolio.hpp"
#include "noarb/symmetry.hpp"

namespace noarb::io {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

/// Read errors (malformed JSON, wrong types, missing fields) raise
/// ParseError with the JSON pointer of the offending value.

json to_json(const TrajectorySet& ts);
TrajectorySet market_from_json(const json& j);

/// Canonical text: two-space indent, trailing newline.
std::string serialize_market(const TrajectorySet& ts);
TrajectorySet parse_market(const std::string& text);

json to_json(const FractionalTransform& t);
FractionalTransform transform_from_json(const json& j);

ParitySpec parity_spec_from_json(const json& j);

json to_json(const HullCertificate& c);
json to_json(const SeparationCertificate& c);
json to_json(const NodeVerdict& v, const Market& m);
json to_json(const MarketVerdict& v, const Market& m);
json to_json(const Portfolio& p, const Market& m);
json to_json(const ArbitrageRecord& r, const Market& m);
json to_json(const SymmetryReport& r);
json to_json(const ParityReport& r);
json to_json(const ParityLabReport& r);

json parse_json(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace noarb::io
