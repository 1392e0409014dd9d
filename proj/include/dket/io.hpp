// JSON serialization for the shared file formats.
//
// Matrix container: {"rows": r, "cols": c, "data": [[re, im], ...]} with
// row-major data. Double-kets add {"kind": "doubleket"}. Spanning sets:
// {"dim": N, "elements": [...], "weights": [...], "labels": [...]}. Kraus
// channels: {"dim": d, "kraus": [...]}. Values round-trip at full double
// precision (shortest round-trip encoding).

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dket/bell.hpp"
#include "dket/doubleket.hpp"
#include "dket/spanning.hpp"
#include "dket/teleport.hpp"
#include "dket/types.hpp"

namespace dket {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json doubleket_to_json(const DoubleKet& k);
DoubleKet doubleket_from_json(const nlohmann::json& j);

nlohmann::json spanning_set_to_json(const SpanningSet& s);
SpanningSet spanning_set_from_json(const nlohmann::json& j);

nlohmann::json kraus_channel_to_json(const KrausChannel& c);
KrausChannel kraus_channel_from_json(const nlohmann::json& j);

nlohmann::json check_report_to_json(const CheckReport& r);

nlohmann::json teleport_record_to_json(const TeleportRecord& r);

// File helpers; loads throw ParseError on malformed input.
nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace dket
