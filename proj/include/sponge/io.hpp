#pragma once

#include "sponge/dims.hpp"
#include "sponge/measure.hpp"
#include "sponge/model.hpp"
#include "sponge/verify.hpp"

#include <string>
#include <string_view>

namespace sponge {

/// Parses {"bases": [...], "digits": [[...], ...]}. Malformed JSON raises
/// ParseError; digits of the wrong length, out of range or repeated raise the
/// matching model error with a "line L, column C" location.
Sponge parse_sponge_json(std::string_view text);
Sponge load_sponge(const std::string& path);

/// Parses a map from "i1,...,id" to "p/q" (optionally wrapped as
/// {"weights": {...}}). The weights must sum to exactly one.
BernoulliMeasure parse_measure_json(const Sponge& s, std::string_view text);
BernoulliMeasure load_measure(const Sponge& s, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// JSON serializers with fixed key order and "schema_version": 1.
std::string sponge_summary_json(const Sponge& s);
std::string dim_report_json(const DimReport& report);
std::string weights_json(const BernoulliMeasure& m);
std::string scan_report_json(const ScanReport& report);
std::string doubling_report_json(const DoublingReport& report);
std::string tangent_json(const TangentConvergence& result, const TangentMap& map, TangentMode mode);
std::string dichotomy_audit_json(const DichotomyAudit& audit);

/// "0,0,0;0,0,3" -> {(0,0,0), (0,0,3)}.
SymbolicWord parse_word(std::string_view text);

}  // namespace sponge
