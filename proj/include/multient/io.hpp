#pragma once

// File formats. Every file starts with the line "# multient v1"; readers
// skip leading '#' lines.
//
// StateFile: {"n": 4, "d": 2, "amplitudes": [[re, im], ...]} with d^n
// entries in the basis order of PureState. Amplitudes are written with
// round-trip precision; measure values with 12 significant digits.

#include <iosfwd>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "multient/measures.hpp"
#include "multient/state.hpp"

namespace multient {

inline constexpr const char* kFormatLine = "# multient v1";
inline constexpr const char* kFormatTag = "multient v1";

// Value rounded to 12 significant digits (what the JSON writer prints).
double round12(double v);
// 12-significant-digit text for CSV cells.
std::string fmt12(double v);

// Throws InputError on malformed JSON, wrong amplitude count (the message
// names the expected length), NaN/Inf, or a zero vector.
PureState parse_state_json(const std::string& text);
PureState read_state_file(const std::string& path);

nlohmann::json state_json(const PureState& state);
std::string state_file_text(const PureState& state);

// Throws InputError if the file cannot be opened for writing.
void write_text_file(const std::string& path, const std::string& text);

// "1,2" style key, 1-based party labels.
std::string party_key(const PartySet& parties);

// Report restricted to the requested measures (gme_ame, scott, polygon);
// purities and flags are always present.
nlohmann::json report_json(const MeasureReport& report, const std::set<std::string>& measures);

}  // namespace multient
