#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stabchamber/chambers.hpp"
#include "stabchamber/configuration.hpp"
#include "stabchamber/stability.hpp"

namespace stabchamber::cli {

inline constexpr const char* kEngineVersion = "0.1.0";

/// Exit-code contract of the command-line tool.
enum ExitCode : int { kOk = 0, kDomainFailure = 1, kInputFailure = 2 };

/// Parsed configuration file:
///   {"n": 3, "on": {"1": [3], "2": [3]},
///    "extra_curves": [[1, -1, -1, -1]], "labels": {"1": "p"}}
struct ConfigDocument {
  int n = 0;
  std::map<int, std::vector<int>> on;
  std::vector<std::vector<long>> extra_curves;
  std::map<int, std::string> labels;

  BlowUpConfig to_config() const;
};

/// Throws ParseError on malformed documents (wrong types, indices outside
/// 1..n, curve vectors of the wrong length).
ConfigDocument parse_config(const nlohmann::json& doc);
ConfigDocument parse_config_text(std::string_view text);

/// Space- or comma-separated rationals; ParseError unless exactly n + 1.
NSClass parse_class(std::string_view text, int n);
/// Space- or comma-separated indices, "{}" or "" for the empty set.
ContractionSet parse_set(std::string_view text);

/// Name of the bundled example a configuration matches, if any.
std::optional<std::string> bundled_example_name(const BlowUpConfig& cfg);

/// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

// JSON encoders shared by the CLI, the acceptance artifacts and the tests.
nlohmann::ordered_json to_json(const Rational& q);
nlohmann::ordered_json to_json(const NSClass& c);
nlohmann::ordered_json to_json(const ContractionSet& s);
nlohmann::ordered_json to_json(const ChernCharacter& ch);
nlohmann::ordered_json to_json(const Generator& g);
nlohmann::ordered_json to_json(const WallRef& w);
nlohmann::ordered_json to_json(const Wall& w);
nlohmann::ordered_json to_json(const SurfaceDescriptor& s);
nlohmann::ordered_json to_json(const LocateResult& r);
nlohmann::ordered_json to_json(const ModuliReport& r);
nlohmann::ordered_json to_json(const SupportReport& r);

nlohmann::ordered_json contractions_payload(const BlowUpConfig& cfg);
nlohmann::ordered_json graph_payload(const BlowUpConfig& cfg, const Rational& eps);
std::string graph_dot(const BlowUpConfig& cfg, const Rational& eps);

/// SVG picture of a slice: one fill per chamber, wall traces on top and a
/// legend naming each target surface. Coordinates use 6 decimals.
std::string slice_svg(const BlowUpConfig& cfg, const SliceMap& map,
                      const std::vector<WallTrace>& traces);

/// Runs the tool with argv-style arguments (args[0] is the program name).
/// The JSON report goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stabchamber::cli
