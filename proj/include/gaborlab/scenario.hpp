#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaborlab/gabor.hpp"
#include "gaborlab/group.hpp"

namespace gaborlab {

// Tagged window specification from a scenario config.
struct WindowSpec {
    enum class Kind { Explicit, Delta, Constant, Random, Bspline };
    Kind kind = Kind::Delta;
    std::vector<double> re, im;                 // explicit
    std::uint64_t seed = 1;                     // random
    std::size_t order = 1;                      // bspline
    std::vector<std::vector<double>> factors;   // bspline (empty -> all-ones)
};

struct ScenarioConfig {
    std::vector<Index> group_factors;
    std::vector<std::vector<Index>> lambda_generators;
    std::vector<std::vector<Index>> gamma_generators;
    WindowSpec window;
    std::optional<WindowSpec> dual_window;
    std::vector<std::string> checks; // empty -> all applicable
    double tolerance = kDefaultTolerance;
    Index max_order = kDefaultMaxOrder;
    bool dump_spectral_field = false;
    nlohmann::json echo; // normalized config for the report
};

struct CheckResult {
    std::string name;
    std::string status; // "pass" | "fail" | "skip"
    nlohmann::json detail;
};

struct ReportDocument {
    std::string schema_version = "1.0";
    nlohmann::json scenario;
    double tolerance = kDefaultTolerance;
    std::vector<CheckResult> checks;
    nlohmann::json bounds;
    nlohmann::json flags;
    nlohmann::json residuals;
    nlohmann::json calderon;
    nlohmann::json spectral; // present only when dump_spectral_field is set
    double timing_ms = 0.0;  // text output only; excluded from JSON for determinism
    bool all_passed = true;

    nlohmann::json to_json() const;
    std::string to_text() const;
};

// The canonical check order; "all checks" means exactly this list.
const std::vector<std::string>& known_checks();

// Parses and validates a JSON scenario config.  Errors carry the JSON path of
// the offending field and map to the invalid-input (exit 2) class.
ScenarioConfig parse_config(const std::string& text);

// Materialize the window described by the config on the given group.
Signal realize_window(const WindowSpec& spec, const FiniteAbelianGroup& g,
                      const Subgroup& lambda);

ReportDocument run_scenario(const ScenarioConfig& config);

// format: "json" or "text"; empty path writes to stdout.
void emit_report(const ReportDocument& doc, const std::string& format,
                 const std::string& path);

// Structural validation of a report document against the shipped schema's
// required fields; used by tests and round-trip checks.
bool validate_report_json(const nlohmann::json& doc, std::string* error = nullptr);

// Density scan: all subgroup pairs (Lambda, Gamma) of the group, with a seeded
// random window; one CSV row per pair:
//   lambda_order,gamma_order,p,q,A,B,is_frame
std::string scan_csv(const std::vector<Index>& group_factors, std::size_t max_subgroups,
                     std::uint64_t window_seed, Index max_order = kDefaultMaxOrder);

} // namespace gaborlab
