#pragma once

#include "cactl/blocking.hpp"
#include "cactl/trace.hpp"
#include "cactl/transition_graph.hpp"
#include "cactl/word.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cactl {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr int schema_version = 1;

struct TraceRecord {
    int n = 0;
    int k = 0;
    std::uint64_t block_count = 0;
    bool strict_transitive = false;
    bool essential_transitive = false;
    bool essential_empty = false;
    bool mixing = false;
    bool approx_equals_graph = false;
};

struct AnalysisRecord {
    SweepRow graph;
    std::optional<TraceRecord> trace;
};

/// Everything `analyze` reports for one rule over a range of region lengths.
/// Serialization is stable: identical inputs give identical JSON apart from
/// the timing fields, which live under the single key "timings_ms".
struct AnalysisReport {
    std::string rule_spec;
    int radius = 0;
    int n_min = 0;
    int n_max = 0;
    bool controllable_at_every_n_in_range = false;
    std::vector<AnalysisRecord> records;
    double total_ms = 0.0;
    std::vector<double> per_n_ms;
};

struct SurveyRow {
    unsigned rule_code = 0;
    bool regionally_controllable = false;
    std::optional<std::uint64_t> period;
    bool primitive = false;
    std::optional<std::uint64_t> primitivity_index;
    bool index_capped = false;
};

struct SurveyTable {
    int radius = 1;
    int n = 0;
    std::vector<SurveyRow> rows; // ascending rule code, each rule once
    double total_ms = 0.0;
};

nlohmann::json analysis_to_json(const AnalysisReport& report);
nlohmann::json survey_to_json(const SurveyTable& table);

/// Text art: one line per time step, '█' for 1 and '·' for 0. With the
/// boundary included, each line is x^t . w^t . y^t; the final row has no
/// control and renders its boundary cells as '·'.
std::string render_text_diagram(const Trajectory& trajectory, int radius, bool include_boundary);

/// Binary portable bitmap (P4), one pixel per cell, top row = time 0,
/// 1-cells black. Boundary handling matches the text renderer.
std::string render_pbm_diagram(const Trajectory& trajectory, int radius, bool include_boundary);

} // namespace cactl
