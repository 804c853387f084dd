#include "cactl/report.hpp"

#include <cassert>

namespace cactl {

namespace {

using nlohmann::json;

json optional_u64(const std::optional<std::uint64_t>& value) {
    if (value) return *value;
    return nullptr;
}

json sweep_row_to_json(const SweepRow& row) {
    return json{
        {"n", row.n},
        {"vertices", row.vertices},
        {"scc_count", row.scc_count},
        {"regionally_controllable", row.regionally_controllable},
        {"period", optional_u64(row.period)},
        {"primitive", row.primitive},
        {"primitivity_index", optional_u64(row.primitivity_index)},
        {"index_capped", row.index_capped},
    };
}

} // namespace

json analysis_to_json(const AnalysisReport& report) {
    json results = json::array();
    for (const AnalysisRecord& record : report.records) {
        json entry = sweep_row_to_json(record.graph);
        if (record.trace) {
            entry["trace"] = json{
                {"n", record.trace->n},
                {"k", record.trace->k},
                {"block_count", record.trace->block_count},
                {"strict_transitive", record.trace->strict_transitive},
                {"essential_transitive", record.trace->essential_transitive},
                {"essential_empty", record.trace->essential_empty},
                {"mixing", record.trace->mixing},
                {"approx_equals_graph", record.trace->approx_equals_graph},
            };
        } else {
            entry["trace"] = nullptr;
        }
        results.push_back(std::move(entry));
    }
    json timings{{"total", report.total_ms}};
    timings["per_n"] = report.per_n_ms;
    return json{
        {"schema_version", schema_version},
        {"tool", "cactl"},
        {"tool_version", tool_version},
        {"command", "analyze"},
        {"rule", report.rule_spec},
        {"radius", report.radius},
        {"n_min", report.n_min},
        {"n_max", report.n_max},
        {"controllable_at_every_n_in_range", report.controllable_at_every_n_in_range},
        {"results", std::move(results)},
        {"blocking", json::array()}, // reserved; the blocking subcommand reports in text
        {"timings_ms", std::move(timings)},
    };
}

json survey_to_json(const SurveyTable& table) {
    json rows = json::array();
    for (const SurveyRow& row : table.rows) {
        rows.push_back(json{
            {"rule", row.rule_code},
            {"regionally_controllable", row.regionally_controllable},
            {"period", optional_u64(row.period)},
            {"primitive", row.primitive},
            {"primitivity_index", optional_u64(row.primitivity_index)},
            {"index_capped", row.index_capped},
        });
    }
    return json{
        {"schema_version", schema_version},
        {"tool", "cactl"},
        {"tool_version", tool_version},
        {"command", "survey"},
        {"radius", table.radius},
        {"n", table.n},
        {"rows", std::move(rows)},
        {"timings_ms", json{{"total", table.total_ms}}},
    };
}

namespace {

// Cell values of one rendered row: boundary cells show the control applied
// at that step; the final row has none and shows 0.
std::vector<int> rendered_cells(const TrajectoryRow& row, int radius, bool include_boundary) {
    std::vector<int> cells;
    const int n = row.word.length();
    cells.reserve(static_cast<std::size_t>(include_boundary ? n + 2 * radius : n));
    if (include_boundary) {
        for (int i = 0; i < radius; ++i)
            cells.push_back(row.control ? row.control->left.cell(i) : 0);
    }
    for (int i = 0; i < n; ++i) cells.push_back(row.word.cell(i));
    if (include_boundary) {
        for (int i = 0; i < radius; ++i)
            cells.push_back(row.control ? row.control->right.cell(i) : 0);
    }
    return cells;
}

} // namespace

std::string render_text_diagram(const Trajectory& trajectory, int radius, bool include_boundary) {
    static constexpr const char* glyph_one = "\xE2\x96\x88"; // █
    static constexpr const char* glyph_zero = "\xC2\xB7";    // ·
    std::string out;
    for (const TrajectoryRow& row : trajectory.rows) {
        for (int cell : rendered_cells(row, radius, include_boundary))
            out += cell ? glyph_one : glyph_zero;
        out += '\n';
    }
    return out;
}

std::string render_pbm_diagram(const Trajectory& trajectory, int radius, bool include_boundary) {
    const int width = include_boundary ? trajectory.region_length + 2 * radius
                                       : trajectory.region_length;
    const int height = static_cast<int>(trajectory.rows.size());
    std::string out = "P4\n" + std::to_string(width) + " " + std::to_string(height) + "\n";
    const int row_bytes = (width + 7) / 8;
    for (const TrajectoryRow& row : trajectory.rows) {
        const std::vector<int> cells = rendered_cells(row, radius, include_boundary);
        std::string packed(static_cast<std::size_t>(row_bytes), '\0');
        for (int i = 0; i < width; ++i)
            if (cells[static_cast<std::size_t>(i)])
                packed[static_cast<std::size_t>(i / 8)] |=
                    static_cast<char>(0x80u >> (i % 8));
        out += packed;
    }
    return out;
}

} // namespace cactl
