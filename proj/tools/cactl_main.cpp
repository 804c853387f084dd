#include "cactl/blocking.hpp"
#include "cactl/parallel.hpp"
#include "cactl/report.hpp"
#include "cactl/trace.hpp"
#include "cactl/transition_graph.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace cactl;

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw input_error("failed writing '" + path + "'");
}

void write_json(const std::string& path, const nlohmann::json& doc) {
    write_file(path, doc.dump(2) + "\n");
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string optional_index(const std::optional<std::uint64_t>& index, bool capped) {
    if (index) return std::to_string(*index);
    return capped ? "> cap" : "-";
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
    std::string rule_spec;
    int n_min = 1;
    int n_max = 1;
    int trace_k = 0; // 0 = no trace records
    std::string json_path;
    std::uint64_t index_cap = default_index_cap;
    int index_max_n = 12;
};

void run_analyze(const AnalyzeArgs& args) {
    const auto start = std::chrono::steady_clock::now();
    const Rule rule = parse_rule(args.rule_spec);
    if (args.n_min < 1 || args.n_max < args.n_min)
        throw input_error("need 1 <= n-min <= n-max");

    AnalysisReport report;
    report.rule_spec = args.rule_spec;
    report.radius = rule.radius();
    report.n_min = args.n_min;
    report.n_max = args.n_max;
    report.controllable_at_every_n_in_range = true;

    for (int n = args.n_min; n <= args.n_max; ++n) {
        const auto n_start = std::chrono::steady_clock::now();
        SweepOptions options;
        options.index_cap = args.index_cap;
        options.compute_index = n <= args.index_max_n;
        AnalysisRecord record;
        record.graph = sweep(rule, n, n, options).rows.front();
        if (args.trace_k > 0) {
            const TraceBlockLanguage lang = trace_blocks(rule, n, args.trace_k);
            const ApproximationSft sft = k_approximation(lang);
            const SftTransitivity transitivity = sft_is_transitive(sft);
            const SftMixing mixing = sft_is_mixing(sft);
            record.trace = TraceRecord{
                n,
                args.trace_k,
                lang.size(),
                transitivity.strict,
                transitivity.essential,
                transitivity.essential_empty,
                mixing.mixing,
                approximation_equals_graph(rule, n),
            };
        }
        report.controllable_at_every_n_in_range &= record.graph.regionally_controllable;
        report.records.push_back(std::move(record));
        report.per_n_ms.push_back(ms_since(n_start));
    }
    report.total_ms = ms_since(start);

    std::cout << "rule " << args.rule_spec << " (radius " << rule.radius() << ")\n";
    std::cout << "   n  vertices    scc  controllable  period  primitive  index\n";
    for (const AnalysisRecord& record : report.records) {
        const SweepRow& row = record.graph;
        const std::string period = row.period ? std::to_string(*row.period) : "-";
        const std::string index = optional_index(row.primitivity_index, row.index_capped);
        std::printf("  %2d  %8llu  %5u  %-12s  %6s  %-9s  %s\n", row.n,
                    static_cast<unsigned long long>(row.vertices), row.scc_count,
                    yes_no(row.regionally_controllable), period.c_str(), yes_no(row.primitive),
                    index.c_str());
        if (record.trace)
            std::cout << "     trace k=" << record.trace->k << ": " << record.trace->block_count
                      << " blocks, strict transitive " << yes_no(record.trace->strict_transitive)
                      << ", essential transitive " << yes_no(record.trace->essential_transitive)
                      << ", mixing " << yes_no(record.trace->mixing) << ", matches graph "
                      << yes_no(record.trace->approx_equals_graph) << "\n";
    }
    if (report.controllable_at_every_n_in_range)
        std::cout << "regionally controllable at every n in [" << args.n_min << ", " << args.n_max
                  << "] -- supported up to n = " << args.n_max
                  << " only, not a proof for larger n\n";
    else
        std::cout << "not regionally controllable at some n in [" << args.n_min << ", "
                  << args.n_max << "]\n";

    if (!args.json_path.empty()) write_json(args.json_path, analysis_to_json(report));
}

// ----------------------------------------------------------------- survey

struct SurveyArgs {
    int radius = 1;
    int n = 1;
    std::string rules = "all";
    std::string json_path;
    std::uint64_t index_cap = default_index_cap;
    int index_max_n = 8;
};

void run_survey(const SurveyArgs& args) {
    const auto start = std::chrono::steady_clock::now();
    if (args.radius != 1) throw input_error("survey enumerates the radius-1 family only");
    if (args.n < 1) throw input_error("need n >= 1");

    std::vector<unsigned> codes;
    if (args.rules == "all") {
        for (unsigned c = 0; c < 256; ++c) codes.push_back(c);
    } else {
        std::stringstream stream(args.rules);
        std::string item;
        while (std::getline(stream, item, ',')) {
            if (item.empty()) throw input_error("empty rule code in list");
            std::size_t used = 0;
            int code = 0;
            try {
                code = std::stoi(item, &used);
            } catch (const std::exception&) {
                throw input_error("malformed rule code '" + item + "'");
            }
            if (used != item.size() || code < 0 || code > 255)
                throw input_error("rule code '" + item + "' outside [0, 255]");
            codes.push_back(static_cast<unsigned>(code));
        }
        std::sort(codes.begin(), codes.end());
        codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
        if (codes.empty()) throw input_error("empty rule list");
    }

    SurveyTable table;
    table.radius = args.radius;
    table.n = args.n;
    table.rows.resize(codes.size());
    parallel_ranges(codes.size(), thread_hint(),
                    [&](std::uint64_t begin, std::uint64_t end, unsigned) {
                        for (std::uint64_t i = begin; i < end; ++i) {
                            const Rule rule = Rule::wolfram(codes[i]);
                            const TransitionGraph graph = build_graph(rule, args.n);
                            SurveyRow row;
                            row.rule_code = codes[i];
                            row.regionally_controllable =
                                is_regionally_controllable(graph).controllable;
                            if (row.regionally_controllable) {
                                row.period = graph_period(graph);
                                row.primitive = *row.period == 1;
                                if (row.primitive && args.n <= args.index_max_n) {
                                    bool capped = false;
                                    row.primitivity_index =
                                        primitivity_index(graph, args.index_cap, &capped);
                                    row.index_capped = capped;
                                }
                            }
                            table.rows[i] = row;
                        }
                    });
    table.total_ms = ms_since(start);

    std::cout << "survey of " << table.rows.size() << " radius-1 rules at n = " << args.n << "\n";
    std::cout << "  rule  controllable  period  primitive  index\n";
    for (const SurveyRow& row : table.rows) {
        const std::string period = row.period ? std::to_string(*row.period) : "-";
        const std::string index = optional_index(row.primitivity_index, row.index_capped);
        std::printf("  %4u  %-12s  %6s  %-9s  %s\n", row.rule_code,
                    yes_no(row.regionally_controllable), period.c_str(), yes_no(row.primitive),
                    index.c_str());
    }

    if (!args.json_path.empty()) write_json(args.json_path, survey_to_json(table));
}

// ------------------------------------------------------------------ steer

struct SteerArgs {
    std::string rule_spec;
    int n = 1;
    std::string from;
    std::string to;
    int exact_time = -1;
    std::string render; // "", "text", "image"
    std::string out_path;
    bool no_boundary = false;
};

void run_steer(const SteerArgs& args) {
    const Rule rule = parse_rule(args.rule_spec);
    const RegionWord s0 = RegionWord::from_string(args.from);
    const RegionWord sd = RegionWord::from_string(args.to);
    if (s0.length() != args.n || sd.length() != args.n)
        throw input_error("--from and --to must have length n = " + std::to_string(args.n));
    if (!args.render.empty() && args.render != "text" && args.render != "image")
        throw input_error("--render must be text or image");
    if (args.render == "image" && args.out_path.empty())
        throw input_error("--render image needs --out");

    const TransitionGraph graph = build_graph(rule, args.n);
    const std::optional<ControlPlan> plan =
        args.exact_time >= 0 ? synthesize_control_exact_time(graph, s0, sd, args.exact_time)
                             : synthesize_control(graph, s0, sd);

    std::cout << "rule " << args.rule_spec << ", n = " << args.n << ": steering " << s0.str()
              << " -> " << sd.str();
    if (args.exact_time >= 0) std::cout << " in exactly " << args.exact_time << " steps";
    std::cout << "\n";
    if (!plan) {
        std::cout << "result: UNREACHABLE\n";
        return;
    }

    const Trajectory trajectory = evolve_controlled(rule, s0, plan->steps);
    std::cout << "  initial            " << s0.str() << "\n";
    for (std::size_t t = 0; t + 1 < trajectory.rows.size(); ++t) {
        const ControlPair& control = *trajectory.rows[t].control;
        std::cout << "  step t = " << t << "  x = " << control.left.str() << "  y = "
                  << control.right.str() << "  -> " << trajectory.rows[t + 1].word.str() << "\n";
    }
    std::cout << "result: reached " << sd.str() << " at T = " << plan->horizon() << "\n";

    if (!args.render.empty()) {
        const bool boundary = !args.no_boundary;
        if (args.render == "text") {
            const std::string art = render_text_diagram(trajectory, rule.radius(), boundary);
            std::cout << art;
            if (!args.out_path.empty()) write_file(args.out_path, art);
        } else {
            write_file(args.out_path, render_pbm_diagram(trajectory, rule.radius(), boundary));
            std::cout << "wrote " << args.out_path << "\n";
        }
    }
}

// ------------------------------------------------------------------ trace

struct TraceArgs {
    std::string rule_spec;
    int n = 1;
    int k = 2;
    bool check_approx = false;
};

void run_trace(const TraceArgs& args) {
    const Rule rule = parse_rule(args.rule_spec);
    const TraceBlockLanguage lang = trace_blocks(rule, args.n, args.k);
    const ApproximationSft sft = k_approximation(lang);
    const SftTransitivity transitivity = sft_is_transitive(sft);
    const SftMixing mixing = sft_is_mixing(sft);

    std::cout << "rule " << args.rule_spec << ", width n = " << args.n << ", height k = " << args.k
              << ": " << lang.size() << " blocks\n";
    std::cout << "strict transitive: " << yes_no(transitivity.strict) << "\n";
    if (transitivity.essential_empty)
        std::cout << "essential transitive: empty subshift\n";
    else
        std::cout << "essential transitive: " << yes_no(transitivity.essential) << "\n";
    std::cout << "mixing: " << yes_no(mixing.mixing) << "\n";
    if (args.check_approx)
        std::cout << "2-approximation edge set equals transition graph: "
                  << yes_no(approximation_equals_graph(rule, args.n)) << "\n";
}

// --------------------------------------------------------------- blocking

struct BlockingArgs {
    std::string rule_spec;
    std::string word;
    int p = 1;
    int offset = 0;
    bool visibly = false;
    int length = 0;
    std::string set_spec;
    int t_max = 6;
    int n_max = 8;
};

void print_blocking_witness(const BlockingWitness& witness) {
    std::cout << "  witness at t = " << witness.time << " (cells [" << witness.span_lo << ", "
              << witness.span_lo + witness.context_a.length() << ")):\n";
    std::cout << "    context A " << witness.context_a.str() << " -> window "
              << witness.window_a.str() << "\n";
    std::cout << "    context B " << witness.context_b.str() << " -> window "
              << witness.window_b.str() << "\n";
}

void run_blocking_word(const Rule& rule, const BlockingArgs& args) {
    const BlockingQuery query{RegionWord::from_string(args.word), args.p, args.offset,
                              args.t_max};
    std::cout << "rule " << args.rule_spec << ", word " << args.word << ", p = " << args.p
              << ", offset = " << args.offset << ", horizon " << args.t_max << "\n";

    const BlockingVerdict bounded = check_p_blocking_bounded(rule, query);
    if (bounded.status == BlockingStatus::refuted) {
        std::cout << "verdict: REFUTED at t = " << bounded.witness->time << "\n";
        print_blocking_witness(*bounded.witness);
        return;
    }
    std::cout << "bounded check: no disagreement up to t = " << bounded.horizon_checked << "\n";

    const BlockingVerdict certified = certify_p_blocking(rule, query);
    if (certified.status == BlockingStatus::certified) {
        std::cout << "verdict: CERTIFIED p-blocking (reachable strip sets cycle after "
                  << certified.certificate->preperiod << " steps with cycle length "
                  << certified.certificate->cycle_length << ", window pinned throughout)\n";
        return;
    }
    std::cout << "verdict: UNKNOWN ("
              << (certified.unknown_reason == UnknownReason::window_disagreement
                      ? "over-approximate strip sets do not pin the window"
                      : "iteration cap reached")
              << ")\n";
}

void run_blocking_visibly(const Rule& rule, const BlockingArgs& args) {
    if (args.length < 1) throw input_error("--visibly needs --l >= 1");
    VisiblyBlockingSet set = [&] {
        if (args.set_spec == "all") return VisiblyBlockingSet::all_words(args.length);
        std::vector<RegionWord> words;
        std::stringstream stream(args.set_spec);
        std::string item;
        while (std::getline(stream, item, ',')) words.push_back(RegionWord::from_string(item));
        return VisiblyBlockingSet(args.length, std::move(words));
    }();

    std::cout << "rule " << args.rule_spec << ", l = " << args.length << ", |W| = "
              << set.words.size() << ", horizon " << args.t_max << "\n";
    const VisiblyBlockingReport report = verify_visibly_blocking(rule, set, args.t_max);
    if (report.cond1_ok)
        std::cout << "condition 1 (window membership preserved): PASS (exact)\n";
    else
        std::cout << "condition 1 (window membership preserved): FAIL, padded word "
                  << report.cond1_witness->str() << "\n";
    if (report.cond2_ok_to_horizon)
        std::cout << "condition 2 (differences cannot cross): PASS up to t = " << report.horizon
                  << "\n";
    else
        std::cout << "condition 2 (differences cannot cross): FAIL at t = "
                  << report.cond2_witness->time << ", position " << report.cond2_witness->position
                  << " (" << (report.cond2_witness->direction > 0 ? "right" : "left")
                  << " side)\n";
    if (!report.verified()) {
        std::cout << "verdict: set NOT verified visibly blocking\n";
        return;
    }

    std::cout << "verdict: visibly blocking (condition 2 to horizon t = " << report.horizon
              << ")\n";
    const NonControllability result =
        non_controllability_from_visibly_blocking(rule, set, report, args.n_max);
    std::cout << "=> NOT CONTROLLABLE\n";
    if (result.all_words_case) {
        std::cout << "   case: W contains all words of length " << set.length << "\n";
        if (result.periodicity)
            std::cout << "   eventual periodicity: F^(m+p') = F^m with m = "
                      << result.periodicity->preperiod << ", p' = " << result.periodicity->period
                      << "\n";
        else
            std::cout << "   eventual periodicity: not found within bounds\n";
    } else {
        std::cout << "   case: " << result.split->first.str() << " in W, "
                  << result.split->second.str() << " not in W\n";
    }
    if (result.graph_witness)
        std::cout << "   graph witness: G_" << result.graph_witness->n
                  << " is not strongly connected (" << result.graph_witness->to.str()
                  << " unreachable from " << result.graph_witness->from.str() << ")\n";
    else
        std::cout << "   graph witness: none up to n = " << args.n_max
                  << " (evidence horizon-limited)\n";
}

void run_blocking(const BlockingArgs& args) {
    const Rule rule = parse_rule(args.rule_spec);
    const bool word_mode = !args.word.empty();
    if (word_mode == args.visibly)
        throw input_error("blocking needs exactly one of --word or --visibly");
    if (word_mode)
        run_blocking_word(rule, args);
    else
        run_blocking_visibly(rule, args);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"regional controllability toolkit for 1D Boolean cellular automata"};
    app.require_subcommand(1);

    AnalyzeArgs analyze_args;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "build G_n and report controllability, period, primitivity per n");
    analyze->add_option("--rule", analyze_args.rule_spec, "rule spec")->required();
    analyze->add_option("--n-min", analyze_args.n_min, "smallest region length")->required();
    analyze->add_option("--n-max", analyze_args.n_max, "largest region length")->required();
    analyze->add_option("--trace-k", analyze_args.trace_k, "also report trace blocks of height k");
    analyze->add_option("--json", analyze_args.json_path, "write the JSON report here");
    analyze->add_option("--index-cap", analyze_args.index_cap, "primitivity index search cap");
    analyze->add_option("--index-max-n", analyze_args.index_max_n,
                        "skip index computation for larger n");

    SurveyArgs survey_args;
    CLI::App* survey = app.add_subcommand("survey", "one verdict row per rule of a family");
    survey->add_option("--radius", survey_args.radius, "family radius (only 1)");
    survey->add_option("--n", survey_args.n, "region length")->required();
    survey->add_option("--rules", survey_args.rules, "all or comma-separated codes");
    survey->add_option("--json", survey_args.json_path, "write the JSON table here");
    survey->add_option("--index-cap", survey_args.index_cap, "primitivity index search cap");
    survey->add_option("--index-max-n", survey_args.index_max_n,
                       "skip index computation for larger n");

    SteerArgs steer_args;
    CLI::App* steer = app.add_subcommand("steer", "synthesize a boundary control plan");
    steer->add_option("--rule", steer_args.rule_spec, "rule spec")->required();
    steer->add_option("--n", steer_args.n, "region length")->required();
    steer->add_option("--from", steer_args.from, "initial region word")->required();
    steer->add_option("--to", steer_args.to, "target region word")->required();
    steer->add_option("--exact-time", steer_args.exact_time, "require exactly this horizon")
        ->check(CLI::NonNegativeNumber);
    steer->add_option("--render", steer_args.render, "text or image");
    steer->add_option("--out", steer_args.out_path, "render output path");
    steer->add_flag("--no-boundary", steer_args.no_boundary,
                    "render the region only, without boundary cells");

    TraceArgs trace_args;
    CLI::App* trace = app.add_subcommand("trace", "trace block language and SFT verdicts");
    trace->add_option("--rule", trace_args.rule_spec, "rule spec")->required();
    trace->add_option("--n", trace_args.n, "window width")->required();
    trace->add_option("--k", trace_args.k, "block height")->required();
    trace->add_flag("--check-approx", trace_args.check_approx,
                    "compare the 2-approximation with the transition graph");

    BlockingArgs blocking_args;
    CLI::App* blocking = app.add_subcommand("blocking", "blocking-word decision procedures");
    blocking->add_option("--rule", blocking_args.rule_spec, "rule spec")->required();
    blocking->add_option("--word", blocking_args.word, "candidate blocking word");
    blocking->add_option("--p", blocking_args.p, "window width");
    blocking->add_option("--offset", blocking_args.offset, "window offset");
    blocking->add_flag("--visibly", blocking_args.visibly, "verify a visibly blocking set");
    blocking->add_option("--l", blocking_args.length, "set word length");
    blocking->add_option("--set", blocking_args.set_spec, "all or comma-separated words");
    blocking->add_option("--t-max", blocking_args.t_max, "verification horizon");
    blocking->add_option("--n-max", blocking_args.n_max, "graph witness search bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) run_analyze(analyze_args);
        if (survey->parsed()) run_survey(survey_args);
        if (steer->parsed()) run_steer(steer_args);
        if (trace->parsed()) run_trace(trace_args);
        if (blocking->parsed()) run_blocking(blocking_args);
        return 0;
    } catch (const resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
