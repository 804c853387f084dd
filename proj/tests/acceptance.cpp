// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include "cactl/blocking.hpp"
#include "cactl/trace.hpp"
#include "cactl/transition_graph.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace cactl;

namespace {

struct Criterion {
    std::string label;
    double time_limit_ms;
    std::function<bool(std::string&)> check;
};

RegionWord word(const char* text) { return RegionWord::from_string(text); }

bool fail(std::string& detail, const std::string& message) {
    detail = message;
    return false;
}

// 1. The worked boundary-control example: synthesis reaches the null word in
// at most three steps and the quoted control sequence reproduces the three
// intermediate rows exactly.
bool criterion_golden_example(std::string& detail) {
    const Rule rule = parse_rule("wolfram:90");
    const TransitionGraph graph = build_graph(rule, 6);
    const auto plan = synthesize_control(graph, word("011100"), word("000000"));
    if (!plan) return fail(detail, "no plan found");
    if (plan->horizon() > 3) return fail(detail, "plan longer than 3 steps");
    const Trajectory replay = evolve_controlled(rule, plan->initial, plan->steps);
    if (replay.rows.back().word != word("000000")) return fail(detail, "replay missed target");

    const std::vector<ControlPair> controls{
        ControlPair(word("0"), word("1")),
        ControlPair(word("1"), word("0")),
        ControlPair(word("1"), word("0")),
    };
    const Trajectory quoted = evolve_controlled(rule, word("011100"), controls);
    const std::vector<RegionWord> expected{word("011100"), word("110111"), word("010101"),
                                           word("000000")};
    for (std::size_t t = 0; t < expected.size(); ++t)
        if (quoted.rows[t].word != expected[t])
            return fail(detail, "row " + std::to_string(t) + " is " + quoted.rows[t].word.str() +
                                    ", expected " + expected[t].str());
    return true;
}

// 2. One-component criterion vs. brute-force transitive closure, all 256
// radius-1 rules, n = 1..6.
bool criterion_scc_oracle(std::string& detail) {
    for (unsigned code = 0; code < 256; ++code) {
        const Rule rule = Rule::wolfram(code);
        for (int n = 1; n <= 6; ++n) {
            const bool verdict = is_regionally_controllable(build_graph(rule, n)).controllable;
            const bool oracle_verdict =
                oracle::all_positive(oracle::transitive_closure(oracle::adjacency_matrix(rule, n)));
            if (verdict != oracle_verdict)
                return fail(detail, "rule " + std::to_string(code) + ", n = " +
                                        std::to_string(n) + " disagrees with the closure oracle");
        }
    }
    return true;
}

// 3. Primitivity (strongly connected + aperiodic) vs. existence of an
// all-positive Boolean power within the Wielandt bound, n = 1..4.
bool criterion_primitivity(std::string& detail) {
    for (unsigned code = 0; code < 256; ++code) {
        const Rule rule = Rule::wolfram(code);
        for (int n = 1; n <= 4; ++n) {
            const bool primitive = is_primitive(build_graph(rule, n)).primitive;
            const long long side = (1ll << n) - 1;
            const long long wielandt = side * side + 1;
            const bool power_positive =
                oracle::positivity_index(oracle::adjacency_matrix(rule, n), wielandt) >= 0;
            if (primitive != power_positive)
                return fail(detail, "rule " + std::to_string(code) + ", n = " +
                                        std::to_string(n) + " disagrees with the power oracle");
        }
    }
    return true;
}

// 4. Index of primitivity of the shift rule equals n for n = 1..8.
bool criterion_shift_index(std::string& detail) {
    const Rule shift = parse_rule("wolfram:170");
    for (int n = 1; n <= 8; ++n) {
        const auto index = primitivity_index(build_graph(shift, n));
        if (!index) return fail(detail, "index absent at n = " + std::to_string(n));
        if (*index != static_cast<std::uint64_t>(n))
            return fail(detail, "index at n = " + std::to_string(n) + " is " +
                                    std::to_string(*index));
        const long long oracle_index =
            oracle::positivity_index(oracle::adjacency_matrix(shift, n), 2 * n);
        if (oracle_index != static_cast<long long>(*index))
            return fail(detail, "oracle disagrees at n = " + std::to_string(n));
    }
    return true;
}

// 5. Edge sets of the trace 2-approximation and of G_n coincide for all 256
// rules, n = 1..4.
bool criterion_approximation_identity(std::string& detail) {
    for (unsigned code = 0; code < 256; ++code)
        for (int n = 1; n <= 4; ++n)
            if (!approximation_equals_graph(Rule::wolfram(code), n))
                return fail(detail, "rule " + std::to_string(code) + ", n = " +
                                        std::to_string(n) + " differs");
    return true;
}

// 6. Synthesis over randomized instances: plans replay, horizons match the
// layered-distance oracle, absence coincides with unreachability.
bool criterion_synthesis(std::string& detail) {
    std::mt19937 rng(20240617);
    for (int trial = 0; trial < 1000; ++trial) {
        const unsigned code = rng() % 256;
        const Rule rule = Rule::wolfram(code);
        const int n = 1 + static_cast<int>(rng() % 8);
        const TransitionGraph graph = build_graph(rule, n);
        const RegionWord s0(n, rng() & ((1ull << n) - 1));
        const RegionWord sd(n, rng() & ((1ull << n) - 1));
        const auto plan = synthesize_control(graph, s0, sd);
        const long long distance =
            oracle::layered_distance(oracle::adjacency_matrix(rule, n), s0.bits(), sd.bits());
        const std::string tag = "rule " + std::to_string(code) + ", n = " + std::to_string(n) +
                                ", " + s0.str() + " -> " + sd.str();
        if (!plan) {
            if (distance != -1) return fail(detail, tag + ": plan missing");
            continue;
        }
        if (distance != plan->horizon())
            return fail(detail, tag + ": horizon " + std::to_string(plan->horizon()) +
                                    " != oracle " + std::to_string(distance));
        if (evolve_controlled(rule, s0, plan->steps).rows.back().word != sd)
            return fail(detail, tag + ": replay missed");
    }
    return true;
}

// 7. The counterexample suite: identity and constant rules fail
// controllability with the stated certificates; the xor rule refutes its
// blocking query with a replaying witness.
bool criterion_counterexamples(std::string& detail) {
    const Rule identity = parse_rule("wolfram:204");
    for (int n = 1; n <= 6; ++n)
        if (is_regionally_controllable(build_graph(identity, n)).controllable)
            return fail(detail, "identity claimed controllable at n = " + std::to_string(n));
    if (check_eventually_periodic(identity, 3, 3) != EventualPeriodicity{0, 1})
        return fail(detail, "identity periodicity differs from (0, 1)");
    for (int len = 1; len <= 3; ++len)
        for (std::uint64_t bits = 0; bits < (1ull << len); ++bits)
            for (int offset = 0; offset < len; ++offset) {
                const BlockingQuery q{RegionWord(len, bits), 1, offset, 4};
                if (certify_p_blocking(identity, q).status != BlockingStatus::certified)
                    return fail(detail, "identity word not certified blocking");
            }
    const VisiblyBlockingSet all2 = VisiblyBlockingSet::all_words(2);
    const VisiblyBlockingReport identity_report = verify_visibly_blocking(identity, all2, 5);
    if (!identity_report.verified()) return fail(detail, "identity set not verified");
    const NonControllability identity_verdict =
        non_controllability_from_visibly_blocking(identity, all2, identity_report, 6);
    if (identity_verdict.periodicity != EventualPeriodicity{0, 1})
        return fail(detail, "identity case-1 evidence missing");
    if (!identity_verdict.graph_witness) return fail(detail, "identity graph witness missing");

    const Rule zero = parse_rule("wolfram:0");
    for (int n = 1; n <= 4; ++n)
        if (is_regionally_controllable(build_graph(zero, n)).controllable)
            return fail(detail, "constant rule claimed controllable");
    if (check_nilpotent_bounded(zero, 4) != Nilpotency{0, 1})
        return fail(detail, "constant rule nilpotency differs from (q=0, T=1)");

    const Rule xor_rule = parse_rule("wolfram:90");
    const BlockingQuery q{word("000"), 1, 1, 4};
    const BlockingVerdict refutation = check_p_blocking_bounded(xor_rule, q);
    if (refutation.status != BlockingStatus::refuted || refutation.witness->time != 2)
        return fail(detail, "xor refutation not at t = 2");
    const BlockingWitness& witness = *refutation.witness;
    std::string row_a = witness.context_a.str();
    std::string row_b = witness.context_b.str();
    for (int t = 0; t < witness.time; ++t) {
        row_a = oracle::step_free(xor_rule, row_a);
        row_b = oracle::step_free(xor_rule, row_b);
    }
    const int window_at = q.offset - (witness.span_lo + witness.time);
    if (row_a[static_cast<std::size_t>(window_at)] == row_b[static_cast<std::size_t>(window_at)])
        return fail(detail, "xor witness does not replay to a disagreement");
    return true;
}

// 8. Trace exactness and projection for all 256 rules, n <= 3, k <= 3.
bool criterion_trace_exactness(std::string& detail) {
    for (unsigned code = 0; code < 256; ++code) {
        const Rule rule = Rule::wolfram(code);
        for (int n = 1; n <= 3; ++n) {
            std::vector<TraceBlockLanguage> langs;
            for (int k = 1; k <= 3; ++k) langs.push_back(trace_blocks(rule, n, k));
            for (const TraceBlockLanguage& lang : langs) {
                for (const auto& [block, seed] : lang.blocks) {
                    std::string row = oracle::word_string(lang.seed_width, seed);
                    for (int t = 0; t < lang.k; ++t) {
                        const std::size_t offset =
                            static_cast<std::size_t>(rule.radius() * (lang.k - 1 - t));
                        if (oracle::word_bits(row.substr(offset, static_cast<std::size_t>(n))) !=
                            block[static_cast<std::size_t>(t)])
                            return fail(detail, "rule " + std::to_string(code) +
                                                    ": witness replay differs");
                        if (t + 1 < lang.k) row = oracle::step_free(rule, row);
                    }
                }
            }
            for (int k = 1; k <= 2; ++k) {
                const auto& lower = langs[static_cast<std::size_t>(k - 1)].blocks;
                for (const auto& [block, seed] : langs[static_cast<std::size_t>(k)].blocks) {
                    if (!lower.count(TraceBlock(block.begin(), block.end() - 1)) ||
                        !lower.count(TraceBlock(block.begin() + 1, block.end())))
                        return fail(detail,
                                    "rule " + std::to_string(code) + ": projection violated");
                }
            }
        }
    }
    return true;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"golden boundary-steering example", 1000.0, criterion_golden_example},
        {"controllability verdict vs. closure oracle (256 rules, n <= 6)", 60000.0,
         criterion_scc_oracle},
        {"primitivity vs. Boolean-power oracle (256 rules, n <= 4)", 60000.0,
         criterion_primitivity},
        {"index of primitivity of the shift rule (n <= 8)", 30000.0, criterion_shift_index},
        {"trace 2-approximation equals transition graph (256 rules, n <= 4)", 120000.0,
         criterion_approximation_identity},
        {"synthesis soundness and minimality (1000 randomized cases)", 60000.0,
         criterion_synthesis},
        {"counterexample suite (identity, constant, xor)", 60000.0, criterion_counterexamples},
        {"trace exactness and projection (256 rules, n <= 3, k <= 3)", 120000.0,
         criterion_trace_exactness},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].check(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        if (elapsed > criteria[i].time_limit_ms) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += "exceeded " + std::to_string(criteria[i].time_limit_ms) + " ms";
        }
        std::printf("criterion %zu [%s]: %s (%.0f ms)%s%s\n", i + 1, criteria[i].label.c_str(),
                    ok ? "PASS" : "FAIL", elapsed, detail.empty() ? "" : " -- ",
                    detail.c_str());
        if (!ok) ++failures;
    }
    std::printf("%zu criteria, %zu passed, %d failed\n", criteria.size(),
                criteria.size() - static_cast<std::size_t>(failures), failures);
    return failures == 0 ? 0 : 1;
}
