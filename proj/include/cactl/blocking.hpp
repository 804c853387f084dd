#pragma once

#include "cactl/rule.hpp"
#include "cactl/transition_graph.hpp"
#include "cactl/word.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cactl {

/// Is `word` p-blocking at `offset`: does fixing word on cells [0, len) pin
/// the width-p column at [offset, offset+p) for all time, whatever lies
/// outside? The for-all-time quantifier is undecidable by naive enumeration,
/// so the toolkit pairs an exact bounded refuter with a sound
/// over-approximate certifier; a residual Unknown is explicit.
struct BlockingQuery {
    RegionWord word;
    int p = 1;
    int offset = 0;
    int t_max = 6;
};

enum class BlockingStatus { certified, refuted, unknown };

enum class UnknownReason { none, horizon_exhausted, window_disagreement, iteration_cap };

/// Two full assignments of the dependence cone that disagree on the window
/// at `time`. Both words cover cells [span_lo, span_lo + width) and contain
/// the query word at [0, len).
struct BlockingWitness {
    int time = 0;
    int span_lo = 0;
    RegionWord context_a;
    RegionWord context_b;
    RegionWord window_a;
    RegionWord window_b;
};

struct CycleCertificate {
    int preperiod = 0;
    int cycle_length = 1;
};

struct BlockingVerdict {
    BlockingStatus status = BlockingStatus::unknown;
    UnknownReason unknown_reason = UnknownReason::none;
    int horizon_checked = 0;
    std::optional<BlockingWitness> witness;      // refuted
    std::optional<CycleCertificate> certificate; // certified
};

inline constexpr int default_context_bits_cap = 18;

/// Exact refutation search: for each t <= t_max enumerates every assignment
/// of the cells outside the word that the window's dependence cone can see.
/// Refuted verdicts carry a replayable witness; anything else is unknown at
/// the horizon.
BlockingVerdict check_p_blocking_bounded(const Rule& rule, const BlockingQuery& query,
                                         int context_bits_cap = default_context_bits_cap);

inline constexpr int default_strip_length_cap = 16;
inline constexpr int default_certify_iteration_cap = 4096;

/// Sound certification: iterates the strip-state over-approximation
/// R_{t+1} = { step(w, c) : w in R_t, any boundary pair c } over A^len until
/// the set sequence cycles. Certified iff every set on the tail and cycle
/// pins the window, which soundly implies the word is p-blocking.
BlockingVerdict certify_p_blocking(const Rule& rule, const BlockingQuery& query,
                                   int strip_length_cap = default_strip_length_cap,
                                   int iteration_cap = default_certify_iteration_cap);

struct VisiblyBlockingSet {
    int length = 0;
    std::vector<RegionWord> words; // ascending, deduplicated, nonempty

    VisiblyBlockingSet(int length, std::vector<RegionWord> words);
    static VisiblyBlockingSet all_words(int length);
    bool contains(const RegionWord& w) const;
    bool is_full() const { return words.size() == (1ull << length); }
};

struct Cond2Witness {
    int direction = +1; // +1: difference crossed to i >= len, -1: to i < 0
    int time = 0;
    int position = 0;
    int span_lo = 0; // both words cover cells [span_lo, span_lo + 2rt + 1)
    RegionWord context_a;
    RegionWord context_b;
};

struct VisiblyBlockingReport {
    int length = 0;
    int horizon = 0;
    bool cond1_ok = false; // exact: one-step window membership is preserved both ways
    std::optional<RegionWord> cond1_witness; // padded word of width len + 2r
    bool cond2_ok_to_horizon = false; // bounded: differences do not cross the word
    std::optional<Cond2Witness> cond2_witness;

    bool verified() const { return cond1_ok && cond2_ok_to_horizon; }
};

inline constexpr int default_enum_bits_cap = 26;

/// Condition 1 is decided exactly (finite dependence cone); condition 2 is
/// checked exactly per time step up to the horizon, in both directions.
VisiblyBlockingReport verify_visibly_blocking(const Rule& rule, const VisiblyBlockingSet& set,
                                              int t_max,
                                              int enum_bits_cap = default_enum_bits_cap);

struct NonControllability {
    bool all_words_case = false;
    int cond2_horizon = 0;
    // Case 1 evidence (W = all words): bounded eventual-periodicity hit.
    std::optional<EventualPeriodicity> periodicity;
    // Case 2 evidence: the member / non-member split the argument rests on.
    std::optional<std::pair<RegionWord, RegionWord>> split;
    struct GraphWitness {
        int n = 0;
        RegionWord from;
        RegionWord to;
    };
    // First G_n in [len, n_max] that is not strongly connected.
    std::optional<GraphWitness> graph_witness;
    // No graph witness found within bounds; the verdict stands on the
    // verified set alone.
    bool horizon_limited = false;
};

struct NonControllabilityOptions {
    int periodicity_m_max = 6;
    int periodicity_p_max = 6;
    std::uint64_t table_cap = default_table_cap;
    GraphLimits limits;
};

/// Composes the visibly-blocking implication: a verified set yields a
/// not-controllable verdict, corroborated per the two proof cases. Requires
/// a report from verify_visibly_blocking that passed both conditions.
NonControllability non_controllability_from_visibly_blocking(
    const Rule& rule, const VisiblyBlockingSet& set, const VisiblyBlockingReport& report,
    int n_max, const NonControllabilityOptions& options = {});

} // namespace cactl
