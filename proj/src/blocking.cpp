#include "cactl/blocking.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace cactl {

namespace {

void validate_query(const Rule& rule, const BlockingQuery& query) {
    (void)rule;
    const int len = query.word.length();
    if (len < 1) throw input_error("blocking word must be nonempty");
    if (query.p < 1) throw input_error("window width p must be >= 1");
    if (query.word.length() < query.p)
        throw input_error("blocking word must have length >= p");
    if (query.offset < 0 || query.offset + query.p > len)
        throw input_error("offset must satisfy 0 <= offset and offset + p <= |word|");
    if (query.t_max < 0) throw input_error("horizon must be >= 0");
}

std::uint64_t step_row_bits(const Rule& rule, std::uint64_t row, int width) {
    const int out_len = width - 2 * rule.radius();
    const std::uint64_t mask = (1ull << rule.diameter()) - 1;
    std::uint64_t out = 0;
    for (int i = 0; i < out_len; ++i)
        out = (out << 1) | rule.apply(static_cast<std::uint32_t>((row >> (out_len - 1 - i)) & mask));
    return out;
}

// Evolve `row` (covering [span_lo, span_hi)) t steps and extract the cells
// [window_lo, window_lo + p).
std::uint64_t window_after(const Rule& rule, std::uint64_t row, int span_lo, int span_hi, int t,
                           int window_lo, int p) {
    const int r = rule.radius();
    int width = span_hi - span_lo;
    for (int s = 0; s < t; ++s) {
        row = step_row_bits(rule, row, width);
        width -= 2 * r;
    }
    const int evolved_lo = span_lo + r * t;
    const int shift = (evolved_lo + width) - (window_lo + p);
    assert(shift >= 0 && window_lo >= evolved_lo);
    return (row >> shift) & ((1ull << p) - 1);
}

} // namespace

BlockingVerdict check_p_blocking_bounded(const Rule& rule, const BlockingQuery& query,
                                         int context_bits_cap) {
    validate_query(rule, query);
    const int r = rule.radius();
    const int len = query.word.length();
    const int k = query.offset;
    const int p = query.p;

    BlockingVerdict verdict;
    verdict.horizon_checked = query.t_max;
    for (int t = 0; t <= query.t_max; ++t) {
        const int span_lo = std::min(0, k - r * t);
        const int span_hi = std::max(len, k + p + r * t);
        const int left_bits = -span_lo;
        const int right_bits = span_hi - len;
        if (left_bits + right_bits > context_bits_cap)
            throw resource_error("blocking check at t = " + std::to_string(t) + " enumerates 2^" +
                                 std::to_string(left_bits + right_bits) + " contexts, cap is 2^" +
                                 std::to_string(context_bits_cap));
        if (span_hi - span_lo > RegionWord::max_length)
            throw resource_error("blocking context wider than " +
                                 std::to_string(RegionWord::max_length) + " cells");

        const std::uint64_t context_count = 1ull << (left_bits + right_bits);
        std::uint64_t first_row = 0, first_window = 0;
        bool have_first = false;
        for (std::uint64_t ctx = 0; ctx < context_count; ++ctx) {
            const std::uint64_t left = ctx >> right_bits;
            const std::uint64_t right = ctx & ((1ull << right_bits) - 1);
            const std::uint64_t row =
                (((left << len) | query.word.bits()) << right_bits) | right;
            const std::uint64_t window =
                window_after(rule, row, span_lo, span_hi, t, k, p);
            if (!have_first) {
                first_row = row;
                first_window = window;
                have_first = true;
            } else if (window != first_window) {
                verdict.status = BlockingStatus::refuted;
                verdict.witness = BlockingWitness{
                    t,
                    span_lo,
                    RegionWord(span_hi - span_lo, first_row),
                    RegionWord(span_hi - span_lo, row),
                    RegionWord(p, first_window),
                    RegionWord(p, window),
                };
                verdict.horizon_checked = t;
                return verdict;
            }
        }
    }
    verdict.status = BlockingStatus::unknown;
    verdict.unknown_reason = UnknownReason::horizon_exhausted;
    return verdict;
}

BlockingVerdict certify_p_blocking(const Rule& rule, const BlockingQuery& query,
                                   int strip_length_cap, int iteration_cap) {
    validate_query(rule, query);
    const int len = query.word.length();
    if (len > strip_length_cap)
        throw resource_error("certification over A^" + std::to_string(len) + " exceeds cap " +
                             std::to_string(strip_length_cap));
    const int r = rule.radius();
    const std::uint32_t controls = 1u << (2 * r);
    const std::uint64_t states = 1ull << len;
    const std::size_t words = static_cast<std::size_t>((states + 63) / 64);
    const int window_shift = len - query.offset - query.p;
    const std::uint64_t window_mask = (1ull << query.p) - 1;

    using StateSet = std::vector<std::uint64_t>;
    const auto window_unique = [&](const StateSet& set) {
        std::uint64_t seen_window = 0;
        bool have = false;
        for (std::uint64_t s = 0; s < states; ++s) {
            if (!((set[s / 64] >> (s % 64)) & 1u)) continue;
            const std::uint64_t win = (s >> window_shift) & window_mask;
            if (!have) {
                seen_window = win;
                have = true;
            } else if (win != seen_window) {
                return false;
            }
        }
        return true;
    };

    BlockingVerdict verdict;
    StateSet current(words, 0);
    current[query.word.bits() / 64] |= 1ull << (query.word.bits() % 64);

    std::map<StateSet, int> seen;
    for (int t = 0; t <= iteration_cap; ++t) {
        if (!window_unique(current)) {
            verdict.status = BlockingStatus::unknown;
            verdict.unknown_reason = UnknownReason::window_disagreement;
            verdict.horizon_checked = t;
            return verdict;
        }
        const auto [it, inserted] = seen.emplace(current, t);
        if (!inserted) {
            verdict.status = BlockingStatus::certified;
            verdict.certificate = CycleCertificate{it->second, t - it->second};
            verdict.horizon_checked = t;
            return verdict;
        }
        StateSet next(words, 0);
        for (std::uint64_t s = 0; s < states; ++s) {
            if (!((current[s / 64] >> (s % 64)) & 1u)) continue;
            const RegionWord w(len, s);
            for (std::uint32_t c = 0; c < controls; ++c) {
                const std::uint64_t img =
                    step_controlled(rule, w, ControlPair::from_index(r, c)).bits();
                next[img / 64] |= 1ull << (img % 64);
            }
        }
        current = std::move(next);
    }
    verdict.status = BlockingStatus::unknown;
    verdict.unknown_reason = UnknownReason::iteration_cap;
    verdict.horizon_checked = iteration_cap;
    return verdict;
}

VisiblyBlockingSet::VisiblyBlockingSet(int length, std::vector<RegionWord> member_words)
    : length(length), words(std::move(member_words)) {
    if (length < 1) throw input_error("visibly blocking sets need word length >= 1");
    if (length > RegionWord::max_length - 2)
        throw resource_error("visibly blocking word length exceeds " +
                             std::to_string(RegionWord::max_length - 2));
    if (words.empty()) throw input_error("a visibly blocking set must be nonempty");
    for (const auto& w : words)
        if (w.length() != length)
            throw input_error("all set members must have length " + std::to_string(length));
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
}

VisiblyBlockingSet VisiblyBlockingSet::all_words(int length) {
    if (length < 1 || length > 20)
        throw input_error("the full word set is supported for lengths in [1, 20]");
    std::vector<RegionWord> words;
    words.reserve(1ull << length);
    for (std::uint64_t b = 0; b < (1ull << length); ++b) words.emplace_back(length, b);
    return VisiblyBlockingSet(length, std::move(words));
}

bool VisiblyBlockingSet::contains(const RegionWord& w) const {
    return std::binary_search(words.begin(), words.end(), w);
}

namespace {

// The value F^t(s)_position where `row` covers exactly the dependence window
// [position - rt, position + rt].
std::uint64_t cell_after(const Rule& rule, std::uint64_t row, int t) {
    int width = 2 * rule.radius() * t + 1;
    for (int s = 0; s < t; ++s) {
        row = step_row_bits(rule, row, width);
        width -= 2 * rule.radius();
    }
    return row & 1u;
}

} // namespace

VisiblyBlockingReport verify_visibly_blocking(const Rule& rule, const VisiblyBlockingSet& set,
                                              int t_max, int enum_bits_cap) {
    if (t_max < 0) throw input_error("horizon must be >= 0");
    const int r = rule.radius();
    const int len = set.length;

    VisiblyBlockingReport report;
    report.length = len;
    report.horizon = t_max;

    // Condition 1, exact: the padded width len + 2r covers the full
    // dependence cone of the one-step window. The cap also bounds the
    // membership bitset below.
    if (len + 2 * r > enum_bits_cap)
        throw resource_error("condition 1 enumerates 2^" + std::to_string(len + 2 * r) +
                             " padded words, cap is 2^" + std::to_string(enum_bits_cap));

    // Membership bitset over A^len.
    std::vector<std::uint64_t> member((1ull << len) / 64 + 1, 0);
    for (const auto& w : set.words) member[w.bits() / 64] |= 1ull << (w.bits() % 64);
    const auto in_set = [&](std::uint64_t bits) {
        return ((member[bits / 64] >> (bits % 64)) & 1u) != 0;
    };
    report.cond1_ok = true;
    const std::uint64_t padded_count = 1ull << (len + 2 * r);
    for (std::uint64_t padded = 0; padded < padded_count; ++padded) {
        const std::uint64_t mid = (padded >> r) & ((1ull << len) - 1);
        const std::uint64_t img = step_free(rule, RegionWord(len + 2 * r, padded)).bits();
        if (in_set(mid) != in_set(img)) {
            report.cond1_ok = false;
            report.cond1_witness = RegionWord(len + 2 * r, padded);
            break;
        }
    }

    // Condition 2, exact per time step to the horizon. The full dependence
    // window of one output cell at time t has 2rt + 1 cells, so each (t, i)
    // case enumerates at most 2^(2rt+1) assignments.
    if (2 * r * t_max + 1 > enum_bits_cap)
        throw resource_error("condition 2 at horizon " + std::to_string(t_max) +
                             " enumerates 2^" + std::to_string(2 * r * t_max + 1) +
                             " windows, cap is 2^" + std::to_string(enum_bits_cap));
    report.cond2_ok_to_horizon = true;
    for (int direction : {+1, -1}) {
        for (int t = 1; t <= t_max && report.cond2_ok_to_horizon; ++t) {
            const int rt = r * t;
            // Output positions whose dependence window reaches the free side.
            // Right direction: i in [len, rt); left direction: i in [len-rt, 0).
            const int i_begin = direction > 0 ? len : len - rt;
            const int i_end = direction > 0 ? rt : 0;
            for (int i = i_begin; i < i_end && report.cond2_ok_to_horizon; ++i) {
                const int span_lo = i - rt;
                const int span_hi = i + rt + 1;
                // Cells < 0 are free on the right-direction check (the two
                // configurations may differ there); cells >= len are free on
                // the left-direction check. The rest is shared.
                const int free_lo_begin = span_lo;
                const int free_lo_end = std::min(0, span_hi);
                const int free_hi_begin = std::max(len, span_lo);
                const int free_hi_end = span_hi;
                const int vary_bits = direction > 0 ? (free_lo_end - free_lo_begin)
                                                    : (free_hi_end - free_hi_begin);
                const int shared_bits = direction > 0 ? (free_hi_end - free_hi_begin)
                                                      : (free_lo_end - free_lo_begin);
                if (vary_bits <= 0) continue;
                for (const RegionWord& w : set.words) {
                    for (std::uint64_t shared = 0; shared < (1ull << shared_bits); ++shared) {
                        std::uint64_t first_row = 0, first_cell = 0;
                        bool have = false;
                        for (std::uint64_t vary = 0; vary < (1ull << vary_bits); ++vary) {
                            const std::uint64_t lo = direction > 0 ? vary : shared;
                            const std::uint64_t hi = direction > 0 ? shared : vary;
                            // Assemble [span_lo, span_hi): lo . w . hi,
                            // clipped to the span.
                            std::uint64_t row = lo;
                            int have_cells = free_lo_end - free_lo_begin;
                            const int word_take_begin = std::max(0, span_lo) - 0;
                            const int word_take_end = std::min(len, span_hi) - 0;
                            const int word_cells = word_take_end - word_take_begin;
                            if (word_cells > 0) {
                                const std::uint64_t part =
                                    word_cells == len
                                        ? w.bits()
                                        : w.slice(word_take_begin, word_cells).bits();
                                row = (row << word_cells) | part;
                                have_cells += word_cells;
                            }
                            const int hi_cells = free_hi_end - free_hi_begin;
                            if (hi_cells > 0) {
                                row = (row << hi_cells) | hi;
                                have_cells += hi_cells;
                            }
                            assert(have_cells == span_hi - span_lo);
                            const std::uint64_t cell = cell_after(rule, row, t);
                            if (!have) {
                                first_row = row;
                                first_cell = cell;
                                have = true;
                            } else if (cell != first_cell) {
                                report.cond2_ok_to_horizon = false;
                                report.cond2_witness =
                                    Cond2Witness{direction,
                                                 t,
                                                 i,
                                                 span_lo,
                                                 RegionWord(span_hi - span_lo, first_row),
                                                 RegionWord(span_hi - span_lo, row)};
                                break;
                            }
                        }
                        if (!report.cond2_ok_to_horizon) break;
                    }
                    if (!report.cond2_ok_to_horizon) break;
                }
            }
        }
        if (!report.cond2_ok_to_horizon) break;
    }
    return report;
}

NonControllability non_controllability_from_visibly_blocking(
    const Rule& rule, const VisiblyBlockingSet& set, const VisiblyBlockingReport& report,
    int n_max, const NonControllabilityOptions& options) {
    if (!report.verified())
        throw precondition_error(
            "non-controllability composition needs a set that passed verification");
    if (report.length != set.length)
        throw precondition_error("report and set lengths disagree");

    NonControllability result;
    result.cond2_horizon = report.horizon;
    result.all_words_case = set.is_full();

    if (result.all_words_case) {
        // Every sufficiently long word blocks, so the rule must be
        // eventually periodic; search within the table cap.
        int bound = 0;
        while (2 * rule.radius() * (bound + 1) + 1 < 63 &&
               (1ull << (2 * rule.radius() * (bound + 1) + 1)) <= options.table_cap)
            ++bound;
        const int m_max = std::min(options.periodicity_m_max, std::max(0, bound - 1));
        const int p_max = std::min(options.periodicity_p_max, std::max(1, bound - m_max));
        result.periodicity = check_eventually_periodic(rule, m_max, p_max, options.table_cap);
    } else {
        RegionWord member = set.words.front();
        std::optional<RegionWord> nonmember;
        for (std::uint64_t b = 0; b < (1ull << set.length); ++b) {
            RegionWord w(set.length, b);
            if (!set.contains(w)) {
                nonmember = w;
                break;
            }
        }
        assert(nonmember.has_value());
        result.split = {member, *nonmember};
    }

    // Corroborating graph witness in both cases: some G_n in [len, n_max]
    // must fail strong connectivity, or the evidence is horizon-limited.
    for (int n = std::max(1, set.length); n <= n_max; ++n) {
        if (n > options.limits.max_n) break;
        const TransitionGraph graph = build_graph(rule, n, options.limits);
        const RegionalControllability verdict = is_regionally_controllable(graph);
        if (!verdict.controllable) {
            result.graph_witness = NonControllability::GraphWitness{
                n, verdict.witness->first, verdict.witness->second};
            break;
        }
    }
    result.horizon_limited = !result.graph_witness.has_value();
    return result;
}

} // namespace cactl
