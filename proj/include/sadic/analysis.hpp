#pragma once

#include <map>

#include "sadic/constructions.hpp"

namespace sadic {

class AnalysisError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct PairFixpointResult {
    std::set<Word> pairs;
    bool converged = false;
    int seed_depth = 0;
};

// Allowed 2-letter words at the given level, by monotone downward
// propagation from seeds of in-image pairs at increasing depths.
PairFixpointResult pair_fixpoint(const DirectiveSequence& t, int level, int budget = 10);

// Exact set of allowed words of length m at the given level.
std::set<Word> language(const DirectiveSequence& t, int m, int level = 0, int pair_budget = 10);

// Membership test for long words (search inside deep composed image pairs).
bool word_allowed(const DirectiveSequence& t, const Word& w, int level = 0,
                  int pair_budget = 10);

struct ComplexityTable {
    std::vector<long long> p;  // p[m], m = 0..m_max
    std::vector<double> h;     // h[m] = ln p(m) / m, h[0] = 0
};
ComplexityTable complexity_table(const DirectiveSequence& t, int m_max, int level = 0);

struct RSWordInfo {
    Word word;
    std::vector<Letter> followers;
};

struct StabilizedBranch {
    Word word;                      // the stabilized suffix, length m_max - delta
    Word witness;                   // an RS word of length m_max carrying it
    std::vector<Letter> followers;  // follower set of the witness
    std::set<int> degrees;          // degrees seen across the whole window
};

struct RightSpecialReport {
    int level = 0, m_max = 0, delta = 0;
    std::vector<long long> p;          // p[m], m = 0..m_max+1
    std::vector<long long> rs_count;   // |RS(m)|, m = 0..m_max
    std::vector<long long> rs_excess;  // sum over RS(m) of (deg - 1)
    bool identity_ok = true;           // p(m+1) - p(m) == rs_excess[m] wherever measured
    int identity_checked_to = 0;
    std::vector<std::vector<RSWordInfo>> window;  // RS(m) for m in [m_max-delta, m_max]
    std::vector<StabilizedBranch> stabilized;
    bool pairs_converged = true;
};

RightSpecialReport right_special_report(const DirectiveSequence& t, int m_max, int delta,
                                        int level = 0, bool full_identity_scan = true);

// Positioned finite word: letters occupy [start, start + size).
struct PositionedWord {
    Word letters;
    long long start = 0;
};

struct DesubResult {
    Word letters;          // recovered word at the target level
    size_t zero_index = 0;  // index of the letter whose image covers position 0
    long long offset_r = 0;  // offset of position 0 inside that letter's image
};

// Marker-guided desubstitution (hat lookup at level 0, cut markers above).
// Requires a sequence whose images carry the exact cut marker, i.e. one that
// passes check_pk or check_pinf.
DesubResult desubstitute_window(const DirectiveSequence& t, const PositionedWord& w,
                                int to_level);

struct AsymptoticPairWindow {
    int component = 0;
    int level = 0;
    long long offset = 0;  // alpha_{i,n} < 0; windows start there
    Word x_window, y_window;
};

// The nested cylinder windows realising asymptotic pair i at depth n.
// k, when nonnegative, bounds the admissible component index.
AsymptoticPairWindow asymptotic_pair_windows(const DirectiveSequence& t, int component,
                                             int level, int k = -1);

// One checked level of a bifurcation branch pulled up through the directive.
struct LadderStep {
    int level = 0;  // >= 1
    int signal = 0;
    std::vector<Letter> followers;
    bool context_ok = true;    // mandated predecessor context visible and intact
    bool bound_ok = true;      // signal index within the admissible range
    bool followers_ok = true;  // follower set is {v_i, v_{i+1}}
};

// A right-special branch desubstituted level by level. A determined context
// failure marks the branch as a finite transient alignment rather than the
// shadow of an asymptotic component; context-passing steps must satisfy the
// signal bound and follower form.
struct BranchLadder {
    Word suffix;  // stabilized suffix the branch was selected by
    std::vector<LadderStep> steps;
    bool is_component = true;
    std::vector<std::string> violations;
    int component_signal = 0;  // signal at the first checked level, 0 if none
};

BranchLadder trace_branch(const DirectiveSequence& t, std::optional<int> k, int start_level,
                          const Word& window, const std::vector<Letter>& followers,
                          int max_level);

// Branch census of a level-0 right-special report: every stabilized branch
// is traced; components are counted by distinct signal classes, since the
// signal class of an asymptotic bifurcation determines its component.
struct ComponentCensus {
    std::vector<BranchLadder> branches;
    std::set<int> component_signals;
    long long component_count = 0;
    bool signal_violations = false;
};

ComponentCensus asymptotic_component_census(const DirectiveSequence& t,
                                            const RightSpecialReport& rep,
                                            std::optional<int> k, int max_level = 8);

struct BranchAudit {
    Word stabilized_suffix;
    int signal_index = 0;
    std::vector<Letter> followers;
    bool follower_pair_ok = false;
    bool predecessor_ok = true;
    Word predecessor_context;    // observed tail before the bifurcation
    bool transient = false;      // determined context failure somewhere
    int next_signal_index = -1;  // one level up, -1 unresolved
    std::vector<Letter> next_followers;
};

struct LevelAudit {
    int level = 0;
    int m_used = 0;
    int delta_used = 0;
    std::vector<BranchAudit> branches;
};

struct SignalAudit {
    bool pk = true;
    int k = 0;  // 0 in the countable mode
    std::vector<LevelAudit> levels;
    std::vector<std::string> counterexamples;
    bool all_ok = true;
    bool stabilization_ok = true;
};

// Audits every stabilized bifurcation branch at levels 0..level_max: signal
// index bounds, follower pairs, mandated predecessor context, and the
// one-step desubstitution links between consecutive levels. k = nullopt
// selects the countable mode.
SignalAudit signal_audit(const DirectiveSequence& t, std::optional<int> k, int level_max,
                         int m_cap = 4000);

}  // namespace sadic
