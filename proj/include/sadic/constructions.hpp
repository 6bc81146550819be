#pragma once

#include <functional>
#include <optional>

#include "sadic/directive.hpp"

namespace sadic {

struct AmplifyOptions {
    // Size floor of derived level n is max(n+1+size_slack, k+2, |V_n|); the
    // P_inf recipe needs level n strictly larger than n+1, hence slack 1.
    int size_slack = 0;
    int min_levels = 0;   // fail if fewer amplified levels fit the window
};

struct AmplifyResult {
    BratteliDiagram derived;
    IntertwiningCertificate cert;
};

class ConstructionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Telescope-then-vertex-copy-split realisation of a diagram with
// |V'_n| > max(n,k) and entries of A'_n >= max(|V'_{n+1}|, k+2), certified
// against the input by an exact intertwining factorisation.
AmplifyResult amplify_diagram(const BratteliDiagram& d, int k, AmplifyOptions opts = {});

// Interior arrangement of the non-mandated letters of an order word.
//   AscendingBlocks  v_1^a v_2^b ... with all v_m copies last
//   Interleaved      repetition-poor shuffle; only the mandated prefix
//                    squares survive as repeated factors
enum class InteriorStyle { AscendingBlocks, Interleaved };

OrderedBratteliDiagram assign_pk_ordering(const BratteliDiagram& d, int k,
                                          InteriorStyle style = InteriorStyle::AscendingBlocks);
OrderedBratteliDiagram assign_pinf_ordering(const BratteliDiagram& d,
                                            InteriorStyle style = InteriorStyle::AscendingBlocks);

DirectiveSequence toeplitz_morphisms(const BratteliDiagram& d, int k);

bool check_equal_row_sums(const BratteliDiagram& d);

struct ImageDecomposition {
    int letter = 0;
    Word prefix;     // the mandated prefix
    Word interior;
    Letter suffix = 0;
};

struct PkWitness {
    int k = 0;  // 0 marks a P_inf witness (distinguished count = level index)
    std::vector<std::vector<ImageDecomposition>> levels;  // levels[n-1] for tau_n
};

struct PkCheckResult {
    std::optional<PkWitness> witness;
    std::string failure;
    int level = -1;
    int letter = -1;
    int clause = 0;  // 1..4 per the defining conditions; 0 = structural
    bool ok() const { return witness.has_value(); }
};

PkCheckResult check_pk(const DirectiveSequence& t, int k, int levels_to_check = -1);
PkCheckResult check_pinf(const DirectiveSequence& t, int levels_to_check = -1);

// Subexponential-complexity family.
struct GrowthFunction {
    std::string name;
    std::function<double(double)> eval;
};
GrowthFunction growth_pow2_sqrt();
GrowthFunction growth_poly(double degree);
GrowthFunction growth_table(const std::vector<std::pair<long long, double>>& table);

struct SubexpLevel {
    int level = 0;       // n >= 1
    long long alpha = 0;
    long long length = 0;  // common image length L_n
    Word cover_word;       // interior word of letter 1, covers all alpha-words
};

struct SubexpSpec {
    long long l0 = 3;
    std::vector<SubexpLevel> levels;
};

struct SubexpFamily {
    DirectiveSequence directive;
    SubexpSpec spec;
};

SubexpFamily build_subexp_family(const GrowthFunction& g, int levels,
                                 long long alpha_cap = 64,
                                 long long length_cap = 50'000'000);

// Linear word over an alphabet of the given size containing every length-n
// word exactly once cyclically (de Bruijn sequence plus wrap-around).
std::vector<int> de_bruijn_word(int alphabet, int order);

// Deterministic repetition-poor arrangement used by the Interleaved style;
// exposed for tests. counts are per-letter multiplicities, prev seeds the
// adjacency constraint, and (marker -> 1) transitions are forbidden.
Word interleave_counts(std::vector<long long> counts, Letter prev, Letter marker);

}  // namespace sadic
