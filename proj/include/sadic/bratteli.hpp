#pragma once

#include <optional>
#include <utility>

#include "sadic/core_words.hpp"

namespace sadic {

// Finite prefix of a Bratteli diagram. level_sizes[n] = |V_n| with
// level_sizes[0] == 1; matrices[n] has shape |V_{n+1}| x |V_n| and entry
// (u,v) counts edges from v in V_n up to u in V_{n+1}.
struct BratteliDiagram {
    std::vector<int> level_sizes;
    std::vector<IncidenceMatrix> matrices;

    int levels() const { return (int)level_sizes.size(); }
    int size(int n) const { return level_sizes[n]; }
    const IncidenceMatrix& matrix(int n) const { return matrices[n]; }
    bool operator==(const BratteliDiagram&) const = default;
};

struct DiagramViolation {
    int level;
    std::string what;
};

std::vector<DiagramViolation> validate_diagram(const BratteliDiagram& d);
void require_valid(const BratteliDiagram& d);  // throws listing violations

// keep must start at 0 and be strictly increasing; matrices multiply.
BratteliDiagram telescope(const BratteliDiagram& d, const std::vector<int>& keep);

// order_words[n][u-1] lists, over V_n, the sources of the incoming edges of
// u in V_{n+1} in increasing edge order. Letter counts match matrix rows.
struct OrderedBratteliDiagram {
    BratteliDiagram diagram;
    std::vector<std::vector<Word>> order_words;

    const Word& order_word(int n, int u) const { return order_words[n][size_t(u) - 1]; }
};

// Fails with a count mismatch description, or yields the ordered diagram.
struct OrderingResult {
    std::optional<OrderedBratteliDiagram> ordered;
    std::string error;  // empty on success
};
OrderingResult ordering_from_words(const BratteliDiagram& d,
                                   const std::vector<std::vector<Word>>& words);

void validate_ordered(const OrderedBratteliDiagram& b);  // throws

// Edge e_n of a path is (vertex in V_n, position into its order word).
// Positions are 1-based.
struct FinitePath {
    std::vector<std::pair<int, int>> edges;
    bool operator==(const FinitePath&) const = default;
};

void validate_path(const OrderedBratteliDiagram& b, const FinitePath& p);

// All-minimal path from the root into the given vertex.
FinitePath minimal_path_to(const OrderedBratteliDiagram& b, int depth, int vertex);

// Least non-maximal edge increments; the finite stub of x_max yields nullopt
// rather than wrapping (wrapping is only correct on infinite paths).
std::optional<FinitePath> vershik_successor(const OrderedBratteliDiagram& b,
                                            const FinitePath& p);

// Finite shadow of |X_B^max| = |X_B^min| = 1: pulling the max- (min-) edge
// source chains back from level `depth` must merge to a single vertex at
// every lower level.
bool check_proper_ordering(const OrderedBratteliDiagram& b, int depth);

// Vertex-copy factorisation certificate produced by amplify_diagram.
// For n >= 1, factors[n-1] = (B_n, C_n) with C_n·B_n = A_n on the telescoped
// original and B_{n+1}·C_n = M_n on the derived diagram.
struct IntertwiningCertificate {
    std::vector<int> keep;  // telescoping of the original used as baseline
    std::vector<std::pair<IncidenceMatrix, IncidenceMatrix>> factors;  // (B_n, C_n)
};

bool check_intertwining(const BratteliDiagram& original, const BratteliDiagram& derived,
                        const IntertwiningCertificate& cert);

}  // namespace sadic
