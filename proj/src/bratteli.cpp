#include "sadic/bratteli.hpp"

#include <algorithm>

namespace sadic {

std::vector<DiagramViolation> validate_diagram(const BratteliDiagram& d) {
    std::vector<DiagramViolation> out;
    if (d.level_sizes.empty() || d.level_sizes[0] != 1)
        out.push_back({0, "level 0 must consist of the single root vertex"});
    for (int n = 0; n < d.levels(); ++n)
        if (d.level_sizes[n] < 1)
            out.push_back({n, "empty level"});
    if ((int)d.matrices.size() != std::max(0, d.levels() - 1)) {
        out.push_back({0, "expected " + std::to_string(std::max(0, d.levels() - 1)) +
                              " matrices, found " + std::to_string(d.matrices.size())});
        return out;
    }
    for (int n = 0; n + 1 < d.levels(); ++n) {
        const IncidenceMatrix& A = d.matrix(n);
        if (A.rows != d.size(n + 1) || A.cols != d.size(n)) {
            out.push_back({n, "matrix shape " + std::to_string(A.rows) + "x" +
                                  std::to_string(A.cols) + " does not match levels"});
            continue;
        }
        for (long long v : A.e)
            if (v < 0) { out.push_back({n, "negative entry"}); break; }
        for (int j = 0; j < A.cols; ++j) {
            bool any = false;
            for (int i = 0; i < A.rows; ++i) any = any || A.at(i, j) > 0;
            if (!any)
                out.push_back({n, "vertex " + std::to_string(j + 1) +
                                      " of level " + std::to_string(n) + " has no outgoing edge"});
        }
        for (int i = 0; i < A.rows; ++i)
            if (A.row_sum(i) <= 0)
                out.push_back({n, "vertex " + std::to_string(i + 1) + " of level " +
                                      std::to_string(n + 1) + " has no incoming edge"});
    }
    return out;
}

void require_valid(const BratteliDiagram& d) {
    auto v = validate_diagram(d);
    if (v.empty()) return;
    std::string msg = "invalid Bratteli diagram:";
    for (auto& x : v) msg += " [level " + std::to_string(x.level) + "] " + x.what + ";";
    throw std::invalid_argument(msg);
}

BratteliDiagram telescope(const BratteliDiagram& d, const std::vector<int>& keep) {
    if (keep.empty() || keep[0] != 0)
        throw std::invalid_argument("telescope: keep must start at level 0");
    for (size_t i = 0; i + 1 < keep.size(); ++i)
        if (keep[i] >= keep[i + 1])
            throw std::invalid_argument("telescope: keep indices must strictly increase");
    if (keep.back() >= d.levels())
        throw std::invalid_argument("telescope: keep index beyond available levels");

    BratteliDiagram out;
    for (int n : keep) out.level_sizes.push_back(d.size(n));
    for (size_t k = 0; k + 1 < keep.size(); ++k) {
        IncidenceMatrix P = d.matrix(keep[k]);
        for (int n = keep[k] + 1; n < keep[k + 1]; ++n) P = multiply(d.matrix(n), P);
        out.matrices.push_back(std::move(P));
    }
    return out;
}

OrderingResult ordering_from_words(const BratteliDiagram& d,
                                   const std::vector<std::vector<Word>>& words) {
    OrderingResult res;
    if (words.size() != d.matrices.size()) {
        res.error = "expected order words for " + std::to_string(d.matrices.size()) +
                    " levels, found " + std::to_string(words.size());
        return res;
    }
    for (int n = 0; n + 1 < d.levels(); ++n) {
        const IncidenceMatrix& A = d.matrix(n);
        if ((int)words[n].size() != A.rows) {
            res.error = "level " + std::to_string(n) + ": expected " + std::to_string(A.rows) +
                        " order words, found " + std::to_string(words[n].size());
            return res;
        }
        for (int u = 0; u < A.rows; ++u) {
            std::vector<long long> cnt(size_t(A.cols) + 1, 0);
            for (Letter a : words[n][u]) {
                if (a < 1 || a > A.cols) {
                    res.error = "level " + std::to_string(n) + " vertex " + std::to_string(u + 1) +
                                ": letter out of range";
                    return res;
                }
                cnt[a]++;
            }
            for (int j = 0; j < A.cols; ++j)
                if (cnt[j + 1] != A.at(u, j)) {
                    res.error = "level " + std::to_string(n) + " vertex " + std::to_string(u + 1) +
                                ": expected " + std::to_string(A.at(u, j)) + " copies of letter " +
                                std::to_string(j + 1) + ", found " + std::to_string(cnt[j + 1]);
                    return res;
                }
        }
    }
    res.ordered = OrderedBratteliDiagram{d, words};
    return res;
}

void validate_ordered(const OrderedBratteliDiagram& b) {
    require_valid(b.diagram);
    auto r = ordering_from_words(b.diagram, b.order_words);
    if (!r.ordered) throw std::invalid_argument("invalid ordering: " + r.error);
}

void validate_path(const OrderedBratteliDiagram& b, const FinitePath& p) {
    const BratteliDiagram& d = b.diagram;
    if ((int)p.edges.size() >= d.levels())
        throw std::invalid_argument("path deeper than diagram");
    for (size_t n = 1; n <= p.edges.size(); ++n) {
        auto [v, pos] = p.edges[n - 1];
        if (v < 1 || v > d.size((int)n))
            throw std::invalid_argument("path vertex out of range at depth " + std::to_string(n));
        const Word& ow = b.order_word((int)n - 1, v);
        if (pos < 1 || pos > (int)ow.size())
            throw std::invalid_argument("path position out of range at depth " + std::to_string(n));
        int src = ow[size_t(pos) - 1];
        int expected = n == 1 ? 1 : p.edges[n - 2].first;
        if (src != expected)
            throw std::invalid_argument("path inconsistent at depth " + std::to_string(n));
    }
}

FinitePath minimal_path_to(const OrderedBratteliDiagram& b, int depth, int vertex) {
    FinitePath p;
    p.edges.assign(size_t(depth), {0, 0});
    int u = vertex;
    for (int n = depth; n >= 1; --n) {
        p.edges[size_t(n) - 1] = {u, 1};
        u = b.order_word(n - 1, u)[0];
    }
    return p;
}

std::optional<FinitePath> vershik_successor(const OrderedBratteliDiagram& b,
                                            const FinitePath& p) {
    validate_path(b, p);
    for (size_t k = 0; k < p.edges.size(); ++k) {
        auto [v, pos] = p.edges[k];
        const Word& ow = b.order_word((int)k, v);
        if (pos < (int)ow.size()) {
            FinitePath out = p;
            out.edges[k] = {v, pos + 1};
            int src = ow[size_t(pos)];  // new source below edge k
            FinitePath head = minimal_path_to(b, (int)k, src);
            std::copy(head.edges.begin(), head.edges.end(), out.edges.begin());
            return out;
        }
    }
    return std::nullopt;  // all-maximal: overflow at finite depth
}

bool check_proper_ordering(const OrderedBratteliDiagram& b, int depth) {
    if (depth < 1 || depth >= b.diagram.levels())
        throw std::invalid_argument("check_proper_ordering: depth out of range");
    auto chase = [&](bool maximal) {
        std::vector<int> frontier;
        for (int u = 1; u <= b.diagram.size(depth); ++u) frontier.push_back(u);
        for (int n = depth; n >= 1; --n) {
            std::set<int> next;
            for (int u : frontier) {
                const Word& ow = b.order_word(n - 1, u);
                next.insert(maximal ? ow.back() : ow.front());
            }
            if (n > 1 && next.size() != 1) return false;
            frontier.assign(next.begin(), next.end());
        }
        return true;
    };
    return chase(true) && chase(false);
}

bool check_intertwining(const BratteliDiagram& original, const BratteliDiagram& derived,
                        const IntertwiningCertificate& cert) {
    BratteliDiagram T = telescope(original, cert.keep);
    size_t L = cert.factors.size();
    if (L == 0) throw std::invalid_argument("empty certificate");
    if (T.matrices.size() < L + 1)
        throw std::invalid_argument("certificate deeper than telescoped original");
    if (derived.matrices.size() != L)
        throw std::invalid_argument("derived diagram depth does not match certificate");

    for (size_t n = 1; n <= L; ++n) {
        const auto& [B, C] = cert.factors[n - 1];
        if (B.cols != T.size((int)n) || C.rows != T.size((int)n + 1) || B.rows != C.cols)
            throw std::invalid_argument("certificate shape mismatch at level " + std::to_string(n));
        if (derived.size((int)n) != B.rows)
            throw std::invalid_argument("derived level size mismatch at level " + std::to_string(n));
    }

    for (size_t n = 1; n <= L; ++n) {
        const auto& [B, C] = cert.factors[n - 1];
        if (!(multiply(C, B) == T.matrix((int)n))) return false;
    }
    if (!(derived.matrix(0) == multiply(cert.factors[0].first, T.matrix(0)))) return false;
    for (size_t n = 1; n + 1 <= L; ++n) {
        const auto& Bn1 = cert.factors[n].first;
        const auto& Cn = cert.factors[n - 1].second;
        if (!(derived.matrix((int)n) == multiply(Bn1, Cn))) return false;
    }
    return true;
}

}  // namespace sadic
