#include "sadic/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace sadic {

// ---------------------------------------------------------------------------
// DirectiveSequence

namespace {

Morphism subexp_tail_morphism(int n, const LevelAlphabet& target);
Word build_pk_image(const std::vector<long long>& row, int i, int kk, int m,
                    InteriorStyle style);

}  // namespace

Morphism DirectiveSequence::at(int n) const {
    if (n < 0) throw std::invalid_argument("negative level");
    if (n < prefix_levels()) return prefix[size_t(n)];
    if (extension.empty())
        throw ConstructionError("directive too short: level " + std::to_string(n) +
                                " requested, " + std::to_string(prefix_levels()) +
                                " available and no extension rule");
    if (extension.name == "constant") {
        if (prefix.empty()) throw ConstructionError("constant extension needs a prefix");
        Morphism m = prefix.back();
        if (m.source.size != m.target.size)
            throw ConstructionError("constant extension needs a stationary alphabet");
        m.target.level = n;
        m.source.level = n + 1;
        return m;
    }
    if (extension.name == "subexp_tail") return subexp_tail_morphism(n, alphabet(n));
    throw ConstructionError("unknown extension rule: " + extension.name);
}

LevelAlphabet DirectiveSequence::alphabet(int n) const {
    if (n < prefix_levels()) return prefix[size_t(n)].target;
    if (n == prefix_levels() && n > 0) return prefix.back().source;
    if (extension.empty())
        throw ConstructionError("directive too short: alphabet at level " + std::to_string(n));
    if (extension.name == "constant") {
        LevelAlphabet a = prefix.back().source;
        a.level = n;
        return a;
    }
    if (extension.name == "subexp_tail") return LevelAlphabet{n, n + 2};
    throw ConstructionError("unknown extension rule: " + extension.name);
}

void DirectiveSequence::validate_chain() const {
    for (size_t n = 0; n < prefix.size(); ++n) {
        prefix[n].validate();
        if (prefix[n].target.level != (int)n || prefix[n].source.level != (int)n + 1)
            throw std::invalid_argument("level mismatch at tau_" + std::to_string(n));
        if (n + 1 < prefix.size() && !(prefix[n].source == prefix[n + 1].target))
            throw std::invalid_argument("alphabet chain broken between tau_" +
                                        std::to_string(n) + " and tau_" + std::to_string(n + 1));
    }
}

Morphism DirectiveSequence::composed(int from, int to) const {
    if (from > to) throw std::invalid_argument("composed: from > to");
    if (from == to) return identity_morphism(alphabet(from));
    Morphism m = at(from);
    for (int n = from + 1; n < to; ++n) m = compose(m, at(n));
    return m;
}

DirectiveSequence read_morphisms(const OrderedBratteliDiagram& b) {
    validate_ordered(b);
    const BratteliDiagram& d = b.diagram;
    DirectiveSequence t;

    // tau_0 over the level-1 edge alphabet: one block of fresh edge letters
    // per vertex, so images are pairwise disjoint (hat) with the row sums of
    // A_0 as lengths.
    {
        const IncidenceMatrix& A0 = d.matrix(0);
        long long total = 0;
        for (int u = 0; u < A0.rows; ++u) total += A0.row_sum(u);
        Morphism tau0;
        tau0.source = {1, d.size(1)};
        tau0.target = {0, (int)total};
        Letter next = 1;
        for (int u = 0; u < A0.rows; ++u) {
            Word im;
            for (long long i = 0; i < A0.row_sum(u); ++i) im.push_back(next++);
            tau0.images.push_back(std::move(im));
        }
        t.prefix.push_back(std::move(tau0));
    }

    for (int n = 1; n + 1 < d.levels(); ++n) {
        Morphism tau;
        tau.source = {n + 1, d.size(n + 1)};
        tau.target = {n, d.size(n)};
        tau.images = b.order_words[size_t(n)];
        t.prefix.push_back(std::move(tau));
    }
    return t;
}

// ---------------------------------------------------------------------------
// amplify_diagram

AmplifyResult amplify_diagram(const BratteliDiagram& d, int k, AmplifyOptions opts) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    require_valid(d);
    if (d.levels() < 3)
        throw ConstructionError("window too short: need at least two incidence matrices");

    auto s_of = [&](int j, int size_at) {
        return std::max({(long long)j + 1 + opts.size_slack, (long long)k + 2,
                         (long long)size_at});
    };

    std::vector<int> keep = {0, 1};
    bool positivity_seen = true;
    while (true) {
        int j = (int)keep.size() - 1;
        int from = keep[j];
        if (from + 1 >= d.levels()) break;
        long long sj = s_of(j, d.size(from));
        IncidenceMatrix P = d.matrix(from);
        int found = -1;
        long long best_min = 0;
        for (int N = from + 1; N < d.levels(); ++N) {
            if (N > from + 1) {
                try {
                    P = multiply(d.matrix(N - 1), P);
                } catch (const std::overflow_error&) {
                    break;  // entries beyond 64 bits cannot be split exactly anyway
                }
            }
            best_min = std::max(best_min, P.min_entry());
            long long sj1 = s_of(j + 1, d.size(N));
            if (P.min_entry() >= sj * (sj1 + k + 2)) { found = N; break; }
        }
        if (found < 0) {
            if (keep.size() == 2 && best_min == 0) positivity_seen = false;
            break;
        }
        keep.push_back(found);
    }

    BratteliDiagram T = telescope(d, keep);
    int L = (int)T.matrices.size() - 1;
    if (L < 1) {
        if (!positivity_seen)
            throw ConstructionError("non-simple window: no telescoping of the given levels "
                                    "has positive incidence matrices");
        throw ConstructionError("window too short to achieve the amplification bounds");
    }
    if (L < opts.min_levels)
        throw ConstructionError("window too short: achieved " + std::to_string(L) +
                                " amplified levels, need " + std::to_string(opts.min_levels));

    AmplifyResult res;
    res.cert.keep = keep;
    res.derived.level_sizes = {1};

    for (int n = 1; n <= L; ++n) {
        int mn = T.size(n);
        int mn1 = T.size(n + 1);
        int sn = (int)s_of(n, mn);
        // B_n(w, v) = [v == g(w)] for the round-robin surjection g
        IncidenceMatrix B(sn, mn);
        std::vector<int> copies(size_t(mn), 0);
        std::vector<int> copy_index(size_t(sn), 0);
        for (int w = 0; w < sn; ++w) {
            int v = w % mn;
            B.at(w, v) = 1;
            copy_index[w] = copies[v]++;
        }
        // C_n splits each column count of A_n as evenly as possible among the
        // copies, remainders to the lowest-index copies.
        IncidenceMatrix C(mn1, sn);
        for (int u = 0; u < mn1; ++u)
            for (int w = 0; w < sn; ++w) {
                int v = w % mn;
                long long a = T.matrix(n).at(u, v);
                long long q = a / copies[v], r = a % copies[v];
                C.at(u, w) = q + (copy_index[w] < r ? 1 : 0);
            }
        res.cert.factors.emplace_back(std::move(B), std::move(C));
        res.derived.level_sizes.push_back(sn);
    }

    res.derived.matrices.push_back(multiply(res.cert.factors[0].first, T.matrix(0)));
    for (int n = 1; n < L; ++n)
        res.derived.matrices.push_back(
            multiply(res.cert.factors[size_t(n)].first, res.cert.factors[size_t(n) - 1].second));

    require_valid(res.derived);
    if (!check_intertwining(d, res.derived, res.cert))
        throw ConstructionError("internal error: certificate failed re-verification");
    for (int n = 1; n + 1 <= L; ++n) {
        long long need = std::max<long long>(res.derived.size(n + 1), k + 2);
        if (res.derived.matrix(n).min_entry() < need)
            throw ConstructionError("internal error: amplified entry bound violated");
    }
    return res;
}

// ---------------------------------------------------------------------------
// order word construction

Word interleave_counts(std::vector<long long> counts, Letter prev, Letter marker) {
    int m = (int)counts.size();
    long long total = 0;
    for (long long c : counts) total += c;
    Word out;
    out.reserve(size_t(total));
    if (m == 1) return Word(size_t(total), 1);

    auto remaining_nonfirst = [&]() {
        long long r = 0;
        for (int j = 1; j < m; ++j) r += counts[size_t(j)];
        return r;
    };
    auto makes_square = [&](Letter c, int maxp) {
        int len = (int)out.size() + 1;
        auto at = [&](int idx) { return idx == len - 1 ? c : out[size_t(idx)]; };
        for (int p = 2; p <= maxp; ++p) {
            if (len < 2 * p) break;
            bool sq = true;
            for (int t = 0; t < p && sq; ++t) sq = at(len - 1 - t) == at(len - 1 - t - p);
            if (sq) return true;
        }
        return false;
    };

    for (long long step = 0; step < total; ++step) {
        std::vector<Letter> order;
        for (Letter c = 1; c <= m; ++c)
            if (counts[size_t(c) - 1] > 0) order.push_back(c);
        std::stable_sort(order.begin(), order.end(), [&](Letter a, Letter b) {
            return counts[size_t(a) - 1] > counts[size_t(b) - 1];
        });

        bool endgame = counts[0] > 0 && remaining_nonfirst() == counts[size_t(marker) - 1];
        Letter chosen = 0;
        for (int relax = 0; relax < 3 && !chosen; ++relax) {
            for (Letter c : order) {
                if (relax < 2 && c == prev) continue;
                if (prev == marker && c == 1) continue;
                // once only 1s and markers remain, all 1s must precede the
                // markers, or a forbidden (marker, 1) pair becomes inevitable
                if (c == marker && endgame) continue;
                if (relax == 0 && makes_square(c, 8)) continue;
                chosen = c;
                break;
            }
        }
        if (!chosen)
            throw ConstructionError("interleave: cannot avoid the forbidden marker transition");
        out.push_back(chosen);
        counts[size_t(chosen) - 1]--;
        prev = chosen;
    }
    return out;
}

namespace {

Word build_pk_image(const std::vector<long long>& row, int i, int kk, int m,
                    InteriorStyle style) {
    Word pre;
    if (i <= kk + 1) {
        for (int j = 1; j < i; ++j) { pre.push_back(j); pre.push_back(j); }
        for (int j = i; j <= kk + 1; ++j) pre.push_back(j);
    } else {
        pre.assign(size_t(i), 1);
        pre.push_back(2);
    }

    std::vector<long long> counts(row);
    for (Letter a : pre) counts[size_t(a) - 1]--;
    counts[size_t(m) - 1]--;  // suffix
    for (long long c : counts)
        if (c < 0) throw ConstructionError("row too small for the mandated arrangement");

    Word out = pre;
    if (style == InteriorStyle::AscendingBlocks) {
        for (int j = 1; j <= m; ++j)
            for (long long c = 0; c < counts[size_t(j) - 1]; ++c) out.push_back(j);
    } else {
        Word interior = interleave_counts(counts, pre.back(), m);
        out.insert(out.end(), interior.begin(), interior.end());
    }
    out.push_back(m);
    return out;
}

// Remark conditions for the mandated arrangement at one level; kk is the
// distinguished count (k, or the level index for the countable case).
void check_level_preconditions(const IncidenceMatrix& A, int kk, int level,
                               const char* what) {
    auto fail = [&](int i, const std::string& cond) {
        std::string at = i > 0 ? " vertex " + std::to_string(i) : "";
        throw ConstructionError(std::string(what) + ": level " + std::to_string(level) + at +
                                ": " + cond);
    };
    if (A.cols < kk + 2)
        fail(0, "condition (ii): alphabet size " + std::to_string(A.cols) +
                    " < " + std::to_string(kk + 2) +
                    " (the last letter must lie outside the mandated prefix)");
    for (int i = 1; i <= A.rows; ++i) {
        for (int j = 1; j <= A.cols; ++j)
            if (A.at(i - 1, j - 1) <= 0)
                fail(i, "condition (i): entry (" + std::to_string(i) + "," +
                            std::to_string(j) + ") is zero");
        if (i <= kk + 1) {
            for (int j = 1; j < i; ++j)
                if (A.at(i - 1, j - 1) < 2)
                    fail(i, "condition (iii): entry (" + std::to_string(i) + "," +
                                std::to_string(j) + ") < 2");
        } else if (A.at(i - 1, 0) < i) {
            fail(i, "condition (iv): entry (" + std::to_string(i) + ",1) = " +
                        std::to_string(A.at(i - 1, 0)) + " < " + std::to_string(i));
        }
    }
}

OrderedBratteliDiagram assign_ordering_impl(const BratteliDiagram& d,
                                            std::function<int(int)> kk_at, const char* what,
                                            InteriorStyle style) {
    require_valid(d);
    std::vector<std::vector<Word>> words(d.matrices.size());

    // level 0: all edges come from the root; the read morphism is the hat.
    {
        const IncidenceMatrix& A0 = d.matrix(0);
        for (int u = 0; u < A0.rows; ++u)
            words[0].push_back(Word(size_t(A0.row_sum(u)), 1));
    }

    for (int n = 1; n + 1 < d.levels(); ++n) {
        const IncidenceMatrix& A = d.matrix(n);
        int kk = kk_at(n);
        check_level_preconditions(A, kk, n, what);
        for (int i = 1; i <= A.rows; ++i) {
            std::vector<long long> row(size_t(A.cols));
            for (int j = 0; j < A.cols; ++j) row[size_t(j)] = A.at(i - 1, j);
            words[size_t(n)].push_back(build_pk_image(row, i, kk, A.cols, style));
        }
    }

    auto r = ordering_from_words(d, words);
    if (!r.ordered) throw ConstructionError(std::string(what) + ": " + r.error);
    return *r.ordered;
}

}  // namespace

OrderedBratteliDiagram assign_pk_ordering(const BratteliDiagram& d, int k,
                                          InteriorStyle style) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    return assign_ordering_impl(d, [k](int) { return k; }, "assign_pk_ordering", style);
}

OrderedBratteliDiagram assign_pinf_ordering(const BratteliDiagram& d, InteriorStyle style) {
    return assign_ordering_impl(d, [](int n) { return n; }, "assign_pinf_ordering", style);
}

// ---------------------------------------------------------------------------
// Toeplitz-preserving morphisms

bool check_equal_row_sums(const BratteliDiagram& d) {
    for (const IncidenceMatrix& A : d.matrices)
        for (int i = 1; i < A.rows; ++i)
            if (A.row_sum(i) != A.row_sum(0)) return false;
    return true;
}

DirectiveSequence toeplitz_morphisms(const BratteliDiagram& d, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    require_valid(d);
    if (!check_equal_row_sums(d))
        throw ConstructionError("toeplitz_morphisms: diagram lacks the equal path "
                                "number property");
    for (int n = 1; n + 1 < d.levels(); ++n) {
        if (d.matrix(n).min_entry() <= 3)
            throw ConstructionError("toeplitz_morphisms: level " + std::to_string(n) +
                                    " has an entry <= 3; telescope first");
        if (d.size(n) < k + 2)
            throw ConstructionError("toeplitz_morphisms: level " + std::to_string(n) +
                                    " has fewer than k+2 vertices");
    }

    DirectiveSequence t;
    {
        const IncidenceMatrix& A0 = d.matrix(0);
        long long total = 0;
        for (int u = 0; u < A0.rows; ++u) total += A0.row_sum(u);
        Morphism tau0;
        tau0.source = {1, d.size(1)};
        tau0.target = {0, (int)total};
        Letter next = 1;
        for (int u = 0; u < A0.rows; ++u) {
            Word im;
            for (long long e = 0; e < A0.row_sum(u); ++e) im.push_back(next++);
            tau0.images.push_back(std::move(im));
        }
        t.prefix.push_back(std::move(tau0));
    }

    for (int n = 1; n + 1 < d.levels(); ++n) {
        const IncidenceMatrix& A = d.matrix(n);
        int m = A.cols;
        Morphism tau;
        tau.source = {n + 1, A.rows};
        tau.target = {n, m};
        for (int i = 1; i <= A.rows; ++i) {
            Word im;
            std::vector<long long> tail(size_t(m), 0);
            if (i == 1) {
                im.assign(3, 1);
                for (int j = 2; j <= k + 1; ++j) im.push_back(j);
                tail[0] = A.at(i - 1, 0) - 3;
                for (int t = 2; t <= m; ++t)
                    tail[size_t(t) - 1] = A.at(i - 1, t - 1) - (t <= k + 1 ? 1 : 0);
            } else {
                int s = (i - 1) % (k + 1) + 1;
                for (int j = 1; j < s; ++j) { im.push_back(j); im.push_back(j); }
                for (int j = s; j <= k + 1; ++j) im.push_back(j);
                for (int t = 1; t <= m; ++t) {
                    long long used = t < s ? 2 : (t <= k + 1 ? 1 : 0);
                    tail[size_t(t) - 1] = A.at(i - 1, t - 1) - used;
                }
            }
            for (int t = 1; t <= m; ++t) {
                if (tail[size_t(t) - 1] < 1)
                    throw ConstructionError("toeplitz_morphisms: exponent underflow at level " +
                                            std::to_string(n));
                for (long long c = 0; c < tail[size_t(t) - 1]; ++c) im.push_back(t);
            }
            tau.images.push_back(std::move(im));
        }
        // counts must reproduce the matrix rows and lengths must agree
        IncidenceMatrix back = incidence_of(tau);
        if (!(back == A))
            throw ConstructionError("internal error: toeplitz image counts diverge from rows");
        t.prefix.push_back(std::move(tau));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Property (P_k) / (P_inf) checking

namespace {

PkCheckResult check_property_impl(const DirectiveSequence& t, std::function<int(int)> kk_at,
                                  int pk_tag, int levels_to_check) {
    PkCheckResult res;
    int L = levels_to_check >= 0 ? levels_to_check : t.prefix_levels();
    if (L < 1) {
        res.failure = "no morphisms to check";
        return res;
    }

    auto fail = [&](int level, int letter, int clause, const std::string& why) {
        res.failure = why;
        res.level = level;
        res.letter = letter;
        res.clause = clause;
        return res;
    };

    if (!analyze_morphism(t.at(0)).hat)
        return fail(0, -1, 0, "tau_0 is not a hat morphism");

    PkWitness w;
    w.k = pk_tag;
    for (int n = 1; n < L; ++n) {
        Morphism tau = t.at(n);
        tau.validate();
        int kk = kk_at(n);
        int m = tau.target.size;
        if (m < kk + 1)
            return fail(n, -1, 2, "alphabet at level " + std::to_string(n) +
                                      " too small for the mandated prefixes");
        if (!incidence_of(tau).positive())
            return fail(n, -1, 1, "tau_" + std::to_string(n) + " is not primitive");

        std::vector<ImageDecomposition> decos;
        for (int i = 1; i <= tau.source.size; ++i) {
            const Word& im = tau.image(i);
            Word pre;
            if (i <= kk + 1) {
                for (int j = 1; j < i; ++j) { pre.push_back(j); pre.push_back(j); }
                for (int j = i; j <= kk + 1; ++j) pre.push_back(j);
            } else {
                pre.assign(size_t(i), 1);
                pre.push_back(2);
            }
            if (im.size() < pre.size() || !std::equal(pre.begin(), pre.end(), im.begin()))
                return fail(n, i, i <= kk + 1 ? 2 : 3,
                            "image of letter " + std::to_string(i) + " at level " +
                                std::to_string(n) + " lacks the mandated prefix");
            if (im.back() != m)
                return fail(n, i, 4, "image of letter " + std::to_string(i) + " at level " +
                                         std::to_string(n) + " does not end with the last letter");
            for (size_t p = 0; p + 1 < im.size(); ++p)
                if (im[p] == m && im[p + 1] == 1)
                    return fail(n, i, 4, "image of letter " + std::to_string(i) + " at level " +
                                             std::to_string(n) +
                                             " contains the cut marker as a factor");
            ImageDecomposition dec;
            dec.letter = i;
            dec.prefix = pre;
            dec.interior = Word(im.begin() + (long)pre.size(), im.end() - 1);
            dec.suffix = m;
            decos.push_back(std::move(dec));
        }
        w.levels.push_back(std::move(decos));
    }
    res.witness = std::move(w);
    return res;
}

}  // namespace

PkCheckResult check_pk(const DirectiveSequence& t, int k, int levels_to_check) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    return check_property_impl(t, [k](int) { return k; }, k, levels_to_check);
}

PkCheckResult check_pinf(const DirectiveSequence& t, int levels_to_check) {
    return check_property_impl(t, [](int n) { return n; }, 0, levels_to_check);
}

// ---------------------------------------------------------------------------
// Subexponential family

GrowthFunction growth_pow2_sqrt() {
    return {"pow2_sqrt", [](double x) { return std::exp2(std::sqrt(x)); }};
}

GrowthFunction growth_poly(double degree) {
    return {"poly:" + std::to_string(degree),
            [degree](double x) { return std::pow(x, degree); }};
}

GrowthFunction growth_table(const std::vector<std::pair<long long, double>>& table) {
    auto t = table;
    std::sort(t.begin(), t.end());
    return {"table", [t](double x) {
                double best = t.empty() ? 1.0 : t.front().second;
                for (auto& [n, g] : t)
                    if ((double)n <= x) best = g;
                return best;
            }};
}

std::vector<int> de_bruijn_word(int alphabet, int order) {
    if (alphabet < 1 || order < 1) throw std::invalid_argument("de_bruijn_word: bad arguments");
    std::vector<int> a(size_t(order) + 1, 0);
    std::vector<int> seq;
    std::function<void(int, int)> db = [&](int t, int p) {
        if (t > order) {
            if (order % p == 0)
                for (int i = 1; i <= p; ++i) seq.push_back(a[size_t(i)]);
        } else {
            a[size_t(t)] = a[size_t(t - p)];
            db(t + 1, p);
            for (int j = a[size_t(t - p)] + 1; j < alphabet; ++j) {
                a[size_t(t)] = j;
                db(t + 1, t);
            }
        }
    };
    db(1, 1);
    for (int i = 0; i < order - 1; ++i) seq.push_back(seq[size_t(i)]);
    return seq;
}

SubexpFamily build_subexp_family(const GrowthFunction& g, int levels, long long alpha_cap,
                                 long long length_cap) {
    if (levels < 1) throw std::invalid_argument("levels must be >= 1");
    SubexpFamily fam;
    fam.spec.l0 = 3;

    // tau_0: hat over the 9-letter edge alphabet, |V_1| = 3, L_0 = 3.
    Morphism tau0;
    tau0.source = {1, 3};
    tau0.target = {0, 9};
    tau0.images = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
    fam.directive.prefix.push_back(tau0);

    long double prod = 3;  // L_{n-1} ... L_0
    for (int n = 1; n <= levels; ++n) {
        int m = n + 2;       // |V_n|
        int sigma = n + 1;   // letters available to the covering word
        long long alpha = -1;
        for (long long a = 1; a <= alpha_cap; ++a) {
            long double lhs = std::pow((long double)(n + 1), (long double)(a - 1));
            long double need = (long double)g.eval((double)((long double)a * prod));
            if (lhs >= need) { alpha = a; break; }
        }
        if (alpha < 0)
            throw ConstructionError("alpha cap exceeded at level " + std::to_string(n) +
                                    "; growth function not subexponential at this scale");
        long double dblen = std::pow((long double)sigma, (long double)alpha);
        if (dblen > (long double)length_cap)
            throw ConstructionError("length overflow at level " + std::to_string(n) +
                                    ": covering word needs " + std::to_string((double)dblen) +
                                    " letters");

        std::vector<int> db = de_bruijn_word(sigma, (int)alpha);
        Word w;
        w.reserve(db.size());
        for (int c : db) w.push_back(c + 2);  // letters 2..m, avoiding letter 1
        long long Ln = (long long)w.size() + 3;

        Morphism tau;
        tau.source = {n + 1, m + 1};
        tau.target = {n, m};
        {
            Word im = {1, 2};
            im.insert(im.end(), w.begin(), w.end());
            im.push_back(m);
            tau.images.push_back(std::move(im));
        }
        for (int i = 2; i <= m + 1; ++i) {
            Word im(size_t(i), 1);
            im.push_back(2);
            long long pad = Ln - i - 2;
            if (pad < m - 2)
                throw ConstructionError("image too short to stay primitive at level " +
                                        std::to_string(n));
            Word filler;
            for (int j = 3; j < m; ++j) filler.push_back(j);
            Letter cyc = 2;
            while ((long long)filler.size() < pad) {
                filler.push_back(cyc);
                cyc = cyc == m - 1 ? 2 : cyc + 1;
                if (m == 3) cyc = 2;
            }
            im.insert(im.end(), filler.begin(), filler.end());
            im.push_back(m);
            if ((long long)im.size() != Ln)
                throw ConstructionError("internal error: unequal image length in subexp level");
            tau.images.push_back(std::move(im));
        }
        fam.directive.prefix.push_back(std::move(tau));
        fam.spec.levels.push_back({n, alpha, Ln, w});
        prod *= (long double)Ln;
        if (prod > 1e300) throw ConstructionError("length product overflow");
    }
    fam.directive.extension = {"subexp_tail"};
    return fam;
}

namespace {

Morphism subexp_tail_morphism(int n, const LevelAlphabet& target) {
    int m = target.size;
    if (m != n + 2)
        throw ConstructionError("subexp_tail extension expects |A_n| = n+2");
    long long R = (m + 1) + 2 * (m - 2) + 2;
    Morphism tau;
    tau.source = {n + 1, m + 1};
    tau.target = target;
    for (int i = 1; i <= m + 1; ++i) {
        std::vector<long long> row(size_t(m), 2);
        row[0] = std::max(i, 2);
        row[1] = R - row[0] - 2 * (m - 2);
        tau.images.push_back(build_pk_image(row, i, 1, m, InteriorStyle::Interleaved));
    }
    return tau;
}

}  // namespace

}  // namespace sadic
