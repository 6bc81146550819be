#include "sadic/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "sadic/suffix_array.hpp"

namespace sadic {

namespace {

// interior 2-words of each image plus first/last letters, per level
struct LevelPairMap {
    std::set<Word> interior;
    std::vector<Letter> first, last;  // per source letter
};

LevelPairMap pair_map(const Morphism& tau) {
    LevelPairMap pm;
    for (const Word& im : tau.images) {
        for (size_t i = 0; i + 1 < im.size(); ++i) pm.interior.insert({im[i], im[i + 1]});
        pm.first.push_back(im.front());
        pm.last.push_back(im.back());
    }
    return pm;
}

std::set<Word> push_pairs_down(const LevelPairMap& pm, const std::set<Word>& pairs) {
    std::set<Word> out = pm.interior;
    for (const Word& ab : pairs)
        out.insert({pm.last[size_t(ab[0]) - 1], pm.first[size_t(ab[1]) - 1]});
    return out;
}

}  // namespace

PairFixpointResult pair_fixpoint(const DirectiveSequence& t, int level, int budget) {
    if (budget < 1) throw std::invalid_argument("pair_fixpoint: budget must be >= 1");
    PairFixpointResult res;
    std::map<int, LevelPairMap> maps;
    auto map_at = [&](int n) -> const LevelPairMap& {
        auto it = maps.find(n);
        if (it == maps.end()) it = maps.emplace(n, pair_map(t.at(n))).first;
        return it->second;
    };

    std::set<Word> prev;
    bool have_prev = false;
    for (int b = 1; b <= budget; ++b) {
        int N = level + b;
        if (!t.has_level(N)) break;
        std::set<Word> cur;
        for (const Word& im : t.at(N).images)
            for (size_t i = 0; i + 1 < im.size(); ++i) cur.insert({im[i], im[i + 1]});
        for (int n = N - 1; n >= level; --n) cur = push_pairs_down(map_at(n), cur);
        if (have_prev && cur == prev) {
            res.pairs = std::move(cur);
            res.converged = true;
            res.seed_depth = N;
            return res;
        }
        prev = std::move(cur);
        have_prev = true;
        res.seed_depth = N;
    }
    if (!have_prev) throw AnalysisError("pair_fixpoint: no level above the requested one");
    res.pairs = std::move(prev);
    res.converged = false;
    return res;
}

// ---------------------------------------------------------------------------
// corpus-based language analysis

namespace {

class LanguageAnalysis {
  public:
    LanguageAnalysis(const DirectiveSequence& t, int level, int want, int pair_budget) {
        W_ = std::max(want, 2);
        // Plan checkpoints upward: each step uses a composed morphism with
        // min image length >= 3, so the needed word length shrinks and every
        // allowed word of the needed length is a factor of an image of an
        // allowed word at the next checkpoint.
        std::vector<std::pair<Morphism, long long>> plan;  // (tau_[n, n'), need at n)
        long long ln = W_;
        int n = level;
        while (ln > 2) {
            Morphism M = t.at(n);  // throws when the directive is too short
            int j = n + 1;
            while (M.min_image_len() < 3 && M.min_image_len() < ln) {
                M = compose(M, t.at(j));
                ++j;
            }
            long long minlen = M.min_image_len();
            plan.push_back({std::move(M), ln});
            ln = (ln + minlen - 1) / minlen + 1;
            n = j;
        }
        auto pf = pair_fixpoint(t, n, pair_budget);
        converged_ = pf.converged;
        std::set<Word> S = std::move(pf.pairs);

        for (size_t idx = plan.size(); idx-- > 1;) {
            const auto& [M, need] = plan[idx];
            std::set<Word> next;
            for (const Word& w : S) {
                Word img = M.apply(w);
                if ((long long)img.size() < need)
                    throw AnalysisError("internal error: image shorter than planned");
                for (size_t i = 0; i + size_t(need) <= img.size(); ++i)
                    next.insert(Word(img.begin() + (long)i, img.begin() + (long)(i + size_t(need))));
            }
            S.swap(next);
        }

        // final step: concatenate whole image strings (or the base 2-words)
        alphabet_ = t.alphabet(level).size;
        if (plan.empty()) {
            for (const Word& w : S) append(w);
        } else {
            for (const Word& w : S) append(plan[0].first.apply(w));
        }
        sa_ = build_suffix_array(corpus_);
        lcp_ = build_lcp(corpus_, sa_);
        efflen_.assign(corpus_.size(), 0);
        int32_t run = 0;
        for (size_t i = corpus_.size(); i-- > 0;) {
            run = corpus_[i] == 0 ? 0 : run + 1;
            efflen_[i] = run;
        }
    }

    int width() const { return W_; }
    int alphabet() const { return alphabet_; }
    bool pairs_converged() const { return converged_; }

    std::vector<long long> counts_upto(int m_max) const {
        std::vector<long long> diff(size_t(m_max) + 2, 0);
        for (size_t i = 0; i < sa_.size(); ++i) {
            long long lo = lcp_[i] + 1;
            long long hi = std::min<long long>(efflen_[size_t(sa_[i])], m_max);
            if (lo > hi) continue;
            diff[size_t(lo)] += 1;
            diff[size_t(hi) + 1] -= 1;
        }
        std::vector<long long> p(size_t(m_max) + 1, 0);
        p[0] = 1;
        long long acc = 0;
        for (int m = 1; m <= m_max; ++m) {
            acc += diff[size_t(m)];
            p[size_t(m)] = acc;
        }
        return p;
    }

    struct RSEntry {
        int32_t pos = 0;
        int len = 0;
        std::vector<Letter> followers;
        long long occurrences = 0;
    };

    // all right-special words of length m with their follower sets
    template <typename F>
    void walk_right_special(int m, F&& emit) const {
        if (m == 0) {
            std::vector<char> seen(size_t(alphabet_) + 1, 0);
            std::vector<Letter> fol;
            for (int32_t c : corpus_)
                if (c != 0 && !seen[size_t(c)]) { seen[size_t(c)] = 1; fol.push_back(c); }
            std::sort(fol.begin(), fol.end());
            if (fol.size() >= 2) emit(RSEntry{0, 0, fol, (long long)corpus_.size()});
            return;
        }
        size_t n = sa_.size();
        std::vector<int32_t> stamp(size_t(alphabet_) + 1, -1);
        int32_t run_id = 0;
        size_t i = 0;
        while (i < n) {
            size_t j = i;
            while (j + 1 < n && lcp_[j + 1] >= m) ++j;
            // run [i, j]
            int32_t pos = -1;
            std::vector<Letter> fol;
            long long occ = 0;
            ++run_id;
            for (size_t r = i; r <= j; ++r) {
                int32_t s = sa_[r];
                if (efflen_[size_t(s)] < m) continue;
                ++occ;
                if (pos < 0) pos = s;
                if (efflen_[size_t(s)] >= m + 1) {
                    Letter c = corpus_[size_t(s) + size_t(m)];
                    if (stamp[size_t(c)] != run_id) {
                        stamp[size_t(c)] = run_id;
                        fol.push_back(c);
                    }
                }
            }
            if (pos >= 0 && fol.size() >= 2) {
                std::sort(fol.begin(), fol.end());
                emit(RSEntry{pos, m, std::move(fol), occ});
            }
            i = j + 1;
        }
    }

    Word extract(int32_t pos, int len) const {
        return Word(corpus_.begin() + pos, corpus_.begin() + pos + len);
    }

    // distinct factors of length m, lexicographically sorted
    std::vector<Word> distinct_factors(int m) const {
        std::vector<Word> out;
        for (size_t i = 0; i < sa_.size(); ++i)
            if (lcp_[i] < m && efflen_[size_t(sa_[i])] >= m) out.push_back(extract(sa_[i], m));
        return out;
    }

  private:
    void append(const Word& w) {
        if (!corpus_.empty()) corpus_.push_back(0);
        corpus_.insert(corpus_.end(), w.begin(), w.end());
    }

    std::vector<int32_t> corpus_, sa_, lcp_, efflen_;
    int alphabet_ = 0;
    int W_ = 0;
    bool converged_ = true;
};

}  // namespace

std::set<Word> language(const DirectiveSequence& t, int m, int level, int pair_budget) {
    if (m < 0) throw std::invalid_argument("language: negative length");
    if (m == 0) return {Word{}};
    LanguageAnalysis la(t, level, m, pair_budget);
    auto v = la.distinct_factors(m);
    return std::set<Word>(v.begin(), v.end());
}

ComplexityTable complexity_table(const DirectiveSequence& t, int m_max, int level) {
    if (m_max < 1) throw std::invalid_argument("complexity_table: m_max must be >= 1");
    LanguageAnalysis la(t, level, m_max, 10);
    ComplexityTable ct;
    ct.p = la.counts_upto(m_max);
    ct.h.assign(size_t(m_max) + 1, 0.0);
    for (int m = 1; m <= m_max; ++m)
        ct.h[size_t(m)] = std::log((double)ct.p[size_t(m)]) / m;
    return ct;
}

RightSpecialReport right_special_report(const DirectiveSequence& t, int m_max, int delta,
                                        int level, bool full_identity_scan) {
    if (m_max < 2 || delta < 1 || delta >= m_max)
        throw std::invalid_argument("right_special_report: need 1 <= delta < m_max");
    LanguageAnalysis la(t, level, m_max + 1, 10);

    RightSpecialReport rep;
    rep.level = level;
    rep.m_max = m_max;
    rep.delta = delta;
    rep.pairs_converged = la.pairs_converged();
    rep.p = la.counts_upto(m_max + 1);
    rep.rs_count.assign(size_t(m_max) + 1, 0);
    rep.rs_excess.assign(size_t(m_max) + 1, 0);

    int m0 = m_max - delta;
    rep.window.resize(size_t(delta) + 1);

    // stabilized suffixes: intersect the m0-suffix sets over the window
    std::set<Word> cand;
    std::map<Word, StabilizedBranch> info;
    bool first_window_m = true;

    int scan_from = full_identity_scan ? 0 : m0;
    rep.identity_checked_to = full_identity_scan ? m_max : 0;
    for (int m = scan_from; m <= m_max; ++m) {
        std::set<Word> suffixes;
        la.walk_right_special(m, [&](LanguageAnalysis::RSEntry e) {
            rep.rs_count[size_t(m)] += 1;
            rep.rs_excess[size_t(m)] += (long long)e.followers.size() - 1;
            if (m >= m0) {
                Word w = la.extract(e.pos, e.len);
                Word suf(w.end() - m0, w.end());
                suffixes.insert(suf);
                auto& sb = info[suf];
                sb.word = suf;
                sb.degrees.insert((int)e.followers.size());
                if (m == m_max) {
                    sb.witness = w;
                    sb.followers = e.followers;
                }
                auto& win = rep.window[size_t(m - m0)];
                if (win.size() < 4096) win.push_back({std::move(w), e.followers});
            }
        });
        if (full_identity_scan || m >= m0) {
            if (m <= m_max && rep.p[size_t(m) + 1] - rep.p[size_t(m)] != rep.rs_excess[size_t(m)])
                rep.identity_ok = false;
        }
        if (m >= m0) {
            if (first_window_m) {
                cand = std::move(suffixes);
                first_window_m = false;
            } else {
                std::set<Word> keep;
                std::set_intersection(cand.begin(), cand.end(), suffixes.begin(), suffixes.end(),
                                      std::inserter(keep, keep.begin()));
                cand.swap(keep);
            }
        }
    }
    if (!full_identity_scan) rep.identity_checked_to = -1;

    for (const Word& b : cand) {
        auto it = info.find(b);
        if (it != info.end() && !it->second.witness.empty())
            rep.stabilized.push_back(it->second);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// membership for long words

namespace {

bool contains_subword(const Word& hay, const Word& needle) {
    if (needle.empty()) return true;
    if (hay.size() < needle.size()) return false;
    // KMP
    std::vector<int> f(needle.size(), 0);
    for (size_t i = 1, k = 0; i < needle.size(); ++i) {
        while (k && needle[i] != needle[k]) k = size_t(f[k - 1]);
        if (needle[i] == needle[k]) ++k;
        f[i] = (int)k;
    }
    for (size_t i = 0, k = 0; i < hay.size(); ++i) {
        while (k && hay[i] != needle[k]) k = size_t(f[k - 1]);
        if (hay[i] == needle[k]) ++k;
        if (k == needle.size()) return true;
    }
    return false;
}

}  // namespace

bool word_allowed(const DirectiveSequence& t, const Word& w, int level, int pair_budget) {
    if (w.empty()) return true;
    for (Letter a : w)
        if (a < 1 || a > t.alphabet(level).size) return false;
    // find a depth whose composed images dominate |w|
    int N = level + 1;
    Morphism M = t.at(level);
    while (M.min_image_len() < (long long)w.size()) {
        M = compose(M, t.at(N));
        ++N;
    }
    auto pf = pair_fixpoint(t, N, pair_budget);
    for (const Word& ab : pf.pairs) {
        Word hay = M.image(ab[0]);
        const Word& right = M.image(ab[1]);
        hay.insert(hay.end(), right.begin(), right.end());
        if (contains_subword(hay, w)) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// desubstitution

namespace {

struct HatLookup {
    // per target letter: owning source letter and offset inside its image
    std::vector<Letter> parent;
    std::vector<int> offset;
    std::vector<int> image_len;  // per source letter

    explicit HatLookup(const Morphism& tau0) {
        parent.assign(size_t(tau0.target.size) + 1, 0);
        offset.assign(size_t(tau0.target.size) + 1, -1);
        for (int u = 1; u <= tau0.source.size; ++u) {
            const Word& im = tau0.image(u);
            image_len.push_back((int)im.size());
            for (size_t p = 0; p < im.size(); ++p) {
                if (parent[size_t(im[p])] != 0)
                    throw AnalysisError("desubstitute: tau_0 is not a hat morphism");
                parent[size_t(im[p])] = u;
                offset[size_t(im[p])] = (int)p;
            }
        }
    }
};

struct Block {
    Letter letter = 0;      // recovered letter one level up (0 = unidentified)
    long long start = 0;    // index into the current word where its image begins
    long long len = 0;      // visible length
    bool complete = false;  // the whole image lies inside the window
    int phase = 0;          // offset of the visible part inside the image
};

// Split a level-0 window along the hat structure; every letter pins its
// parent and phase, so even boundary blocks are identified.
std::vector<Block> hat_blocks(const HatLookup& hl, const Word& w) {
    std::vector<Block> out;
    for (size_t p = 0; p < w.size(); ++p) {
        Letter par = hl.parent[size_t(w[p])];
        int off = hl.offset[size_t(w[p])];
        if (par == 0) throw AnalysisError("desubstitute: letter outside the edge alphabet");
        bool cont = !out.empty() && out.back().letter == par &&
                    out.back().phase + out.back().len == off &&
                    out.back().start + out.back().len == (long long)p;
        if (cont) {
            out.back().len += 1;
        } else {
            out.push_back({par, (long long)p, 1, false, off});
        }
    }
    for (Block& b : out) {
        int il = hl.image_len[size_t(b.letter) - 1];
        b.complete = b.phase == 0 && b.len == il;
        b.start -= b.phase;  // image start in window coordinates
    }
    return out;
}

// Split a level >= 1 window at the cut marker; interior segments match
// whole images, boundary segments are kept only when unambiguous.
std::vector<Block> marker_blocks(const Morphism& tau, const Word& w) {
    Letter marker = tau.target.size;
    std::vector<long long> cuts;  // cut before index p
    for (size_t p = 1; p < w.size(); ++p)
        if (w[p - 1] == marker && w[p] == 1) cuts.push_back((long long)p);

    std::map<Word, Letter> image_of;
    for (int u = 1; u <= tau.source.size; ++u) {
        auto [it, fresh] = image_of.emplace(tau.image(u), u);
        if (!fresh)
            throw AnalysisError("desubstitute: images not injective on symbols");
    }

    if (cuts.empty()) {
        // cut-free window: only a whole single image is identifiable
        auto it = image_of.find(w);
        if (it == image_of.end())
            throw AnalysisError("desubstitute: no cut marker in window (window too short)");
        return {{it->second, 0, (long long)w.size(), true, 0}};
    }

    std::vector<Block> out;
    auto segment = [&](long long a, long long b) { return Word(w.begin() + a, w.begin() + b); };

    // leading partial segment: unique suffix match keeps it
    if (cuts[0] > 0) {
        Word seg = segment(0, cuts[0]);
        Letter found = 0;
        int hits = 0;
        for (int u = 1; u <= tau.source.size; ++u) {
            const Word& im = tau.image(u);
            if (im.size() >= seg.size() &&
                std::equal(seg.begin(), seg.end(), im.end() - (long)seg.size())) {
                ++hits;
                found = u;
            }
        }
        if (hits == 1) {
            const Word& im = tau.image(found);
            out.push_back({found, cuts[0] - (long long)im.size(), (long long)seg.size(),
                           im.size() == seg.size(), (int)(im.size() - seg.size())});
        }
    }
    for (size_t c = 0; c + 1 < cuts.size(); ++c) {
        Word seg = segment(cuts[c], cuts[c + 1]);
        auto it = image_of.find(seg);
        if (it == image_of.end())
            throw AnalysisError("desubstitute: interior segment matches no image "
                                "(property violation)");
        out.push_back({it->second, cuts[c], (long long)seg.size(), true, 0});
    }
    // trailing partial segment: unique prefix match keeps it
    {
        Word seg = segment(cuts.back(), (long long)w.size());
        Letter found = 0;
        int hits = 0;
        for (int u = 1; u <= tau.source.size; ++u) {
            const Word& im = tau.image(u);
            if (im.size() >= seg.size() && std::equal(seg.begin(), seg.end(), im.begin())) {
                ++hits;
                found = u;
            }
        }
        if (hits == 1)
            out.push_back({found, cuts.back(), (long long)seg.size(),
                           tau.image(found).size() == seg.size(), 0});
    }
    return out;
}

}  // namespace

DesubResult desubstitute_window(const DirectiveSequence& t, const PositionedWord& pw,
                                int to_level) {
    if (to_level < 1) throw std::invalid_argument("desubstitute_window: to_level must be >= 1");
    if (pw.letters.empty()) throw std::invalid_argument("desubstitute_window: empty window");
    if (pw.start > 0 || pw.start + (long long)pw.letters.size() <= 0)
        throw std::invalid_argument("desubstitute_window: position 0 must lie inside the window");

    Word cur = pw.letters;
    long long cur_start = pw.start;
    long long r = 0;

    // per-level composed image lengths of single letters
    std::vector<std::vector<long long>> lens;  // lens[l][a-1] = |tau_{[0,l)}(a)|
    lens.push_back(std::vector<long long>(size_t(t.alphabet(0).size), 1));

    for (int l = 0; l < to_level; ++l) {
        Morphism tau = t.at(l);
        std::vector<Block> blocks =
            l == 0 ? hat_blocks(HatLookup(tau), cur) : marker_blocks(tau, cur);
        if (blocks.empty())
            throw AnalysisError("desubstitute: nothing identified at level " + std::to_string(l));

        // locate the block covering position 0 of the current coordinates
        long long zero_idx = -cur_start;
        int zb = -1;
        for (size_t b = 0; b < blocks.size(); ++b)
            if (blocks[b].start <= zero_idx &&
                zero_idx < blocks[b].start + (long long)tau.image(blocks[b].letter).size())
                zb = (int)b;
        if (zb < 0)
            throw AnalysisError("desubstitute: position 0 not covered by an identified image "
                                "at level " + std::to_string(l));

        // blocks must be contiguous around zb; trim to the contiguous range
        int lo = zb, hi = zb;
        while (lo > 0 && blocks[size_t(lo) - 1].start + (long long)tau.image(blocks[size_t(lo) - 1].letter).size() ==
                             blocks[size_t(lo)].start)
            --lo;
        while (hi + 1 < (int)blocks.size() &&
               blocks[size_t(hi)].start + (long long)tau.image(blocks[size_t(hi)].letter).size() ==
                   blocks[size_t(hi) + 1].start)
            ++hi;

        // accumulate r: offset of position 0 inside the covering image, in
        // level-0 coordinates
        long long inner = zero_idx - blocks[size_t(zb)].start;  // letters at level l
        const Word& im = tau.image(blocks[size_t(zb)].letter);
        for (long long q = 0; q < inner; ++q) r += lens[size_t(l)][size_t(im[size_t(q)]) - 1];

        // next level word and coordinates: position 0 = the covering letter
        Word next;
        for (int b = lo; b <= hi; ++b) next.push_back(blocks[size_t(b)].letter);
        cur_start = -(long long)(zb - lo);
        cur = std::move(next);

        std::vector<long long> ll(size_t(tau.source.size), 0);
        for (int a = 1; a <= tau.source.size; ++a) {
            long long s = 0;
            for (Letter b : tau.image(a)) s += lens[size_t(l)][size_t(b) - 1];
            ll[size_t(a) - 1] = s;
        }
        lens.push_back(std::move(ll));
    }

    DesubResult res;
    res.letters = cur;
    res.zero_index = size_t(-cur_start);
    res.offset_r = r;
    return res;
}

// ---------------------------------------------------------------------------
// asymptotic pair windows

AsymptoticPairWindow asymptotic_pair_windows(const DirectiveSequence& t, int component,
                                             int level, int k) {
    if (component < 1) throw std::invalid_argument("component index must be >= 1");
    if (k >= 0 && component > k)
        throw std::invalid_argument("component index exceeds k");
    if (level < 1) throw std::invalid_argument("level must be >= 1");

    int i = component;
    Word base;
    for (int j = 1; j < i; ++j) { base.push_back(j); base.push_back(j); }
    Word head = base;
    head.push_back(i);  // v_1^2 ... v_{i-1}^2 v_i
    Word wc = head;
    wc.push_back(i);  // ends v_i v_i
    Word uc = head;
    uc.push_back(i + 1);  // ends v_i v_{i+1}

    long long alpha = 0;
    Morphism M = t.at(0);
    for (int lv = 1; lv <= level; ++lv) {
        if (lv > 1) M = compose(M, t.at(lv - 1));
        if (t.alphabet(lv).size < i + 1)
            throw std::invalid_argument("alphabet at level " + std::to_string(lv) +
                                        " too small for component " + std::to_string(i));
        alpha -= (long long)M.apply(head).size();
    }

    AsymptoticPairWindow out;
    out.component = i;
    out.level = level;
    out.offset = alpha;
    bool odd = level % 2 == 1;
    out.x_window = M.apply(odd ? wc : uc);
    out.y_window = M.apply(odd ? uc : wc);
    return out;
}

// ---------------------------------------------------------------------------
// branch ladder and signal audit

namespace {

// Mandated bifurcation context at a level with alphabet size m:
// v_m v_1^2 ... v_{i-1}^2 v_i for signal i; in the countable mode a signal 1
// may also be preceded by v_m v_1 (one extra letter 1).
// Returns 1 = matches, 0 = determined mismatch, -1 = window too short.
int context_state(const Word& w, int signal, int m, bool pk) {
    Word want;
    want.push_back(m);
    for (int j = 1; j < signal; ++j) { want.push_back(j); want.push_back(j); }
    want.push_back(signal);
    if (w.size() >= want.size() &&
        std::equal(want.begin(), want.end(), w.end() - (long)want.size()))
        return 1;
    if (!pk && signal == 1) {
        Word alt = {m, 1, 1};
        if (w.size() >= alt.size() &&
            std::equal(alt.begin(), alt.end(), w.end() - (long)alt.size()))
            return 1;
        if (w.size() < alt.size()) return -1;
        return 0;
    }
    if (w.size() < want.size()) return -1;
    return 0;
}

struct StepUp {
    bool resolved = false;
    Word window;  // identified letters left of the bifurcation, one level up
    std::vector<Letter> followers;
    bool transient = false;  // structurally impossible for an asymptotic pair
};

StepUp step_up(const Morphism& tau, int level, const Word& w,
               const std::vector<Letter>& followers) {
    StepUp out;
    if (level == 0) {
        HatLookup hl(tau);
        Letter last = w.back();
        if (hl.parent[size_t(last)] == 0) return out;
        // an asymptotic bifurcation always sits at an image boundary
        if (hl.offset[size_t(last)] + 1 != hl.image_len[size_t(hl.parent[size_t(last)]) - 1]) {
            out.transient = true;
            return out;
        }
        for (Letter f : followers) {
            if (hl.parent[size_t(f)] == 0) return out;
            if (hl.offset[size_t(f)] != 0) {
                out.transient = true;
                return out;
            }
            out.followers.push_back(hl.parent[size_t(f)]);
        }
        std::vector<Block> blocks = hat_blocks(hl, w);
        for (const Block& b : blocks) out.window.push_back(b.letter);
        out.resolved = true;
    } else {
        Letter marker = tau.target.size;
        std::vector<size_t> cuts;
        for (size_t p = 1; p < w.size(); ++p)
            if (w[p - 1] == marker && w[p] == 1) cuts.push_back(p);
        if (cuts.empty()) return out;

        Word window;
        // leading partial segment, when unambiguous
        if (cuts[0] > 0) {
            Word seg(w.begin(), w.begin() + (long)cuts[0]);
            Letter found = 0;
            int hits = 0;
            for (int u = 1; u <= tau.source.size; ++u) {
                const Word& im = tau.image(u);
                if (im.size() > seg.size() &&
                    std::equal(seg.begin(), seg.end(), im.end() - (long)seg.size())) {
                    ++hits;
                    found = u;
                }
            }
            if (hits == 1) window.push_back(found);
        }
        for (size_t c = 0; c + 1 < cuts.size(); ++c) {
            Word seg(w.begin() + (long)cuts[c], w.begin() + (long)cuts[c + 1]);
            Letter found = 0;
            int hits = 0;
            for (int u = 1; u <= tau.source.size; ++u)
                if (tau.image(u) == seg) { ++hits; found = u; }
            if (hits != 1) return out;  // ambiguous or no match: stop the ladder
            window.push_back(found);
        }
        if (window.empty()) return out;
        Word trail(w.begin() + (long)cuts.back(), w.end());
        for (Letter f : followers) {
            Word probe = trail;
            probe.push_back(f);
            Letter cand = 0;
            int hits = 0;
            for (int u = 1; u <= tau.source.size; ++u) {
                const Word& im = tau.image(u);
                if (im.size() >= probe.size() &&
                    std::equal(probe.begin(), probe.end(), im.begin())) {
                    ++hits;
                    cand = u;
                }
            }
            if (hits != 1) return out;
            out.followers.push_back(cand);
        }
        out.window = std::move(window);
        out.resolved = true;
    }
    std::sort(out.followers.begin(), out.followers.end());
    out.followers.erase(std::unique(out.followers.begin(), out.followers.end()),
                        out.followers.end());
    if (out.resolved && out.followers.size() < 2) {
        // the two continuations merged one level up: not an asymptotic split
        out.transient = true;
        out.resolved = false;
    }
    return out;
}

}  // namespace

BranchLadder trace_branch(const DirectiveSequence& t, std::optional<int> k, int start_level,
                          const Word& window, const std::vector<Letter>& followers,
                          int max_level) {
    BranchLadder lad;
    Word w = window;
    std::vector<Letter> fol = followers;
    bool pk = k.has_value();

    for (int l = start_level; l <= max_level; ++l) {
        if (l >= 1) {
            LadderStep step;
            step.level = l;
            step.signal = w.back();
            step.followers = fol;
            int m = t.alphabet(l).size;
            int ctx = context_state(w, step.signal, m, pk);
            if (ctx == -1) break;  // window exhausted before the context is visible
            step.context_ok = ctx == 1;
            if (!step.context_ok) {
                lad.is_component = false;
                lad.steps.push_back(std::move(step));
                break;  // a finite alignment, not a component shadow
            }
            if (lad.component_signal == 0) lad.component_signal = step.signal;
            int bound = pk ? *k : l;
            step.bound_ok = step.signal <= bound;
            step.followers_ok = fol.size() == 2 && fol[0] == step.signal &&
                                fol[1] == step.signal + 1;
            if (!step.bound_ok)
                lad.violations.push_back("level " + std::to_string(l) + ": signal " +
                                         std::to_string(step.signal) + " exceeds " +
                                         std::to_string(bound));
            if (!step.followers_ok)
                lad.violations.push_back("level " + std::to_string(l) +
                                         ": follower set of signal " +
                                         std::to_string(step.signal) +
                                         " is not {v_i, v_i+1}");
            lad.steps.push_back(std::move(step));
        }
        if (l == max_level || !t.has_level(l)) break;
        StepUp up = step_up(t.at(l), l, w, fol);
        if (up.transient) {
            lad.is_component = false;
            break;
        }
        if (!up.resolved) break;
        w = std::move(up.window);
        fol = std::move(up.followers);
    }
    if (lad.steps.empty() && start_level >= 1) lad.is_component = false;
    return lad;
}

ComponentCensus asymptotic_component_census(const DirectiveSequence& t,
                                            const RightSpecialReport& rep,
                                            std::optional<int> k, int max_level) {
    ComponentCensus census;
    for (const StabilizedBranch& sb : rep.stabilized) {
        BranchLadder lad =
            trace_branch(t, k, rep.level, sb.witness, sb.followers, max_level);
        lad.suffix = sb.word;
        if (!lad.violations.empty()) census.signal_violations = true;
        if (lad.is_component && lad.component_signal > 0)
            census.component_signals.insert(lad.component_signal);
        census.branches.push_back(std::move(lad));
    }
    census.component_count = (long long)census.component_signals.size();
    return census;
}

SignalAudit signal_audit(const DirectiveSequence& t, std::optional<int> k, int level_max,
                         int m_cap) {
    SignalAudit audit;
    audit.pk = k.has_value();
    audit.k = k.value_or(0);
    if (audit.pk && audit.k < 1) throw std::invalid_argument("signal_audit: k must be >= 1");

    std::set<int> prev_committed;
    bool have_prev = false;
    for (int l = 0; l <= level_max; ++l) {
        long long maxim = 1;
        if (t.has_level(l)) maxim = t.at(l).max_image_len();
        int m = (int)std::min<long long>(m_cap, 3 * maxim + 24 * (audit.k + l + 2));
        m = std::max(m, 32);
        int delta = m / 4;

        RightSpecialReport rep;
        try {
            rep = right_special_report(t, m, delta, l, false);
        } catch (const std::exception&) {
            break;  // directive too short to analyse this level
        }

        LevelAudit la;
        la.level = l;
        la.m_used = m;
        la.delta_used = delta;

        std::set<int> committed;
        for (const StabilizedBranch& sb : rep.stabilized) {
            BranchLadder lad = trace_branch(t, k, l, sb.witness, sb.followers, l + 2);
            BranchAudit ba;
            ba.stabilized_suffix = sb.word;
            ba.followers = sb.followers;
            ba.signal_index = l >= 1 ? sb.witness.back() : 0;
            ba.transient = !lad.is_component;
            if (!lad.steps.empty()) {
                const LadderStep& s0 = lad.steps.front();
                ba.signal_index = s0.signal;
                ba.follower_pair_ok = s0.followers_ok;
                ba.predecessor_ok = s0.context_ok;
                if (lad.steps.size() > 1) {
                    ba.next_signal_index = lad.steps[1].signal;
                    ba.next_followers = lad.steps[1].followers;
                }
            }
            size_t ctx = std::min<size_t>(sb.witness.size(), 2 * size_t(audit.pk ? audit.k : l) + 2);
            ba.predecessor_context = Word(sb.witness.end() - (long)ctx, sb.witness.end());
            for (const std::string& v : lad.violations) {
                audit.counterexamples.push_back(v + " (analysed at level " +
                                                std::to_string(l) + ")");
                audit.all_ok = false;
            }
            if (lad.is_component && lad.component_signal >= 2)
                committed.insert(lad.component_signal);
            if (audit.pk && lad.is_component) {
                for (size_t s = 1; s < lad.steps.size(); ++s)
                    if (lad.steps[s].signal != lad.steps[0].signal)
                        audit.stabilization_ok = false;
            }
            la.branches.push_back(std::move(ba));
        }

        if (!audit.pk && l >= 1 && have_prev) {
            for (int c : prev_committed)
                if (!committed.count(c)) audit.stabilization_ok = false;
        }
        if (l >= 1) {
            prev_committed = committed;
            have_prev = true;
        }
        audit.levels.push_back(std::move(la));
    }
    return audit;
}

}  // namespace sadic
