#include "sadic/core_words.hpp"

#include <algorithm>
#include <limits>

namespace sadic {

long long IncidenceMatrix::min_entry() const {
    long long m = std::numeric_limits<long long>::max();
    for (long long v : e) m = std::min(m, v);
    return e.empty() ? 0 : m;
}

IncidenceMatrix multiply(const IncidenceMatrix& a, const IncidenceMatrix& b) {
    if (a.cols != b.rows)
        throw std::invalid_argument("matrix shape mismatch: " + std::to_string(a.cols) +
                                    " vs " + std::to_string(b.rows));
    IncidenceMatrix r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            long long aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols; ++j) {
                long long p;
                if (__builtin_mul_overflow(aik, b.at(k, j), &p) ||
                    __builtin_add_overflow(r.at(i, j), p, &r.at(i, j)))
                    throw std::overflow_error("incidence matrix product overflow");
            }
        }
    return r;
}

Word Morphism::apply(const Word& w) const {
    Word out;
    size_t total = 0;
    for (Letter a : w) total += image(a).size();
    out.reserve(total);
    for (Letter a : w) {
        const Word& im = image(a);
        out.insert(out.end(), im.begin(), im.end());
    }
    return out;
}

long long Morphism::min_image_len() const {
    long long m = std::numeric_limits<long long>::max();
    for (const Word& im : images) m = std::min<long long>(m, (long long)im.size());
    return images.empty() ? 0 : m;
}

long long Morphism::max_image_len() const {
    long long m = 0;
    for (const Word& im : images) m = std::max<long long>(m, (long long)im.size());
    return m;
}

void Morphism::validate() const {
    if (source.size < 1 || target.size < 1)
        throw std::invalid_argument("alphabet sizes must be >= 1");
    if ((int)images.size() != source.size)
        throw std::invalid_argument("morphism must define exactly one image per source letter");
    for (size_t i = 0; i < images.size(); ++i) {
        if (images[i].empty())
            throw std::invalid_argument("empty image for letter " + std::to_string(i + 1));
        for (Letter a : images[i])
            if (a < 1 || a > target.size)
                throw std::invalid_argument("image letter out of range in image " +
                                            std::to_string(i + 1));
    }
}

IncidenceMatrix incidence_of(const Morphism& m) {
    IncidenceMatrix A(m.source.size, m.target.size);
    for (int i = 0; i < m.source.size; ++i)
        for (Letter a : m.images[i]) A.at(i, a - 1) += 1;
    return A;
}

MorphismReport analyze_morphism(const Morphism& m) {
    m.validate();
    MorphismReport r;
    r.incidence = incidence_of(m);
    r.primitive = r.incidence.positive();

    r.left_proper = true;
    r.right_proper = true;
    for (const Word& im : m.images) {
        if (im.front() != m.images[0].front()) r.left_proper = false;
        if (im.back() != m.images[0].back()) r.right_proper = false;
    }

    // hat: letter sets of distinct images are pairwise disjoint
    r.hat = true;
    {
        std::vector<int> owner(size_t(m.target.size) + 1, -1);
        for (int i = 0; i < m.source.size && r.hat; ++i)
            for (Letter a : m.images[i]) {
                if (owner[a] != -1 && owner[a] != i) { r.hat = false; break; }
                owner[a] = i;
            }
    }

    r.injective_on_symbols = true;
    for (size_t i = 0; i < m.images.size() && r.injective_on_symbols; ++i)
        for (size_t j = i + 1; j < m.images.size(); ++j)
            if (m.images[i] == m.images[j]) { r.injective_on_symbols = false; break; }
    return r;
}

Morphism compose(const Morphism& outer, const Morphism& inner) {
    if (!(inner.target == outer.source))
        throw std::invalid_argument("compose: inner.target != outer.source (level " +
                                    std::to_string(inner.target.level) + " size " +
                                    std::to_string(inner.target.size) + " vs level " +
                                    std::to_string(outer.source.level) + " size " +
                                    std::to_string(outer.source.size) + ")");
    Morphism r;
    r.source = inner.source;
    r.target = outer.target;
    r.images.reserve(inner.images.size());
    for (const Word& im : inner.images) r.images.push_back(outer.apply(im));
    return r;
}

std::set<Word> factors(const Word& w, size_t m) {
    std::set<Word> out;
    if (m == 0 || w.size() < m) return out;
    for (size_t i = 0; i + m <= w.size(); ++i)
        out.insert(Word(w.begin() + i, w.begin() + i + m));
    return out;
}

bool prefix_dependent(const Word& u, const Word& w) {
    const Word& a = u.size() <= w.size() ? u : w;
    const Word& b = u.size() <= w.size() ? w : u;
    return std::equal(a.begin(), a.end(), b.begin());
}

Morphism identity_morphism(const LevelAlphabet& a) {
    Morphism m;
    m.source = {a.level + 1, a.size};
    m.target = a;
    for (Letter i = 1; i <= a.size; ++i) m.images.push_back({i});
    return m;
}

std::string word_to_string(const Word& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(w[i]);
    }
    return s;
}

}  // namespace sadic
