#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sadic {

// Letters are dense 1-based indices into a level alphabet. Human-readable
// names exist only at the I/O boundary.
using Letter = int32_t;
using Word = std::vector<Letter>;

struct LevelAlphabet {
    int level = 0;  // >= 0
    int size = 0;   // >= 1
    bool operator==(const LevelAlphabet&) const = default;
};

// Non-negative integer matrix. Entry (i,j) counts occurrences of target
// letter j in the image of source letter i, so row i sums to |image(i)|.
struct IncidenceMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<long long> e;  // row-major

    IncidenceMatrix() = default;
    IncidenceMatrix(int r, int c) : rows(r), cols(c), e(size_t(r) * c, 0) {}

    long long& at(int i, int j) { return e[size_t(i) * cols + j]; }
    long long at(int i, int j) const { return e[size_t(i) * cols + j]; }

    long long row_sum(int i) const {
        long long s = 0;
        for (int j = 0; j < cols; ++j) s += at(i, j);
        return s;
    }
    long long min_entry() const;
    bool positive() const { return min_entry() > 0; }
    bool operator==(const IncidenceMatrix&) const = default;
};

// Throws on arithmetic overflow; telescoped products grow fast.
IncidenceMatrix multiply(const IncidenceMatrix& a, const IncidenceMatrix& b);

// tau: source^* -> target^*, non-erasing (every image nonempty).
struct Morphism {
    LevelAlphabet source;  // level n+1
    LevelAlphabet target;  // level n
    std::vector<Word> images;  // images[i-1] = image of letter i

    const Word& image(Letter a) const { return images[size_t(a) - 1]; }
    Word apply(const Word& w) const;
    long long min_image_len() const;
    long long max_image_len() const;
    void validate() const;  // throws std::invalid_argument
};

struct MorphismReport {
    IncidenceMatrix incidence;
    bool primitive = false;
    bool left_proper = false;
    bool right_proper = false;
    bool hat = false;
    bool injective_on_symbols = false;
};

IncidenceMatrix incidence_of(const Morphism& m);
MorphismReport analyze_morphism(const Morphism& m);

// outer(inner(.)): inner.target must equal outer.source.
Morphism compose(const Morphism& outer, const Morphism& inner);

// All length-m contiguous subwords of w; empty set if |w| < m or m == 0.
std::set<Word> factors(const Word& w, size_t m);

// u prefix of w, or w prefix of u.
bool prefix_dependent(const Word& u, const Word& w);

Morphism identity_morphism(const LevelAlphabet& a);

std::string word_to_string(const Word& w);

}  // namespace sadic
