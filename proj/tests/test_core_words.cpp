#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sadic/core_words.hpp"

using namespace sadic;

namespace {

Morphism make(int level, int src, int tgt, std::vector<Word> images) {
    Morphism m;
    m.source = {level + 1, src};
    m.target = {level, tgt};
    m.images = std::move(images);
    m.validate();
    return m;
}

// direct letter-counting oracle, independent of incidence_of
IncidenceMatrix count_oracle(const Morphism& m) {
    IncidenceMatrix A(m.source.size, m.target.size);
    for (int i = 1; i <= m.source.size; ++i)
        for (int j = 1; j <= m.target.size; ++j) {
            long long c = 0;
            for (Letter a : m.image(i)) c += a == j;
            A.at(i - 1, j - 1) = c;
        }
    return A;
}

Morphism random_morphism(std::mt19937& rng, int src, int tgt, int max_len) {
    std::uniform_int_distribution<int> len(1, max_len), letter(1, tgt);
    std::vector<Word> images;
    for (int i = 0; i < src; ++i) {
        Word w(size_t(len(rng)));
        for (Letter& a : w) a = letter(rng);
        images.push_back(std::move(w));
    }
    return make(0, src, tgt, images);
}

}  // namespace

TEST_CASE("analyze_morphism on the Fibonacci substitution") {
    Morphism fib = make(0, 2, 2, {{1, 2}, {1}});
    MorphismReport r = analyze_morphism(fib);
    CHECK(r.incidence == count_oracle(fib));
    CHECK(r.incidence.at(0, 0) == 1);
    CHECK(r.incidence.at(0, 1) == 1);
    CHECK(r.incidence.at(1, 0) == 1);
    CHECK(r.incidence.at(1, 1) == 0);
    CHECK_FALSE(r.primitive);
    CHECK(r.left_proper);
    CHECK_FALSE(r.right_proper);
    CHECK_FALSE(r.hat);
    CHECK(r.injective_on_symbols);
}

TEST_CASE("analyze_morphism identity is a hat") {
    Morphism id = identity_morphism({0, 2});
    MorphismReport r = analyze_morphism(id);
    CHECK(r.incidence.at(0, 0) == 1);
    CHECK(r.incidence.at(1, 1) == 1);
    CHECK(r.incidence.at(0, 1) == 0);
    CHECK(r.hat);
    CHECK(r.injective_on_symbols);
}

TEST_CASE("analyze_morphism equal images are not injective") {
    Morphism m = make(0, 2, 2, {{1, 2}, {1, 2}});
    CHECK_FALSE(analyze_morphism(m).injective_on_symbols);
}

TEST_CASE("hat implies injective on symbols") {
    std::mt19937 rng(7);
    for (int it = 0; it < 300; ++it) {
        Morphism m = random_morphism(rng, 3, 6, 4);
        MorphismReport r = analyze_morphism(m);
        if (r.hat) CHECK(r.injective_on_symbols);
    }
}

TEST_CASE("compose: Fibonacci squared") {
    Morphism lo = make(0, 2, 2, {{1, 2}, {1}});   // tau_0
    Morphism hi = make(1, 2, 2, {{1, 2}, {1}});   // tau_1
    Morphism sq = compose(lo, hi);
    CHECK(sq.image(1) == Word{1, 2, 1});
    CHECK(sq.image(2) == Word{1, 2});
    // incidence(compose) = incidence(inner) * incidence(outer)
    IncidenceMatrix prod = multiply(incidence_of(hi), incidence_of(lo));
    CHECK(incidence_of(sq) == prod);
    CHECK(prod.at(0, 0) == 2);
    CHECK(prod.at(0, 1) == 1);
    CHECK(prod.at(1, 0) == 1);
    CHECK(prod.at(1, 1) == 1);
}

TEST_CASE("compose with identity is identity") {
    Morphism m = make(0, 3, 2, {{1, 2}, {2, 2, 1}, {1}});
    Morphism inner_id = identity_morphism(m.source);  // level 2 -> 1
    Morphism composed = compose(m, inner_id);
    CHECK(composed.images == m.images);
    CHECK(composed.target == m.target);
}

TEST_CASE("compose rejects alphabet mismatch") {
    Morphism a = make(0, 2, 3, {{1, 2, 3}, {3}});
    Morphism b = make(1, 2, 2, {{1, 2}, {1}});
    CHECK_THROWS_AS(compose(b, a), std::invalid_argument);
}

TEST_CASE("composition homomorphism on random morphisms") {
    std::mt19937 rng(11);
    for (int it = 0; it < 200; ++it) {
        int a = 1 + (int)(rng() % 4), b = 1 + (int)(rng() % 4), c = 1 + (int)(rng() % 4);
        Morphism outer = random_morphism(rng, b, c, 5);
        outer.source.level = 1;
        outer.target.level = 0;
        Morphism inner = random_morphism(rng, a, b, 5);
        inner.source.level = 2;
        inner.target.level = 1;
        Morphism comp = compose(outer, inner);
        CHECK(incidence_of(comp) == multiply(incidence_of(inner), incidence_of(outer)));
        for (int i = 1; i <= a; ++i) {
            long long len = 0;
            for (int j = 0; j < c; ++j) len += incidence_of(comp).at(i - 1, j);
            CHECK(len == (long long)comp.image(i).size());
        }
    }
}

TEST_CASE("factors") {
    Word abab = {1, 2, 1, 2};
    auto f2 = factors(abab, 2);
    CHECK(f2 == std::set<Word>{{1, 2}, {2, 1}});
    CHECK(factors(abab, 4) == std::set<Word>{abab});
    CHECK(factors(Word{1, 1, 1}, 2) == std::set<Word>{{1, 1}});
    CHECK(factors(abab, 5).empty());
    CHECK(factors(abab, 0).empty());
}

TEST_CASE("prefix_dependent") {
    CHECK(prefix_dependent({1, 2}, {1, 2, 2, 1}));
    CHECK_FALSE(prefix_dependent({1, 2}, {2, 1}));
    CHECK(prefix_dependent({1, 2}, {1, 2}));
    CHECK(prefix_dependent({}, {1}));

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> len(0, 5), letter(1, 2);
    for (int it = 0; it < 300; ++it) {
        Word u(size_t(len(rng))), w(size_t(len(rng)));
        for (Letter& a : u) a = letter(rng);
        for (Letter& a : w) a = letter(rng);
        CHECK(prefix_dependent(u, u));                          // reflexive
        CHECK(prefix_dependent(u, w) == prefix_dependent(w, u));  // symmetric
    }
}

TEST_CASE("letter-count conservation") {
    std::mt19937 rng(5);
    for (int it = 0; it < 200; ++it) {
        Morphism m = random_morphism(rng, 4, 5, 6);
        IncidenceMatrix A = incidence_of(m);
        for (int i = 1; i <= 4; ++i) CHECK(A.row_sum(i - 1) == (long long)m.image(i).size());
    }
}
