#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sadic/constructions.hpp"
#include "sadic/demos.hpp"

using namespace sadic;

namespace {

IncidenceMatrix mat(std::vector<std::vector<long long>> rows) {
    IncidenceMatrix A((int)rows.size(), (int)rows[0].size());
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) A.at(i, j) = rows[size_t(i)][size_t(j)];
    return A;
}

Word pattern(std::initializer_list<std::pair<int, int>> blocks) {
    Word w;
    for (auto [letter, count] : blocks)
        for (int c = 0; c < count; ++c) w.push_back(letter);
    return w;
}

std::vector<long long> letter_counts(const Word& w, int m) {
    std::vector<long long> c(size_t(m), 0);
    for (Letter a : w) c[size_t(a) - 1]++;
    return c;
}

}  // namespace

TEST_CASE("amplify_diagram: bounds hold and the certificate verifies") {
    for (int k : {1, 2, 3}) {
        auto res = amplify_diagram(uniform_seed(2, 50, 14), k);
        const BratteliDiagram& d = res.derived;
        REQUIRE(d.levels() >= 5);
        for (int n = 1; n < d.levels(); ++n) CHECK(d.size(n) > std::max(n, k));
        for (int n = 1; n + 1 < d.levels(); ++n)
            CHECK(d.matrix(n).min_entry() >= std::max<long long>(d.size(n + 1), k + 2));
        CHECK(check_intertwining(uniform_seed(2, 50, 14), d, res.cert));

        // perturbed certificate must fail
        auto bad = res.cert;
        bad.factors[0].second.at(0, 0) += 1;
        CHECK_FALSE(check_intertwining(uniform_seed(2, 50, 14), d, bad));
    }
}

TEST_CASE("amplify_diagram: degenerate copy count keeps C = A") {
    // when |W_n| == |V_n| the round-robin surjection is the identity and the
    // split leaves the matrix unchanged
    BratteliDiagram d;
    d.level_sizes = {1, 4, 4, 4, 4};
    IncidenceMatrix root(4, 1);
    for (int i = 0; i < 4; ++i) root.at(i, 0) = 60;
    d.matrices.push_back(root);
    IncidenceMatrix A(4, 4);
    for (auto& e : A.e) e = 60;
    for (int n = 1; n < 4; ++n) d.matrices.push_back(A);

    auto res = amplify_diagram(d, 1);
    REQUIRE(res.derived.size(1) == 4);
    const auto& [B1, C1] = res.cert.factors[0];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(B1.at(i, j) == (i == j ? 1 : 0));
    CHECK(C1 == telescope(d, res.cert.keep).matrix(1));
}

TEST_CASE("amplify_diagram error paths") {
    // all-ones entries leave no telescoping room in a short window
    BratteliDiagram ones;
    ones.level_sizes = {1, 2, 2, 2};
    ones.matrices.push_back(mat({{1}, {1}}));
    ones.matrices.push_back(mat({{1, 1}, {1, 1}}));
    ones.matrices.push_back(mat({{1, 1}, {1, 1}}));
    CHECK_THROWS_AS(amplify_diagram(ones, 1), ConstructionError);

    // non-simple: reducible matrices never telescope to positive
    BratteliDiagram red;
    red.level_sizes = {1, 2, 2, 2, 2};
    red.matrices.push_back(mat({{1}, {1}}));
    for (int n = 0; n < 3; ++n) red.matrices.push_back(mat({{200, 0}, {0, 200}}));
    CHECK_THROWS_WITH_AS(amplify_diagram(red, 1), doctest::Contains("non-simple"),
                         ConstructionError);
}

TEST_CASE("assign_pk_ordering: spec arrangement examples") {
    // |V_n| = 3, k = 1, row (5,5,5)
    BratteliDiagram d;
    d.level_sizes = {1, 3, 3};
    IncidenceMatrix root(3, 1);
    for (int i = 0; i < 3; ++i) root.at(i, 0) = 2;
    d.matrices.push_back(root);
    d.matrices.push_back(mat({{5, 5, 5}, {5, 5, 5}, {5, 5, 5}}));

    auto ob = assign_pk_ordering(d, 1, InteriorStyle::AscendingBlocks);
    // vertex 1: v1 v2 v1^4 v2^4 v3^5
    CHECK(ob.order_word(1, 1) == pattern({{1, 1}, {2, 1}, {1, 4}, {2, 4}, {3, 5}}));
    // vertex 3 (> k+1): v1^3 v2 v1^2 v2^4 v3^5
    CHECK(ob.order_word(1, 3) == pattern({{1, 3}, {2, 1}, {1, 2}, {2, 4}, {3, 5}}));
    // counts, prefix, suffix, no marker factor
    for (int i = 1; i <= 3; ++i) {
        const Word& w = ob.order_word(1, i);
        CHECK(letter_counts(w, 3) == std::vector<long long>{5, 5, 5});
        CHECK(w.back() == 3);
        for (size_t p = 0; p + 1 < w.size(); ++p) CHECK_FALSE((w[p] == 3 && w[p + 1] == 1));
    }
}

TEST_CASE("assign_pk_ordering: precondition violations cite the condition") {
    BratteliDiagram d;
    d.level_sizes = {1, 3, 3};
    IncidenceMatrix root(3, 1);
    for (int i = 0; i < 3; ++i) root.at(i, 0) = 2;
    d.matrices.push_back(root);
    d.matrices.push_back(mat({{5, 5, 5}, {5, 5, 5}, {2, 5, 5}}));  // (3,1) = 2 < 3
    CHECK_THROWS_WITH_AS(assign_pk_ordering(d, 1), doctest::Contains("condition (iv)"),
                         ConstructionError);

    BratteliDiagram small;  // |V_n| = k+1 = 2: clause (4) conflict
    small.level_sizes = {1, 2, 2};
    small.matrices.push_back(mat({{2}, {2}}));
    small.matrices.push_back(mat({{5, 5}, {5, 5}}));
    CHECK_THROWS_WITH_AS(assign_pk_ordering(small, 1), doctest::Contains("condition (ii)"),
                         ConstructionError);
}

TEST_CASE("assign orderings pass their own property checks") {
    for (auto style : {InteriorStyle::AscendingBlocks, InteriorStyle::Interleaved}) {
        for (int k : {1, 2, 3}) {
            auto amp = amplify_diagram(uniform_seed(2, 50, 12), k);
            auto t = read_morphisms(assign_pk_ordering(amp.derived, k, style));
            auto res = check_pk(t, k);
            CHECK_MESSAGE(res.ok(), res.failure);
            if (res.ok()) {
                // decomposition re-concatenates to the image
                for (size_t n = 0; n < res.witness->levels.size(); ++n)
                    for (const auto& dec : res.witness->levels[n]) {
                        Word re = dec.prefix;
                        re.insert(re.end(), dec.interior.begin(), dec.interior.end());
                        re.push_back(dec.suffix);
                        CHECK(re == t.at((int)n + 1).image(dec.letter));
                    }
            }
        }
        AmplifyOptions opts;
        opts.size_slack = 1;
        auto amp = amplify_diagram(uniform_seed(2, 50, 12), 1, opts);
        auto t = read_morphisms(assign_pinf_ordering(amp.derived, style));
        auto res = check_pinf(t);
        CHECK_MESSAGE(res.ok(), res.failure);
    }
}

TEST_CASE("prefix independence of distinct composed letter images") {
    // finite-level check: tau_{[0,n)}(v_i) and tau_{[0,n)}(v_{i+1}) are not
    // prefix dependent for i <= k
    int k = 2;
    auto amp = amplify_diagram(uniform_seed(2, 50, 12), k);
    auto t = read_morphisms(assign_pk_ordering(amp.derived, k));
    for (int n = 2; n <= 4; ++n) {
        Morphism M = t.composed(0, n);
        for (int i = 1; i <= k; ++i)
            CHECK_FALSE(prefix_dependent(M.image(i), M.image(i + 1)));
    }
}

TEST_CASE("check_pk rejects clause violations") {
    auto amp = amplify_diagram(uniform_seed(2, 50, 10), 1);
    auto t = read_morphisms(assign_pk_ordering(amp.derived, 1));

    // image ending in v_1: clause (4)
    DirectiveSequence broken = t;
    broken.prefix[2].images[0].back() = 1;
    auto r = check_pk(broken, 1);
    CHECK_FALSE(r.ok());
    CHECK(r.clause == 4);
    CHECK(r.level == 2);

    // marker factor inside an image: clause (4)
    DirectiveSequence marked = t;
    int m = marked.prefix[2].target.size;
    Word& im = marked.prefix[2].images[1];
    im[im.size() / 2] = m;
    im[im.size() / 2 + 1] = 1;
    auto r2 = check_pk(marked, 1);
    CHECK_FALSE(r2.ok());
    CHECK(r2.clause == 4);

    // non-hat tau_0
    DirectiveSequence nohat = t;
    nohat.prefix[0].images[1] = nohat.prefix[0].images[0];
    auto r3 = check_pk(nohat, 1);
    CHECK_FALSE(r3.ok());
    CHECK(r3.clause == 0);
}

TEST_CASE("interleave_counts respects counts, adjacency, and the marker rule") {
    std::vector<long long> counts = {20, 18, 25, 17};
    Word w = interleave_counts(counts, 2, 4);
    std::vector<long long> seen(4, 0);
    for (Letter a : w) seen[size_t(a) - 1]++;
    CHECK(seen == counts);
    for (size_t p = 0; p + 1 < w.size(); ++p) {
        CHECK_FALSE((w[p] == w[p + 1]));            // no adjacent repeats
        CHECK_FALSE((w[p] == 4 && w[p + 1] == 1));  // marker rule
    }
}

TEST_CASE("toeplitz_morphisms: Def 6.1 images, k = 1, row (4,4,4)") {
    BratteliDiagram d;
    d.level_sizes = {1, 3, 3, 3};
    IncidenceMatrix root(3, 1);
    for (int i = 0; i < 3; ++i) root.at(i, 0) = 4;
    d.matrices.push_back(root);
    d.matrices.push_back(mat({{4, 4, 4}, {4, 4, 4}, {4, 4, 4}}));
    d.matrices.push_back(mat({{4, 4, 4}, {4, 4, 4}, {4, 4, 4}}));

    DirectiveSequence t = toeplitz_morphisms(d, 1);
    REQUIRE(t.prefix_levels() == 3);
    CHECK(analyze_morphism(t.at(0)).hat);

    Morphism tau1 = t.at(1);
    // i=1: v1^3 v2 v1 v2^3 v3^4, length 12
    CHECK(tau1.image(1) == pattern({{1, 3}, {2, 1}, {1, 1}, {2, 3}, {3, 4}}));
    CHECK(tau1.image(1).size() == 12);
    // i=2 (s=2): v1^2 v2 v1^2 v2^3 v3^4
    CHECK(tau1.image(2) == pattern({{1, 2}, {2, 1}, {1, 2}, {2, 3}, {3, 4}}));
    // i=3 (s=1): v1 v2 v1^3 v2^3 v3^4
    CHECK(tau1.image(3) == pattern({{1, 1}, {2, 1}, {1, 3}, {2, 3}, {3, 4}}));

    // counts match rows, lengths equal per level
    for (int i = 1; i <= 3; ++i) {
        CHECK(letter_counts(tau1.image(i), 3) == std::vector<long long>{4, 4, 4});
        CHECK(tau1.image(i).size() == tau1.image(1).size());
    }

    // D_s adjacency: a class member is never followed by a different member
    // of the same class (k = 1: D_0 = {1}, D_s = {i > 1, i = s mod 2})
    auto cls = [&](Letter a) { return a == 1 ? 0 : (int)((a - 1) % 2) + 1; };
    for (int i = 1; i <= 3; ++i) {
        const Word& im = tau1.image(i);
        for (size_t p = 0; p + 1 < im.size(); ++p)
            if (cls(im[p]) == cls(im[p + 1])) CHECK(im[p] == im[p + 1]);
    }
}

TEST_CASE("toeplitz_morphisms error paths") {
    BratteliDiagram d;
    d.level_sizes = {1, 3, 3};
    IncidenceMatrix root(3, 1);
    for (int i = 0; i < 3; ++i) root.at(i, 0) = 3;
    d.matrices.push_back(root);
    d.matrices.push_back(mat({{3, 3, 3}, {3, 3, 3}, {3, 3, 3}}));  // entries <= 3
    CHECK_THROWS_WITH_AS(toeplitz_morphisms(d, 1), doctest::Contains("entry <= 3"),
                         ConstructionError);

    BratteliDiagram uneq;
    uneq.level_sizes = {1, 3, 3};
    IncidenceMatrix r2(3, 1);
    for (int i = 0; i < 3; ++i) r2.at(i, 0) = 4;
    uneq.matrices.push_back(r2);
    uneq.matrices.push_back(mat({{4, 4, 4}, {4, 4, 5}, {4, 4, 4}}));
    CHECK_FALSE(check_equal_row_sums(uneq));
    CHECK_THROWS_AS(toeplitz_morphisms(uneq, 1), ConstructionError);
}

TEST_CASE("check_equal_row_sums and telescoping preserve the property") {
    BratteliDiagram d = demo_diagram("toeplitz-k1");
    CHECK(check_equal_row_sums(d));
    CHECK(check_equal_row_sums(telescope(d, {0, 2, 4, 6})));

    BratteliDiagram bad;
    bad.level_sizes = {1, 2, 2};
    bad.matrices.push_back(mat({{6}, {6}}));
    bad.matrices.push_back(mat({{6, 6}, {6, 7}}));
    CHECK_FALSE(check_equal_row_sums(bad));
}

TEST_CASE("subexp family: alpha search oracle and de Bruijn coverage") {
    auto fam = build_subexp_family(growth_pow2_sqrt(), 1);
    REQUIRE(fam.spec.levels.size() == 1);

    // independent oracle: 2^(a-1) >= 2^sqrt(3a) iff (a-1)^2 >= 3a, integers
    long long alpha = 0;
    for (long long a = 1; a < 100; ++a)
        if (a >= 1 && (a - 1) * (a - 1) >= 3 * a) { alpha = a; break; }
    CHECK(alpha == 5);
    CHECK(fam.spec.levels[0].alpha == alpha);

    // covering word: all 32 binary length-5 words over {v2, v3}
    const Word& w = fam.spec.levels[0].cover_word;
    CHECK(w.size() >= 36);
    std::set<Word> seen;
    for (size_t p = 0; p + 5 <= w.size(); ++p)
        seen.insert(Word(w.begin() + (long)p, w.begin() + (long)p + 5));
    CHECK(seen.size() == 32);
    for (Letter a : w) CHECK(a != 1);

    // all images at level 1 share length L_1 and the sequence satisfies P_1
    Morphism stau1 = fam.directive.at(1);
    for (int i = 1; i <= stau1.source.size; ++i)
        CHECK((long long)stau1.image(i).size() == fam.spec.levels[0].length);
    CHECK(check_pk(fam.directive, 1).ok());
    // the extension rule provides deeper levels that stay P_1
    CHECK(fam.directive.at(3).target.size == 5);
    auto deep = check_pk(fam.directive, 1, 4);
    CHECK_MESSAGE(deep.ok(), deep.failure);
    // equal row sums level by level (Toeplitz form)
    for (int n = 1; n <= 2; ++n) {
        IncidenceMatrix A = incidence_of(fam.directive.at(n));
        for (int i = 1; i < A.rows; ++i) CHECK(A.row_sum(i) == A.row_sum(0));
    }
}

TEST_CASE("subexp family: alpha cap exceeded for steep growth") {
    GrowthFunction steep{"exp", [](double x) { return std::exp(x); }};
    CHECK_THROWS_WITH_AS(build_subexp_family(steep, 1, 40), doctest::Contains("alpha cap"),
                         ConstructionError);
}

TEST_CASE("de_bruijn_word covers every word exactly once cyclically") {
    for (int sigma : {2, 3}) {
        for (int order : {1, 2, 3}) {
            auto w = de_bruijn_word(sigma, order);
            long long cyc = 1;
            for (int i = 0; i < order; ++i) cyc *= sigma;
            CHECK((long long)w.size() == cyc + order - 1);
            std::set<std::vector<int>> seen;
            for (size_t p = 0; p + size_t(order) <= w.size(); ++p)
                seen.insert(
                    std::vector<int>(w.begin() + (long)p, w.begin() + (long)(p + size_t(order))));
            CHECK((long long)seen.size() == cyc);
        }
    }
}

TEST_CASE("directive extension rules") {
    DirectiveSequence fib = demo_directive("fibonacci");
    CHECK(fib.at(5).images[0] == Word({1, 2}));
    CHECK(fib.at(5).source.level == 6);
    CHECK(fib.alphabet(9).size == 2);

    DirectiveSequence bare;
    bare.prefix.push_back(fib.at(0));
    CHECK_THROWS_AS(bare.at(3), ConstructionError);
}

TEST_CASE("assign_pinf_ordering: prefix shapes and small-alphabet error") {
    BratteliDiagram d;
    d.level_sizes = {1, 3, 4, 5};
    IncidenceMatrix root(3, 1);
    for (int i = 0; i < 3; ++i) root.at(i, 0) = 2;
    d.matrices.push_back(root);
    IncidenceMatrix a1(4, 3), a2(5, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) a1.at(i, j) = j == 0 ? std::max(i + 1, 2) : 4;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 4; ++j) a2.at(i, j) = j == 0 ? std::max(i + 1, 2) : 4;
    d.matrices.push_back(a1);
    d.matrices.push_back(a2);

    auto ob = assign_pinf_ordering(d);
    // level 1 (distinguished count 1): vertex 2 starts v1^2 v2
    CHECK(Word(ob.order_word(1, 2).begin(), ob.order_word(1, 2).begin() + 3) ==
          Word({1, 1, 2}));
    // level 2 (count 2): vertex 5 > n+1 starts v1^5 v2
    CHECK(Word(ob.order_word(2, 5).begin(), ob.order_word(2, 5).begin() + 6) ==
          Word({1, 1, 1, 1, 1, 2}));
    CHECK(check_pinf(read_morphisms(ob)).ok());

    // alphabet of size n+1 at level n is rejected
    BratteliDiagram tiny;
    tiny.level_sizes = {1, 2, 3};
    IncidenceMatrix r(2, 1);
    r.at(0, 0) = r.at(1, 0) = 2;
    tiny.matrices.push_back(r);
    IncidenceMatrix a(3, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) a.at(i, j) = 4;
    tiny.matrices.push_back(a);
    CHECK_THROWS_WITH_AS(assign_pinf_ordering(tiny), doctest::Contains("condition (ii)"),
                         ConstructionError);
}
