#include "sadic/demos.hpp"

namespace sadic {

BratteliDiagram uniform_seed(int vertices, long long entry, int levels) {
    BratteliDiagram d;
    d.level_sizes.push_back(1);
    for (int n = 0; n < levels; ++n) d.level_sizes.push_back(vertices);
    IncidenceMatrix root(vertices, 1);
    for (int i = 0; i < vertices; ++i) root.at(i, 0) = entry;
    d.matrices.push_back(root);
    IncidenceMatrix A(vertices, vertices);
    for (auto& e : A.e) e = entry;
    for (int n = 1; n < levels; ++n) d.matrices.push_back(A);
    return d;
}

namespace {

BratteliDiagram pairs_demo_diagram(int k) {
    // Small-entry diagram meeting the P_k arrangement conditions, so that
    // composed images stay short enough to materialise deep pair windows.
    int m = k + 2;
    BratteliDiagram d;
    d.level_sizes.push_back(1);
    int levels = 9;
    for (int n = 0; n < levels; ++n) d.level_sizes.push_back(m);
    IncidenceMatrix root(m, 1);
    for (int i = 0; i < m; ++i) root.at(i, 0) = 3;
    d.matrices.push_back(root);
    IncidenceMatrix A(m, m);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) A.at(i - 1, j - 1) = j == 1 ? std::max(i, 2) : 2;
    for (int n = 1; n < levels; ++n) d.matrices.push_back(A);
    return d;
}

BratteliDiagram toeplitz_seed() {
    BratteliDiagram d;
    d.level_sizes.push_back(1);
    int levels = 9;
    for (int n = 0; n < levels; ++n) d.level_sizes.push_back(3);
    IncidenceMatrix root(3, 1);
    for (int i = 0; i < 3; ++i) root.at(i, 0) = 6;
    d.matrices.push_back(root);
    IncidenceMatrix A(3, 3);
    for (auto& e : A.e) e = 6;
    for (int n = 1; n < levels; ++n) d.matrices.push_back(A);
    return d;
}

DirectiveSequence fibonacci() {
    DirectiveSequence t;
    Morphism f;
    f.source = {1, 2};
    f.target = {0, 2};
    f.images = {{1, 2}, {1}};
    t.prefix.push_back(f);
    t.extension = {"constant"};
    return t;
}

}  // namespace

std::vector<std::string> demo_names() {
    return {"fibonacci", "p1-small", "p2-small", "p3-small", "pinf-small",
            "toeplitz-k1", "p2-pairs", "subexp-sqrt"};
}

BratteliDiagram demo_diagram(const std::string& name) {
    if (name == "p1-small" || name == "p2-small" || name == "p3-small")
        return uniform_seed(2, 50, 14);
    if (name == "pinf-small") return uniform_seed(2, 50, 14);
    if (name == "toeplitz-k1") return toeplitz_seed();
    if (name == "p2-pairs") return pairs_demo_diagram(2);
    throw std::invalid_argument("no demo diagram named '" + name + "'");
}

DirectiveSequence demo_directive(const std::string& name) {
    if (name == "fibonacci") return fibonacci();
    if (name == "p1-small" || name == "p2-small" || name == "p3-small") {
        int k = name[1] - '0';
        auto amp = amplify_diagram(demo_diagram(name), k);
        return read_morphisms(assign_pk_ordering(amp.derived, k));
    }
    if (name == "pinf-small") {
        AmplifyOptions opts;
        opts.size_slack = 1;
        auto amp = amplify_diagram(demo_diagram(name), 1, opts);
        return read_morphisms(assign_pinf_ordering(amp.derived));
    }
    if (name == "toeplitz-k1") return toeplitz_morphisms(demo_diagram(name), 1);
    if (name == "p2-pairs")
        return read_morphisms(assign_pk_ordering(demo_diagram(name), 2));
    if (name == "subexp-sqrt") return build_subexp_family(growth_pow2_sqrt(), 1).directive;
    throw std::invalid_argument("no demo named '" + name + "'");
}

}  // namespace sadic
