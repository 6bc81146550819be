#include "sadic/io.hpp"

#include <fstream>
#include <sstream>

namespace sadic {

namespace {

json matrix_to_json(const IncidenceMatrix& A) {
    json rows = json::array();
    for (int i = 0; i < A.rows; ++i) {
        json r = json::array();
        for (int j = 0; j < A.cols; ++j) r.push_back(A.at(i, j));
        rows.push_back(std::move(r));
    }
    return rows;
}

IncidenceMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected rows");
    IncidenceMatrix A((int)j.size(), (int)j[0].size());
    for (int i = 0; i < A.rows; ++i) {
        if ((int)j[size_t(i)].size() != A.cols)
            throw std::invalid_argument("matrix: ragged rows");
        for (int c = 0; c < A.cols; ++c) A.at(i, c) = j[size_t(i)][size_t(c)].get<long long>();
    }
    return A;
}

}  // namespace

json to_json(const Morphism& m) {
    json images = json::array();
    for (const Word& im : m.images) images.push_back(im);
    return json{{"source_level", m.source.level},
                {"source_size", m.source.size},
                {"target_size", m.target.size},
                {"images", images}};
}

Morphism morphism_from_json(const json& j) {
    Morphism m;
    m.source.level = j.at("source_level").get<int>();
    m.source.size = j.at("source_size").get<int>();
    m.target.level = m.source.level - 1;
    m.target.size = j.at("target_size").get<int>();
    for (const auto& im : j.at("images")) m.images.push_back(im.get<Word>());
    m.validate();
    return m;
}

json to_json(const DirectiveSequence& t) {
    json ms = json::array();
    for (const Morphism& m : t.prefix) ms.push_back(to_json(m));
    json out{{"morphisms", ms}};
    if (!t.extension.empty()) out["extension"] = t.extension.name;
    return out;
}

DirectiveSequence directive_from_json(const json& j) {
    DirectiveSequence t;
    for (const auto& m : j.at("morphisms")) t.prefix.push_back(morphism_from_json(m));
    if (j.contains("extension") && !j["extension"].is_null())
        t.extension = {j["extension"].get<std::string>()};
    t.validate_chain();
    return t;
}

json to_json(const BratteliDiagram& d) {
    json levels = json::array();
    for (int n = 1; n < d.levels(); ++n) levels.push_back(d.size(n));
    json mats = json::array();
    for (const IncidenceMatrix& A : d.matrices) mats.push_back(matrix_to_json(A));
    return json{{"levels", levels}, {"matrices", mats}};
}

BratteliDiagram diagram_from_json(const json& j) {
    BratteliDiagram d;
    d.level_sizes.push_back(1);
    for (const auto& s : j.at("levels")) d.level_sizes.push_back(s.get<int>());
    for (const auto& m : j.at("matrices")) d.matrices.push_back(matrix_from_json(m));
    require_valid(d);
    return d;
}

json to_json(const OrderedBratteliDiagram& b) {
    json out = to_json(b.diagram);
    json words = json::array();
    for (const auto& lvl : b.order_words) {
        json per = json::array();
        for (const Word& w : lvl) per.push_back(w);
        words.push_back(std::move(per));
    }
    out["order_words"] = words;
    return out;
}

OrderedBratteliDiagram ordered_from_json(const json& j) {
    BratteliDiagram d = diagram_from_json(j);
    std::vector<std::vector<Word>> words;
    for (const auto& lvl : j.at("order_words")) {
        std::vector<Word> per;
        for (const auto& w : lvl) per.push_back(w.get<Word>());
        words.push_back(std::move(per));
    }
    auto r = ordering_from_words(d, words);
    if (!r.ordered) throw std::invalid_argument("invalid ordering: " + r.error);
    return *r.ordered;
}

json to_json(const IntertwiningCertificate& c) {
    json levels = json::array();
    for (const auto& [B, C] : c.factors)
        levels.push_back(json{{"B", matrix_to_json(B)}, {"C", matrix_to_json(C)}});
    return json{{"keep", c.keep}, {"levels", levels}};
}

IntertwiningCertificate cert_from_json(const json& j) {
    IntertwiningCertificate c;
    c.keep = j.at("keep").get<std::vector<int>>();
    for (const auto& lvl : j.at("levels"))
        c.factors.emplace_back(matrix_from_json(lvl.at("B")), matrix_from_json(lvl.at("C")));
    return c;
}

json to_json(const RightSpecialReport& r) {
    json window = json::array();
    for (size_t i = 0; i < r.window.size(); ++i) {
        json entries = json::array();
        for (const RSWordInfo& w : r.window[i])
            entries.push_back(json{{"word", w.word}, {"followers", w.followers}});
        window.push_back(json{{"m", r.m_max - r.delta + (int)i}, {"words", entries}});
    }
    json stabilized = json::array();
    for (const StabilizedBranch& b : r.stabilized)
        stabilized.push_back(json{{"word", b.word},
                                  {"followers", b.followers},
                                  {"degrees", std::vector<int>(b.degrees.begin(), b.degrees.end())}});
    return json{{"level", r.level},
                {"m_max", r.m_max},
                {"delta", r.delta},
                {"p", r.p},
                {"rs_count", r.rs_count},
                {"rs_excess", r.rs_excess},
                {"identity_ok", r.identity_ok},
                {"identity_checked_to", r.identity_checked_to},
                {"pairs_converged", r.pairs_converged},
                {"stabilized_count", r.stabilized.size()},
                {"stabilized", stabilized},
                {"window", window}};
}

json to_json(const SignalAudit& a) {
    json levels = json::array();
    for (const LevelAudit& la : a.levels) {
        json branches = json::array();
        for (const BranchAudit& b : la.branches)
            branches.push_back(json{{"signal", b.signal_index},
                                    {"followers", b.followers},
                                    {"follower_pair_ok", b.follower_pair_ok},
                                    {"predecessor_ok", b.predecessor_ok},
                                    {"predecessor_context", b.predecessor_context},
                                    {"next_signal", b.next_signal_index},
                                    {"next_followers", b.next_followers}});
        levels.push_back(json{{"level", la.level},
                              {"m_used", la.m_used},
                              {"delta_used", la.delta_used},
                              {"branches", branches}});
    }
    return json{{"mode", a.pk ? "pk" : "pinf"},
                {"k", a.k},
                {"all_ok", a.all_ok},
                {"stabilization_ok", a.stabilization_ok},
                {"counterexamples", a.counterexamples},
                {"levels", levels}};
}

json to_json(const SubexpSpec& s) {
    json levels = json::array();
    for (const SubexpLevel& l : s.levels)
        levels.push_back(json{{"level", l.level},
                              {"alpha", l.alpha},
                              {"length", l.length},
                              {"cover_word_length", l.cover_word.size()},
                              {"cover_word", l.cover_word}});
    return json{{"l0", s.l0}, {"levels", levels}};
}

json to_json(const PkCheckResult& r) {
    json out{{"ok", r.ok()}};
    if (!r.ok()) {
        out["failure"] = r.failure;
        out["level"] = r.level;
        out["letter"] = r.letter;
        out["clause"] = r.clause;
    } else {
        out["levels_checked"] = r.witness->levels.size() + 1;
        json levels = json::array();
        for (size_t n = 0; n < r.witness->levels.size(); ++n) {
            json per = json::array();
            for (const ImageDecomposition& d : r.witness->levels[n])
                per.push_back(json{{"letter", d.letter},
                                   {"prefix", d.prefix},
                                   {"interior_length", d.interior.size()},
                                   {"suffix", d.suffix}});
            levels.push_back(std::move(per));
        }
        out["decompositions"] = levels;
    }
    return out;
}

std::string complexity_csv(const ComplexityTable& t) {
    std::ostringstream os;
    os << "m,p,h\n";
    for (size_t m = 1; m < t.p.size(); ++m)
        os << m << "," << t.p[m] << "," << t.h[m] << "\n";
    return os.str();
}

std::string render_pair_window(const AsymptoticPairWindow& w) {
    std::ostringstream os;
    os << "component " << w.component << ", level " << w.level << ", offset " << w.offset
       << "\n";
    auto row = [&](const char* tag, const Word& word) {
        os << tag;
        for (size_t i = 0; i < word.size(); ++i) {
            long long pos = w.offset + (long long)i;
            if (pos == 0) os << "|";
            os << word[i];
            os << (i + 1 < word.size() ? "." : "");
        }
        os << "\n";
    };
    row("x: ", w.x_window);
    row("y: ", w.y_window);
    os << "(| marks position 0)\n";
    return os.str();
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace sadic
