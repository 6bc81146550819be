// Command-line front end: construction pipelines, property checks, language
// analysis, and report emission. Exit codes: 0 success/pass, 1 property check
// failed (counterexample in the report), 2 invalid input or precondition.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "sadic/demos.hpp"
#include "sadic/io.hpp"

using namespace sadic;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;

struct DiagramInput {
    std::string path;
    std::string demo;

    BratteliDiagram load() const {
        if (!demo.empty()) return demo_diagram(demo);
        if (path.empty()) throw std::invalid_argument("no diagram given (file or --seed-demo)");
        return diagram_from_json(load_json_file(path));
    }
};

struct DirectiveInput {
    std::string path;
    std::string demo;

    DirectiveSequence load() const {
        if (!demo.empty()) return demo_directive(demo);
        if (path.empty())
            throw std::invalid_argument("no directive given (file or --seed-demo)");
        return directive_from_json(load_json_file(path));
    }
};

void add_diagram_opts(CLI::App* cmd, DiagramInput& in) {
    cmd->add_option("diagram", in.path, "diagram JSON file");
    cmd->add_option("--seed-demo", in.demo, "built-in demo diagram");
}

void add_directive_opts(CLI::App* cmd, DirectiveInput& in) {
    cmd->add_option("sequence", in.path, "directive sequence JSON file");
    cmd->add_option("--seed-demo", in.demo, "built-in demo directive");
}

void emit(const json& j, const std::string& out) {
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        save_json_file(out, j);
}

GrowthFunction parse_growth(const std::string& spec) {
    if (spec == "pow2_sqrt") return growth_pow2_sqrt();
    if (spec.rfind("poly:", 0) == 0) return growth_poly(std::stod(spec.substr(5)));
    // otherwise a CSV table file with lines n,g_n
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("growth function '" + spec +
                                         "' is neither a builtin nor a readable table");
    std::vector<std::pair<long long, double>> table;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'n') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        table.emplace_back(std::stoll(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    if (table.empty()) throw std::invalid_argument("empty growth table: " + spec);
    return growth_table(table);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"S-adic subshift constructions with prescribed asymptotic components"};
    app.require_subcommand(1);

    int exit_code = kExitPass;
    std::function<void()> action;

    // ---------------------------------------------------------------- construct
    auto* construct = app.add_subcommand("construct", "build a directive sequence");
    construct->require_subcommand(1);
    {
        static DiagramInput din;
        static int k = 1;
        static std::string out, ordering_out, spec_out, style_name = "blocks";
        static int levels = 1;
        static long long alpha_cap = 64;
        static std::string growth = "pow2_sqrt";

        auto style = [&]() {
            return style_name == "interleaved" ? InteriorStyle::Interleaved
                                               : InteriorStyle::AscendingBlocks;
        };

        auto* pk = construct->add_subcommand("pk", "Property (P_k) ordering on a diagram");
        add_diagram_opts(pk, din);
        pk->add_option("--k", k, "number of asymptotic components")->required();
        pk->add_option("--out", out, "output sequence JSON");
        pk->add_option("--style", style_name, "interior style: blocks|interleaved");
        pk->add_option("--ordering-out", ordering_out, "ordered diagram JSON output");
        static bool do_amplify = false;
        pk->add_flag("--amplify-first", do_amplify,
                     "amplify the diagram before ordering");
        pk->callback([&] {
            action = [&] {
                BratteliDiagram d = din.load();
                if (do_amplify) d = amplify_diagram(d, k).derived;
                OrderedBratteliDiagram ob = assign_pk_ordering(d, k, style());
                if (!ordering_out.empty()) save_json_file(ordering_out, to_json(ob));
                emit(to_json(read_morphisms(ob)), out);
            };
        });

        auto* pinf = construct->add_subcommand("pinf", "Property (P_inf) ordering on a diagram");
        add_diagram_opts(pinf, din);
        pinf->add_option("--out", out, "output sequence JSON");
        pinf->add_option("--style", style_name, "interior style: blocks|interleaved");
        pinf->add_option("--ordering-out", ordering_out, "ordered diagram JSON output");
        static bool pinf_amplify = false;
        pinf->add_flag("--amplify-first", pinf_amplify, "amplify the diagram before ordering");
        pinf->callback([&] {
            action = [&] {
                BratteliDiagram d = din.load();
                if (pinf_amplify) {
                    AmplifyOptions opts;
                    opts.size_slack = 1;
                    d = amplify_diagram(d, 1, opts).derived;
                }
                OrderedBratteliDiagram ob = assign_pinf_ordering(d, style());
                if (!ordering_out.empty()) save_json_file(ordering_out, to_json(ob));
                emit(to_json(read_morphisms(ob)), out);
            };
        });

        auto* toep = construct->add_subcommand("toeplitz", "Toeplitz-preserving morphisms");
        add_diagram_opts(toep, din);
        toep->add_option("--k", k, "number of asymptotic components")->required();
        toep->add_option("--out", out, "output sequence JSON");
        toep->callback([&] {
            action = [&] {
                DirectiveSequence t = toeplitz_morphisms(din.load(), k);
                emit(to_json(t), out);
            };
        });

        auto* sub = construct->add_subcommand("subexp", "subexponential-complexity family");
        sub->add_option("--g", growth, "growth function: pow2_sqrt, poly:<d>, or CSV table");
        sub->add_option("--levels", levels, "explicitly constructed levels");
        sub->add_option("--alpha-cap", alpha_cap, "search cap for alpha_n");
        sub->add_option("--out", out, "output sequence JSON");
        sub->add_option("--spec-out", spec_out, "output family spec JSON");
        sub->callback([&] {
            action = [&] {
                auto fam = build_subexp_family(parse_growth(growth), levels, alpha_cap);
                emit(to_json(fam.directive), out);
                if (!spec_out.empty()) save_json_file(spec_out, to_json(fam.spec));
            };
        });
    }

    // ---------------------------------------------------------------- amplify
    {
        static DiagramInput din;
        static int k = 1;
        static bool pinf_slack = false;
        static std::string out, cert_out;
        auto* amp = app.add_subcommand("amplify", "telescope-and-split amplification");
        add_diagram_opts(amp, din);
        amp->add_option("--k", k, "target component count")->required();
        amp->add_flag("--pinf-slack", pinf_slack, "extra level size for the P_inf recipe");
        amp->add_option("--out", out, "output diagram JSON");
        amp->add_option("--cert-out", cert_out, "output certificate JSON");
        amp->callback([&] {
            action = [&] {
                AmplifyOptions opts;
                opts.size_slack = pinf_slack ? 1 : 0;
                auto res = amplify_diagram(din.load(), k, opts);
                emit(to_json(res.derived), out);
                if (!cert_out.empty()) save_json_file(cert_out, to_json(res.cert));
            };
        });
    }

    // ---------------------------------------------------------------- check
    auto* check = app.add_subcommand("check", "verify properties; exit 1 on failure");
    check->require_subcommand(1);
    {
        static DirectiveInput tin;
        static DiagramInput din, derived_in;
        static int k = 1, depth = 3, levels = -1;
        static std::string cert_path, out;

        auto* pk = check->add_subcommand("pk", "Property (P_k) clauses");
        add_directive_opts(pk, tin);
        pk->add_option("--k", k)->required();
        pk->add_option("--levels", levels, "levels to check (default: whole prefix)");
        pk->add_option("--out", out, "report JSON");
        pk->callback([&] {
            action = [&] {
                auto res = check_pk(tin.load(), k, levels);
                emit(to_json(res), out);
                if (!res.ok()) exit_code = kExitCheckFailed;
            };
        });

        auto* pinf = check->add_subcommand("pinf", "Property (P_inf) clauses");
        add_directive_opts(pinf, tin);
        pinf->add_option("--levels", levels);
        pinf->add_option("--out", out, "report JSON");
        pinf->callback([&] {
            action = [&] {
                auto res = check_pinf(tin.load(), levels);
                emit(to_json(res), out);
                if (!res.ok()) exit_code = kExitCheckFailed;
            };
        });

        auto* toep = check->add_subcommand("toeplitz", "equal path number property");
        add_diagram_opts(toep, din);
        toep->callback([&] {
            action = [&] {
                bool ok = check_equal_row_sums(din.load());
                std::cout << json{{"equal_row_sums", ok}}.dump(2) << "\n";
                if (!ok) exit_code = kExitCheckFailed;
            };
        });

        auto* proper = check->add_subcommand("proper", "proper ordering (unique max/min chains)");
        static std::string ord_path;
        proper->add_option("ordering", ord_path, "ordered diagram JSON")->required();
        proper->add_option("--depth", depth);
        proper->callback([&] {
            action = [&] {
                auto ob = ordered_from_json(load_json_file(ord_path));
                bool ok = check_proper_ordering(ob, depth);
                std::cout << json{{"properly_ordered", ok}, {"depth", depth}}.dump(2) << "\n";
                if (!ok) exit_code = kExitCheckFailed;
            };
        });

        auto* inter = check->add_subcommand("intertwine", "common intertwining certificate");
        inter->add_option("--original", din.path)->required();
        inter->add_option("--derived", derived_in.path)->required();
        inter->add_option("--cert", cert_path)->required();
        inter->callback([&] {
            action = [&] {
                BratteliDiagram orig = diagram_from_json(load_json_file(din.path));
                BratteliDiagram der = diagram_from_json(load_json_file(derived_in.path));
                auto cert = cert_from_json(load_json_file(cert_path));
                bool ok = check_intertwining(orig, der, cert);
                std::cout << json{{"intertwining_exact", ok}}.dump(2) << "\n";
                if (!ok) exit_code = kExitCheckFailed;
            };
        });
    }

    // ---------------------------------------------------------------- analyze
    auto* analyze = app.add_subcommand("analyze", "language, complexity, components, signals");
    analyze->require_subcommand(1);
    {
        static DirectiveInput tin;
        static int m = 10, m_max = 100, delta = 25, level = 0, k = 0, levels = 4;
        static bool pinf = false;
        static std::string out, csv;

        auto* lang = analyze->add_subcommand("language", "allowed words of a given length");
        add_directive_opts(lang, tin);
        lang->add_option("--m", m)->required();
        lang->add_option("--level", level);
        lang->add_option("--out", out, "words JSON");
        lang->callback([&] {
            action = [&] {
                auto words = language(tin.load(), m, level);
                json arr = json::array();
                for (const Word& w : words) arr.push_back(w);
                emit(json{{"level", level}, {"m", m}, {"count", words.size()}, {"words", arr}},
                     out);
            };
        });

        auto* comp = analyze->add_subcommand("complexity", "p(m) table and entropy profile");
        add_directive_opts(comp, tin);
        comp->add_option("--m-max", m_max)->required();
        comp->add_option("--level", level);
        comp->add_option("--csv", csv, "CSV output path (m,p,h)");
        comp->callback([&] {
            action = [&] {
                auto ct = complexity_table(tin.load(), m_max, level);
                if (!csv.empty()) {
                    save_text_file(csv, complexity_csv(ct));
                } else {
                    std::cout << complexity_csv(ct);
                }
            };
        });

        auto* asym = analyze->add_subcommand("asymptotic",
                                             "right-special branches and component census");
        add_directive_opts(asym, tin);
        asym->add_option("--m-max", m_max)->required();
        asym->add_option("--delta", delta)->required();
        asym->add_option("--level", level);
        asym->add_option("--k", k, "P_k mode for the census");
        asym->add_flag("--pinf", pinf, "P_inf mode for the census");
        static long long expect = -1;
        asym->add_option("--expect-components", expect,
                         "fail (exit 1) unless the census matches");
        asym->add_option("--out", out, "report JSON");
        asym->callback([&] {
            action = [&] {
                DirectiveSequence t = tin.load();
                auto rep = right_special_report(t, m_max, delta, level);
                json j = to_json(rep);
                if (k > 0 || pinf) {
                    auto census = asymptotic_component_census(
                        t, rep, k > 0 ? std::optional<int>(k) : std::nullopt);
                    j["component_count"] = census.component_count;
                    j["component_signals"] =
                        std::vector<int>(census.component_signals.begin(),
                                         census.component_signals.end());
                    j["signal_violations"] = census.signal_violations;
                    if (expect >= 0 && census.component_count != expect)
                        exit_code = kExitCheckFailed;
                    if (census.signal_violations) exit_code = kExitCheckFailed;
                }
                if (!rep.identity_ok) exit_code = kExitCheckFailed;
                emit(j, out);
            };
        });

        auto* sig = analyze->add_subcommand("signals", "bifurcation signal audit");
        add_directive_opts(sig, tin);
        sig->add_option("--k", k, "P_k mode");
        sig->add_flag("--pinf", pinf, "P_inf mode");
        sig->add_option("--levels", levels, "deepest audited level");
        sig->add_option("--out", out, "report JSON");
        sig->callback([&] {
            action = [&] {
                if (k <= 0 && !pinf)
                    throw std::invalid_argument("analyze signals needs --k or --pinf");
                auto audit = signal_audit(tin.load(),
                                          k > 0 ? std::optional<int>(k) : std::nullopt, levels);
                emit(to_json(audit), out);
                if (!audit.all_ok) exit_code = kExitCheckFailed;
            };
        });
    }

    // ---------------------------------------------------------------- pairs
    {
        static DirectiveInput tin;
        static int component = 1, level = 1, k = -1;
        static std::string out;
        auto* pairs = app.add_subcommand("pairs", "asymptotic pair windows");
        add_directive_opts(pairs, tin);
        pairs->add_option("--component", component)->required();
        pairs->add_option("--level", level)->required();
        pairs->add_option("--k", k, "validate the component index against k");
        pairs->add_option("--out", out, "text rendering output path");
        pairs->callback([&] {
            action = [&] {
                auto w = asymptotic_pair_windows(tin.load(), component, level, k);
                std::string text = render_pair_window(w);
                if (out.empty())
                    std::cout << text;
                else
                    save_text_file(out, text);
            };
        });
    }

    // ---------------------------------------------------------------- vershik
    {
        static std::string ord_path;
        static int depth = 2, steps = -1, top = 1;
        auto* ver = app.add_subcommand("vershik", "iterate the Vershik successor");
        ver->add_option("ordering", ord_path, "ordered diagram JSON")->required();
        ver->add_option("--depth", depth);
        ver->add_option("--top", top, "top vertex anchoring the path class");
        ver->add_option("--steps", steps, "iterations (default: until overflow)");
        ver->callback([&] {
            action = [&] {
                auto ob = ordered_from_json(load_json_file(ord_path));
                FinitePath p = minimal_path_to(ob, depth, top);
                json trace = json::array();
                auto path_json = [](const FinitePath& q) {
                    json e = json::array();
                    for (auto [v, pos] : q.edges) e.push_back(json{{"vertex", v}, {"pos", pos}});
                    return e;
                };
                trace.push_back(path_json(p));
                int done = 0;
                while (steps < 0 || done < steps) {
                    auto nxt = vershik_successor(ob, p);
                    if (!nxt) break;
                    p = *nxt;
                    trace.push_back(path_json(p));
                    ++done;
                }
                std::cout << json{{"depth", depth},
                                  {"paths_visited", trace.size()},
                                  {"overflowed", steps < 0 || done < steps},
                                  {"trace", trace}}
                                 .dump(2)
                          << "\n";
            };
        });
    }

    // ---------------------------------------------------------------- telescope
    {
        static DiagramInput din;
        static std::vector<int> keep;
        static std::string out;
        auto* tel = app.add_subcommand("telescope", "telescope a diagram to kept levels");
        add_diagram_opts(tel, din);
        tel->add_option("--keep", keep, "kept level indices, starting at 0")->required();
        tel->add_option("--out", out, "output diagram JSON");
        tel->callback([&] {
            action = [&] { emit(to_json(telescope(din.load(), keep)), out); };
        });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (action) action();
    } catch (const ConstructionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const AnalysisError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return exit_code;
}
