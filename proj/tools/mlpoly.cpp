// Command-line front end: analysis, classification, construction, corpus generation,
// property verification and toric reports.

#include "mlpoly/report.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace mlpoly;

namespace {

constexpr int kOk = 0;
constexpr int kCounterexample = 1;
constexpr int kParse = 2;
constexpr int kValidation = 3;

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse:
        case ErrorKind::UnknownTheorem:
        case ErrorKind::InvalidArgument: return kParse;
        default: return kValidation;
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

Vec parse_vec(const std::string& s) {
    Vec v;
    if (s.empty()) return v;
    for (const auto& part : split(s, ',')) {
        try {
            v.push_back(Rat(part));
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, "bad rational '" + part + "'");
        }
    }
    return v;
}

std::vector<int> parse_indices(const std::string& s) {
    std::vector<int> out;
    for (const auto& part : split(s, ',')) {
        try {
            out.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, "bad index '" + part + "'");
        }
    }
    return out;
}

Polytope load(const std::string& path) { return polytope_from_json(read_json_file(path)); }

std::vector<Polytope> load_corpus(const std::string& path) {
    Json j = read_json_file(path);
    if (j.is_object()) return {polytope_from_json(j)};
    if (!j.is_array()) throw Error(ErrorKind::Parse, "corpus file must hold a polytope or an array of them");
    std::vector<Polytope> out;
    for (const auto& d : j) out.push_back(polytope_from_json(d));
    return out;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string default_corpus(const std::string& id) {
    if (id == "prop4.2" || id == "cor4.3") return "dim2_default";
    if (id == "prop4.7") return "y_grid";
    if (id == "thm1.4" || id == "prop4.13" || id == "lem4.15") return "dim3_smooth";
    if (id == "corA.7" || id == "thm1.11") return "dim4_smooth";
    return "dim3_default";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mass linear functions on simple polytopes"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "Emit JSON instead of text");

    std::string path;
    std::string h_text;

    auto* analyze = app.add_subcommand("analyze", "Full report for a polytope file");
    analyze->add_option("path", path, "Polytope JSON file")->required();

    auto* masslin = app.add_subcommand("mass-linear", "Mass linear functions of a polytope");
    masslin->add_option("path", path, "Polytope JSON file")->required();
    masslin->add_option("--H", h_text, "Test one function, comma-separated rationals");

    auto* classify = app.add_subcommand("classify", "Classify a mass linear function (dimension <= 3)");
    classify->add_option("path", path, "Polytope JSON file")->required();
    classify->add_option("--H", h_text, "Function, comma-separated rationals")->required();

    auto* toric = app.add_subcommand("toric", "Kernel lattice, isometry shape and integrality report");
    toric->add_option("path", path, "Polytope JSON file")->required();
    toric->add_option("--H", h_text, "Integer function for the triviality test");

    auto* construct = app.add_subcommand("construct", "Build a polytope");
    construct->require_subcommand(1);
    int k = 1, facet = 0;
    std::string a_text, kappa_text, twist_text, face_text, eps_text, left, right;
    auto* c_simplex = construct->add_subcommand("simplex", "Standard simplex");
    c_simplex->add_option("-k,--k", k, "Dimension")->required();
    auto* c_product = construct->add_subcommand("product", "Product of two polytopes");
    c_product->add_option("left", left)->required();
    c_product->add_option("right", right)->required();
    auto* c_y = construct->add_subcommand("y", "Y_a family member");
    c_y->add_option("--a", a_text, "a1,a2")->required();
    c_y->add_option("--kappa", kappa_text, "Five support numbers")->required();
    auto* c_bundle = construct->add_subcommand("bundle", "Bundle over a simplex");
    c_bundle->add_option("fiber", path, "Fiber polytope file")->required();
    c_bundle->add_option("-k,--k", k, "Base dimension")->required();
    c_bundle->add_option("--twists", twist_text, "k+1 twist vectors, ';'-separated")->required();
    c_bundle->add_option("--kappa", kappa_text, "k+1 base support numbers")->required();
    auto* c_expansion = construct->add_subcommand("expansion", "k-fold expansion along a facet");
    c_expansion->add_option("path", path)->required();
    c_expansion->add_option("--facet", facet, "Facet index (0-based)")->required();
    c_expansion->add_option("-k,--k", k, "Order")->required();
    auto* c_blowup = construct->add_subcommand("blowup", "Blow up a face");
    c_blowup->add_option("path", path)->required();
    c_blowup->add_option("--face", face_text, "Facet indices (0-based) meeting in the face")->required();
    c_blowup->add_option("--eps", eps_text, "Cut depth (default: a quarter of the minimum slack)");

    CorpusSpec spec;
    std::string spec_path;
    auto* corpus = app.add_subcommand("corpus", "Generate a deterministic corpus");
    corpus->add_option("--dim", spec.dim);
    corpus->add_option("--count", spec.count);
    corpus->add_option("--seed", spec.seed);
    corpus->add_option("--max-facets", spec.max_facets);
    corpus->add_option("--ops", spec.ops, "Blow-up budget per instance");
    corpus->add_flag("--smooth-only", spec.smooth_only);
    corpus->add_option("--spec", spec_path, "CorpusSpec JSON file (overrides the flags)");

    std::string theorem, corpus_name, corpus_path;
    CorpusSpec vspec;
    vspec.smooth_only = false;
    vspec.count = 100;
    bool smooth_flag = false;
    auto* verify = app.add_subcommand("verify", "Run a property suite over a corpus");
    verify->add_option("theorem", theorem, "Suite id")->required();
    auto* o_corpus = verify->add_option("--corpus", corpus_name, "Named corpus");
    auto* o_input = verify->add_option("--input", corpus_path, "Corpus JSON file");
    auto* o_dim = verify->add_option("--dim", vspec.dim, "Generate a corpus of this dimension");
    verify->add_option("--count", vspec.count);
    verify->add_option("--seed", vspec.seed);
    verify->add_option("--max-facets", vspec.max_facets);
    verify->add_flag("--smooth-only", smooth_flag);
    verify->add_flag("--grid", [&](std::int64_t) { corpus_name = "y_grid"; }, "Use the Y_a parameter grid");
    o_corpus->excludes(o_input);
    o_dim->excludes(o_corpus);
    o_dim->excludes(o_input);

    auto* list = app.add_subcommand("suites", "List property suite ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (analyze->parsed()) {
            Json r = analysis_report(load(path));
            if (json)
                emit(r);
            else
                std::cout << analysis_text(r);
        } else if (masslin->parsed()) {
            Polytope p = load(path);
            auto vd = volume_moments(p);
            if (!h_text.empty()) {
                const Vec H = parse_vec(h_text);
                auto g = is_mass_linear(p, vd, H);
                Json r = {{"H", to_json(H)}, {"mass_linear", g.has_value()}};
                r["gamma"] = g ? to_json(*g) : Json(nullptr);
                if (g) r["essential"] = is_essential(p, vd, equivalence_classes(p), H);
                if (json) {
                    emit(r);
                } else if (g) {
                    std::cout << "mass linear, gamma = " << vec_text(r["gamma"])
                              << (r["essential"].get<bool>() ? ", essential\n" : ", inessential\n");
                } else {
                    std::cout << "not mass linear\n";
                }
            } else {
                Json r = to_json(mass_linear_space(p, vd));
                if (json) {
                    emit(r);
                } else {
                    std::cout << "dimension " << r["dim_mass_linear"].get<int>() << "\n";
                    for (const auto& b : r["basis"])
                        std::cout << "  H = " << vec_text(b["H"]) << "  gamma = " << vec_text(b["gamma"]) << "\n";
                }
            }
        } else if (classify->parsed()) {
            Polytope p = load(path);
            auto c = classify_low_dim(p, parse_vec(h_text));
            Json r = to_json(c);
            if (json) {
                emit(r);
            } else {
                std::cout << c.tag << " (case " << c.prop_case << "): " << c.description << "\n";
                std::cout << "asymmetric facets " << index_list_text(r["asymmetric"]) << ", "
                          << (c.essential ? "essential" : "inessential") << "\n";
                if (c.y) std::cout << "a = " << vec_text(r["y_normalization"]["a"]) << "\n";
            }
        } else if (toric->parsed()) {
            Polytope p = load(path);
            auto vd = volume_moments(p);
            auto ec = equivalence_classes(p);
            Json r = to_json(symp_report(p, vd, ec));
            if (!h_text.empty()) {
                auto t = isom_triviality(p, ec, to_ivec(parse_vec(h_text)));
                r["triviality"] = {{"kind", triviality_name(t.kind)},
                                   {"order", detail::int_json(t.order)},
                                   {"beta", t.beta ? to_json(*t.beta) : Json(nullptr)}};
            }
            if (json) {
                emit(r);
            } else {
                std::cout << "kernel basis:";
                for (const auto& b : r["kernel_basis"]) std::cout << " " << b.dump();
                std::cout << "\nfactors:";
                for (const auto& f : r["factors"]) std::cout << " " << f.get<std::string>();
                std::cout << "\npi1 rank " << r["pi1_rank"].get<int>();
                if (!r["pi1_torsion"].is_null()) std::cout << ", torsion order " << r["pi1_torsion"].dump();
                std::cout << "\n";
                for (const auto& [key, val] : r["flags"].items()) std::cout << key << ": " << val.dump() << "\n";
                if (r.contains("triviality"))
                    std::cout << "H is " << r["triviality"]["kind"].get<std::string>() << " (order "
                              << r["triviality"]["order"].dump() << ")\n";
            }
        } else if (construct->parsed()) {
            Polytope p;
            if (c_simplex->parsed()) {
                p = simplex(k);
            } else if (c_product->parsed()) {
                p = product(load(left), load(right));
            } else if (c_y->parsed()) {
                const Vec a = parse_vec(a_text);
                if (a.size() != 2) throw Error(ErrorKind::Parse, "--a needs two entries");
                p = y_family(a[0], a[1], parse_vec(kappa_text));
            } else if (c_bundle->parsed()) {
                std::vector<Vec> tw;
                for (const auto& part : split(twist_text, ';')) tw.push_back(parse_vec(part));
                p = bundle_over_simplex(load(path), k, tw, parse_vec(kappa_text));
            } else if (c_expansion->parsed()) {
                p = expansion(load(path), facet, k);
            } else if (c_blowup->parsed()) {
                std::optional<Rat> eps;
                if (!eps_text.empty()) eps = parse_vec(eps_text).at(0);
                p = blowup(load(path), parse_indices(face_text), eps);
            }
            emit(to_json(p));
        } else if (corpus->parsed()) {
            if (!spec_path.empty()) spec = corpus_spec_from_json(read_json_file(spec_path));
            Json arr = Json::array();
            for (const auto& p : random_corpus(spec)) arr.push_back(to_json(p));
            emit(arr);
        } else if (verify->parsed()) {
            const Suite& suite = find_suite(theorem);
            std::vector<Polytope> polys;
            std::string source;
            if (!corpus_path.empty()) {
                polys = load_corpus(corpus_path);
                source = corpus_path;
            } else if (o_dim->count() > 0) {
                vspec.smooth_only = smooth_flag;
                polys = random_corpus(vspec);
                source = to_json(vspec).dump();
            } else {
                if (corpus_name.empty()) corpus_name = default_corpus(theorem);
                polys = named_corpus(corpus_name);
                source = corpus_name;
            }
            SuiteResult r = run_suite(suite, polys);
            if (json) {
                Json ce = Json::array();
                for (const auto& c : r.counterexamples)
                    ce.push_back({{"index", c.index}, {"reason", c.reason}, {"polytope", to_json(c.polytope)}});
                emit({{"theorem", r.id},
                      {"statement", r.statement},
                      {"corpus", source},
                      {"instances", r.instances},
                      {"applicable", r.applicable},
                      {"flagged", r.flagged},
                      {"overlapping_cases", r.overlaps},
                      {"passed", r.passed()},
                      {"counterexamples", ce}});
            } else {
                std::cout << r.id << ": " << r.statement << "\n"
                          << "corpus " << source << ": " << r.instances << " instances, " << r.applicable
                          << " applicable, " << r.flagged << " flagged\n";
                if (r.overlaps > 0) std::cout << r.overlaps << " functions satisfy more than one case\n";
                for (const auto& c : r.counterexamples)
                    std::cout << "counterexample #" << c.index << ": " << c.reason << "\n  " << to_json(c.polytope).dump()
                              << "\n";
                std::cout << (r.passed() ? "PASS" : "FAIL") << "\n";
            }
            return r.passed() ? kOk : kCounterexample;
        } else if (list->parsed()) {
            for (const auto& s : suites()) std::cout << s.id << "  " << s.statement << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    }
    return kOk;
}
