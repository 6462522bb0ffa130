#pragma once

// Property suites run over a corpus. Each suite checks one theorem-level
// statement on every instance and collects counterexamples.

#include "mlpoly/build.hpp"
#include "mlpoly/structure.hpp"

#include <functional>
#include <future>
#include <thread>

namespace mlpoly {

// Per-polytope data shared by the suites.
struct Analysis {
    Polytope p;
    VolumeData vd;
    MassLinearSpace ml;
    EquivClasses ec;
    std::vector<Vec> test_H;  // basis elements plus one generic combination

    explicit Analysis(Polytope poly) : p(std::move(poly)) {
        vd = volume_moments(p);
        ml = mass_linear_space(p, vd);
        ec = equivalence_classes(p);
        for (const auto& b : ml.basis) test_H.push_back(b.H);
        if (ml.dimension() > 1) {
            Vec h = zeros(p.n);
            for (int k = 0; k < ml.dimension(); ++k) h = h + Rat(k + 1) * ml.basis[k].H;
            test_H.push_back(h);
        }
    }

    Vec gamma(const Vec& H) const {
        auto g = is_mass_linear(p, vd, H);
        if (!g) throw Error(ErrorKind::NotMassLinear, "test function is not mass linear");
        return *g;
    }
};

struct CheckOutcome {
    bool applicable = false;
    std::vector<std::string> failures;
    int overlaps = 0;  // informational count (multiple matching cases)

    void fail(std::string s) { failures.push_back(std::move(s)); }
    void check(bool ok, const std::string& what) {
        if (!ok) fail(what);
    }
};

struct Counterexample {
    int index = 0;
    Polytope polytope;
    std::string reason;
};

struct SuiteResult {
    std::string id;
    std::string statement;
    int instances = 0;
    int applicable = 0;
    int overlaps = 0;
    int flagged = 0;  // skipped: equivalent conormals not normalized compatibly
    std::vector<Counterexample> counterexamples;
    bool passed() const { return counterexamples.empty(); }
};

struct Suite {
    std::string id;
    std::string statement;
    std::function<CheckOutcome(const Analysis&)> check;
    bool uses_classes = true;  // depends on the conormal normalization of equivalent facets
};

namespace detail {

inline bool smooth3(const Polytope& p) { return p.n == 3 && p.lattice && is_smooth(p); }

// All index sets of size 1..n, thinned deterministically to at most `cap`.
inline std::vector<std::vector<int>> derivative_index_sets(const Polytope& p, std::size_t cap) {
    std::vector<std::vector<int>> all;
    for (Mask m = 1; m < bit(p.N); ++m)
        if (popcount(m) <= p.n) all.push_back(indices_of(m));
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    if (all.size() <= cap) return all;
    std::vector<std::vector<int>> out;
    const double stride = static_cast<double>(all.size()) / static_cast<double>(cap);
    for (std::size_t k = 0; k < cap; ++k) out.push_back(all[static_cast<std::size_t>(k * stride)]);
    return out;
}

inline std::string vec_str(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + ")";
}

inline CheckOutcome check_face_derivatives(const Analysis& a) {
    CheckOutcome o;
    o.applicable = true;
    const bool smooth = a.p.lattice && is_smooth(a.p);
    for (const auto& idx : derivative_index_sets(a.p, 64)) {
        auto d = derivative_identity(a.p, a.vd.volume, idx);
        const std::string tag = "index set " + vec_str(to_vec(IVec(idx.begin(), idx.end())));
        if (!d.face_volume) {
            o.check(d.derivative.is_zero(), tag + ": empty face with nonzero derivative");
            continue;
        }
        o.check(d.holds, tag + ": derivative is not a positive multiple of the face volume");
        if (smooth) o.check(d.K == 1, tag + ": K = " + d.K.str() + " on a smooth polytope");
    }
    return o;
}

inline CheckOutcome check_symmetric_restriction(const Analysis& a) {
    CheckOutcome o;
    if (a.p.n < 2) return o;
    for (const auto& H : a.test_H) {
        const Vec g = a.gamma(H);
        for (int i = 0; i < a.p.N; ++i) {
            if (g[i] != 0) continue;
            o.applicable = true;
            auto r = restrict_to_symmetric_face(a.p, a.vd, H, {i});
            o.check(r.matches, "restriction of " + vec_str(H) + " to facet " + std::to_string(i) +
                                   " has mismatched coefficients");
        }
    }
    return o;
}

inline CheckOutcome check_pervasive_or_flat(const Analysis& a) {
    CheckOutcome o;
    for (const auto& H : a.test_H) {
        o.applicable = true;
        const Vec g = a.gamma(H);
        for (int i = 0; i < a.p.N; ++i)
            if (g[i] != 0)
                o.check(is_pervasive(a.p, i) || is_flat(a.p, i),
                        "asymmetric facet " + std::to_string(i) + " is neither pervasive nor flat");
    }
    return o;
}

inline CheckOutcome check_no_pervasive_no_flat(const Analysis& a) {
    CheckOutcome o;
    auto f = facet_predicates(a.p, a.vd.volume);
    o.check(f.consistent, "flatness by rank and by degree disagree");
    bool none = true;
    for (int i = 0; i < a.p.N; ++i) none = none && !f.pervasive[i] && !f.flat[i];
    if (!none) return o;
    o.applicable = true;
    o.check(a.ml.dimension() == 0, "no pervasive or flat facet but mass linear functions exist");
    return o;
}

inline CheckOutcome check_no_pervasive(const Analysis& a) {
    CheckOutcome o;
    for (int i = 0; i < a.p.N; ++i)
        if (is_pervasive(a.p, i)) return o;
    o.applicable = true;
    for (const auto& b : a.ml.basis)
        o.check(gamma_is_inessential(a.ec, b.gamma), "essential " + vec_str(b.H) + " without pervasive facets");
    return o;
}

inline CheckOutcome check_inessential_gamma(const Analysis& a) {
    CheckOutcome o;
    o.applicable = true;
    auto ines = inessential_space(a.p, a.ec, &a.vd);
    for (const auto& e : ines.basis) o.check(e.verified, "inessential " + vec_str(e.H) + " has gamma != beta");
    return o;
}

inline CheckOutcome check_inessential_dimension(const Analysis& a) {
    CheckOutcome o;
    o.applicable = true;
    const int dim = inessential_space(a.p, a.ec, nullptr).dimension();
    const int expect = a.p.N - static_cast<int>(a.ec.classes.size());
    o.check(dim == expect, "inessential dimension " + std::to_string(dim) + " != " + std::to_string(expect));
    o.check(a.ec.consistent, "class rank or class-sum cross-check failed");
    return o;
}

inline CheckOutcome check_class_structure(const Analysis& a) {
    CheckOutcome o;
    for (const auto& I : a.ec.classes) {
        if (I.size() < 2) continue;
        o.applicable = true;
        auto cs = detect_class_structure(a.p, I);
        o.check(cs.verified, "class " + vec_str(to_vec(IVec(I.begin(), I.end()))) + " has no verified structure");
    }
    return o;
}

inline CheckOutcome check_inessential_reduction(const Analysis& a) {
    CheckOutcome o;
    for (const auto& H : a.test_H) {
        o.applicable = true;
        auto r = inessential_reduction(a.p, a.vd, H);
        if (!r.ok) {
            o.fail("reduction of " + vec_str(H) + " failed: " + r.failure);
            continue;
        }
        for (int i = 0; i < a.p.N; ++i)
            if (r.gamma_tilde[i] != 0)
                o.check(is_pervasive(a.p, i), "reduced function asymmetric on non-pervasive facet " + std::to_string(i));
        auto gp = is_mass_linear(a.p, a.vd, r.H_prime);
        o.check(gp && gamma_is_inessential(a.ec, *gp), "subtracted part is not inessential");
        o.check(popcount(asymmetric_mask(r.gamma_tilde)) <= popcount(asymmetric_mask(a.gamma(H))),
                "reduction increased the asymmetric set");
    }
    return o;
}

inline CheckOutcome check_product_conditions(const Analysis& a) {
    CheckOutcome o;
    o.applicable = true;
    auto c = theorem_allmass_check(a.p, a.ml, a.ec);
    if (!c.consistent()) {
        o.fail(std::string("conditions disagree: all mass linear=") + (c.all_mass_linear ? "T" : "F") +
               " all inessential=" + (c.all_inessential ? "T" : "F") + " product=" + (c.product ? "T" : "F") +
               " classes empty=" + (c.classes_empty ? "T" : "F"));
    }
    return o;
}

inline CheckOutcome check_polygon_cases(const Analysis& a) {
    CheckOutcome o;
    if (a.p.n != 2) return o;
    o.applicable = true;
    const std::string shape = polygon_shape(a.p, a.ec);
    o.check((a.ml.dimension() > 0) == (shape != "none"),
            "mass linear dimension " + std::to_string(a.ml.dimension()) + " with shape " + shape);
    for (const auto& H : a.test_H) {
        auto c = classify_low_dim(a.p, a.vd, a.ec, H);
        o.check(c.prop_case != 0, "no polygon case for " + vec_str(H));
        o.check(!c.essential, "essential function " + vec_str(H) + " on a polygon");
    }
    return o;
}

inline CheckOutcome check_disjoint_edges(const Analysis& a) {
    CheckOutcome o;
    if (a.p.n != 2) return o;
    for (const auto& H : a.test_H) {
        const Vec g = a.gamma(H);
        for (int i = 0; i < a.p.N; ++i)
            for (int j = i + 1; j < a.p.N; ++j) {
                if (!a.p.face_empty(bit(i) | bit(j))) continue;
                o.applicable = true;
                o.check(g[i] + g[j] == 0, "disjoint edges " + std::to_string(i) + "," + std::to_string(j) +
                                              " have gamma sum " + Rat(g[i] + g[j]).str());
            }
    }
    return o;
}

inline CheckOutcome check_two_asymmetric(const Analysis& a) {
    CheckOutcome o;
    for (const auto& H : a.test_H) {
        auto t = two_asymmetric_dispatch(a.p, a.ec, a.gamma(H));
        if (!t.applies) continue;
        o.applicable = true;
        o.check(t.equivalent, "the two asymmetric facets of " + vec_str(H) + " are not equivalent");
    }
    return o;
}

inline CheckOutcome check_essential_3d(const Analysis& a) {
    CheckOutcome o;
    if (!smooth3(a.p)) return o;
    o.applicable = true;
    const bool has_essential = a.ml.dimension() > inessential_space(a.p, a.ec, nullptr).dimension();
    auto y = normalize_to_y(a.p);
    const bool y_essential = y && y->verified && y->invariant != 0;
    o.check(has_essential == y_essential, std::string("essential functions ") + (has_essential ? "exist" : "absent") +
                                              " but Y normalization " + (y_essential ? "succeeds" : "fails"));
    for (const auto& H : a.test_H) {
        if (!is_essential(a.p, a.vd, a.ec, H)) continue;
        auto c = classify_low_dim(a.p, a.vd, a.ec, H);
        o.check(c.tag == "Y_family", "essential " + vec_str(H) + " classified as " + c.tag);
    }
    return o;
}

inline CheckOutcome check_solid_cases(const Analysis& a) {
    CheckOutcome o;
    if (!smooth3(a.p)) return o;
    for (const auto& H : a.test_H) {
        if (is_zero(H)) continue;
        o.applicable = true;
        auto c = classify_low_dim(a.p, a.vd, a.ec, H);
        o.check(c.prop_case != 0, "no case applies to " + vec_str(H));
        if (c.matching_cases.size() > 1) ++o.overlaps;
    }
    return o;
}

inline CheckOutcome check_coefficient_sum(const Analysis& a) {
    CheckOutcome o;
    if (!smooth3(a.p)) return o;
    for (const auto& H : a.test_H) {
        o.applicable = true;
        Rat s = 0;
        for (const auto& x : a.gamma(H)) s += x;
        o.check(s == 0, "coefficient sum " + s.str() + " for " + vec_str(H));
    }
    return o;
}

inline CheckOutcome check_powerful(const Analysis& a) {
    CheckOutcome o;
    for (const auto& H : a.test_H) {
        o.applicable = true;
        const Vec g = a.gamma(H);
        for (int i = 0; i < a.p.N; ++i)
            if (g[i] != 0) o.check(is_powerful(a.p, i), "asymmetric facet " + std::to_string(i) + " is not powerful");
    }
    return o;
}

inline CheckOutcome check_no_symmetric_4d(const Analysis& a) {
    CheckOutcome o;
    if (a.p.n != 4) return o;
    for (const auto& H : a.test_H) {
        const Vec g = a.gamma(H);
        if (asymmetric_mask(g) != a.p.all()) continue;
        o.applicable = true;
        o.check(product_recognition(a.p, a.ec).kind != ProductKind::None,
                "no symmetric facet for " + vec_str(H) + " but not a combinatorial product of simplices");
    }
    return o;
}

inline CheckOutcome check_symmetric_reduction_4d(const Analysis& a) {
    CheckOutcome o;
    if (a.p.n != 4 || !a.p.lattice || !is_smooth(a.p)) return o;
    for (const auto& H : a.test_H) {
        o.applicable = true;
        auto r = symmetric_facet_reduction(a.p, a.vd, a.ec, H);
        if (!r.ok) {
            o.fail("reduction of " + vec_str(H) + " failed: " + r.failure);
            continue;
        }
        o.check(r.has_symmetric, "reduced function has no symmetric facet");
        auto gp = is_mass_linear(a.p, a.vd, r.H_prime);
        o.check(gp && gamma_is_inessential(a.ec, *gp), "subtracted part is not inessential");
    }
    return o;
}

// Y_a family: mass linear space against the closed-form constraint system.
inline CheckOutcome check_y_family(const Analysis& a) {
    CheckOutcome o;
    auto y = normalize_to_y(a.p);
    if (!y || a.p.N != 5 || y->facet_order != std::vector<int>{0, 1, 2, 3, 4}) return o;
    o.applicable = true;
    const Rat a1 = y->a1, a2 = y->a2;
    // expected: gamma1+gamma2+gamma3 = 0, gamma4+gamma5 = 0, a1 gamma1 + a2 gamma2 = 0
    Mat cons = {{1, 1, 1, 0, 0}, {0, 0, 0, 1, 1}, {a1, a2, 0, 0, 0}};
    std::vector<Vec> expected = kernel(cons, 5);
    std::vector<Vec> got;
    for (const auto& b : a.ml.basis) got.push_back(b.gamma);
    // two-dimensional unless a = 0, where the third constraint vanishes
    o.check(a.ml.dimension() == static_cast<int>(expected.size()) &&
                a.ml.dimension() == (a1 == 0 && a2 == 0 ? 3 : 2),
            "dimension " + std::to_string(a.ml.dimension()));
    std::vector<Vec> both = expected;
    both.insert(both.end(), got.begin(), got.end());
    o.check(rank_of_vectors(both) == static_cast<int>(expected.size()) &&
                rank_of_vectors(got) == static_cast<int>(expected.size()),
            "coefficient space differs from the constraint system");
    const bool essential = a.ml.dimension() > inessential_space(a.p, a.ec, nullptr).dimension();
    o.check(essential == (y_invariant(a1, a2) != 0), "essential functions do not match a1 a2 (a1 - a2) != 0");
    return o;
}

}  // namespace detail

inline const std::vector<Suite>& suites() {
    static const std::vector<Suite> all = {
        {"prop2.3", "derivatives of the volume are face volumes (K = 1 when smooth, 0 for empty faces)",
         detail::check_face_derivatives, false},
        {"prop2.10", "restriction to a symmetric facet is mass linear with matching coefficients",
         detail::check_symmetric_restriction, false},
        {"prop2.11", "asymmetric facets are pervasive or flat", detail::check_pervasive_or_flat, false},
        {"thm1.8", "no pervasive and no flat facet implies no mass linear functions", detail::check_no_pervasive_no_flat, false},
        {"prop1.9", "no pervasive facet implies every mass linear function is inessential", detail::check_no_pervasive},
        {"prop1.18", "inessential functions are mass linear with gamma = beta", detail::check_inessential_gamma},
        {"lem3.6", "inessential dimension equals N minus the number of classes", detail::check_inessential_dimension},
        {"prop3.17", "each class of size >= 2 is a bundle or an expansion", detail::check_class_structure},
        {"prop3.24", "inessential reduction leaves only pervasive asymmetric facets", detail::check_inessential_reduction},
        {"thm1.10", "four product-of-simplices conditions agree", detail::check_product_conditions},
        {"prop4.2", "polygon classification", detail::check_polygon_cases},
        {"cor4.3", "disjoint polygon edges have opposite coefficients", detail::check_disjoint_edges},
        {"prop4.4", "exactly two asymmetric facets are equivalent", detail::check_two_asymmetric},
        {"thm1.4", "essential functions in dimension 3 occur only on Y_a with a1 a2 (a1 - a2) != 0",
         detail::check_essential_3d},
        {"prop4.7", "Y_a mass linear space matches the constraint system", detail::check_y_family},
        {"prop4.13", "every nonzero mass linear function on a smooth 3-polytope fits a listed case",
         detail::check_solid_cases},
        {"lem4.15", "coefficients sum to zero on smooth 3-polytopes", detail::check_coefficient_sum, false},
        {"propA.2", "asymmetric facets are powerful", detail::check_powerful, false},
        {"corA.7", "no symmetric facet in dimension 4 implies a combinatorial product of simplices",
         detail::check_no_symmetric_4d},
        {"thm1.11", "in dimension 4 an inessential shift leaves a symmetric facet", detail::check_symmetric_reduction_4d},
    };
    return all;
}

inline const Suite& find_suite(const std::string& id) {
    for (const auto& s : suites())
        if (s.id == id) return s;
    throw Error(ErrorKind::UnknownTheorem, "unknown theorem id " + id);
}

// Y_a for a in {-2..2}^2 with several chamber points each.
inline std::vector<Polytope> y_grid(int points_per_a = 5) {
    std::vector<Polytope> out;
    for (int a1 = -2; a1 <= 2; ++a1)
        for (int a2 = -2; a2 <= 2; ++a2)
            for (int t = 0; t < points_per_a; ++t) {
                const Rat lam = t + 2;
                const Rat m = std::max({Rat(0), Rat(a1), Rat(a2)});
                Vec k = {Rat(t % 2), Rat(t % 3) - 1, lam, Rat(t), 0};
                const Rat s = k[0] + k[1] + k[2];
                k[4] = -Rat(a1) * k[0] - Rat(a2) * k[1] + m * s - k[3] + Rat(t + 1);
                out.push_back(y_family(a1, a2, k));
            }
    return out;
}

// Named corpora used by the command line and the tests.
inline std::vector<Polytope> named_corpus(const std::string& name) {
    auto spec = [](int dim, int count, int max_facets, std::uint64_t seed, bool smooth) {
        CorpusSpec s;
        s.dim = dim;
        s.count = count;
        s.max_facets = max_facets;
        s.seed = seed;
        s.smooth_only = smooth;
        return s;
    };
    if (name == "dim2_default") return random_corpus(spec(2, 200, 10, 1, false));
    if (name == "dim2_smooth") return random_corpus(spec(2, 200, 10, 1, true));
    if (name == "dim3_default") return random_corpus(spec(3, 200, 10, 1, false));
    if (name == "dim3_smooth") return random_corpus(spec(3, 200, 10, 1, true));
    if (name == "dim4_default") return random_corpus(spec(4, 100, 10, 1, false));
    if (name == "dim4_smooth") return random_corpus(spec(4, 100, 10, 1, true));
    if (name == "y_grid") return y_grid();
    throw Error(ErrorKind::InvalidArgument, "unknown corpus " + name);
}

inline SuiteResult run_suite(const Suite& suite, const std::vector<Polytope>& corpus, unsigned threads = 0) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<CheckOutcome> outcomes(corpus.size());
    std::vector<char> skipped(corpus.size(), 0);
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t k = begin; k < corpus.size(); k += step) {
            try {
                Analysis a(corpus[k]);
                if (suite.uses_classes && a.ec.normalization_conflict) {
                    skipped[k] = 1;
                    continue;
                }
                outcomes[k] = suite.check(a);
            } catch (const Error& e) {
                outcomes[k].applicable = true;
                outcomes[k].fail(std::string("error ") + kind_name(e.kind()) + ": " + e.what());
            }
        }
    };
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::future<void>> fs;
        for (unsigned t = 0; t < threads; ++t) fs.push_back(std::async(std::launch::async, work, t, threads));
        for (auto& f : fs) f.get();
    }
    SuiteResult r;
    r.id = suite.id;
    r.statement = suite.statement;
    r.instances = static_cast<int>(corpus.size());
    for (std::size_t k = 0; k < corpus.size(); ++k) {
        if (skipped[k]) ++r.flagged;
        if (outcomes[k].applicable) ++r.applicable;
        r.overlaps += outcomes[k].overlaps;
        for (const auto& f : outcomes[k].failures) r.counterexamples.push_back({static_cast<int>(k), corpus[k], f});
    }
    return r;
}

}  // namespace mlpoly
