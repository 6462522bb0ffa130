#pragma once

// JSON encoding of polytopes, polynomials and reports. Rationals are [num, den]
// pairs; integers too large for 64 bits are written as decimal strings.

#include "mlpoly/build.hpp"
#include "mlpoly/toric.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace mlpoly {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json int_json(const Int& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

inline Int int_from_json(const Json& j) {
    try {
        if (j.is_number_integer()) return Int(j.get<std::int64_t>());
        if (j.is_string()) return Int(j.get<std::string>());
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Parse, "expected an integer, got " + j.dump());
}

}  // namespace detail

inline Json to_json(const Rat& r) { return Json::array({detail::int_json(numer(r)), detail::int_json(denom(r))}); }

inline Json to_json(const Vec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline Json to_json(const IVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(detail::int_json(x));
    return a;
}

inline Json to_json(const std::vector<int>& v) {
    Json a = Json::array();
    for (int x : v) a.push_back(x);
    return a;
}

// Accepts [num, den], an integer, or a "p/q" string.
inline Rat rat_from_json(const Json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw Error(ErrorKind::Parse, "rational must be [num, den]");
        const Int d = detail::int_from_json(j[1]);
        if (d == 0) throw Error(ErrorKind::Parse, "zero denominator");
        return Rat(detail::int_from_json(j[0]), d);
    }
    if (j.is_string()) {
        try {
            return Rat(j.get<std::string>());
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, "bad rational string " + j.dump());
        }
    }
    return Rat(detail::int_from_json(j));
}

inline Vec vec_from_json(const Json& j) {
    if (!j.is_array()) throw Error(ErrorKind::Parse, "expected an array of rationals");
    Vec v;
    for (const auto& x : j) v.push_back(rat_from_json(x));
    return v;
}

inline Json to_json(const Polytope& p) {
    Json j;
    j["dim"] = p.n;
    Json c = Json::array();
    for (const auto& e : p.eta) c.push_back(to_json(e));
    j["conormals"] = c;
    j["support"] = to_json(p.kappa);
    j["lattice"] = p.lattice;
    return j;
}

inline Polytope polytope_from_json(const Json& j) {
    if (!j.is_object()) throw Error(ErrorKind::Parse, "polytope document must be an object");
    for (const char* key : {"dim", "conormals", "support"})
        if (!j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing field ") + key);
    if (!j["dim"].is_number_integer()) throw Error(ErrorKind::Parse, "dim must be an integer");
    const int n = j["dim"].get<int>();
    if (n < 1) throw Error(ErrorKind::Parse, "dim must be positive");
    std::vector<Vec> eta;
    if (!j["conormals"].is_array()) throw Error(ErrorKind::Parse, "conormals must be an array");
    for (const auto& row : j["conormals"]) {
        Vec v = vec_from_json(row);
        if (static_cast<int>(v.size()) != n) throw Error(ErrorKind::Parse, "conormal has wrong length");
        eta.push_back(std::move(v));
    }
    Vec kappa = vec_from_json(j["support"]);
    if (kappa.size() != eta.size()) throw Error(ErrorKind::Parse, "support and conormals differ in length");
    const bool lattice = j.contains("lattice") ? j["lattice"].get<bool>() : false;
    return validate(eta, kappa, lattice);
}

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

inline Json to_json(const KPoly& p) {
    Json a = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json exps = Json::array();
        for (int i = 0; i < p.nvars(); ++i) exps.push_back(static_cast<int>(e[i]));
        a.push_back({{"exps", exps}, {"coef", to_json(c)}});
    }
    return a;
}

inline Json to_json(const MassLinearSpace& ml) {
    Json b = Json::array();
    for (const auto& e : ml.basis) b.push_back({{"H", to_json(e.H)}, {"gamma", to_json(e.gamma)}});
    return {{"dim_mass_linear", ml.dimension()}, {"basis", b}};
}

inline Json to_json(const EquivClasses& ec) {
    Json cls = Json::array();
    for (const auto& I : ec.classes) cls.push_back(to_json(I));
    Json w = Json::object();
    for (const auto& [key, wit] : ec.witnesses)
        w[std::to_string(key.first) + "," + std::to_string(key.second)] = to_json(wit.xi);
    return {{"classes", cls},
            {"witnesses", w},
            {"consistent", ec.consistent},
            {"normalization_conflict", ec.normalization_conflict}};
}

inline Json to_json(const FacetFlags& f) {
    auto arr = [](const std::vector<bool>& v) {
        Json a = Json::array();
        for (bool b : v) a.push_back(b);
        return a;
    };
    return {{"pervasive", arr(f.pervasive)}, {"flat", arr(f.flat)}, {"powerful", arr(f.powerful)}};
}

inline Json to_json(const ClassStructure& c) {
    Json basis = Json::array();
    for (const auto& b : c.basis) basis.push_back(to_json(b));
    return {{"class", to_json(c.I)},
            {"kind", c.bundle ? "bundle_over_simplex" : "expansion"},
            {"fiber_face", to_json(c.fiber_face)},
            {"fiber_dim", c.fiber_dim},
            {"fiber_facets", c.fiber_facets},
            {"basis", basis},
            {"alpha", to_json(c.alpha)},
            {"verified", c.verified}};
}

inline Json to_json(const ProductVerdict& v) {
    Json blocks = Json::array();
    for (const auto& b : v.blocks) blocks.push_back(to_json(b));
    return {{"kind", product_kind_name(v.kind)}, {"factors", to_json(v.factors)}, {"blocks", blocks}};
}

inline Json to_json(const YNormalization& y) {
    Json T = Json::array();
    for (const auto& row : y.T) T.push_back(to_json(row));
    return {{"facet_order", to_json(y.facet_order)},
            {"T", T},
            {"a", to_json(Vec{y.a1, y.a2})},
            {"canonical_a", to_json(Vec{y.canonical[0], y.canonical[1]})},
            {"invariant", to_json(y.invariant)},
            {"verified", y.verified}};
}

inline Json to_json(const Classification& c) {
    Json j = {{"tag", c.tag},
              {"case", c.prop_case},
              {"matching_cases", to_json(c.matching_cases)},
              {"asymmetric", to_json(c.asymmetric)},
              {"base", to_json(c.base)},
              {"gamma", to_json(c.gamma)},
              {"essential", c.essential},
              {"description", c.description}};
    j["y_normalization"] = c.y ? to_json(*c.y) : Json(nullptr);
    return j;
}

inline Json to_json(const IsomShape& s) {
    Json f = Json::array();
    for (const auto& x : s.factors) f.push_back(x);
    return {{"factors", f},
            {"class_sizes", to_json(s.class_sizes)},
            {"pi1_rank", s.pi1_rank},
            {"pi1_torsion", s.pi1_torsion ? detail::int_json(*s.pi1_torsion) : Json(nullptr)}};
}

inline Json to_json(const SympReport& r) {
    Json kb = Json::array();
    for (const auto& b : r.kernel.basis) kb.push_back(to_json(b));
    Json f = Json::array();
    for (const auto& x : r.shape.factors) f.push_back(x);
    Json ih = Json::array();
    for (std::size_t k = 0; k < r.integral_H.size(); ++k)
        ih.push_back({{"H", to_json(r.integral_H[k])}, {"gamma", to_json(r.integral_gamma[k])}});
    return {{"kernel_basis", kb},
            {"factors", f},
            {"pi1_rank", r.shape.pi1_rank},
            {"pi1_torsion", r.shape.pi1_torsion ? detail::int_json(*r.shape.pi1_torsion) : Json(nullptr)},
            {"integral_mass_linear", ih},
            {"flags",
             {{"no_lattice_mass_linear", r.no_lattice_mass_linear},
              {"product_of_simplices", r.product_of_simplices},
              {"essential_lattice_H", r.essential_lattice_H}}}};
}

inline Json to_json(const CorpusSpec& s) {
    return {{"dim", s.dim},
            {"max_facets", s.max_facets},
            {"ops", s.ops},
            {"seed", s.seed},
            {"count", s.count},
            {"smooth_only", s.smooth_only}};
}

inline CorpusSpec corpus_spec_from_json(const Json& j) {
    CorpusSpec s;
    try {
        if (j.contains("dim")) s.dim = j["dim"].get<int>();
        if (j.contains("max_facets")) s.max_facets = j["max_facets"].get<int>();
        if (j.contains("ops")) s.ops = j["ops"].get<int>();
        if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("count")) s.count = j["count"].get<int>();
        if (j.contains("smooth_only")) s.smooth_only = j["smooth_only"].get<bool>();
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
    return s;
}

}  // namespace mlpoly
