#pragma once

// Full analysis report for a single polytope, as JSON and as text.

#include "mlpoly/json_io.hpp"
#include "mlpoly/verify.hpp"

namespace mlpoly {

inline bool toric_applicable(const Polytope& p) { return p.lattice && is_smooth(p); }

inline Json analysis_report(const Polytope& p) {
    const Analysis a(p);
    Json r;
    r["polytope"] = to_json(p);
    r["smooth"] = toric_applicable(p);
    r["face_counts"] = {{"vertices", p.faces.vertices.size()}, {"edges", p.faces.edges.size()}, {"facets", p.N}};
    r["facet_flags"] = to_json(facet_predicates(p, a.vd.volume));
    r["equivalence"] = to_json(a.ec);
    auto ml = to_json(a.ml);
    r["dim_mass_linear"] = ml["dim_mass_linear"];
    r["mass_linear_basis"] = ml["basis"];
    const auto ines = inessential_space(p, a.ec, &a.vd);
    Json ib = Json::array();
    for (const auto& e : ines.basis) ib.push_back({{"H", to_json(e.H)}, {"beta", to_json(e.beta)}, {"verified", e.verified}});
    r["dim_inessential"] = ines.dimension();
    r["inessential_basis"] = ib;
    r["essential_dim"] = a.ml.dimension() - ines.dimension();
    auto sr = structure_report(p, a.vd, a.ec);
    Json cls = Json::array();
    for (const auto& c : sr.classes) cls.push_back(to_json(c));
    r["class_structure"] = cls;
    r["product"] = to_json(sr.product);
    auto all = theorem_allmass_check(p, a.ml, a.ec);
    r["product_conditions"] = {{"all_mass_linear", all.all_mass_linear},
                               {"all_inessential", all.all_inessential},
                               {"product", all.product},
                               {"classes_empty", all.classes_empty},
                               {"consistent", all.consistent()}};
    if (p.n == 2) r["polygon_shape"] = polygon_shape(p, a.ec);
    if (p.n == 3 && toric_applicable(p)) {
        auto y = normalize_to_y(p);
        r["y_normalization"] = y ? to_json(*y) : Json(nullptr);
    }
    r["toric"] = toric_applicable(p) ? to_json(symp_report(p, a.vd, a.ec)) : Json(nullptr);
    return r;
}

inline std::string rat_text(const Json& j) {
    const std::string num = j[0].is_string() ? j[0].get<std::string>() : std::to_string(j[0].get<std::int64_t>());
    const std::string den = j[1].is_string() ? j[1].get<std::string>() : std::to_string(j[1].get<std::int64_t>());
    return den == "1" ? num : num + "/" + den;
}

inline std::string vec_text(const Json& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + rat_text(v[i]);
    return s + ")";
}

inline std::string index_list_text(const Json& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i].get<int>());
    return s + "}";
}

inline std::string analysis_text(const Json& r) {
    std::ostringstream out;
    const auto& p = r["polytope"];
    out << "dimension " << p["dim"].get<int>() << ", facets " << r["face_counts"]["facets"].get<int>() << ", vertices "
        << r["face_counts"]["vertices"].get<std::size_t>() << ", edges " << r["face_counts"]["edges"].get<std::size_t>()
        << (r["smooth"].get<bool>() ? ", smooth" : ", not smooth") << "\n";
    const auto& f = r["facet_flags"];
    out << "facet  pervasive  flat  powerful\n";
    for (std::size_t i = 0; i < f["pervasive"].size(); ++i)
        out << "  " << i << "      " << (f["pervasive"][i].get<bool>() ? "yes" : "no ") << "      "
            << (f["flat"][i].get<bool>() ? "yes" : "no ") << "   " << (f["powerful"][i].get<bool>() ? "yes" : "no") << "\n";
    out << "equivalence classes:";
    for (const auto& c : r["equivalence"]["classes"]) out << " " << index_list_text(c);
    out << "\n";
    if (r["equivalence"]["normalization_conflict"].get<bool>())
        out << "warning: equivalent conormals are not normalized compatibly; class-based results need care\n";
    out << "mass linear dimension " << r["dim_mass_linear"].get<int>() << ", inessential "
        << r["dim_inessential"].get<int>() << ", essential " << r["essential_dim"].get<int>() << "\n";
    for (const auto& b : r["mass_linear_basis"]) out << "  H = " << vec_text(b["H"]) << "  gamma = " << vec_text(b["gamma"]) << "\n";
    out << "product of simplices: " << r["product"]["kind"].get<std::string>() << "\n";
    for (const auto& c : r["class_structure"])
        out << "class " << index_list_text(c["class"]) << ": " << c["kind"].get<std::string>()
            << (c["verified"].get<bool>() ? "" : " (unverified)") << "\n";
    if (r.contains("polygon_shape")) out << "polygon shape: " << r["polygon_shape"].get<std::string>() << "\n";
    if (r.contains("y_normalization") && !r["y_normalization"].is_null())
        out << "normalizes to Y_a with a = " << vec_text(r["y_normalization"]["a"]) << ", canonical "
            << vec_text(r["y_normalization"]["canonical_a"]) << "\n";
    if (!r["toric"].is_null()) {
        const auto& t = r["toric"];
        out << "isometry factors:";
        for (const auto& x : t["factors"]) out << " " << x.get<std::string>();
        out << "; pi1 rank " << t["pi1_rank"].get<int>();
        if (!t["pi1_torsion"].is_null()) out << ", torsion order " << t["pi1_torsion"].dump();
        out << "\n";
    }
    return out.str();
}

}  // namespace mlpoly
