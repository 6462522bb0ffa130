#pragma once

// Facet predicates, bundle/expansion/product recognition, low-dimensional classification.

#include "mlpoly/equiv.hpp"

#include <array>

namespace mlpoly {

struct FacetFlags {
    std::vector<bool> pervasive;
    std::vector<bool> flat;
    std::vector<bool> flat_by_degree;  // deg_{kappa_i} V <= 1
    std::vector<bool> powerful;
    bool consistent = true;            // flat == flat_by_degree
};

inline bool is_flat(const Polytope& p, int i) {
    std::vector<Vec> rows;
    for (int j : neighbors_of_facet(p, i)) rows.push_back(p.eta[j]);
    return rank_of_vectors(rows) <= p.n - 1;
}

// Every vertex off the facet is joined by an edge to a vertex on it.
inline bool is_powerful(const Polytope& p, int i) {
    const auto& fl = p.faces;
    for (std::size_t v = 0; v < fl.vertices.size(); ++v) {
        if (fl.vertices[v] & bit(i)) continue;
        bool joined = false;
        for (int w : fl.neighbors[v])
            if (fl.vertices[w] & bit(i)) joined = true;
        if (!joined) return false;
    }
    return true;
}

inline FacetFlags facet_predicates(const Polytope& p, const KPoly& V) {
    FacetFlags f;
    for (int i = 0; i < p.N; ++i) {
        f.pervasive.push_back(is_pervasive(p, i));
        f.flat.push_back(is_flat(p, i));
        f.flat_by_degree.push_back(V.degree_in(i) <= 1);
        f.powerful.push_back(is_powerful(p, i));
        if (f.flat.back() != f.flat_by_degree.back()) f.consistent = false;
    }
    return f;
}

inline FacetFlags facet_predicates(const Polytope& p) { return facet_predicates(p, volume_poly(p)); }

// The face F_J as a polytope, by repeated facet restriction. Empty optional for vertices.
struct FacePolytope {
    std::optional<Polytope> face;  // absent when F_J is a point
    std::vector<int> ambient;      // face facet -> ambient facet
};

inline FacePolytope face_polytope(const Polytope& p, const std::vector<int>& J) {
    if (p.face_empty(mask_of(J))) throw Error(ErrorKind::EmptyFace, "face is empty");
    FacePolytope out;
    if (static_cast<int>(J.size()) >= p.n) return out;
    Polytope cur = p;
    std::vector<int> amb(p.N);
    for (int j = 0; j < p.N; ++j) amb[j] = j;
    for (int i : J) {
        int local = -1;
        for (int t = 0; t < cur.N; ++t)
            if (amb[t] == i) local = t;
        FacetSubpolytope fs = facet_subpolytope(cur, local);
        std::vector<int> na;
        for (int t : fs.ambient) na.push_back(amb[t]);
        cur = std::move(fs.face);
        amb = std::move(na);
    }
    out.face = std::move(cur);
    out.ambient = std::move(amb);
    return out;
}

struct ClassStructure {
    std::vector<int> I;
    bool bundle = false;          // F_I empty: bundle over the simplex of dim |I|-1
    std::vector<int> fiber_face;  // I' = I minus its last element
    int fiber_dim = 0;
    int fiber_facets = 0;
    std::vector<Vec> basis;       // columns of the coordinate change: W basis, then -eta_i (i in I')
    Vec alpha;                    // W coordinates of eta_last + sum_{I'} eta_i
    bool verified = false;
};

inline ClassStructure detect_class_structure(const Polytope& p, const std::vector<int>& I) {
    if (I.size() < 2) throw Error(ErrorKind::SingletonClass, "class has a single facet");
    ClassStructure cs;
    cs.I = I;
    const Mask mI = mask_of(I);
    cs.bundle = p.face_empty(mI);
    cs.fiber_face.assign(I.begin(), I.end() - 1);
    cs.fiber_dim = p.n - static_cast<int>(cs.fiber_face.size());
    if (cs.fiber_dim > 0) {
        auto fp = face_polytope(p, cs.fiber_face);
        cs.fiber_facets = fp.face ? fp.face->N : 0;
    }
    // greedy basis of W = span{eta_k : k not in I}
    std::vector<Vec> W;
    for (int k = 0; k < p.N; ++k) {
        if (mI & bit(k)) continue;
        W.push_back(p.eta[k]);
        if (rank_of_vectors(W) < static_cast<int>(W.size())) W.pop_back();
    }
    cs.basis = W;
    for (int i : cs.fiber_face) cs.basis.push_back(Rat(-1) * p.eta[i]);
    if (static_cast<int>(cs.basis.size()) != p.n || rank_of_vectors(cs.basis) != p.n) return cs;
    const std::size_t w = W.size();
    const std::size_t m = cs.fiber_face.size();
    bool ok = true;
    for (int k = 0; k < p.N && ok; ++k) {
        auto c = coordinates(cs.basis, p.eta[k]);
        if (!c) {
            ok = false;
            break;
        }
        if (!(mI & bit(k))) {
            for (std::size_t t = 0; t < m; ++t) ok = ok && (*c)[w + t] == 0;
        } else if (k == I.back()) {
            for (std::size_t t = 0; t < m; ++t) ok = ok && (*c)[w + t] == 1;
            cs.alpha = Vec(c->begin(), c->begin() + w);
        } else {
            const std::size_t pos = std::find(cs.fiber_face.begin(), cs.fiber_face.end(), k) - cs.fiber_face.begin();
            for (std::size_t t = 0; t < w; ++t) ok = ok && (*c)[t] == 0;
            for (std::size_t t = 0; t < m; ++t) ok = ok && (*c)[w + t] == (t == pos ? Rat(-1) : Rat(0));
        }
    }
    cs.verified = ok;
    return cs;
}

enum class ProductKind { Exact, Combinatorial, None };

inline const char* product_kind_name(ProductKind k) {
    switch (k) {
        case ProductKind::Exact: return "exact";
        case ProductKind::Combinatorial: return "combinatorial";
        case ProductKind::None: return "none";
    }
    return "none";
}

struct ProductVerdict {
    ProductKind kind = ProductKind::None;
    std::vector<std::vector<int>> blocks;  // facets of each simplex factor
    std::vector<int> factors;              // simplex dimensions, sorted
};

namespace detail {

// Does the vertex set equal {facets minus one facet per block}?
inline bool product_pattern(const Polytope& p, const std::vector<std::vector<int>>& blocks) {
    int dimsum = 0;
    std::size_t count = 1;
    for (const auto& b : blocks) {
        if (b.size() < 2) return false;
        dimsum += static_cast<int>(b.size()) - 1;
        count *= b.size();
    }
    if (dimsum != p.n || count != p.faces.vertices.size()) return false;
    for (Mask v : p.faces.vertices)
        for (const auto& b : blocks) {
            const Mask missing = mask_of(b) & ~v;
            if (popcount(missing) != 1) return false;
        }
    return true;
}

// Blocks of a candidate product: facets swapped along an edge belong together.
inline std::vector<std::vector<int>> swap_blocks(const Polytope& p) {
    std::vector<int> parent(p.N);
    for (int i = 0; i < p.N; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : p.faces.edges) {
        const Mask a = p.faces.vertices[e.a], b = p.faces.vertices[e.b];
        const int i = std::countr_zero(a & ~b), j = std::countr_zero(b & ~a);
        int ri = find(i), rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
    }
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < p.N; ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [r, g] : groups) out.push_back(g);
    return out;
}

}  // namespace detail

inline ProductVerdict product_recognition(const Polytope& p, const EquivClasses& ec) {
    ProductVerdict out;
    auto set_factors = [&](const std::vector<std::vector<int>>& blocks) {
        out.blocks = blocks;
        out.factors.clear();
        for (const auto& b : blocks) out.factors.push_back(static_cast<int>(b.size()) - 1);
        std::sort(out.factors.begin(), out.factors.end());
    };
    // exact: classes span complementary summands with the equal-coefficient relation
    bool exact = detail::product_pattern(p, ec.classes);
    if (exact) {
        int total = 0;
        for (const auto& I : ec.classes) {
            std::vector<Vec> vs;
            for (int i : I) vs.push_back(p.eta[i]);
            const int r = rank_of_vectors(vs);
            total += r;
            if (r != static_cast<int>(I.size()) - 1) exact = false;
            Vec s = zeros(p.n);
            for (const auto& v : vs) s = s + v;
            if (!is_zero(s)) exact = false;
        }
        if (total != p.n) exact = false;
    }
    if (exact) {
        out.kind = ProductKind::Exact;
        set_factors(ec.classes);
        return out;
    }
    auto blocks = detail::swap_blocks(p);
    if (detail::product_pattern(p, blocks)) {
        out.kind = ProductKind::Combinatorial;
        set_factors(blocks);
    }
    return out;
}

inline ProductVerdict product_recognition(const Polytope& p) { return product_recognition(p, equivalence_classes(p)); }

struct AllMassCheck {
    bool all_mass_linear = false;    // (i)
    bool all_inessential = false;    // (ii)
    bool product = false;            // (iii)
    bool classes_empty = false;      // (iv)
    bool consistent() const {
        return all_mass_linear == all_inessential && all_inessential == product && product == classes_empty;
    }
};

inline AllMassCheck theorem_allmass_check(const Polytope& p, const MassLinearSpace& ml, const EquivClasses& ec) {
    AllMassCheck c;
    c.all_mass_linear = ml.dimension() == p.n;
    c.all_inessential = p.N - static_cast<int>(ec.classes.size()) == p.n;
    c.product = product_recognition(p, ec).kind == ProductKind::Exact;
    c.classes_empty = true;
    for (const auto& I : ec.classes)
        if (!p.face_empty(mask_of(I))) c.classes_empty = false;
    return c;
}

inline AllMassCheck theorem_allmass_check(const Polytope& p) {
    return theorem_allmass_check(p, mass_linear_space(p), equivalence_classes(p));
}

// Two disjoint facets F, G with every vertex on F or G and F, G matched by edges.
inline bool is_interval_product(const Polytope& p, int F, int G) {
    if (!p.face_empty(bit(F) | bit(G))) return false;
    for (Mask v : p.faces.vertices) {
        if (!(v & (bit(F) | bit(G)))) return false;
        const Mask partner = v & bit(F) ? (v & ~bit(F)) | bit(G) : (v & ~bit(G)) | bit(F);
        if (p.faces.vertex_index(partner) < 0) return false;
    }
    return true;
}

// Lexicographically least representative of a under relabeling the fiber facets.
inline std::array<Rat, 2> canonical_y_parameter(const Rat& a1, const Rat& a2) {
    std::array<Rat, 3> t = {a1, a2, Rat(0)};
    std::array<int, 3> perm = {0, 1, 2};
    std::optional<std::array<Rat, 2>> best;
    do {
        std::array<Rat, 2> c = {t[perm[0]] - t[perm[2]], t[perm[1]] - t[perm[2]]};
        if (!best || c < *best) best = c;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return *best;
}

inline Rat y_invariant(const Rat& a1, const Rat& a2) { return a1 * a2 * (a1 - a2); }

struct YNormalization {
    std::vector<int> facet_order;  // ambient facets playing the roles of Y's facets 1..5
    Mat T;                         // integral map on conormals: T eta_{order[k]} = eta_k(Y_a)
    Rat a1 = 0, a2 = 0;
    std::array<Rat, 2> canonical{};
    Rat invariant = 0;
    bool verified = false;
};

// Lattice change of coordinates taking a smooth Delta_2 bundle over Delta_1 to some Y_a.
inline std::optional<YNormalization> normalize_to_y(const Polytope& p) {
    if (p.n != 3 || p.N != 5) return std::nullopt;
    auto ec = equivalence_classes(p);
    for (const auto& cls : ec.classes) {
        if (cls.size() != 2 || !p.face_empty(mask_of(cls))) continue;
        std::vector<int> fiber;
        for (int k = 0; k < p.N; ++k)
            if (k != cls[0] && k != cls[1]) fiber.push_back(k);
        for (const std::vector<int>& I : {cls, std::vector<int>{cls[1], cls[0]}}) {
            YNormalization y;
            y.facet_order = {fiber[0], fiber[1], fiber[2], I[0], I[1]};
            // T [f1 f2 b1] = -Id
            Mat cols(3, zeros(3));
            for (int r = 0; r < 3; ++r) {
                cols[r][0] = p.eta[fiber[0]][r];
                cols[r][1] = p.eta[fiber[1]][r];
                cols[r][2] = p.eta[I[0]][r];
            }
            auto inv = inverse(cols);
            if (!inv) continue;
            y.T = *inv;
            for (auto& row : y.T)
                for (auto& x : row) x = -x;
            auto img = [&](int k) { return mat_vec(y.T, p.eta[k]); };
            const Vec f3 = img(fiber[2]), b2 = img(I[1]);
            bool ok = f3 == Vec{1, 1, 0} && b2[2] == 1;
            for (const auto& row : y.T)
                for (const auto& x : row) ok = ok && is_integral(x);
            ok = ok && abs(det(y.T)) == 1;
            if (!ok) continue;
            y.a1 = b2[0];
            y.a2 = b2[1];
            y.canonical = canonical_y_parameter(y.a1, y.a2);
            y.invariant = y_invariant(y.a1, y.a2);
            y.verified = true;
            return y;
        }
    }
    return std::nullopt;
}

struct Classification {
    std::string tag;                  // triangle | bundle_over_simplex | expansion | product | Y_family | none
    int prop_case = 0;                // polygon case 1..3 or 3-dimensional case 1..7
    std::vector<int> matching_cases;  // every case whose statement holds
    std::vector<int> asymmetric;
    std::vector<int> base;            // base (or base-type) facets when applicable
    Vec gamma;
    bool essential = false;
    std::optional<YNormalization> y;
    std::string description;
};

namespace detail {

inline bool is_class(const EquivClasses& ec, Mask m) {
    for (const auto& I : ec.classes)
        if (mask_of(I) == m) return true;
    return false;
}

inline std::vector<int> polygon_cases(const Polytope& p, const EquivClasses& ec, const Vec& gamma) {
    const Mask A = asymmetric_mask(gamma);
    std::vector<int> cases;
    if (p.N == 3 && popcount(A) >= 2) cases.push_back(1);
    if (p.N == 4 && popcount(A) == 2 && p.face_empty(A) && is_class(ec, A)) cases.push_back(2);
    if (p.N == 4 && A == p.all() && product_recognition(p, ec).kind == ProductKind::Exact) cases.push_back(3);
    return cases;
}

inline std::vector<int> solid_cases(const Polytope& p, const EquivClasses& ec, const Vec& gamma) {
    const Mask A = asymmetric_mask(gamma);
    std::vector<int> cases;
    const bool A_class = is_class(ec, A);
    // two asymmetric facets only need to be equivalent, not a whole class
    bool A_pair = false;
    if (popcount(A) == 2) {
        auto idx = indices_of(A);
        A_pair = ec.class_of(idx[0]) == ec.class_of(idx[1]);
    }
    if (A_pair && p.face_empty(A)) cases.push_back(1);
    if (A_pair && !p.face_empty(A)) cases.push_back(2);
    if (p.N == 4) cases.push_back(3);
    if (popcount(A) == 3 && A_class && p.face_empty(A) && p.N == 5) cases.push_back(4);
    for (const auto& I : ec.classes) {
        if (I.size() != 2 || !p.face_empty(mask_of(I)) || p.N != 5) continue;
        const bool s0 = gamma[I[0]] == 0, s1 = gamma[I[1]] == 0;
        if (s0 == s1) {
            cases.push_back(5);
            break;
        }
    }
    if (p.N == 6) {
        // fiber pair with opposite conormals; the remaining four pair up modulo the fiber line
        for (int a = 0; a < p.N; ++a)
            for (int b = a + 1; b < p.N; ++b) {
                if (p.eta[a] + p.eta[b] != zeros(p.n)) continue;
                const Mask base = p.all() & ~(bit(a) | bit(b));
                if (A != base) continue;
                auto rest = indices_of(base);
                bool paired = true;
                for (int x : rest) {
                    int partners = 0;
                    for (int y : rest) {
                        if (y == x || !p.face_empty(bit(x) | bit(y))) continue;
                        std::vector<Vec> span = {p.eta[a], p.eta[x] + p.eta[y]};
                        if (rank_of_vectors(span) == 1) ++partners;
                    }
                    if (partners != 1) paired = false;
                }
                if (paired && std::find(cases.begin(), cases.end(), 6) == cases.end()) cases.push_back(6);
            }
        auto pv = product_recognition(p, ec);
        if (pv.kind == ProductKind::Exact && pv.factors == std::vector<int>{1, 1, 1} && A == p.all()) cases.push_back(7);
    }
    return cases;
}

}  // namespace detail

inline Classification classify_low_dim(const Polytope& p, const VolumeData& vd, const EquivClasses& ec, const Vec& H) {
    if (p.n > 3 || p.n < 1) throw Error(ErrorKind::DimensionUnsupported, "classification needs dim <= 3");
    if (p.n == 3 && !(p.lattice && is_smooth(p))) throw Error(ErrorKind::NotSmooth, "3-dimensional input must be smooth");
    auto g = is_mass_linear(p, vd, H);
    if (!g) throw Error(ErrorKind::NotMassLinear, "H is not mass linear");
    if (is_zero(H)) throw Error(ErrorKind::InvalidArgument, "H must be nonzero");
    Classification c;
    c.gamma = *g;
    c.asymmetric = symmetric_partition(*g).asymmetric;
    c.essential = !gamma_is_inessential(ec, *g);
    if (p.n == 1) {
        c.tag = "product";
        c.prop_case = 0;
        c.description = "interval";
        return c;
    }
    if (p.n == 2) {
        c.matching_cases = detail::polygon_cases(p, ec, *g);
        if (c.matching_cases.empty()) {
            c.tag = "none";
            c.description = "no polygon case applies";
            return c;
        }
        c.prop_case = c.matching_cases.front();
        static const char* tags[] = {"", "triangle", "bundle_over_simplex", "product"};
        static const char* text[] = {"", "triangle, at most one symmetric edge",
                                     "Delta_1 bundle over Delta_1, base facets are the asymmetric edges",
                                     "Delta_1 x Delta_1, every edge asymmetric"};
        c.tag = tags[c.prop_case];
        c.description = text[c.prop_case];
        if (c.prop_case == 2) c.base = c.asymmetric;
        return c;
    }
    c.matching_cases = detail::solid_cases(p, ec, *g);
    if (c.matching_cases.empty()) {
        c.tag = "none";
        c.description = "no case applies";
        return c;
    }
    c.prop_case = c.matching_cases.front();
    static const char* tags[] = {"", "bundle_over_simplex", "expansion", "product", "bundle_over_simplex",
                                 "bundle_over_simplex", "bundle_over_simplex", "product"};
    static const char* text[] = {"",
                                 "bundle over Delta_1, base facets are the asymmetric facets",
                                 "1-fold expansion, base-type facets are the asymmetric facets",
                                 "simplex Delta_3",
                                 "Delta_1 bundle over Delta_2, base facets are the asymmetric facets",
                                 "Delta_2 bundle over Delta_1, base facets both symmetric or both asymmetric",
                                 "Delta_1 bundle over Delta_1 x Delta_1, base facets are the asymmetric facets",
                                 "Delta_1 x Delta_1 x Delta_1, every facet asymmetric"};
    c.tag = tags[c.prop_case];
    c.description = text[c.prop_case];
    if (c.prop_case == 1 || c.prop_case == 2 || c.prop_case == 4 || c.prop_case == 6) c.base = c.asymmetric;
    if (c.prop_case == 5)
        for (const auto& I : ec.classes)
            if (I.size() == 2 && p.face_empty(mask_of(I))) c.base = I;
    if (c.essential) {
        c.y = normalize_to_y(p);
        if (c.y) {
            c.tag = "Y_family";
            c.description = "Delta_2 bundle over Delta_1 normalized to Y_a";
        }
    }
    return c;
}

inline Classification classify_low_dim(const Polytope& p, const Vec& H) {
    auto vd = volume_moments(p);
    return classify_low_dim(p, vd, equivalence_classes(p), H);
}

// Shape of a polygon independent of H: triangle, trapezoid-type bundle, parallelogram, or none.
inline std::string polygon_shape(const Polytope& p, const EquivClasses& ec) {
    if (p.n != 2) return "none";
    if (p.N == 3) return "triangle";
    if (p.N != 4) return "none";
    if (product_recognition(p, ec).kind == ProductKind::Exact) return "product";
    for (const auto& I : ec.classes)
        if (I.size() == 2 && p.face_empty(mask_of(I))) return "bundle_over_simplex";
    return "none";
}

struct TwoAsymmetric {
    bool applies = false;     // exactly two asymmetric facets
    bool equivalent = false;  // they form an equivalence class of their own
    bool bundle = false;      // disjoint: bundle over Delta_1; else expansion
};

inline TwoAsymmetric two_asymmetric_dispatch(const Polytope& p, const EquivClasses& ec, const Vec& gamma) {
    TwoAsymmetric t;
    const Mask A = asymmetric_mask(gamma);
    if (popcount(A) != 2) return t;
    t.applies = true;
    auto idx = indices_of(A);
    t.equivalent = ec.class_of(idx[0]) == ec.class_of(idx[1]);
    t.bundle = p.face_empty(A);
    return t;
}

struct StructureReport {
    FacetFlags flags;
    std::vector<ClassStructure> classes;
    ProductVerdict product;
    std::optional<Classification> classification;
};

inline StructureReport structure_report(const Polytope& p, const VolumeData& vd, const EquivClasses& ec) {
    StructureReport r;
    r.flags = facet_predicates(p, vd.volume);
    for (const auto& I : ec.classes)
        if (I.size() >= 2) r.classes.push_back(detect_class_structure(p, I));
    r.product = product_recognition(p, ec);
    return r;
}

// Inessential reduction followed, if still needed, by the bundle split over a
// class with empty intersection. Returns H~ with at least one symmetric facet when possible.
struct SymmetricReduction {
    Vec H_tilde;
    Vec H_prime;
    Vec gamma_tilde;
    bool has_symmetric = false;
    bool ok = true;
    std::string failure;
};

inline SymmetricReduction symmetric_facet_reduction(const Polytope& p, const VolumeData& vd, const EquivClasses& ec,
                                                    const Vec& H) {
    SymmetricReduction out;
    auto g = is_mass_linear(p, vd, H);
    if (!g) throw Error(ErrorKind::NotMassLinear, "H is not mass linear");
    out.H_tilde = H;
    out.H_prime = zeros(p.n);
    out.gamma_tilde = *g;
    auto has_sym = [&](const Vec& gamma) {
        for (const auto& x : gamma)
            if (x == 0) return true;
        return false;
    };
    if ((out.has_symmetric = has_sym(*g))) return out;
    auto red = inessential_reduction(p, vd, H);
    if (!red.ok) {
        out.ok = false;
        out.failure = red.failure;
        return out;
    }
    out.H_tilde = red.H_tilde;
    out.H_prime = red.H_prime;
    out.gamma_tilde = red.gamma_tilde;
    if ((out.has_symmetric = has_sym(out.gamma_tilde))) return out;
    for (const auto& I : ec.classes) {
        if (I.size() < 2 || !p.face_empty(mask_of(I))) continue;
        auto split = bundle_decomposition(p, I, out.H_tilde);
        if (!split) continue;
        auto gt = is_mass_linear(p, vd, split->first);
        if (!gt) continue;
        out.H_tilde = split->first;
        out.H_prime = out.H_prime + split->second;
        out.gamma_tilde = *gt;
        out.has_symmetric = has_sym(*gt);
        return out;
    }
    out.ok = false;
    out.failure = "no class with empty intersection";
    return out;
}

}  // namespace mlpoly
