#pragma once

// Volume and first moments as polynomials in the support numbers.
//
// The polytope is triangulated by pulling: every face J is coned from its base
// vertex b(J) over the faces J+i not containing b(J). In the slack coordinates
// y_k = kappa_{i_k} - <eta_{i_k}, x> of a flag J_1 < ... < J_n the simplex matrix
// is triangular, so each simplex volume is a product of linear heights
// h_i(b) = kappa_i - <eta_i, v_b(kappa)> divided by n! |det A_{J_n}|.

#include "mlpoly/kpoly.hpp"
#include "mlpoly/polytope.hpp"

#include <unordered_map>

namespace mlpoly {

struct VertexAffineMap {
    std::vector<int> facets;  // I
    Mat M;                    // v(kappa) = M * kappa_I
};

inline std::vector<VertexAffineMap> vertex_maps(const Polytope& p) {
    std::vector<VertexAffineMap> out;
    for (std::size_t v = 0; v < p.faces.vertices.size(); ++v)
        out.push_back({indices_of(p.faces.vertices[v]), p.faces.inv[v]});
    return out;
}

enum class BaseRule { Smallest, Largest };

struct Triangulation {
    std::vector<std::vector<int>> simplices;  // n+1 vertex positions, base vertices of the flag
    std::vector<int> signs;
};

namespace detail {

// Coordinate r of vertex v as a linear form in kappa (length N).
inline Vec vertex_coord_form(const Polytope& p, int v, int r) {
    Vec f = zeros(p.N);
    auto idx = indices_of(p.faces.vertices[v]);
    for (std::size_t s = 0; s < idx.size(); ++s) f[idx[s]] += p.faces.inv[v][r][s];
    return f;
}

inline Vec height_form(const Polytope& p, int v, int i) {
    Vec f = zeros(p.N);
    f[i] = 1;
    for (int r = 0; r < p.n; ++r) {
        if (p.eta[i][r] == 0) continue;
        f = f - p.eta[i][r] * vertex_coord_form(p, v, r);
    }
    return f;
}

class Pulling {
public:
    Pulling(const Polytope& p, BaseRule rule, bool moments) : p_(p), largest_(rule == BaseRule::Largest), moments_(moments) {
        if (p.N > KPoly::kMaxVars) throw Error(ErrorKind::InvalidArgument, "too many facets for polynomial calculus");
    }

    struct Entry {
        KPoly S;
        std::vector<KPoly> T;
    };

    const Entry& get(Mask J) {
        auto it = memo_.find(J);
        if (it != memo_.end()) return it->second;
        Entry e;
        e.S = KPoly(p_.N);
        if (moments_) e.T.assign(p_.n, KPoly(p_.N));
        if (popcount(J) == p_.n) {
            const int v = p_.faces.vertex_index(J);
            const Rat d = abs(det(rows_of(p_.eta, indices_of(J))));
            e.S = KPoly::constant(p_.N, Rat(1) / d);
            if (moments_)
                for (int r = 0; r < p_.n; ++r) e.T[r] = KPoly::linear((Rat(1) / d) * vertex_coord_form(p_, v, r));
        } else {
            const int b = p_.faces.base_vertex(J, largest_);
            const Mask bset = p_.faces.vertices[b];
            std::vector<KPoly> coord;
            if (moments_)
                for (int r = 0; r < p_.n; ++r) coord.push_back(KPoly::linear(vertex_coord_form(p_, b, r)));
            for (int i = 0; i < p_.N; ++i) {
                const Mask Ji = J | bit(i);
                if ((J & bit(i)) || (bset & bit(i)) || p_.face_empty(Ji)) continue;
                Vec hf = height_form(p_, b, i);
                if (dot(hf, p_.kappa) <= 0) throw Error(ErrorKind::NotSimple, "nonpositive pulling height");
                KPoly h = KPoly::linear(hf);
                const Entry& child = get(Ji);
                e.S.add_product(child.S, h);
                if (moments_)
                    for (int r = 0; r < p_.n; ++r) {
                        KPoly inner = child.T[r];
                        inner.add_product(child.S, coord[r]);
                        e.T[r].add_product(inner, h);
                    }
            }
        }
        return memo_.emplace(J, std::move(e)).first->second;
    }

    void chains(Mask J, std::vector<int>& flag, Triangulation& out) {
        if (popcount(J) == p_.n) {
            flag.push_back(p_.faces.vertex_index(J));
            out.simplices.push_back(flag);
            out.signs.push_back(1);
            flag.pop_back();
            return;
        }
        const int b = p_.faces.base_vertex(J, largest_);
        flag.push_back(b);
        for (int i = 0; i < p_.N; ++i) {
            const Mask Ji = J | bit(i);
            if ((J & bit(i)) || (p_.faces.vertices[b] & bit(i)) || p_.face_empty(Ji)) continue;
            chains(Ji, flag, out);
        }
        flag.pop_back();
    }

private:
    const Polytope& p_;
    bool largest_;
    bool moments_;
    std::unordered_map<Mask, Entry> memo_;
};

inline Rat factorial(int n) {
    Rat f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace detail

inline Triangulation triangulate(const Polytope& p, BaseRule rule = BaseRule::Smallest) {
    detail::Pulling pl(p, rule, false);
    Triangulation t;
    std::vector<int> flag;
    pl.chains(0, flag, t);
    return t;
}

struct VolumeData {
    KPoly volume;
    std::vector<KPoly> moments;  // against e_1..e_n
};

inline VolumeData volume_moments(const Polytope& p, BaseRule rule = BaseRule::Smallest) {
    detail::Pulling pl(p, rule, true);
    const auto& top = pl.get(0);
    VolumeData out;
    const Rat nf = detail::factorial(p.n);
    out.volume = top.S * (Rat(1) / nf);
    for (const auto& t : top.T) out.moments.push_back(t * (Rat(1) / (nf * (p.n + 1))));
    if (out.volume.degree() > p.n) throw Error(ErrorKind::InvalidArgument, "volume degree bound violated");
    for (const auto& m : out.moments)
        if (m.degree() > p.n + 1) throw Error(ErrorKind::InvalidArgument, "moment degree bound violated");
    return out;
}

inline KPoly volume_poly(const Polytope& p, BaseRule rule = BaseRule::Smallest) {
    detail::Pulling pl(p, rule, false);
    KPoly v = pl.get(0).S * (Rat(1) / detail::factorial(p.n));
    if (v.degree() > p.n) throw Error(ErrorKind::InvalidArgument, "volume degree bound violated");
    return v;
}

inline KPoly moment_poly(const VolumeData& vd, const Vec& u) {
    KPoly r(vd.volume.nvars());
    for (std::size_t j = 0; j < u.size(); ++j)
        if (u[j] != 0) r += vd.moments[j] * u[j];
    return r;
}

inline KPoly moment_poly(const Polytope& p, const Vec& u) { return moment_poly(volume_moments(p), u); }

inline Vec center_of_mass(const Polytope& p, const VolumeData& vd, const Vec& kappa) {
    if (!chamber_contains(p, kappa)) throw Error(ErrorKind::OutsideChamber, "support numbers outside the chamber");
    const Rat V = vd.volume.eval(kappa);
    Vec c;
    for (const auto& m : vd.moments) c.push_back(m.eval(kappa) / V);
    return c;
}

inline Vec center_of_mass(const Polytope& p, const Vec& kappa) { return center_of_mass(p, volume_moments(p), kappa); }

struct DerivativeIdentity {
    KPoly derivative;
    std::optional<KPoly> face_volume;  // in the ambient kappa; absent when the face is empty
    Rat K = 0;                         // derivative = K * face_volume
    Rat predicted_K = 0;               // product of primitivization factors along the facet chain
    bool holds = false;
};

// d_{i1}...d_{ik} V against the volume of F_{i1...ik} computed by iterated facet restriction.
inline DerivativeIdentity derivative_identity(const Polytope& p, const KPoly& V, const std::vector<int>& idx) {
    DerivativeIdentity out;
    out.derivative = V;
    for (int i : idx) out.derivative = out.derivative.derivative(i);
    const Mask I = mask_of(idx);
    if (popcount(I) != static_cast<int>(idx.size())) throw Error(ErrorKind::InvalidArgument, "indices must be distinct");
    if (p.face_empty(I)) {
        out.holds = out.derivative.is_zero();
        return out;
    }
    // Walk down the facet chain, tracking the map from face kappa to ambient kappa.
    const Polytope* cur = &p;
    std::optional<FacetSubpolytope> holder;
    Mat subst;  // current face kappa = subst * ambient kappa
    for (int j = 0; j < p.N; ++j) subst.push_back(unit(p.N, j));
    std::vector<int> to_ambient(p.N);
    for (int j = 0; j < p.N; ++j) to_ambient[j] = j;
    Rat K = 1;
    KPoly face_vol(p.N);
    bool point = false;
    for (std::size_t step = 0; step < idx.size(); ++step) {
        int local = -1;
        for (int t = 0; t < cur->N; ++t)
            if (to_ambient[t] == idx[step]) local = t;
        if (local < 0) throw Error(ErrorKind::EmptyFace, "facet chain lost a facet");
        if (cur->n == 1) {
            // a vertex of an interval with primitive conormals +-1
            point = true;
            break;
        }
        FacetSubpolytope fs = facet_subpolytope(*cur, local);
        Mat next;
        std::vector<int> next_amb;
        for (std::size_t t = 0; t < fs.ambient.size(); ++t) {
            Vec row = zeros(p.N);
            for (int s = 0; s < cur->N; ++s)
                if (fs.subst[t][s] != 0) row = row + fs.subst[t][s] * subst[s];
            next.push_back(row);
            next_amb.push_back(to_ambient[fs.ambient[t]]);
        }
        // chain rule factor for the next differentiated facet
        if (step + 1 < idx.size())
            for (std::size_t t = 0; t < fs.ambient.size(); ++t)
                if (next_amb[t] == idx[step + 1]) K *= fs.face.input_scale[t];
        subst = std::move(next);
        to_ambient = std::move(next_amb);
        holder.emplace(std::move(fs));
        cur = &holder->face;
    }
    if (point || popcount(I) == p.n) {
        face_vol = KPoly::constant(p.N, 1);
    } else {
        KPoly local_v = volume_poly(*cur);
        face_vol = local_v.substitute(subst, p.N);
    }
    out.face_volume = face_vol;
    out.predicted_K = K;
    // Ratio derivative / face volume, which must be a constant.
    if (!face_vol.is_zero() && !out.derivative.is_zero()) {
        const auto& [e, c] = *face_vol.terms().begin();
        out.K = out.derivative.coefficient(e) / c;
        out.holds = out.K > 0 && out.derivative == face_vol * out.K;
    }
    return out;
}

inline DerivativeIdentity derivative_identity(const Polytope& p, const std::vector<int>& idx) {
    return derivative_identity(p, volume_poly(p), idx);
}

}  // namespace mlpoly
