#pragma once

// Mass linear functions: H with <H, c(kappa)> = sum gamma_i kappa_i on the chamber.

#include "mlpoly/volume.hpp"

#include <set>

namespace mlpoly {

struct MassLinearPair {
    Vec H;
    Vec gamma;
};

struct MassLinearSpace {
    std::vector<MassLinearPair> basis;
    int dimension() const { return static_cast<int>(basis.size()); }
};

namespace detail {

// Columns are the coefficient vectors of the given polynomials over their joint support.
inline Mat coefficient_matrix(const std::vector<KPoly>& polys) {
    std::map<KPoly::Exp, std::size_t> rows;
    for (const auto& p : polys)
        for (const auto& [e, c] : p.terms()) rows.try_emplace(e, 0);
    std::size_t r = 0;
    for (auto& [e, idx] : rows) idx = r++;
    Mat m(rows.size(), zeros(polys.size()));
    for (std::size_t j = 0; j < polys.size(); ++j)
        for (const auto& [e, c] : polys[j].terms()) m[rows[e]][j] = c;
    return m;
}

inline Vec combine(const std::vector<Vec>& eta, const Vec& beta) {
    Vec H = zeros(eta[0].size());
    for (std::size_t i = 0; i < eta.size(); ++i)
        if (beta[i] != 0) H = H + beta[i] * eta[i];
    return H;
}

}  // namespace detail

inline Vec combine_conormals(const Polytope& p, const Vec& beta) { return detail::combine(p.eta, beta); }

inline MassLinearSpace mass_linear_space(const Polytope& p, const VolumeData& vd) {
    std::vector<KPoly> cols;
    for (int i = 0; i < p.N; ++i) {
        KPoly f = moment_poly(vd, p.eta[i]);
        f -= KPoly::variable(p.N, i) * vd.volume;
        cols.push_back(std::move(f));
    }
    Mat m = detail::coefficient_matrix(cols);
    MassLinearSpace out;
    for (auto& beta : kernel(m, p.N)) out.basis.push_back({combine_conormals(p, beta), beta});
    return out;
}

inline MassLinearSpace mass_linear_space(const Polytope& p) { return mass_linear_space(p, volume_moments(p)); }

// gamma with <H, mu> = (sum gamma_i kappa_i) V, if any.
inline std::optional<Vec> is_mass_linear(const Polytope& p, const VolumeData& vd, const Vec& H) {
    if (static_cast<int>(H.size()) != p.n) throw Error(ErrorKind::InvalidArgument, "H has wrong dimension");
    std::vector<KPoly> polys;
    for (int i = 0; i < p.N; ++i) polys.push_back(KPoly::variable(p.N, i) * vd.volume);
    polys.push_back(moment_poly(vd, H));
    Mat m = detail::coefficient_matrix(polys);
    Mat a(m.size());
    Vec b(m.size());
    for (std::size_t r = 0; r < m.size(); ++r) {
        a[r] = Vec(m[r].begin(), m[r].begin() + p.N);
        b[r] = m[r][p.N];
    }
    auto gamma = solve(a, b, p.N);
    if (!gamma) return std::nullopt;
    if (combine_conormals(p, *gamma) != H)
        throw Error(ErrorKind::InvalidArgument, "coefficients do not reproduce H");
    return gamma;
}

inline std::optional<Vec> is_mass_linear(const Polytope& p, const Vec& H) {
    return is_mass_linear(p, volume_moments(p), H);
}

struct SymmetryPartition {
    std::vector<int> symmetric;
    std::vector<int> asymmetric;
};

inline SymmetryPartition symmetric_partition(const Vec& gamma) {
    SymmetryPartition s;
    for (std::size_t i = 0; i < gamma.size(); ++i)
        (gamma[i] == 0 ? s.symmetric : s.asymmetric).push_back(static_cast<int>(i));
    return s;
}

inline SymmetryPartition symmetric_partition(const Polytope& p, const VolumeData& vd, const Vec& H) {
    auto g = is_mass_linear(p, vd, H);
    if (!g) throw Error(ErrorKind::NotMassLinear, "H is not mass linear");
    return symmetric_partition(*g);
}

inline Mask asymmetric_mask(const Vec& gamma) {
    Mask m = 0;
    for (std::size_t i = 0; i < gamma.size(); ++i)
        if (gamma[i] != 0) m |= bit(static_cast<int>(i));
    return m;
}

struct SymmetricFaceRestriction {
    Polytope face;
    std::vector<int> ambient;  // face facet -> ambient facet
    Vec H;                     // restricted function in face coordinates
    Vec gamma;                 // face coefficients in face support numbers
    bool matches = false;      // face coefficients agree with the ambient ones
};

inline SymmetricFaceRestriction restrict_to_symmetric_face(const Polytope& p, const VolumeData& vd, const Vec& H,
                                                           const std::vector<int>& I) {
    auto gamma = is_mass_linear(p, vd, H);
    if (!gamma) throw Error(ErrorKind::NotMassLinear, "H is not mass linear");
    for (int i : I)
        if ((*gamma)[i] != 0)
            throw Error(ErrorKind::AsymmetricFaceRequested, "facet " + std::to_string(i) + " is asymmetric");
    if (p.face_empty(mask_of(I))) throw Error(ErrorKind::EmptyFace, "the requested face is empty");
    SymmetricFaceRestriction out;
    Polytope cur = p;
    Vec h = H;
    std::vector<int> amb(p.N);
    Vec scale(p.N, Rat(1));  // face kappa_t carries scale[t] * kappa_{amb[t]}
    for (int j = 0; j < p.N; ++j) amb[j] = j;
    for (int i : I) {
        int local = -1;
        for (int t = 0; t < cur.N; ++t)
            if (amb[t] == i) local = t;
        if (cur.n == 1) throw Error(ErrorKind::DimensionUnsupported, "restriction to a vertex");
        FacetSubpolytope fs = facet_subpolytope(cur, local);
        Vec hn = zeros(cur.n - 1);
        for (int c = 0; c < cur.n - 1; ++c)
            for (int r = 0; r < cur.n; ++r) hn[c] += fs.B[r][c] * h[r];
        std::vector<int> na;
        Vec ns;
        for (std::size_t t = 0; t < fs.ambient.size(); ++t) {
            na.push_back(amb[fs.ambient[t]]);
            ns.push_back(scale[fs.ambient[t]] * fs.face.input_scale[t]);
        }
        cur = std::move(fs.face);
        h = std::move(hn);
        amb = std::move(na);
        scale = std::move(ns);
    }
    auto fg = is_mass_linear(cur, h);
    if (!fg) throw Error(ErrorKind::NotMassLinear, "restriction is not mass linear");
    out.matches = true;
    std::set<int> met(amb.begin(), amb.end());
    for (int j = 0; j < p.N; ++j)
        if (!met.count(j) && (*gamma)[j] != 0) out.matches = false;
    for (std::size_t t = 0; t < amb.size(); ++t)
        if ((*fg)[t] * scale[t] != (*gamma)[amb[t]]) out.matches = false;
    out.face = std::move(cur);
    out.ambient = std::move(amb);
    out.H = std::move(h);
    out.gamma = std::move(*fg);
    return out;
}

inline SymmetricFaceRestriction restrict_to_symmetric_face(const Polytope& p, const Vec& H, const std::vector<int>& I) {
    return restrict_to_symmetric_face(p, volume_moments(p), H, I);
}

}  // namespace mlpoly
