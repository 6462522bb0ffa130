#pragma once

// Simple polytopes {x : <eta_i, x> <= kappa_i} with exact face lattices.

#include "mlpoly/errors.hpp"
#include "mlpoly/intlinalg.hpp"
#include "mlpoly/linalg.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>

namespace mlpoly {

using Mask = std::uint64_t;

inline Mask bit(int i) { return Mask(1) << i; }

inline Mask mask_of(const std::vector<int>& idx) {
    Mask m = 0;
    for (int i : idx) m |= bit(i);
    return m;
}

inline std::vector<int> indices_of(Mask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

inline int popcount(Mask m) { return std::popcount(m); }

// Calls f(mask) for every k-subset of {0..N-1}, in lexicographic order of index lists.
template <class F>
void for_each_subset(int N, int k, F&& f) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k > N) return;
    for (;;) {
        f(mask_of(idx));
        int p = k - 1;
        while (p >= 0 && idx[p] == N - k + p) --p;
        if (p < 0) return;
        ++idx[p];
        for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
    }
}

struct Edge {
    Mask facets;  // the n-1 facets containing the edge
    int a, b;     // endpoint vertex positions
};

struct FaceLattice {
    std::vector<Mask> vertices;  // sorted lexicographically by index list
    std::vector<Vec> coords;     // at the reference support numbers
    std::vector<Mat> inv;        // inv[v] * kappa_I = vertex, I = indices_of(vertices[v]) in order
    std::vector<Edge> edges;
    std::vector<std::vector<int>> neighbors;

    bool face_empty(Mask I) const {
        for (Mask v : vertices)
            if ((v & I) == I) return false;
        return true;
    }

    // First (or last) vertex in lexicographic order whose index set contains I.
    int base_vertex(Mask I, bool largest = false) const {
        const int nv = static_cast<int>(vertices.size());
        if (!largest) {
            for (int v = 0; v < nv; ++v)
                if ((vertices[v] & I) == I) return v;
        } else {
            for (int v = nv - 1; v >= 0; --v)
                if ((vertices[v] & I) == I) return v;
        }
        return -1;
    }

    int vertex_index(Mask I) const {
        for (std::size_t v = 0; v < vertices.size(); ++v)
            if (vertices[v] == I) return static_cast<int>(v);
        return -1;
    }
};

struct Polytope {
    int n = 0;
    int N = 0;
    std::vector<Vec> eta;  // primitive integer conormals
    Vec kappa;
    bool lattice = false;
    Vec input_scale;  // eta = input_scale[i] * (eta as supplied); kappa scaled alike
    FaceLattice faces;

    bool face_empty(Mask I) const { return faces.face_empty(I); }
    Mask all() const { return N == 64 ? ~Mask(0) : (bit(N) - 1); }
};

namespace detail {

inline bool lex_less(Mask a, Mask b) { return indices_of(a) < indices_of(b); }

inline Mat rows_of(const std::vector<Vec>& eta, const std::vector<int>& idx) {
    Mat m;
    for (int i : idx) m.push_back(eta[i]);
    return m;
}

inline void check_bounded(const std::vector<Vec>& eta, int n) {
    const int N = static_cast<int>(eta.size());
    if (rank_of_vectors(eta) < n) throw Error(ErrorKind::Unbounded, "conormals do not span");
    bool unbounded = false;
    for_each_subset(N, n - 1, [&](Mask s) {
        if (unbounded) return;
        Mat m = rows_of(eta, indices_of(s));
        auto ker = kernel(m, n);
        if (ker.size() != 1) return;
        for (int sign : {1, -1}) {
            bool ok = true;
            for (int i = 0; i < N && ok; ++i)
                if (Rat(sign) * dot(eta[i], ker[0]) > 0) ok = false;
            if (ok) unbounded = true;
        }
    });
    if (unbounded) throw Error(ErrorKind::Unbounded, "conormals do not positively span");
}

}  // namespace detail

// Vertices and edges of the polytope with the given (primitive) data.
inline FaceLattice enumerate_vertices(const std::vector<Vec>& eta, const Vec& kappa, int n) {
    const int N = static_cast<int>(eta.size());
    FaceLattice fl;
    std::vector<std::pair<Mask, std::pair<Vec, Mat>>> found;
    for_each_subset(N, n, [&](Mask s) {
        auto idx = indices_of(s);
        auto inv = inverse(detail::rows_of(eta, idx));
        if (!inv) return;
        Vec kI;
        for (int i : idx) kI.push_back(kappa[i]);
        Vec x = mat_vec(*inv, kI);
        Mask tight = 0;
        for (int i = 0; i < N; ++i) {
            Rat h = dot(eta[i], x);
            if (h > kappa[i]) return;
            if (h == kappa[i]) tight |= bit(i);
        }
        if (popcount(tight) > n)
            throw Error(ErrorKind::NotSimple, "a vertex lies on more than n facets");
        found.push_back({s, {std::move(x), std::move(*inv)}});
    });
    if (found.empty()) throw Error(ErrorKind::EmptyPolytope, "no vertices");
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return detail::lex_less(a.first, b.first); });
    for (auto& [m, data] : found) {
        fl.vertices.push_back(m);
        fl.coords.push_back(std::move(data.first));
        fl.inv.push_back(std::move(data.second));
    }
    std::map<Mask, std::vector<int>> by_edge;
    for (std::size_t v = 0; v < fl.vertices.size(); ++v)
        for (int i : indices_of(fl.vertices[v])) by_edge[fl.vertices[v] & ~bit(i)].push_back(static_cast<int>(v));
    fl.neighbors.assign(fl.vertices.size(), {});
    for (auto& [e, vs] : by_edge) {
        if (vs.size() != 2) throw Error(ErrorKind::Unbounded, "edge with a single endpoint");
        fl.edges.push_back({e, vs[0], vs[1]});
        fl.neighbors[vs[0]].push_back(vs[1]);
        fl.neighbors[vs[1]].push_back(vs[0]);
    }
    for (auto& nb : fl.neighbors) std::sort(nb.begin(), nb.end());
    return fl;
}

// Builds and checks a polytope. Conormals are primitivized; in lattice mode they
// must already be primitive integer vectors.
inline Polytope validate(std::vector<Vec> eta, Vec kappa, bool lattice) {
    const int N = static_cast<int>(eta.size());
    if (N == 0) throw Error(ErrorKind::InvalidArgument, "no facets");
    const int n = static_cast<int>(eta[0].size());
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
    if (N > 63) throw Error(ErrorKind::InvalidArgument, "at most 63 facets supported");
    if (static_cast<int>(kappa.size()) != N)
        throw Error(ErrorKind::InvalidArgument, "support vector length differs from facet count");
    if (N < n + 1) throw Error(ErrorKind::Unbounded, "fewer than n+1 facets");
    Polytope p;
    p.n = n;
    p.N = N;
    p.lattice = lattice;
    for (int i = 0; i < N; ++i) {
        if (static_cast<int>(eta[i].size()) != n)
            throw Error(ErrorKind::InvalidArgument, "conormal dimension mismatch");
        if (is_zero(eta[i])) throw Error(ErrorKind::InvalidArgument, "zero conormal");
        if (lattice && !is_primitive_integral(eta[i]))
            throw Error(ErrorKind::InvalidArgument,
                        "lattice mode requires primitive integer conormals (facet " + std::to_string(i) + ")");
        Rat s = primitive_scale(eta[i]);
        eta[i] = s * eta[i];
        kappa[i] *= s;
        p.input_scale.push_back(s);
    }
    detail::check_bounded(eta, n);
    p.faces = enumerate_vertices(eta, kappa, n);
    Mask covered = 0;
    for (Mask v : p.faces.vertices) covered |= v;
    for (int i = 0; i < N; ++i)
        if (!(covered & bit(i)))
            throw Error(ErrorKind::EmptyFacet, "facet " + std::to_string(i) + " is empty");
    p.eta = std::move(eta);
    p.kappa = std::move(kappa);
    return p;
}

// Same conormals, new support numbers; validated from scratch.
inline Polytope with_support(const Polytope& p, const Vec& kappa) { return validate(p.eta, kappa, p.lattice); }

inline bool is_smooth(const Polytope& p) {
    for (Mask v : p.faces.vertices) {
        Rat d = det(detail::rows_of(p.eta, indices_of(v)));
        if (d != 1 && d != -1) return false;
    }
    return true;
}

inline Vec vertex_at(const Polytope& p, int v, const Vec& kappa) {
    Vec kI;
    for (int i : indices_of(p.faces.vertices[v])) kI.push_back(kappa[i]);
    return mat_vec(p.faces.inv[v], kI);
}

// True iff every vertex index set stays a nondegenerate, strictly feasible vertex.
// An n-regular connected vertex graph then leaves no room for new vertices.
inline bool chamber_contains(const Polytope& p, const Vec& kappa) {
    if (static_cast<int>(kappa.size()) != p.N) return false;
    for (std::size_t v = 0; v < p.faces.vertices.size(); ++v) {
        Vec x = vertex_at(p, static_cast<int>(v), kappa);
        const Mask tight = p.faces.vertices[v];
        for (int i = 0; i < p.N; ++i) {
            if (tight & bit(i)) continue;
            if (dot(p.eta[i], x) >= kappa[i]) return false;
        }
    }
    return true;
}

// Smallest slack of a non-tight inequality over all vertices.
inline Rat min_slack(const Polytope& p) {
    std::optional<Rat> best;
    for (std::size_t v = 0; v < p.faces.vertices.size(); ++v)
        for (int i = 0; i < p.N; ++i) {
            if (p.faces.vertices[v] & bit(i)) continue;
            Rat s = p.kappa[i] - dot(p.eta[i], p.faces.coords[v]);
            if (!best || s < *best) best = s;
        }
    return best ? *best : Rat(1);
}

struct FacetSubpolytope {
    Polytope face;
    std::vector<int> ambient;  // face facet t is the intersection with ambient facet ambient[t]
    Mat subst;                 // face kappa = subst * ambient kappa
    Vec w;                     // <eta_i, w> = 1
    Mat B;                     // n x (n-1); points of the facet are kappa_i w + B y
};

// The facet F_i as an (n-1)-polytope in lattice-compatible coordinates.
inline FacetSubpolytope facet_subpolytope(const Polytope& p, int i) {
    if (i < 0 || i >= p.N) throw Error(ErrorKind::InvalidArgument, "facet index out of range");
    if (p.n < 2) throw Error(ErrorKind::DimensionUnsupported, "facet of an interval is a point");
    IMat U;
    try {
        U = unimodular_completion(to_ivec(p.eta[i]));
    } catch (const std::invalid_argument&) {
        throw Error(ErrorKind::NoLatticeSection, "conormal not primitive");
    }
    const int n = p.n;
    FacetSubpolytope fs;
    fs.w = zeros(n);
    fs.B.assign(n, zeros(n - 1));
    for (int r = 0; r < n; ++r) {
        fs.w[r] = Rat(U[r][0]);
        for (int c = 1; c < n; ++c) fs.B[r][c - 1] = Rat(U[r][c]);
    }
    std::vector<Vec> eta_f;
    Vec kappa_f;
    Mat raw_subst;
    for (int j = 0; j < p.N; ++j) {
        if (j == i || p.face_empty(bit(i) | bit(j))) continue;
        Vec e = zeros(n - 1);
        for (int c = 0; c < n - 1; ++c)
            for (int r = 0; r < n; ++r) e[c] += fs.B[r][c] * p.eta[j][r];
        Rat ew = dot(p.eta[j], fs.w);
        Vec row = zeros(p.N);
        row[j] = 1;
        row[i] -= ew;
        eta_f.push_back(e);
        kappa_f.push_back(dot(row, p.kappa));
        raw_subst.push_back(row);
        fs.ambient.push_back(j);
    }
    fs.face = validate(eta_f, kappa_f, false);
    bool primitive = true;
    for (std::size_t t = 0; t < raw_subst.size(); ++t) {
        const Rat& s = fs.face.input_scale[t];
        if (s != 1) primitive = false;
        fs.subst.push_back(s * raw_subst[t]);
    }
    fs.face.lattice = p.lattice && primitive;
    return fs;
}

// Facets meeting facet i (excluding i).
inline std::vector<int> neighbors_of_facet(const Polytope& p, int i) {
    std::vector<int> out;
    for (int j = 0; j < p.N; ++j)
        if (j != i && !p.face_empty(bit(i) | bit(j))) out.push_back(j);
    return out;
}

// Meets every other facet.
inline bool is_pervasive(const Polytope& p, int i) {
    return static_cast<int>(neighbors_of_facet(p, i).size()) == p.N - 1;
}

}  // namespace mlpoly
