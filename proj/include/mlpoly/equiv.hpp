#pragma once

// Facet equivalence, reflections exchanging equivalent facets, inessential functions.

#include "mlpoly/masslin.hpp"

#include <random>

namespace mlpoly {

struct EquivalenceWitness {
    Vec xi;                  // <eta_i, xi> = 1, <eta_k, xi> = 0 for k != i, j
    Rat eta_j_xi;            // -1 when the conormals are normalized compatibly
    bool normalized = true;  // <eta_j, xi> == -1
};

// Witness iff span{eta_k : k != i, j} has codimension one.
inline std::optional<EquivalenceWitness> facet_equivalent(const Polytope& p, int i, int j) {
    if (i == j) throw Error(ErrorKind::InvalidArgument, "facet_equivalent needs distinct facets");
    Mat rows;
    Vec rhs;
    for (int k = 0; k < p.N; ++k) {
        if (k == i || k == j) continue;
        rows.push_back(p.eta[k]);
        rhs.push_back(0);
    }
    if (rank(rows) != p.n - 1) return std::nullopt;
    rows.push_back(p.eta[i]);
    rhs.push_back(1);
    auto xi = solve(rows, rhs, p.n);
    if (!xi) return std::nullopt;
    EquivalenceWitness w;
    w.xi = *xi;
    w.eta_j_xi = dot(p.eta[j], w.xi);
    w.normalized = w.eta_j_xi == -1;
    return w;
}

struct EquivClasses {
    std::vector<std::vector<int>> classes;  // sorted, ordered by smallest member
    std::map<std::pair<int, int>, EquivalenceWitness> witnesses;  // i < j
    bool consistent = true;              // rank and class-sum cross-checks
    bool normalization_conflict = false;  // some witness has <eta_j, xi> != -1

    int class_of(int i) const {
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (int k : classes[c])
                if (k == i) return static_cast<int>(c);
        return -1;
    }
};

namespace detail {

// Rank of {eta_k : k not in I}.
inline int complement_rank(const Polytope& p, Mask I) {
    std::vector<Vec> rows;
    for (int k = 0; k < p.N; ++k)
        if (!(I & bit(k))) rows.push_back(p.eta[k]);
    return rank_of_vectors(rows);
}

// Relations sum_{i in I} c_i eta_i in span{eta_k : k not in I}, projected to the c part.
inline std::vector<Vec> class_relations(const Polytope& p, const std::vector<int>& I) {
    std::vector<int> order(I);
    for (int k = 0; k < p.N; ++k)
        if (std::find(I.begin(), I.end(), k) == I.end()) order.push_back(k);
    Mat m(p.n, zeros(order.size()));
    for (std::size_t c = 0; c < order.size(); ++c)
        for (int r = 0; r < p.n; ++r) m[r][c] = p.eta[order[c]][r];
    std::vector<Vec> proj;
    for (auto& v : kernel(m, order.size())) {
        Vec head(v.begin(), v.begin() + I.size());
        if (!is_zero(head)) proj.push_back(head);
    }
    return proj;
}

// The relations form a line (required) of equal coefficients (fails under a normalization conflict).
inline std::pair<bool, bool> class_sum_test(const Polytope& p, const std::vector<int>& I) {
    auto proj = class_relations(p, I);
    if (rank_of_vectors(proj) != 1) return {false, false};
    Mat pm = proj;
    rref(pm);
    for (const auto& x : pm[0])
        if (x != pm[0][0]) return {true, false};
    return {true, true};
}

}  // namespace detail

inline EquivClasses equivalence_classes(const Polytope& p) {
    EquivClasses out;
    std::vector<int> parent(p.N);
    for (int i = 0; i < p.N; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < p.N; ++i)
        for (int j = i + 1; j < p.N; ++j) {
            auto w = facet_equivalent(p, i, j);
            if (!w) continue;
            if (!w->normalized) out.normalization_conflict = true;
            out.witnesses.emplace(std::make_pair(i, j), std::move(*w));
            int a = find(i), b = find(j);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < p.N; ++i) groups[find(i)].push_back(i);
    for (auto& [root, members] : groups) out.classes.push_back(members);
    for (const auto& I : out.classes) {
        if (I.size() < 2) continue;
        // pairwise equivalence must already be transitive
        for (std::size_t a = 0; a < I.size(); ++a)
            for (std::size_t b = a + 1; b < I.size(); ++b)
                if (!out.witnesses.count({I[a], I[b]})) out.consistent = false;
        if (detail::complement_rank(p, mask_of(I)) != p.n - static_cast<int>(I.size()) + 1) out.consistent = false;
        const auto [line, equal] = detail::class_sum_test(p, I);
        if (!line) out.consistent = false;
        if (!equal) out.normalization_conflict = true;
    }
    return out;
}

struct InessentialElement {
    Vec beta;
    Vec H;
    bool verified = false;  // mass linear with gamma == beta
};

struct InessentialSpace {
    std::vector<InessentialElement> basis;
    int dimension() const { return static_cast<int>(basis.size()); }
};

// beta with zero sum over every class; optionally check gamma == beta.
inline InessentialSpace inessential_space(const Polytope& p, const EquivClasses& ec, const VolumeData* vd) {
    Mat cons;
    for (const auto& I : ec.classes) {
        Vec row = zeros(p.N);
        for (int i : I) row[i] = 1;
        cons.push_back(row);
    }
    InessentialSpace out;
    for (auto& beta : kernel(cons, p.N)) {
        InessentialElement e;
        e.H = combine_conormals(p, beta);
        if (vd) {
            auto g = is_mass_linear(p, *vd, e.H);
            e.verified = g && *g == beta;
        }
        e.beta = std::move(beta);
        out.basis.push_back(std::move(e));
    }
    return out;
}

inline InessentialSpace inessential_space(const Polytope& p) {
    auto vd = volume_moments(p);
    return inessential_space(p, equivalence_classes(p), &vd);
}

// A mass linear gamma is inessential iff it has zero class sums (gamma = beta).
inline bool gamma_is_inessential(const EquivClasses& ec, const Vec& gamma) {
    for (const auto& I : ec.classes) {
        Rat s = 0;
        for (int i : I) s += gamma[i];
        if (s != 0) return false;
    }
    return true;
}

// True iff the mass linear H lies outside the span of inessential functions.
inline bool is_essential(const Polytope& p, const VolumeData& vd, const EquivClasses& ec, const Vec& H) {
    if (!is_mass_linear(p, vd, H)) throw Error(ErrorKind::NotMassLinear, "H is not mass linear");
    auto ines = inessential_space(p, ec, nullptr);
    std::vector<Vec> span;
    for (const auto& e : ines.basis) span.push_back(e.H);
    const int r = rank_of_vectors(span);
    span.push_back(H);
    return rank_of_vectors(span) > r;
}

inline bool is_essential(const Polytope& p, const Vec& H) {
    auto vd = volume_moments(p);
    return is_essential(p, vd, equivalence_classes(p), H);
}

struct RobustReflection {
    int i = 0, j = 0;
    Vec xi;
    Mat ahat;       // x -> ahat x
    Rat scale_j = 1;  // eta_j' = scale_j eta_j has <eta_j', xi> = -1
    bool verified = false;

    // a_kappa(x) = ahat(x) + (kappa_i - kappa_j') xi
    Vec apply(const Vec& x, const Vec& kappa) const {
        return mat_vec(ahat, x) + (kappa[i] - scale_j * kappa[j]) * xi;
    }
};

namespace detail {

// Random chamber points near the reference: kappa + small rational perturbation.
inline std::vector<Vec> nearby_chamber_points(const Polytope& p, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Rat step = min_slack(p) / Rat(4 * (p.N + 1));
    std::vector<Vec> out;
    int attempts = 0;
    while (static_cast<int>(out.size()) < count && attempts < 100 * count) {
        ++attempts;
        Vec k = p.kappa;
        for (auto& x : k) x += step * Rat(static_cast<long>(rng() % 2001) - 1000, 1000);
        if (chamber_contains(p, k)) out.push_back(std::move(k));
    }
    return out;
}

inline bool maps_vertices(const Polytope& p, const RobustReflection& r, const Vec& kappa) {
    std::vector<Vec> verts;
    for (std::size_t v = 0; v < p.faces.vertices.size(); ++v) verts.push_back(vertex_at(p, static_cast<int>(v), kappa));
    std::vector<Vec> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Vec> image;
    for (const auto& x : verts) image.push_back(r.apply(x, kappa));
    std::sort(image.begin(), image.end());
    return image == sorted;
}

}  // namespace detail

inline RobustReflection reflection_symmetry(const Polytope& p, int i, int j) {
    auto w = facet_equivalent(p, i, j);
    if (!w) throw Error(ErrorKind::NotEquivalent, "facets are not equivalent");
    RobustReflection r;
    r.i = i;
    r.j = j;
    r.xi = w->xi;
    // Rescale eta_j so that <eta_j', xi> = -1.
    r.scale_j = Rat(-1) / w->eta_j_xi;
    const Vec d = p.eta[i] - r.scale_j * p.eta[j];
    r.ahat.assign(p.n, zeros(p.n));
    for (int a = 0; a < p.n; ++a)
        for (int b = 0; b < p.n; ++b) r.ahat[a][b] = (a == b ? Rat(1) : Rat(0)) - r.xi[a] * d[b];
    r.verified = mat_mul(r.ahat, r.ahat) == [&] {
        Mat id(p.n, zeros(p.n));
        for (int a = 0; a < p.n; ++a) id[a][a] = 1;
        return id;
    }();
    if (r.verified) {
        r.verified = detail::maps_vertices(p, r, p.kappa);
        for (const auto& k : detail::nearby_chamber_points(p, 3, 0x5eed + i * 64 + j))
            r.verified = r.verified && detail::maps_vertices(p, r, k);
    }
    return r;
}

struct ReductionResult {
    Vec H_tilde;
    Vec H_prime;
    Vec gamma_tilde;
    std::vector<std::pair<int, int>> steps;  // (F, G) pairs used
    bool ok = true;
    std::string failure;
};

// Remove asymmetry from non-pervasive facets by subtracting inessential functions.
inline ReductionResult inessential_reduction(const Polytope& p, const VolumeData& vd, const Vec& H) {
    auto g = is_mass_linear(p, vd, H);
    if (!g) throw Error(ErrorKind::NotMassLinear, "H is not mass linear");
    ReductionResult out;
    out.H_tilde = H;
    out.H_prime = zeros(p.n);
    out.gamma_tilde = *g;
    std::vector<bool> pervasive(p.N);
    for (int i = 0; i < p.N; ++i) pervasive[i] = is_pervasive(p, i);
    for (int guard = 0; guard <= p.N; ++guard) {
        int F = -1;
        for (int i = 0; i < p.N; ++i)
            if (out.gamma_tilde[i] != 0 && !pervasive[i]) {
                F = i;
                break;
            }
        if (F < 0) return out;
        std::vector<int> disjoint;
        for (int k = 0; k < p.N; ++k)
            if (k != F && p.face_empty(bit(F) | bit(k))) disjoint.push_back(k);
        if (disjoint.size() != 1) {
            out.ok = false;
            out.failure = "asymmetric non-pervasive facet " + std::to_string(F) + " misses " +
                          std::to_string(disjoint.size()) + " facets";
            return out;
        }
        const int G = disjoint[0];
        auto w = facet_equivalent(p, F, G);
        if (!w || !w->normalized) {
            out.ok = false;
            out.failure = "facet " + std::to_string(F) + " is not equivalent to its opposite facet";
            return out;
        }
        const Rat alpha = dot(out.H_tilde, w->xi) / 2;
        const Vec shift = alpha * (p.eta[F] - p.eta[G]);
        out.H_tilde = out.H_tilde - shift;
        out.H_prime = out.H_prime + shift;
        out.steps.push_back({F, G});
        auto gt = is_mass_linear(p, vd, out.H_tilde);
        if (!gt) {
            out.ok = false;
            out.failure = "reduced function lost mass linearity";
            return out;
        }
        out.gamma_tilde = *gt;
    }
    out.ok = false;
    out.failure = "reduction did not terminate";
    return out;
}

// Split H = H~ + sum_{i in I} alpha_i eta_i with sum alpha = 0 and H~ in span{eta_k : k not in I}.
inline std::optional<std::pair<Vec, Vec>> bundle_decomposition(const Polytope& p, const std::vector<int>& I,
                                                               const Vec& H) {
    std::vector<int> rest;
    for (int k = 0; k < p.N; ++k)
        if (std::find(I.begin(), I.end(), k) == I.end()) rest.push_back(k);
    // unknowns: alpha (|I|) then t (|rest|) with H = sum alpha eta_I + sum t eta_rest
    const std::size_t cols = I.size() + rest.size();
    Mat m;
    Vec rhs;
    for (int r = 0; r < p.n; ++r) {
        Vec row = zeros(cols);
        for (std::size_t a = 0; a < I.size(); ++a) row[a] = p.eta[I[a]][r];
        for (std::size_t b = 0; b < rest.size(); ++b) row[I.size() + b] = p.eta[rest[b]][r];
        m.push_back(row);
        rhs.push_back(H[r]);
    }
    Vec sum_row = zeros(cols);
    for (std::size_t a = 0; a < I.size(); ++a) sum_row[a] = 1;
    m.push_back(sum_row);
    rhs.push_back(0);
    auto sol = solve(m, rhs, cols);
    if (!sol) return std::nullopt;
    Vec alpha(sol->begin(), sol->begin() + I.size());
    Vec shift = zeros(p.n);
    for (std::size_t a = 0; a < I.size(); ++a) shift = shift + alpha[a] * p.eta[I[a]];
    return std::make_pair(H - shift, shift);
}

}  // namespace mlpoly
