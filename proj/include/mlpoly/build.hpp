#pragma once

// Constructors for simplices, products, the Y_a family, bundles, expansions,
// blow-ups, and a seeded corpus generator.

#include "mlpoly/polytope.hpp"

#include <functional>
#include <random>

namespace mlpoly {

inline Polytope simplex(int k) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "simplex dimension must be positive");
    std::vector<Vec> eta;
    for (int i = 0; i < k; ++i) eta.push_back(Rat(-1) * unit(k, i));
    eta.push_back(Vec(k, Rat(1)));
    Vec kappa = zeros(k + 1);
    kappa[k] = 1;
    return validate(eta, kappa, true);
}

inline Polytope product(const Polytope& P, const Polytope& Q) {
    std::vector<Vec> eta;
    for (const auto& e : P.eta) {
        Vec v = e;
        v.resize(P.n + Q.n, Rat(0));
        eta.push_back(v);
    }
    for (const auto& e : Q.eta) {
        Vec v = zeros(P.n);
        v.insert(v.end(), e.begin(), e.end());
        eta.push_back(v);
    }
    Vec kappa = P.kappa;
    kappa.insert(kappa.end(), Q.kappa.begin(), Q.kappa.end());
    return validate(eta, kappa, P.lattice && Q.lattice);
}

inline bool y_chamber(const Rat& a1, const Rat& a2, const Vec& k) {
    const Rat s = k[0] + k[1] + k[2];
    const Rat m = std::max({Rat(0), a1, a2});
    return s > 0 && k[3] + k[4] > -a1 * k[0] - a2 * k[1] + m * s;
}

inline Polytope y_family(const Rat& a1, const Rat& a2, const Vec& kappa) {
    if (kappa.size() != 5) throw Error(ErrorKind::InvalidArgument, "Y_a needs five support numbers");
    if (!y_chamber(a1, a2, kappa)) throw Error(ErrorKind::OutsideChamber, "kappa violates the Y_a chamber inequalities");
    std::vector<Vec> eta = {{-1, 0, 0}, {0, -1, 0}, {1, 1, 0}, {0, 0, -1}, {a1, a2, 1}};
    return validate(eta, kappa, is_integral(a1) && is_integral(a2));
}

namespace detail {

// Vertex sets of a product pattern: fiber vertex sets combined with all-but-one base facets.
inline bool bundle_pattern(const Polytope& result, const Polytope& fiber, int k) {
    if (result.faces.vertices.size() != fiber.faces.vertices.size() * static_cast<std::size_t>(k + 1)) return false;
    for (Mask v : result.faces.vertices) {
        const Mask f = v & (bit(fiber.N) - 1);
        const Mask b = v >> fiber.N;
        if (fiber.faces.vertex_index(f) < 0 || popcount(b) != k) return false;
    }
    return true;
}

}  // namespace detail

inline Polytope bundle_over_simplex(const Polytope& fiber, int k, const std::vector<Vec>& twists, const Vec& base_kappa) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "base dimension must be positive");
    if (static_cast<int>(twists.size()) != k + 1 || static_cast<int>(base_kappa.size()) != k + 1)
        throw Error(ErrorKind::InvalidTwist, "need k+1 twist vectors and k+1 base support numbers");
    bool integral = fiber.lattice;
    for (const auto& c : twists) {
        if (static_cast<int>(c.size()) != fiber.n) throw Error(ErrorKind::InvalidTwist, "twist has wrong dimension");
        for (const auto& x : c) integral = integral && is_integral(x);
    }
    std::vector<Vec> eta;
    for (const auto& e : fiber.eta) {
        Vec v = e;
        v.resize(fiber.n + k, Rat(0));
        eta.push_back(v);
    }
    for (int i = 0; i <= k; ++i) {
        Vec v = twists[i];
        Vec base = i < k ? Rat(-1) * unit(k, i) : Vec(k, Rat(1));
        v.insert(v.end(), base.begin(), base.end());
        eta.push_back(v);
    }
    Vec kappa = fiber.kappa;
    kappa.insert(kappa.end(), base_kappa.begin(), base_kappa.end());
    Polytope p;
    try {
        p = validate(eta, kappa, integral);
    } catch (const Error& e) {
        throw Error(ErrorKind::OutsideChamber, std::string("bundle data invalid: ") + e.what());
    }
    if (!detail::bundle_pattern(p, fiber, k))
        throw Error(ErrorKind::OutsideChamber, "support numbers do not give a bundle over the simplex");
    return p;
}

inline Polytope expansion(const Polytope& P, int f, int k) {
    if (f < 0 || f >= P.N) throw Error(ErrorKind::InvalidArgument, "facet index out of range");
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "expansion order must be positive");
    std::vector<Vec> eta;
    Vec kappa;
    for (int j = 0; j < P.N; ++j) {
        if (j == f) continue;
        Vec v = P.eta[j];
        v.resize(P.n + k, Rat(0));
        eta.push_back(v);
        kappa.push_back(P.kappa[j]);
    }
    for (int i = 0; i < k; ++i) {
        Vec v = zeros(P.n);
        Vec e = Rat(-1) * unit(k, i);
        v.insert(v.end(), e.begin(), e.end());
        eta.push_back(v);
        kappa.push_back(0);
    }
    Vec v = P.eta[f];
    v.resize(P.n + k, Rat(1));
    eta.push_back(v);
    kappa.push_back(P.kappa[f]);
    return validate(eta, kappa, P.lattice);
}

// One quarter of the smallest total slack, over vertices off F_I, of the facets in I.
inline Rat default_blowup_epsilon(const Polytope& P, Mask I) {
    std::optional<Rat> best;
    for (std::size_t v = 0; v < P.faces.vertices.size(); ++v) {
        if ((P.faces.vertices[v] & I) == I) continue;
        Rat s = 0;
        for (int i : indices_of(I)) s += P.kappa[i] - dot(P.eta[i], P.faces.coords[v]);
        if (!best || s < *best) best = s;
    }
    return best ? *best / 4 : Rat(1);
}

inline Polytope blowup(const Polytope& P, const std::vector<int>& I, std::optional<Rat> eps = std::nullopt) {
    const Mask m = mask_of(I);
    if (I.size() < 2 || popcount(m) != static_cast<int>(I.size()))
        throw Error(ErrorKind::InvalidArgument, "blow-up needs at least two distinct facets");
    if (P.face_empty(m)) throw Error(ErrorKind::EmptyFace, "cannot blow up an empty face");
    const Rat e = eps ? *eps : default_blowup_epsilon(P, m);
    if (e <= 0) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
    Vec eta0 = zeros(P.n);
    Rat k0 = -e;
    for (int i : I) {
        eta0 = eta0 + P.eta[i];
        k0 += P.kappa[i];
    }
    std::vector<Vec> eta = P.eta;
    Vec kappa = P.kappa;
    eta.push_back(eta0);
    kappa.push_back(k0);
    Polytope out;
    try {
        out = validate(eta, kappa, P.lattice && is_primitive_integral(eta0));
    } catch (const Error& err) {
        throw Error(ErrorKind::EpsilonTooLarge, err.what());
    }
    std::size_t on_face = 0;
    for (Mask v : P.faces.vertices)
        if ((v & m) == m) ++on_face;
    const std::size_t expected = P.faces.vertices.size() - on_face + on_face * I.size();
    bool ok = out.faces.vertices.size() == expected;
    for (Mask v : P.faces.vertices)
        if ((v & m) != m && out.faces.vertex_index(v) < 0) ok = false;
    if (!ok) throw Error(ErrorKind::EpsilonTooLarge, "face lattice of the blow-up is not the expected one");
    return out;
}

// Apply an integer linear map M to the conormals (a lattice change when |det M| = 1).
inline Polytope transform_conormals(const Polytope& P, const Mat& M) {
    std::vector<Vec> eta;
    for (const auto& e : P.eta) eta.push_back(mat_vec(M, e));
    bool prim = true;
    for (const auto& e : eta) prim = prim && is_primitive_integral(e);
    return validate(eta, P.kappa, P.lattice && prim);
}

struct CorpusSpec {
    int dim = 3;
    int max_facets = 12;
    int ops = 3;  // blow-up budget per instance
    std::uint64_t seed = 1;
    int count = 50;
    bool smooth_only = true;
};

namespace detail {

class CorpusGen {
public:
    explicit CorpusGen(const CorpusSpec& spec) : spec_(spec) {}

    std::uint64_t next() { return rng_(); }
    int uniform(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

    void reseed(std::uint64_t s) { rng_.seed(s); }

    Polytope random_simplex(int k) {
        Polytope s = simplex(k);
        Vec kappa = zeros(k + 1);
        for (int i = 0; i <= k; ++i) kappa[i] = uniform(-2, 2);
        Rat sum = 0;
        for (const auto& x : kappa) sum += x;
        kappa[k] += Rat(uniform(1, 3)) - sum;
        return with_support(s, kappa);
    }

    Polytope random_product(int dim) {
        std::vector<int> parts;
        int left = dim;
        while (left > 0) {
            int d = uniform(1, left);
            parts.push_back(d);
            left -= d;
        }
        Polytope p = random_simplex(parts[0]);
        for (std::size_t i = 1; i < parts.size(); ++i) p = product(p, random_simplex(parts[i]));
        return p;
    }

    Polytope random_bundle(int dim, int depth) {
        const int k = uniform(1, std::min(dim - 1, 2));
        const int d = dim - k;
        Polytope fiber = random_base(d, depth + 1);
        for (int attempt = 0; attempt < 20; ++attempt) {
            std::vector<Vec> tw;
            for (int i = 0; i <= k; ++i) {
                Vec c = zeros(d);
                if (i > 0)
                    for (auto& x : c) x = uniform(-2, 2);
                tw.push_back(c);
            }
            Vec bk = zeros(k + 1);
            bk[k] = uniform(2, 6) + 4 * attempt;
            try {
                return bundle_over_simplex(fiber, k, tw, bk);
            } catch (const Error&) {
            }
        }
        return product(fiber, random_simplex(k));
    }

    Polytope random_expansion(int dim, int depth) {
        const int k = uniform(1, std::min(dim - 1, 2));
        Polytope base = random_base(dim - k, depth + 1);
        return expansion(base, uniform(0, base.N - 1), k);
    }

    Polytope random_blowups(Polytope p, int count) {
        for (int b = 0; b < count; ++b) {
            if (p.N + 1 > spec_.max_facets) break;
            const int size = p.n == 2 ? 2 : (uniform(0, 1) ? p.n : p.n - 1);
            std::vector<Mask> faces;
            for (Mask v : p.faces.vertices) {
                if (size == p.n) {
                    faces.push_back(v);
                } else {
                    for (int i : indices_of(v)) faces.push_back(v & ~bit(i));
                }
            }
            std::sort(faces.begin(), faces.end());
            faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
            const Mask f = faces[uniform(0, static_cast<int>(faces.size()) - 1)];
            try {
                p = blowup(p, indices_of(f));
            } catch (const Error&) {
            }
        }
        return p;
    }

    // A smooth polytope of the given dimension from products, bundles, expansions.
    Polytope random_base(int dim, int depth) {
        if (dim == 1) return random_simplex(1);
        const int r = depth > 1 ? 0 : uniform(0, 3);
        if (r == 0 || r == 3) return random_product(dim);
        if (r == 1) return random_bundle(dim, depth);
        return random_expansion(dim, depth);
    }

    Polytope perturb(const Polytope& p) {
        const Rat step = min_slack(p) / Rat(4 * (p.N + 1));
        for (int attempt = 0; attempt < 10; ++attempt) {
            Vec k = p.kappa;
            for (auto& x : k) x += step * Rat(uniform(-4, 4), 4);
            if (chamber_contains(p, k)) return with_support(p, k);
        }
        return p;
    }

    Polytope nonsmooth(const Polytope& p) {
        // integer map with determinant 2 or 3 on the conormals
        Mat M(p.n, zeros(p.n));
        for (int i = 0; i < p.n; ++i) M[i][i] = 1;
        M[0][0] = uniform(2, 3);
        if (p.n > 1) M[0][1] = uniform(-1, 1);
        return transform_conormals(p, M);
    }

    Polytope injected_y(int index) {
        static const int as[][2] = {{1, 2}, {0, 0}, {1, 1}, {-1, 1}, {2, -1}, {0, 2}, {-2, -1}, {1, -2}, {2, 1}, {-1, 0}};
        const auto& a = as[index % 10];
        const Rat a1 = a[0], a2 = a[1];
        Vec k = {0, 0, Rat(uniform(1, 3)), 0, 0};
        k[4] = std::max({Rat(0), a1, a2}) * k[2] + uniform(1, 3);
        return y_family(a1, a2, k);
    }

    Polytope instance(int index) {
        reseed(spec_.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(index) * 0xBF58476D1CE4E5B9ULL + 1);
        const int dim = spec_.dim;
        if (dim == 3 && index % 10 == 0) return perturb(injected_y(index / 10));
        for (int attempt = 0; attempt < 50; ++attempt) {
            const int r = uniform(0, 9);
            Polytope p;
            try {
                if (dim == 1) {
                    p = random_simplex(1);
                } else if (r < 4) {
                    p = random_blowups(random_base(dim, 0), uniform(1, std::max(1, spec_.ops)));
                } else if (r < 7) {
                    p = random_bundle(dim, 0);
                } else if (r < 9) {
                    p = random_expansion(dim, 0);
                } else {
                    p = random_product(dim);
                }
                if (!spec_.smooth_only && uniform(0, 4) == 0) p = nonsmooth(p);
                if (p.N > spec_.max_facets) continue;
                p = perturb(p);
                if (spec_.smooth_only && !is_smooth(p)) continue;
                return p;
            } catch (const Error&) {
                continue;
            }
        }
        return random_simplex(dim);
    }

private:
    CorpusSpec spec_;
    std::mt19937_64 rng_;
};

}  // namespace detail

// Deterministic in the spec. Mix: 40% blow-up chains, 30% bundles, 20% expansions,
// 10% products; in dimension 3 every tenth instance is a Y_a.
inline std::vector<Polytope> random_corpus(const CorpusSpec& spec) {
    if (spec.dim < 1 || spec.count < 0 || spec.max_facets < spec.dim + 1)
        throw Error(ErrorKind::InvalidArgument, "invalid corpus spec");
    detail::CorpusGen gen(spec);
    std::vector<Polytope> out;
    for (int i = 0; i < spec.count; ++i) out.push_back(gen.instance(i));
    return out;
}

}  // namespace mlpoly
