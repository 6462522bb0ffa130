#pragma once

#include "mlpoly/report.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

namespace fx {

using namespace mlpoly;

inline Polytope Y(const Rat& a1, const Rat& a2, Vec kappa = {0, 0, 1, 0, 4}) { return y_family(a1, a2, kappa); }

inline Polytope square(const Vec& kappa = {0, 0, 1, 1}) {
    return validate({{-1, 0}, {0, -1}, {1, 0}, {0, 1}}, kappa, true);
}

inline Polytope cube() { return product(product(simplex(1), simplex(1)), simplex(1)); }

// Triangle with its three corners cut off.
inline Polytope hexagon() {
    return validate({{-1, 0}, {0, -1}, {1, 1}, {-1, -1}, {1, 0}, {0, 1}}, {0, 0, 3, -1, 2, 2}, true);
}

inline Polytope trapezoid() { return validate({{-1, 0}, {0, -1}, {0, 1}, {1, 1}}, {0, 0, 1, 3}, true); }

inline oracle::RMat rows(const Polytope& p) { return p.eta; }

inline bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// Small deterministic corpora shared by the property tests.
inline const std::vector<Polytope>& corpus(int dim, bool smooth, int count = 30) {
    static std::map<std::tuple<int, bool, int>, std::vector<Polytope>> cache;
    auto key = std::make_tuple(dim, smooth, count);
    auto it = cache.find(key);
    if (it == cache.end()) {
        CorpusSpec s;
        s.dim = dim;
        s.smooth_only = smooth;
        s.count = count;
        s.max_facets = 10;
        s.seed = 7;
        it = cache.emplace(key, random_corpus(s)).first;
    }
    return it->second;
}

// Chamber points near p.kappa: p.kappa plus small steps that keep the combinatorial type.
inline std::vector<Vec> chamber_points(const Polytope& p, int count, std::uint64_t seed) {
    return detail::nearby_chamber_points(p, count, seed);
}

}  // namespace fx
