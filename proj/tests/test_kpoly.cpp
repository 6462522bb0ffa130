#include "fixtures.hpp"

using namespace mlpoly;
using fx::Y;

namespace {

KPoly k(int N, int i) { return KPoly::variable(N, i); }

Polytope interval(const Vec& kappa = {0, 1}) { return validate({{-1}, {1}}, kappa, true); }

}  // namespace

TEST(KPoly, Arithmetic) {
    KPoly x = k(2, 0), y = k(2, 1);
    KPoly p = (x + y) * (x - y);
    EXPECT_EQ(p, x * x - y * y);
    EXPECT_EQ(p.degree(), 2);
    EXPECT_EQ(p.eval({3, 2}), 5);
    EXPECT_EQ(p.derivative(0), Rat(2) * x);
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ((p - p).size(), 0u);
    EXPECT_EQ(p.degree_in(1), 2);
}

TEST(Volume, Interval) {
    auto p = interval();
    EXPECT_EQ(volume_poly(p), k(2, 0) + k(2, 1));
    EXPECT_EQ(moment_poly(p, {1}), Rat(1) / 2 * (k(2, 1) * k(2, 1) - k(2, 0) * k(2, 0)));
}

TEST(Volume, Triangle) {
    auto p = simplex(2);
    KPoly s = k(3, 0) + k(3, 1) + k(3, 2);
    EXPECT_EQ(volume_poly(p), Rat(1) / 2 * s * s);
    const Rat t = Rat(5) / 3;
    EXPECT_EQ(moment_poly(p, {1, 0}).eval({0, 0, t}), t * t * t / 6);
}

TEST(Volume, YFamilyClosedForms) {
    for (int a1 = -2; a1 <= 2; ++a1)
        for (int a2 = -2; a2 <= 2; ++a2) {
            const Rat lam = 2, h = 2 * std::max({0, a1, a2}) + 3;
            const Vec kap = {0, 0, lam, 0, h};
            auto p = Y(a1, a2, kap);
            auto vd = volume_moments(p);
            EXPECT_EQ(vd.volume.eval(kap), (3 * h * lam * lam - (a1 + a2) * lam * lam * lam) / 6);
            for (int j = 0; j < 2; ++j) {
                const int aj = j == 0 ? a1 : a2;
                EXPECT_EQ(vd.moments[j].eval(kap), (4 * h * lam * lam * lam - (aj + a1 + a2) * lam * lam * lam * lam) / 24);
                const Rat c = lam / 4 * (4 * h - lam * (aj + a1 + a2)) / (3 * h - lam * (a1 + a2));
                EXPECT_EQ(center_of_mass(p, vd, kap)[j], c);
            }
        }
}

TEST(CenterOfMass, SimplexFormula) {
    for (int n = 1; n <= 4; ++n) {
        auto p = simplex(n);
        Vec kap(n + 1);
        for (int i = 0; i <= n; ++i) kap[i] = Rat(i * i - 2, i + 3);
        kap[n] += 10;
        auto c = center_of_mass(p, kap);
        Rat s = 0;
        for (const auto& x : kap) s += x;
        for (int j = 0; j < n; ++j) EXPECT_EQ(c[j], -kap[j] + s / (n + 1));
    }
}

TEST(CenterOfMass, SymmetricCube) {
    auto p = fx::cube();
    auto c = center_of_mass(p, Vec(6, Rat(1)));
    EXPECT_TRUE(is_zero(c));
}

TEST(CenterOfMass, OutsideChamber) {
    auto p = Y(1, 2);
    try {
        center_of_mass(p, {0, 0, 1, 0, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::OutsideChamber);
    }
}

TEST(Volume, DegreeBoundsAndPositivity) {
    for (int dim : {2, 3, 4})
        for (const auto& p : fx::corpus(dim, false, 10)) {
            auto vd = volume_moments(p);
            EXPECT_LE(vd.volume.degree(), p.n);
            for (const auto& m : vd.moments) EXPECT_LE(m.degree(), p.n + 1);
            for (const auto& kap : fx::chamber_points(p, 5, 11)) EXPECT_GT(vd.volume.eval(kap), 0);
        }
}

TEST(Volume, MatchesBarycentricOracle) {
    for (int dim : {2, 3})
        for (const auto& p : fx::corpus(dim, false, 8)) {
            auto vd = volume_moments(p);
            for (const auto& kap : fx::chamber_points(p, 2, 5)) {
                auto m = oracle::mass(p.eta, kap);
                EXPECT_EQ(vd.volume.eval(kap), m.volume);
                EXPECT_EQ(center_of_mass(p, vd, kap), m.centroid);
            }
        }
}

TEST(Volume, Scaling) {
    for (const auto& p : fx::corpus(3, false, 10)) {
        auto vd = volume_moments(p);
        const Rat t = Rat(7) / 2;
        for (const auto& kap : fx::chamber_points(p, 3, 1)) {
            const Vec tk = t * kap;
            EXPECT_EQ(vd.volume.eval(tk), t * t * t * vd.volume.eval(kap));
            for (const auto& m : vd.moments) EXPECT_EQ(m.eval(tk), t * t * t * t * m.eval(kap));
        }
    }
}

TEST(Volume, TranslationCovariance) {
    std::mt19937_64 rng(3);
    for (int dim : {2, 3, 4})
        for (const auto& p : fx::corpus(dim, false, 8)) {
            auto vd = volume_moments(p);
            Vec xi(p.n);
            for (auto& x : xi) x = Rat(static_cast<long>(rng() % 41) - 20, 7);
            Vec moved = p.kappa;
            for (int i = 0; i < p.N; ++i) moved[i] += dot(p.eta[i], xi);
            EXPECT_EQ(center_of_mass(p, vd, moved), center_of_mass(p, vd, p.kappa) + xi);
        }
}

TEST(Volume, TriangulationInvariance) {
    for (int dim : {2, 3, 4})
        for (const auto& p : fx::corpus(dim, false, 8)) {
            auto a = volume_moments(p, BaseRule::Smallest);
            auto b = volume_moments(p, BaseRule::Largest);
            EXPECT_EQ(a.volume, b.volume);
            for (int j = 0; j < p.n; ++j) EXPECT_EQ(a.moments[j], b.moments[j]);
        }
}

TEST(Volume, VertexMapsAreTight) {
    for (const auto& p : fx::corpus(3, false, 8)) {
        auto maps = vertex_maps(p);
        for (std::size_t v = 0; v < maps.size(); ++v)
            for (const auto& kap : fx::chamber_points(p, 2, 9)) {
                Vec kI;
                for (int i : maps[v].facets) kI.push_back(kap[i]);
                const Vec x = mat_vec(maps[v].M, kI);
                for (int i : maps[v].facets) EXPECT_EQ(dot(p.eta[i], x), kap[i]);
            }
    }
}

TEST(DerivativeIdentity, Examples) {
    auto cube = fx::cube();
    auto d = derivative_identity(cube, {0, 1});
    EXPECT_TRUE(d.derivative.is_zero());
    EXPECT_FALSE(d.face_volume);

    auto t = derivative_identity(simplex(2), {0, 1});
    EXPECT_EQ(t.derivative, KPoly::constant(3, 1));
    EXPECT_EQ(t.K, 1);
    EXPECT_TRUE(t.holds);

    auto y = derivative_identity(Y(1, 2), {3});
    KPoly lam = k(5, 0) + k(5, 1) + k(5, 2);
    EXPECT_EQ(y.derivative, Rat(1) / 2 * lam * lam);
    ASSERT_TRUE(y.face_volume);
    EXPECT_EQ(*y.face_volume, y.derivative);
    EXPECT_EQ(y.K, 1);
}

TEST(DerivativeIdentity, SmoothCorpusHasUnitConstants) {
    for (int dim : {2, 3, 4})
        for (const auto& p : fx::corpus(dim, true, 8)) {
            auto V = volume_poly(p);
            for (int i = 0; i < p.N; ++i)
                for (int j = 0; j < p.N; ++j) {
                    if (i == j) continue;
                    auto d = derivative_identity(p, V, {i, j});
                    if (p.face_empty(bit(i) | bit(j))) {
                        EXPECT_TRUE(d.derivative.is_zero());
                    } else {
                        EXPECT_TRUE(d.holds);
                        EXPECT_EQ(d.K, 1);
                    }
                }
        }
}

TEST(DerivativeIdentity, NonsmoothPositiveMultiple) {
    auto t = validate({{-3, 0}, {0, -2}, {3, 2}}, {0, 0, 6}, false);
    auto V = volume_poly(t);
    for (int i = 0; i < 3; ++i) {
        auto d = derivative_identity(t, V, {i});
        EXPECT_TRUE(d.holds);
        EXPECT_GT(d.K, 0);
        EXPECT_EQ(d.K, d.predicted_K);
    }
    for (const auto& p : fx::corpus(3, false, 15)) {
        auto Vp = volume_poly(p);
        for (int i = 0; i < p.N; ++i) {
            auto d = derivative_identity(p, Vp, {i});
            EXPECT_TRUE(d.holds);
            EXPECT_GT(d.K, 0);
        }
    }
}
