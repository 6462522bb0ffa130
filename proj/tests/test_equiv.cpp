#include "fixtures.hpp"

using namespace mlpoly;
using fx::Y;

TEST(FacetEquivalent, Examples) {
    auto y = Y(1, 2);
    auto w = facet_equivalent(y, 3, 4);
    ASSERT_TRUE(w);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(dot(y.eta[k], w->xi), 0);
    EXPECT_EQ(dot(y.eta[3], w->xi), 1);
    EXPECT_EQ(w->eta_j_xi, -1);
    EXPECT_FALSE(facet_equivalent(y, 0, 1));
    EXPECT_TRUE(facet_equivalent(fx::square(), 0, 2));
    EXPECT_FALSE(facet_equivalent(fx::square(), 0, 1));
    EXPECT_ANY_THROW(facet_equivalent(y, 2, 2));
}

TEST(FacetEquivalent, LatticeWitnessesAreIntegral) {
    for (int dim : {2, 3, 4})
        for (const auto& p : fx::corpus(dim, true, 10))
            for (const auto& [key, w] : equivalence_classes(p).witnesses)
                for (const auto& x : w.xi) EXPECT_TRUE(is_integral(x));
}

TEST(EquivalenceClasses, Examples) {
    auto y = Y(1, 2);
    EXPECT_EQ(equivalence_classes(y).classes, (std::vector<std::vector<int>>{{0}, {1}, {2}, {3, 4}}));
    for (int k = 1; k <= 4; ++k) {
        auto ec = equivalence_classes(simplex(k));
        ASSERT_EQ(ec.classes.size(), 1u);
        EXPECT_EQ(ec.classes[0].size(), static_cast<std::size_t>(k + 1));
    }
    auto pr = equivalence_classes(product(simplex(1), simplex(2)));
    ASSERT_EQ(pr.classes.size(), 2u);
    EXPECT_EQ(pr.classes[0].size(), 2u);
    EXPECT_EQ(pr.classes[1].size(), 3u);
    EXPECT_EQ(equivalence_classes(Y(1, 1)).classes, (std::vector<std::vector<int>>{{0, 1}, {2}, {3, 4}}));
    EXPECT_EQ(equivalence_classes(Y(0, 0)).classes, (std::vector<std::vector<int>>{{0, 1, 2}, {3, 4}}));
}

TEST(EquivalenceClasses, HexagonHasSingletons) {
    auto h = fx::hexagon();
    // every pair leaves four conormals spanning the plane
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            std::vector<Vec> rest;
            for (int k = 0; k < 6; ++k)
                if (k != i && k != j) rest.push_back(h.eta[k]);
            EXPECT_EQ(rank_of_vectors(rest), 2);
        }
    EXPECT_EQ(equivalence_classes(h).classes.size(), 6u);
}

TEST(EquivalenceClasses, RankConsistency) {
    for (int dim : {2, 3, 4})
        for (const auto& p : fx::corpus(dim, false, 15)) {
            auto ec = equivalence_classes(p);
            EXPECT_TRUE(ec.consistent);
            for (const auto& I : ec.classes) {
                std::vector<Vec> rest;
                for (int k = 0; k < p.N; ++k)
                    if (!fx::contains(I, k)) rest.push_back(p.eta[k]);
                EXPECT_EQ(rank_of_vectors(rest), p.n - static_cast<int>(I.size()) + 1);
            }
            for (const auto& [key, w] : ec.witnesses) {
                EXPECT_EQ(dot(p.eta[key.first], w.xi), 1);
                for (int k = 0; k < p.N; ++k)
                    if (k != key.first && k != key.second) EXPECT_EQ(dot(p.eta[k], w.xi), 0);
            }
        }
}

TEST(EquivalenceClasses, DependOnlyOnConormals) {
    for (const auto& p : fx::corpus(3, false, 10)) {
        auto ec = equivalence_classes(p);
        for (const auto& k : fx::chamber_points(p, 2, 4)) EXPECT_EQ(equivalence_classes(with_support(p, k)).classes, ec.classes);
        // reverse the facet order
        std::vector<Vec> eta(p.eta.rbegin(), p.eta.rend());
        Vec kap(p.kappa.rbegin(), p.kappa.rend());
        auto q = validate(eta, kap, p.lattice);
        std::vector<std::vector<int>> mapped;
        for (const auto& I : equivalence_classes(q).classes) {
            std::vector<int> m;
            for (int i : I) m.push_back(p.N - 1 - i);
            std::sort(m.begin(), m.end());
            mapped.push_back(m);
        }
        std::sort(mapped.begin(), mapped.end());
        auto orig = ec.classes;
        std::sort(orig.begin(), orig.end());
        EXPECT_EQ(mapped, orig);
    }
}

TEST(InessentialSpace, Dimensions) {
    EXPECT_EQ(inessential_space(Y(1, 2)).dimension(), 1);
    EXPECT_EQ(inessential_space(fx::hexagon()).dimension(), 0);
    EXPECT_EQ(inessential_space(simplex(2)).dimension(), 2);
    for (int dim : {2, 3, 4})
        for (const auto& p : fx::corpus(dim, false, 15)) {
            auto ec = equivalence_classes(p);
            auto vd = volume_moments(p);
            auto ines = inessential_space(p, ec, &vd);
            EXPECT_EQ(ines.dimension(), p.N - static_cast<int>(ec.classes.size()));
            if (ec.normalization_conflict) continue;
            for (const auto& e : ines.basis) {
                EXPECT_TRUE(e.verified);
                for (const auto& k : fx::chamber_points(p, 3, 8)) EXPECT_EQ(dot(e.H, center_of_mass(p, vd, k)), dot(e.beta, k));
            }
        }
}

TEST(IsEssential, Examples) {
    EXPECT_TRUE(is_essential(Y(1, 2), {1, 0, 0}));
    EXPECT_FALSE(is_essential(Y(1, 2), {-1, -2, -2}));
    for (const auto& a : {std::pair{1, 1}, {0, 0}, {0, 2}, {2, 0}})
        for (const auto& b : mass_linear_space(Y(a.first, a.second)).basis)
            EXPECT_FALSE(is_essential(Y(a.first, a.second), b.H)) << a.first << "," << a.second;
    try {
        is_essential(Y(1, 2), {0, 0, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotMassLinear);
    }
}

TEST(IsEssential, OneClassOfAsymmetricFacetsMeansInessential) {
    for (int dim : {2, 3, 4})
        for (const auto& p : fx::corpus(dim, false, 15)) {
            auto vd = volume_moments(p);
            auto ec = equivalence_classes(p);
            if (ec.normalization_conflict) continue;
            for (const auto& b : mass_linear_space(p, vd).basis) {
                auto asym = symmetric_partition(b.gamma).asymmetric;
                const int c = ec.class_of(asym[0]);
                if (std::all_of(asym.begin(), asym.end(), [&](int i) { return ec.class_of(i) == c; }))
                    EXPECT_FALSE(is_essential(p, vd, ec, b.H));
            }
        }
}

TEST(ReflectionSymmetry, Examples) {
    for (auto [a1, a2] : {std::pair{1, 2}, {0, 0}, {-2, 1}}) {
        auto y = Y(a1, a2, {0, 0, 1, 1, 6});
        auto r = reflection_symmetry(y, 3, 4);
        EXPECT_TRUE(r.verified);
        const Vec x = {Rat(1) / 3, Rat(2) / 7, 5};
        EXPECT_EQ(r.apply(x, y.kappa), (Vec{x[0], x[1], -a1 * x[0] - a2 * x[1] - x[2] + y.kappa[4] - y.kappa[3]}));
    }
    auto sq = fx::square({0, 0, 3, 1});
    auto r = reflection_symmetry(sq, 0, 2);
    EXPECT_TRUE(r.verified);
    // x1 -> kappa_3 - kappa_1 - x1 in the (-e1, e1) labelling
    EXPECT_EQ(r.apply({1, 0}, sq.kappa)[0], sq.kappa[2] - sq.kappa[0] - 1);
    try {
        reflection_symmetry(Y(1, 2), 0, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotEquivalent);
    }
}

TEST(ReflectionSymmetry, InvolutionOnCorpus) {
    for (int dim : {2, 3})
        for (const auto& p : fx::corpus(dim, true, 15)) {
            for (const auto& [key, w] : equivalence_classes(p).witnesses) {
                auto r = reflection_symmetry(p, key.first, key.second);
                EXPECT_TRUE(r.verified);
                for (const auto& row : r.ahat)
                    for (const auto& x : row) EXPECT_TRUE(is_integral(x));
            }
        }
}

TEST(InessentialReduction, Examples) {
    auto y = Y(1, 2);
    auto vd = volume_moments(y);
    auto r = inessential_reduction(y, vd, {1, 0, 0});
    EXPECT_TRUE(r.ok);
    EXPECT_TRUE(is_zero(r.H_prime));
    auto s = inessential_reduction(y, vd, {-1, -2, -2});
    EXPECT_TRUE(s.ok);
    EXPECT_TRUE(is_zero(s.H_tilde));
    EXPECT_EQ(s.H_prime, (Vec{-1, -2, -2}));
    auto c = fx::cube();
    auto t = inessential_reduction(c, volume_moments(c), {1, 0, 0});
    EXPECT_TRUE(t.ok);
    EXPECT_TRUE(is_zero(t.H_tilde));
    try {
        inessential_reduction(y, vd, {0, 0, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotMassLinear);
    }
}

TEST(InessentialReduction, OnlyPervasiveAsymmetricFacetsRemain) {
    for (int dim : {2, 3, 4})
        for (const auto& p : fx::corpus(dim, false, 15)) {
            auto vd = volume_moments(p);
            auto ec = equivalence_classes(p);
            if (ec.normalization_conflict) continue;
            for (const auto& b : mass_linear_space(p, vd).basis) {
                auto r = inessential_reduction(p, vd, b.H);
                ASSERT_TRUE(r.ok) << r.failure;
                EXPECT_EQ(r.H_tilde + r.H_prime, b.H);
                EXPECT_FALSE(is_essential(p, vd, ec, r.H_prime) && !is_zero(r.H_prime));
                auto after = symmetric_partition(r.gamma_tilde).asymmetric;
                for (int i : after) EXPECT_TRUE(is_pervasive(p, i));
                EXPECT_LE(after.size(), symmetric_partition(b.gamma).asymmetric.size());
            }
        }
}
