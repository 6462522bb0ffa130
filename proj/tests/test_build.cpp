#include "fixtures.hpp"

using namespace mlpoly;
using fx::Y;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::InvalidArgument;
}

Polytope interval(const Rat& h) { return validate({{-1}, {1}}, {0, h}, true); }

}  // namespace

TEST(Simplex, Standard) {
    auto t = simplex(2);
    EXPECT_EQ(t.eta, (std::vector<Vec>{{-1, 0}, {0, -1}, {1, 1}}));
    EXPECT_EQ(t.kappa, (Vec{0, 0, 1}));
    EXPECT_EQ(kind_of([] { simplex(0); }), ErrorKind::InvalidArgument);
}

TEST(Product, Examples) {
    auto p = product(simplex(1), simplex(2));
    EXPECT_EQ(p.N, 5);
    EXPECT_EQ(p.n, 3);
    EXPECT_TRUE(is_smooth(p));
    EXPECT_EQ(product(simplex(1), simplex(1)).faces.vertices.size(), 4u);
    auto t = validate({{-3, 0}, {0, -2}, {3, 2}}, {0, 0, 6}, false);
    EXPECT_FALSE(is_smooth(product(t, simplex(1))));
}

TEST(YFamily, Examples) {
    auto y = Y(1, 2, {0, 0, 1, 0, 4});
    EXPECT_EQ(y.faces.vertices.size(), 6u);
    EXPECT_TRUE(y.lattice);
    auto y0 = Y(0, 0);
    auto pr = product(simplex(2), simplex(1));
    EXPECT_EQ(y0.eta, pr.eta);
    EXPECT_EQ(kind_of([] { y_family(1, 2, {0, 0, 1, 0, 1}); }), ErrorKind::OutsideChamber);
    EXPECT_FALSE(Y(Rat(1) / 2, 1).lattice);
}

TEST(YFamily, SmoothForIntegerParameters) {
    for (int a1 = -3; a1 <= 3; ++a1)
        for (int a2 = -3; a2 <= 3; ++a2) EXPECT_TRUE(is_smooth(Y(a1, a2, {0, 0, 1, 0, Rat(2 * std::max({0, a1, a2}) + 1)})));
}

TEST(BundleOverSimplex, Examples) {
    for (auto [a1, a2] : {std::pair{1, 2}, {0, 0}, {-1, 2}}) {
        const Vec k = {0, 0, 1, 0, 6};
        auto b = bundle_over_simplex(validate(simplex(2).eta, {0, 0, 1}, true), 1, {{0, 0}, {a1, a2}}, {0, 6});
        auto y = Y(a1, a2, k);
        EXPECT_EQ(b.eta, y.eta);
        EXPECT_EQ(b.kappa, y.kappa);
    }
    // Delta_1 bundle over Delta_2: x1 + x2 <= lambda + b x3, 0 <= x3 <= h
    auto over_triangle = [](const Rat& b, const Rat& lam, const Rat& h) {
        return bundle_over_simplex(interval(h), 2, {{0}, {0}, {-b}}, {0, 0, lam});
    };
    EXPECT_NO_THROW(over_triangle(1, Rat(1) / 2, 2));
    EXPECT_NO_THROW(over_triangle(-1, 3, 2));
    EXPECT_EQ(kind_of([&] { over_triangle(-1, 1, 2); }), ErrorKind::OutsideChamber);
    auto flat = bundle_over_simplex(interval(2), 2, {{0}, {0}, {0}}, {0, 0, 1});
    EXPECT_EQ(product_recognition(flat).kind, ProductKind::Exact);
    EXPECT_EQ(kind_of([] { bundle_over_simplex(interval(1), 1, {{0}}, {0, 1}); }), ErrorKind::InvalidTwist);
    EXPECT_EQ(kind_of([] { bundle_over_simplex(interval(1), 1, {{0, 1}, {0}}, {0, 1}); }), ErrorKind::InvalidTwist);
}

TEST(BundleOverSimplex, RoundTrip) {
    auto b = bundle_over_simplex(fx::square(), 2, {{0, 0}, {1, 0}, {-1, 2}}, {0, 0, 4});
    auto ec = equivalence_classes(b);
    const std::vector<int> base = {4, 5, 6};
    ASSERT_TRUE(std::find(ec.classes.begin(), ec.classes.end(), base) != ec.classes.end());
    auto s = detect_class_structure(b, base);
    EXPECT_TRUE(s.bundle);
    EXPECT_TRUE(s.verified);
    EXPECT_EQ(s.fiber_dim, 2);
}

TEST(Expansion, Examples) {
    for (int n = 1; n <= 3; ++n)
        for (int k = 1; k <= 2; ++k) {
            auto e = expansion(simplex(n), 0, k);
            EXPECT_EQ(e.n, n + k);
            EXPECT_EQ(e.N, n + k + 1);
            EXPECT_EQ(e.faces.vertices.size(), static_cast<std::size_t>(n + k + 1));
        }
    auto prism = expansion(fx::square(), 0, 1);
    EXPECT_EQ(prism.N, 5);
    EXPECT_EQ(prism.faces.vertices.size(), 6u);
    EXPECT_EQ(product_recognition(prism).factors, (std::vector<int>{1, 2}));
    EXPECT_FALSE(prism.face_empty(bit(3) | bit(4)));
}

TEST(Expansion, RoundTripAndSmoothness) {
    int plain = 0;
    for (const auto& p : fx::corpus(2, true, 10)) {
        for (int k : {1, 2}) {
            auto e = expansion(p, 0, k);
            EXPECT_TRUE(is_smooth(e));
            std::vector<int> base;
            for (int i = p.N - 1; i < e.N; ++i) base.push_back(i);
            auto ec = equivalence_classes(e);
            EXPECT_GE(ec.class_of(base[0]), 0);
            for (int i : base) EXPECT_EQ(ec.class_of(i), ec.class_of(base[0]));
            const auto& I = ec.classes[ec.class_of(base[0])];
            auto s = detect_class_structure(e, I);
            EXPECT_TRUE(s.verified);
            // the class grows past the new facets when facet 0 already had partners
            if (I == base) {
                EXPECT_FALSE(s.bundle);
                ++plain;
            }
            EXPECT_EQ(s.bundle, e.face_empty(mask_of(I)));
        }
    }
    EXPECT_GT(plain, 0);
}

TEST(Blowup, HexagonFromTriangle) {
    auto t = simplex(2);
    t = with_support(t, {0, 0, 3});
    auto h = blowup(blowup(blowup(t, {0, 1}), {1, 2}), {0, 2});
    EXPECT_EQ(h.N, 6);
    auto flags = facet_predicates(h);
    for (int i = 0; i < 6; ++i) EXPECT_FALSE(flags.pervasive[i] || flags.flat[i]);
    EXPECT_EQ(mass_linear_space(h).dimension(), 0);
}

TEST(Blowup, ExpansionBecomesBundle) {
    auto e = expansion(fx::square(), 0, 1);
    auto b = blowup(e, {3, 4});
    auto s = detect_class_structure(b, {3, 4});
    EXPECT_TRUE(s.bundle);
    EXPECT_TRUE(s.verified);
}

TEST(Blowup, Errors) {
    EXPECT_EQ(kind_of([] { blowup(simplex(2), {0, 1}, Rat(1)); }), ErrorKind::EpsilonTooLarge);
    EXPECT_EQ(kind_of([] { blowup(simplex(2), {0, 1}, Rat(2)); }), ErrorKind::EpsilonTooLarge);
    EXPECT_EQ(kind_of([] { blowup(fx::cube(), {0, 1}); }), ErrorKind::EmptyFace);
    EXPECT_EQ(kind_of([] { blowup(fx::cube(), {0}); }), ErrorKind::InvalidArgument);
}

TEST(Blowup, VertexBlowupKeepsSmoothness) {
    for (int dim : {2, 3})
        for (const auto& p : fx::corpus(dim, true, 8))
            for (Mask v : p.faces.vertices) {
                auto b = blowup(p, indices_of(v));
                EXPECT_TRUE(is_smooth(b));
                EXPECT_EQ(b.faces.vertices.size(), p.faces.vertices.size() - 1 + p.n);
            }
}

TEST(Corpus, DeterministicAndValid) {
    CorpusSpec s;
    s.dim = 2;
    s.ops = 3;
    s.seed = 1;
    s.count = 50;
    auto a = random_corpus(s);
    auto b = random_corpus(s);
    ASSERT_EQ(a.size(), 50u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].eta, b[i].eta);
        EXPECT_EQ(a[i].kappa, b[i].kappa);
        EXPECT_TRUE(is_smooth(a[i]));
        EXPECT_LE(a[i].N, s.max_facets);
    }
    s.seed = 2;
    auto c = random_corpus(s);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) differs = differs || a[i].kappa != c[i].kappa || a[i].eta != c[i].eta;
    EXPECT_TRUE(differs);
}

TEST(Corpus, ContainsInjectedYFamily) {
    CorpusSpec s;
    s.dim = 3;
    s.count = 20;
    int found = 0;
    for (const auto& p : random_corpus(s))
        if (p.N == 5 && normalize_to_y(p) && normalize_to_y(p)->invariant != 0) ++found;
    EXPECT_GE(found, 1);
}

TEST(Corpus, NonsmoothInstancesWhenAllowed) {
    CorpusSpec s;
    s.dim = 3;
    s.count = 40;
    s.smooth_only = false;
    int nonsmooth = 0;
    for (const auto& p : random_corpus(s)) nonsmooth += !(p.lattice && is_smooth(p));
    EXPECT_GT(nonsmooth, 0);
}

TEST(Corpus, InvalidSpec) {
    CorpusSpec s;
    s.dim = 0;
    EXPECT_EQ(kind_of([&] { random_corpus(s); }), ErrorKind::InvalidArgument);
    s.dim = 3;
    s.max_facets = 3;
    EXPECT_EQ(kind_of([&] { random_corpus(s); }), ErrorKind::InvalidArgument);
}
