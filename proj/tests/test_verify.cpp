#include "fixtures.hpp"

using namespace mlpoly;
using fx::Y;

TEST(Suites, IdsAreUniqueAndFindable) {
    std::set<std::string> ids;
    for (const auto& s : suites()) {
        EXPECT_TRUE(ids.insert(s.id).second) << s.id;
        EXPECT_EQ(&find_suite(s.id), &s);
        EXPECT_FALSE(s.statement.empty());
    }
    EXPECT_EQ(ids.size(), 20u);
    try {
        find_suite("no.such.theorem");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownTheorem);
    }
}

TEST(Suites, PassOnSmallCorpora) {
    std::vector<Polytope> small = {Y(1, 2), Y(0, 0), Y(1, 1), fx::hexagon(), fx::cube(), fx::trapezoid(), simplex(3)};
    for (int dim : {2, 3, 4})
        for (const auto& p : fx::corpus(dim, dim != 2, 8)) small.push_back(p);
    for (const auto& s : suites()) {
        auto r = run_suite(s, small, 1);
        EXPECT_TRUE(r.passed()) << s.id << ": " << (r.counterexamples.empty() ? "" : r.counterexamples[0].reason);
        EXPECT_EQ(r.instances, static_cast<int>(small.size()));
        EXPECT_LE(r.applicable + r.flagged, r.instances);
    }
}

TEST(Suites, YGridForTheYSuite) {
    auto grid = y_grid(2);
    EXPECT_EQ(grid.size(), 50u);
    auto r = run_suite(find_suite("prop4.7"), grid);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.applicable, 50);
}

TEST(Suites, ThreadCountDoesNotChangeResults) {
    auto c = fx::corpus(3, true, 10);
    for (const char* id : {"lem3.6", "thm1.4", "prop4.13"}) {
        auto a = run_suite(find_suite(id), c, 1);
        auto b = run_suite(find_suite(id), c, 3);
        EXPECT_EQ(a.applicable, b.applicable);
        EXPECT_EQ(a.overlaps, b.overlaps);
        EXPECT_EQ(a.counterexamples.size(), b.counterexamples.size());
    }
}

TEST(Suites, FailingCheckProducesCounterexamples) {
    // a deliberately false statement: no polytope has a mass linear function
    Suite bogus{"bogus", "no mass linear functions", [](const Analysis& a) {
                    CheckOutcome o;
                    o.applicable = true;
                    o.check(a.ml.dimension() == 0, "found a mass linear function");
                    return o;
                }};
    std::vector<Polytope> c = {fx::hexagon(), Y(1, 2), fx::cube()};
    auto r = run_suite(bogus, c, 1);
    EXPECT_FALSE(r.passed());
    ASSERT_EQ(r.counterexamples.size(), 2u);
    EXPECT_EQ(r.counterexamples[0].index, 1);
    EXPECT_EQ(r.counterexamples[1].index, 2);
    EXPECT_EQ(r.counterexamples[0].polytope.eta, Y(1, 2).eta);
    EXPECT_EQ(r.applicable, 3);
}

TEST(Suites, ErrorsInsideChecksAreCounterexamples) {
    Suite throwing{"throws", "always throws", [](const Analysis&) -> CheckOutcome {
                       throw Error(ErrorKind::InvalidArgument, "boom");
                   }};
    auto r = run_suite(throwing, {simplex(2)}, 1);
    ASSERT_EQ(r.counterexamples.size(), 1u);
    EXPECT_NE(r.counterexamples[0].reason.find("boom"), std::string::npos);
}

TEST(NamedCorpora, SizesAndErrors) {
    EXPECT_EQ(named_corpus("y_grid").size(), 125u);
    try {
        named_corpus("nope");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
}
