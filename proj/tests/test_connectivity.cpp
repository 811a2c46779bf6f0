#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace arbpack;
using namespace testing_support;

namespace {

GenParams params(std::mt19937_64& rng, std::size_t max_n, bool feasible, bool undirected = false) {
    GenParams p;
    p.n = 2 + rng() % (max_n - 1);
    p.t = 1 + rng() % 3;
    p.kind = static_cast<MatroidKind>(rng() % 6);
    p.m = rng() % (3 * p.n);
    p.feasible = feasible;
    p.undirected = undirected;
    if (feasible) p.m = std::max<std::size_t>(p.m, p.n * p.t);
    return p;
}

RootedDigraph random_digraph(std::uint64_t seed, std::size_t max_n, bool feasible) {
    std::mt19937_64 rng(seed);
    return std::get<RootedDigraph>(generate_instance(seed, params(rng, max_n, feasible)).instance);
}

RootedGraph random_graph(std::uint64_t seed, std::size_t max_n) {
    std::mt19937_64 rng(seed);
    return std::get<RootedGraph>(generate_instance(seed, params(rng, max_n, false, true)).instance);
}

}  // namespace

TEST(IndependentPlacement, TwoRootsUnderRankOne) {
    const auto d = digraph({"a", "b"}, {}, {{"s1", "a"}, {"s2", "a"}}, Matroid::uniform({"s1", "s2"}, 1));
    const auto c = check_independent_placement(d);
    EXPECT_EQ(c.kind, Certificate::Kind::dependent_vertex);
    EXPECT_EQ(c.vertex, 0u);
    EXPECT_EQ(c.deficiency, -1);
    EXPECT_TRUE(certificate_holds(d, c));
}

TEST(IndependentPlacement, FreeAlwaysIndependent) {
    const auto d = digraph({"a", "b"}, {}, {{"s1", "a"}, {"s2", "a"}, {"s3", "b"}}, Matroid::free(element_names(3)));
    EXPECT_TRUE(check_independent_placement(d).ok());
}

TEST(IndependentPlacement, PartitionBlockCap) {
    const auto m = Matroid::partition(element_names(3), {{{0, 1}, 1}, {{2}, 1}});
    const auto d = digraph({"u", "v"}, {}, {{"s1", "v"}, {"s2", "v"}, {"s3", "u"}}, m);
    const auto c = check_independent_placement(d);
    EXPECT_EQ(c.kind, Certificate::Kind::dependent_vertex);
    EXPECT_EQ(c.vertex, 1u);
}

TEST(MConnected, DoubleArcFeedsBothRoots) {
    const auto d = digraph({"a", "b"}, {{"1", "a", "b"}, {"2", "a", "b"}}, {{"s1", "a"}, {"s2", "a"}},
                           Matroid::free({"s1", "s2"}));
    EXPECT_TRUE(check_m_connected(d).ok());
}

TEST(MConnected, RootlessIsolatedVertex) {
    const auto d = digraph({"a", "b"}, {}, {{"s1", "a"}}, Matroid::free({"s1"}));
    EXPECT_EQ(check_m_connected(d), Certificate::violated(0b10, -1));
}

TEST(MConnected, BaseEverywhereNeedsNoArcs) {
    const auto m = Matroid::uniform(element_names(3), 1);
    const auto d = digraph({"a", "b", "c"}, {}, {{"s1", "a"}, {"s2", "b"}, {"s3", "c"}}, m);
    EXPECT_TRUE(check_m_connected(d).ok());
}

TEST(MConnected, AgreesWithDefinitionAndCertificatesHold) {
    int violated = 0;
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        const auto d = random_digraph(seed, 6, seed % 3 == 0);
        for (auto e : {SfmEngine::brute, SfmEngine::min_norm_point}) {
            SfmOptions o;
            o.engine = e;
            const auto c = check_m_connected(d, o);
            ASSERT_EQ(c.ok(), reference_m_connected(d)) << seed;
            ASSERT_TRUE(certificate_holds(d, c)) << seed;
            if (!c.ok()) {
                // Canonical: the smallest mask attaining the minimum deficiency.
                int best = 0;
                VertexMask arg = 0;
                for (VertexMask x = 1; x <= d.all_vertices(); ++x) {
                    const int f = entering(d, x) + d.rank_in(x) - d.matroid().rank();
                    if (f < best) best = f, arg = x;
                }
                ASSERT_EQ(c.set, arg);
                ASSERT_EQ(c.deficiency, best);
                ++violated;
            }
        }
    }
    EXPECT_GT(violated, 50);
}

TEST(MConnected, FeasibleGeneratorOutputPasses) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto d = random_digraph(seed, 7, true);
        EXPECT_TRUE(check_independent_placement(d).ok());
        EXPECT_TRUE(check_m_connected(d).ok()) << seed;
    }
}

TEST(MConnected, EdmondsSpecialization) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 5, k = 1 + rng() % 3;
        GenParams p;
        p.n = n;
        p.m = rng() % (3 * n);
        p.t = 0;
        auto d = std::get<RootedDigraph>(generate_instance(rng(), p).instance);
        const std::size_t r = rng() % n;
        d = d.with_roots(std::vector<std::size_t>(k, r), Matroid::free(element_names(k)));
        bool classical = true;
        for (VertexMask x = 1; x <= d.all_vertices(); ++x)
            if (!contains(x, r) && entering(d, x) < static_cast<int>(k)) classical = false;
        EXPECT_EQ(check_m_connected(d).ok(), classical);
    }
}

TEST(PartitionConnected, ConnectedGraphRankOne) {
    const auto g = graph({"a", "b", "c"}, {{"1", "a", "b"}, {"2", "c", "b"}}, {{"s1", "b"}}, Matroid::free({"s1"}));
    EXPECT_TRUE(check_partition_connected(g).ok());
}

TEST(PartitionConnected, ComponentsGiveTheCertificate) {
    const auto g = graph({"a", "b", "c", "d"}, {{"1", "a", "b"}, {"2", "c", "d"}}, {{"s1", "a"}}, Matroid::free({"s1"}));
    const auto c = check_partition_connected(g);
    ASSERT_EQ(c.kind, Certificate::Kind::violated_partition);
    EXPECT_EQ(c.partition, (std::vector<VertexMask>{0b0011, 0b1100}));
    EXPECT_EQ(c.deficiency, -1);
    EXPECT_TRUE(certificate_holds(g, c));
}

TEST(PartitionConnected, TriangleWithTwoRootsAtOneVertex) {
    const auto g = graph({"a", "b", "c"}, {{"1", "a", "b"}, {"2", "b", "c"}, {"3", "c", "a"}},
                         {{"s1", "a"}, {"s2", "a"}}, Matroid::free({"s1", "s2"}));
    const auto c = check_partition_connected(g);
    ASSERT_EQ(c.kind, Certificate::Kind::violated_partition);
    EXPECT_EQ(c.partition, (std::vector<VertexMask>{0b001, 0b010, 0b100}));
    EXPECT_EQ(c.deficiency, 3 - 4);
}

TEST(PartitionConnected, CapEnforced) {
    std::vector<std::string> vs;
    for (int i = 0; i < 13; ++i) vs.push_back("v" + std::to_string(i));
    const RootedGraph g(vs, {}, {0}, Matroid::free({"s1"}));
    EXPECT_THROW(check_partition_connected(g), SizeLimitError);
    EXPECT_THROW(check_partition_connected(graph({"a", "b"}, {}, {{"s1", "a"}}, Matroid::free({"s1"})), 1),
                 SizeLimitError);
}

TEST(PartitionConnected, AgreesWithIndependentEnumeration) {
    int violated = 0;
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        const auto g = random_graph(seed, 6);
        const auto c = check_partition_connected(g);
        ASSERT_EQ(c.ok(), reference_partition_connected(g)) << seed;
        ASSERT_TRUE(certificate_holds(g, c));
        if (!c.ok()) {
            int worst = 0;
            reference_partitions(g.num_vertices(), [&](const std::vector<std::uint64_t>& blocks) {
                worst = std::min(worst, partition_deficiency(g, Partition(g.num_vertices(), blocks)));
            });
            ASSERT_EQ(c.deficiency, worst);
            ++violated;
        }
    }
    EXPECT_GT(violated, 50);
}

TEST(ClassifyArc, EmptyTailIsGood) {
    const auto d = digraph({"a", "b"}, {{"1", "a", "b"}}, {{"s1", "b"}}, Matroid::free({"s1"}));
    EXPECT_TRUE(classify_arc(d, 0).good);
}

TEST(ClassifyArc, FreeRootLeavingIsBad) {
    const auto d = digraph({"a", "b"}, {{"1", "a", "b"}}, {{"s1", "a"}}, Matroid::free({"s1"}));
    const auto c = classify_arc(d, 0);
    EXPECT_FALSE(c.good);
    EXPECT_EQ(c.witness, ElementSet{0});
}

TEST(ClassifyArc, RankOneHeadSpansEverything) {
    const auto d = digraph({"a", "b"}, {{"1", "a", "b"}}, {{"s1", "a"}, {"s2", "b"}}, Matroid::uniform({"s1", "s2"}, 1));
    EXPECT_TRUE(classify_arc(d, 0).good);
    EXPECT_THROW(classify_arc(d, 1), DomainError);
}

TEST(Tight, WholeSetOnConnectedInstances) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto d = random_digraph(seed, 6, true);
        EXPECT_TRUE(is_tight(d, d.all_vertices()));
    }
}

TEST(Tight, DirectEvaluation) {
    const auto m = Matroid::free({"s1", "s2"});
    const auto two = digraph({"a", "b"}, {{"1", "a", "b"}, {"2", "a", "b"}}, {{"s1", "a"}, {"s2", "a"}}, m);
    EXPECT_TRUE(is_tight(two, 0b10));
    const auto three =
        digraph({"a", "b"}, {{"1", "a", "b"}, {"2", "a", "b"}, {"3", "a", "b"}}, {{"s1", "a"}, {"s2", "a"}}, m);
    EXPECT_FALSE(is_tight(three, 0b10));
    EXPECT_THROW(is_tight(two, 0), DomainError);
}

// Intersecting tight sets: meet and join are tight and the root sets form a
// modular pair.
TEST(Tight, IntersectingTightSetsFormALattice) {
    std::size_t pairs = 0;
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        const auto d = random_digraph(seed, 6, true);
        ASSERT_TRUE(reference_m_connected(d));
        std::vector<VertexMask> tight;
        for (VertexMask x = 1; x <= d.all_vertices(); ++x)
            if (is_tight(d, x)) tight.push_back(x);
        const auto& m = d.matroid();
        for (auto x : tight)
            for (auto y : tight) {
                if ((x & y) == 0) continue;
                ++pairs;
                ASSERT_TRUE(is_tight(d, x & y));
                ASSERT_TRUE(is_tight(d, x | y));
                const auto sx = d.elements_in(x), sy = d.elements_in(y);
                ASSERT_EQ(m.rank(sx & sy) + m.rank(sx | sy), m.rank(sx) + m.rank(sy));
            }
    }
    EXPECT_GT(pairs, 1000u);
}

TEST(Domination, Transitive) {
    std::size_t chains = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const auto d = random_digraph(seed, 5, false);
        const VertexMask full = d.all_vertices();
        for (VertexMask x = 1; x <= full; ++x)
            for (VertexMask y = 1; y <= full; ++y) {
                if (!dominates(d, y, x)) continue;
                for (VertexMask z = 1; z <= full; ++z) {
                    if (!dominates(d, z, y)) continue;
                    ++chains;
                    ASSERT_TRUE(dominates(d, z, x));
                }
            }
    }
    EXPECT_GT(chains, 1000u);
}

TEST(CertificateText, KindNames) {
    EXPECT_STREQ(to_string(Certificate::Kind::dependent_vertex), "dependent-vertex");
    EXPECT_STREQ(to_string(Certificate::Kind::violated_partition), "violated-partition");
}
