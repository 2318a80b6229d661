#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "oracles.hpp"
#include "rank2d/errors.hpp"
#include "rank2d/graph.hpp"
#include "rank2d/netstats.hpp"

using namespace rank2d;

namespace {

LoadedGraph load(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

NodeIndex id(const DirectedGraph& g, const std::string& name) {
    const NodeIndex* p = g.nodes().find(name);
    EXPECT_NE(p, nullptr) << name;
    return p ? *p : 0;
}

}  // namespace

TEST(EdgeList, MergesDuplicateLinks) {
    const auto loaded = load("a\tb\na\tb\na\tc\n");
    const auto& g = loaded.graph;
    ASSERT_EQ(g.n_nodes(), 3u);
    const auto out = g.out(id(g, "a"));
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0], (Neighbor{id(g, "b"), 2}));
    EXPECT_EQ(out[1], (Neighbor{id(g, "c"), 1}));
    EXPECT_EQ(g.total_edge_weight(), 3u);
    EXPECT_EQ(loaded.stats.merged_duplicates, 1u);
    EXPECT_EQ(loaded.stats.self_loops, 0u);
}

TEST(EdgeList, ExplicitMultiplicity) {
    const auto g = load("a\tb\t3\n").graph;
    ASSERT_EQ(g.n_nodes(), 2u);
    ASSERT_EQ(g.out(0).size(), 1u);
    EXPECT_EQ(g.out(0)[0].multiplicity, 3u);
}

TEST(EdgeList, FirstAppearanceNumberingAndTrimming) {
    const auto g = load("# header\n\n  z  \t y\t2\ny\tx\n").graph;
    EXPECT_EQ(g.nodes().name(0), "z");
    EXPECT_EQ(g.nodes().name(1), "y");
    EXPECT_EQ(g.nodes().name(2), "x");
}

TEST(EdgeList, NamesMayContainSpaces) {
    const auto g = load("United States\tNew York City\n").graph;
    EXPECT_EQ(g.nodes().name(0), "United States");
    EXPECT_EQ(g.nodes().name(1), "New York City");
}

TEST(EdgeList, SelfLoopsAreKeptAndCounted) {
    const auto loaded = load("a\ta\na\tb\n");
    EXPECT_EQ(loaded.stats.self_loops, 1u);
    EXPECT_EQ(loaded.graph.out(0)[0].target, 0u);
    EXPECT_EQ(loaded.graph.out_weight(0), 2u);
}

TEST(EdgeList, TotalWeightMatchesLineAccumulator) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> node(0, 149), mult(1, 9);
    std::ostringstream text;
    std::uint64_t expected = 0;
    for (int line = 0; line < 1000; ++line) {
        const int m = mult(rng);
        text << "v" << node(rng) << '\t' << "v" << node(rng) << '\t' << m << '\n';
    }
    // Independent accumulator: re-read the text and sum column three.
    std::istringstream reread(text.str());
    std::string row;
    while (std::getline(reread, row)) expected += std::stoull(row.substr(row.rfind('\t') + 1));

    const auto g = load(text.str()).graph;
    EXPECT_EQ(g.total_edge_weight(), expected);
}

TEST(EdgeList, RejectsWrongFieldCountWithLineNumber) {
    try {
        load("a\tb\n# ok\na\tb\tc\td\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(load("a b\n"), ParseError);
}

TEST(EdgeList, RejectsBadMultiplicity) {
    EXPECT_THROW(load("a\tb\t0\n"), ParseError);
    EXPECT_THROW(load("a\tb\t-2\n"), ParseError);
    EXPECT_THROW(load("a\tb\tx\n"), ParseError);
    EXPECT_THROW(load("a\tb\t1.5\n"), ParseError);
    EXPECT_THROW(load("a\t\t1\n"), ParseError);
}

TEST(EdgeList, RejectsEmptyInput) {
    EXPECT_THROW(load(""), ParseError);
    EXPECT_THROW(load("# only comments\n\n"), ParseError);
}

TEST(EdgeList, SerializeRoundTrip) {
    // Node numbering follows first appearance in the text, so compare links by name.
    auto named_links = [](const DirectedGraph& g) {
        std::set<std::tuple<std::string, std::string, Multiplicity>> links;
        for (NodeIndex s = 0; s < g.n_nodes(); ++s)
            for (const auto& nb : g.out(s)) links.insert({g.nodes().name(s), g.nodes().name(nb.target), nb.multiplicity});
        return links;
    };
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g0 = oracle::random_graph(40, 0.1, seed);
        std::ostringstream first;
        write_edge_list(g0, first);
        const auto loaded = load(first.str()).graph;
        EXPECT_EQ(named_links(loaded), named_links(g0));
        std::ostringstream second;
        write_edge_list(loaded, second);
        const auto again = load(second.str()).graph;
        EXPECT_EQ(named_links(again), named_links(g0));
        EXPECT_EQ(again.total_edge_weight(), g0.total_edge_weight());
    }
}

TEST(Invert, SingleEdge) {
    const auto g = load("a\tb\n").graph;
    const auto inv = invert(g);
    EXPECT_TRUE(inv.out(id(g, "a")).empty());
    ASSERT_EQ(inv.out(id(g, "b")).size(), 1u);
    EXPECT_EQ(inv.out(id(g, "b"))[0].target, id(g, "a"));
    EXPECT_EQ(&inv.nodes(), &g.nodes());
}

TEST(Invert, IsAnInvolution) {
    const auto g = oracle::random_graph(100, 0.05, 11);
    EXPECT_EQ(invert(invert(g)), g);
    EXPECT_FALSE(invert(g) == g);
}

TEST(Invert, SwapsDegreeHistograms) {
    const auto g = oracle::random_graph(100, 0.05, 12);
    const auto inv = invert(g);
    // Recount in-degrees directly from the edge walk.
    std::vector<std::uint64_t> in_deg(g.n_nodes(), 0);
    for (NodeIndex s = 0; s < g.n_nodes(); ++s)
        for (const auto& nb : g.out(s)) in_deg[nb.target] += nb.multiplicity;
    std::map<std::uint64_t, std::uint64_t> recount;
    for (auto d : in_deg) ++recount[d];

    EXPECT_EQ(degree_distribution(inv, Direction::out).counts, recount);
    EXPECT_EQ(degree_distribution(g, Direction::in).counts, recount);
}

TEST(Degrees, Star) {
    std::vector<Edge> edges;
    for (NodeIndex leaf = 1; leaf <= 5; ++leaf) edges.push_back({0, leaf, 1});
    const auto g = DirectedGraph::from_edges(6, edges);
    const auto h = degree_distribution(g, Direction::out);
    EXPECT_EQ(h.counts, (std::map<std::uint64_t, std::uint64_t>{{0, 5}, {5, 1}}));
    EXPECT_EQ(degree_distribution(g, Direction::in).counts, (std::map<std::uint64_t, std::uint64_t>{{0, 1}, {1, 5}}));
}

TEST(Degrees, EdgelessGraph) {
    const auto g = DirectedGraph::from_edges(7, {});
    EXPECT_EQ(degree_distribution(g, Direction::in).counts, (std::map<std::uint64_t, std::uint64_t>{{0, 7}}));
    EXPECT_EQ(degree_distribution(g, Direction::out).counts, (std::map<std::uint64_t, std::uint64_t>{{0, 7}}));
}

TEST(Degrees, WeightedVersusDistinct) {
    const auto g = load("a\tb\t4\na\tc\n").graph;
    EXPECT_EQ(degrees(g, Direction::out)[0], 5u);
    EXPECT_EQ(degrees(g, Direction::out, DegreeWeighting::distinct)[0], 2u);
}

TEST(Degrees, HandshakeIdentity) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = oracle::random_graph(60, 0.08, seed, 5);
        const auto in = degrees(g, Direction::in);
        const auto out = degrees(g, Direction::out);
        EXPECT_EQ(std::accumulate(in.begin(), in.end(), std::uint64_t{0}), g.total_edge_weight());
        EXPECT_EQ(std::accumulate(out.begin(), out.end(), std::uint64_t{0}), g.total_edge_weight());
    }
}

TEST(Degrees, ScaleFreeHistogramMassEqualsNodeCount) {
    const auto g = generate_scale_free({.n = 2000, .mu_in = 2.1, .mu_out = 2.7, .mean_degree = 6.0, .seed = 3});
    for (Direction d : {Direction::in, Direction::out}) {
        const auto h = degree_distribution(g, d);
        EXPECT_EQ(h.total(), g.n_nodes());
        // Naive per-node recount.
        std::map<std::uint64_t, std::uint64_t> recount;
        for (NodeIndex v = 0; v < g.n_nodes(); ++v) {
            std::uint64_t deg = 0;
            for (NodeIndex s = 0; s < g.n_nodes(); ++s)
                for (const auto& nb : g.out(s))
                    if ((d == Direction::out && s == v) || (d == Direction::in && nb.target == v))
                        deg += nb.multiplicity;
            ++recount[deg];
        }
        EXPECT_EQ(h.counts, recount);
    }
}

TEST(NodeSubsetLoad, AllResolve) {
    const auto g = load("a\tb\nb\tc\n").graph;
    std::istringstream in("c\na\n");
    const auto r = load_node_subset(in, g.nodes());
    EXPECT_EQ(r.subset.members, (std::vector<NodeIndex>{id(g, "c"), id(g, "a")}));
    EXPECT_TRUE(r.unresolved.empty());
}

TEST(NodeSubsetLoad, StrictModeNamesTheLine) {
    const auto g = load("a\tb\n").graph;
    std::istringstream in("a\n# comment\nzzz\n");
    try {
        load_node_subset(in, g.nodes(), Resolution::strict);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("zzz"), std::string::npos);
    }
}

TEST(NodeSubsetLoad, LenientModeReportsUnresolved) {
    const auto g = load("a\tb\n").graph;
    std::istringstream in("x\nb\ny\n");
    const auto r = load_node_subset(in, g.nodes(), Resolution::lenient);
    EXPECT_EQ(r.subset.members.size(), 1u);
    ASSERT_EQ(r.unresolved.size(), 2u);
    EXPECT_EQ(r.unresolved[0].line, 1u);
    EXPECT_EQ(r.unresolved[1].name, "y");
}

TEST(NodeSubsetLoad, DuplicatesKeepFirst) {
    const auto g = load("a\tb\nb\tc\n").graph;
    std::istringstream in("b\na\nb\nb\n");
    const auto r = load_node_subset(in, g.nodes());
    EXPECT_EQ(r.subset.members, (std::vector<NodeIndex>{id(g, "b"), id(g, "a")}));
    EXPECT_EQ(r.duplicates, 2u);
}

TEST(GraphBuild, RejectsInvalidEdges) {
    EXPECT_THROW(DirectedGraph::from_edges(2, {{0, 2, 1}}), ContractError);
    EXPECT_THROW(DirectedGraph::from_edges(2, {{0, 1, 0}}), ContractError);
}
