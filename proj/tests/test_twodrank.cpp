#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "rank2d/errors.hpp"
#include "rank2d/twodrank.hpp"

using namespace rank2d;

namespace {

RankIndex from_ranks(RankIndexKind kind, std::vector<Rank> ranks) {
    return RankIndex::from_positions(kind, std::move(ranks));
}

std::vector<Rank> random_permutation(std::size_t n, std::mt19937_64& rng) {
    std::vector<Rank> p(n);
    std::iota(p.begin(), p.end(), Rank{1});
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

RankTable random_table(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RankVector p, ps;
    p.values.resize(n);
    ps.kind = RankKind::cheirank;
    ps.values.resize(n);
    for (auto& x : p.values) x = u(rng);
    for (auto& x : ps.values) x = u(rng);
    auto nodes = std::make_shared<NodeTable>();
    for (std::size_t i = 0; i < n; ++i) nodes->add("node" + std::to_string(i));
    return make_rank_table(nodes, p, ps);
}

}  // namespace

TEST(RankIndices, SortsDescending) {
    const auto idx = rank_indices(std::vector<double>{0.2, 0.5, 0.3});
    EXPECT_EQ(idx.position, (std::vector<Rank>{3, 1, 2}));
    EXPECT_EQ(idx.order, (std::vector<NodeIndex>{1, 2, 0}));
}

TEST(RankIndices, TiesFollowNodeIndex) {
    const auto idx = rank_indices(std::vector<double>{0.25, 0.25, 0.25, 0.25});
    EXPECT_EQ(idx.position, (std::vector<Rank>{1, 2, 3, 4}));
    const auto mixed = rank_indices(std::vector<double>{0.1, 0.3, 0.3, 0.1, 0.2});
    EXPECT_EQ(mixed.position, (std::vector<Rank>{4, 1, 2, 5, 3}));
}

TEST(RankIndices, OrderAndPositionAreInverse) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(10000);
    for (auto& x : v) x = u(rng);
    const auto idx = rank_indices(v);
    for (std::size_t r = 0; r < v.size(); ++r) ASSERT_EQ(idx.position[idx.order[r]], r + 1);
    for (std::size_t r = 1; r < v.size(); ++r) ASSERT_GE(v[idx.order[r - 1]], v[idx.order[r]]);
}

TEST(RankIndices, InvariantUnderPositiveScaling) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(500);
    for (auto& x : v) x = u(rng);
    auto scaled = v;
    for (auto& x : scaled) x *= 3.75;
    EXPECT_EQ(rank_indices(v).position, rank_indices(scaled).position);
}

TEST(TwoDRank, DiagonalCaseReproducesK) {
    std::mt19937_64 rng(1);
    const auto k = random_permutation(50, rng);
    const auto k2 = two_d_rank(from_ranks(RankIndexKind::K, k), from_ranks(RankIndexKind::K_star, k));
    EXPECT_EQ(k2.position, k);
    EXPECT_EQ(k2.kind, RankIndexKind::K2);
}

TEST(TwoDRank, RightEdgeBeforeTopEdge) {
    // a:(1,2), b:(2,1), c:(3,3). At k = 2 b sits on the right edge, a on the top edge.
    const auto k2 = two_d_rank(from_ranks(RankIndexKind::K, {1, 2, 3}), from_ranks(RankIndexKind::K_star, {2, 1, 3}));
    EXPECT_EQ(k2.position, (std::vector<Rank>{2, 1, 3}));
}

TEST(TwoDRank, ExhaustiveAgainstNaiveRescan) {
    for (std::size_t n = 1; n <= 7; ++n) {
        std::vector<Rank> k(n), ks(n);
        std::iota(k.begin(), k.end(), Rank{1});
        std::iota(ks.begin(), ks.end(), Rank{1});
        const auto ki = from_ranks(RankIndexKind::K, k);
        do {
            const auto streamed = two_d_rank(ki, from_ranks(RankIndexKind::K_star, ks)).position;
            ASSERT_EQ(streamed, oracle::naive_two_d_rank(k, ks));
        } while (std::next_permutation(ks.begin(), ks.end()));
    }
}

TEST(TwoDRank, AllPermutationPairsSmallN) {
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<Rank> k(n);
        std::iota(k.begin(), k.end(), Rank{1});
        do {
            std::vector<Rank> ks(n);
            std::iota(ks.begin(), ks.end(), Rank{1});
            do {
                const auto streamed =
                    two_d_rank(from_ranks(RankIndexKind::K, k), from_ranks(RankIndexKind::K_star, ks)).position;
                ASSERT_EQ(streamed, oracle::naive_two_d_rank(k, ks));
            } while (std::next_permutation(ks.begin(), ks.end()));
        } while (std::next_permutation(k.begin(), k.end()));
    }
}

TEST(TwoDRank, RandomLargePairsAgainstNaive) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const auto k = random_permutation(1000, rng);
        const auto ks = random_permutation(1000, rng);
        const auto streamed =
            two_d_rank(from_ranks(RankIndexKind::K, k), from_ranks(RankIndexKind::K_star, ks)).position;
        ASSERT_EQ(streamed, oracle::naive_two_d_rank(k, ks)) << "trial " << trial;
    }
}

TEST(TwoDRank, TopEntryMinimizesLargerRank) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto k = random_permutation(40, rng);
        const auto ks = random_permutation(40, rng);
        const auto k2 = two_d_rank(from_ranks(RankIndexKind::K, k), from_ranks(RankIndexKind::K_star, ks));
        const NodeIndex top = k2.order[0];
        const Rank best = std::max(k[top], ks[top]);
        for (std::size_t v = 0; v < k.size(); ++v) ASSERT_LE(best, std::max(k[v], ks[v]));
    }
}

TEST(TwoDRank, RejectsMismatchedSizes) {
    EXPECT_THROW(two_d_rank(from_ranks(RankIndexKind::K, {1, 2}), from_ranks(RankIndexKind::K_star, {1, 2, 3})),
                 ContractError);
    EXPECT_THROW(RankIndex::from_positions(RankIndexKind::K, {1, 1, 3}), ContractError);
}

TEST(SubsetRank, WholeGraphIsIdentity) {
    const auto table = random_table(200, 4);
    NodeSubset all{"all", {}};
    for (NodeIndex v = 200; v-- > 0;) all.members.push_back(v);
    EXPECT_EQ(subset_rank(all, table), table);
}

TEST(SubsetRank, Singleton) {
    const auto table = random_table(50, 5);
    const auto sub = subset_rank({"one", {17}}, table);
    ASSERT_EQ(sub.size(), 1u);
    EXPECT_EQ(sub.k[0], 1u);
    EXPECT_EQ(sub.k_star[0], 1u);
    EXPECT_EQ(sub.k2[0], 1u);
    EXPECT_EQ(sub.name(0), "node17");
    EXPECT_EQ(sub.p[0], table.p[17]);
}

TEST(SubsetRank, RestrictsGlobalOrder) {
    const auto table = random_table(200, 6);
    std::mt19937_64 rng(8);
    std::vector<NodeIndex> all(200);
    std::iota(all.begin(), all.end(), NodeIndex{0});
    std::shuffle(all.begin(), all.end(), rng);
    const NodeSubset subset{"twenty", {all.begin(), all.begin() + 20}};
    const auto sub = subset_rank(subset, table);

    // Walk the global K order and keep members: that is the expected sub-order.
    const auto global = RankIndex::from_positions(RankIndexKind::K, table.k);
    std::vector<std::string> expected;
    for (NodeIndex v : global.order)
        if (std::find(subset.members.begin(), subset.members.end(), v) != subset.members.end())
            expected.push_back(table.name(v));
    const auto local = RankIndex::from_positions(RankIndexKind::K, sub.k);
    std::vector<std::string> actual;
    for (NodeIndex v : local.order) actual.push_back(sub.name(v));
    EXPECT_EQ(actual, expected);

    EXPECT_EQ(sub.k2, oracle::naive_two_d_rank(sub.k, sub.k_star));
    EXPECT_NO_THROW(sub.validate());
}

TEST(SubsetRank, RejectsEmptyOrRepeated) {
    const auto table = random_table(10, 7);
    EXPECT_THROW(subset_rank({"none", {}}, table), ContractError);
    EXPECT_THROW(subset_rank({"dup", {1, 1}}, table), ContractError);
    EXPECT_THROW(subset_rank({"far", {10}}, table), ContractError);
}
