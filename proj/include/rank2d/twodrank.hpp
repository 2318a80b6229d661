#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rank2d/googlerank.hpp"
#include "rank2d/graph.hpp"

namespace rank2d {

/// 1-based rank position.
using Rank = std::uint32_t;

enum class RankIndexKind { K, K_star, K2 };

/// A ranking of N nodes as a pair of mutually inverse permutations.
struct RankIndex {
    RankIndexKind kind = RankIndexKind::K;
    std::vector<NodeIndex> order;  // order[r - 1] is the node at rank r
    std::vector<Rank> position;    // position[node] is its rank in 1..N

    std::size_t size() const noexcept { return order.size(); }

    /// Builds the index from a per-node rank array; throws ContractError if
    /// `position` is not a permutation of 1..N.
    static RankIndex from_positions(RankIndexKind kind, std::vector<Rank> position);
};

/// Sort by probability, largest first; equal values keep ascending node index.
RankIndex rank_indices(std::span<const double> probabilities, RankIndexKind kind = RankIndexKind::K);
inline RankIndex rank_indices(const RankVector& v) {
    return rank_indices(v.values, v.kind == RankKind::pagerank ? RankIndexKind::K : RankIndexKind::K_star);
}

/// Square-expansion ordering in the (K, K*) plane.
///
/// While the square [1..k] x [1..k] grows, the node on its right edge
/// (K = k, K* <= k) enters first, then the node on its top edge
/// (K* = k, K < k). A node with K = K* = k enters once, on the right edge.
RankIndex two_d_rank(const RankIndex& k, const RankIndex& k_star);

/// Per-node record (P, K, P*, K*, K2).
struct RankTable {
    std::shared_ptr<const NodeTable> nodes;
    std::vector<double> p;
    std::vector<double> p_star;
    std::vector<Rank> k;
    std::vector<Rank> k_star;
    std::vector<Rank> k2;

    std::size_t size() const noexcept { return p.size(); }
    const std::string& name(NodeIndex i) const { return nodes->name(i); }

    /// Throws ContractError if the columns disagree in length or a rank
    /// column is not a permutation.
    void validate() const;

    bool operator==(const RankTable& other) const;
};

RankTable make_rank_table(std::shared_ptr<const NodeTable> nodes, const RankVector& pagerank,
                          const RankVector& cheirank);

/// Re-ranks subset members densely (1..|s|), keeping their global order for
/// K and K*, and recomputes K2 on the dense ranks. Members appear in the
/// returned table in ascending global node index.
RankTable subset_rank(const NodeSubset& subset, const RankTable& table);

}  // namespace rank2d
