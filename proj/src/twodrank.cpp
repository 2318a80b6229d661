#include "rank2d/twodrank.hpp"

#include <algorithm>
#include <numeric>

#include "rank2d/errors.hpp"

namespace rank2d {

RankIndex RankIndex::from_positions(RankIndexKind kind, std::vector<Rank> position) {
    RankIndex idx;
    idx.kind = kind;
    const std::size_t n = position.size();
    idx.order.assign(n, 0);
    std::vector<bool> taken(n, false);
    for (std::size_t node = 0; node < n; ++node) {
        const Rank r = position[node];
        if (r < 1 || r > n || taken[r - 1]) throw ContractError("rank column is not a permutation of 1..N");
        taken[r - 1] = true;
        idx.order[r - 1] = static_cast<NodeIndex>(node);
    }
    idx.position = std::move(position);
    return idx;
}

RankIndex rank_indices(std::span<const double> probabilities, RankIndexKind kind) {
    RankIndex idx;
    idx.kind = kind;
    idx.order.resize(probabilities.size());
    std::iota(idx.order.begin(), idx.order.end(), NodeIndex{0});
    std::stable_sort(idx.order.begin(), idx.order.end(),
                     [&](NodeIndex a, NodeIndex b) { return probabilities[a] > probabilities[b]; });
    idx.position.resize(probabilities.size());
    for (std::size_t r = 0; r < idx.order.size(); ++r) idx.position[idx.order[r]] = static_cast<Rank>(r + 1);
    return idx;
}

RankIndex two_d_rank(const RankIndex& k, const RankIndex& k_star) {
    const std::size_t n = k.size();
    if (k_star.size() != n || k.position.size() != n || k_star.position.size() != n)
        throw ContractError("rank indices cover different node sets");

    RankIndex out;
    out.kind = RankIndexKind::K2;
    out.order.reserve(n);
    for (std::size_t side = 1; side <= n; ++side) {
        const NodeIndex right = k.order[side - 1];
        if (k_star.position[right] <= side) out.order.push_back(right);
        const NodeIndex top = k_star.order[side - 1];
        if (k.position[top] < side) out.order.push_back(top);
    }
    if (out.order.size() != n) throw ContractError("rank indices are not permutations");

    out.position.assign(n, 0);
    for (std::size_t r = 0; r < n; ++r) out.position[out.order[r]] = static_cast<Rank>(r + 1);
    return out;
}

void RankTable::validate() const {
    const std::size_t n = p.size();
    if (!nodes || nodes->size() != n || p_star.size() != n || k.size() != n || k_star.size() != n ||
        k2.size() != n)
        throw ContractError("rank table columns differ in length");
    RankIndex::from_positions(RankIndexKind::K, k);
    RankIndex::from_positions(RankIndexKind::K_star, k_star);
    RankIndex::from_positions(RankIndexKind::K2, k2);
}

bool RankTable::operator==(const RankTable& other) const {
    const bool same_nodes = nodes == other.nodes || (nodes && other.nodes && *nodes == *other.nodes);
    return same_nodes && p == other.p && p_star == other.p_star && k == other.k && k_star == other.k_star &&
           k2 == other.k2;
}

RankTable make_rank_table(std::shared_ptr<const NodeTable> nodes, const RankVector& pagerank,
                          const RankVector& cheirank) {
    const std::size_t n = pagerank.values.size();
    if (cheirank.values.size() != n || !nodes || nodes->size() != n)
        throw ContractError("rank vectors and node table differ in size");

    const RankIndex k = rank_indices(pagerank.values, RankIndexKind::K);
    const RankIndex ks = rank_indices(cheirank.values, RankIndexKind::K_star);
    RankIndex k2 = two_d_rank(k, ks);

    RankTable t;
    t.nodes = std::move(nodes);
    t.p = pagerank.values;
    t.p_star = cheirank.values;
    t.k = k.position;
    t.k_star = ks.position;
    t.k2 = std::move(k2.position);
    return t;
}

namespace {

/// Dense ranks of `members` following their order in the global index.
std::vector<Rank> restricted_ranks(std::span<const NodeIndex> members, std::span<const Rank> global) {
    std::vector<std::size_t> slots(members.size());
    std::iota(slots.begin(), slots.end(), std::size_t{0});
    std::sort(slots.begin(), slots.end(),
              [&](std::size_t a, std::size_t b) { return global[members[a]] < global[members[b]]; });
    std::vector<Rank> dense(members.size());
    for (std::size_t r = 0; r < slots.size(); ++r) dense[slots[r]] = static_cast<Rank>(r + 1);
    return dense;
}

}  // namespace

RankTable subset_rank(const NodeSubset& subset, const RankTable& table) {
    if (subset.members.empty()) throw ContractError("subset is empty");

    std::vector<NodeIndex> members = subset.members;
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
        throw ContractError("subset has repeated members");
    if (members.back() >= table.size()) throw ContractError("subset member outside the rank table");

    auto names = std::make_shared<NodeTable>();
    RankTable sub;
    for (NodeIndex m : members) {
        names->add(table.name(m));
        sub.p.push_back(table.p[m]);
        sub.p_star.push_back(table.p_star[m]);
    }
    sub.nodes = std::move(names);

    const auto k = RankIndex::from_positions(RankIndexKind::K, restricted_ranks(members, table.k));
    const auto ks = RankIndex::from_positions(RankIndexKind::K_star, restricted_ranks(members, table.k_star));
    sub.k = k.position;
    sub.k_star = ks.position;
    sub.k2 = two_d_rank(k, ks).position;
    return sub;
}

}  // namespace rank2d
