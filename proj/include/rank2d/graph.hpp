#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rank2d {

using NodeIndex = std::uint32_t;
using Multiplicity = std::uint32_t;

/// Dense bijection between node indices [0, N) and canonical names.
class NodeTable {
public:
    NodeTable() = default;

    /// Returns the index of `name`, appending it if unseen.
    NodeIndex intern(std::string_view name);

    /// Appends a name that must not already be present.
    NodeIndex add(std::string name);

    const std::string& name(NodeIndex i) const { return names_.at(i); }
    const NodeIndex* find(std::string_view name) const;
    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    bool operator==(const NodeTable& other) const { return names_ == other.names_; }

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };
    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeIndex, Hash, std::equal_to<>> index_;
};

struct Edge {
    NodeIndex source;
    NodeIndex target;
    Multiplicity multiplicity;
};

struct Neighbor {
    NodeIndex target;
    Multiplicity multiplicity;

    bool operator==(const Neighbor&) const = default;
};

/// Immutable directed multigraph in compressed sparse row form.
///
/// Each source keeps its targets sorted ascending with parallel edges merged
/// into a single entry carrying the multiplicity. Self-loops are kept.
class DirectedGraph {
public:
    DirectedGraph() = default;

    /// Builds a graph from an arbitrary edge bag; duplicates are merged.
    /// Throws ContractError on out-of-range endpoints or zero multiplicity.
    static DirectedGraph from_edges(std::shared_ptr<const NodeTable> nodes, std::vector<Edge> edges);

    /// Convenience for index-only graphs; names are "0", "1", ...
    static DirectedGraph from_edges(std::size_t n_nodes, std::vector<Edge> edges);

    std::size_t n_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t n_entries() const noexcept { return neighbors_.size(); }
    std::uint64_t total_edge_weight() const noexcept { return total_weight_; }

    std::span<const Neighbor> out(NodeIndex source) const {
        return {neighbors_.data() + offsets_[source], neighbors_.data() + offsets_[source + 1]};
    }

    /// Sum of multiplicities on outgoing links.
    std::uint64_t out_weight(NodeIndex source) const { return out_weight_[source]; }
    std::size_t out_degree_unweighted(NodeIndex source) const {
        return offsets_[source + 1] - offsets_[source];
    }

    const NodeTable& nodes() const noexcept { return *nodes_; }
    std::shared_ptr<const NodeTable> shared_nodes() const noexcept { return nodes_; }

    /// Structural equality: same node table and identical adjacency.
    bool operator==(const DirectedGraph& other) const;

private:
    std::shared_ptr<const NodeTable> nodes_;
    std::vector<std::uint64_t> offsets_;
    std::vector<Neighbor> neighbors_;
    std::vector<std::uint64_t> out_weight_;
    std::uint64_t total_weight_ = 0;
};

struct IngestStats {
    std::size_t lines = 0;
    std::size_t records = 0;
    std::size_t self_loops = 0;
    std::size_t merged_duplicates = 0;
};

struct LoadedGraph {
    DirectedGraph graph;
    IngestStats stats;
};

/// Reads "source TAB target [TAB multiplicity]" records. Lines starting with
/// '#' and blank lines are skipped. Nodes are numbered by first appearance.
LoadedGraph load_edge_list(std::istream& in);

/// Writes one line per stored (source, target) pair, multiplicity in column 3.
/// Nodes with no links at all cannot be represented and are dropped.
void write_edge_list(const DirectedGraph& g, std::ostream& out);

/// Reverses every link, keeping multiplicities and the node table.
DirectedGraph invert(const DirectedGraph& g);

enum class Direction { in, out };
enum class DegreeWeighting { multiplicity, distinct };

struct DegreeHistogram {
    Direction direction = Direction::in;
    std::map<std::uint64_t, std::uint64_t> counts;  // degree -> number of nodes

    std::uint64_t total() const;
};

/// Per-node degrees, multiplicity-weighted unless asked otherwise.
std::vector<std::uint64_t> degrees(const DirectedGraph& g, Direction direction,
                                   DegreeWeighting weighting = DegreeWeighting::multiplicity);

DegreeHistogram degree_distribution(const DirectedGraph& g, Direction direction,
                                    DegreeWeighting weighting = DegreeWeighting::multiplicity);

struct NodeSubset {
    std::string label;
    std::vector<NodeIndex> members;
};

enum class Resolution { strict, lenient };

struct UnresolvedName {
    std::size_t line;
    std::string name;
};

struct SubsetLoadResult {
    NodeSubset subset;
    std::vector<UnresolvedName> unresolved;
    std::size_t duplicates = 0;
};

/// One name per line; the first occurrence of a repeated name wins.
/// In strict mode the first unknown name raises ParseError with its line.
SubsetLoadResult load_node_subset(std::istream& in, const NodeTable& nodes,
                                  Resolution mode = Resolution::strict, std::string label = {});

/// Trims ASCII whitespace on both ends.
std::string_view trim(std::string_view s);

}  // namespace rank2d
