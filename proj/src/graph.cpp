#include "rank2d/graph.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "rank2d/errors.hpp"

namespace rank2d {

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n\v\f";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

NodeIndex NodeTable::intern(std::string_view name) {
    if (auto it = index_.find(name); it != index_.end()) return it->second;
    return add(std::string(name));
}

NodeIndex NodeTable::add(std::string name) {
    if (names_.size() >= std::numeric_limits<NodeIndex>::max())
        throw ContractError("node table full");
    const auto id = static_cast<NodeIndex>(names_.size());
    auto [it, inserted] = index_.emplace(name, id);
    if (!inserted) throw ContractError("duplicate node name: " + name);
    names_.push_back(std::move(name));
    return id;
}

const NodeIndex* NodeTable::find(std::string_view name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &it->second;
}

DirectedGraph DirectedGraph::from_edges(std::shared_ptr<const NodeTable> nodes, std::vector<Edge> edges) {
    if (!nodes) throw ContractError("graph requires a node table");
    const std::size_t n = nodes->size();

    DirectedGraph g;
    g.nodes_ = std::move(nodes);
    g.offsets_.assign(n + 1, 0);
    for (const Edge& e : edges) {
        if (e.source >= n || e.target >= n) throw ContractError("edge endpoint out of range");
        if (e.multiplicity == 0) throw ContractError("edge multiplicity must be positive");
        ++g.offsets_[e.source + 1];
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];

    // Bucket by source, then sort and merge each bucket by target.
    std::vector<Neighbor> scattered(edges.size());
    {
        std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
        for (const Edge& e : edges) scattered[cursor[e.source]++] = {e.target, e.multiplicity};
    }
    edges.clear();
    edges.shrink_to_fit();

    g.out_weight_.assign(n, 0);
    std::size_t write = 0;
    std::uint64_t begin = 0;
    for (std::size_t s = 0; s < n; ++s) {
        const std::uint64_t end = g.offsets_[s + 1];
        auto first = scattered.begin() + static_cast<std::ptrdiff_t>(begin);
        auto last = scattered.begin() + static_cast<std::ptrdiff_t>(end);
        std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.target < b.target; });
        g.offsets_[s] = write;
        for (auto it = first; it != last; ++it) {
            if (write > g.offsets_[s] && scattered[write - 1].target == it->target) {
                const std::uint64_t merged = std::uint64_t{scattered[write - 1].multiplicity} + it->multiplicity;
                if (merged > std::numeric_limits<Multiplicity>::max())
                    throw ContractError("merged multiplicity overflows");
                scattered[write - 1].multiplicity = static_cast<Multiplicity>(merged);
            } else {
                scattered[write++] = *it;
            }
            g.out_weight_[s] += it->multiplicity;
        }
        g.total_weight_ += g.out_weight_[s];
        begin = end;
    }
    g.offsets_[n] = write;
    scattered.resize(write);
    scattered.shrink_to_fit();
    g.neighbors_ = std::move(scattered);
    return g;
}

DirectedGraph DirectedGraph::from_edges(std::size_t n_nodes, std::vector<Edge> edges) {
    auto nodes = std::make_shared<NodeTable>();
    for (std::size_t i = 0; i < n_nodes; ++i) nodes->add(std::to_string(i));
    return from_edges(std::move(nodes), std::move(edges));
}

bool DirectedGraph::operator==(const DirectedGraph& other) const {
    if (n_nodes() != other.n_nodes()) return false;
    if (nodes_ != other.nodes_ && !(nodes_ && other.nodes_ && *nodes_ == *other.nodes_)) return false;
    return offsets_ == other.offsets_ && neighbors_ == other.neighbors_;
}

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

bool skippable(std::string_view line) {
    const auto t = trim(line);
    return t.empty() || t.front() == '#';
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in) {
    auto nodes = std::make_shared<NodeTable>();
    std::vector<Edge> edges;
    IngestStats stats;

    std::string line;
    while (std::getline(in, line)) {
        ++stats.lines;
        if (skippable(line)) continue;
        const auto fields = split_tabs(line);
        if (fields.size() != 2 && fields.size() != 3)
            throw ParseError("expected 2 or 3 tab-separated fields, got " + std::to_string(fields.size()),
                             stats.lines);
        const auto src = trim(fields[0]);
        const auto dst = trim(fields[1]);
        if (src.empty() || dst.empty()) throw ParseError("empty node name", stats.lines);

        Multiplicity mult = 1;
        if (fields.size() == 3) {
            const auto text = trim(fields[2]);
            std::uint64_t value = 0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || value == 0 ||
                value > std::numeric_limits<Multiplicity>::max())
                throw ParseError("multiplicity must be a positive integer, got '" + std::string(text) + "'",
                                 stats.lines);
            mult = static_cast<Multiplicity>(value);
        }
        const NodeIndex s = nodes->intern(src);
        const NodeIndex t = nodes->intern(dst);
        if (s == t) ++stats.self_loops;
        edges.push_back({s, t, mult});
        ++stats.records;
    }
    if (in.bad()) throw ParseError("read failure");
    if (stats.records == 0) throw ParseError("edge list contains no edges");

    auto graph = DirectedGraph::from_edges(std::move(nodes), std::move(edges));
    stats.merged_duplicates = stats.records - graph.n_entries();
    return {std::move(graph), stats};
}

void write_edge_list(const DirectedGraph& g, std::ostream& out) {
    const auto& names = g.nodes();
    for (NodeIndex s = 0; s < g.n_nodes(); ++s)
        for (const Neighbor& nb : g.out(s))
            out << names.name(s) << '\t' << names.name(nb.target) << '\t' << nb.multiplicity << '\n';
}

DirectedGraph invert(const DirectedGraph& g) {
    std::vector<Edge> reversed;
    reversed.reserve(g.n_entries());
    for (NodeIndex s = 0; s < g.n_nodes(); ++s)
        for (const Neighbor& nb : g.out(s)) reversed.push_back({nb.target, s, nb.multiplicity});
    return DirectedGraph::from_edges(g.shared_nodes(), std::move(reversed));
}

std::uint64_t DegreeHistogram::total() const {
    std::uint64_t sum = 0;
    for (const auto& [k, c] : counts) sum += c;
    return sum;
}

std::vector<std::uint64_t> degrees(const DirectedGraph& g, Direction direction, DegreeWeighting weighting) {
    std::vector<std::uint64_t> deg(g.n_nodes(), 0);
    for (NodeIndex s = 0; s < g.n_nodes(); ++s) {
        for (const Neighbor& nb : g.out(s)) {
            const std::uint64_t w = weighting == DegreeWeighting::multiplicity ? nb.multiplicity : 1;
            deg[direction == Direction::out ? s : nb.target] += w;
        }
    }
    return deg;
}

DegreeHistogram degree_distribution(const DirectedGraph& g, Direction direction, DegreeWeighting weighting) {
    DegreeHistogram h;
    h.direction = direction;
    for (std::uint64_t d : degrees(g, direction, weighting)) ++h.counts[d];
    return h;
}

SubsetLoadResult load_node_subset(std::istream& in, const NodeTable& nodes, Resolution mode, std::string label) {
    SubsetLoadResult result;
    result.subset.label = std::move(label);
    std::vector<bool> seen(nodes.size(), false);

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        const auto name = trim(line);
        const NodeIndex* id = nodes.find(name);
        if (!id) {
            if (mode == Resolution::strict) throw ParseError("unknown node '" + std::string(name) + "'", lineno);
            result.unresolved.push_back({lineno, std::string(name)});
            continue;
        }
        if (seen[*id]) {
            ++result.duplicates;
            continue;
        }
        seen[*id] = true;
        result.subset.members.push_back(*id);
    }
    if (in.bad()) throw ParseError("read failure");
    return result;
}

}  // namespace rank2d
