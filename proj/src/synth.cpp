#include <algorithm>
#include <limits>

#include "rank2d/errors.hpp"
#include "rank2d/netstats.hpp"

namespace rank2d {

namespace {

enum Stream : std::uint64_t { kInDegrees = 1, kOutDegrees = 2, kTrim = 3, kMatch = 4 };

std::vector<std::uint64_t> draw_degrees(const DiscreteDistribution& law, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint64_t> deg(n);
    for (auto& d : deg) d = law(rng);
    return deg;
}

/// Removes `excess` stubs chosen uniformly among those whose owner keeps at least one.
void trim_stubs(std::vector<std::uint64_t>& deg, std::uint64_t excess, Rng& rng) {
    std::vector<NodeIndex> stubs;
    for (NodeIndex v = 0; v < deg.size(); ++v)
        if (deg[v] > 1) stubs.insert(stubs.end(), deg[v] - 1, v);
    rng.shuffle(std::span<NodeIndex>(stubs));
    for (std::uint64_t i = 0; i < excess; ++i) --deg[stubs[i]];
}

std::vector<NodeIndex> expand_stubs(const std::vector<std::uint64_t>& deg, std::uint64_t total) {
    std::vector<NodeIndex> stubs;
    stubs.reserve(total);
    for (NodeIndex v = 0; v < deg.size(); ++v) stubs.insert(stubs.end(), deg[v], v);
    return stubs;
}

}  // namespace

DirectedGraph generate_scale_free(const ScaleFreeParams& params) {
    if (params.n < 100) throw ContractError("scale-free generator needs n >= 100");
    if (!(params.mu_in > 2.0) || !(params.mu_out > 2.0))
        throw ContractError("degree exponents must exceed 2 for a finite mean");
    if (params.n >= std::numeric_limits<NodeIndex>::max()) throw ContractError("too many nodes");

    const std::uint64_t k_max = params.n;
    const auto in_law = power_law_with_mean(params.mu_in, params.mean_degree, k_max);
    const auto out_law = power_law_with_mean(params.mu_out, params.mean_degree, k_max);

    auto in_deg = draw_degrees(in_law, params.n, derive_seed(params.seed, kInDegrees));
    auto out_deg = draw_degrees(out_law, params.n, derive_seed(params.seed, kOutDegrees));
    std::uint64_t in_total = 0, out_total = 0;
    for (auto d : in_deg) in_total += d;
    for (auto d : out_deg) out_total += d;

    // Every node keeps at least one stub per side, and both totals are >= n,
    // so the larger side always has enough removable stubs.
    Rng trim_rng(derive_seed(params.seed, kTrim));
    if (in_total > out_total)
        trim_stubs(in_deg, in_total - out_total, trim_rng);
    else if (out_total > in_total)
        trim_stubs(out_deg, out_total - in_total, trim_rng);
    const std::uint64_t total = std::min(in_total, out_total);

    auto targets = expand_stubs(in_deg, total);
    const auto sources = expand_stubs(out_deg, total);
    Rng match_rng(derive_seed(params.seed, kMatch));
    match_rng.shuffle(std::span<NodeIndex>(targets));

    std::vector<Edge> edges(total);
    for (std::uint64_t e = 0; e < total; ++e) edges[e] = {sources[e], targets[e], 1};

    auto nodes = std::make_shared<NodeTable>();
    for (std::size_t v = 0; v < params.n; ++v) nodes->add("n" + std::to_string(v));
    return DirectedGraph::from_edges(std::move(nodes), std::move(edges));
}

}  // namespace rank2d
