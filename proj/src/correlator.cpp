#include <cmath>
#include <limits>
#include <map>

#include "rank2d/errors.hpp"
#include "rank2d/netstats.hpp"
#include "rank2d/numeric.hpp"

namespace rank2d {

double correlator(std::span<const double> p, std::span<const double> p_star) {
    if (p.size() != p_star.size()) throw ContractError("correlator needs vectors over the same nodes");
    if (p.empty()) throw ContractError("correlator needs at least one node");
    CompensatedSum s;
    for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * p_star[i];
    return static_cast<double>(p.size()) * s.value() - 1.0;
}

Correlator correlator(const RankVector& p, const RankVector& p_star) {
    return {correlator(p.values, p_star.values), p.alpha, p_star.alpha};
}

namespace {

void check_open_unit(std::span<const double> values) {
    for (double a : values)
        if (!(a > 0.0 && a < 1.0)) throw ContractError("sweep damping values must lie in (0, 1)");
}

}  // namespace

std::vector<SweepPoint> correlator_sweep(const DirectedGraph& g, std::span<const double> alphas,
                                         std::span<const double> alpha_stars, SweepMode mode,
                                         const SolverOptions& opts) {
    check_open_unit(alphas);
    check_open_unit(alpha_stars);

    std::vector<std::pair<double, double>> grid;
    switch (mode) {
        case SweepMode::diagonal:
            for (double a : alphas) grid.emplace_back(a, a);
            break;
        case SweepMode::fix_alpha:
            if (alphas.size() != 1) throw ContractError("fix_alpha sweep takes exactly one alpha");
            for (double s : alpha_stars) grid.emplace_back(alphas.front(), s);
            break;
        case SweepMode::fix_alpha_star:
            if (alpha_stars.size() != 1) throw ContractError("fix_alpha_star sweep takes exactly one alpha*");
            for (double a : alphas) grid.emplace_back(a, alpha_stars.front());
            break;
    }

    const DirectedGraph inverted = invert(g);
    std::map<double, std::optional<RankVector>> forward, backward;
    auto solve = [&](std::map<double, std::optional<RankVector>>& cache, const DirectedGraph& graph,
                     double a) -> const std::optional<RankVector>& {
        auto it = cache.find(a);
        if (it != cache.end()) return it->second;
        std::optional<RankVector> r;
        try {
            r = pagerank(graph, a, opts);
        } catch (const ConvergenceError&) {
        }
        return cache.emplace(a, std::move(r)).first->second;
    };

    std::vector<SweepPoint> out;
    out.reserve(grid.size());
    for (const auto& [a, s] : grid) {
        SweepPoint pt{a, s, std::numeric_limits<double>::quiet_NaN(), false};
        const auto& p = solve(forward, g, a);
        const auto& ps = solve(backward, inverted, s);
        if (p && ps) {
            pt.kappa = correlator(p->values, ps->values);
            pt.converged = true;
        }
        out.push_back(pt);
    }
    return out;
}

}  // namespace rank2d
