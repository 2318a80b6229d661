#include <algorithm>
#include <cmath>

#include "rank2d/errors.hpp"
#include "rank2d/netstats.hpp"

namespace rank2d {

double DensityGrid::axis_max() const { return std::log(static_cast<double>(n_ranks)); }

double DensityGrid::cell_width() const { return axis_max() / static_cast<double>(cells); }

double DensityGrid::edge(std::size_t i) const {
    if (i >= cells) return axis_max();
    return axis_max() * static_cast<double>(i) / static_cast<double>(cells);
}

std::size_t DensityGrid::cell_of(double x) const {
    if (x <= 0.0) return 0;
    if (x >= axis_max()) return cells - 1;
    auto i = static_cast<std::size_t>(x / cell_width());
    i = std::min(i, cells - 1);
    // Agree exactly with edge() at boundaries.
    while (i > 0 && x < edge(i)) --i;
    while (i + 1 < cells && x >= edge(i + 1)) ++i;
    return i;
}

namespace {

DensityGrid empty_grid(std::size_t n_ranks, std::size_t cells) {
    if (cells < 2) throw ContractError("density grid needs at least 2 cells per axis");
    if (n_ranks < 2) throw ContractError("density grid needs N >= 2 for a non-degenerate log range");
    DensityGrid g;
    g.cells = cells;
    g.n_ranks = n_ranks;
    g.counts.assign(cells * cells, 0);
    return g;
}

void finish(DensityGrid& g) {
    const double n = static_cast<double>(g.n_points);
    g.mass.resize(g.counts.size());
    g.per_area.resize(g.counts.size());
    std::vector<double> extent(g.cells);
    for (std::size_t i = 0; i < g.cells; ++i) extent[i] = std::exp(g.edge(i + 1)) - std::exp(g.edge(i));
    for (std::size_t i = 0; i < g.cells; ++i) {
        for (std::size_t j = 0; j < g.cells; ++j) {
            const std::size_t c = i * g.cells + j;
            g.mass[c] = n > 0 ? static_cast<double>(g.counts[c]) / n : 0.0;
            g.per_area[c] = g.mass[c] / (extent[i] * extent[j]);
        }
    }
}

}  // namespace

DensityGrid density_grid(const RankTable& table, std::size_t cells) {
    DensityGrid g = empty_grid(table.size(), cells);
    for (std::size_t node = 0; node < table.size(); ++node) {
        const std::size_t i = g.cell_of(std::log(static_cast<double>(table.k[node])));
        const std::size_t j = g.cell_of(std::log(static_cast<double>(table.k_star[node])));
        ++g.counts[i * cells + j];
    }
    g.n_points = table.size();
    finish(g);
    return g;
}

DensityGrid density_grid(std::span<const RankPair> pairs, std::size_t n_ranks, std::size_t cells) {
    DensityGrid g = empty_grid(n_ranks, cells);
    for (const auto& [k, ks] : pairs) {
        if (k < 1 || ks < 1 || k > n_ranks || ks > n_ranks) throw ContractError("rank pair outside [1, N]");
        const std::size_t i = g.cell_of(std::log(static_cast<double>(k)));
        const std::size_t j = g.cell_of(std::log(static_cast<double>(ks)));
        ++g.counts[i * cells + j];
    }
    g.n_points = pairs.size();
    finish(g);
    return g;
}

const EtaSample& EtaSlice::at(double eta) const {
    if (samples.empty()) throw ContractError("empty slice");
    for (const auto& s : samples)
        if (eta >= s.eta_begin && eta < s.eta_end) return s;
    if (eta == samples.back().eta_end) return samples.back();
    throw ContractError("eta outside the sliced range");
}

EtaSlice slice_density(const DensityGrid& grid, double x0, SliceField field) {
    const double top = grid.axis_max();
    if (!(x0 >= 0.0 && x0 <= top)) throw ContractError("x0 outside the grid axis range");

    EtaSlice slice;
    slice.x0 = x0;
    slice.field = field;
    const auto& values = field == SliceField::mass ? grid.mass : grid.per_area;

    const double reach = 2.0 * std::min(x0, top - x0);
    if (reach == 0.0) {
        const std::size_t c = grid.cell_of(x0);
        slice.samples.push_back({0.0, 0.0, 0.0, c, c, values[c * grid.cells + c]});
        return slice;
    }

    // Parameters where either coordinate crosses a cell edge.
    std::vector<double> cuts{-reach, reach};
    for (std::size_t e = 1; e < grid.cells; ++e) {
        const double edge = grid.edge(e);
        for (double eta : {2.0 * (edge - x0), 2.0 * (x0 - edge)})
            if (eta > -reach && eta < reach) cuts.push_back(eta);
    }
    std::sort(cuts.begin(), cuts.end());
    // Merge cuts that coincide up to rounding (the line passing a cell corner).
    const double merge = 1e-12 * std::max(1.0, reach);
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [&](double a, double b) { return b - a <= merge; }),
               cuts.end());

    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double lo = cuts[s];
        const double hi = cuts[s + 1];
        const double mid = 0.5 * (lo + hi);
        const std::size_t i = grid.cell_of(x0 + mid / 2.0);
        const std::size_t j = grid.cell_of(x0 - mid / 2.0);
        slice.samples.push_back({mid, lo, hi, i, j, values[i * grid.cells + j]});
    }
    return slice;
}

}  // namespace rank2d
