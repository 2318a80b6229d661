#include <algorithm>
#include <cmath>
#include <functional>

#include "rank2d/errors.hpp"
#include "rank2d/netstats.hpp"

namespace rank2d {

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    double r_squared = 0.0;
};

LineFit least_squares(const std::vector<std::pair<double, double>>& pts) {
    const double m = static_cast<double>(pts.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0) throw ContractError("fit points share a single abscissa");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0.0;
    for (const auto& [x, y] : pts) {
        const double r = y - (f.intercept + f.slope * x);
        sse += r * r;
    }
    f.slope_se = std::sqrt(sse / (m - 2.0) / sxx);
    f.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    return f;
}

constexpr std::size_t kMinFitPoints = 5;

}  // namespace

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y, FitRange range, Binning binning) {
    if (x.size() != y.size()) throw ContractError("x and y differ in length");
    if (!(range.min > 0.0 && range.max > range.min)) throw ContractError("fit range must satisfy 0 < min < max");

    std::vector<std::pair<double, double>> log_pts;
    std::vector<std::pair<double, double>> used;

    if (binning.bins_per_decade == 0) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] < range.min || x[i] > range.max) continue;
            if (!(y[i] > 0.0)) throw ContractError("non-positive value inside the fit range");
            log_pts.emplace_back(std::log(x[i]), std::log(y[i]));
            used.emplace_back(x[i], y[i]);
        }
    } else {
        // Bin b covers [min * r^b, min * r^(b+1)), r = 10^(1/bins_per_decade).
        const double per_decade = static_cast<double>(binning.bins_per_decade);
        const double span_decades = std::log10(range.max / range.min);
        const auto n_bins = static_cast<std::size_t>(std::ceil(span_decades * per_decade - 1e-9)) + 1;
        std::vector<double> sum_y(n_bins, 0.0), sum_lnx(n_bins, 0.0);
        std::vector<std::size_t> members(n_bins, 0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] < range.min || x[i] > range.max) continue;
            if (y[i] < 0.0) throw ContractError("negative value inside the fit range");
            auto b = static_cast<std::size_t>(std::floor(std::log10(x[i] / range.min) * per_decade + 1e-12));
            b = std::min(b, n_bins - 1);
            sum_y[b] += y[i];
            sum_lnx[b] += std::log(x[i]);
            ++members[b];
        }
        for (std::size_t b = 0; b < n_bins; ++b) {
            if (members[b] == 0 || sum_y[b] <= 0.0) continue;
            const double cnt = static_cast<double>(members[b]);
            const double lx = sum_lnx[b] / cnt;
            const double ly = std::log(sum_y[b] / cnt);
            log_pts.emplace_back(lx, ly);
            used.emplace_back(std::exp(lx), sum_y[b] / cnt);
        }
    }
    if (log_pts.size() < kMinFitPoints)
        throw ContractError("power-law fit needs at least 5 usable points, got " + std::to_string(log_pts.size()));

    const LineFit line = least_squares(log_pts);
    PowerLawFit fit;
    fit.exponent = -line.slope;
    fit.std_error = line.slope_se;
    fit.intercept = line.intercept;
    fit.r_squared = line.r_squared;
    fit.fit_range = range;
    fit.points = std::move(used);
    return fit;
}

PowerLawFit fit_power_law(const DegreeHistogram& h, FitRange range, Binning binning) {
    if (!(range.min >= 1.0 && range.max > range.min)) throw ContractError("degree fit range must satisfy 1 <= min < max");
    const double total = static_cast<double>(h.total());
    if (total == 0.0) throw ContractError("empty degree histogram");
    std::vector<double> x, y;
    const auto lo = static_cast<std::uint64_t>(std::ceil(range.min));
    const auto hi = static_cast<std::uint64_t>(std::floor(range.max));
    if (binning.bins_per_decade == 0) {
        for (const auto& [k, c] : h.counts)
            if (k >= lo && k <= hi) {
                x.push_back(static_cast<double>(k));
                y.push_back(static_cast<double>(c) / total);
            }
    } else {
        for (std::uint64_t k = lo; k <= hi; ++k) {
            auto it = h.counts.find(k);
            x.push_back(static_cast<double>(k));
            y.push_back(it == h.counts.end() ? 0.0 : static_cast<double>(it->second) / total);
        }
    }
    return fit_power_law(x, y, range, binning);
}

std::vector<double> rank_curve(std::span<const double> probabilities) {
    std::vector<double> curve(probabilities.begin(), probabilities.end());
    std::sort(curve.begin(), curve.end(), std::greater<>());
    return curve;
}

PowerLawFit fit_rank_curve(std::span<const double> probabilities, FitRange range, Binning binning) {
    const auto curve = rank_curve(probabilities);
    std::vector<double> ranks(curve.size());
    for (std::size_t r = 0; r < ranks.size(); ++r) ranks[r] = static_cast<double>(r + 1);
    return fit_power_law(ranks, curve, range, binning);
}

}  // namespace rank2d
