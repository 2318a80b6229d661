#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "rank2d/errors.hpp"
#include "rank2d/netstats.hpp"
#include "rank2d/numeric.hpp"

namespace rank2d {

DiscreteDistribution::DiscreteDistribution(std::uint64_t k_min, std::vector<double> weights) : k_min_(k_min) {
    if (weights.empty()) throw ContractError("distribution needs at least one support point");
    CompensatedSum total;
    for (double w : weights) {
        if (!(w >= 0.0)) throw ContractError("distribution weights must be non-negative");
        total += w;
    }
    if (!(total.value() > 0.0)) throw ContractError("distribution weights sum to zero");

    cdf_.resize(weights.size());
    CompensatedSum running, first_moment;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        running += weights[i];
        first_moment += weights[i] * static_cast<double>(k_min + i);
        cdf_[i] = running.value() / total.value();
    }
    cdf_.back() = 1.0;
    mean_ = first_moment.value() / total.value();
}

double DiscreteDistribution::cdf(std::uint64_t k) const {
    if (k < k_min_) return 0.0;
    if (k >= k_max()) return 1.0;
    return cdf_[k - k_min_];
}

double DiscreteDistribution::pmf(std::uint64_t k) const {
    if (k < k_min_ || k > k_max()) return 0.0;
    const std::size_t i = k - k_min_;
    return i == 0 ? cdf_[0] : cdf_[i] - cdf_[i - 1];
}

std::uint64_t DiscreteDistribution::quantile(double u) const {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto i = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf_.begin(),
                                                                       static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
    return k_min_ + i;
}

DiscreteDistribution discrete_power_law(double exponent, std::uint64_t k_min, std::uint64_t k_max) {
    if (k_min < 1 || k_max < k_min) throw ContractError("power law support must satisfy 1 <= k_min <= k_max");
    std::vector<double> w(k_max - k_min + 1);
    for (std::uint64_t k = k_min; k <= k_max; ++k) w[k - k_min] = std::pow(static_cast<double>(k), -exponent);
    return DiscreteDistribution(k_min, std::move(w));
}

DiscreteDistribution power_law_with_mean(double exponent, double mean, std::uint64_t k_max) {
    if (k_max < 2) throw ContractError("power law cutoff must be at least 2");
    // Suffix sums of k^-mu and k^(1-mu) give the mean of every lower cutoff a.
    std::vector<double> s0(k_max + 2, 0.0), s1(k_max + 2, 0.0);
    for (std::uint64_t k = k_max; k >= 1; --k) {
        const double w = std::pow(static_cast<double>(k), -exponent);
        s0[k] = s0[k + 1] + w;
        s1[k] = s1[k + 1] + w * static_cast<double>(k);
    }
    auto mean_from = [&](std::uint64_t a) { return s1[a] / s0[a]; };

    if (!(mean >= mean_from(1)) || !(mean <= static_cast<double>(k_max)))
        throw ContractError("mean degree " + std::to_string(mean) + " is infeasible for exponent " +
                            std::to_string(exponent) + " with cutoff " + std::to_string(k_max) +
                            " (feasible range [" + std::to_string(mean_from(1)) + ", " + std::to_string(k_max) +
                            "])");

    std::uint64_t a = 1;
    while (a < k_max && mean_from(a + 1) <= mean) ++a;
    if (a == k_max) return discrete_power_law(exponent, k_max, k_max);

    // Mixture q * law(a) + (1 - q) * law(a + 1) has mean q*m_a + (1-q)*m_{a+1}.
    const double ma = mean_from(a);
    const double mb = mean_from(a + 1);
    const double q = mb > ma ? (mb - mean) / (mb - ma) : 1.0;
    std::vector<double> w(k_max - a + 1);
    const double tail_scale = q / s0[a] + (1.0 - q) / s0[a + 1];
    w[0] = q * std::pow(static_cast<double>(a), -exponent) / s0[a];
    for (std::uint64_t k = a + 1; k <= k_max; ++k)
        w[k - a] = std::pow(static_cast<double>(k), -exponent) * tail_scale;
    return DiscreteDistribution(a, std::move(w));
}

namespace {

void check_curve(std::span<const double> curve) {
    if (curve.empty()) throw ContractError("rank curve is empty");
    CompensatedSum s;
    for (double v : curve) {
        if (!(v >= 0.0)) throw ContractError("rank curve has a negative or NaN entry");
        s += v;
    }
    if (std::abs(s.value() - 1.0) > kInputNormTolerance) throw ContractError("rank curve is not normalized");
}

constexpr std::size_t kSampleChunk = 1u << 16;

}  // namespace

std::vector<RankPair> sample_independent(std::span<const double> curve_k, std::span<const double> curve_k_star,
                                         std::size_t n, std::uint64_t seed, unsigned workers) {
    check_curve(curve_k);
    check_curve(curve_k_star);
    if (n == 0) throw ContractError("sample size must be positive");

    const DiscreteDistribution law_k(1, {curve_k.begin(), curve_k.end()});
    const DiscreteDistribution law_ks(1, {curve_k_star.begin(), curve_k_star.end()});

    std::vector<RankPair> out(n);
    const std::size_t chunks = (n + kSampleChunk - 1) / kSampleChunk;
    const std::size_t threads = std::min<std::size_t>(std::max(1u, workers), chunks);
    auto run = [&](std::size_t first_chunk) {
        for (std::size_t c = first_chunk; c < chunks; c += threads) {
            Rng rng(derive_seed(seed, c));
            const std::size_t hi = std::min(n, (c + 1) * kSampleChunk);
            for (std::size_t i = c * kSampleChunk; i < hi; ++i) {
                const auto k = static_cast<Rank>(law_k(rng));
                const auto ks = static_cast<Rank>(law_ks(rng));
                out[i] = {k, ks};
            }
        }
    };
    if (threads <= 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run, t);
    }
    return out;
}

std::vector<RankPair> independent_null_model(std::span<const double> curve_k, std::span<const double> curve_k_star,
                                             std::size_t n, std::uint64_t seed) {
    check_curve(curve_k);
    check_curve(curve_k_star);
    if (n == 0) throw ContractError("sample size must be positive");

    // Repeated values are common when n exceeds the curve length; ties are
    // broken by an independent random key per column.
    auto ranked = [&](std::span<const double> curve, std::uint64_t stream) {
        Rng rng(derive_seed(seed, stream));
        std::vector<std::pair<double, std::uint64_t>> keyed(n);
        for (auto& [value, tiebreak] : keyed) {
            value = curve[rng.below(curve.size())];
            tiebreak = rng.next();
        }
        std::vector<NodeIndex> order(n);
        std::iota(order.begin(), order.end(), NodeIndex{0});
        std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
            if (keyed[a].first != keyed[b].first) return keyed[a].first > keyed[b].first;
            if (keyed[a].second != keyed[b].second) return keyed[a].second < keyed[b].second;
            return a < b;
        });
        std::vector<Rank> position(n);
        for (std::size_t r = 0; r < n; ++r) position[order[r]] = static_cast<Rank>(r + 1);
        return position;
    };
    const auto k = ranked(curve_k, 1);
    const auto ks = ranked(curve_k_star, 2);
    std::vector<RankPair> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = {k[i], ks[i]};
    return out;
}

}  // namespace rank2d
