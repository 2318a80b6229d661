#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rank2d/googlerank.hpp"
#include "rank2d/graph.hpp"
#include "rank2d/random.hpp"
#include "rank2d/twodrank.hpp"

namespace rank2d {

/// Reference values measured on the August 2009 English Wikipedia network.
/// They document the design point of the toolkit and are not reproducible
/// without that dataset.
namespace wikipedia2009 {
inline constexpr std::size_t kNodes = 3282257;
inline constexpr double kKappa = 4.08;
inline constexpr double kMuIn = 2.09;
inline constexpr double kMuInError = 0.04;
inline constexpr double kMuOut = 2.76;
inline constexpr double kMuOutError = 0.06;
inline constexpr double kBetaPageRank = 0.92;
inline constexpr double kBetaCheiRank = 0.57;
}  // namespace wikipedia2009

// ---------------------------------------------------------------- correlator

struct Correlator {
    double kappa = 0.0;
    double alpha = kDefaultDamping;
    double alpha_star = kDefaultDamping;
};

/// kappa = N * sum_i P(i) P*(i) - 1.
double correlator(std::span<const double> p, std::span<const double> p_star);
Correlator correlator(const RankVector& p, const RankVector& p_star);

enum class SweepMode { diagonal, fix_alpha, fix_alpha_star };

struct SweepPoint {
    double alpha = 0.0;
    double alpha_star = 0.0;
    double kappa = 0.0;  // NaN when a solve failed
    bool converged = false;
};

/// kappa over a set of damping pairs.
///
/// diagonal:        pairs (a, a) for every a in `alphas`.
/// fix_alpha:       alpha = alphas.front() (exactly one value), alpha* over alpha_stars.
/// fix_alpha_star:  alpha* = alpha_stars.front() (exactly one value), alpha over alphas.
///
/// Damping values must lie strictly inside (0, 1). A solve that fails to
/// converge marks its point and the sweep continues.
std::vector<SweepPoint> correlator_sweep(const DirectedGraph& g, std::span<const double> alphas,
                                         std::span<const double> alpha_stars, SweepMode mode,
                                         const SolverOptions& opts = {});

// -------------------------------------------------------------- density grid

inline constexpr std::size_t kDefaultGridCells = 100;

/// Counts of points on an equidistant cells x cells grid over the
/// (ln K, ln K*) plane, both axes spanning [0, ln N].
struct DensityGrid {
    std::size_t cells = 0;
    std::size_t n_ranks = 0;   // N; the axis range is [0, ln N]
    std::size_t n_points = 0;  // points binned (N for a rank table)
    std::vector<std::uint64_t> counts;  // row-major, index i * cells + j (i: K, j: K*)
    std::vector<double> mass;           // counts / n_points, sums to 1
    std::vector<double> per_area;       // mass / (dK * dK*) of the cell

    double axis_max() const;
    double cell_width() const;
    /// Lower edge of cell i on either axis; edge(cells) == axis_max().
    double edge(std::size_t i) const;
    /// Cell holding coordinate x in [0, axis_max]; cells are half-open,
    /// the last one closed.
    std::size_t cell_of(double x) const;

    std::uint64_t count(std::size_t i, std::size_t j) const { return counts[i * cells + j]; }
    double w(std::size_t i, std::size_t j) const { return mass[i * cells + j]; }
    double density(std::size_t i, std::size_t j) const { return per_area[i * cells + j]; }
};

using RankPair = std::pair<Rank, Rank>;

DensityGrid density_grid(const RankTable& table, std::size_t cells = kDefaultGridCells);

/// Bins arbitrary (K, K*) pairs with ranks in [1, n_ranks].
DensityGrid density_grid(std::span<const RankPair> pairs, std::size_t n_ranks,
                         std::size_t cells = kDefaultGridCells);

enum class SliceField { mass, per_area };

struct EtaSample {
    double eta = 0.0;        // segment midpoint
    double eta_begin = 0.0;  // segment of the line inside this cell
    double eta_end = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    double value = 0.0;
};

/// Profile along ln K = x0 + eta/2, ln K* = x0 - eta/2.
struct EtaSlice {
    double x0 = 0.0;
    SliceField field = SliceField::mass;
    std::vector<EtaSample> samples;

    /// The sample whose segment contains eta.
    const EtaSample& at(double eta) const;
};

/// Walks the line cell by cell and samples each crossed cell once.
EtaSlice slice_density(const DensityGrid& grid, double x0, SliceField field = SliceField::mass);

// ---------------------------------------------------------- power-law fitting

struct FitRange {
    double min = 0.0;
    double max = 0.0;
};

/// bins_per_decade == 0 fits the raw points.
struct Binning {
    unsigned bins_per_decade = 10;
};

struct PowerLawFit {
    double exponent = 0.0;  // positive for a decaying law
    double std_error = 0.0;
    double intercept = 0.0;  // ln y at ln x = 0
    double r_squared = 0.0;
    FitRange fit_range;
    /// Points entering the regression (bin centers when binned).
    std::vector<std::pair<double, double>> points;
};

/// Least-squares slope of ln y versus ln x over the points with x inside
/// fit_range. Raw fits reject non-positive y in range; binned fits average y
/// over logarithmic bins and skip bins with zero mean. At least five
/// (binned) points are required.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y, FitRange range,
                          Binning binning = {});

/// Fits w(k) over a degree histogram; absent degrees inside the range count as zero.
PowerLawFit fit_power_law(const DegreeHistogram& h, FitRange range, Binning binning = {});

/// Fits P(K) with K = 1..N, where `probabilities` is any per-node vector.
PowerLawFit fit_rank_curve(std::span<const double> probabilities, FitRange range, Binning binning = {});

/// Probability values sorted in decreasing order, i.e. the curve P(K).
std::vector<double> rank_curve(std::span<const double> probabilities);

// ------------------------------------------------------------------ sampling

/// Distribution over the integers [k_min, k_min + cdf.size()) given by a CDF table.
class DiscreteDistribution {
public:
    DiscreteDistribution(std::uint64_t k_min, std::vector<double> weights);

    std::uint64_t k_min() const noexcept { return k_min_; }
    std::uint64_t k_max() const noexcept { return k_min_ + cdf_.size() - 1; }
    double cdf(std::uint64_t k) const;
    double pmf(std::uint64_t k) const;
    double mean() const noexcept { return mean_; }

    /// Inverse CDF for u in [0, 1).
    std::uint64_t quantile(double u) const;
    std::uint64_t operator()(Rng& rng) const { return quantile(rng.uniform()); }

private:
    std::uint64_t k_min_;
    std::vector<double> cdf_;
    double mean_ = 0.0;
};

/// p(k) proportional to k^-exponent on [k_min, k_max].
DiscreteDistribution discrete_power_law(double exponent, std::uint64_t k_min, std::uint64_t k_max);

/// Power law on [1, k_max] whose lower cutoff is raised until the mean equals
/// `mean`. The cutoff interpolates between two integers by mixing the laws
/// with cutoffs a and a + 1, which leaves p(k) proportional to k^-exponent
/// for every k > a. Throws ContractError if `mean` is outside
/// [mean of the k_min = 1 law, k_max].
DiscreteDistribution power_law_with_mean(double exponent, double mean, std::uint64_t k_max);

/// n independent pairs, K drawn from `curve_k` and K* from `curve_k_star`
/// (both indexed by rank - 1). Deterministic in (seed, n) for any worker count.
std::vector<RankPair> sample_independent(std::span<const double> curve_k, std::span<const double> curve_k_star,
                                         std::size_t n, std::uint64_t seed, unsigned workers = 1);

/// Null model with independent PageRank and CheiRank: each of n synthetic
/// nodes draws a P value from `curve_k` and a P* value from `curve_k_star`
/// (a uniformly chosen entry each), and both columns are then ranked.
std::vector<RankPair> independent_null_model(std::span<const double> curve_k, std::span<const double> curve_k_star,
                                             std::size_t n, std::uint64_t seed);

// ------------------------------------------------------- synthetic networks

struct ScaleFreeParams {
    std::size_t n = 0;
    double mu_in = wikipedia2009::kMuIn;
    double mu_out = wikipedia2009::kMuOut;
    double mean_degree = 10.0;
    std::uint64_t seed = 0;
};

/// Directed configuration model. In- and out-degrees are drawn i.i.d. from
/// power_law_with_mean(mu, mean_degree, n); the side with more stubs is
/// trimmed at random (never below one stub per node) and the stubs are
/// matched uniformly. Nodes are named "n0", "n1", ... Parallel links merge
/// into multiplicities and self-loops are kept.
DirectedGraph generate_scale_free(const ScaleFreeParams& params);

}  // namespace rank2d
