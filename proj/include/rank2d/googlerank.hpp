#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rank2d/graph.hpp"

namespace rank2d {

inline constexpr double kDefaultDamping = 0.85;
inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr std::size_t kDefaultMaxIterations = 1000;

/// Tolerance on |sum(v) - 1| accepted for operator input.
inline constexpr double kInputNormTolerance = 1e-9;

enum class RankKind { pagerank, cheirank };

std::string to_string(RankKind kind);
RankKind rank_kind_from_string(const std::string& s);

struct DampingParams {
    double alpha = kDefaultDamping;
    double alpha_star = kDefaultDamping;
};

struct SolverOptions {
    double tol = kDefaultTolerance;
    std::size_t max_iter = kDefaultMaxIterations;
    unsigned workers = 1;
    /// When set, the L1 residual of every iteration is recorded.
    bool keep_history = false;
};

struct RankVector {
    RankKind kind = RankKind::pagerank;
    double alpha = kDefaultDamping;
    std::vector<double> values;
    std::size_t iterations = 0;
    double residual = 0.0;
    std::vector<double> residual_history;
};

/// Power iteration stopped at max_iter; carries the last iterate.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(RankVector last);
    const RankVector& last() const noexcept { return last_; }

private:
    RankVector last_;
};

/// Google matrix G = alpha*S + (1-alpha)/N applied without materializing it.
///
/// S is the multiplicity-weighted column-stochastic link matrix; columns of
/// dangling nodes are uniform, handled as one rank-1 correction per product.
class GoogleOperator {
public:
    GoogleOperator(const DirectedGraph& g, double alpha);

    std::size_t size() const noexcept { return n_; }
    double alpha() const noexcept { return alpha_; }

    /// out = G * in. Input must be a probability vector.
    void apply(std::span<const double> in, std::span<double> out, unsigned workers = 1) const;

private:
    std::size_t n_;
    double alpha_;
    DirectedGraph incoming_;              // links reversed: row i lists j with j -> i
    std::vector<double> inv_out_weight_;  // 0 for dangling nodes
    std::vector<NodeIndex> dangling_;
};

/// One product G*v for a single vector.
std::vector<double> apply_google(const DirectedGraph& g, double alpha, std::span<const double> v);

/// Stationary vector of G by power iteration from the uniform vector, with an
/// L1 stopping rule on successive iterates.
RankVector pagerank(const DirectedGraph& g, double alpha = kDefaultDamping, const SolverOptions& opts = {});

/// PageRank of the link-inverted graph.
RankVector cheirank(const DirectedGraph& g, double alpha_star = kDefaultDamping, const SolverOptions& opts = {});

}  // namespace rank2d
