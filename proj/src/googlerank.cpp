#include "rank2d/googlerank.hpp"

#include <cmath>

#include "rank2d/errors.hpp"
#include "rank2d/numeric.hpp"

namespace rank2d {

std::string to_string(RankKind kind) { return kind == RankKind::pagerank ? "pagerank" : "cheirank"; }

RankKind rank_kind_from_string(const std::string& s) {
    if (s == "pagerank") return RankKind::pagerank;
    if (s == "cheirank") return RankKind::cheirank;
    throw ParseError("unknown rank kind '" + s + "'");
}

ConvergenceError::ConvergenceError(RankVector last)
    : std::runtime_error(to_string(last.kind) + " did not converge after " + std::to_string(last.iterations) +
                         " iterations (residual " + std::to_string(last.residual) + ")"),
      last_(std::move(last)) {}

namespace {

void check_damping(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ContractError("damping factor must lie in (0, 1]");
}

void check_probability(std::span<const double> v, std::size_t n) {
    if (v.size() != n) throw ContractError("vector length does not match graph size");
    CompensatedSum sum;
    for (double x : v) {
        if (!(x >= 0.0)) throw ContractError("probability vector has a negative or NaN entry");
        sum += x;
    }
    if (std::abs(sum.value() - 1.0) > kInputNormTolerance)
        throw ContractError("input vector is not normalized (sum = " + std::to_string(sum.value()) + ")");
}

/// Block partial reduction combined in block order.
template <typename BlockFn>
double reduce_blocks(std::size_t n, unsigned workers, BlockFn&& fn) {
    std::vector<double> partial(block_count(n), 0.0);
    for_each_block(n, workers, [&](std::size_t b) {
        const std::size_t lo = b * kBlockSize;
        const std::size_t hi = std::min(n, lo + kBlockSize);
        partial[b] = fn(lo, hi);
    });
    return compensated_sum(partial);
}

}  // namespace

GoogleOperator::GoogleOperator(const DirectedGraph& g, double alpha)
    : n_(g.n_nodes()), alpha_(alpha), incoming_(invert(g)), inv_out_weight_(g.n_nodes(), 0.0) {
    check_damping(alpha);
    if (n_ == 0) throw ContractError("graph has no nodes");
    for (NodeIndex j = 0; j < n_; ++j) {
        const auto w = g.out_weight(j);
        if (w == 0)
            dangling_.push_back(j);
        else
            inv_out_weight_[j] = 1.0 / static_cast<double>(w);
    }
}

void GoogleOperator::apply(std::span<const double> in, std::span<double> out, unsigned workers) const {
    check_probability(in, n_);
    if (out.size() != n_) throw ContractError("output length does not match graph size");

    CompensatedSum dangling_mass;
    for (NodeIndex j : dangling_) dangling_mass += in[j];
    const double nd = static_cast<double>(n_);
    const double base = (alpha_ * dangling_mass.value() + (1.0 - alpha_)) / nd;

    for_each_block(n_, workers, [&](std::size_t b) {
        const std::size_t lo = b * kBlockSize;
        const std::size_t hi = std::min(n_, lo + kBlockSize);
        for (std::size_t i = lo; i < hi; ++i) {
            double acc = 0.0;
            for (const Neighbor& nb : incoming_.out(static_cast<NodeIndex>(i)))
                acc += static_cast<double>(nb.multiplicity) * in[nb.target] * inv_out_weight_[nb.target];
            out[i] = alpha_ * acc + base;
        }
    });
}

std::vector<double> apply_google(const DirectedGraph& g, double alpha, std::span<const double> v) {
    GoogleOperator op(g, alpha);
    std::vector<double> out(op.size());
    op.apply(v, out);
    return out;
}

RankVector pagerank(const DirectedGraph& g, double alpha, const SolverOptions& opts) {
    if (!(opts.tol > 0.0)) throw ContractError("tolerance must be positive");
    if (opts.max_iter == 0) throw ContractError("max_iter must be positive");
    const GoogleOperator op(g, alpha);
    const std::size_t n = op.size();
    const unsigned workers = std::max(1u, opts.workers);

    RankVector result;
    result.kind = RankKind::pagerank;
    result.alpha = alpha;
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> y(n);

    for (std::size_t iter = 1; iter <= opts.max_iter; ++iter) {
        op.apply(x, y, workers);

        // Renormalize to keep the unit-sum contract at large N.
        const double mass = reduce_blocks(n, workers, [&](std::size_t lo, std::size_t hi) {
            CompensatedSum s;
            for (std::size_t i = lo; i < hi; ++i) s += y[i];
            return s.value();
        });
        const double scale = 1.0 / mass;
        const double residual = reduce_blocks(n, workers, [&](std::size_t lo, std::size_t hi) {
            CompensatedSum s;
            for (std::size_t i = lo; i < hi; ++i) {
                y[i] *= scale;
                s += std::abs(y[i] - x[i]);
            }
            return s.value();
        });

        x.swap(y);
        result.iterations = iter;
        result.residual = residual;
        if (opts.keep_history) result.residual_history.push_back(residual);
        if (residual < opts.tol) {
            result.values = std::move(x);
            return result;
        }
    }
    result.values = std::move(x);
    throw ConvergenceError(std::move(result));
}

RankVector cheirank(const DirectedGraph& g, double alpha_star, const SolverOptions& opts) {
    try {
        RankVector r = pagerank(invert(g), alpha_star, opts);
        r.kind = RankKind::cheirank;
        return r;
    } catch (const ConvergenceError& e) {
        RankVector last = e.last();
        last.kind = RankKind::cheirank;
        throw ConvergenceError(std::move(last));
    }
}

}  // namespace rank2d
