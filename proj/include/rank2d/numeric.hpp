#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace rank2d {

/// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) {
    CompensatedSum s;
    for (double v : values) s += v;
    return s.value();
}

/// Fixed-size node blocks. Reductions are combined per block in block order,
/// so results do not depend on how many workers process the blocks.
inline constexpr std::size_t kBlockSize = 1u << 14;

inline std::size_t block_count(std::size_t n) { return (n + kBlockSize - 1) / kBlockSize; }

/// Runs fn(block) for every block, spreading blocks over `workers` threads.
inline void for_each_block(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
    const std::size_t blocks = block_count(n);
    const std::size_t threads = std::min<std::size_t>(std::max(1u, workers), blocks);
    if (threads <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) fn(b);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t b = t; b < blocks; b += threads) fn(b);
        });
}

}  // namespace rank2d
