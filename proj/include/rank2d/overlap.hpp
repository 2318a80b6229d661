#pragma once

#include <istream>
#include <span>
#include <string>
#include <vector>

namespace rank2d {

inline constexpr std::size_t kDefaultWindow = 20;

/// Distinct names, best rank first.
class RankedList {
public:
    RankedList() = default;
    /// Throws ContractError on a repeated name.
    explicit RankedList(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& operator[](std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const noexcept { return names_; }

private:
    std::vector<std::string> names_;
};

/// One name per line, '#' comments and blank lines skipped. A repeated name
/// is a ParseError naming its line.
RankedList load_ranked_list(std::istream& in);

enum class OverlapKind { cumulative_f, window_fw, subset_fw };

struct OverlapPoint {
    double x = 0.0;
    double f = 0.0;
};

struct OverlapSeries {
    OverlapKind kind = OverlapKind::cumulative_f;
    std::size_t window = 0;
    std::vector<OverlapPoint> points;
};

/// |top_ks(a) & top_ks(b)| / ks. ks must lie in [1, min(|a|, |b|)].
double overlap_fraction(const RankedList& a, const RankedList& b, std::size_t ks);

/// f(ks) for ks = 1..ks_max, computed incrementally.
OverlapSeries overlap_curve(const RankedList& a, const RankedList& b, std::size_t ks_max);

/// Shared-name fraction inside consecutive non-overlapping windows
/// [m, m + w); the point sits at x = m + w/2. A trailing partial window is dropped.
OverlapSeries window_overlap(const RankedList& a, const RankedList& b, std::size_t window = kDefaultWindow);

/// Fraction of entries inside each window that belong to `subset`. Every
/// subset name must occur in the ranking.
OverlapSeries subset_window_fraction(const RankedList& ranking, std::span<const std::string> subset,
                                     std::size_t window = kDefaultWindow);

}  // namespace rank2d
