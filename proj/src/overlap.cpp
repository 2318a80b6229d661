#include "rank2d/overlap.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "rank2d/errors.hpp"
#include "rank2d/graph.hpp"

namespace rank2d {

RankedList::RankedList(std::vector<std::string> names) : names_(std::move(names)) {
    std::unordered_set<std::string_view> seen;
    seen.reserve(names_.size());
    for (const auto& n : names_)
        if (!seen.insert(n).second) throw ContractError("ranked list repeats '" + n + "'");
}

RankedList load_ranked_list(std::istream& in) {
    std::vector<std::string> names;
    std::unordered_map<std::string, std::size_t> first_line;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto [it, inserted] = first_line.emplace(std::string(t), lineno);
        if (!inserted)
            throw ParseError("duplicate name '" + it->first + "' (first seen on line " +
                                 std::to_string(it->second) + ")",
                             lineno);
        names.emplace_back(t);
    }
    if (in.bad()) throw ParseError("read failure");
    return RankedList(std::move(names));
}

namespace {

void check_depth(const RankedList& a, const RankedList& b, std::size_t ks) {
    if (ks == 0) throw ContractError("rank depth must be at least 1");
    if (ks > std::min(a.size(), b.size()))
        throw ContractError("rank depth " + std::to_string(ks) + " exceeds the shorter list (" +
                            std::to_string(std::min(a.size(), b.size())) + ")");
}

}  // namespace

double overlap_fraction(const RankedList& a, const RankedList& b, std::size_t ks) {
    check_depth(a, b, ks);
    std::unordered_set<std::string_view> top(a.names().begin(), a.names().begin() + static_cast<std::ptrdiff_t>(ks));
    std::size_t shared = 0;
    for (std::size_t i = 0; i < ks; ++i) shared += top.count(b[i]);
    return static_cast<double>(shared) / static_cast<double>(ks);
}

OverlapSeries overlap_curve(const RankedList& a, const RankedList& b, std::size_t ks_max) {
    check_depth(a, b, ks_max);
    OverlapSeries s{OverlapKind::cumulative_f, 0, {}};
    s.points.reserve(ks_max);
    std::unordered_set<std::string_view> seen_a, seen_b;
    std::size_t shared = 0;
    for (std::size_t ks = 1; ks <= ks_max; ++ks) {
        const std::string& x = a[ks - 1];
        const std::string& y = b[ks - 1];
        seen_a.insert(x);
        seen_b.insert(y);
        if (x == y) {
            ++shared;
        } else {
            shared += seen_b.count(x);
            shared += seen_a.count(y);
        }
        s.points.push_back({static_cast<double>(ks), static_cast<double>(shared) / static_cast<double>(ks)});
    }
    return s;
}

OverlapSeries window_overlap(const RankedList& a, const RankedList& b, std::size_t window) {
    if (window == 0 || window > std::min(a.size(), b.size()))
        throw ContractError("window must lie in [1, min(|a|, |b|)]");
    OverlapSeries s{OverlapKind::window_fw, window, {}};
    const std::size_t depth = std::min(a.size(), b.size());
    for (std::size_t m = 0; m + window <= depth; m += window) {
        std::unordered_set<std::string_view> in_a;
        for (std::size_t i = m; i < m + window; ++i) in_a.insert(a[i]);
        std::size_t shared = 0;
        for (std::size_t i = m; i < m + window; ++i) shared += in_a.count(b[i]);
        s.points.push_back({static_cast<double>(m) + static_cast<double>(window) / 2.0,
                            static_cast<double>(shared) / static_cast<double>(window)});
    }
    return s;
}

OverlapSeries subset_window_fraction(const RankedList& ranking, std::span<const std::string> subset,
                                     std::size_t window) {
    if (subset.empty()) throw ContractError("subset is empty");
    if (window == 0 || window > ranking.size()) throw ContractError("window must lie in [1, |ranking|]");

    std::unordered_map<std::string_view, std::size_t> position;
    position.reserve(ranking.size());
    for (std::size_t i = 0; i < ranking.size(); ++i) position.emplace(ranking[i], i);

    std::vector<bool> member(ranking.size(), false);
    for (const auto& name : subset) {
        auto it = position.find(name);
        if (it == position.end()) throw ContractError("subset name '" + name + "' is not in the ranking");
        member[it->second] = true;
    }

    OverlapSeries s{OverlapKind::subset_fw, window, {}};
    for (std::size_t m = 0; m + window <= ranking.size(); m += window) {
        const auto hits = std::count(member.begin() + static_cast<std::ptrdiff_t>(m),
                                     member.begin() + static_cast<std::ptrdiff_t>(m + window), true);
        s.points.push_back({static_cast<double>(m) + static_cast<double>(window) / 2.0,
                            static_cast<double>(hits) / static_cast<double>(window)});
    }
    return s;
}

}  // namespace rank2d
