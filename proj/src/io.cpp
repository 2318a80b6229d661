#include "rank2d/io.hpp"

#include <charconv>
#include <limits>
#include <map>
#include <sstream>

#include "rank2d/errors.hpp"

namespace rank2d {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("cannot format double");
    return {buf, ptr};
}

double parse_double(std::string_view text, std::size_t line) {
    text = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError("expected a number, got '" + std::string(text) + "'", line);
    return v;
}

namespace {

std::uint64_t parse_uint(std::string_view text, std::size_t line) {
    text = trim(text);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError("expected a non-negative integer, got '" + std::string(text) + "'", line);
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

/// Parses "# tag key=value key=value ..." into a map; checks the tag.
std::map<std::string, std::string> parse_header(const std::string& line, std::string_view tag, std::size_t lineno) {
    std::istringstream ss(line);
    std::string hash, word;
    ss >> hash >> word;
    if (hash != "#" || word != tag) throw ParseError("expected a '# " + std::string(tag) + "' header", lineno);
    std::map<std::string, std::string> kv;
    while (ss >> word) {
        const auto eq = word.find('=');
        if (eq == std::string::npos) throw ParseError("malformed header field '" + word + "'", lineno);
        kv[word.substr(0, eq)] = word.substr(eq + 1);
    }
    return kv;
}

const std::string& require(const std::map<std::string, std::string>& kv, const std::string& key, std::size_t line) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("header lacks '" + key + "'", line);
    return it->second;
}

}  // namespace

void write_rank_vector(const RankVector& v, const NodeTable& nodes, std::ostream& out) {
    if (nodes.size() != v.values.size()) throw ContractError("rank vector and node table differ in size");
    out << "# rank-vector kind=" << to_string(v.kind) << " alpha=" << format_double(v.alpha)
        << " iterations=" << v.iterations << " residual=" << format_double(v.residual) << '\n';
    for (std::size_t i = 0; i < v.values.size(); ++i)
        out << nodes.name(static_cast<NodeIndex>(i)) << '\t' << format_double(v.values[i]) << '\n';
}

LoadedRankVector read_rank_vector(std::istream& in) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line)) throw ParseError("empty rank vector file");
    const auto kv = parse_header(line, "rank-vector", lineno);

    LoadedRankVector result;
    result.vector.kind = rank_kind_from_string(require(kv, "kind", lineno));
    result.vector.alpha = parse_double(require(kv, "alpha", lineno), lineno);
    result.vector.iterations = parse_uint(require(kv, "iterations", lineno), lineno);
    result.vector.residual = parse_double(require(kv, "residual", lineno), lineno);

    auto nodes = std::make_shared<NodeTable>();
    while (std::getline(in, line)) {
        ++lineno;
        const auto fields = split(line, '\t');
        if (fields.size() != 2) throw ParseError("expected 'name TAB probability'", lineno);
        if (nodes->find(fields[0])) throw ParseError("repeated node '" + std::string(fields[0]) + "'", lineno);
        nodes->add(std::string(fields[0]));
        result.vector.values.push_back(parse_double(fields[1], lineno));
    }
    result.nodes = std::move(nodes);
    return result;
}

void write_rank_table(const RankTable& table, const TableMeta& meta, std::ostream& out) {
    table.validate();
    out << "# rank-table graph_hash=" << (meta.graph_hash.empty() ? "none" : meta.graph_hash)
        << " alpha=" << format_double(meta.alpha) << " alpha_star=" << format_double(meta.alpha_star)
        << " tol=" << format_double(meta.tol) << " max_iter=" << meta.max_iter << '\n';
    out << "#name\tP\tK\tP*\tK*\tK2\n";
    const auto order = RankIndex::from_positions(RankIndexKind::K, table.k).order;
    for (NodeIndex node : order) {
        out << table.name(node) << '\t' << format_double(table.p[node]) << '\t' << table.k[node] << '\t'
            << format_double(table.p_star[node]) << '\t' << table.k_star[node] << '\t' << table.k2[node] << '\n';
    }
}

LoadedRankTable read_rank_table(std::istream& in) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line)) throw ParseError("empty rank table file");
    const auto kv = parse_header(line, "rank-table", lineno);

    LoadedRankTable result;
    result.meta.graph_hash = require(kv, "graph_hash", lineno);
    if (result.meta.graph_hash == "none") result.meta.graph_hash.clear();
    result.meta.alpha = parse_double(require(kv, "alpha", lineno), lineno);
    result.meta.alpha_star = parse_double(require(kv, "alpha_star", lineno), lineno);
    result.meta.tol = parse_double(require(kv, "tol", lineno), lineno);
    result.meta.max_iter = parse_uint(require(kv, "max_iter", lineno), lineno);

    auto nodes = std::make_shared<NodeTable>();
    RankTable& t = result.table;
    bool in_header = true;
    auto to_rank = [&](std::string_view text) {
        const auto r = parse_uint(text, lineno);
        if (r == 0 || r > std::numeric_limits<Rank>::max()) throw ParseError("rank out of range", lineno);
        return static_cast<Rank>(r);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (in_header && !line.empty() && line.front() == '#') continue;
        in_header = false;
        const auto f = split(line, '\t');
        if (f.size() != 6) throw ParseError("expected 6 tab-separated columns, got " + std::to_string(f.size()), lineno);
        if (nodes->find(f[0])) throw ParseError("repeated node '" + std::string(f[0]) + "'", lineno);
        nodes->add(std::string(f[0]));
        t.p.push_back(parse_double(f[1], lineno));
        t.k.push_back(to_rank(f[2]));
        t.p_star.push_back(parse_double(f[3], lineno));
        t.k_star.push_back(to_rank(f[4]));
        t.k2.push_back(to_rank(f[5]));
    }
    t.nodes = std::move(nodes);
    if (t.size() == 0) throw ParseError("rank table has no rows");
    try {
        t.validate();
    } catch (const ContractError& e) {
        throw ParseError(e.what());
    }
    return result;
}

void write_density_grid(const DensityGrid& grid, std::ostream& out) {
    out << "# n=" << grid.n_ranks << " points=" << grid.n_points << " cells=" << grid.cells
        << " axis_min=0 axis_max=" << format_double(grid.axis_max()) << '\n';
    out << "i,j,count,W,density_per_area\n";
    for (std::size_t i = 0; i < grid.cells; ++i)
        for (std::size_t j = 0; j < grid.cells; ++j)
            out << i << ',' << j << ',' << grid.count(i, j) << ',' << format_double(grid.w(i, j)) << ','
                << format_double(grid.density(i, j)) << '\n';
}

void write_eta_slice(const EtaSlice& slice, std::ostream& out) {
    out << "# x0=" << format_double(slice.x0)
        << " field=" << (slice.field == SliceField::mass ? "mass" : "per_area") << '\n';
    out << "eta,W\n";
    for (const auto& s : slice.samples) out << format_double(s.eta) << ',' << format_double(s.value) << '\n';
}

void write_power_law_fit(const PowerLawFit& fit, std::string_view x_name, std::string_view y_name,
                         std::ostream& out) {
    out << "# exponent=" << format_double(fit.exponent) << " std_error=" << format_double(fit.std_error)
        << " r_squared=" << format_double(fit.r_squared) << " intercept=" << format_double(fit.intercept)
        << " fit_min=" << format_double(fit.fit_range.min) << " fit_max=" << format_double(fit.fit_range.max)
        << '\n';
    out << x_name << ',' << y_name << '\n';
    for (const auto& [x, y] : fit.points) out << format_double(x) << ',' << format_double(y) << '\n';
}

void write_sweep(std::span<const SweepPoint> points, std::ostream& out) {
    out << "alpha,alpha_star,kappa,converged\n";
    for (const auto& p : points)
        out << format_double(p.alpha) << ',' << format_double(p.alpha_star) << ','
            << (p.converged ? format_double(p.kappa) : std::string("nan")) << ',' << (p.converged ? 1 : 0)
            << '\n';
}

void write_overlap_series(const OverlapSeries& series, std::ostream& out) {
    out << "x,f\n";
    for (const auto& p : series.points) out << format_double(p.x) << ',' << format_double(p.f) << '\n';
}

void write_degree_histogram(const DegreeHistogram& h, std::ostream& out) {
    out << "k,count\n";
    for (const auto& [k, c] : h.counts) out << k << ',' << c << '\n';
}

}  // namespace rank2d
