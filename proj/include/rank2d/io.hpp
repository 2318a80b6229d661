#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "rank2d/googlerank.hpp"
#include "rank2d/netstats.hpp"
#include "rank2d/overlap.hpp"
#include "rank2d/twodrank.hpp"

namespace rank2d {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text, std::size_t line = 0);

/// Hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

// RankVector TSV: one "# rank-vector kind=.. alpha=.. iterations=.. residual=.."
// header line, then "name TAB probability" in node index order.
void write_rank_vector(const RankVector& v, const NodeTable& nodes, std::ostream& out);

struct LoadedRankVector {
    RankVector vector;
    std::shared_ptr<const NodeTable> nodes;
};
LoadedRankVector read_rank_vector(std::istream& in);

struct TableMeta {
    std::string graph_hash;
    double alpha = kDefaultDamping;
    double alpha_star = kDefaultDamping;
    double tol = kDefaultTolerance;
    std::size_t max_iter = kDefaultMaxIterations;
};

// RankTable TSV: "# rank-table graph_hash=.. alpha=.. alpha_star=.. tol=.. max_iter=.."
// and a "#name TAB P TAB K TAB P* TAB K* TAB K2" column line, then one row per
// node sorted by K ascending. Only leading lines are treated as comments.
void write_rank_table(const RankTable& table, const TableMeta& meta, std::ostream& out);

struct LoadedRankTable {
    RankTable table;  // node index follows row order
    TableMeta meta;
};
LoadedRankTable read_rank_table(std::istream& in);

// CSV series.
void write_density_grid(const DensityGrid& grid, std::ostream& out);
void write_eta_slice(const EtaSlice& slice, std::ostream& out);
void write_power_law_fit(const PowerLawFit& fit, std::string_view x_name, std::string_view y_name,
                         std::ostream& out);
void write_sweep(std::span<const SweepPoint> points, std::ostream& out);
void write_overlap_series(const OverlapSeries& series, std::ostream& out);
void write_degree_histogram(const DegreeHistogram& h, std::ostream& out);

}  // namespace rank2d
