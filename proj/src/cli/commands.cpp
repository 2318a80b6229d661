#include "rank2d/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "rank2d/errors.hpp"
#include "rank2d/graph.hpp"
#include "rank2d/io.hpp"
#include "rank2d/twodrank.hpp"

namespace rank2d::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

FitRange parse_fit_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ContractError("--fit-range expects MIN:MAX");
    return {parse_double(text.substr(0, colon)), parse_double(text.substr(colon + 1))};
}

SolverOptions solver_options(const RunConfig& cfg) {
    SolverOptions o;
    o.tol = cfg.tol;
    o.max_iter = cfg.max_iter;
    o.workers = cfg.workers;
    return o;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

// ------------------------------------------------------------------- rank

struct RankArgs {
    std::string edges;
    std::string out_dir;
};

void cmd_rank(const RankArgs& args, const RunConfig& cfg) {
    const std::string hash = sha256_file(args.edges);
    auto in = open_input(args.edges);
    const LoadedGraph loaded = load_edge_list(in);
    const DirectedGraph& g = loaded.graph;

    const auto opts = solver_options(cfg);
    const RankVector p = pagerank(g, cfg.alpha, opts);
    const RankVector ps = cheirank(g, cfg.alpha_star, opts);
    const RankTable table = make_rank_table(g.shared_nodes(), p, ps);
    const double kappa = correlator(p.values, ps.values);

    const fs::path dir(args.out_dir);
    {
        auto out = open_output(dir / "table.tsv");
        write_rank_table(table, {hash, cfg.alpha, cfg.alpha_star, cfg.tol, cfg.max_iter}, out);
    }
    {
        auto out = open_output(dir / "pagerank.tsv");
        write_rank_vector(p, g.nodes(), out);
    }
    {
        auto out = open_output(dir / "cheirank.tsv");
        write_rank_vector(ps, g.nodes(), out);
    }

    ordered_json manifest;
    manifest["command"] = "rank";
    manifest["input"] = {{"path", args.edges}, {"sha256", hash}};
    manifest["config"] = {{"alpha", cfg.alpha},       {"alpha_star", cfg.alpha_star}, {"tol", cfg.tol},
                          {"max_iter", cfg.max_iter}, {"workers", cfg.workers}};
    manifest["graph"] = {{"nodes", g.n_nodes()},
                         {"distinct_links", g.n_entries()},
                         {"total_edge_weight", g.total_edge_weight()},
                         {"self_loops", loaded.stats.self_loops},
                         {"merged_duplicates", loaded.stats.merged_duplicates}};
    manifest["pagerank"] = {{"iterations", p.iterations}, {"residual", p.residual}};
    manifest["cheirank"] = {{"iterations", ps.iterations}, {"residual", ps.residual}};
    manifest["kappa"] = kappa;
    manifest["outputs"] = {{"table", "table.tsv"}, {"pagerank", "pagerank.tsv"}, {"cheirank", "cheirank.tsv"}};
    manifest["created"] = utc_timestamp();
    auto out = open_output(dir / "manifest.json");
    out << manifest.dump(2) << '\n';

    std::cout << "ranked " << g.n_nodes() << " nodes; pagerank " << p.iterations << " it, cheirank "
              << ps.iterations << " it, kappa " << kappa << '\n';
}

// ------------------------------------------------------------------ stats

struct StatsArgs {
    std::string which;
    std::string table;
    std::string graph;
    std::string out_dir;
    std::string fit_range;
    unsigned bins_per_decade = 10;
    double x0 = std::numeric_limits<double>::quiet_NaN();
    std::string field = "mass";
    bool null_model = false;
    std::string null_kind = "rerank";
    std::size_t null_samples = 0;
    std::vector<double> alphas;
    std::vector<double> alpha_stars;
    std::string sweep_mode = "diagonal";
};

LoadedRankTable load_table(const std::string& path) {
    if (path.empty()) throw ContractError("this statistic needs a rank table");
    auto in = open_input(path);
    return read_rank_table(in);
}

DirectedGraph load_graph_checked(const StatsArgs& args, const std::string& expected_hash) {
    if (args.graph.empty()) throw ContractError("this statistic needs --graph");
    if (!expected_hash.empty() && sha256_file(args.graph) != expected_hash)
        throw ContractError("--graph does not match the graph the rank table was built from");
    auto in = open_input(args.graph);
    return load_edge_list(in).graph;
}

void cmd_stats(const StatsArgs& args, const RunConfig& cfg, bool seed_given) {
    const fs::path dir(args.out_dir);

    if (args.which == "density") {
        const auto loaded = load_table(args.table);
        const auto grid = density_grid(loaded.table, cfg.grid_cells);
        {
            auto out = open_output(dir / "density.csv");
            write_density_grid(grid, out);
        }
        if (args.null_model) {
            if (!seed_given) throw ContractError("the null-model grid needs --seed");
            const auto& t = loaded.table;
            const auto curve_p = rank_curve(t.p);
            const auto curve_ps = rank_curve(t.p_star);
            const std::size_t n = args.null_samples ? args.null_samples : t.size();
            std::vector<RankPair> pairs;
            std::size_t n_ranks = 0;
            if (args.null_kind == "rerank") {
                pairs = independent_null_model(curve_p, curve_ps, n, cfg.seed);
                n_ranks = n;
            } else if (args.null_kind == "weighted") {
                pairs = sample_independent(curve_p, curve_ps, n, cfg.seed, cfg.workers);
                n_ranks = t.size();
            } else {
                throw ContractError("--null-kind must be rerank or weighted");
            }
            auto out = open_output(dir / "density_null.csv");
            write_density_grid(density_grid(pairs, n_ranks, cfg.grid_cells), out);
        }
    } else if (args.which == "slice") {
        if (std::isnan(args.x0)) throw ContractError("slice needs --x0");
        const auto loaded = load_table(args.table);
        const auto grid = density_grid(loaded.table, cfg.grid_cells);
        const SliceField field = args.field == "per_area" ? SliceField::per_area : SliceField::mass;
        if (args.field != "mass" && args.field != "per_area") throw ContractError("--field must be mass or per_area");
        auto out = open_output(dir / "slice.csv");
        write_eta_slice(slice_density(grid, args.x0, field), out);
    } else if (args.which == "correlator") {
        const auto loaded = load_table(args.table);
        const SweepPoint pt{loaded.meta.alpha, loaded.meta.alpha_star,
                            correlator(loaded.table.p, loaded.table.p_star), true};
        auto out = open_output(dir / "correlator.csv");
        write_sweep(std::span<const SweepPoint>(&pt, 1), out);
    } else if (args.which == "fitcurve") {
        if (args.fit_range.empty()) throw ContractError("fitcurve needs --fit-range MIN:MAX");
        const auto range = parse_fit_range(args.fit_range);
        const auto loaded = load_table(args.table);
        const Binning binning{args.bins_per_decade};
        {
            auto out = open_output(dir / "fit_pagerank.csv");
            write_power_law_fit(fit_rank_curve(loaded.table.p, range, binning), "K", "P", out);
        }
        auto out = open_output(dir / "fit_cheirank.csv");
        write_power_law_fit(fit_rank_curve(loaded.table.p_star, range, binning), "K*", "P*", out);
    } else if (args.which == "degrees") {
        std::string expected;
        if (!args.table.empty()) expected = load_table(args.table).meta.graph_hash;
        const auto g = load_graph_checked(args, expected);
        for (Direction d : {Direction::in, Direction::out}) {
            const std::string tag = d == Direction::in ? "in" : "out";
            const auto h = degree_distribution(g, d);
            {
                auto out = open_output(dir / ("degrees_" + tag + ".csv"));
                write_degree_histogram(h, out);
            }
            if (!args.fit_range.empty()) {
                auto out = open_output(dir / ("fit_degrees_" + tag + ".csv"));
                write_power_law_fit(fit_power_law(h, parse_fit_range(args.fit_range), Binning{args.bins_per_decade}),
                                    "k", "w", out);
            }
        }
    } else if (args.which == "sweep") {
        std::string expected;
        if (!args.table.empty()) expected = load_table(args.table).meta.graph_hash;
        const auto g = load_graph_checked(args, expected);
        SweepMode mode;
        if (args.sweep_mode == "diagonal")
            mode = SweepMode::diagonal;
        else if (args.sweep_mode == "fix_alpha")
            mode = SweepMode::fix_alpha;
        else if (args.sweep_mode == "fix_alpha_star")
            mode = SweepMode::fix_alpha_star;
        else
            throw ContractError("--sweep-mode must be diagonal, fix_alpha or fix_alpha_star");
        auto alphas = args.alphas;
        auto alpha_stars = args.alpha_stars;
        if (mode == SweepMode::fix_alpha && alphas.empty()) alphas = {cfg.alpha};
        if (mode == SweepMode::fix_alpha_star && alpha_stars.empty()) alpha_stars = {cfg.alpha_star};
        const auto points = correlator_sweep(g, alphas, alpha_stars, mode, solver_options(cfg));
        auto out = open_output(dir / "sweep.csv");
        write_sweep(points, out);
    } else {
        throw ContractError("unknown statistic '" + args.which + "'");
    }
}

// ---------------------------------------------------------------- overlap

struct OverlapArgs {
    std::string mode = "curve";
    std::string list_a;
    std::string list_b;
    std::string subset;
    std::size_t ks_max = 0;
    std::string out;
};

RankedList load_list(const std::string& path) {
    auto in = open_input(path);
    return load_ranked_list(in);
}

void cmd_overlap(const OverlapArgs& args, const RunConfig& cfg) {
    const RankedList a = load_list(args.list_a);
    OverlapSeries series;
    if (args.mode == "subset") {
        if (args.subset.empty()) throw ContractError("subset mode needs --subset");
        const RankedList s = load_list(args.subset);
        series = subset_window_fraction(a, s.names(), cfg.window);
    } else {
        if (args.list_b.empty()) throw ContractError(args.mode + " mode needs a second list");
        const RankedList b = load_list(args.list_b);
        if (args.mode == "curve")
            series = overlap_curve(a, b, args.ks_max ? args.ks_max : std::min(a.size(), b.size()));
        else if (args.mode == "window")
            series = window_overlap(a, b, cfg.window);
        else
            throw ContractError("--mode must be curve, window or subset");
    }
    if (args.out.empty()) {
        write_overlap_series(series, std::cout);
    } else {
        auto out = open_output(args.out);
        write_overlap_series(series, out);
    }
}

// ----------------------------------------------------------------- subset

struct SubsetArgs {
    std::string table;
    std::string subset;
    std::string out;
    bool lenient = false;
};

void cmd_subset(const SubsetArgs& args) {
    const auto loaded = load_table(args.table);
    auto in = open_input(args.subset);
    const auto label = fs::path(args.subset).stem().string();
    const auto res = load_node_subset(in, *loaded.table.nodes,
                                      args.lenient ? Resolution::lenient : Resolution::strict, label);
    for (const auto& u : res.unresolved)
        std::cerr << "warning: line " << u.line << ": unknown node '" << u.name << "'\n";
    if (res.duplicates) std::cerr << "warning: " << res.duplicates << " duplicate names ignored\n";
    const RankTable sub = subset_rank(res.subset, loaded.table);
    auto out = open_output(args.out);
    write_rank_table(sub, loaded.meta, out);
    std::cout << "resolved " << res.subset.members.size() << " of "
              << res.subset.members.size() + res.unresolved.size() << " names\n";
}

// ------------------------------------------------------------------ synth

void cmd_synth(const ScaleFreeParams& params, const std::string& out_path) {
    const DirectedGraph g = generate_scale_free(params);
    auto out = open_output(out_path);
    out << "# synthetic scale-free graph n=" << params.n << " mu_in=" << format_double(params.mu_in)
        << " mu_out=" << format_double(params.mu_out) << " mean_degree=" << format_double(params.mean_degree)
        << " seed=" << params.seed << '\n';
    write_edge_list(g, out);
}

void add_solver_flags(CLI::App* app, RunConfig& cfg) {
    app->add_option("--alpha", cfg.alpha, "PageRank damping factor")->capture_default_str();
    app->add_option("--alpha-star", cfg.alpha_star, "CheiRank damping factor")->capture_default_str();
    app->add_option("--tol", cfg.tol, "L1 convergence tolerance")->capture_default_str();
    app->add_option("--max-iter", cfg.max_iter, "iteration limit")->capture_default_str();
    app->add_option("--workers", cfg.workers, "solver threads")->capture_default_str();
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"rank2d: PageRank, CheiRank and 2DRank analysis of directed networks"};
    app.require_subcommand(1);
    RunConfig cfg;

    RankArgs rank_args;
    auto* rank = app.add_subcommand("rank", "rank an edge list; writes table.tsv, pagerank.tsv, cheirank.tsv, manifest.json");
    rank->add_option("edges", rank_args.edges, "edge list (source TAB target [TAB multiplicity])")->required();
    rank->add_option("-o,--out-dir", rank_args.out_dir, "output directory")->required();
    add_solver_flags(rank, cfg);

    StatsArgs stats_args;
    auto* stats = app.add_subcommand("stats", "emit figure data from a rank table");
    stats->add_option("--which", stats_args.which, "density | slice | correlator | fitcurve | degrees | sweep")
        ->required();
    stats->add_option("table", stats_args.table, "rank table TSV");
    stats->add_option("--graph", stats_args.graph, "edge list (degrees, sweep)");
    stats->add_option("-o,--out-dir", stats_args.out_dir, "output directory")->required();
    stats->add_option("--cells", cfg.grid_cells, "grid cells per axis")->capture_default_str();
    stats->add_option("--x0", stats_args.x0, "eta-line offset for slice");
    stats->add_option("--field", stats_args.field, "slice field: mass | per_area")->capture_default_str();
    stats->add_option("--fit-range", stats_args.fit_range, "fit range MIN:MAX");
    stats->add_option("--bins-per-decade", stats_args.bins_per_decade, "log bins per decade, 0 = raw points")
        ->capture_default_str();
    stats->add_flag("--null", stats_args.null_model, "also emit the independent null-model grid");
    stats->add_option("--null-kind", stats_args.null_kind, "rerank | weighted")->capture_default_str();
    stats->add_option("--null-samples", stats_args.null_samples, "null-model sample count (default N)");
    auto* stats_seed = stats->add_option("--seed", cfg.seed, "random seed");
    stats->add_option("--alphas", stats_args.alphas, "sweep values of alpha")->delimiter(',');
    stats->add_option("--alpha-stars", stats_args.alpha_stars, "sweep values of alpha*")->delimiter(',');
    stats->add_option("--sweep-mode", stats_args.sweep_mode, "diagonal | fix_alpha | fix_alpha_star")
        ->capture_default_str();
    add_solver_flags(stats, cfg);

    OverlapArgs overlap_args;
    auto* overlap = app.add_subcommand("overlap", "compare ranked name lists");
    overlap->add_option("--mode", overlap_args.mode, "curve | window | subset")->capture_default_str();
    overlap->add_option("list_a", overlap_args.list_a, "ranked list, best first")->required();
    overlap->add_option("list_b", overlap_args.list_b, "second ranked list");
    overlap->add_option("--subset", overlap_args.subset, "subset names (subset mode)");
    overlap->add_option("--ks-max", overlap_args.ks_max, "depth of the f(Ks) curve (default: shorter list)");
    overlap->add_option("--window", cfg.window, "window size")->capture_default_str();
    overlap->add_option("-o,--out", overlap_args.out, "CSV output (default stdout)");

    SubsetArgs subset_args;
    auto* subset = app.add_subcommand("subset", "re-rank a category subset of a rank table");
    subset->add_option("table", subset_args.table, "rank table TSV")->required();
    subset->add_option("subset", subset_args.subset, "one node name per line")->required();
    subset->add_option("-o,--out", subset_args.out, "output table")->required();
    auto* strict = subset->add_flag("--strict", "abort on unknown names (default)");
    subset->add_flag("--lenient", subset_args.lenient, "report unknown names and continue")->excludes(strict);

    ScaleFreeParams synth_params;
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "generate a scale-free configuration-model edge list");
    synth->add_option("--n", synth_params.n, "number of nodes")->required();
    synth->add_option("--mu-in", synth_params.mu_in, "in-degree exponent")->capture_default_str();
    synth->add_option("--mu-out", synth_params.mu_out, "out-degree exponent")->capture_default_str();
    synth->add_option("--mean-degree", synth_params.mean_degree, "mean degree")->capture_default_str();
    synth->add_option("--seed", synth_params.seed, "random seed")->required();
    synth->add_option("-o,--out", synth_out, "edge list output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (rank->parsed())
            cmd_rank(rank_args, cfg);
        else if (stats->parsed())
            cmd_stats(stats_args, cfg, stats_seed->count() > 0);
        else if (overlap->parsed())
            cmd_overlap(overlap_args, cfg);
        else if (subset->parsed())
            cmd_subset(subset_args);
        else if (synth->parsed())
            cmd_synth(synth_params, synth_out);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return kConvergenceFailure;
    } catch (const ContractError& e) {
        std::cerr << "contract violation: " << e.what() << '\n';
        return kContractViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kSuccess;
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> copy = args;
    std::vector<char*> argv;
    argv.reserve(copy.size() + 1);
    for (auto& a : copy) argv.push_back(a.data());
    argv.push_back(nullptr);
    return run(static_cast<int>(copy.size()), argv.data());
}

}  // namespace rank2d::cli
