#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "rank2d/cli.hpp"
#include "rank2d/io.hpp"

using namespace rank2d;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::path(RANK2D_TEST_TMP) / "cli" / info->name();
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }

    fs::path path(const std::string& name) const { return dir_ / name; }

    void write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name), std::ios::binary) << text;
    }

    static std::string read(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    static int run(std::vector<std::string> args) {
        args.insert(args.begin(), "rank2d");
        return cli::run(args);
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, RankTwoCycle) {
    write("g.tsv", "a\tb\nb\ta\n");
    ASSERT_EQ(run({"rank", path("g.tsv").string(), "-o", path("out").string()}), 0);
    std::ifstream in(path("out") / "table.tsv");
    const auto loaded = read_rank_table(in);
    ASSERT_EQ(loaded.table.size(), 2u);
    EXPECT_NEAR(loaded.table.p[0], 0.5, 1e-15);
    EXPECT_EQ(loaded.meta.graph_hash, sha256_file(path("g.tsv")));
    EXPECT_TRUE(fs::exists(path("out") / "manifest.json"));
    EXPECT_TRUE(fs::exists(path("out") / "pagerank.tsv"));
    EXPECT_TRUE(fs::exists(path("out") / "cheirank.tsv"));
}

TEST_F(CliTest, RankIsReproducible) {
    std::ostringstream text;
    write_edge_list(oracle::random_graph(60, 0.08, 5), text);
    write("g.tsv", text.str());
    ASSERT_EQ(run({"rank", path("g.tsv").string(), "-o", path("one").string()}), 0);
    ASSERT_EQ(run({"rank", path("g.tsv").string(), "-o", path("two").string(), "--workers", "3"}), 0);
    for (const char* f : {"table.tsv", "pagerank.tsv", "cheirank.tsv"})
        EXPECT_EQ(read(path("one") / f), read(path("two") / f)) << f;
}

TEST_F(CliTest, RankMatchesDenseOracle) {
    const auto g = oracle::random_graph(50, 0.1, 8);
    std::ostringstream text;
    write_edge_list(g, text);
    write("g.tsv", text.str());
    ASSERT_EQ(run({"rank", path("g.tsv").string(), "-o", path("out").string(), "--alpha", "0.7"}), 0);
    std::ifstream in(path("out") / "pagerank.tsv");
    const auto loaded = read_rank_vector(in);

    // The reloaded graph numbers nodes by first appearance; map back by name.
    std::istringstream again(text.str());
    const auto reloaded = load_edge_list(again).graph;
    const auto expected = oracle::dense_linear_pagerank(reloaded, 0.7);
    double l1 = 0.0;
    for (NodeIndex v = 0; v < reloaded.n_nodes(); ++v) {
        const NodeIndex* w = loaded.nodes->find(reloaded.nodes().name(v));
        ASSERT_NE(w, nullptr);
        l1 += std::abs(loaded.vector.values[*w] - expected[v]);
    }
    EXPECT_LT(l1, 1e-9);
}

TEST_F(CliTest, StatsOutputs) {
    ASSERT_EQ(run({"synth", "--n", "2000", "--seed", "3", "--mean-degree", "6", "-o", path("g.tsv").string()}), 0);
    ASSERT_EQ(run({"rank", path("g.tsv").string(), "-o", path("r").string()}), 0);
    const auto table = (path("r") / "table.tsv").string();
    const auto out = path("s").string();

    EXPECT_EQ(run({"stats", table, "--which", "density", "--null", "--seed", "4", "-o", out}), 0);
    EXPECT_TRUE(fs::exists(path("s") / "density.csv"));
    EXPECT_TRUE(fs::exists(path("s") / "density_null.csv"));
    EXPECT_EQ(run({"stats", table, "--which", "density", "--null", "-o", out}), cli::kContractViolation);

    EXPECT_EQ(run({"stats", table, "--which", "slice", "--x0", "4.0", "-o", out}), 0);
    EXPECT_EQ(run({"stats", table, "--which", "slice", "-o", out}), cli::kContractViolation);
    EXPECT_EQ(run({"stats", table, "--which", "correlator", "-o", out}), 0);
    EXPECT_EQ(run({"stats", table, "--which", "fitcurve", "--fit-range", "10:1000", "-o", out}), 0);
    EXPECT_TRUE(fs::exists(path("s") / "fit_pagerank.csv"));
    EXPECT_TRUE(fs::exists(path("s") / "fit_cheirank.csv"));

    EXPECT_EQ(run({"stats", table, "--which", "degrees", "--graph", path("g.tsv").string(), "--fit-range", "1:200",
                   "-o", out}),
              0);
    EXPECT_TRUE(fs::exists(path("s") / "degrees_in.csv"));
    EXPECT_TRUE(fs::exists(path("s") / "fit_degrees_out.csv"));

    EXPECT_EQ(run({"stats", "--which", "sweep", "--graph", path("g.tsv").string(), "--alphas", "0.5,0.85", "-o", out}),
              0);
    const auto sweep = read(path("s") / "sweep.csv");
    EXPECT_EQ(std::count(sweep.begin(), sweep.end(), '\n'), 3);

    // Correlator from the table agrees with the kappa of a diagonal sweep at 0.85.
    std::ifstream corr(path("s") / "correlator.csv");
    std::string header, row;
    std::getline(corr, header);
    std::getline(corr, row);
    std::istringstream sweep_rows(sweep);
    std::string s0, s1, s2;
    std::getline(sweep_rows, s0);
    std::getline(sweep_rows, s1);
    std::getline(sweep_rows, s2);
    EXPECT_EQ(row, s2);
}

TEST_F(CliTest, StatsRejectsForeignGraph) {
    write("g.tsv", "a\tb\nb\ta\n");
    write("h.tsv", "a\tb\nb\tc\nc\ta\n");
    ASSERT_EQ(run({"rank", path("g.tsv").string(), "-o", path("r").string()}), 0);
    EXPECT_EQ(run({"stats", (path("r") / "table.tsv").string(), "--which", "degrees", "--graph",
                   path("h.tsv").string(), "-o", path("s").string()}),
              cli::kContractViolation);
}

TEST_F(CliTest, OverlapModes) {
    write("a.txt", "x1\nx2\nx3\nx4\n");
    write("b.txt", "x2\nx9\nx1\nx4\n");
    write("s.txt", "x3\n");
    ASSERT_EQ(run({"overlap", path("a.txt").string(), path("b.txt").string(), "-o", path("c.csv").string()}), 0);
    EXPECT_EQ(read(path("c.csv")), "x,f\n1,0\n2,0.5\n3,0.6666666666666666\n4,0.75\n");
    ASSERT_EQ(run({"overlap", "--mode", "window", "--window", "2", path("a.txt").string(), path("b.txt").string(),
                   "-o", path("w.csv").string()}),
              0);
    EXPECT_EQ(read(path("w.csv")), "x,f\n1,0.5\n3,0.5\n");
    ASSERT_EQ(run({"overlap", "--mode", "subset", "--window", "2", path("a.txt").string(), "--subset",
                   path("s.txt").string(), "-o", path("s.csv").string()}),
              0);
    EXPECT_EQ(read(path("s.csv")), "x,f\n1,0\n3,0.5\n");

    write("dup.txt", "x1\nx1\n");
    EXPECT_EQ(run({"overlap", path("dup.txt").string(), path("a.txt").string()}), cli::kParseError);
    EXPECT_EQ(run({"overlap", "--mode", "window", "--window", "9", path("a.txt").string(), path("b.txt").string()}),
              cli::kContractViolation);
}

TEST_F(CliTest, SubsetCommand) {
    std::ostringstream text;
    write_edge_list(oracle::random_graph(30, 0.15, 2), text);
    write("g.tsv", text.str());
    ASSERT_EQ(run({"rank", path("g.tsv").string(), "-o", path("r").string()}), 0);
    const auto table = (path("r") / "table.tsv").string();

    std::string all;
    for (int i = 0; i < 30; ++i) all += std::to_string(i) + "\n";
    write("all.txt", all);
    ASSERT_EQ(run({"subset", table, path("all.txt").string(), "-o", path("sub.tsv").string()}), 0);
    EXPECT_EQ(read(path("sub.tsv")), read(table));

    write("one.txt", "7\n");
    ASSERT_EQ(run({"subset", table, path("one.txt").string(), "-o", path("one.tsv").string()}), 0);
    std::ifstream in(path("one.tsv"));
    const auto one = read_rank_table(in);
    ASSERT_EQ(one.table.size(), 1u);
    EXPECT_EQ(one.table.k2[0], 1u);

    write("bad.txt", "7\nnobody\n");
    EXPECT_EQ(run({"subset", table, path("bad.txt").string(), "-o", path("x.tsv").string()}), cli::kParseError);
    EXPECT_EQ(run({"subset", table, path("bad.txt").string(), "--lenient", "-o", path("x.tsv").string()}), 0);
}

TEST_F(CliTest, SynthIsDeterministic) {
    ASSERT_EQ(run({"synth", "--n", "500", "--seed", "9", "-o", path("a.tsv").string()}), 0);
    ASSERT_EQ(run({"synth", "--n", "500", "--seed", "9", "-o", path("b.tsv").string()}), 0);
    ASSERT_EQ(run({"synth", "--n", "500", "--seed", "10", "-o", path("c.tsv").string()}), 0);
    EXPECT_EQ(read(path("a.tsv")), read(path("b.tsv")));
    EXPECT_NE(read(path("a.tsv")), read(path("c.tsv")));
}

TEST_F(CliTest, ExitCodes) {
    write("bad.tsv", "a\tb\t0\n");
    EXPECT_EQ(run({"rank", path("bad.tsv").string(), "-o", path("r").string()}), cli::kParseError);
    write("g.tsv", "a\tb\nb\tc\n");
    EXPECT_EQ(run({"rank", path("g.tsv").string(), "-o", path("r").string(), "--max-iter", "1"}),
              cli::kConvergenceFailure);
    EXPECT_EQ(run({"rank", path("g.tsv").string(), "-o", path("r").string(), "--alpha", "1.5"}),
              cli::kContractViolation);
    EXPECT_EQ(run({"rank", path("missing.tsv").string(), "-o", path("r").string()}), cli::kUsageError);
    EXPECT_EQ(run({"rank"}), cli::kUsageError);
    EXPECT_EQ(run({"nonsense"}), cli::kUsageError);
}
