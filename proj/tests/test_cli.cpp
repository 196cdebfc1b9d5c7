#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qsearch_cli/app.hpp"
#include "qsearch_cli/manifest.hpp"
#include "qsearch_cli/pool.hpp"
#include "qsearch_cli/sweep.hpp"
#include "qsearch_cli/table.hpp"

namespace fs = std::filesystem;
using namespace qsearch::cli;

namespace {

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw std::runtime_error("no column " + name);
    }
    double num(std::size_t r, const std::string& name) const { return std::stod(rows.at(r).at(col(name))); }
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Csv read_csv(const fs::path& p) {
    Csv c;
    std::stringstream ss(slurp(p));
    std::string line;
    bool first = true;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (first) c.header = cells;
        else c.rows.push_back(cells);
        first = false;
    }
    return c;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("qsearch_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    int call(std::vector<std::string> args) {
        args.push_back("--out");
        args.push_back(dir.string());
        out.str("");
        err.str("");
        return run(args, out, err);
    }

    fs::path dir;
    std::ostringstream out, err;
};

}  // namespace

TEST(Format, SeventeenDigitsRoundTrip) {
    for (double x : {0.1, 1.0 / 3.0, std::numbers::pi, 1e-300, -2.5e17, 0.0}) EXPECT_EQ(std::stod(fmt(x)), x);
    EXPECT_EQ(fmt(0.1), "0.10000000000000001");
    EXPECT_EQ(fmt(std::int64_t{785}), "785");
    Table t{"x", {"a", "b"}, {}};
    t.add(1, 0.5);
    EXPECT_EQ(to_csv(t), "a,b\n1,0.5\n");
    t.rows.push_back({"1"});
    EXPECT_THROW(to_csv(t), std::logic_error);
}

TEST(Hash, KnownDigest) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Pool, RunsEveryIndexOnceAndPropagatesErrors) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) EXPECT_EQ(h, 1);
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                     if (i == 7) throw std::domain_error("x");
                 }),
                 std::domain_error);
    parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

TEST(SweepConfigTest, ParsesListsAndRanges) {
    const SweepConfig c = parse_sweep_config(
        "# grid\ncommand = digital\nN = 4, 16\nk = 0:2:1\nworkers = 3\nout = cells  # trailing\n");
    EXPECT_EQ(c.command, "digital");
    EXPECT_EQ(*c.workers, 3u);
    EXPECT_EQ(*c.out, "cells");
    ASSERT_EQ(c.grid.size(), 2u);
    EXPECT_EQ(c.grid[1].second, (std::vector<std::string>{"0", "1", "2"}));
    EXPECT_EQ(c.cell_count(), 6u);
    const auto cells = c.cells();
    EXPECT_EQ(cells[0][0].second, "4");
    EXPECT_EQ(cells[0][1].second, "0");
    EXPECT_EQ(cells[5][0].second, "16");
    EXPECT_EQ(cells[5][1].second, "2");
    EXPECT_EQ(parse_sweep_config("command=analog\nE=0.5:1.5:0.5\n").grid[0].second,
              (std::vector<std::string>{"0.5", "1", "1.5"}));
}

TEST(SweepConfigTest, Errors) {
    EXPECT_THROW(parse_sweep_config("command = digital\n"), std::invalid_argument);
    EXPECT_THROW(parse_sweep_config("command = digital\nN = ,\n"), std::invalid_argument);
    EXPECT_THROW(parse_sweep_config("N = 4\n"), std::invalid_argument);
    EXPECT_THROW(parse_sweep_config("command = digital\nN 4\n"), std::invalid_argument);
    EXPECT_THROW(parse_sweep_config("command = digital\nN = 4\nN = 5\n"), std::invalid_argument);
    EXPECT_THROW(parse_sweep_config("command = digital\nk = 3:1:1\n"), std::invalid_argument);
    EXPECT_THROW(parse_sweep_config("command = sweep\nN = 4\n"), std::invalid_argument);
}

TEST_F(CliTest, DigitalAutoN4) {
    ASSERT_EQ(call({"digital", "--N", "4", "--k", "auto"}), 0) << err.str();
    const Csv c = read_csv(dir / "digital.csv");
    ASSERT_EQ(c.rows.size(), 1u);
    EXPECT_EQ(c.rows[0][c.col("k")], "1");
    EXPECT_NEAR(c.num(0, "p_closed"), 1.0, 1e-15);
    EXPECT_NEAR(c.num(0, "p_simulated"), 1.0, 1e-14);
    const RunManifest m = read_manifest(dir / "manifest_digital.json");
    EXPECT_EQ(m.command, "digital");
    EXPECT_EQ(m.params.at("N"), "4");
    EXPECT_EQ(m.params.at("k"), "auto");
    std::string why;
    EXPECT_TRUE(verify_manifest(m, dir, &why)) << why;
}

TEST_F(CliTest, DigitalMillion) {
    ASSERT_EQ(call({"digital", "--N", "1000000", "--k", "auto"}), 0) << err.str();
    const Csv c = read_csv(dir / "digital.csv");
    EXPECT_EQ(c.rows[0][c.col("k")], "785");
    EXPECT_GE(c.num(0, "p_simulated"), 1 - 1e-6);
    EXPECT_LT(c.num(0, "abs_diff"), 1e-9);
}

TEST_F(CliTest, DigitalAllKAndErrors) {
    ASSERT_EQ(call({"digital", "--N", "64", "--k", "10", "--all-k", "--target", "5"}), 0) << err.str();
    const Csv c = read_csv(dir / "digital.csv");
    ASSERT_EQ(c.rows.size(), 11u);
    for (std::size_t r = 0; r < c.rows.size(); ++r) EXPECT_LT(c.num(r, "abs_diff"), 1e-12);
    EXPECT_EQ(call({"digital", "--N", "4", "--target", "4"}), 2);
    EXPECT_NE(err.str().find("target"), std::string::npos);
    EXPECT_EQ(call({"digital", "--N", "4", "--k", "many"}), 2);
    EXPECT_EQ(call({"digital"}), 2);
    EXPECT_EQ(call({"nonsense"}), 2);
    EXPECT_EQ(call({}), 2);
}

TEST_F(CliTest, AnalogFenner) {
    ASSERT_EQ(call({"analog", "--model", "fenner", "--N", "1000000"}), 0) << err.str();
    const Csv c = read_csv(dir / "analog.csv");
    EXPECT_NEAR(c.num(0, "t"), 0.0, 0.0);
    EXPECT_NEAR(c.num(0, "p_target"), 1e-6, 1e-18);
    std::size_t best = 0;
    for (std::size_t r = 0; r < c.rows.size(); ++r)
        if (c.num(r, "p_target") > c.num(best, "p_target")) best = r;
    EXPECT_NEAR(c.num(best, "t") / (std::numbers::pi / 4 * 1000), 1.0, 0.01);
    EXPECT_EQ(c.rows[0][c.col("model")], "fenner");
}

TEST_F(CliTest, AnalogFarhiGutmannAndValidation) {
    ASSERT_EQ(call({"analog", "--model", "farhi-gutmann", "--N", "64", "--E", "2", "--dt", "0.05"}), 0) << err.str();
    const Csv c = read_csv(dir / "analog.csv");
    std::size_t best = 0;
    for (std::size_t r = 0; r < c.rows.size(); ++r)
        if (c.num(r, "p_target") > c.num(best, "p_target")) best = r;
    EXPECT_NEAR(c.num(best, "t"), std::numbers::pi * 8 / 4, 0.05);
    EXPECT_GT(c.num(best, "p_target"), 0.999);
    EXPECT_EQ(call({"analog", "--model", "adiabatic", "--N", "64"}), 2);
    EXPECT_EQ(call({"analog", "--model", "fg", "--N", "64", "--E", "0"}), 2);
}

TEST_F(CliTest, FixedPoint) {
    ASSERT_EQ(call({"fixed-point", "--epsilon", "0.1", "--depth", "2"}), 0) << err.str();
    Csv c = read_csv(dir / "fixed_point.csv");
    ASSERT_EQ(c.rows.size(), 3u);
    EXPECT_NEAR(c.num(1, "eps_k_simulated"), 1e-3, 1e-15);
    EXPECT_NEAR(c.num(2, "eps_k_simulated"), 1e-9, 1e-20);
    EXPECT_NEAR(c.num(2, "eps_k_closed"), 1e-9, 1e-22);
    ASSERT_EQ(call({"fixed-point", "--u0", "walsh-hadamard", "--N", "4", "--depth", "3"}), 0) << err.str();
    c = read_csv(dir / "fixed_point.csv");
    EXPECT_NEAR(c.num(0, "eps_k_simulated"), 0.75, 1e-15);
    for (std::size_t r = 0; r < c.rows.size(); ++r) EXPECT_LT(c.num(r, "rel_error"), 1e-10);
    EXPECT_EQ(call({"fixed-point", "--epsilon", "0.1", "--depth", "6"}), 2);
    EXPECT_EQ(call({"fixed-point", "--u0", "bogus"}), 2);
}

TEST_F(CliTest, FixedPointHaarIsSeeded) {
    ASSERT_EQ(call({"fixed-point", "--u0", "haar", "--N", "8", "--seed", "7"}), 0) << err.str();
    const std::string a = slurp(dir / "fixed_point.csv");
    ASSERT_EQ(call({"fixed-point", "--u0", "haar", "--N", "8", "--seed", "7"}), 0);
    EXPECT_EQ(slurp(dir / "fixed_point.csv"), a);
    ASSERT_EQ(call({"fixed-point", "--u0", "haar", "--N", "8", "--seed", "8"}), 0);
    EXPECT_NE(slurp(dir / "fixed_point.csv"), a);
    EXPECT_EQ(read_manifest(dir / "manifest_fixed_point.json").params.at("seed"), "8");
}

TEST_F(CliTest, DampedGeodesicInfogeo) {
    ASSERT_EQ(call({"damped"}), 0) << err.str();
    Csv c = read_csv(dir / "damped.csv");
    EXPECT_EQ(c.rows.size(), 1001u);
    for (std::size_t r = 0; r < c.rows.size(); ++r) {
        ASSERT_LT(std::abs(c.num(r, "residual")), 1e-6);
        ASSERT_LT(std::abs(c.num(r, "q") - c.num(r, "q_rk4")), 1e-6);
        ASSERT_NEAR(c.num(r, "p0") + c.num(r, "p1"), 1.0, 1e-15);
    }
    ASSERT_EQ(call({"geodesic", "--N", "16"}), 0) << err.str();
    c = read_csv(dir / "geodesic.csv");
    for (std::size_t r = 0; r < c.rows.size(); ++r) {
        ASSERT_LT(c.num(r, "residual"), 1e-6);
        ASSERT_LT(c.num(r, "closed_error"), 1e-6);
    }
    EXPECT_NEAR(c.num(c.rows.size() - 1, "q_0"), 1.0, 1e-6);
    ASSERT_EQ(call({"infogeo", "--family", "grover", "--N", "256"}), 0) << err.str();
    c = read_csv(dir / "infogeo.csv");
    EXPECT_EQ(c.rows.size(), 1000u);
    for (std::size_t r = 0; r < c.rows.size(); ++r) {
        ASSERT_NEAR(c.num(r, "F"), 4.0, 1e-9);
        ASSERT_NEAR(c.num(r, "K"), 1.0, 1e-8);
    }
    EXPECT_EQ(call({"infogeo", "--family", "damped-constant", "--xi", "1.5"}), 3);
    EXPECT_EQ(call({"infogeo", "--family", "mystery"}), 2);
}

TEST_F(CliTest, GaVerify) {
    ASSERT_EQ(call({"ga-verify", "--N", "4,16,64"}), 0) << err.str();
    const Csv c = read_csv(dir / "ga_verify.csv");
    bool hit = false;
    for (std::size_t r = 0; r < c.rows.size(); ++r) {
        ASSERT_LT(c.num(r, "max_abs_dev"), 1e-10);
        if (c.rows[r][0] == "4" && c.rows[r][1] == "1") {
            hit = true;
            EXPECT_NEAR(c.num(r, "target_ga"), 1.0, 1e-15);
            EXPECT_NEAR(c.num(r, "p_target"), 1.0, 1e-14);
        }
    }
    EXPECT_TRUE(hit);
    const Csv t = read_csv(dir / "ga_translation.csv");
    ASSERT_EQ(t.rows.size(), 5u);
    for (std::size_t r = 0; r < t.rows.size(); ++r) EXPECT_LT(t.num(r, "max_error"), 1e-10);
    EXPECT_EQ(read_manifest(dir / "manifest_ga_verify.json").outputs.size(), 2u);
}

TEST_F(CliTest, SweepGridIsDeterministic) {
    const fs::path cfg = dir / "grid.cfg";
    std::ofstream(cfg) << "command = digital\nN = 16, 64\nk = 0, 1, 2\nout = grid\n";
    ASSERT_EQ(call({"sweep", "--config", cfg.string(), "--workers", "3"}), 0) << err.str();
    const fs::path g = dir / "grid";
    std::vector<std::string> first;
    for (int i = 0; i < 6; ++i) {
        char name[40];
        std::snprintf(name, sizeof name, "digital_cell_%04d.csv", i);
        ASSERT_TRUE(fs::exists(g / name)) << name;
        first.push_back(slurp(g / name));
    }
    EXPECT_FALSE(fs::exists(g / "digital_cell_0006.csv"));
    const Csv index = read_csv(g / "digital_index.csv");
    ASSERT_EQ(index.rows.size(), 6u);
    EXPECT_EQ(index.rows[4][index.col("N")], "64");
    EXPECT_EQ(index.rows[4][index.col("k")], "1");
    const std::string index_bytes = slurp(g / "digital_index.csv");
    const RunManifest m = read_manifest(g / "manifest_sweep.json");
    EXPECT_EQ(m.outputs.size(), 7u);
    EXPECT_TRUE(verify_manifest(m, g));

    ASSERT_EQ(call({"sweep", "--config", cfg.string(), "--workers", "1"}), 0) << err.str();
    for (int i = 0; i < 6; ++i) {
        char name[40];
        std::snprintf(name, sizeof name, "digital_cell_%04d.csv", i);
        EXPECT_EQ(slurp(g / name), first[i]);
    }
    EXPECT_EQ(slurp(g / "digital_index.csv"), index_bytes);
}

TEST_F(CliTest, SweepErrors) {
    const fs::path cfg = dir / "empty.cfg";
    std::ofstream(cfg) << "command = digital\n";
    EXPECT_EQ(call({"sweep", "--config", cfg.string()}), 2);
    EXPECT_NE(err.str().find("empty grid"), std::string::npos);
    const fs::path bad = dir / "bad.cfg";
    std::ofstream(bad) << "command = digital\nN = 4\nbogus = 1\n";
    EXPECT_EQ(call({"sweep", "--config", bad.string()}), 2);
    EXPECT_EQ(call({"sweep", "--config", (dir / "missing.cfg").string()}), 2);
}

TEST(CliEnv, OutDirFromEnvironment) {
    const fs::path d = fs::temp_directory_path() / "qsearch_env_out";
    fs::remove_all(d);
    setenv("QSEARCH_OUT", d.c_str(), 1);
    EXPECT_EQ(default_out_dir(), d.string());
    std::ostringstream o, e;
    ASSERT_EQ(run({"digital", "--N", "8"}, o, e), 0) << e.str();
    EXPECT_TRUE(fs::exists(d / "digital.csv"));
    unsetenv("QSEARCH_OUT");
    EXPECT_EQ(default_out_dir(), "qsearch_out");
    fs::remove_all(d);
}

TEST(CliCompute, NoFilesystemAccess) {
    const CommandResult r = compute({"fixed-point", "--epsilon", "0.25", "--depth", "1"});
    EXPECT_EQ(r.command, "fixed-point");
    ASSERT_EQ(r.tables.size(), 1u);
    EXPECT_EQ(r.tables[0].rows.size(), 2u);
    EXPECT_EQ(r.params.at("epsilon"), "0.25");
}
