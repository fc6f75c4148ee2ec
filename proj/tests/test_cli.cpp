// Copyright 2026 The spindrive Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end checks of the command-line tool. Each test shells out to the
// built binary and inspects exit codes and output files.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;

const std::string kCli = SPINDRIVE_CLI_PATH;

struct CsvFile {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

CsvFile read_csv(const std::string& path) {
    CsvFile out;
    std::ifstream f(path);
    REQUIRE(f.good());
    std::string line;
    REQUIRE(std::getline(f, line));
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) out.columns.push_back(cell);
    while (std::getline(f, line)) {
        std::stringstream ss(line);
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        REQUIRE(row.size() == out.columns.size());
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path tmpdir() {
    const fs::path d = fs::temp_directory_path() / "spindrive_cli_tests";
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("cli validation failures exit with code 1") {
    CHECK(run("evolve --geometry hexagon --steps 2000 --stride 200 --out /dev/null") == 1);
    CHECK(run("evolve --geometry triangle --steps 10 --out /dev/null") == 1);
    CHECK(run("evolve --geometry triangle --steps 2000 --stride 301 --out /dev/null") == 1);
    CHECK(run("evolve --geometry triangle --steps 2000 --stride 200 --format yaml --out /dev/null") == 1);
    CHECK(run("evolve --geometry triangle --tff -1 --steps 2000 --stride 200 --out /dev/null") == 1);
    CHECK(run("--bogus-flag") == 1);
    CHECK(run("") == 1);  // a subcommand is required
}

TEST_CASE("spectrum output: transverse-field pattern and degeneracy structure") {
    const auto out = (tmpdir() / "spec_tri.csv").string();
    REQUIRE(run("spectrum --geometry triangle --steps 2000 --stride 100 --out " + out) == 0);
    const CsvFile csv = read_csv(out);
    REQUIRE(csv.columns.size() == 2 + 8);
    CHECK(csv.rows.size() == 21);
    // start of sweep: pure transverse field, eigenvalues -15, -5 x3, 5 x3, 15
    const auto& r0 = csv.rows.front();
    CHECK(r0[2] == doctest::Approx(-15.0).epsilon(1e-12));
    for (int k = 3; k <= 5; ++k) CHECK(r0[k] == doctest::Approx(-5.0).epsilon(1e-12));
    for (int k = 6; k <= 8; ++k) CHECK(r0[k] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(r0[9] == doctest::Approx(15.0).epsilon(1e-12));
    // the second line from the bottom is doubly degenerate at every t, and a
    // second exact doublet persists throughout; up to mid-sweep it sits at
    // the fourth line (it crosses a non-degenerate level of another symmetry
    // sector late in the sweep, after which it is the third line)
    for (const auto& row : csv.rows) {
        CHECK(std::abs(row[3] - row[4]) <= 1e-9);  // e2 = e3
        const bool fourth = std::abs(row[6] - row[7]) <= 1e-9;   // e5 = e6
        const bool third = std::abs(row[5] - row[6]) <= 1e-9;    // e4 = e5
        CHECK((fourth || third));
        if (row[0] <= 0.035) CHECK(fourth);
    }
}

TEST_CASE("spectrum output: chain4 lowest levels never cross") {
    const auto out = (tmpdir() / "spec_c4.csv").string();
    REQUIRE(run("spectrum --geometry chain4 --steps 2000 --stride 100 --out " + out) == 0);
    const CsvFile csv = read_csv(out);
    REQUIRE(csv.columns.size() == 2 + 16);
    for (const auto& row : csv.rows) {
        const double bx = 10.0 - row[1];
        if (bx >= 0.5) CHECK(row[3] - row[2] > 1e-6);
        CHECK(row[3] - row[2] >= 0.0);
    }
}

TEST_CASE("drive output columns per geometry") {
    const auto tri = (tmpdir() / "drv_tri.csv").string();
    REQUIRE(run("drive --geometry triangle --steps 2000 --stride 200 --out " + tri) == 0);
    const CsvFile c_tri = read_csv(tri);
    CHECK(c_tri.columns ==
          std::vector<std::string>{"t", "v", "vW1", "degenerate"});
    CHECK(c_tri.rows.front()[2] == 0.0);
    CHECK(c_tri.rows.back()[2] == 0.0);

    const auto pyr = (tmpdir() / "drv_pyr.csv").string();
    REQUIRE(run("drive --geometry pyramid --steps 2000 --stride 200 --out " + pyr) == 0);
    CHECK(read_csv(pyr).columns ==
          std::vector<std::string>{"t", "v", "vW1", "vQ", "degenerate"});

    const auto c4 = (tmpdir() / "drv_c4.csv").string();
    REQUIRE(run("drive --geometry chain4 --steps 2000 --stride 200 --out " + c4) == 0);
    CHECK(read_csv(c4).columns ==
          std::vector<std::string>{"t", "v", "vW1", "vW2", "vW3", "vW4", "vQ",
                                   "degenerate"});
    for (const auto& row : read_csv(c4).rows) CHECK(row.back() == 0.0);
}

TEST_CASE("evolve output: fidelity column and class probabilities") {
    const auto out = (tmpdir() / "ev_tri.csv").string();
    REQUIRE(run("evolve --geometry triangle --steps 2000 --stride 100 --out " + out) == 0);
    const CsvFile csv = read_csv(out);
    CHECK(csv.columns == std::vector<std::string>{"t", "fidelity", "norm", "p1", "p2"});
    CHECK(csv.rows.front()[3] == doctest::Approx(0.125).epsilon(1e-9));
    CHECK(csv.rows.back()[3] < csv.rows.front()[3]);
    CHECK(csv.rows.back()[4] > csv.rows.front()[4]);
    for (const auto& row : csv.rows) CHECK(row[1] >= 1.0 - 1e-6);
}

TEST_CASE("stationary sweep keeps every probability column constant") {
    const auto out = (tmpdir() / "ev_flat.csv").string();
    REQUIRE(run("evolve --geometry square --vbar 0 --steps 2000 --stride 200 --out " +
                out) == 0);
    const CsvFile csv = read_csv(out);
    for (size_t c = 3; c < csv.columns.size(); ++c)
        for (const auto& row : csv.rows)
            CHECK(row[c] == doctest::Approx(csv.rows.front()[c]).epsilon(1e-9));
}

TEST_CASE("csv output is byte-identical across runs") {
    const auto a = (tmpdir() / "det_a.csv").string();
    const auto b = (tmpdir() / "det_b.csv").string();
    const std::string args = "evolve --geometry star --steps 2000 --stride 200 --out ";
    REQUIRE(run(args + a) == 0);
    REQUIRE(run(args + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
}

TEST_CASE("json and csv carry the same numeric payload") {
    const auto csv_path = (tmpdir() / "pay.csv").string();
    const auto json_path = (tmpdir() / "pay.json").string();
    const std::string base = "drive --geometry square --steps 2000 --stride 200 ";
    REQUIRE(run(base + "--out " + csv_path) == 0);
    REQUIRE(run(base + "--format json --out " + json_path) == 0);
    const CsvFile csv = read_csv(csv_path);
    const nlohmann::json doc = nlohmann::json::parse(slurp(json_path));
    REQUIRE(doc["columns"].get<std::vector<std::string>>() == csv.columns);
    const auto rows = doc["rows"].get<std::vector<std::vector<double>>>();
    REQUIRE(rows.size() == csv.rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            CHECK(rows[i][j] == csv.rows[i][j]);  // exact: both round-trip doubles
}

TEST_CASE("config file sets defaults and flags override it") {
    const auto conf = (tmpdir() / "run.conf").string();
    {
        std::ofstream f(conf);
        f << "geometry=chain3\nsteps=2000\nstride=200\nvbar=0\n";
    }
    const auto out = (tmpdir() / "conf_out.csv").string();
    REQUIRE(run("evolve --config " + conf + " --out " + out) == 0);
    CsvFile csv = read_csv(out);
    // vbar=0 from the file: fidelity pinned at 1 and 3 probability columns
    CHECK(csv.columns.size() == 3 + 3);
    for (const auto& row : csv.rows) CHECK(row[1] >= 1.0 - 1e-9);

    // now override the geometry on the command line
    REQUIRE(run("evolve --config " + conf + " --geometry triangle --out " + out) == 0);
    csv = read_csv(out);
    CHECK(csv.columns.size() == 3 + 2);
}

TEST_CASE("all-geometries fan-out writes one file per cluster") {
    const auto base = (tmpdir() / "fan.csv").string();
    REQUIRE(run("evolve --all-geometries --steps 2000 --stride 500 --out " + base) == 0);
    for (spindrive::Geometry which : spindrive::all_geometries) {
        const auto path =
            tmpdir() / ("fan_" + std::string(spindrive::to_string(which)) + ".csv");
        INFO(path.string());
        CHECK(fs::exists(path));
        CHECK(read_csv(path.string()).rows.size() == 5);
    }
}

TEST_CASE("degenerate sweep points flag drive rows and fail evolve runs") {
    // a vanishing energy scale keeps the ground level degenerate everywhere;
    // the drive table must flag such samples instead of aborting
    const auto out = (tmpdir() / "drv_degen.csv").string();
    const std::string degen = "--b0 1e-10 --vbar 1e-9 --steps 2000 --stride 1000 ";
    REQUIRE(run("drive --geometry triangle " + degen + "--out " + out) == 0);
    const CsvFile csv = read_csv(out);
    REQUIRE(csv.rows.size() == 3);
    CHECK(csv.rows[1].back() == 1.0);                // interior sample flagged
    CHECK(std::isnan(csv.rows[1][2]));               // strengths unavailable
    // the integrator has no flagged-row escape hatch: numeric failure, code 2
    CHECK(run("evolve --geometry triangle " + degen + "--out /dev/null") == 2);
    // violent sweeps overwhelm the fixed step and exit the same way
    CHECK(run("evolve --geometry triangle --vbar 2000000 --steps 1000 --stride 1000"
              " --out /dev/null") == 2);
}

TEST_CASE("verify subcommand reports machine-readable results") {
    const auto out = (tmpdir() / "verify_tri.json").string();
    REQUIRE(run("verify --geometry triangle --steps 2000 --out " + out) == 0);
    const nlohmann::json doc = nlohmann::json::parse(slurp(out));
    CHECK(doc["all_pass"].get<bool>());
    CHECK(doc["rank_table"]["triangle"].get<int>() == 1);
    bool saw_fidelity = false;
    for (const auto& c : doc["checks"]) {
        CHECK(c["pass"].get<bool>());
        if (c["name"] == "fidelity_threshold") saw_fidelity = true;
    }
    CHECK(saw_fidelity);
}
