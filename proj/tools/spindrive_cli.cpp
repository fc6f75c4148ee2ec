// Copyright 2026 The spindrive Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Subcommands:
//   spectrum  instantaneous eigenvalues along the sweep
//   drive     driving strengths multiplied by the velocity profile
//   evolve    TDSE integration: fidelity, norm, per-class probabilities
//   verify    self-check battery, JSON report
//
// Shared flags live on the main app so a flat key=value config file
// (--config) can set any of them; command-line flags override the file.
// Exit codes: 0 success, 1 validation failure, 2 numeric failure.

#include <atomic>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spindrive/fastforward.hpp"
#include "spindrive/run_io.hpp"
#include "spindrive/verification.hpp"

namespace {

using namespace spindrive;

struct RunConfig {
    std::string geometry = "triangle";
    bool all_geometries = false;
    double b0 = 10.0, r0 = 0.0, vbar = 100.0, tff = 0.1;
    long steps = 100000;
    long stride = 1000;
    std::string out;
    std::string format = "csv";
};

Schedule make_schedule(const RunConfig& cfg) {
    Schedule s;
    s.b0 = cfg.b0;
    s.r0 = cfg.r0;
    s.vbar = cfg.vbar;
    s.tff = cfg.tff;
    s.validate();
    return s;
}

void validate_config(const RunConfig& cfg) {
    if (cfg.steps < 1000) throw std::invalid_argument("--steps must be >= 1000");
    if (cfg.stride < 1 || cfg.steps % cfg.stride != 0)
        throw std::invalid_argument("--stride must divide --steps");
    if (cfg.format != "csv" && cfg.format != "json")
        throw std::invalid_argument("--format must be csv or json");
}

nlohmann::json meta_for(const std::string& command, const RunConfig& cfg,
                        const std::string& geometry) {
    return {{"command", command}, {"geometry", geometry}, {"b0", cfg.b0},
            {"r0", cfg.r0},       {"vbar", cfg.vbar},     {"tff", cfg.tff},
            {"steps", cfg.steps}, {"stride", cfg.stride}};
}

void emit(const Table& table, const std::string& command, const RunConfig& cfg,
          const std::string& geometry, const std::string& path) {
    if (cfg.format == "json")
        write_json(table, meta_for(command, cfg, geometry), path);
    else
        write_csv(table, path);
    std::cout << command << " " << geometry << " -> " << path << "\n";
}

std::vector<double> sample_times(const Schedule& sched, long steps, long stride) {
    std::vector<double> ts;
    for (long k = 0; k <= steps; k += stride)
        ts.push_back(sched.tff * static_cast<double>(k) / static_cast<double>(steps));
    return ts;
}

Table spectrum_table(const ClusterGeometry& g, const Schedule& sched, long steps,
                     long stride) {
    Table t;
    t.columns = {"t", "r"};
    for (int i = 1; i <= g.dim(); ++i) t.columns.push_back("e" + std::to_string(i));
    for (double time : sample_times(sched, steps, stride)) {
        const double r = sched.advanced_r(time);
        const SymEig eig = eigh(h0_matrix(g, sched.j_at(r), sched.bx_at(r)));
        std::vector<double> row = {time, r};
        row.insert(row.end(), eig.values.begin(), eig.values.end());
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table drive_table(const ClusterGeometry& g, const Schedule& sched, long steps,
                  long stride) {
    Table t;
    t.columns = {"t", "v"};
    for (int i = 1; i <= g.pair_class_count(); ++i)
        t.columns.push_back("vW" + std::to_string(i));
    if (g.q_included) t.columns.push_back("vQ");
    t.columns.push_back("degenerate");
    const detail::SweepContext ctx(g, sched, /*drive=*/true);
    for (double time : sample_times(sched, steps, stride)) {
        std::vector<double> row = {time, sched.velocity(time)};
        try {
            const detail::StageEval e = ctx.eval(time);
            for (double w : e.weights.w) row.push_back(e.v * w);
            if (g.q_included) row.push_back(e.v * e.weights.q);
            row.push_back(0.0);
        } catch (const degenerate_point_error&) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            for (int i = 0; i < g.unknown_count(); ++i) row.push_back(nan);
            row.push_back(1.0);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table evolve_table(const ClusterGeometry& g, const Schedule& sched, long steps,
                   long stride) {
    Table t;
    t.columns = {"t", "fidelity", "norm"};
    for (const auto& cls : g.component_classes)
        t.columns.push_back("p" + std::to_string(cls.front()));
    for (const EvolutionRecord& rec : evolve(g, sched, steps, stride)) {
        std::vector<double> row = {rec.t, rec.fidelity, rec.norm};
        for (const auto& cls : g.component_classes)
            row.push_back(std::norm(rec.amplitudes[cls.front() - 1]));
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string per_geometry_path(const std::string& base, const std::string& geometry) {
    const std::filesystem::path p(base);
    std::filesystem::path out = p.parent_path();
    out /= p.stem().string() + "_" + geometry + p.extension().string();
    return out.string();
}

int run_command(const std::string& command, const RunConfig& cfg) {
    validate_config(cfg);
    const Schedule sched = make_schedule(cfg);
    std::string out = cfg.out;
    if (out.empty()) out = command + (cfg.format == "json" ? ".json" : ".csv");

    auto run_one = [&](const std::string& geometry, const std::string& path) {
        const ClusterGeometry& g = catalog(std::string_view(geometry));
        Table t;
        if (command == "spectrum")
            t = spectrum_table(g, sched, cfg.steps, cfg.stride);
        else if (command == "drive")
            t = drive_table(g, sched, cfg.steps, cfg.stride);
        else
            t = evolve_table(g, sched, cfg.steps, cfg.stride);
        emit(t, command, cfg, geometry, path);
    };

    if (!cfg.all_geometries) {
        run_one(cfg.geometry, out);
        return 0;
    }
    std::vector<std::thread> workers;
    std::atomic<int> failures{0};
    for (Geometry which : all_geometries) {
        const std::string name(to_string(which));
        workers.emplace_back([&, name] {
            try {
                run_one(name, per_geometry_path(out, name));
            } catch (const std::exception& e) {
                std::cerr << name << ": " << e.what() << "\n";
                failures.fetch_add(1);
            }
        });
    }
    for (auto& w : workers) w.join();
    return failures.load() == 0 ? 0 : 2;
}

int run_verify(const RunConfig& cfg, bool single_geometry) {
    validate_config(cfg);
    const Schedule sched = make_schedule(cfg);
    std::vector<Geometry> geoms;
    if (single_geometry)
        geoms.push_back(catalog(std::string_view(cfg.geometry)).name);
    else
        geoms.assign(all_geometries.begin(), all_geometries.end());

    const std::vector<CheckResult> checks = run_verification(sched, geoms, cfg.steps);

    nlohmann::json doc;
    doc["params"] = meta_for("verify", cfg, single_geometry ? cfg.geometry : "all");
    bool all_pass = true;
    nlohmann::json arr = nlohmann::json::array();
    nlohmann::json ranks;
    for (const CheckResult& c : checks) {
        all_pass = all_pass && c.pass;
        arr.push_back({{"name", c.name},
                       {"geometry", c.geometry},
                       {"pass", c.pass},
                       {"metric", c.metric},
                       {"threshold", c.threshold},
                       {"detail", c.detail}});
        if (c.name == "rank_table") ranks[c.geometry] = static_cast<int>(c.metric);
        std::cout << (c.pass ? "pass" : "FAIL") << "  " << c.name << " [" << c.geometry
                  << "]  metric=" << fmt17(c.metric) << "\n";
    }
    doc["rank_table"] = ranks;
    doc["checks"] = arr;
    doc["all_pass"] = all_pass;

    std::string out = cfg.out.empty() ? "verify.json" : cfg.out;
    std::ofstream f(out, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file: " + out);
    f << doc.dump(2) << "\n";
    std::cout << (all_pass ? "all checks passed" : "CHECKS FAILED") << " -> " << out
              << "\n";
    return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driving-interaction toolkit for small transverse-Ising clusters"};
    app.set_config("--config", "", "flat key=value file; flags override it");

    RunConfig cfg;
    app.add_option("--geometry", cfg.geometry,
                   "triangle, chain3, pyramid, square, star or chain4");
    app.add_flag("--all-geometries", cfg.all_geometries,
                 "run every geometry, one output file each");
    app.add_option("--b0", cfg.b0, "transverse field at R = 0");
    app.add_option("--r0", cfg.r0, "sweep start");
    app.add_option("--vbar", cfg.vbar, "mean rescaled velocity");
    app.add_option("--tff", cfg.tff, "sweep duration");
    app.add_option("--steps", cfg.steps, "integration steps (>= 1000)");
    app.add_option("--stride", cfg.stride, "record every this many steps");
    app.add_option("--out", cfg.out, "output path");
    app.add_option("--format", cfg.format, "csv or json");

    auto* c_spectrum = app.add_subcommand("spectrum", "eigenvalues along the sweep");
    auto* c_drive = app.add_subcommand("drive", "v(t) times the driving strengths");
    auto* c_evolve = app.add_subcommand("evolve", "TDSE run: fidelity and amplitudes");
    auto* c_verify = app.add_subcommand("verify", "self-check battery (JSON report)");
    for (auto* sub : {c_spectrum, c_drive, c_evolve, c_verify}) sub->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (c_verify->parsed())
            return run_verify(cfg, app.count("--geometry") > 0);
        const std::string command = c_spectrum->parsed()  ? "spectrum"
                                    : c_drive->parsed()   ? "drive"
                                                          : "evolve";
        (void)c_evolve;
        return run_command(command, cfg);
    } catch (const degenerate_point_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const inconsistent_system_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const step_size_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
