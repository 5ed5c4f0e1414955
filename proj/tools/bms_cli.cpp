#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bms/clusterer.hpp"
#include "bms/datasets.hpp"
#include "bms/engine.hpp"
#include "bms/error.hpp"
#include "bms/io.hpp"
#include "bms/kernels.hpp"
#include "bms/oracles.hpp"
#include "bms/verify.hpp"

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct KernelArgs {
    std::string name = "epanechnikov";
    std::string file;

    void add_to(CLI::App* app) {
        app->add_option("--kernel", name, "built-in kernel name");
        app->add_option("--kernel-file", file, "custom kernel definition (JSON)")->check(CLI::ExistingFile);
    }

    bms::Kernel make() const {
        if (file.empty()) return bms::Kernel::from_name(name);
        std::ifstream in(file, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return bms::Kernel::from_json(ss.str());
    }
};

struct InputArgs {
    std::string path;
    std::string format = "auto";
    bool standardize = false;

    void add_to(CLI::App* app) {
        app->add_option("--input", path, "points as CSV or JSON")->required()->check(CLI::ExistingFile);
        app->add_option("--format", format, "auto, csv or json")
            ->check(CLI::IsMember({"auto", "csv", "json"}));
        app->add_flag("--standardize", standardize, "z-score every axis before running");
    }

    bms::io::PointFormat point_format() const {
        if (format == "csv") return bms::io::PointFormat::csv;
        if (format == "json") return bms::io::PointFormat::json;
        return bms::io::PointFormat::automatic;
    }
};

struct StopArgs {
    std::size_t max_iter = 10000;
    double move_tol = -1.0;

    void add_to(CLI::App* app) {
        app->add_option("--max-iter", max_iter, "iteration cap")->check(CLI::PositiveNumber);
        app->add_option("--move-tol", move_tol,
                        "stop when no point moves this far (default 1e-12 * diameter, 0 disables)");
    }

    bms::StopRule make(const bms::Configuration& points) const {
        bms::StopRule rule = bms::StopRule::defaults_for(points);
        rule.max_iter = max_iter;
        if (move_tol >= 0.0) rule.move_tol = move_tol;
        rule.validate();
        return rule;
    }
};

struct Loaded {
    bms::Configuration points;
    std::optional<bms::Standardized> standardized;
};

Loaded load(const InputArgs& in) {
    Loaded out{bms::io::load_points(in.path, in.point_format()), std::nullopt};
    if (in.standardize) {
        out.standardized = bms::standardize(out.points);
        out.points = out.standardized->points;
    }
    return out;
}

std::string population_csv(double s0, double h, std::size_t steps) {
    std::string out = "t,s,ratio\n";
    std::vector<double> s{s0};
    for (std::size_t t = 1; t <= steps + 1; ++t) {
        const double cur = s[0];
        std::string ratio = "nan";
        if (t <= steps) {
            s = bms::population_recurrence_step(s, h);
            if (cur > 0.0) ratio = bms::io::format_double(s[0] / (cur * cur * cur));
        }
        out += std::to_string(t) + "," + bms::io::format_double(cur) + "," + ratio + "\n";
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blurring mean shift clustering and convergence checks"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);
    app.set_version_flag("--version", "bms 1.0");

    // cluster
    auto* cluster_cmd = app.add_subcommand("cluster", "cluster points and write a JSON summary");
    InputArgs cluster_in;
    KernelArgs cluster_kernel;
    StopArgs cluster_stop;
    double cluster_h = 0.0;
    std::string cluster_out = "-";
    std::string cluster_trace;
    std::optional<double> merge_tol;
    cluster_in.add_to(cluster_cmd);
    cluster_kernel.add_to(cluster_cmd);
    cluster_stop.add_to(cluster_cmd);
    cluster_cmd->add_option("--h", cluster_h, "bandwidth")->required()->check(CLI::PositiveNumber);
    cluster_cmd->add_option("--out", cluster_out, "summary path (- for stdout)");
    cluster_cmd->add_option("--trace", cluster_trace, "per-iteration JSONL trace path");
    cluster_cmd->add_option("--merge-tol", merge_tol, "distance below which terminal points share a label")
        ->check(CLI::NonNegativeNumber);

    // trace
    auto* trace_cmd = app.add_subcommand("trace", "run blurring mean shift and write only the JSONL trace");
    InputArgs trace_in;
    KernelArgs trace_kernel;
    StopArgs trace_stop;
    double trace_h = 0.0;
    std::string trace_out = "-";
    trace_in.add_to(trace_cmd);
    trace_kernel.add_to(trace_cmd);
    trace_stop.add_to(trace_cmd);
    trace_cmd->add_option("--h", trace_h, "bandwidth")->required()->check(CLI::PositiveNumber);
    trace_cmd->add_option("--out", trace_out, "trace path (- for stdout)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check the convergence inequalities along a run");
    InputArgs verify_in;
    KernelArgs verify_kernel;
    double verify_h = 0.0;
    bms::VerifyOptions verify_opts;
    std::string verify_out = "-";
    verify_in.add_to(verify_cmd);
    verify_kernel.add_to(verify_cmd);
    verify_cmd->add_option("--h", verify_h, "bandwidth")->required()->check(CLI::PositiveNumber);
    verify_cmd->add_option("--max-iter", verify_opts.max_iter, "iteration cap")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--fuzz", verify_opts.fuzz, "extra random configurations for the graph checks");
    verify_cmd->add_option("--directions", verify_opts.direction_count, "number of projection directions")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify_opts.seed, "seed for directions and fuzzing");
    verify_cmd->add_flag("--inject-descent", verify_opts.inject_descent, "fake an objective drop at step 1");
    verify_cmd->add_option("--out", verify_out, "report path (- for stdout)");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "closed-form reference dynamics");
    oracle_cmd->require_subcommand(1);
    auto* simplex_cmd = oracle_cmd->add_subcommand("simplex", "engine vs regular simplex recurrence");
    KernelArgs simplex_kernel;
    std::size_t simplex_n = 2, simplex_d = 1, simplex_steps = 10;
    double simplex_h = 1.0, simplex_r0 = 0.99;
    std::string simplex_out = "-";
    simplex_kernel.add_to(simplex_cmd);
    simplex_cmd->add_option("--n", simplex_n, "number of vertices")->check(CLI::Range(2, 1 << 20));
    simplex_cmd->add_option("--d", simplex_d, "dimension")->check(CLI::PositiveNumber);
    simplex_cmd->add_option("--h", simplex_h, "bandwidth")->check(CLI::PositiveNumber);
    simplex_cmd->add_option("--r0", simplex_r0, "initial radius")->check(CLI::PositiveNumber);
    simplex_cmd->add_option("--steps", simplex_steps, "iterations");
    simplex_cmd->add_option("--out", simplex_out, "CSV path (- for stdout)");

    auto* population_cmd = oracle_cmd->add_subcommand("population", "Gaussian population scale recurrence");
    double pop_s0 = 1.0, pop_h = 1.0;
    std::size_t pop_steps = 30;
    std::string pop_out = "-";
    population_cmd->add_option("--s0", pop_s0, "initial standard deviation")->check(CLI::PositiveNumber);
    population_cmd->add_option("--h", pop_h, "bandwidth")->check(CLI::PositiveNumber);
    population_cmd->add_option("--steps", pop_steps, "iterations");
    population_cmd->add_option("--out", pop_out, "CSV path (- for stdout)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "cluster over a bandwidth grid");
    InputArgs sweep_in;
    KernelArgs sweep_kernel;
    StopArgs sweep_stop;
    double h_min = 0.03, h_max = 3.0, h_step = 0.03;
    std::string sweep_out = "-";
    std::optional<double> sweep_merge_tol;
    sweep_in.add_to(sweep_cmd);
    sweep_kernel.add_to(sweep_cmd);
    sweep_stop.add_to(sweep_cmd);
    sweep_cmd->add_option("--h-min", h_min, "smallest bandwidth")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--h-max", h_max, "largest bandwidth")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--h-step", h_step, "grid spacing")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--merge-tol", sweep_merge_tol, "label merge distance")->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--out", sweep_out, "CSV path (- for stdout)");

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "write a synthetic 2-D dataset as CSV");
    std::string gen_name = "two_blobs";
    std::size_t gen_n = 500;
    std::uint64_t gen_seed = 0x5EED;
    std::string gen_out = "-";
    gen_cmd->add_option("--dataset", gen_name, "blobs, two_blobs, varied, aniso, moons, circles, uniform");
    gen_cmd->add_option("--n", gen_n, "number of points")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen_seed, "random seed");
    gen_cmd->add_option("--out", gen_out, "CSV path (- for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*cluster_cmd) {
            const Loaded in = load(cluster_in);
            const bms::Kernel kernel = cluster_kernel.make();
            const bms::StopRule rule = cluster_stop.make(in.points);
            std::vector<bms::IterationRecord> records;
            bms::TraceSink sink;
            if (!cluster_trace.empty()) sink = [&](const bms::StepView& v) { records.push_back(v.record); };
            bms::ClusterResult result = bms::cluster(in.points, kernel, cluster_h, rule, merge_tol, sink);
            if (in.standardized)
                for (auto& rep : result.representatives) rep = in.standardized->inverse(rep);
            if (!cluster_trace.empty()) bms::io::emit_trace(records, cluster_trace);
            bms::io::write_text(cluster_out, bms::io::cluster_result_json(result, cluster_h, kernel.name()));
        } else if (*trace_cmd) {
            const Loaded in = load(trace_in);
            const bms::Kernel kernel = trace_kernel.make();
            const bms::RunResult run = bms::run_bms(in.points, kernel, trace_h, trace_stop.make(in.points));
            if (trace_out == "-")
                bms::io::write_trace(std::cout, run.records);
            else
                bms::io::emit_trace(run.records, trace_out);
        } else if (*verify_cmd) {
            const Loaded in = load(verify_in);
            const bms::Kernel kernel = verify_kernel.make();
            const bms::VerifyReport report = bms::run_verify(in.points, kernel, verify_h, verify_opts);
            bms::io::write_text(verify_out, report.to_json());
            if (!report.passed()) {
                for (const auto& c : report.checks)
                    if (!c.passed) std::cerr << "check failed: " << c.name << " at step " << c.step << "\n";
                return kCheckFailed;
            }
        } else if (*simplex_cmd) {
            const bms::Kernel kernel = simplex_kernel.make();
            const auto cmp = bms::compare_sim_to_oracle(kernel, simplex_n, simplex_d, simplex_h, simplex_r0,
                                                        simplex_steps);
            bms::io::write_text(simplex_out, bms::io::simplex_csv(cmp));
        } else if (*population_cmd) {
            bms::io::write_text(pop_out, population_csv(pop_s0, pop_h, pop_steps));
        } else if (*sweep_cmd) {
            if (h_max < h_min) throw bms::ParameterError("--h-max is below --h-min");
            const Loaded in = load(sweep_in);
            const bms::Kernel kernel = sweep_kernel.make();
            const auto rows = bms::bandwidth_sweep(in.points, kernel, bms::bandwidth_grid(h_min, h_max, h_step),
                                                   sweep_stop.make(in.points), sweep_merge_tol);
            bms::io::write_text(sweep_out, bms::io::sweep_csv(rows));
        } else if (*gen_cmd) {
            const auto ds = bms::datasets::by_name(gen_name, gen_n, gen_seed);
            std::string text = "x,y\n";
            for (std::size_t i = 0; i < ds.points.size(); ++i)
                text += bms::io::format_double(ds.points(i, 0)) + "," + bms::io::format_double(ds.points(i, 1)) +
                        "\n";
            bms::io::write_text(gen_out, text);
        }
    } catch (const bms::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const bms::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kOk;
}
