#include "bms/clusterer.hpp"

#include <cmath>
#include <string>

#include "bms/diagnostics.hpp"
#include "bms/error.hpp"
#include "bms/graph.hpp"

namespace bms {

std::vector<std::size_t> single_linkage_labels(const Configuration& cfg, double merge_tol) {
    if (!(merge_tol >= 0.0)) throw ParameterError("merge_tol must be non-negative");
    const std::size_t n = cfg.size();
    DisjointSets sets(n);
    const double tol_sq = merge_tol * merge_tol;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (squared_distance(cfg.point(i), cfg.point(j)) <= tol_sq) sets.unite(i, j);
    std::vector<std::size_t> labels(n);
    const auto groups = sets.groups();
    for (std::size_t m = 0; m < groups.size(); ++m)
        for (std::size_t i : groups[m]) labels[i] = m + 1;
    return labels;
}

double default_merge_tol(const Configuration& points) { return 1e-8 * diameter(points); }

ClusterResult cluster(const Configuration& points, const Kernel& kernel, double h,
                      const StopRule& stop, std::optional<double> merge_tol, const TraceSink& sink) {
    const double tol = merge_tol.value_or(default_merge_tol(points));
    if (!(tol >= 0.0)) throw ParameterError("merge_tol must be non-negative");

    RunOptions options;
    options.keep_records = false;
    IterationRecord last;
    auto forward = [&](const StepView& view) {
        last = view.record;
        if (sink) sink(view);
    };
    RunResult run = run_bms(points, kernel, h, stop, forward, options);

    ClusterResult result;
    result.labels = single_linkage_labels(run.final_config, tol);
    std::size_t M = 0;
    for (std::size_t label : result.labels) M = std::max(M, label);
    result.M = M;

    const std::size_t d = points.dim();
    result.representatives.assign(M, std::vector<double>(d, 0.0));
    std::vector<std::size_t> counts(M, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::size_t m = result.labels[i] - 1;
        ++counts[m];
        const auto y = run.final_config.point(i);
        for (std::size_t k = 0; k < d; ++k) result.representatives[m][k] += y[k];
    }
    for (std::size_t m = 0; m < M; ++m)
        for (auto& v : result.representatives[m]) v /= static_cast<double>(counts[m]);

    result.T = run.steps;
    result.stop_reason = run.stop_reason;
    result.trace_summary = last;
    result.terminal = std::move(run.final_config);
    return result;
}

std::vector<SweepRow> bandwidth_sweep(const Configuration& points, const Kernel& kernel,
                                      const std::vector<double>& h_grid, const StopRule& stop,
                                      std::optional<double> merge_tol) {
    if (h_grid.empty()) throw ParameterError("bandwidth grid is empty");
    for (double h : h_grid) require_bandwidth(h);
    std::vector<SweepRow> rows;
    rows.reserve(h_grid.size());
    for (double h : h_grid) {
        const ClusterResult res = cluster(points, kernel, h, stop, merge_tol);
        rows.push_back({h, res.M, res.T, objective(res.terminal, kernel, h), res.stop_reason});
    }
    return rows;
}

std::vector<double> bandwidth_grid(double h_min, double h_max, double h_step) {
    if (!(h_min > 0.0) || !(h_max >= h_min) || !(h_step > 0.0))
        throw ParameterError("bandwidth grid needs 0 < h_min <= h_max and h_step > 0");
    std::vector<double> grid;
    // Tolerate rounding so that e.g. 0.03..3.0 step 0.03 has 100 entries.
    const auto count = static_cast<std::size_t>(std::floor((h_max - h_min) / h_step + 1e-9)) + 1;
    grid.reserve(count);
    for (std::size_t k = 0; k < count; ++k) grid.push_back(h_min + static_cast<double>(k) * h_step);
    return grid;
}

std::vector<double> Standardized::inverse(std::span<const double> z) const {
    if (z.size() != mean.size()) throw DataError("point dimension differs from standardization");
    std::vector<double> out(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) out[k] = z[k] * stddev[k] + mean[k];
    return out;
}

Standardized standardize(const Configuration& points) {
    const std::size_t n = points.size();
    const std::size_t d = points.dim();
    if (n < 2) throw DataError("standardize needs at least 2 points");
    Standardized out{points, std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k) out.mean[k] += points(i, k);
    for (auto& m : out.mean) m /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            const double c = points(i, k) - out.mean[k];
            out.stddev[k] += c * c;
        }
    for (std::size_t k = 0; k < d; ++k) {
        out.stddev[k] = std::sqrt(out.stddev[k] / static_cast<double>(n));
        if (!(out.stddev[k] > 0.0))
            throw ConfigError("axis " + std::to_string(k) + " has zero variance");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k)
            out.points(i, k) = (points(i, k) - out.mean[k]) / out.stddev[k];
    return out;
}

}  // namespace bms
