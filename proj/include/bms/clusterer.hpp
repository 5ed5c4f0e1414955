#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bms/configuration.hpp"
#include "bms/engine.hpp"
#include "bms/kernels.hpp"

namespace bms {

struct ClusterResult {
    std::vector<std::size_t> labels;  // 1..M, numbered by smallest member index
    std::vector<std::vector<double>> representatives;  // z_1..z_M
    std::size_t T = 0;                 // steps taken (terminated step on exact stop)
    std::size_t M = 0;
    StopReason stop_reason = StopReason::max_iter;
    IterationRecord trace_summary;     // last record
    Configuration terminal;
};

// Single-linkage grouping of points: i ~ j when ||y_i - y_j|| <= merge_tol.
// Returns 1-based labels ordered by smallest member index.
std::vector<std::size_t> single_linkage_labels(const Configuration& cfg, double merge_tol);

// 1e-8 * diameter of the data.
double default_merge_tol(const Configuration& points);

// Runs blurring mean shift on `points` and groups the terminal points.
// merge_tol defaults to default_merge_tol(points).
ClusterResult cluster(const Configuration& points, const Kernel& kernel, double h,
                      const StopRule& stop, std::optional<double> merge_tol = std::nullopt,
                      const TraceSink& sink = {});

struct SweepRow {
    double h = 0.0;
    std::size_t M = 0;
    std::size_t T = 0;
    double L_final = 0.0;
    StopReason stop_reason = StopReason::max_iter;
};

// One clustering run per bandwidth. No bandwidth is selected.
std::vector<SweepRow> bandwidth_sweep(const Configuration& points, const Kernel& kernel,
                                      const std::vector<double>& h_grid, const StopRule& stop,
                                      std::optional<double> merge_tol = std::nullopt);

// {h_min, h_min + step, ..., h_max}, computed as h_min + k * step to avoid drift.
std::vector<double> bandwidth_grid(double h_min, double h_max, double h_step);

struct Standardized {
    Configuration points;
    std::vector<double> mean;
    std::vector<double> stddev;  // population standard deviation per axis

    // Maps a point in standardized coordinates back to data coordinates.
    std::vector<double> inverse(std::span<const double> z) const;
};

// Per-axis z-scores. Throws ConfigError naming the axis when its variance is
// zero, DataError when n < 2.
Standardized standardize(const Configuration& points);

}  // namespace bms
