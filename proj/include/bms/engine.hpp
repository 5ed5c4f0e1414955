#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "bms/configuration.hpp"
#include "bms/kernels.hpp"

namespace bms {

// One blurring mean shift update: every point moves to the G-weighted mean
// of the current points (self term included). The per-point loop runs under
// OpenMP; results are bitwise identical to serial::bms_step.
//
// The update is evaluated as y_i + sum_j G_ij (y_j - y_i) / sum_j G_ij so
// that coincident points stay exactly put.
Configuration bms_step(const Configuration& cfg, const Kernel& kernel, double h);

// Standard mean shift step of `query` against fixed data points.
// Throws IsolatedQueryError when no data point carries weight.
std::vector<double> ms_step(std::span<const double> query, const Configuration& data,
                            const Kernel& kernel, double h);

// L(u) = sum_{i,j} K((u_i - u_j)/h), self terms included, unnormalized.
double objective(const Configuration& cfg, const Kernel& kernel, double h);

struct Gradient {
    std::vector<double> values;  // row-major, block i is dL/du_i
    // Some pair sits exactly on the truncation radius of a non-smoothly
    // truncated kernel, where L is not differentiable.
    bool at_nonsmooth_radius = false;
};

// dL/du_i = -(2/h^2) sum_j (u_i - u_j) G((u_i - u_j)/h).
Gradient gradient(const Configuration& cfg, const Kernel& kernel, double h);

// Diagonal of S_t: row sums sum_j G_ij.
std::vector<double> weight_row_sums(const Configuration& cfg, const Kernel& kernel, double h);

// R(next | cfg) - R(cfg | cfg) for the quadratic minorizer R of L built at cfg.
double minorizer_gap(const Configuration& next, const Configuration& cfg, const Kernel& kernel,
                     double h);

struct StopRule {
    std::size_t max_iter = 10000;
    bool exact_fixed_point = true;  // stop when y_{t+1} == y_t bitwise
    double move_tol = 0.0;          // stop when max_i ||y_{t+1,i} - y_{t,i}|| < move_tol

    // exact fixed point, move_tol = 1e-12 * initial diameter, 10000 iterations.
    static StopRule defaults_for(const Configuration& initial);

    void validate() const;
};

// exact_fixed_point: y_{t+1} == y_t bitwise and the graph is singular.
// stalled: y_{t+1} == y_t bitwise although joined points remain apart; the
// remaining motion is below the floating-point resolution of the points.
enum class StopReason { exact_fixed_point, stalled, move_tol, max_iter };
std::string_view to_string(StopReason reason);

// Diagnostics for configuration y_t and the step to y_{t+1}.
struct IterationRecord {
    std::size_t t = 0;         // 1-based; y_1 is the data
    double objective = 0.0;    // L(y_t)
    double diameter = 0.0;     // d_t
    double comp_diameter = 0.0;  // rho_t
    double max_move = 0.0;     // max_i ||y_{t+1,i} - y_{t,i}||
    std::size_t n_components = 0;
    bool closed = false;
    bool singular = false;
    bool stable = false;
};

struct StepView {
    const IterationRecord& record;
    const Configuration& current;  // y_t
    const Configuration& next;     // y_{t+1}
};

using TraceSink = std::function<void(const StepView&)>;

struct RunResult {
    Configuration final_config;
    std::vector<IterationRecord> records;
    StopReason stop_reason = StopReason::max_iter;
    // Number of steps taken. For an exact fixed point this is the
    // terminated step T = min{t : y_{t+1} = y_t}.
    std::size_t steps = 0;
};

struct RunOptions {
    bool keep_records = true;
    double stability_tol = -1.0;  // < 0: graph default (1e-9 * beta * h)
};

// Iterates bms_step from cfg0 until the stop rule fires, emitting one record
// per step to `sink` (if set) in order.
RunResult run_bms(const Configuration& cfg0, const Kernel& kernel, double h, const StopRule& stop,
                  const TraceSink& sink = {}, const RunOptions& options = {});

// Serial reference implementations. They define the summation order the
// OpenMP kernels reproduce and exist for testing and benchmarking.
namespace serial {
Configuration bms_step(const Configuration& cfg, const Kernel& kernel, double h);
double objective(const Configuration& cfg, const Kernel& kernel, double h);
Gradient gradient(const Configuration& cfg, const Kernel& kernel, double h);
}  // namespace serial

void require_bandwidth(double h);

}  // namespace bms
