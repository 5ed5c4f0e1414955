#include "bms/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bms/diagnostics.hpp"
#include "bms/error.hpp"
#include "bms/graph.hpp"

namespace bms {

namespace {

constexpr std::size_t kMaxStackDim = 16;

void require_usable_kernel(const Kernel& kernel) {
    if (!(kernel.g0() > 0.0) || !std::isfinite(kernel.g0()))
        throw ConfigError("kernel " + kernel.name() + " has g(0) <= 0; update weights undefined");
}

void check_inputs(const Configuration& cfg, const Kernel& kernel, double h) {
    require_bandwidth(h);
    require_usable_kernel(kernel);
    cfg.require_finite();
}

// Row i of the update, accumulated in extended precision so that strongly
// contracting steps keep their relative accuracy.
void step_row(const Configuration& cfg, const Kernel& kernel, double h, std::size_t i,
              std::span<double> out) {
    const std::size_t n = cfg.size();
    const std::size_t d = cfg.dim();
    const auto yi = cfg.point(i);
    long double acc[kMaxStackDim];
    std::vector<long double> heap;
    long double* sum = acc;
    if (d > kMaxStackDim) {
        heap.resize(d);
        sum = heap.data();
    }
    std::fill(sum, sum + d, 0.0L);
    long double wsum = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
        const auto yj = cfg.point(j);
        const long double w = kernel.g_extended(profile_arg(squared_distance(yi, yj), h));
        if (w == 0.0L) continue;
        wsum += w;
        for (std::size_t k = 0; k < d; ++k)
            sum[k] += w * (static_cast<long double>(yj[k]) - static_cast<long double>(yi[k]));
    }
    for (std::size_t k = 0; k < d; ++k)
        out[k] = static_cast<double>(static_cast<long double>(yi[k]) + sum[k] / wsum);
}

double objective_row(const Configuration& cfg, const Kernel& kernel, double h, std::size_t i) {
    const auto yi = cfg.point(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < cfg.size(); ++j)
        acc += kernel.k_unchecked(profile_arg(squared_distance(yi, cfg.point(j)), h));
    return acc;
}

// Returns true if some pair of row i sits exactly on a non-smooth radius.
bool gradient_row(const Configuration& cfg, const Kernel& kernel, double h, std::size_t i,
                  std::span<double> out) {
    const std::size_t d = cfg.dim();
    const auto yi = cfg.point(i);
    const bool nonsmooth = kernel.truncation_class() == TruncationClass::non_smoothly_truncated;
    bool flagged = false;
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t j = 0; j < cfg.size(); ++j) {
        const auto yj = cfg.point(j);
        const double u = profile_arg(squared_distance(yi, yj), h);
        if (nonsmooth && u == kernel.support_u()) flagged = true;
        const double w = kernel.g_unchecked(u);
        if (w == 0.0) continue;
        for (std::size_t k = 0; k < d; ++k) out[k] += w * (yj[k] - yi[k]);
    }
    const double scale = 2.0 / (h * h);
    for (auto& v : out) v *= scale;
    return flagged;
}

double sum_in_order(const std::vector<double>& parts) {
    double total = 0.0;
    for (double p : parts) total += p;
    return total;
}

}  // namespace

void require_bandwidth(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("bandwidth h must be positive");
}

Configuration bms_step(const Configuration& cfg, const Kernel& kernel, double h) {
    check_inputs(cfg, kernel, h);
    Configuration next(cfg.size(), cfg.dim());
    const auto n = static_cast<std::ptrdiff_t>(cfg.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        step_row(cfg, kernel, h, static_cast<std::size_t>(i), next.point(static_cast<std::size_t>(i)));
    return next;
}

std::vector<double> ms_step(std::span<const double> query, const Configuration& data,
                            const Kernel& kernel, double h) {
    require_bandwidth(h);
    require_usable_kernel(kernel);
    if (query.size() != data.dim()) throw DataError("query dimension differs from data");
    std::vector<double> num(query.size(), 0.0);
    double wsum = 0.0;
    for (std::size_t j = 0; j < data.size(); ++j) {
        const auto xj = data.point(j);
        const double w = kernel.g_unchecked(profile_arg(squared_distance(query, xj), h));
        if (w == 0.0) continue;
        wsum += w;
        for (std::size_t k = 0; k < num.size(); ++k) num[k] += w * xj[k];
    }
    if (wsum == 0.0) throw IsolatedQueryError("query lies outside the support of every data point");
    for (auto& v : num) v /= wsum;
    return num;
}

double objective(const Configuration& cfg, const Kernel& kernel, double h) {
    require_bandwidth(h);
    std::vector<double> rows(cfg.size());
    const auto n = static_cast<std::ptrdiff_t>(cfg.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        rows[static_cast<std::size_t>(i)] = objective_row(cfg, kernel, h, static_cast<std::size_t>(i));
    return sum_in_order(rows);
}

Gradient gradient(const Configuration& cfg, const Kernel& kernel, double h) {
    require_bandwidth(h);
    Gradient grad;
    grad.values.assign(cfg.size() * cfg.dim(), 0.0);
    const auto n = static_cast<std::ptrdiff_t>(cfg.size());
    const std::size_t d = cfg.dim();
    int flagged = 0;
#pragma omp parallel for schedule(static) reduction(| : flagged)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto row = static_cast<std::size_t>(i);
        if (gradient_row(cfg, kernel, h, row, std::span<double>(grad.values).subspan(row * d, d)))
            flagged |= 1;
    }
    grad.at_nonsmooth_radius = flagged != 0;
    return grad;
}

std::vector<double> weight_row_sums(const Configuration& cfg, const Kernel& kernel, double h) {
    require_bandwidth(h);
    std::vector<double> sums(cfg.size(), 0.0);
    for (std::size_t i = 0; i < cfg.size(); ++i)
        for (std::size_t j = 0; j < cfg.size(); ++j)
            sums[i] += kernel.g_unchecked(profile_arg(squared_distance(cfg.point(i), cfg.point(j)), h));
    return sums;
}

double minorizer_gap(const Configuration& next, const Configuration& cfg, const Kernel& kernel,
                     double h) {
    require_bandwidth(h);
    if (!next.same_shape(cfg)) throw DataError("minorizer_gap: configurations differ in shape");
    double before = 0.0, after = 0.0;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        for (std::size_t j = 0; j < cfg.size(); ++j) {
            const double sq = squared_distance(cfg.point(i), cfg.point(j));
            const double w = kernel.g_unchecked(profile_arg(sq, h));
            if (w == 0.0) continue;
            before += w / 2.0 * sq;
            after += w / 2.0 * squared_distance(next.point(i), next.point(j));
        }
    }
    return (before - after) / (h * h);
}

StopRule StopRule::defaults_for(const Configuration& initial) {
    StopRule rule;
    rule.move_tol = 1e-12 * diameter(initial);
    return rule;
}

void StopRule::validate() const {
    if (max_iter < 1) throw ParameterError("max_iter must be at least 1");
    if (!(move_tol >= 0.0)) throw ParameterError("move_tol must be non-negative");
}

std::string_view to_string(StopReason reason) {
    switch (reason) {
    case StopReason::exact_fixed_point:
        return "exact_fixed_point";
    case StopReason::stalled:
        return "stalled";
    case StopReason::move_tol:
        return "move_tol";
    case StopReason::max_iter:
        return "max_iter";
    }
    return "unknown";
}

RunResult run_bms(const Configuration& cfg0, const Kernel& kernel, double h, const StopRule& stop,
                  const TraceSink& sink, const RunOptions& options) {
    stop.validate();
    check_inputs(cfg0, kernel, h);
    const double stability_tol =
        options.stability_tol >= 0.0 ? options.stability_tol : default_stability_tol(kernel, h);

    RunResult result;
    Configuration current = cfg0;
    for (std::size_t t = 1;; ++t) {
        Configuration next = bms_step(current, kernel, h);

        const BmsGraph graph = build_graph(current, kernel, h);
        const GraphClassification cls = classify(graph, current, kernel, h, stability_tol);
        IterationRecord rec;
        rec.t = t;
        rec.objective = objective(current, kernel, h);
        rec.diameter = diameter(current);
        rec.comp_diameter = component_diameter(current, graph.components);
        rec.max_move = max_point_move(current, next);
        rec.n_components = graph.n_components();
        rec.closed = cls.closed;
        rec.singular = cls.singular;
        rec.stable = cls.stable;

        if (sink) sink(StepView{rec, current, next});
        if (options.keep_records) result.records.push_back(rec);
        result.steps = t;

        const bool fixed = next == current;
        current = std::move(next);
        if (stop.exact_fixed_point && fixed) {
            result.stop_reason = rec.singular ? StopReason::exact_fixed_point : StopReason::stalled;
            break;
        }
        if (stop.move_tol > 0.0 && rec.max_move < stop.move_tol) {
            result.stop_reason = StopReason::move_tol;
            break;
        }
        if (t >= stop.max_iter) {
            result.stop_reason = StopReason::max_iter;
            break;
        }
    }
    result.final_config = std::move(current);
    return result;
}

namespace serial {

Configuration bms_step(const Configuration& cfg, const Kernel& kernel, double h) {
    check_inputs(cfg, kernel, h);
    Configuration next(cfg.size(), cfg.dim());
    for (std::size_t i = 0; i < cfg.size(); ++i) step_row(cfg, kernel, h, i, next.point(i));
    return next;
}

double objective(const Configuration& cfg, const Kernel& kernel, double h) {
    require_bandwidth(h);
    std::vector<double> rows(cfg.size());
    for (std::size_t i = 0; i < cfg.size(); ++i) rows[i] = objective_row(cfg, kernel, h, i);
    return sum_in_order(rows);
}

Gradient gradient(const Configuration& cfg, const Kernel& kernel, double h) {
    require_bandwidth(h);
    Gradient grad;
    grad.values.assign(cfg.size() * cfg.dim(), 0.0);
    const std::size_t d = cfg.dim();
    for (std::size_t i = 0; i < cfg.size(); ++i)
        if (gradient_row(cfg, kernel, h, i, std::span<double>(grad.values).subspan(i * d, d)))
            grad.at_nonsmooth_radius = true;
    return grad;
}

}  // namespace serial

}  // namespace bms
