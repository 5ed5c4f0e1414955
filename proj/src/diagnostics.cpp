#include "bms/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "bms/error.hpp"

namespace bms {

Extent directional_extents(const Configuration& cfg, std::span<const double> direction) {
    if (direction.size() != cfg.dim()) throw ParameterError("direction dimension differs from data");
    double norm_sq = 0.0;
    for (double v : direction) norm_sq += v * v;
    if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-12) throw ParameterError("direction must be a unit vector");
    Extent ext{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        const auto y = cfg.point(i);
        double proj = 0.0;
        for (std::size_t k = 0; k < y.size(); ++k) proj += direction[k] * y[k];
        ext.lo = std::min(ext.lo, proj);
        ext.hi = std::max(ext.hi, proj);
    }
    return ext;
}

double diameter(const Configuration& cfg) {
    const auto n = static_cast<std::ptrdiff_t>(cfg.size());
    double worst_sq = 0.0;
#pragma omp parallel for schedule(dynamic, 16) reduction(max : worst_sq)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
        const auto i = static_cast<std::size_t>(r);
        for (std::size_t j = i + 1; j < cfg.size(); ++j)
            worst_sq = std::max(worst_sq, squared_distance(cfg.point(i), cfg.point(j)));
    }
    return std::sqrt(worst_sq);
}

double component_diameter(const Configuration& cfg,
                          const std::vector<std::vector<std::size_t>>& partition) {
    double worst_sq = 0.0;
    for (const auto& part : partition)
        for (std::size_t a = 0; a < part.size(); ++a)
            for (std::size_t b = a + 1; b < part.size(); ++b)
                worst_sq = std::max(worst_sq, squared_distance(cfg.point(part[a]), cfg.point(part[b])));
    return std::sqrt(worst_sq);
}

double diameter_rate_bound(double d_t, const Kernel& kernel, double h) {
    const double u = (d_t / h) * (d_t / h) / 2.0;
    return (1.0 - kernel.g_unchecked(u) / (4.0 * kernel.g0())) * d_t;
}

bool diam_rate_check(double d_t, double d_t1, const Kernel& kernel, double h, double rel_slack) {
    if (!(d_t >= 0.0) || !(d_t1 >= 0.0)) throw ParameterError("diameters must be non-negative");
    if (!(h > 0.0)) throw ParameterError("bandwidth must be positive");
    if (d_t == 0.0) return d_t1 == 0.0;
    return d_t1 <= diameter_rate_bound(d_t, kernel, h) + rel_slack * d_t;
}

DirectionSet::DirectionSet(std::size_t dim, std::size_t count, std::uint64_t seed)
    : dim_(dim), count_(count), dirs_(dim * count) {
    if (dim == 0) throw ParameterError("direction set needs dim >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (std::size_t m = 0; m < count; ++m) {
        double norm_sq = 0.0;
        do {
            norm_sq = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                dirs_[m * dim + k] = normal(rng);
                norm_sq += dirs_[m * dim + k] * dirs_[m * dim + k];
            }
        } while (norm_sq < 1e-12);
        const double norm = std::sqrt(norm_sq);
        for (std::size_t k = 0; k < dim; ++k) dirs_[m * dim + k] /= norm;
    }
}

std::vector<Extent> all_extents(const Configuration& cfg, const DirectionSet& dirs) {
    std::vector<Extent> out;
    out.reserve(dirs.size());
    for (std::size_t m = 0; m < dirs.size(); ++m) out.push_back(directional_extents(cfg, dirs[m]));
    return out;
}

double nesting_slack(const std::vector<Extent>& prev, const std::vector<Extent>& next) {
    if (prev.size() != next.size()) throw DataError("extent lists differ in length");
    double slack = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < prev.size(); ++m)
        slack = std::min({slack, next[m].lo - prev[m].lo, prev[m].hi - next[m].hi});
    return slack;
}

std::string_view to_string(RateClass c) {
    switch (c) {
    case RateClass::finite_time:
        return "finite_time";
    case RateClass::exponential:
        return "exponential";
    case RateClass::superlinear_cubic:
        return "superlinear_cubic";
    case RateClass::inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

RateEstimate estimate_rate(std::span<const double> residuals, double floor) {
    RateEstimate est;
    est.order = std::numeric_limits<double>::quiet_NaN();
    // The last residual of a trajectory is zero by construction; finite-time
    // convergence needs the zero to persist for at least one more step.
    for (std::size_t t = 0; t + 2 < residuals.size(); ++t) {
        if (residuals[t] > floor && residuals[t + 1] == 0.0 && residuals[t + 2] == 0.0) {
            est.classification = RateClass::finite_time;
            return est;
        }
    }

    std::vector<double> xs, ys;
    for (std::size_t t = 0; t + 1 < residuals.size(); ++t) {
        if (residuals[t] > floor && residuals[t + 1] > floor) {
            xs.push_back(std::log(residuals[t]));
            ys.push_back(std::log(residuals[t + 1]));
        }
    }
    est.samples_used = xs.size();
    if (xs.size() < 3) return est;

    const double count = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t m = 0; m < xs.size(); ++m) {
        mx += xs[m];
        my += ys[m];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t m = 0; m < xs.size(); ++m) {
        sxx += (xs[m] - mx) * (xs[m] - mx);
        sxy += (xs[m] - mx) * (ys[m] - my);
    }
    if (sxx == 0.0) return est;
    est.order = sxy / sxx;

    // Mean one-step ratio decides contraction in the linear band.
    double log_ratio = 0.0;
    for (std::size_t m = 0; m < xs.size(); ++m) log_ratio += ys[m] - xs[m];
    log_ratio /= count;

    if (est.order >= 2.5 && est.order <= 3.5)
        est.classification = RateClass::superlinear_cubic;
    else if (est.order >= 0.8 && est.order <= 1.2 && log_ratio < 0.0)
        est.classification = RateClass::exponential;
    return est;
}

double default_residual_floor(double initial_diameter) {
    return 1e3 * std::numeric_limits<double>::epsilon() * initial_diameter;
}

std::vector<double> residual_sequence(const std::vector<Configuration>& trajectory) {
    std::vector<double> out;
    if (trajectory.empty()) return out;
    const auto& last = trajectory.back();
    out.reserve(trajectory.size());
    for (const auto& cfg : trajectory) out.push_back(configuration_distance(cfg, last));
    return out;
}

}  // namespace bms
