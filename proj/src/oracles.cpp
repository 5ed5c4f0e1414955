#include "bms/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bms/diagnostics.hpp"
#include "bms/engine.hpp"
#include "bms/error.hpp"

namespace bms {

namespace {

double configuration_norm(const Configuration& cfg) {
    double sq = 0.0;
    for (double v : cfg.flat()) sq += v * v;
    return std::sqrt(sq);
}

double pairwise_symmetry_error(const Configuration& cfg) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < cfg.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.size(); ++j) {
            const double dist = distance(cfg.point(i), cfg.point(j));
            lo = std::min(lo, dist);
            hi = std::max(hi, dist);
        }
    if (hi == 0.0) return 0.0;
    return hi / lo - 1.0;
}

}  // namespace

double SimplexState::pairwise_distance() const {
    return std::sqrt(2.0 / static_cast<double>(n - 1)) * r;
}

Configuration simplex_vertices(std::size_t n, std::size_t d, double r) {
    if (n < 2) throw ParameterError("simplex needs at least 2 points");
    if (n > d + 1) throw ParameterError("regular simplex with n points needs d >= n - 1");
    if (!(r > 0.0)) throw ParameterError("simplex radius must be positive");
    Configuration cfg(n, d);
    // Helmert basis vector k (k = 1..n-1): (1, .., 1, -k, 0, ..) / sqrt(k(k+1)).
    // Vertex i has coordinate k equal to the i-th entry of basis vector k; every
    // vertex then has squared norm 1 - 1/n and the configuration norm is sqrt(n-1).
    const double scale = r / std::sqrt(static_cast<double>(n - 1));
    for (std::size_t k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double inv = 1.0 / std::sqrt(kk * (kk + 1.0));
        for (std::size_t i = 0; i < k; ++i) cfg(i, k - 1) = scale * inv;
        cfg(k, k - 1) = -scale * kk * inv;
    }
    return cfg;
}

double simplex_shrink_factor(const SimplexState& state, const Kernel& kernel) {
    const double u = (state.r / state.h) * (state.r / state.h) / static_cast<double>(state.n - 1);
    const long double gu = kernel.g_extended(u);
    const long double g0 = kernel.g_extended(0.0);
    return static_cast<double>((g0 - gu) / (g0 + static_cast<long double>(state.n - 1) * gu));
}

SimplexState simplex_recurrence_step(const SimplexState& state, const Kernel& kernel) {
    SimplexState next = state;
    next.r = simplex_shrink_factor(state, kernel) * state.r;
    return next;
}

std::vector<double> population_recurrence_step(std::span<const double> s, double h) {
    if (!(h > 0.0)) throw ParameterError("bandwidth must be positive");
    std::vector<double> out(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (!(s[j] >= 0.0)) throw ParameterError("population scales must be non-negative");
        if (s[j] == 0.0) continue;
        out[j] = s[j] * s[j] * s[j] / (s[j] * s[j] + h * h);
    }
    return out;
}

SimplexComparison compare_sim_to_oracle(const Kernel& kernel, std::size_t n, std::size_t d,
                                        double h, double r0, std::size_t steps, double floor) {
    require_bandwidth(h);
    Configuration cfg = simplex_vertices(n, d, r0);
    SimplexState state{n, d, r0, h};

    SimplexComparison out;
    out.floor = floor >= 0.0 ? floor : default_residual_floor(diameter(cfg));

    std::vector<double> r_sim{configuration_norm(cfg)};
    std::vector<double> r_oracle{r0};
    out.max_symmetry_error = pairwise_symmetry_error(cfg);
    for (std::size_t t = 0; t < steps; ++t) {
        cfg = bms_step(cfg, kernel, h);
        state = simplex_recurrence_step(state, kernel);
        r_sim.push_back(configuration_norm(cfg));
        r_oracle.push_back(state.r);
        if (r_sim.back() > out.floor)
            out.max_symmetry_error = std::max(out.max_symmetry_error, pairwise_symmetry_error(cfg));
    }

    for (std::size_t t = 0; t < r_sim.size(); ++t) {
        SimplexComparisonRow row;
        row.t = t + 1;
        row.r_oracle = r_oracle[t];
        row.r_sim = r_sim[t];
        row.cubic_ratio = std::numeric_limits<double>::quiet_NaN();
        if (t + 1 < r_sim.size() && r_sim[t] > 0.0)
            row.cubic_ratio = r_sim[t + 1] / (r_sim[t] * r_sim[t] * r_sim[t]);
        if (r_oracle[t] > out.floor) {
            out.max_rel_error =
                std::max(out.max_rel_error, std::abs(r_sim[t] - r_oracle[t]) / r_oracle[t]);
            ++out.compared;
        }
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace bms
