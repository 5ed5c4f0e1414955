#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bms/configuration.hpp"
#include "bms/kernels.hpp"

namespace bms {

// Closed-form reference dynamics used as ground truth for the engine.

// n points at the vertices of a regular simplex centred at the origin,
// radius r = ||y|| of the whole configuration vector.
struct SimplexState {
    std::size_t n = 2;
    std::size_t d = 1;
    double r = 1.0;
    double h = 1.0;

    // sqrt(2/(n-1)) * r
    double pairwise_distance() const;
};

// Regular (n-1)-simplex in R^d via the Helmert basis of the centred
// subspace of R^n. Throws ParameterError for n < 2, n > d + 1 or r <= 0.
Configuration simplex_vertices(std::size_t n, std::size_t d, double r);

// Shrink factor (g(0) - g(u)) / (g(0) + (n-1) g(u)), u = (r/h)^2/(n-1).
double simplex_shrink_factor(const SimplexState& state, const Kernel& kernel);
SimplexState simplex_recurrence_step(const SimplexState& state, const Kernel& kernel);

// s_j <- s_j^3 / (s_j^2 + h^2) per axis.
std::vector<double> population_recurrence_step(std::span<const double> s, double h);

struct SimplexComparisonRow {
    std::size_t t = 0;
    double r_oracle = 0.0;
    double r_sim = 0.0;
    double cubic_ratio = 0.0;  // r_sim_{t+1} / r_sim_t^3, NaN on the last row or r = 0
};

struct SimplexComparison {
    std::vector<SimplexComparisonRow> rows;  // t = 1 .. steps + 1
    double max_rel_error = 0.0;             // over rows with r_oracle > floor
    double floor = 0.0;
    std::size_t compared = 0;
    // Largest |d_ij / d_kl - 1| over pairwise distances of engine iterates with r above the floor.
    double max_symmetry_error = 0.0;
};

// Runs the engine from simplex_vertices(n, d, r0) for `steps` steps next to
// the scalar recurrence. floor < 0 selects 1e3 * eps * initial diameter.
SimplexComparison compare_sim_to_oracle(const Kernel& kernel, std::size_t n, std::size_t d,
                                        double h, double r0, std::size_t steps,
                                        double floor = -1.0);

}  // namespace bms
