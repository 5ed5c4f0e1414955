#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "bms/configuration.hpp"
#include "bms/kernels.hpp"

namespace bms {

struct Extent {
    double lo;  // min_i dir . y_i
    double hi;  // max_i dir . y_i
};

// Projection interval of the points onto a unit direction.
// Throws ParameterError unless | ||dir|| - 1 | <= 1e-12.
Extent directional_extents(const Configuration& cfg, std::span<const double> direction);

// Max pairwise distance; 0 for a single point.
double diameter(const Configuration& cfg);

// max over components of the intra-component pairwise distance.
double component_diameter(const Configuration& cfg,
                          const std::vector<std::vector<std::size_t>>& partition);

// Contraction bound d_{t+1} <= (1 - g((d_t/h)^2/2) / (4 g(0))) d_t.
double diameter_rate_bound(double d_t, const Kernel& kernel, double h);

// Checks the bound with relative slack rel_slack * d_t. d_t = 0 passes iff
// d_t1 = 0. Throws ParameterError for negative inputs.
bool diam_rate_check(double d_t, double d_t1, const Kernel& kernel, double h,
                     double rel_slack = 1e-10);

// Fixed set of unit directions in R^d drawn from a seeded normal generator.
class DirectionSet {
public:
    static constexpr std::uint64_t kDefaultSeed = 0x5EED;

    DirectionSet(std::size_t dim, std::size_t count = 256, std::uint64_t seed = kDefaultSeed);

    std::size_t size() const noexcept { return count_; }
    std::size_t dim() const noexcept { return dim_; }
    std::span<const double> operator[](std::size_t m) const noexcept {
        return {dirs_.data() + m * dim_, dim_};
    }

private:
    std::size_t dim_;
    std::size_t count_;
    std::vector<double> dirs_;
};

std::vector<Extent> all_extents(const Configuration& cfg, const DirectionSet& dirs);

// Smallest slack of [a_next, b_next] within [a_prev, b_prev] over the
// direction set: min_m min(a_next - a_prev, b_prev - b_next). Negative means
// the interval grew.
double nesting_slack(const std::vector<Extent>& prev, const std::vector<Extent>& next);

enum class RateClass { finite_time, exponential, superlinear_cubic, inconclusive };
std::string_view to_string(RateClass c);

struct RateEstimate {
    double order = 0.0;  // NaN when fewer than 3 usable pairs
    RateClass classification = RateClass::inconclusive;
    std::size_t samples_used = 0;
};

// Fits log e_{t+1} = c + p log e_t by least squares over consecutive pairs
// with both residuals above `floor`. A residual dropping to exactly zero
// straight from above the floor, and staying there, is finite-time
// convergence.
RateEstimate estimate_rate(std::span<const double> residuals, double floor);

// 1e3 * machine epsilon * initial diameter.
double default_residual_floor(double initial_diameter);

// ||y_t - y_final|| for every configuration of a stored trajectory.
std::vector<double> residual_sequence(const std::vector<Configuration>& trajectory);

}  // namespace bms
