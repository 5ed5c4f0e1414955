#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "bms/configuration.hpp"
#include "bms/kernels.hpp"

namespace bms_test {

inline bms::Configuration random_configuration(std::mt19937_64& rng, std::size_t n, std::size_t d,
                                               double spread) {
    std::uniform_real_distribution<double> unif(-spread, spread);
    bms::Configuration cfg(n, d);
    for (auto& v : cfg.flat()) v = unif(rng);
    return cfg;
}

inline std::vector<bms::Kernel> assumption1() {
    std::vector<bms::Kernel> out;
    for (auto id : bms::assumption1_kernels()) out.push_back(bms::Kernel::builtin(id));
    return out;
}

inline std::vector<bms::Kernel> smooth_kernels() {
    return {bms::Kernel::builtin(bms::KernelId::gaussian), bms::Kernel::builtin(bms::KernelId::cauchy),
            bms::Kernel::builtin(bms::KernelId::logistic)};
}

inline double sq_dist(const bms::Configuration& y, std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t k = 0; k < y.dim(); ++k) s += (y(i, k) - y(j, k)) * (y(i, k) - y(j, k));
    return s;
}

// Plain double-loop versions written from the defining sums.
inline double naive_objective(const bms::Configuration& y, const bms::Kernel& kernel, double h) {
    double total = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) total += kernel.k(sq_dist(y, i, j) / (2.0 * h * h));
    return total;
}

inline bms::Configuration naive_step(const bms::Configuration& y, const bms::Kernel& kernel, double h) {
    bms::Configuration out(y.size(), y.dim());
    for (std::size_t i = 0; i < y.size(); ++i) {
        double wsum = 0.0;
        std::vector<double> num(y.dim(), 0.0);
        for (std::size_t j = 0; j < y.size(); ++j) {
            const double w = kernel.g(sq_dist(y, i, j) / (2.0 * h * h));
            wsum += w;
            for (std::size_t k = 0; k < y.dim(); ++k) num[k] += w * y(j, k);
        }
        for (std::size_t k = 0; k < y.dim(); ++k) out(i, k) = num[k] / wsum;
    }
    return out;
}

inline double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace bms_test
