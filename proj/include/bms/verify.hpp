#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bms/configuration.hpp"
#include "bms/engine.hpp"
#include "bms/kernels.hpp"

namespace bms {

// Outcome of one inequality family over a run.
struct CheckResult {
    std::string name;
    bool passed = true;
    // Smallest observed slack (>= 0 means satisfied); +inf if never evaluated.
    double worst_slack = 0.0;
    std::size_t step = 0;  // step index of the worst slack (0: fuzz corpus)
    std::size_t evaluations = 0;
};

struct VerifyOptions {
    std::size_t max_iter = 200;
    std::size_t direction_count = 256;
    std::uint64_t seed = 0x5EED;
    std::size_t fuzz = 0;          // extra random configurations for the graph checks
    bool inject_descent = false;   // harness self-test: fakes a descent at step 1
    double ascent_rel_tol = 1e-10;
    double nesting_slack = -1.0;   // < 0: 1e-12 * max(1, d_1)
    double diameter_rel_slack = 1e-10;
    double stability_tol = -1.0;   // < 0: graph default
};

struct VerifyReport {
    std::string kernel;
    double h = 0.0;
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t steps = 0;
    std::size_t stable_steps = 0;  // steps whose graph was classified stable
    StopReason stop_reason = StopReason::max_iter;
    std::vector<CheckResult> checks;

    bool passed() const;
    const CheckResult& check(const std::string& name) const;
    std::string to_json() const;
};

// Runs blurring mean shift and checks at every step: objective ascent,
// the minorizer bounds, hull nesting, the diameter contraction bound (whole
// configuration and per component), the component-count bound and the
// fixed point / singular graph equivalence.
VerifyReport run_verify(const Configuration& points, const Kernel& kernel, double h,
                        const VerifyOptions& options = {});

// (y' - y)^T (S + G) (y' - y) / h^2 with S, G built at cfg: the minorizer
// gain written as a quadratic form in the step, free of cancellation.
double minorizer_gap_quadratic(const Configuration& next, const Configuration& cfg,
                               const Kernel& kernel, double h);

struct FuzzOptions {
    std::size_t max_n = 12;
    std::size_t max_d = 4;
};

// Random configuration mixing uniform clouds, coincident groups spaced beyond
// the truncation radius, and pairs planted within a relative 0, 1e-12, 1e-9
// or 1e-6 of distance beta*h.
Configuration fuzz_configuration(std::mt19937_64& rng, const Kernel& kernel, double h,
                                 const FuzzOptions& options = {});

}  // namespace bms
