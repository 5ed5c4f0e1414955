#include <doctest.h>

#include <cmath>
#include <random>

#include "bms/diagnostics.hpp"
#include "bms/engine.hpp"
#include "bms/error.hpp"
#include "bms/graph.hpp"
#include "support.hpp"

using bms::Configuration;
using bms::Kernel;
using bms::KernelId;

TEST_CASE("directional extents") {
    const auto cfg = Configuration::from_rows({{0.0, 0.0}, {1.0, 0.0}});
    const std::vector<double> ex{1.0, 0.0}, ey{0.0, 1.0};
    auto e = bms::directional_extents(cfg, ex);
    CHECK(e.lo == 0.0);
    CHECK(e.hi == 1.0);
    e = bms::directional_extents(cfg, ey);
    CHECK(e.lo == 0.0);
    CHECK(e.hi == 0.0);
    const std::vector<double> not_unit{1.0, 1.0};
    CHECK_THROWS_AS(bms::directional_extents(cfg, not_unit), bms::ParameterError);
}

TEST_CASE("diameters") {
    CHECK(bms::diameter(Configuration::from_rows({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}})) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(bms::diameter(Configuration::from_rows({{3.0, 4.0}})) == 0.0);
    CHECK(bms::diameter(Configuration::from_rows({{3.0, 4.0}, {3.0, 4.0}})) == 0.0);

    const auto two = Configuration::from_rows({{0.0}, {0.1}, {5.0}, {5.3}});
    CHECK(bms::component_diameter(two, {{0, 1}, {2, 3}}) == doctest::Approx(0.3));
    CHECK(bms::component_diameter(two, {{0}, {1}, {2}, {3}}) == 0.0);
    CHECK(bms::component_diameter(two, {{0, 1, 2, 3}}) == bms::diameter(two));
}

TEST_CASE("diameter rate bound") {
    const auto gau = Kernel::builtin(KernelId::gaussian);
    for (double d : {0.1, 0.5, 1.0, 2.0, 4.0}) {
        // Two symmetric points: exact contraction factor (1 - w)/(1 + w).
        const double u = d * d / 2.0;
        const double w = std::exp(-u);
        const double exact = (1.0 - w) / (1.0 + w) * d;
        CHECK(exact <= (1.0 - w / 4.0) * d);
        CHECK(bms::diam_rate_check(d, exact, gau, 1.0));
        const auto pair = Configuration::from_rows({{-d / 2.0}, {d / 2.0}});
        CHECK(bms::diameter(bms::bms_step(pair, gau, 1.0)) == doctest::Approx(exact).epsilon(1e-12));
    }
    const auto epa = Kernel::builtin(KernelId::epanechnikov);
    CHECK(bms::diameter_rate_bound(10.0, epa, 1.0) == 10.0);
    CHECK(bms::diam_rate_check(10.0, 10.0, epa, 1.0));
    for (const auto& kernel : bms_test::assumption1()) CHECK(bms::diam_rate_check(0.7, 0.0, kernel, 1.0));
    CHECK(bms::diam_rate_check(0.0, 0.0, gau, 1.0));
    CHECK_FALSE(bms::diam_rate_check(0.0, 1e-300, gau, 1.0));
    CHECK_FALSE(bms::diam_rate_check(1.0, 1.0, gau, 1.0));
    CHECK_THROWS_AS(bms::diam_rate_check(-1.0, 0.0, gau, 1.0), bms::ParameterError);
}

TEST_CASE("direction sets are fixed and unit length") {
    const bms::DirectionSet a(4), b(4), c(4, 256, 99);
    CHECK(a.size() == 256);
    for (std::size_t m = 0; m < a.size(); ++m) {
        double s = 0.0;
        for (double v : a[m]) s += v * v;
        CHECK(std::abs(std::sqrt(s) - 1.0) <= 1e-14);
        for (std::size_t k = 0; k < 4; ++k) CHECK(a[m][k] == b[m][k]);
    }
    CHECK(a[0][0] != c[0][0]);
}

TEST_CASE("intervals nest and diameters shrink along runs") {
    std::mt19937_64 rng(59);
    for (const auto& kernel : bms_test::assumption1()) {
        CAPTURE(kernel.name());
        auto cfg = bms_test::random_configuration(rng, 25, 3, 1.5);
        const bms::DirectionSet dirs(3);
        auto prev = bms::all_extents(cfg, dirs);
        for (int t = 0; t < 30; ++t) {
            const auto next = bms::bms_step(cfg, kernel, 0.7);
            const auto ext = bms::all_extents(next, dirs);
            CHECK(bms::nesting_slack(prev, ext) >= -1e-12);
            const double d0 = bms::diameter(cfg), d1 = bms::diameter(next);
            CHECK(d1 <= d0 + 1e-12);
            CHECK(bms::diam_rate_check(d0, d1, kernel, 0.7));
            prev = ext;
            cfg = next;
        }
    }
}

TEST_CASE("cubic decay of component diameters near convergence") {
    // Two separated clusters with a smoothly truncated kernel: the graph
    // becomes closed and stable, and rho_{t+1} / rho_t^3 stays bounded.
    std::mt19937_64 rng(61);
    for (auto id : {KernelId::biweight, KernelId::triweight}) {
        const auto kernel = Kernel::builtin(id);
        auto cfg = bms_test::random_configuration(rng, 20, 2, 0.3);
        for (std::size_t i = 10; i < 20; ++i) cfg(i, 0) += 10.0;
        const double floor = bms::default_residual_floor(bms::diameter(cfg));
        double c2 = 0.0;
        std::size_t used = 0;
        for (int t = 0; t < 30; ++t) {
            const auto g = bms::build_graph(cfg, kernel, 1.0);
            const auto next = bms::bms_step(cfg, kernel, 1.0);
            const double rho = bms::component_diameter(cfg, g.components);
            const double rho_next = bms::component_diameter(next, g.components);
            if (rho < 0.1 && rho_next > floor) {
                c2 = std::max(c2, rho_next / (rho * rho * rho));
                ++used;
            }
            cfg = next;
        }
        CHECK(used >= 1);
        CHECK(std::isfinite(c2));
        CHECK(c2 < 10.0);
    }
}

TEST_CASE("rate estimation") {
    std::vector<double> geometric;
    for (int t = 0; t < 30; ++t) geometric.push_back(std::pow(0.5, t));
    auto est = bms::estimate_rate(geometric, 1e-12);
    CHECK(est.classification == bms::RateClass::exponential);
    CHECK(est.order == doctest::Approx(1.0).epsilon(1e-9));

    const std::vector<double> finite{1.0, 0.5, 0.2, 0.0, 0.0, 0.0};
    CHECK(bms::estimate_rate(finite, 1e-12).classification == bms::RateClass::finite_time);

    std::vector<double> cubic{0.5};
    for (int t = 0; t < 3; ++t) cubic.push_back(0.5 * cubic.back() * cubic.back() * cubic.back());
    est = bms::estimate_rate(cubic, 1e-300);
    CHECK(est.classification == bms::RateClass::superlinear_cubic);
    CHECK(est.order == doctest::Approx(3.0).epsilon(0.05));

    const std::vector<double> short_seq{1.0, 0.5, 0.25};
    est = bms::estimate_rate(short_seq, 1e-12);
    CHECK(est.classification == bms::RateClass::inconclusive);
    CHECK(std::isnan(est.order));

    CHECK(bms::default_residual_floor(2.0) == 2e3 * std::numeric_limits<double>::epsilon());
}

TEST_CASE("residual sequence") {
    const std::vector<Configuration> traj{Configuration::from_rows({{0.0}, {4.0}}),
                                          Configuration::from_rows({{1.0}, {3.0}}),
                                          Configuration::from_rows({{2.0}, {2.0}})};
    const auto r = bms::residual_sequence(traj);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(std::sqrt(8.0)));
    CHECK(r[1] == doctest::Approx(std::sqrt(2.0)));
    CHECK(r[2] == 0.0);
}
