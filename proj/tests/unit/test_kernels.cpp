#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "bms/error.hpp"
#include "bms/kernels.hpp"
#include "support.hpp"

using bms::Kernel;
using bms::KernelId;

TEST_CASE("profile values") {
    const auto epa = Kernel::builtin(KernelId::epanechnikov);
    const auto gau = Kernel::builtin(KernelId::gaussian);
    CHECK(epa.k(0.0) == 1.0);
    CHECK(epa.k(2.0) == 0.0);
    CHECK(gau.k(0.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    CHECK(gau.k(0.5) == doctest::Approx(0.60653).epsilon(1e-5));

    CHECK(epa.g(0.5) == 1.0);
    CHECK(epa.g(1.5) == 0.0);
    CHECK(Kernel::builtin(KernelId::biweight).g(0.25) == doctest::Approx(1.5).epsilon(1e-15));

    for (const auto& kernel : bms_test::assumption1()) {
        CAPTURE(kernel.name());
        CHECK(kernel.k(0.0) == 1.0);
    }
}

TEST_CASE("negative profile argument is a domain error") {
    const auto k = Kernel::builtin(KernelId::cosine);
    CHECK_THROWS_AS(k.k(-1e-300), bms::DomainError);
    CHECK_THROWS_AS(k.g(-1.0), bms::DomainError);
}

TEST_CASE("kernel_value and g_value on vectors") {
    const auto epa = Kernel::builtin(KernelId::epanechnikov);
    const auto gau = Kernel::builtin(KernelId::gaussian);
    const std::vector<double> zero{0.0, 0.0, 0.0};
    CHECK(bms::kernel_value(gau, zero, 0.3) == 1.0);
    CHECK(bms::kernel_value(gau, zero, 7.0) == 1.0);

    const double h = 0.8;
    const std::vector<double> at_h{0.6 * h, 0.8 * h};
    CHECK(bms::kernel_value(epa, at_h, h) == doctest::Approx(0.5).epsilon(1e-14));
    const std::vector<double> at_2h{2.0 * h, 0.0};
    CHECK(bms::kernel_value(epa, at_2h, h) == 0.0);

    // ||(1,1)|| = sqrt(2) = beta*h with h = 1: u is exactly 1, on the closed ball.
    const std::vector<double> edge{1.0, 1.0};
    CHECK(bms::g_value(epa, edge, 1.0) == 1.0);
    const std::vector<double> beyond{1.5, 1.5};
    CHECK(bms::g_value(epa, beyond, 1.0) == 0.0);
    const std::vector<double> unit{0.0, 1.0};
    CHECK(bms::g_value(gau, unit, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));

    CHECK_THROWS_AS(bms::kernel_value(gau, zero, 0.0), bms::ParameterError);
    CHECK_THROWS_AS(bms::g_value(gau, zero, -1.0), bms::ParameterError);
}

TEST_CASE("truncation classes") {
    const auto epa = bms::classify_truncation(Kernel::builtin(KernelId::epanechnikov));
    CHECK(epa.beta == doctest::Approx(std::numbers::sqrt2));
    CHECK(epa.cls == bms::TruncationClass::non_smoothly_truncated);
    const auto gau = bms::classify_truncation(Kernel::builtin(KernelId::gaussian));
    CHECK(std::isinf(gau.beta));
    CHECK(gau.cls == bms::TruncationClass::non_truncated);
    const auto bi = bms::classify_truncation(Kernel::builtin(KernelId::biweight));
    CHECK(bi.beta == doctest::Approx(std::numbers::sqrt2));
    CHECK(bi.cls == bms::TruncationClass::smoothly_truncated);
}

TEST_CASE("g is the left derivative of -k") {
    // Backward difference of k as an independent estimate of -k'(u-).
    std::mt19937_64 rng(7);
    for (const auto& kernel : bms_test::assumption1()) {
        CAPTURE(kernel.name());
        const double top = kernel.truncated() ? kernel.support_u() : 6.0;
        std::uniform_real_distribution<double> pick(0.01, top * 0.99);
        for (int s = 0; s < 200; ++s) {
            const double u = pick(rng);
            const double du = 1e-6;
            const double fd = (kernel.k(u - du) - kernel.k(u + du)) / (2.0 * du);
            CHECK(kernel.g(u) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
        }
        if (kernel.truncated()) {
            const double u = kernel.support_u();
            const double du = 1e-7;
            const double left = (kernel.k(u - du) - kernel.k(u)) / du;
            CHECK(std::abs(kernel.g(u) - left) <= 1e-3);
            CHECK(kernel.g(std::nextafter(u, 10.0)) == 0.0);
        }
    }
}

TEST_CASE("extended precision g matches g and its zero set") {
    for (const auto& kernel : bms_test::assumption1()) {
        CAPTURE(kernel.name());
        for (double u : {0.0, 1e-9, 0.1, 0.5, 0.999, 1.0, 1.5, 3.0}) {
            const double g = kernel.g(u);
            const long double ge = kernel.g_extended(u);
            CHECK((g == 0.0) == (ge == 0.0L));
            CHECK(static_cast<double>(ge) == doctest::Approx(g).epsilon(1e-14));
        }
        double u = kernel.truncated() ? kernel.support_u() : 1.0;
        for (int s = 0; s < 5; ++s) u = std::nextafter(u, 0.0);
        for (int s = 0; s < 10; ++s) {
            CHECK((kernel.g(u) == 0.0) == (kernel.g_extended(u) == 0.0L));
            u = std::nextafter(u, 10.0);
        }
    }
}

TEST_CASE("Assumption 1 validation") {
    CHECK(bms::validate_assumption1(Kernel::builtin(KernelId::epanechnikov)).passed());
    CHECK(bms::validate_assumption1(Kernel::builtin(KernelId::cauchy)).passed());
    const auto tri = bms::validate_assumption1(Kernel::builtin(KernelId::tricube));
    CHECK_FALSE(tri.passed());
    CHECK_FALSE(tri.convex);
    CHECK_FALSE(tri.g0_positive);
    for (const auto& kernel : bms_test::assumption1()) {
        CAPTURE(kernel.name());
        const auto report = bms::validate_assumption1(kernel);
        CHECK(report.passed());
        CHECK(report.grid_size == 10000);
        CHECK(report.grid_max >= 4.0);
    }
    CHECK_THROWS_AS(bms::validate_assumption1(Kernel::builtin(KernelId::gaussian), 2), bms::ParameterError);
}

TEST_CASE("alpha of non-smoothly truncated kernels") {
    CHECK(*Kernel::builtin(KernelId::epanechnikov).alpha() == 1.0);
    const auto cosine = Kernel::builtin(KernelId::cosine);
    // g(beta^2/2) / g(0) = sinc(pi/2) = 2/pi.
    CHECK(*cosine.alpha() == doctest::Approx(cosine.g(1.0) / cosine.g(0.0)).epsilon(1e-14));
    CHECK(*cosine.alpha() > 0.0);
    CHECK_FALSE(Kernel::builtin(KernelId::biweight).alpha().has_value());
    CHECK_FALSE(Kernel::builtin(KernelId::gaussian).alpha().has_value());
}

TEST_CASE("quadratic minorizer touches K from below") {
    std::mt19937_64 rng(11);
    for (const auto& kernel : bms_test::assumption1()) {
        CAPTURE(kernel.name());
        for (std::size_t d = 1; d <= 3; ++d) {
            std::uniform_real_distribution<double> unif(-2.0, 2.0);
            for (int s = 0; s < 1000 / 3; ++s) {
                std::vector<double> v(d), vr(d);
                for (auto& x : v) x = unif(rng);
                for (auto& x : vr) x = unif(rng);
                const double kv = bms::kernel_value(kernel, v, 1.0);
                CHECK(bms::quadratic_minorizer(kernel, v, vr) <= kv + 1e-12);
                CHECK(std::abs(bms::quadratic_minorizer(kernel, vr, vr) - bms::kernel_value(kernel, vr, 1.0)) <=
                      1e-12);
            }
        }
    }
}

TEST_CASE("supporting line and zero set of g") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pick(0.0, 4.0);
    for (const auto& kernel : bms_test::assumption1()) {
        CAPTURE(kernel.name());
        for (int s = 0; s < 2000; ++s) {
            const double u = pick(rng), v = pick(rng);
            CHECK(kernel.k(u) - kernel.k(v) >= -kernel.g(v) * (u - v) - 1e-12);
        }
        for (int m = 0; m <= 4000; ++m) {
            const double u = m * 1e-3;
            if (kernel.g(u) == 0.0) CHECK(kernel.k(u) == 0.0);
        }
    }
}

TEST_CASE("custom kernels") {
    const auto closed = Kernel::from_json(R"({"closed_form": "biweight", "beta": 1.4142135623730951,
                                              "class": "smoothly_truncated"})");
    CHECK(closed.id() == KernelId::custom);
    CHECK(closed.g(0.25) == 1.5);
    CHECK(closed.truncated());

    // Piecewise-linear samples of the Epanechnikov profile.
    const auto sampled = Kernel::from_json(R"({"samples": {"u": [0, 0.5, 1, 2], "k": [1, 0.5, 0, 0]},
                                               "beta": 1.4142135623730951, "class": "non_smoothly_truncated"})");
    const auto epa = Kernel::builtin(KernelId::epanechnikov);
    for (double u : {0.0, 0.2, 0.5, 0.7, 1.0, 1.2, 3.0}) {
        CHECK(sampled.k(u) == doctest::Approx(epa.k(u)).epsilon(1e-15));
        CHECK(sampled.g(u) == doctest::Approx(epa.g(u)).epsilon(1e-15));
    }
    CHECK(*sampled.alpha() == doctest::Approx(1.0));

    const auto heavy = Kernel::from_json(R"({"closed_form": "cauchy", "beta": "inf", "class": "non_truncated"})");
    CHECK_FALSE(heavy.truncated());

    CHECK_THROWS_AS(Kernel::from_json(R"({"closed_form": "gaussian", "class": "non_truncated"})"),
                    bms::ConfigError);
    CHECK_THROWS_AS(Kernel::from_json(R"({"closed_form": "gaussian", "beta": 2, "class": "non_truncated"})"),
                    bms::ConfigError);
    CHECK_THROWS_AS(Kernel::from_json(R"({"closed_form": "biweight", "beta": 2, "class": "smoothly_truncated"})"),
                    bms::ConfigError);
    CHECK_THROWS_AS(Kernel::from_json(R"({"samples": {"u": [0.1, 1], "k": [1, 0]}, "beta": 1,
                                          "class": "smoothly_truncated"})"),
                    bms::ConfigError);
    CHECK_THROWS_AS(Kernel::from_json("[1, 2]"), bms::ConfigError);
    CHECK_THROWS_AS(Kernel::from_json("{"), bms::ConfigError);
    CHECK_THROWS_AS(Kernel::from_name("boxcar"), bms::ConfigError);
}

TEST_CASE("kernel names round trip") {
    for (const auto& kernel : bms_test::assumption1()) CHECK(Kernel::from_name(kernel.name()).id() == kernel.id());
    CHECK(Kernel::from_name("tricube").id() == KernelId::tricube);
}
