#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "bms/clusterer.hpp"
#include "bms/datasets.hpp"
#include "bms/diagnostics.hpp"
#include "bms/error.hpp"
#include "bms/graph.hpp"
#include "support.hpp"

using bms::Configuration;
using bms::Kernel;
using bms::KernelId;

namespace {

const Kernel& epa() {
    static const Kernel k = Kernel::builtin(KernelId::epanechnikov);
    return k;
}

bms::StopRule exact_rule() {
    bms::StopRule rule;
    rule.move_tol = 0.0;
    rule.max_iter = 1000;
    return rule;
}

// Two labelings describe the same partition.
bool same_partition(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (a.size() != b.size()) return false;
    std::map<std::size_t, std::size_t> ab, ba;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (ab.emplace(a[i], b[i]).first->second != b[i]) return false;
        if (ba.emplace(b[i], a[i]).first->second != a[i]) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("two separated blobs give two clusters") {
    const auto ds = bms::datasets::blobs(80, {{-20.0, 0.0}, {20.0, 0.0}}, {1.0, 1.0}, 9);
    const auto result = bms::cluster(ds.points, epa(), 3.0, exact_rule());
    CHECK(result.M == 2);
    CHECK(result.stop_reason == bms::StopReason::exact_fixed_point);
    std::vector<std::size_t> truth(ds.truth.begin(), ds.truth.end());
    CHECK(same_partition(result.labels, truth));
    CHECK(result.labels.front() == 1);
    REQUIRE(result.representatives.size() == 2);
    CHECK(result.representatives[0][0] < 0.0);
    CHECK(result.representatives[1][0] > 0.0);
    CHECK(result.trace_summary.t == result.T);
}

TEST_CASE("huge bandwidth merges everything") {
    const auto ds = bms::datasets::three_blobs(90, 2);
    for (const auto& kernel : {epa(), Kernel::builtin(KernelId::gaussian)}) {
        const auto result = bms::cluster(ds.points, kernel, 1000.0, bms::StopRule::defaults_for(ds.points));
        CHECK(result.M == 1);
        CHECK(std::all_of(result.labels.begin(), result.labels.end(), [](std::size_t l) { return l == 1; }));
    }
}

TEST_CASE("points farther apart than the kernel support stay put") {
    const auto cfg = Configuration::from_rows({{0.0, 0.0}, {3.0, 0.0}, {0.0, 3.0}, {3.0, 3.0}});
    const auto result = bms::cluster(cfg, epa(), 1.0, exact_rule());
    CHECK(result.M == 4);
    CHECK(result.T == 1);
    CHECK(result.labels == std::vector<std::size_t>{1, 2, 3, 4});
}

TEST_CASE("labels follow the terminal graph") {
    std::mt19937_64 rng(71);
    for (int s = 0; s < 10; ++s) {
        const auto cfg = bms_test::random_configuration(rng, 60, 2, 4.0);
        const auto result = bms::cluster(cfg, epa(), 0.6, exact_rule());
        REQUIRE(result.stop_reason == bms::StopReason::exact_fixed_point);
        const auto g = bms::build_graph(result.terminal, epa(), 0.6);
        CHECK(result.M == g.n_components());
        CHECK(*std::max_element(result.labels.begin(), result.labels.end()) == result.M);
        // Labels first appear in increasing order.
        std::size_t next = 1;
        for (std::size_t l : result.labels) {
            CHECK(l <= next);
            if (l == next) ++next;
        }
        for (std::size_t i = 0; i < cfg.size(); ++i)
            for (std::size_t j = 0; j < cfg.size(); ++j)
                if (result.terminal.point(i)[0] == result.terminal.point(j)[0] &&
                    result.terminal.point(i)[1] == result.terminal.point(j)[1])
                    CHECK(result.labels[i] == result.labels[j]);
    }
}

TEST_CASE("permutation equivariance and translation invariance") {
    std::mt19937_64 rng(73);
    const auto ds = bms::datasets::noisy_moons(80, 0.05, 5);
    const double h = 0.3;
    const auto base = bms::cluster(ds.points, epa(), h, exact_rule());

    std::vector<std::size_t> perm(ds.points.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Configuration shuffled(ds.points.size(), 2);
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t k = 0; k < 2; ++k) shuffled(i, k) = ds.points(perm[i], k);
    const auto permuted = bms::cluster(shuffled, epa(), h, exact_rule());
    std::vector<std::size_t> pulled(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) pulled[i] = base.labels[perm[i]];
    CHECK(permuted.M == base.M);
    CHECK(same_partition(permuted.labels, pulled));

    // A shift by a power of two keeps every difference exact.
    Configuration moved = ds.points;
    for (std::size_t i = 0; i < moved.size(); ++i) {
        moved(i, 0) += 4.0;
        moved(i, 1) -= 2.0;
    }
    const auto shifted = bms::cluster(moved, epa(), h, exact_rule());
    CHECK(shifted.labels == base.labels);
    REQUIRE(shifted.representatives.size() == base.representatives.size());
    for (std::size_t m = 0; m < base.representatives.size(); ++m) {
        CHECK(shifted.representatives[m][0] == doctest::Approx(base.representatives[m][0] + 4.0).epsilon(1e-12));
        CHECK(shifted.representatives[m][1] == doctest::Approx(base.representatives[m][1] - 2.0).epsilon(1e-12));
    }
}

TEST_CASE("single linkage grouping") {
    const auto cfg = Configuration::from_rows({{0.0}, {5.0}, {0.0 + 1e-9}, {5.0}, {2e-9}});
    CHECK(bms::single_linkage_labels(cfg, 1.5e-9) == std::vector<std::size_t>{1, 2, 1, 2, 1});
    CHECK(bms::single_linkage_labels(cfg, 0.0) == std::vector<std::size_t>{1, 2, 3, 2, 4});
    CHECK_THROWS_AS(bms::single_linkage_labels(cfg, -1.0), bms::ParameterError);
    CHECK(bms::default_merge_tol(cfg) == doctest::Approx(5e-8));
}

TEST_CASE("bandwidth sweep") {
    const auto grid = bms::bandwidth_grid(0.03, 3.0, 0.03);
    CHECK(grid.size() == 100);
    CHECK(grid.front() == 0.03);
    CHECK(grid.back() == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_THROWS_AS(bms::bandwidth_grid(1.0, 0.5, 0.1), bms::ParameterError);

    const auto ds = bms::datasets::two_blobs(60, 3);
    const auto z = bms::standardize(ds.points).points;
    const auto rows = bms::bandwidth_sweep(z, epa(), {0.001, 0.002, 0.5, 2.0}, exact_rule());
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].M == 60);
    CHECK(rows[1].M == 60);
    CHECK(rows[3].M <= rows[2].M);
    for (const auto& row : rows) CHECK(row.stop_reason == bms::StopReason::exact_fixed_point);
    CHECK(rows[2].L_final >= bms_test::naive_objective(z, epa(), 0.5));
}

TEST_CASE("standardize") {
    std::mt19937_64 rng(79);
    std::normal_distribution<double> normal(5.0, 2.0);
    Configuration cfg(400, 2);
    for (auto& v : cfg.flat()) v = normal(rng);
    const auto st = bms::standardize(cfg);
    for (std::size_t k = 0; k < 2; ++k) {
        double mean = 0.0, var = 0.0;
        for (std::size_t i = 0; i < cfg.size(); ++i) mean += st.points(i, k);
        mean /= cfg.size();
        for (std::size_t i = 0; i < cfg.size(); ++i) var += (st.points(i, k) - mean) * (st.points(i, k) - mean);
        CHECK(std::abs(mean) <= 1e-12);
        CHECK(std::sqrt(var / cfg.size()) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(st.mean[k] == doctest::Approx(5.0).epsilon(0.05));
        CHECK(st.stddev[k] == doctest::Approx(2.0).epsilon(0.1));
    }
    const auto again = bms::standardize(st.points);
    for (std::size_t m = 0; m < cfg.flat().size(); ++m)
        CHECK(std::abs(again.points.flat()[m] - st.points.flat()[m]) <= 1e-12);
    const auto back = st.inverse(st.points.point(3));
    CHECK(back[0] == doctest::Approx(cfg(3, 0)).epsilon(1e-14));

    const auto flat_axis = Configuration::from_rows({{1.0, 2.0}, {3.0, 2.0}});
    CHECK_THROWS_WITH_AS(bms::standardize(flat_axis), doctest::Contains("axis 1"), bms::ConfigError);
    CHECK_THROWS_AS(bms::standardize(Configuration::from_rows({{1.0}})), bms::DataError);
}
