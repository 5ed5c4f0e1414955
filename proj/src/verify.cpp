#include "bms/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "bms/diagnostics.hpp"
#include "bms/error.hpp"
#include "bms/graph.hpp"

namespace bms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Tracker {
public:
    explicit Tracker(std::string name) {
        result_.name = std::move(name);
        result_.worst_slack = kInf;
    }

    void observe(double slack, std::size_t step) {
        ++result_.evaluations;
        if (slack < result_.worst_slack || std::isnan(slack)) {
            result_.worst_slack = slack;
            result_.step = step;
        }
        if (!(slack >= 0.0)) result_.passed = false;
    }

    void agree(bool ok, std::size_t step) { observe(ok ? 1.0 : -1.0, step); }

    CheckResult result() const { return result_; }

private:
    CheckResult result_;
};

// Smallest nesting slack of each component's projection intervals.
double component_hull_slack(const Configuration& cur, const Configuration& next,
                            const BmsGraph& graph, const DirectionSet& dirs) {
    double worst = kInf;
    for (const auto& part : graph.components) {
        if (part.size() < 2) continue;
        for (std::size_t m = 0; m < dirs.size(); ++m) {
            const auto dir = dirs[m];
            double lo0 = kInf, hi0 = -kInf, lo1 = kInf, hi1 = -kInf;
            for (std::size_t i : part) {
                double p0 = 0.0, p1 = 0.0;
                for (std::size_t k = 0; k < dir.size(); ++k) {
                    p0 += dir[k] * cur(i, k);
                    p1 += dir[k] * next(i, k);
                }
                lo0 = std::min(lo0, p0);
                hi0 = std::max(hi0, p0);
                lo1 = std::min(lo1, p1);
                hi1 = std::max(hi1, p1);
            }
            worst = std::min({worst, lo1 - lo0, hi0 - hi1});
        }
    }
    return worst;
}

void place_coincident_groups(std::mt19937_64& rng, Configuration& cfg, double spacing,
                             std::size_t groups) {
    const std::size_t n = cfg.size();
    const std::size_t d = cfg.dim();
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<std::vector<double>> centers;
    const double box = spacing * (2.0 + static_cast<double>(groups));
    while (centers.size() < groups) {
        std::vector<double> c(d);
        for (auto& v : c) v = box * unif(rng);
        bool ok = true;
        for (const auto& other : centers)
            if (distance(c, other) <= spacing) ok = false;
        if (ok) centers.push_back(std::move(c));
    }
    std::uniform_int_distribution<std::size_t> pick(0, groups - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = centers[i < groups ? i : pick(rng)];
        std::copy(c.begin(), c.end(), cfg.point(i).begin());
    }
}

}  // namespace

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult& VerifyReport::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw ConfigError("no check named " + name);
}

std::string VerifyReport::to_json() const {
    nlohmann::ordered_json j;
    j["kernel"] = kernel;
    j["h"] = h;
    j["n"] = n;
    j["d"] = d;
    j["steps"] = steps;
    j["stop_reason"] = std::string(to_string(stop_reason));
    j["stable_steps"] = stable_steps;
    j["passed"] = passed();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["passed"] = c.passed;
        // JSON has no infinity; unevaluated checks report null.
        if (std::isfinite(c.worst_slack))
            e["worst_slack"] = c.worst_slack;
        else
            e["worst_slack"] = nullptr;
        e["step"] = c.step;
        e["evaluations"] = c.evaluations;
        arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    return j.dump(2) + "\n";
}

double minorizer_gap_quadratic(const Configuration& next, const Configuration& cfg,
                               const Kernel& kernel, double h) {
    require_bandwidth(h);
    if (!next.same_shape(cfg)) throw DataError("configurations differ in shape");
    const std::size_t d = cfg.dim();
    double total = 0.0;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        for (std::size_t j = 0; j < cfg.size(); ++j) {
            const double w =
                kernel.g_unchecked(profile_arg(squared_distance(cfg.point(i), cfg.point(j)), h));
            if (w == 0.0) continue;
            double sq = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double s = (next(i, k) - cfg(i, k)) + (next(j, k) - cfg(j, k));
                sq += s * s;
            }
            total += w / 2.0 * sq;
        }
    }
    return total / (h * h);
}

Configuration fuzz_configuration(std::mt19937_64& rng, const Kernel& kernel, double h,
                                 const FuzzOptions& options) {
    std::uniform_int_distribution<std::size_t> pick_n(2, std::max<std::size_t>(2, options.max_n));
    std::uniform_int_distribution<std::size_t> pick_d(1, std::max<std::size_t>(1, options.max_d));
    std::uniform_int_distribution<int> pick_mode(0, 3);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const std::size_t n = pick_n(rng);
    const std::size_t d = pick_d(rng);
    const double radius = kernel.truncated() ? kernel.beta() * h : h;
    Configuration cfg(n, d);

    const int mode = pick_mode(rng);
    if (mode == 0) {
        // Uniform cloud on a box between half and four joining radii wide.
        const double side = radius * (0.5 + 3.5 * (0.5 + 0.5 * unif(rng)));
        for (auto& v : cfg.flat()) v = side * unif(rng);
    } else {
        std::uniform_int_distribution<std::size_t> pick_groups(1, n);
        const std::size_t groups = pick_groups(rng);
        place_coincident_groups(rng, cfg, radius * (1.0 + 1e-3), groups);
        if (mode == 2) {
            // Plant point n-1 at a distance within a tiny relative offset of
            // the joining radius from point 0.
            static constexpr double kOffsets[] = {0.0, 1e-12, -1e-12, 1e-9, -1e-9, 1e-6, -1e-6};
            std::uniform_int_distribution<std::size_t> pick_off(0, std::size(kOffsets) - 1);
            const double off = kOffsets[pick_off(rng)];
            for (std::size_t k = 0; k < d; ++k) cfg(n - 1, k) = cfg(0, k);
            cfg(n - 1, 0) += radius * (1.0 + off);
        } else if (mode == 3) {
            // Jitter one group member so that the graph is non-singular.
            const double jitter = radius * 0.25 * (0.5 + 0.5 * unif(rng));
            cfg(n - 1, 0) += jitter;
        }
    }
    return cfg;
}

VerifyReport run_verify(const Configuration& points, const Kernel& kernel, double h,
                        const VerifyOptions& options) {
    require_bandwidth(h);
    points.require_finite();

    VerifyReport report;
    report.kernel = kernel.name();
    report.h = h;
    report.n = points.size();
    report.d = points.dim();

    const std::size_t n = points.size();
    const std::size_t d = points.dim();
    const double g0 = kernel.g0();
    const double a_bar = 2.0 * g0 / (h * h);
    const double b_bar = h * h / (2.0 * static_cast<double>(n) * g0);
    const double d1 = diameter(points);
    const double nest_slack = options.nesting_slack >= 0.0 ? options.nesting_slack : 1e-12 * std::max(1.0, d1);
    const double stability_tol =
        options.stability_tol >= 0.0 ? options.stability_tol : default_stability_tol(kernel, h);
    const DirectionSet dirs(d, options.direction_count, options.seed);

    Tracker ascent("ascent");
    Tracker lemma_a("lemma_a");
    Tracker sandwich("minorizer_sandwich");
    Tracker gap_forms("gap_forms_agree");
    Tracker equality("equality_implies_fixed");
    Tracker lemma_b("lemma_b");
    Tracker nesting("interval_nesting");
    Tracker monotone("diameter_monotone");
    Tracker diam_rate("diameter_rate");
    Tracker comp_rate("component_rate");
    Tracker comp_hull("component_hull");
    Tracker comp_bound("component_bound");
    Tracker fixed_point("fixed_point_singular");

    std::vector<Extent> prev_extents = all_extents(points, dirs);

    auto sink = [&](const StepView& view) {
        const auto& rec = view.record;
        const auto& cur = view.current;
        const auto& next = view.next;
        const std::size_t t = rec.t;
        report.stable_steps += rec.stable;

        const double L0 = rec.objective;
        double L1 = objective(next, kernel, h);
        if (options.inject_descent && t == 1) L1 = L0 - (1.0 + std::abs(L0));
        const double tol_L = options.ascent_rel_tol * (1.0 + std::abs(L0));
        const double gap = minorizer_gap(next, cur, kernel, h);
        const double gap_q = minorizer_gap_quadratic(next, cur, kernel, h);
        const double step_sq = std::pow(configuration_distance(next, cur), 2);

        ascent.observe(L1 - L0 + tol_L, t);
        lemma_a.observe(gap - a_bar * step_sq + tol_L, t);
        sandwich.observe((L1 - L0) - gap + tol_L, t);
        gap_forms.observe(tol_L - std::abs(gap - gap_q), t);
        equality.agree((gap_q == 0.0) == (rec.max_move == 0.0), t);

        const Gradient grad = gradient(cur, kernel, h);
        double grad_norm = 0.0;
        for (double v : grad.values) grad_norm += v * v;
        grad_norm = std::sqrt(grad_norm);
        const double step_norm = std::sqrt(step_sq);
        lemma_b.observe(step_norm - b_bar * grad_norm * (1.0 - 1e-10), t);

        auto extents = all_extents(next, dirs);
        nesting.observe(nesting_slack(prev_extents, extents) + nest_slack, t);
        prev_extents = std::move(extents);

        const double d_next = diameter(next);
        monotone.observe(rec.diameter - d_next + nest_slack, t);
        diam_rate.agree(diam_rate_check(rec.diameter, d_next, kernel, h, options.diameter_rel_slack), t);

        const BmsGraph graph = build_graph(cur, kernel, h);
        if (rec.closed) {
            const double rho_next = component_diameter(next, graph.components);
            comp_rate.agree(
                diam_rate_check(rec.comp_diameter, rho_next, kernel, h, options.diameter_rel_slack), t);
        }
        comp_hull.observe(component_hull_slack(cur, next, graph, dirs) + nest_slack, t);
        const std::size_t bound = component_count_bound(n, rec.diameter, kernel.beta(), h, d);
        comp_bound.observe(static_cast<double>(bound) - static_cast<double>(graph.n_components()), t);
        fixed_point.agree(is_fixed_point(cur, kernel, h, 0.0) == rec.singular, t);
    };

    StopRule stop = StopRule::defaults_for(points);
    stop.max_iter = options.max_iter;
    RunOptions run_options;
    run_options.keep_records = false;
    run_options.stability_tol = stability_tol;
    const RunResult run = run_bms(points, kernel, h, stop, sink, run_options);
    report.steps = run.steps;
    report.stop_reason = run.stop_reason;

    // Terminal configuration and the fuzz corpus feed the graph checks.
    {
        const BmsGraph graph = build_graph(run.final_config, kernel, h);
        const auto cls = classify(graph, run.final_config, kernel, h, stability_tol);
        fixed_point.agree(is_fixed_point(run.final_config, kernel, h, 0.0) == cls.singular, run.steps + 1);
        if (run.stop_reason == StopReason::exact_fixed_point) fixed_point.agree(cls.singular, run.steps + 1);
    }
    std::mt19937_64 rng(options.seed);
    for (std::size_t f = 0; f < options.fuzz; ++f) {
        const Configuration cfg = fuzz_configuration(rng, kernel, h);
        const BmsGraph graph = build_graph(cfg, kernel, h);
        const auto cls = classify(graph, cfg, kernel, h, default_stability_tol(kernel, h));
        fixed_point.agree(is_fixed_point(cfg, kernel, h, 0.0) == cls.singular, 0);
        const std::size_t bound =
            component_count_bound(cfg.size(), diameter(cfg), kernel.beta(), h, cfg.dim());
        comp_bound.observe(static_cast<double>(bound) - static_cast<double>(graph.n_components()), 0);
    }

    for (const Tracker* tr : {&ascent, &lemma_a, &sandwich, &gap_forms, &equality, &lemma_b, &nesting,
                              &monotone, &diam_rate, &comp_rate, &comp_hull, &comp_bound, &fixed_point})
        report.checks.push_back(tr->result());
    return report;
}

}  // namespace bms
