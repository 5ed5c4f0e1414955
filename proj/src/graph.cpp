#include "bms/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "bms/engine.hpp"
#include "bms/error.hpp"

namespace bms {

DisjointSets::DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

void DisjointSets::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Smaller index becomes the root so roots are the smallest members.
    if (b < a) std::swap(a, b);
    parent_[b] = a;
}

std::vector<std::vector<std::size_t>> DisjointSets::groups() {
    const std::size_t n = parent_.size();
    std::vector<std::size_t> slot(n, n);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        if (slot[root] == n) {
            slot[root] = out.size();
            out.emplace_back();
        }
        out[slot[root]].push_back(i);
    }
    return out;
}

std::size_t BmsGraph::n_edges() const noexcept {
    std::size_t twice = 0;
    for (const auto& nb : adjacency) twice += nb.size();
    return twice / 2;
}

bool BmsGraph::joined(std::size_t i, std::size_t j) const {
    const auto& nb = adjacency.at(i);
    return std::binary_search(nb.begin(), nb.end(), j);
}

BmsGraph build_graph(const Configuration& cfg, const Kernel& kernel, double h) {
    require_bandwidth(h);
    const std::size_t n = cfg.size();
    BmsGraph graph;
    graph.n = n;
    graph.adjacency.assign(n, {});
    const bool complete = !kernel.truncated();
    const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
        const auto i = static_cast<std::size_t>(r);
        auto& nb = graph.adjacency[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            if (complete ||
                kernel.g_unchecked(profile_arg(squared_distance(cfg.point(i), cfg.point(j)), h)) != 0.0)
                nb.push_back(j);
        }
    }
    DisjointSets sets(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : graph.adjacency[i])
            if (j > i) sets.unite(i, j);
    graph.components = sets.groups();
    graph.component_of.assign(n, 0);
    for (std::size_t m = 0; m < graph.components.size(); ++m)
        for (std::size_t i : graph.components[m]) graph.component_of[i] = m;
    return graph;
}

double default_stability_tol(const Kernel& kernel, double h) {
    return kernel.truncated() ? 1e-9 * kernel.beta() * h : 0.0;
}

GraphClassification classify(const BmsGraph& graph, const Configuration& cfg, const Kernel& kernel,
                             double h, double stability_tol) {
    require_bandwidth(h);
    if (graph.n != cfg.size()) throw DataError("graph and configuration differ in size");
    GraphClassification out;

    std::vector<std::size_t> edges_in(graph.n_components(), 0);
    for (std::size_t i = 0; i < graph.n; ++i) edges_in[graph.component_of[i]] += graph.adjacency[i].size();
    out.closed = true;
    for (std::size_t m = 0; m < graph.n_components(); ++m) {
        const std::size_t size = graph.components[m].size();
        if (edges_in[m] != size * (size - 1)) out.closed = false;
    }

    out.singular = true;
    for (std::size_t i = 0; i < graph.n && out.singular; ++i) {
        const auto yi = cfg.point(i);
        for (std::size_t j : graph.adjacency[i]) {
            const auto yj = cfg.point(j);
            if (!std::equal(yi.begin(), yi.end(), yj.begin())) {
                out.singular = false;
                break;
            }
        }
    }

    out.margin = std::numeric_limits<double>::infinity();
    if (kernel.truncated()) {
        const double radius = kernel.beta() * h;
        for (std::size_t i = 0; i < graph.n; ++i)
            for (std::size_t j = i + 1; j < graph.n; ++j) {
                const double dist = distance(cfg.point(i), cfg.point(j));
                if (dist == 0.0) continue;
                out.margin = std::min(out.margin, std::abs(dist - radius));
            }
    }
    out.stable = !kernel.truncated() || out.margin > stability_tol;
    return out;
}

std::size_t component_count_bound(std::size_t n, double gamma, double beta, double h,
                                  std::size_t d) {
    require_bandwidth(h);
    if (!(gamma >= 0.0)) throw ParameterError("gamma must be non-negative");
    if (!std::isfinite(beta)) return n;
    const double cells = std::pow(1.0 + 2.0 * gamma / (beta * h), static_cast<double>(d));
    // Relative nudge so that rounding in gamma/(beta h) never drops an integer.
    const double bound = std::floor(cells * (1.0 + 1e-12));
    if (bound >= static_cast<double>(n)) return n;
    return static_cast<std::size_t>(bound);
}

double fixed_point_residual(const Configuration& cfg, const Kernel& kernel, double h) {
    require_bandwidth(h);
    const std::size_t d = cfg.dim();
    double worst = 0.0;
    std::vector<double> acc(d);
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        std::fill(acc.begin(), acc.end(), 0.0);
        const auto yi = cfg.point(i);
        for (std::size_t j = 0; j < cfg.size(); ++j) {
            const auto yj = cfg.point(j);
            const double w = kernel.g_unchecked(profile_arg(squared_distance(yi, yj), h));
            if (w == 0.0) continue;
            for (std::size_t k = 0; k < d; ++k) acc[k] += (yi[k] - yj[k]) * w;
        }
        double sq = 0.0;
        for (double v : acc) sq += v * v;
        worst = std::max(worst, std::sqrt(sq));
    }
    return worst;
}

bool is_fixed_point(const Configuration& cfg, const Kernel& kernel, double h, double tol) {
    if (!(tol >= 0.0)) throw ParameterError("tolerance must be non-negative");
    return fixed_point_residual(cfg, kernel, h) <= tol;
}

std::string graph_to_json(const BmsGraph& graph) {
    nlohmann::json j;
    j["n"] = graph.n;
    auto edges = nlohmann::json::array();
    for (std::size_t i = 0; i < graph.n; ++i)
        for (std::size_t k : graph.adjacency[i])
            if (k > i) edges.push_back({i, k});
    j["edges"] = std::move(edges);
    j["components"] = graph.components;
    j["labels"] = graph.component_of;
    return j.dump();
}

}  // namespace bms
