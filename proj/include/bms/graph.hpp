#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bms/configuration.hpp"
#include "bms/kernels.hpp"

namespace bms {

// Graph on [n] with an edge {i, j}, i != j, iff G((u_i - u_j)/h) != 0.
// Non-truncated kernels give the complete graph.
struct BmsGraph {
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> adjacency;  // sorted neighbour lists
    // Vertex sets of the components, each sorted, ordered by smallest vertex.
    std::vector<std::vector<std::size_t>> components;
    std::vector<std::size_t> component_of;  // vertex -> index into components

    std::size_t n_components() const noexcept { return components.size(); }
    std::size_t n_edges() const noexcept;
    bool joined(std::size_t i, std::size_t j) const;
};

struct GraphClassification {
    bool closed = false;    // every component is a clique
    bool singular = false;  // every joined pair coincides
    bool stable = false;
    // min over pairs of distinct points of | ||u_i - u_j|| - beta h |;
    // +inf for non-truncated kernels.
    double margin = 0.0;
};

BmsGraph build_graph(const Configuration& cfg, const Kernel& kernel, double h);

// 1e-9 * beta * h (0 for non-truncated kernels).
double default_stability_tol(const Kernel& kernel, double h);

GraphClassification classify(const BmsGraph& graph, const Configuration& cfg, const Kernel& kernel,
                             double h, double stability_tol);

// floor(min{n, (1 + 2 gamma/(beta h))^d}); n for non-truncated kernels.
std::size_t component_count_bound(std::size_t n, double gamma, double beta, double h,
                                  std::size_t d);

// max_i || sum_j (u_i - u_j) G((u_i - u_j)/h) ||.
double fixed_point_residual(const Configuration& cfg, const Kernel& kernel, double h);

// True iff fixed_point_residual(cfg) <= tol.
bool is_fixed_point(const Configuration& cfg, const Kernel& kernel, double h, double tol);

// {"n":..,"edges":[[i,j],..],"components":[[..],..],"labels":[..]} for debugging.
std::string graph_to_json(const BmsGraph& graph);

// Union-find over [n] with path halving.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);
    std::size_t find(std::size_t x);
    void unite(std::size_t a, std::size_t b);
    // Groups ordered by smallest member, members sorted.
    std::vector<std::vector<std::size_t>> groups();

private:
    std::vector<std::size_t> parent_;
};

}  // namespace bms
