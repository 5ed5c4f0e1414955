#include "bms/datasets.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "bms/error.hpp"

namespace bms::datasets {

Dataset blobs(std::size_t n, const std::vector<std::vector<double>>& centers,
              const std::vector<double>& stddevs, std::uint64_t seed) {
    if (centers.empty() || centers.size() != stddevs.size())
        throw ParameterError("blobs needs one stddev per centre");
    const std::size_t d = centers.front().size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<double> coords;
    coords.reserve(n * d);
    std::vector<std::size_t> truth(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = i * centers.size() / n;
        truth[i] = c;
        for (std::size_t k = 0; k < d; ++k) coords.push_back(centers[c][k] + stddevs[c] * normal(rng));
    }
    return {Configuration(n, d, std::move(coords)), std::move(truth)};
}

Dataset two_blobs(std::size_t n, std::uint64_t seed) {
    return blobs(n, {{-5.0, 0.0}, {5.0, 0.0}}, {1.0, 1.0}, seed);
}

Dataset three_blobs(std::size_t n, std::uint64_t seed) {
    return blobs(n, {{-6.0, -4.0}, {0.0, 6.0}, {6.0, -3.0}}, {1.0, 1.0, 1.0}, seed);
}

Dataset varied_blobs(std::size_t n, std::uint64_t seed) {
    return blobs(n, {{-8.0, -6.0}, {0.0, 6.0}, {8.0, -4.0}}, {1.0, 2.5, 0.5}, seed);
}

Dataset anisotropic_blobs(std::size_t n, std::uint64_t seed) {
    Dataset ds = three_blobs(n, seed);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = ds.points(i, 0), y = ds.points(i, 1);
        ds.points(i, 0) = 0.6 * x - 0.4 * y;
        ds.points(i, 1) = -0.6 * x + 0.8 * y;
    }
    return ds;
}

Dataset noisy_moons(std::size_t n, double noise, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const std::size_t outer = n / 2;
    const std::size_t inner = n - outer;
    std::vector<double> coords;
    coords.reserve(2 * n);
    std::vector<std::size_t> truth(n);
    for (std::size_t i = 0; i < outer; ++i) {
        const double a = std::numbers::pi * static_cast<double>(i) / static_cast<double>(outer - 1);
        coords.push_back(std::cos(a) + noise * normal(rng));
        coords.push_back(std::sin(a) + noise * normal(rng));
        truth[i] = 0;
    }
    for (std::size_t i = 0; i < inner; ++i) {
        const double a = std::numbers::pi * static_cast<double>(i) / static_cast<double>(inner - 1);
        coords.push_back(1.0 - std::cos(a) + noise * normal(rng));
        coords.push_back(0.5 - std::sin(a) + noise * normal(rng));
        truth[outer + i] = 1;
    }
    return {Configuration(n, 2, std::move(coords)), std::move(truth)};
}

Dataset noisy_circles(std::size_t n, double factor, double noise, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const std::size_t outer = n / 2;
    const std::size_t inner = n - outer;
    std::vector<double> coords;
    coords.reserve(2 * n);
    std::vector<std::size_t> truth(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool is_outer = i < outer;
        const std::size_t m = is_outer ? outer : inner;
        const std::size_t idx = is_outer ? i : i - outer;
        const double a = 2.0 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(m);
        const double radius = is_outer ? 1.0 : factor;
        coords.push_back(radius * std::cos(a) + noise * normal(rng));
        coords.push_back(radius * std::sin(a) + noise * normal(rng));
        truth[i] = is_outer ? 0 : 1;
    }
    return {Configuration(n, 2, std::move(coords)), std::move(truth)};
}

Dataset uniform_noise(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> coords(2 * n);
    for (auto& v : coords) v = unif(rng);
    return {Configuration(n, 2, std::move(coords)), std::vector<std::size_t>(n, 0)};
}

Dataset by_name(std::string_view name, std::size_t n, std::uint64_t seed) {
    if (name == "blobs") return three_blobs(n, seed);
    if (name == "two_blobs") return two_blobs(n, seed);
    if (name == "varied") return varied_blobs(n, seed);
    if (name == "aniso") return anisotropic_blobs(n, seed);
    if (name == "moons") return noisy_moons(n, 0.05, seed);
    if (name == "circles") return noisy_circles(n, 0.5, 0.05, seed);
    if (name == "uniform") return uniform_noise(n, seed);
    throw ConfigError("unknown dataset: " + std::string(name));
}

}  // namespace bms::datasets
