#include "bms/configuration.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "bms/error.hpp"

namespace bms {

Configuration::Configuration(std::size_t n, std::size_t d) : n_(n), d_(d), coords_(n * d, 0.0) {
    if (n == 0 || d == 0) throw DataError("configuration needs n >= 1 and d >= 1");
}

Configuration::Configuration(std::size_t n, std::size_t d, std::vector<double> coords)
    : n_(n), d_(d), coords_(std::move(coords)) {
    if (n == 0 || d == 0) throw DataError("configuration needs n >= 1 and d >= 1");
    if (coords_.size() != n * d)
        throw DataError("configuration has " + std::to_string(coords_.size()) +
                        " coordinates, expected " + std::to_string(n * d));
    require_finite();
}

Configuration Configuration::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw DataError("configuration needs at least one point");
    const std::size_t d = rows.front().size();
    std::vector<double> coords;
    coords.reserve(rows.size() * d);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != d)
            throw DataError("point " + std::to_string(i) + " has dimension " +
                            std::to_string(rows[i].size()) + ", expected " + std::to_string(d));
        coords.insert(coords.end(), rows[i].begin(), rows[i].end());
    }
    return Configuration(rows.size(), d, std::move(coords));
}

std::vector<std::vector<double>> Configuration::rows() const {
    std::vector<std::vector<double>> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i].assign(point(i).begin(), point(i).end());
    return out;
}

void Configuration::require_finite() const {
    for (std::size_t m = 0; m < coords_.size(); ++m)
        if (!std::isfinite(coords_[m]))
            throw DataError("non-finite coordinate at point " + std::to_string(m / d_) +
                            ", axis " + std::to_string(m % d_));
}

bool operator==(const Configuration& a, const Configuration& b) noexcept {
    if (!a.same_shape(b)) return false;
    // Bitwise: distinguishes -0.0 from 0.0, which exact fixed-point detection needs.
    return std::memcmp(a.coords_.data(), b.coords_.data(), a.coords_.size() * sizeof(double)) == 0;
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    double sq = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        sq += diff * diff;
    }
    return sq;
}

double distance(std::span<const double> a, std::span<const double> b) noexcept {
    return std::sqrt(squared_distance(a, b));
}

double max_point_move(const Configuration& a, const Configuration& b) {
    if (!a.same_shape(b)) throw DataError("configurations differ in shape");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, distance(a.point(i), b.point(i)));
    return worst;
}

double configuration_distance(const Configuration& a, const Configuration& b) {
    if (!a.same_shape(b)) throw DataError("configurations differ in shape");
    return distance(a.flat(), b.flat());
}

}  // namespace bms
