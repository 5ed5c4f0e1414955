#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bms {

// n points in R^d stored row-major; row i is the i-th (blurred) point.
class Configuration {
public:
    Configuration() = default;

    // Zero-filled configuration. Throws DataError if n or d is zero.
    Configuration(std::size_t n, std::size_t d);

    // Takes ownership of row-major coordinates; coords.size() must be n*d and
    // every value finite.
    Configuration(std::size_t n, std::size_t d, std::vector<double> coords);

    static Configuration from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const noexcept { return n_; }
    std::size_t dim() const noexcept { return d_; }

    std::span<const double> point(std::size_t i) const noexcept {
        return {coords_.data() + i * d_, d_};
    }
    std::span<double> point(std::size_t i) noexcept { return {coords_.data() + i * d_, d_}; }

    double operator()(std::size_t i, std::size_t k) const noexcept { return coords_[i * d_ + k]; }
    double& operator()(std::size_t i, std::size_t k) noexcept { return coords_[i * d_ + k]; }

    // Flat view of the configuration vector in R^{nd}.
    std::span<const double> flat() const noexcept { return coords_; }
    std::span<double> flat() noexcept { return coords_; }

    std::vector<std::vector<double>> rows() const;

    // Throws DataError when any coordinate is NaN or infinite.
    void require_finite() const;

    bool same_shape(const Configuration& other) const noexcept {
        return n_ == other.n_ && d_ == other.d_;
    }

    // Bitwise equality of all coordinates.
    friend bool operator==(const Configuration& a, const Configuration& b) noexcept;

private:
    std::size_t n_ = 0;
    std::size_t d_ = 0;
    std::vector<double> coords_;
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;
double distance(std::span<const double> a, std::span<const double> b) noexcept;

// max_i ||a_i - b_i||; shapes must match.
double max_point_move(const Configuration& a, const Configuration& b);

// ||a - b|| over the whole configuration vector.
double configuration_distance(const Configuration& a, const Configuration& b);

}  // namespace bms
