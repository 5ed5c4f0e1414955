#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "bms/configuration.hpp"

namespace bms::datasets {

// Synthetic 2-D point sets in the style of the common clustering demo
// collection. Every generator is deterministic given the seed.
struct Dataset {
    Configuration points;
    std::vector<std::size_t> truth;  // generator component per point (0-based)
};

// Isotropic Gaussian blobs around the given centres, one std per centre.
Dataset blobs(std::size_t n, const std::vector<std::vector<double>>& centers,
              const std::vector<double>& stddevs, std::uint64_t seed);

Dataset two_blobs(std::size_t n, std::uint64_t seed);
Dataset three_blobs(std::size_t n, std::uint64_t seed);
// Blobs with unequal spreads.
Dataset varied_blobs(std::size_t n, std::uint64_t seed);
// Blobs sheared by a fixed linear map.
Dataset anisotropic_blobs(std::size_t n, std::uint64_t seed);
Dataset noisy_moons(std::size_t n, double noise, std::uint64_t seed);
Dataset noisy_circles(std::size_t n, double factor, double noise, std::uint64_t seed);
// Uniform noise on the unit square; truth is all zeros.
Dataset uniform_noise(std::size_t n, std::uint64_t seed);

// "blobs", "two_blobs", "varied", "aniso", "moons", "circles", "uniform".
Dataset by_name(std::string_view name, std::size_t n, std::uint64_t seed);

}  // namespace bms::datasets
