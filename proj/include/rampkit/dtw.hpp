#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace rampkit {

/// Monotone alignment from (0, 0) to (n-1, m-1) using unit steps
/// (1,0), (0,1), (1,1).
struct WarpPath {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    std::size_t size() const noexcept { return pairs.size(); }
};

struct DtwResult {
    double distance = 0.0; // sum of |x_i - y_j| along the path
    WarpPath path;
};

// Exact dynamic-programming DTW with absolute-difference local cost. Throws
// EmptyInput.
DtwResult dtw(std::span<const double> x, std::span<const double> y);

// Multiresolution approximation: halve both series by pairwise averaging
// until either is shorter than radius + 2, solve exactly there, then at each
// finer level project the path, widen it by `radius` cells in every
// direction and solve DTW inside that window. Never below the exact optimum.
DtwResult fastdtw(std::span<const double> x, std::span<const double> y, std::size_t radius);

// Pairwise averages; an odd tail element is carried over unchanged.
std::vector<double> coarsen(std::span<const double> x);

} // namespace rampkit
