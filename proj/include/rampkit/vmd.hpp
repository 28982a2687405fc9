#pragma once

#include "rampkit/series.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rampkit {

struct VmdParams {
    std::size_t modes = 8;   // K
    double alpha = 2000.0;   // bandwidth penalty
    double tau_dual = 0.0;   // dual ascent step; 0 disables exact-reconstruction enforcement
    double tol = 1e-7;
    std::size_t max_iter = 500;

    void validate() const;
};

/// Band-limited intrinsic mode components, ordered by ascending center
/// frequency so that mode 0 is the slowest trend.
struct ModeSet {
    std::vector<std::vector<double>> modes;
    std::vector<double> center_freqs; // cycles per sample, in [0, 0.5]
    double residual_norm = 0.0;       // ||input - sum(modes)|| / ||input||
    std::size_t iterations = 0;

    std::size_t count() const noexcept { return modes.size(); }
    std::size_t length() const noexcept { return modes.empty() ? 0 : modes.front().size(); }
};

// Throws TooShort when the series has fewer than 4 * K samples. Hitting
// max_iter is not an error: iterations == max_iter in that case.
ModeSet vmd_decompose(std::span<const double> signal, const VmdParams& params = {});
ModeSet vmd_decompose(const WindSeries& series, const VmdParams& params = {});

// Pointwise sum of the selected (0-based) modes. Throws EmptySelection or
// OutOfRange.
std::vector<double> reconstruct(const ModeSet& modes, std::span<const std::size_t> keep);
WindSeries reconstruct(const ModeSet& modes, std::span<const std::size_t> keep, const WindSeries& clock);

std::vector<std::size_t> all_modes(const ModeSet& modes);

} // namespace rampkit
