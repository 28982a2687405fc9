#pragma once

#include "rampkit/pole_ic.hpp"
#include "rampkit/series.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace rampkit {

/// Period between consecutive segmentation points, inclusive at both ends.
/// Neighbouring segments share their boundary sample.
struct RampSegment {
    std::size_t start_idx = 0;
    std::size_t end_idx = 0;
    std::vector<double> values; // series[start_idx..end_idx]
    double delta_w = 0.0;       // values.back() - values.front()
    double period_c = 0.0;      // point count * step, seconds
    double rho = 0.0;
    Direction direction = Direction::Flat;

    std::size_t points() const noexcept { return values.size(); }
};

// Boundaries are 0, every extremum index, and n-1. Each segment carries its
// ramp factor computed with dt = series step in seconds.
std::vector<RampSegment> segment_by_extrema(const WindSeries& series, const ExtremaSet& extrema);

// Same segmentation over explicit interior boundary indices.
std::vector<RampSegment> segment_at(const WindSeries& series, std::span<const std::size_t> boundaries);

// |p_end - p_start| > p_val
bool ramp_def1(double p_start, double p_end, double p_val);
// max(window) - min(window) > p_val
bool ramp_def2(std::span<const double> window, double p_val);

// rho = (dW / c) * sum_a (dw/dt)_a over the c points of the segment, with
// forward differences and the last point repeating the final difference. c is
// the point count (the period in units of the sampling step). Positive for
// both monotone rises and falls; the sign of dW is carried by Direction.
double ramp_factor(std::span<const double> values, double dt);
// Sets segment.rho and segment.direction, returns rho.
double ramp_factor(RampSegment& segment, double dt);

enum class RampDefinition { Def1, Def2, RampFactor };

std::string_view to_string(RampDefinition d) noexcept;
RampDefinition parse_ramp_definition(std::string_view text);

struct RampThresholds {
    double p_val = 1.0;         // MW, for Def1 / Def2
    double rho_threshold = 1.0; // for RampFactor; +inf disables

    void validate() const;
};

struct RampEvent {
    std::size_t segment = 0; // index into the labelled segment list
    RampDefinition definition = RampDefinition::RampFactor;
    double threshold_used = 0.0;
    bool fired = false;
};

std::vector<RampEvent> label_ramps(std::span<const RampSegment> segments, const RampThresholds& thresholds,
                                   RampDefinition definition);

// Linear-interpolated quantile of |rho| over the segments (0.9 by default).
double default_rho_threshold(std::span<const RampSegment> segments, double quantile = 0.9);

} // namespace rampkit
