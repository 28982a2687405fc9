#pragma once

#include "rampkit/dtw.hpp"
#include "rampkit/ramp.hpp"
#include "rampkit/series.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rampkit {

// Mean absolute level difference between a historical (h) and past (p)
// segment of equal length. Throws LengthMismatch / EmptyInput.
double wind_str(std::span<const double> h, std::span<const double> p);

// Difference of mean forward slopes, (1/(c-1)) * (sum slopes(h) - sum slopes(p)),
// slopes taken over dt. Throws LengthMismatch, TooShort (c < 2).
double wind_tre(std::span<const double> h, std::span<const double> p, double dt);

// Similarity coefficient from normalized STR in [0, 1] and TRE in [-1, 1]:
// str^2 + tre^2 when tre > 0, |str^2 - tre^2| otherwise. Throws OutOfRange.
double omega(double str_norm, double tre_norm);

struct MatchOptions {
    std::size_t radius = 1;
    // Stride-1 scan of every historical origin instead of max(1, len/4).
    bool exact_stride = false;
    std::size_t threads = 0; // 0: RAMPKIT_THREADS or 1
};

struct MatchRecord {
    std::size_t segment = 0;    // index into the past segment list
    std::size_t past_start = 0; // past segment bounds, inclusive
    std::size_t past_end = 0;
    std::size_t hist_start = 0; // origin of the winning historical window
    double dtw_distance = 0.0;
    double wind_str = 0.0;
    double wind_tre = 0.0;
    double wind_str_norm = 0.0; // batch min-max to [0, 1]
    double wind_tre_norm = 0.0; // batch max-|.| scaling to [-1, 1], sign kept
    double omega = 0.0;
};

std::size_t match_stride(std::size_t segment_length, bool exact) noexcept;

// For every past segment, scan same-length windows of the historical series,
// keep the lowest-FastDTW window (earliest on ties), score it with STR and
// TRE, normalize both across the batch and compute omega. A single-record
// batch normalizes to 0. Throws HistoricalTooShort.
std::vector<MatchRecord> match_periods(std::span<const RampSegment> past_segments, const WindSeries& historical,
                                       const MatchOptions& options = {});

} // namespace rampkit
