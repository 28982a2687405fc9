#pragma once

#include "rampkit/series.hpp"
#include "rampkit/vmd.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace rampkit {

enum class PoleKind { Max, Min };

std::string_view to_string(PoleKind kind) noexcept;

struct Pole {
    std::size_t index = 0;
    double value = 0.0;
    PoleKind kind = PoleKind::Max;

    friend bool operator==(const Pole&, const Pole&) = default;
};

/// Indexed extrema of a series, strictly increasing in index.
struct ExtremaSet {
    std::vector<Pole> points;
    std::size_t source_len = 0;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
    std::vector<std::size_t> indices() const;
};

struct SelectionParams {
    double ell = 0.05;     // adaptive window coefficient, typically in (0.03, 0.08)
    double tau_rate = 1.0; // pole-rate threshold; +inf keeps every mode

    void validate() const;
};

// All strict interior local maxima and minima. A flat run bounded on both
// sides by lower (higher) neighbours yields one maximum (minimum) at the run
// midpoint. Throws TooShort below 3 samples.
ExtremaSet find_extrema(std::span<const double> values);
ExtremaSet find_extrema(const WindSeries& series);

// ell * |max - min|
double dynamic_window(std::span<const double> values, double ell);

// Greedy left-to-right scan: the first pole is kept, every later pole is kept
// iff its amplitude differs from the last kept pole by more than `width`.
ExtremaSet select_poles(const ExtremaSet& extrema, double width);

// Poles surviving selection with the series' own dynamic window.
ExtremaSet selected_poles(std::span<const double> values, double ell);

// selected / n_original. Throws ZeroBaseline when n_original == 0.
double pole_rate(std::size_t selected_count, std::size_t n_original);

struct ScreeningResult {
    std::vector<std::size_t> kept;         // 0-based mode indices with rate <= tau
    std::vector<double> rates;             // per mode
    std::vector<std::size_t> pole_counts;  // selected poles per mode
    std::size_t n_original = 0;            // selected poles of the all-modes sum
    std::vector<double> recon;             // sum of kept modes
};

// Rates from per-mode selected-pole counts. With n_original == 0 the summed
// series has no surviving poles, so a mode rates 0 if it has none either and
// +inf otherwise.
std::vector<double> pole_rates(std::span<const std::size_t> counts, std::size_t n_original);

// Throws AllModesRejected if no mode passes the threshold.
ScreeningResult screen_modes(const ModeSet& modes, const SelectionParams& params);

struct VmdIcResult {
    WindSeries recon;
    ExtremaSet extrema; // selected poles of recon
    ModeSet modes;
    ScreeningResult screening;
};

// Decompose, screen modes by pole rate, rebuild, and select the poles of the
// rebuilt series. A flat input is returned unchanged with no extrema.
VmdIcResult vmd_ic(const WindSeries& series, const VmdParams& vmd = {}, const SelectionParams& selection = {});

} // namespace rampkit
