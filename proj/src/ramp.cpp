#include "rampkit/ramp.hpp"

#include "rampkit/error.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace rampkit {

std::vector<RampSegment> segment_at(const WindSeries& series, std::span<const std::size_t> boundaries) {
    const std::size_t n = series.size();
    if (n < 2) throw Error(ErrorKind::TooShort, "segmentation needs at least 2 samples");
    std::vector<std::size_t> cuts{0};
    for (std::size_t b : boundaries) {
        if (b >= n) throw Error(ErrorKind::OutOfRange, fmt::format("boundary {} outside series of length {}", b, n));
        if (b <= cuts.back()) {
            if (b == cuts.back()) continue;
            throw Error(ErrorKind::InvalidArgument, "segment boundaries must be increasing");
        }
        cuts.push_back(b);
    }
    if (cuts.back() != n - 1) cuts.push_back(n - 1);

    const double dt = static_cast<double>(series.step().count());
    const auto values = series.values();
    std::vector<RampSegment> out;
    out.reserve(cuts.size() - 1);
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        RampSegment seg;
        seg.start_idx = cuts[s];
        seg.end_idx = cuts[s + 1];
        seg.values.assign(values.begin() + static_cast<std::ptrdiff_t>(seg.start_idx),
                          values.begin() + static_cast<std::ptrdiff_t>(seg.end_idx) + 1);
        seg.delta_w = seg.values.back() - seg.values.front();
        seg.period_c = static_cast<double>(seg.points()) * dt;
        ramp_factor(seg, dt);
        out.push_back(std::move(seg));
    }
    return out;
}

std::vector<RampSegment> segment_by_extrema(const WindSeries& series, const ExtremaSet& extrema) {
    return segment_at(series, extrema.indices());
}

bool ramp_def1(double p_start, double p_end, double p_val) {
    return std::abs(p_end - p_start) > p_val;
}

bool ramp_def2(std::span<const double> window, double p_val) {
    if (window.empty()) throw Error(ErrorKind::EmptyInput, "ramp window is empty");
    const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
    return *hi - *lo > p_val;
}

double ramp_factor(std::span<const double> values, double dt) {
    const std::size_t c = values.size();
    if (c < 2) throw Error(ErrorKind::TooShort, "ramp factor needs at least 2 points");
    if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
    const double delta_w = values.back() - values.front();
    double slope_sum = 0.0;
    for (std::size_t a = 0; a + 1 < c; ++a) slope_sum += (values[a + 1] - values[a]) / dt;
    slope_sum += (values[c - 1] - values[c - 2]) / dt;
    return delta_w / static_cast<double>(c) * slope_sum;
}

double ramp_factor(RampSegment& segment, double dt) {
    segment.rho = ramp_factor(segment.values, dt);
    segment.delta_w = segment.values.back() - segment.values.front();
    segment.direction = segment.delta_w > 0.0   ? Direction::Up
                        : segment.delta_w < 0.0 ? Direction::Down
                                                : Direction::Flat;
    return segment.rho;
}

std::string_view to_string(RampDefinition d) noexcept {
    switch (d) {
    case RampDefinition::Def1: return "def1";
    case RampDefinition::Def2: return "def2";
    case RampDefinition::RampFactor: return "rf";
    }
    return "unknown";
}

RampDefinition parse_ramp_definition(std::string_view text) {
    if (text == "def1") return RampDefinition::Def1;
    if (text == "def2") return RampDefinition::Def2;
    if (text == "rf") return RampDefinition::RampFactor;
    throw Error(ErrorKind::InvalidArgument, fmt::format("unknown ramp definition '{}'", text));
}

void RampThresholds::validate() const {
    if (!(p_val > 0.0)) throw Error(ErrorKind::InvalidArgument, "p_val must be positive");
    if (!(rho_threshold >= 0.0)) throw Error(ErrorKind::InvalidArgument, "rho_threshold must be non-negative");
}

std::vector<RampEvent> label_ramps(std::span<const RampSegment> segments, const RampThresholds& thresholds,
                                   RampDefinition definition) {
    thresholds.validate();
    std::vector<RampEvent> out;
    out.reserve(segments.size());
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const auto& seg = segments[s];
        RampEvent ev;
        ev.segment = s;
        ev.definition = definition;
        switch (definition) {
        case RampDefinition::Def1:
            ev.threshold_used = thresholds.p_val;
            ev.fired = ramp_def1(seg.values.front(), seg.values.back(), thresholds.p_val);
            break;
        case RampDefinition::Def2:
            ev.threshold_used = thresholds.p_val;
            ev.fired = ramp_def2(seg.values, thresholds.p_val);
            break;
        case RampDefinition::RampFactor:
            ev.threshold_used = thresholds.rho_threshold;
            ev.fired = std::abs(seg.rho) > thresholds.rho_threshold;
            break;
        }
        out.push_back(ev);
    }
    return out;
}

double default_rho_threshold(std::span<const RampSegment> segments, double quantile) {
    if (segments.empty()) throw Error(ErrorKind::EmptyInput, "no segments for a rho threshold");
    if (!(quantile >= 0.0 && quantile <= 1.0)) throw Error(ErrorKind::InvalidArgument, "quantile must be in [0, 1]");
    std::vector<double> mags;
    mags.reserve(segments.size());
    for (const auto& s : segments) mags.push_back(std::abs(s.rho));
    std::sort(mags.begin(), mags.end());
    const double pos = quantile * static_cast<double>(mags.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, mags.size() - 1);
    return mags[lo] + (pos - static_cast<double>(lo)) * (mags[hi] - mags[lo]);
}

} // namespace rampkit
