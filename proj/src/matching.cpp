#include "rampkit/matching.hpp"

#include "rampkit/error.hpp"
#include "rampkit/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace rampkit {

namespace {

void require_equal(std::span<const double> h, std::span<const double> p) {
    if (h.size() != p.size())
        throw Error(ErrorKind::LengthMismatch, fmt::format("segment lengths differ ({} vs {})", h.size(), p.size()));
}

} // namespace

double wind_str(std::span<const double> h, std::span<const double> p) {
    require_equal(h, p);
    if (h.empty()) throw Error(ErrorKind::EmptyInput, "wind_str of empty segments");
    double sum = 0.0;
    for (std::size_t a = 0; a < h.size(); ++a) sum += std::abs(h[a] - p[a]);
    return sum / static_cast<double>(h.size());
}

double wind_tre(std::span<const double> h, std::span<const double> p, double dt) {
    require_equal(h, p);
    if (h.size() < 2) throw Error(ErrorKind::TooShort, "wind_tre needs at least 2 points");
    if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
    double slopes_h = 0.0, slopes_p = 0.0;
    for (std::size_t a = 0; a + 1 < h.size(); ++a) {
        slopes_h += (h[a + 1] - h[a]) / dt;
        slopes_p += (p[a + 1] - p[a]) / dt;
    }
    return (slopes_h - slopes_p) / static_cast<double>(h.size() - 1);
}

double omega(double str_norm, double tre_norm) {
    if (!(str_norm >= 0.0 && str_norm <= 1.0) || !(tre_norm >= -1.0 && tre_norm <= 1.0))
        throw Error(ErrorKind::OutOfRange,
                    fmt::format("omega inputs out of range (str={}, tre={})", str_norm, tre_norm));
    const double s2 = str_norm * str_norm;
    const double t2 = tre_norm * tre_norm;
    return tre_norm > 0.0 ? std::abs(s2 + t2) : std::abs(s2 - t2);
}

std::size_t match_stride(std::size_t segment_length, bool exact) noexcept {
    return exact ? 1 : std::max<std::size_t>(1, segment_length / 4);
}

std::vector<MatchRecord> match_periods(std::span<const RampSegment> past_segments, const WindSeries& historical,
                                       const MatchOptions& options) {
    const auto hist = historical.values();
    for (const auto& seg : past_segments) {
        if (seg.points() > hist.size())
            throw Error(ErrorKind::HistoricalTooShort,
                        fmt::format("historical series ({}) shorter than past segment [{}, {}]", hist.size(),
                                    seg.start_idx, seg.end_idx));
    }
    const double dt = static_cast<double>(historical.step().count());

    std::vector<MatchRecord> records(past_segments.size());
    parallel_for(past_segments.size(), resolve_threads(options.threads), [&](std::size_t s) {
        const auto& seg = past_segments[s];
        const std::size_t len = seg.points();
        const std::size_t last = hist.size() - len;
        const std::size_t stride = match_stride(len, options.exact_stride);

        MatchRecord rec;
        rec.segment = s;
        rec.past_start = seg.start_idx;
        rec.past_end = seg.end_idx;
        rec.dtw_distance = std::numeric_limits<double>::infinity();
        const auto consider = [&](std::size_t origin) {
            const double d = fastdtw(seg.values, hist.subspan(origin, len), options.radius).distance;
            if (d < rec.dtw_distance) {
                rec.dtw_distance = d;
                rec.hist_start = origin;
            }
        };
        for (std::size_t origin = 0; origin <= last; origin += stride) consider(origin);
        if (last % stride != 0) consider(last);

        const auto window = hist.subspan(rec.hist_start, len);
        rec.wind_str = wind_str(window, seg.values);
        rec.wind_tre = len >= 2 ? wind_tre(window, seg.values, dt) : 0.0;
        records[s] = rec;
    });

    if (records.size() > 1) {
        std::vector<double> strs;
        double max_tre = 0.0;
        for (const auto& r : records) {
            strs.push_back(r.wind_str);
            max_tre = std::max(max_tre, std::abs(r.wind_tre));
        }
        const auto str_norm = min_max_normalize(strs, 0.0, 1.0);
        for (std::size_t i = 0; i < records.size(); ++i) {
            records[i].wind_str_norm = str_norm[i];
            records[i].wind_tre_norm = max_tre > 0.0 ? std::clamp(records[i].wind_tre / max_tre, -1.0, 1.0) : 0.0;
        }
    }
    for (auto& r : records) r.omega = omega(r.wind_str_norm, r.wind_tre_norm);
    return records;
}

} // namespace rampkit
