#include "rampkit/series.hpp"

#include "rampkit/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

namespace rampkit {

std::string_view to_string(SeriesKind kind) noexcept {
    switch (kind) {
    case SeriesKind::Speed: return "speed";
    case SeriesKind::Power: return "power";
    case SeriesKind::NwpFeature: return "nwp-feature";
    case SeriesKind::Derived: return "derived";
    }
    return "unknown";
}

std::string_view to_string(Direction d) noexcept {
    switch (d) {
    case Direction::Up: return "up";
    case Direction::Down: return "down";
    case Direction::Flat: return "flat";
    }
    return "unknown";
}

Direction parse_direction(std::string_view text) {
    if (text == "up") return Direction::Up;
    if (text == "down") return Direction::Down;
    if (text == "flat") return Direction::Flat;
    throw Error(ErrorKind::ParseError, fmt::format("unknown direction '{}'", text));
}

namespace {

int parse_int(std::string_view text, std::string_view whole) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw Error(ErrorKind::ParseError, fmt::format("bad timestamp '{}'", whole));
    return value;
}

} // namespace

Timestamp parse_timestamp(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    if (s.ends_with('Z'))
        s.remove_suffix(1);
    else if (s.ends_with("+00:00"))
        s.remove_suffix(6);
    // YYYY-MM-DDTHH:MM:SS
    if (s.size() != 19 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') ||
        s[13] != ':' || s[16] != ':')
        throw Error(ErrorKind::ParseError, fmt::format("bad timestamp '{}'", text));

    using namespace std::chrono;
    const year_month_day ymd{year{parse_int(s.substr(0, 4), text)},
                             month{static_cast<unsigned>(parse_int(s.substr(5, 2), text))},
                             day{static_cast<unsigned>(parse_int(s.substr(8, 2), text))}};
    const int hh = parse_int(s.substr(11, 2), text);
    const int mm = parse_int(s.substr(14, 2), text);
    const int ss = parse_int(s.substr(17, 2), text);
    if (!ymd.ok() || hh > 23 || mm > 59 || ss > 59)
        throw Error(ErrorKind::ParseError, fmt::format("bad timestamp '{}'", text));
    return sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss};
}

std::string format_timestamp(Timestamp t) {
    using namespace std::chrono;
    const auto day_point = floor<days>(t);
    const year_month_day ymd{day_point};
    const hh_mm_ss hms{t - day_point};
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                       hms.hours().count(), hms.minutes().count(), hms.seconds().count());
}

WindSeries::WindSeries(std::vector<double> values, Timestamp start_time, Seconds step,
                       SeriesKind kind, std::string label)
    : values_(std::move(values)), start_(start_time), step_(step), kind_(kind),
      label_(std::move(label)) {
    if (values_.empty())
        throw Error(ErrorKind::EmptyInput, fmt::format("series '{}' has no values", label_));
    if (step_.count() <= 0)
        throw Error(ErrorKind::InvalidArgument, fmt::format("series '{}' step must be positive", label_));
    const bool physical = kind_ == SeriesKind::Speed || kind_ == SeriesKind::Power;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw Error(ErrorKind::NonFiniteValue,
                        fmt::format("series '{}' value {} is not finite", label_, i));
        if (physical && values_[i] < 0.0)
            throw Error(ErrorKind::InvalidArgument,
                        fmt::format("series '{}' ({}) value {} is negative", label_,
                                    to_string(kind_), i));
    }
}

Timestamp WindSeries::time_at(std::size_t i) const noexcept {
    return start_ + step_ * static_cast<long long>(i);
}

WindSeries WindSeries::with_values(std::vector<double> values, SeriesKind kind, std::string label) const {
    return WindSeries(std::move(values), start_, step_, kind, std::move(label));
}

void FeatureTable::add_column(WindSeries column) {
    if (has_column(column.label()))
        throw Error(ErrorKind::InvalidArgument, fmt::format("duplicate column '{}'", column.label()));
    if (!columns_.empty() && !columns_.front().same_clock(column))
        throw Error(ErrorKind::AlignmentError,
                    fmt::format("column '{}' is not aligned with '{}'", column.label(),
                                columns_.front().label()));
    columns_.push_back(std::move(column));
}

bool FeatureTable::has_column(std::string_view name) const noexcept {
    return std::any_of(columns_.begin(), columns_.end(),
                       [&](const WindSeries& c) { return c.label() == name; });
}

const WindSeries& FeatureTable::column(std::string_view name) const {
    for (const auto& c : columns_)
        if (c.label() == name) return c;
    throw Error(ErrorKind::MissingColumn, fmt::format("no column '{}'", name));
}

std::vector<std::string> FeatureTable::names() const {
    std::vector<std::string> out;
    out.reserve(columns_.size());
    for (const auto& c : columns_) out.push_back(c.label());
    return out;
}

Timestamp FeatureTable::start_time() const {
    if (columns_.empty()) throw Error(ErrorKind::EmptyInput, "empty feature table");
    return columns_.front().start_time();
}

Seconds FeatureTable::step() const {
    if (columns_.empty()) throw Error(ErrorKind::EmptyInput, "empty feature table");
    return columns_.front().step();
}

void FeatureTable::set_target(std::string name) {
    if (!has_column(name)) throw Error(ErrorKind::MissingColumn, fmt::format("no column '{}'", name));
    target_ = std::move(name);
}

std::vector<double> min_max_normalize(std::span<const double> values, double lo, double hi) {
    if (values.empty()) throw Error(ErrorKind::EmptyInput, "cannot normalize an empty series");
    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    const double min = *min_it;
    const double range = *max_it - min;
    std::vector<double> out(values.size(), lo);
    if (range > 0.0) {
        for (std::size_t i = 0; i < values.size(); ++i)
            out[i] = std::clamp(lo + (values[i] - min) / range * (hi - lo), std::min(lo, hi),
                                std::max(lo, hi));
    }
    return out;
}

WindSeries min_max_normalize(const WindSeries& series, double lo, double hi) {
    return series.with_values(min_max_normalize(series.values(), lo, hi), SeriesKind::Derived,
                              series.label());
}

} // namespace rampkit
