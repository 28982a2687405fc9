#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rampkit {

using Timestamp = std::chrono::sys_seconds;
using Seconds = std::chrono::seconds;

inline constexpr Seconds kDefaultStep{900};

// Parses "YYYY-MM-DDTHH:MM:SS" with an optional trailing "Z" or "+00:00".
// A space is accepted in place of the 'T'.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

// Derived covers signed or rescaled series (mode sums, normalized values) that
// are not bound by the physical non-negativity of speed and power.
enum class SeriesKind { Speed, Power, NwpFeature, Derived };

std::string_view to_string(SeriesKind kind) noexcept;

enum class Direction { Up, Down, Flat };

std::string_view to_string(Direction d) noexcept;
Direction parse_direction(std::string_view text);

/// Uniformly sampled scalar series on a fixed clock (start_time + i * step).
class WindSeries {
public:
    WindSeries(std::vector<double> values, Timestamp start_time, Seconds step = kDefaultStep,
               SeriesKind kind = SeriesKind::Speed, std::string label = {});

    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& vector() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    Timestamp start_time() const noexcept { return start_; }
    Seconds step() const noexcept { return step_; }
    SeriesKind kind() const noexcept { return kind_; }
    const std::string& label() const noexcept { return label_; }
    Timestamp time_at(std::size_t i) const noexcept;

    // Same clock, new values and kind.
    WindSeries with_values(std::vector<double> values, SeriesKind kind, std::string label) const;

    bool same_clock(const WindSeries& other) const noexcept {
        return start_ == other.start_ && step_ == other.step_ && size() == other.size();
    }

    friend bool operator==(const WindSeries&, const WindSeries&) = default;

private:
    std::vector<double> values_;
    Timestamp start_;
    Seconds step_;
    SeriesKind kind_;
    std::string label_;
};

/// Named, clock-aligned columns.
class FeatureTable {
public:
    FeatureTable() = default;

    // Throws AlignmentError if the column's clock differs from existing columns
    // and InvalidArgument on a duplicate name.
    void add_column(WindSeries column);

    bool has_column(std::string_view name) const noexcept;
    const WindSeries& column(std::string_view name) const;
    const std::vector<WindSeries>& columns() const noexcept { return columns_; }
    std::vector<std::string> names() const;

    std::size_t rows() const noexcept { return columns_.empty() ? 0 : columns_.front().size(); }
    bool empty() const noexcept { return columns_.empty(); }
    Timestamp start_time() const;
    Seconds step() const;

    const std::optional<std::string>& target() const noexcept { return target_; }
    void set_target(std::string name);

    friend bool operator==(const FeatureTable&, const FeatureTable&) = default;

private:
    std::vector<WindSeries> columns_;
    std::optional<std::string> target_;
};

/// lo + (x - min) / (max - min) * (hi - lo); a flat series maps to lo.
WindSeries min_max_normalize(const WindSeries& series, double lo = 0.0, double hi = 1.0);

// Plain-vector variant used by the feature pipeline.
std::vector<double> min_max_normalize(std::span<const double> values, double lo, double hi);

} // namespace rampkit
