#pragma once

#include "rampkit/series.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rampkit {

// Interchange format: a `timestamp` column (ISO-8601 UTC) followed by numeric
// columns. `wind_speed_mps` and `power_mw` are physical series, `nwp_*`
// columns are weather-model covariates; anything else loads as Derived.
inline constexpr std::string_view kTimestampColumn = "timestamp";
inline constexpr std::string_view kSpeedColumn = "wind_speed_mps";
inline constexpr std::string_view kPowerColumn = "power_mw";
inline constexpr std::string_view kNwpPrefix = "nwp_";

struct CsvSchema {
    // Columns to load, in order. Empty loads every non-timestamp column.
    std::vector<std::string> columns;
};

SeriesKind infer_kind(std::string_view column_name) noexcept;

FeatureTable load_csv(const std::filesystem::path& path, const CsvSchema& schema = {});
FeatureTable read_csv(std::istream& in, const CsvSchema& schema = {},
                      std::string_view source = "<stream>");

void write_csv(const FeatureTable& table, const std::filesystem::path& path);
void write_csv(const FeatureTable& table, std::ostream& out);

/// Untyped CSV rows with a header, for stage tables that are not on a
/// uniform clock (segment lists, match tables, forecasts).
struct CsvRecords {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string source;

    // Throws MissingColumn.
    std::size_t index(std::string_view column) const;
    const std::string& text(std::size_t row, std::string_view column) const;
    // Throws ParseError / NonFiniteValue.
    double number(std::size_t row, std::string_view column) const;
    std::size_t integer(std::size_t row, std::string_view column) const;
};

// Throws Io, ParseError (ragged rows or missing header).
CsvRecords load_records(const std::filesystem::path& path);
CsvRecords read_records(std::istream& in, std::string_view source = "<stream>");

// %.12g; every CSV writer goes through this so stage outputs are byte-stable.
std::string format_number(double value);

} // namespace rampkit
