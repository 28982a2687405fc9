#include "rampkit/csv.hpp"

#include "rampkit/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

namespace rampkit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t begin = 0;
    for (;;) {
        const auto comma = line.find(',', begin);
        cells.push_back(trim(line.substr(begin, comma - begin)));
        if (comma == std::string_view::npos) break;
        begin = comma + 1;
    }
    return cells;
}

double parse_cell(std::string_view cell, std::string_view source, std::size_t line_no,
                  std::string_view column) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size())
        throw Error(ErrorKind::ParseError, fmt::format("{}:{}: cannot parse '{}' in column '{}'",
                                                       source, line_no, cell, column));
    if (!std::isfinite(value))
        throw Error(ErrorKind::NonFiniteValue,
                    fmt::format("{}:{}: non-finite value in column '{}'", source, line_no, column));
    return value;
}

} // namespace

SeriesKind infer_kind(std::string_view column_name) noexcept {
    if (column_name == kSpeedColumn) return SeriesKind::Speed;
    if (column_name == kPowerColumn) return SeriesKind::Power;
    if (column_name.starts_with(kNwpPrefix)) return SeriesKind::NwpFeature;
    return SeriesKind::Derived;
}

std::string format_number(double value) {
    if (value == 0.0) return "0";  // folds -0
    return fmt::format("{:.12g}", value);
}

FeatureTable read_csv(std::istream& in, const CsvSchema& schema, std::string_view source) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, fmt::format("{}: empty file", source));
    ++line_no;
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    std::vector<std::string> header;
    for (auto cell : split(line)) header.emplace_back(cell);

    const auto find_col = [&](std::string_view name) -> std::size_t {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw Error(ErrorKind::MissingColumn, fmt::format("{}: no column '{}'", source, name));
        return static_cast<std::size_t>(it - header.begin());
    };

    const std::size_t ts_col = find_col(kTimestampColumn);
    std::vector<std::string> wanted = schema.columns;
    if (wanted.empty()) {
        for (const auto& h : header)
            if (h != kTimestampColumn) wanted.push_back(h);
    }
    std::vector<std::size_t> wanted_idx;
    for (const auto& name : wanted) wanted_idx.push_back(find_col(name));

    std::vector<Timestamp> times;
    std::vector<std::vector<double>> data(wanted.size());
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size())
            throw Error(ErrorKind::ParseError, fmt::format("{}:{}: expected {} cells, found {}", source,
                                                           line_no, header.size(), cells.size()));
        times.push_back(parse_timestamp(cells[ts_col]));
        for (std::size_t c = 0; c < wanted.size(); ++c)
            data[c].push_back(parse_cell(cells[wanted_idx[c]], source, line_no, wanted[c]));
    }
    if (times.empty()) throw Error(ErrorKind::EmptyInput, fmt::format("{}: no data rows", source));

    Seconds step = kDefaultStep;
    if (times.size() >= 2) {
        step = times[1] - times[0];
        if (step.count() <= 0)
            throw Error(ErrorKind::NonUniformStep, fmt::format("{}: timestamps not increasing", source));
        for (std::size_t i = 2; i < times.size(); ++i) {
            if (times[i] - times[i - 1] != step)
                throw Error(ErrorKind::NonUniformStep,
                            fmt::format("{}: step changes at row {} ({} vs {} s)", source, i + 1,
                                        (times[i] - times[i - 1]).count(), step.count()));
        }
    }

    FeatureTable table;
    for (std::size_t c = 0; c < wanted.size(); ++c)
        table.add_column(WindSeries(std::move(data[c]), times.front(), step, infer_kind(wanted[c]), wanted[c]));
    return table;
}

FeatureTable load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open '{}'", path.string()));
    return read_csv(in, schema, path.string());
}

std::size_t CsvRecords::index(std::string_view column) const {
    const auto it = std::find(header.begin(), header.end(), column);
    if (it == header.end()) throw Error(ErrorKind::MissingColumn, fmt::format("{}: no column '{}'", source, column));
    return static_cast<std::size_t>(it - header.begin());
}

const std::string& CsvRecords::text(std::size_t row, std::string_view column) const {
    return rows.at(row)[index(column)];
}

double CsvRecords::number(std::size_t row, std::string_view column) const {
    return parse_cell(text(row, column), source, row + 2, column);
}

std::size_t CsvRecords::integer(std::size_t row, std::string_view column) const {
    const auto& cell = text(row, column);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size())
        throw Error(ErrorKind::ParseError, fmt::format("{}:{}: '{}' in column '{}' is not a non-negative integer",
                                                       source, row + 2, cell, column));
    return value;
}

CsvRecords read_records(std::istream& in, std::string_view source) {
    CsvRecords out;
    out.source = std::string(source);
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, fmt::format("{}: empty file", source));
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    for (auto cell : split(line)) out.header.emplace_back(cell);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (cells.size() != out.header.size())
            throw Error(ErrorKind::ParseError, fmt::format("{}:{}: expected {} cells, found {}", source, line_no,
                                                           out.header.size(), cells.size()));
        out.rows.emplace_back(cells.begin(), cells.end());
    }
    return out;
}

CsvRecords load_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open '{}'", path.string()));
    return read_records(in, path.string());
}

void write_csv(const FeatureTable& table, std::ostream& out) {
    out << kTimestampColumn;
    for (const auto& c : table.columns()) out << ',' << c.label();
    out << '\n';
    for (std::size_t i = 0; i < table.rows(); ++i) {
        out << format_timestamp(table.columns().front().time_at(i));
        for (const auto& c : table.columns()) out << ',' << format_number(c[i]);
        out << '\n';
    }
}

void write_csv(const FeatureTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", path.string()));
    write_csv(table, out);
}

} // namespace rampkit
