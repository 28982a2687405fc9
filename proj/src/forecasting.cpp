#include "rampkit/forecasting.hpp"

#include "rampkit/csv.hpp"
#include "rampkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace rampkit {

std::string lag_name(std::size_t k) { return fmt::format("power_lag_{}", k); }

std::vector<RankedFeature> rank_nwp_features(const FeatureTable& table, std::string_view target) {
    const auto& y = table.column(target);
    if (table.rows() < 2) throw Error(ErrorKind::TooShort, "feature ranking needs at least 2 rows");
    std::vector<RankedFeature> out;
    for (const auto& col : table.columns()) {
        if (col.label() == target) continue;
        out.push_back({col.label(), pearson(col.values(), y.values())});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const RankedFeature& a, const RankedFeature& b) { return a.correlation > b.correlation; });
    return out;
}

void FeatureOptions::validate() const {
    if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be >= 1");
    for (std::size_t i = 0; i < lags.size(); ++i) {
        if (lags[i] < 1) throw Error(ErrorKind::InvalidArgument, "lags must be >= 1");
        if (std::find(lags.begin(), lags.begin() + static_cast<std::ptrdiff_t>(i), lags[i]) !=
            lags.begin() + static_cast<std::ptrdiff_t>(i))
            throw Error(ErrorKind::InvalidArgument, fmt::format("duplicate lag {}", lags[i]));
    }
}

const std::vector<double>& FeatureMatrix::column(std::string_view name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error(ErrorKind::MissingColumn, fmt::format("no feature column '{}'", name));
    return columns[static_cast<std::size_t>(it - names.begin())];
}

bool FeatureMatrix::has_column(std::string_view name) const noexcept {
    return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

std::vector<std::string> resolve_nwp(const FeatureTable& table, const FeatureOptions& options) {
    if (!options.nwp_columns.empty()) {
        for (const auto& name : options.nwp_columns) (void)table.column(name);
        return options.nwp_columns;
    }
    std::vector<std::string> out;
    for (const auto& f : rank_nwp_features(table, options.power_column)) {
        if (out.size() == kDefaultNwpFeatures) break;
        if (f.name.rfind(kNwpPrefix, 0) == 0) out.push_back(f.name);
    }
    return out;
}

void check_segments(std::span<const MatchRecord> matches, std::span<const RampSegment> segments,
                    std::span<const RampEvent> ramps, std::size_t rows) {
    if (segments.empty()) throw Error(ErrorKind::InvalidArgument, "analogue features need at least one segment");
    if (segments.front().start_idx != 0 || segments.back().end_idx + 1 != rows)
        throw Error(ErrorKind::AlignmentError,
                    fmt::format("segments cover [{}, {}] but the table has {} rows", segments.front().start_idx,
                                segments.back().end_idx, rows));
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (segments[i].end_idx < segments[i].start_idx || (i > 0 && segments[i].start_idx != segments[i - 1].end_idx))
            throw Error(ErrorKind::AlignmentError, fmt::format("segment {} is not contiguous", i));
    }
    if (matches.size() != segments.size())
        throw Error(ErrorKind::AlignmentError,
                    fmt::format("{} match records for {} segments", matches.size(), segments.size()));
    for (std::size_t i = 0; i < matches.size(); ++i) {
        if (matches[i].segment != i || matches[i].past_start != segments[i].start_idx ||
            matches[i].past_end != segments[i].end_idx)
            throw Error(ErrorKind::AlignmentError, fmt::format("match record {} does not belong to segment {}", i, i));
    }
    for (const auto& r : ramps) {
        if (r.segment >= segments.size())
            throw Error(ErrorKind::AlignmentError, fmt::format("ramp event for missing segment {}", r.segment));
    }
}

} // namespace

FeatureMatrix assemble_features(std::span<const MatchRecord> matches, std::span<const RampSegment> segments,
                                std::span<const RampEvent> ramps, const FeatureTable& table,
                                const FeatureTable& historical, const FeatureOptions& options) {
    options.validate();
    const std::size_t n = table.rows();
    const auto& power = table.column(options.power_column).values();
    const auto nwp = resolve_nwp(table, options);
    const std::size_t h = options.horizon;

    std::span<const double> hist_power, hist_speed;
    std::vector<char> fired(segments.size(), 0);
    if (options.analogue_features) {
        check_segments(matches, segments, ramps, n);
        if (historical.step() != table.step())
            throw Error(ErrorKind::AlignmentError,
                        fmt::format("historical step {}s differs from {}s", historical.step().count(),
                                    table.step().count()));
        hist_power = historical.column(options.historical_power_column).values();
        hist_speed = historical.column(options.historical_speed_column).values();
        for (const auto& r : ramps)
            if (r.fired) fired[r.segment] = 1;
    }

    FeatureMatrix m;
    m.horizon = h;
    if (options.analogue_features) m.names = {kMatchedPower, kMatchedSpeed, kOmega, kRho, kRampFlag};
    for (const auto& name : nwp) m.names.push_back(name);
    for (auto k : options.lags) m.names.push_back(lag_name(k));
    m.columns.resize(m.names.size());

    std::size_t warmup = 0;
    for (auto k : options.lags) warmup = std::max(warmup, k - 1);

    std::vector<std::span<const double>> nwp_values;
    for (const auto& name : nwp) nwp_values.push_back(table.column(name).values());

    std::size_t seg = 0;
    for (std::size_t t = warmup; t + h < n; ++t) {
        std::size_t c = 0;
        if (options.analogue_features) {
            while (seg + 1 < segments.size() && t >= segments[seg].end_idx) ++seg;
            const auto& rec = matches[seg];
            const std::size_t hist_idx = rec.hist_start + (t - segments[seg].start_idx) + h;
            if (hist_idx >= hist_power.size()) continue;
            m.columns[c++].push_back(hist_power[hist_idx]);
            m.columns[c++].push_back(hist_speed[hist_idx]);
            m.columns[c++].push_back(rec.omega);
            m.columns[c++].push_back(segments[seg].rho);
            m.columns[c++].push_back(fired[seg] ? 1.0 : 0.0);
        }
        for (const auto& v : nwp_values) m.columns[c++].push_back(v[t + h]);
        for (auto k : options.lags) m.columns[c++].push_back(power[t - (k - 1)]);
        m.target.push_back(power[t + h]);
        m.origins.push_back(t);
        m.target_times.push_back(table.start_time() + table.step() * static_cast<long>(t + h));
    }
    return m;
}

std::size_t split_index(std::size_t rows, double split) {
    if (!(split >= 0.0 && split < 1.0))
        throw Error(ErrorKind::InvalidArgument, fmt::format("split must be in [0, 1), got {}", split));
    return static_cast<std::size_t>(std::floor(static_cast<double>(rows) * split));
}

namespace {

double clamp_power(double p, double capacity) { return std::clamp(p, 0.0, capacity); }

ForecastReport start_report(const FeatureMatrix& matrix, std::string model_id, std::size_t first_test) {
    if (first_test >= matrix.rows())
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("no test rows (first test row {} of {})", first_test, matrix.rows()));
    ForecastReport r;
    r.model_id = std::move(model_id);
    r.horizon = matrix.horizon;
    r.train_rows = first_test;
    r.feature_names = matrix.names;
    for (std::size_t i = first_test; i < matrix.rows(); ++i) {
        r.rows.push_back(i);
        r.actuals.push_back(matrix.target[i]);
        r.times.push_back(matrix.target_times[i]);
    }
    return r;
}

} // namespace

ForecastReport predict_persistence(const FeatureMatrix& matrix, double capacity, double split) {
    const auto& lag1 = matrix.column(lag_name(1));
    auto r = start_report(matrix, "persistence", split_index(matrix.rows(), split));
    for (auto i : r.rows) r.predictions.push_back(clamp_power(lag1[i], capacity));
    r.metrics = evaluate(r.predictions, r.actuals, capacity);
    return r;
}

ForecastReport fit_predict_linear(const FeatureMatrix& matrix, double ridge_lambda, double split, double capacity) {
    if (!(split > 0.0 && split < 1.0))
        throw Error(ErrorKind::InvalidArgument, fmt::format("split must be in (0, 1), got {}", split));
    if (!(ridge_lambda >= 0.0) || !std::isfinite(ridge_lambda))
        throw Error(ErrorKind::InvalidArgument, "ridge_lambda must be finite and >= 0");
    const std::size_t n_train = split_index(matrix.rows(), split);
    const std::size_t p = matrix.cols();
    if (n_train < std::max<std::size_t>(p, 1))
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("{} training rows for {} features", n_train, p));
    auto r = start_report(matrix, "ridge", n_train);

    // Min-max bounds from the training rows only.
    std::vector<double> lo(p), span(p);
    for (std::size_t j = 0; j < p; ++j) {
        const auto& col = matrix.columns[j];
        const auto [mn, mx] = std::minmax_element(col.begin(), col.begin() + static_cast<std::ptrdiff_t>(n_train));
        lo[j] = *mn;
        span[j] = *mx - *mn;
    }
    const auto feature = [&](std::size_t i, std::size_t j) {
        return span[j] > 0.0 ? (matrix.columns[j][i] - lo[j]) / span[j] : 0.0;
    };

    Eigen::MatrixXd x(static_cast<Eigen::Index>(n_train), static_cast<Eigen::Index>(p));
    Eigen::VectorXd y(static_cast<Eigen::Index>(n_train));
    for (std::size_t i = 0; i < n_train; ++i) {
        for (std::size_t j = 0; j < p; ++j) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = feature(i, j);
        y(static_cast<Eigen::Index>(i)) = matrix.target[i];
    }
    const Eigen::RowVectorXd x_mean = x.colwise().mean();
    const double y_mean = y.mean();
    x.rowwise() -= x_mean;
    y.array() -= y_mean;

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
    if (p > 0) {
        if (ridge_lambda == 0.0) {
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
            if (qr.rank() < static_cast<Eigen::Index>(p))
                throw Error(ErrorKind::SingularSystem,
                            fmt::format("design matrix has rank {} < {} features", qr.rank(), p));
            beta = qr.solve(y);
        } else {
            Eigen::MatrixXd a = x.transpose() * x;
            a.diagonal().array() += ridge_lambda;
            beta = a.ldlt().solve(x.transpose() * y);
        }
    }
    const double intercept = y_mean - x_mean.dot(beta);

    r.coefficients.push_back(intercept);
    for (Eigen::Index j = 0; j < beta.size(); ++j) r.coefficients.push_back(beta(j));
    for (auto i : r.rows) {
        double pred = intercept;
        for (std::size_t j = 0; j < p; ++j) pred += beta(static_cast<Eigen::Index>(j)) * feature(i, j);
        r.predictions.push_back(clamp_power(pred, capacity));
    }
    for (double c : r.coefficients)
        if (!std::isfinite(c)) throw Error(ErrorKind::SingularSystem, "ridge solution is not finite");
    r.metrics = evaluate(r.predictions, r.actuals, capacity);
    return r;
}

double mse_objective(std::span<const double> pred, std::span<const double> actual) {
    if (pred.size() != actual.size())
        throw Error(ErrorKind::LengthMismatch, fmt::format("{} predictions for {} actuals", pred.size(), actual.size()));
    if (pred.empty()) throw Error(ErrorKind::EmptyInput, "mse of empty vectors");
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) sum += (actual[i] - pred[i]) * (actual[i] - pred[i]);
    return sum / static_cast<double>(pred.size());
}

nlohmann::json ForecastReport::to_json() const {
    std::vector<std::string> stamps;
    for (auto t : times) stamps.push_back(format_timestamp(t));
    return {
        {"model_id", model_id},
        {"horizon", horizon},
        {"train_rows", train_rows},
        {"feature_names", feature_names},
        {"coefficients", coefficients},
        {"times", stamps},
        {"predictions", predictions},
        {"actuals", actuals},
        {"metrics", metrics.to_json()},
    };
}

void ForecastReport::write_csv(std::ostream& out) const {
    out << "timestamp,actual,predicted\n";
    for (std::size_t i = 0; i < predictions.size(); ++i)
        out << format_timestamp(times[i]) << ',' << format_number(actuals[i]) << ',' << format_number(predictions[i])
            << '\n';
}

} // namespace rampkit
