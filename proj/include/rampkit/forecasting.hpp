#pragma once

#include "rampkit/matching.hpp"
#include "rampkit/metrics.hpp"
#include "rampkit/ramp.hpp"
#include "rampkit/series.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace rampkit {

struct RankedFeature {
    std::string name;
    double correlation = 0.0;
};

// Pearson correlation of every non-target column against `target`, sorted by
// descending coefficient (stable on ties). Zero-variance columns score 0.
// Throws MissingColumn, TooShort (< 2 rows).
std::vector<RankedFeature> rank_nwp_features(const FeatureTable& table, std::string_view target);

inline constexpr std::size_t kDefaultNwpFeatures = 2;

// Feature column names.
inline constexpr const char* kMatchedPower = "matched_power";
inline constexpr const char* kMatchedSpeed = "matched_speed";
inline constexpr const char* kOmega = "omega";
inline constexpr const char* kRho = "rho";
inline constexpr const char* kRampFlag = "ramp_flag";

struct FeatureOptions {
    std::size_t horizon = 1;
    std::vector<std::size_t> lags{1, 2, 3, 4}; // lag k is power at t - k + 1
    // NWP columns taken at t + horizon. Empty: top kDefaultNwpFeatures nwp_*
    // columns by correlation with the power column.
    std::vector<std::string> nwp_columns;
    // Matched power/speed, omega, rho and the ramp flag. Off gives the plain
    // NWP + lag model.
    bool analogue_features = true;
    std::string power_column = "power_mw";
    std::string historical_power_column = "power_mw";
    std::string historical_speed_column = "wind_speed_mps";

    void validate() const;
};

/// Row r is the forecast issued at origin t = origins[r] for time t + horizon.
struct FeatureMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns; // raw values, one per name
    std::vector<double> target;
    std::vector<std::size_t> origins;
    std::vector<Timestamp> target_times;
    std::size_t horizon = 1;

    std::size_t rows() const noexcept { return target.size(); }
    std::size_t cols() const noexcept { return names.size(); }
    // Throws MissingColumn.
    const std::vector<double>& column(std::string_view name) const;
    bool has_column(std::string_view name) const noexcept;

    friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;
};

// Builds one row per origin t with every feature available:
//  - matched_power / matched_speed: historical value at
//    hist_start + (t - segment.start) + horizon for t's enclosing segment
//  - omega, rho, ramp_flag of that segment
//  - NWP columns at t + horizon
//  - power lags
// Rows with a missing feature (lag warm-up, target past the end, matched
// index past the historical series) are dropped. `segments`, `ramps` and
// `matches` index the same segment list. The enclosing segment of t is the one
// with start <= t < end; the last segment also owns its end sample.
// Throws AlignmentError, MissingColumn, InvalidArgument.
FeatureMatrix assemble_features(std::span<const MatchRecord> matches, std::span<const RampSegment> segments,
                                std::span<const RampEvent> ramps, const FeatureTable& table,
                                const FeatureTable& historical, const FeatureOptions& options);

// First test row for a chronological split fraction in (0, 1).
std::size_t split_index(std::size_t rows, double split);

struct ForecastReport {
    std::string model_id;
    std::size_t horizon = 1;
    std::vector<double> predictions;
    std::vector<double> actuals;
    std::vector<Timestamp> times;
    std::vector<std::size_t> rows; // feature-matrix row of each prediction
    std::size_t train_rows = 0;
    std::vector<std::string> feature_names;
    std::vector<double> coefficients; // on normalized features; intercept first
    EvalReport metrics;

    nlohmann::json to_json() const;
    // timestamp, actual, predicted
    void write_csv(std::ostream& out) const;
};

// Prediction for t + horizon is the lag-1 power at t, clamped to
// [0, capacity]. Evaluated on rows from split_index(rows, split); split 0
// scores every row. Throws MissingColumn if the lag-1 column is absent.
ForecastReport predict_persistence(const FeatureMatrix& matrix, double capacity, double split = 0.0);

// Ridge regression on min-max normalized features (bounds from the training
// rows), unpenalized intercept, fit on the first `split` fraction and
// evaluated on the rest. Predictions clamped to [0, capacity].
// Throws InvalidArgument (split, too few training rows), SingularSystem.
ForecastReport fit_predict_linear(const FeatureMatrix& matrix, double ridge_lambda, double split, double capacity);

// (1/L) sum (pred - actual)^2. Throws LengthMismatch, EmptyInput.
double mse_objective(std::span<const double> pred, std::span<const double> actual);

// Name of the lag-k power column.
std::string lag_name(std::size_t k);

} // namespace rampkit
