#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

namespace rampkit {

// Point-error metrics between predicted (pred) and measured (meas) power.
// All throw LengthMismatch on unequal lengths and EmptyInput on empty input.
double rmse(std::span<const double> pred, std::span<const double> meas);
double mae(std::span<const double> pred, std::span<const double> meas);

// (1 - sqrt(mean(((pred - meas) / max(|pred|, epsilon))^2))) * 100. The
// denominator is the predicted value; epsilon guards zero output. Not clamped.
double accuracy_ac(std::span<const double> pred, std::span<const double> meas, double epsilon);

inline constexpr double kQualifiedThreshold = 0.75;

// B_i = (1 - |pred_i - meas_i| / C_i) >= 0.75. Throws InvalidArgument unless
// capacity > 0.
std::vector<bool> qualification_flags(std::span<const double> pred, std::span<const double> meas, double capacity);
// Per-point capacity variant.
std::vector<bool> qualification_flags(std::span<const double> pred, std::span<const double> meas,
                                      std::span<const double> capacity);

// Percentage of qualified points. Throws EmptyInput.
double pr_power(const std::vector<bool>& flags);

// Pearson correlation; 0 when either side has zero variance.
double pearson(std::span<const double> a, std::span<const double> b);

struct EvalExtras {
    double cc = 0.0;
    double r_rmse = 0.0; // rmse / capacity * 100
    double r_mae = 0.0;
};

EvalExtras extras(std::span<const double> pred, std::span<const double> meas, double capacity);

struct EvalReport {
    double rmse = 0.0;
    double mae = 0.0;
    double ac = 0.0;
    double pr_power = 0.0;
    std::vector<bool> qualified_flags;
    std::size_t n = 0;
    double capacity = 0.0;
    EvalExtras extras;

    nlohmann::json to_json() const;
};

// epsilon defaults to 0.01 * capacity.
EvalReport evaluate(std::span<const double> pred, std::span<const double> meas, double capacity,
                    std::optional<double> epsilon = std::nullopt);

} // namespace rampkit
