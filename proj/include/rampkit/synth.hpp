#pragma once

#include "rampkit/power_curve.hpp"
#include "rampkit/series.hpp"

#include <cstdint>
#include <vector>

#include <json.hpp>

namespace rampkit {

struct RampInjection {
    std::size_t start = 0;
    std::size_t duration = 1; // steps
    double magnitude = 0.0;   // m/s, > 0
    Direction direction = Direction::Up;
};

/// Synthetic farm scenario: an Ornstein-Uhlenbeck speed process around
/// base_mean with piecewise-linear ramp offsets added on top. Each injected
/// offset climbs linearly over `duration` steps and is then held.
struct ScenarioConfig {
    std::size_t length = 2880;
    Seconds step = kDefaultStep;
    Timestamp start_time = Timestamp{std::chrono::sys_days{std::chrono::year{2024} / 1 / 1}};
    double base_mean = 7.0;   // m/s
    double reversion = 0.05;  // per-step pull toward base_mean, in (0, 1]
    double noise_sigma = 0.3; // per-step innovation std of the base process
    double nwp_sigma = 0.6;   // additive error of the synthetic NWP speed
    std::vector<RampInjection> events;
    PowerCurveSpec turbine;

    // Throws InvalidConfig.
    void validate() const;

    // Keys: length, step_s, base_mean, reversion, noise_sigma, nwp_sigma,
    // start_time, events[{start, duration, magnitude, direction}], turbine{...}.
    static ScenarioConfig from_json(const nlohmann::json& doc);
    nlohmann::json to_json() const;
};

struct RampAnnotation {
    std::size_t start_idx = 0;
    std::size_t end_idx = 0; // inclusive: start_idx + duration
    double magnitude = 0.0;
    Direction direction = Direction::Up;
};

struct Scenario {
    // Columns: wind_speed_mps, power_mw, nwp_speed_70m, nwp_temperature_70m.
    FeatureTable table;
    std::vector<RampAnnotation> annotations;
};

inline constexpr const char* kNwpSpeedColumn = "nwp_speed_70m";
inline constexpr const char* kNwpTemperatureColumn = "nwp_temperature_70m";

Scenario synth_scenario(const ScenarioConfig& config, std::uint64_t seed);

nlohmann::json annotations_to_json(const std::vector<RampAnnotation>& annotations);
std::vector<RampAnnotation> annotations_from_json(const nlohmann::json& doc);

} // namespace rampkit
