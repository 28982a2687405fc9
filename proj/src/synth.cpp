#include "rampkit/synth.hpp"

#include "rampkit/csv.hpp"
#include "rampkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

namespace rampkit {

void ScenarioConfig::validate() const {
    const auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidConfig, msg); };
    if (length == 0) fail("length must be positive");
    if (step.count() <= 0) fail("step_s must be positive");
    if (!(base_mean >= 0.0) || !std::isfinite(base_mean)) fail("base_mean must be a non-negative number");
    if (!(reversion > 0.0 && reversion <= 1.0)) fail("reversion must be in (0, 1]");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) fail("noise_sigma must be non-negative");
    if (!(nwp_sigma >= 0.0) || !std::isfinite(nwp_sigma)) fail("nwp_sigma must be non-negative");
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        if (e.duration == 0) fail(fmt::format("event {}: duration must be positive", i));
        if (!(e.magnitude > 0.0) || !std::isfinite(e.magnitude))
            fail(fmt::format("event {}: magnitude must be positive", i));
        if (e.direction == Direction::Flat) fail(fmt::format("event {}: direction must be up or down", i));
        if (e.start + e.duration >= length)
            fail(fmt::format("event {}: [{}, {}] exceeds length {}", i, e.start, e.start + e.duration, length));
    }
    try {
        turbine.validate();
    } catch (const Error& e) {
        fail(e.what());
    }
}

namespace {

// nlohmann's get<> accepts any signed integer for size_t; reject negatives up front.
std::size_t get_count(const nlohmann::json& doc, const char* key, std::size_t fallback) {
    if (!doc.contains(key)) return fallback;
    const auto& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw Error(ErrorKind::InvalidConfig, fmt::format("'{}' must be a non-negative integer", key));
    return v.get<std::size_t>();
}

double get_real(const nlohmann::json& doc, const char* key, double fallback) {
    if (!doc.contains(key)) return fallback;
    const auto& v = doc.at(key);
    if (!v.is_number()) throw Error(ErrorKind::InvalidConfig, fmt::format("'{}' must be a number", key));
    return v.get<double>();
}

} // namespace

ScenarioConfig ScenarioConfig::from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw Error(ErrorKind::InvalidConfig, "scenario config must be a JSON object");
    ScenarioConfig cfg;
    try {
        if (doc.contains("length")) {
            const auto& v = doc.at("length");
            if (!v.is_number_integer() || v.get<long long>() <= 0)
                throw Error(ErrorKind::InvalidConfig, "'length' must be a positive integer");
            cfg.length = v.get<std::size_t>();
        }
        if (doc.contains("step_s")) {
            const auto& v = doc.at("step_s");
            if (!v.is_number_integer() || v.get<long long>() <= 0)
                throw Error(ErrorKind::InvalidConfig, "'step_s' must be a positive integer");
            cfg.step = Seconds{v.get<long long>()};
        }
        if (doc.contains("start_time")) cfg.start_time = parse_timestamp(doc.at("start_time").get<std::string>());
        cfg.base_mean = get_real(doc, "base_mean", cfg.base_mean);
        cfg.reversion = get_real(doc, "reversion", cfg.reversion);
        cfg.noise_sigma = get_real(doc, "noise_sigma", cfg.noise_sigma);
        cfg.nwp_sigma = get_real(doc, "nwp_sigma", cfg.nwp_sigma);
        if (doc.contains("events")) {
            for (const auto& e : doc.at("events")) {
                RampInjection r;
                r.start = get_count(e, "start", 0);
                r.duration = get_count(e, "duration", 0);
                r.magnitude = get_real(e, "magnitude", 0.0);
                r.direction = parse_direction(e.value("direction", std::string("up")));
                cfg.events.push_back(r);
            }
        }
        if (doc.contains("turbine")) {
            const auto& t = doc.at("turbine");
            cfg.turbine.cut_in = get_real(t, "cut_in", cfg.turbine.cut_in);
            cfg.turbine.rated_speed = get_real(t, "rated_speed", cfg.turbine.rated_speed);
            cfg.turbine.cut_out = get_real(t, "cut_out", cfg.turbine.cut_out);
            cfg.turbine.rated_power = get_real(t, "rated_power", cfg.turbine.rated_power);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidConfig, e.what());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidConfig) throw;
        throw Error(ErrorKind::InvalidConfig, e.what());
    }
    cfg.validate();
    return cfg;
}

nlohmann::json ScenarioConfig::to_json() const {
    nlohmann::json events_json = nlohmann::json::array();
    for (const auto& e : events)
        events_json.push_back({{"start", e.start},
                               {"duration", e.duration},
                               {"magnitude", e.magnitude},
                               {"direction", std::string(to_string(e.direction))}});
    return {{"length", length},
            {"step_s", step.count()},
            {"start_time", format_timestamp(start_time)},
            {"base_mean", base_mean},
            {"reversion", reversion},
            {"noise_sigma", noise_sigma},
            {"nwp_sigma", nwp_sigma},
            {"events", events_json},
            {"turbine",
             {{"cut_in", turbine.cut_in},
              {"rated_speed", turbine.rated_speed},
              {"cut_out", turbine.cut_out},
              {"rated_power", turbine.rated_power}}}};
}

Scenario synth_scenario(const ScenarioConfig& config, std::uint64_t seed) {
    config.validate();
    const std::size_t n = config.length;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> base(n);
    double x = config.base_mean;
    for (std::size_t i = 0; i < n; ++i) {
        base[i] = x;
        x += config.reversion * (config.base_mean - x) + config.noise_sigma * gauss(rng);
    }

    std::vector<double> offset(n, 0.0);
    std::vector<RampAnnotation> annotations;
    for (const auto& e : config.events) {
        const double sign = e.direction == Direction::Up ? 1.0 : -1.0;
        for (std::size_t i = e.start; i < n; ++i) {
            const double progress =
                std::min(1.0, static_cast<double>(i - e.start) / static_cast<double>(e.duration));
            offset[i] += sign * e.magnitude * progress;
        }
        annotations.push_back({e.start, e.start + e.duration, e.magnitude, e.direction});
    }

    std::vector<double> speed(n);
    for (std::size_t i = 0; i < n; ++i) speed[i] = std::max(0.0, base[i] + offset[i]);

    // NWP draws come after the base process so the speed column does not
    // depend on nwp_sigma.
    std::vector<double> nwp_speed(n), nwp_temp(n);
    const double day_steps = 86400.0 / static_cast<double>(config.step.count());
    for (std::size_t i = 0; i < n; ++i) {
        nwp_speed[i] = std::max(0.0, speed[i] + config.nwp_sigma * gauss(rng));
        const double diurnal = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / day_steps);
        nwp_temp[i] = 15.0 + 6.0 * diurnal - 0.3 * (speed[i] - config.base_mean) +
                      0.5 * config.nwp_sigma * gauss(rng);
    }

    Scenario out;
    const WindSeries speed_series(std::move(speed), config.start_time, config.step, SeriesKind::Speed,
                                  std::string(kSpeedColumn));
    out.table.add_column(speed_series);
    out.table.add_column(power_curve(speed_series, config.turbine));
    out.table.add_column(speed_series.with_values(std::move(nwp_speed), SeriesKind::NwpFeature, kNwpSpeedColumn));
    out.table.add_column(speed_series.with_values(std::move(nwp_temp), SeriesKind::NwpFeature, kNwpTemperatureColumn));
    out.table.set_target(std::string(kPowerColumn));
    std::sort(annotations.begin(), annotations.end(),
              [](const RampAnnotation& a, const RampAnnotation& b) { return a.start_idx < b.start_idx; });
    out.annotations = std::move(annotations);
    return out;
}

nlohmann::json annotations_to_json(const std::vector<RampAnnotation>& annotations) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& a : annotations)
        out.push_back({{"start_idx", a.start_idx},
                       {"end_idx", a.end_idx},
                       {"magnitude", a.magnitude},
                       {"direction", std::string(to_string(a.direction))}});
    return out;
}

std::vector<RampAnnotation> annotations_from_json(const nlohmann::json& doc) {
    std::vector<RampAnnotation> out;
    try {
        for (const auto& a : doc)
            out.push_back({a.at("start_idx").get<std::size_t>(), a.at("end_idx").get<std::size_t>(),
                           a.at("magnitude").get<double>(),
                           parse_direction(a.at("direction").get<std::string>())});
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    return out;
}

} // namespace rampkit
