#pragma once

#include "rampkit/series.hpp"

namespace rampkit {

/// Turbine operating envelope. Defaults are the 5 MW class machine used for
/// the single-turbine studies: cut-in 3.5 m/s, rated 10.5 m/s, cut-out 25 m/s.
struct PowerCurveSpec {
    double cut_in = 3.5;       // m/s
    double rated_speed = 10.5; // m/s
    double cut_out = 25.0;     // m/s
    double rated_power = 5.0;  // MW

    // Throws InvalidArgument unless 0 < cut_in < rated_speed < cut_out and rated_power > 0.
    void validate() const;
};

// Zero outside [cut_in, cut_out); cubic in v between cut-in and rated speed;
// rated power on [rated_speed, cut_out).
double power_curve(double speed, const PowerCurveSpec& spec = {});

WindSeries power_curve(const WindSeries& speed, const PowerCurveSpec& spec = {});

} // namespace rampkit
