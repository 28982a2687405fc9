#include "rampkit/power_curve.hpp"

#include "rampkit/csv.hpp"
#include "rampkit/error.hpp"

#include <cmath>

#include <fmt/format.h>

namespace rampkit {

void PowerCurveSpec::validate() const {
    if (!(cut_in > 0.0 && cut_in < rated_speed && rated_speed < cut_out && rated_power > 0.0))
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("invalid power curve (cut_in={}, rated={}, cut_out={}, power={})",
                                cut_in, rated_speed, cut_out, rated_power));
}

double power_curve(double speed, const PowerCurveSpec& spec) {
    if (!(speed >= 0.0)) throw Error(ErrorKind::InvalidArgument, "wind speed must be non-negative");
    if (speed < spec.cut_in || speed >= spec.cut_out) return 0.0;
    if (speed >= spec.rated_speed) return spec.rated_power;
    const double v3 = speed * speed * speed;
    const double in3 = spec.cut_in * spec.cut_in * spec.cut_in;
    const double rated3 = spec.rated_speed * spec.rated_speed * spec.rated_speed;
    return spec.rated_power * (v3 - in3) / (rated3 - in3);
}

WindSeries power_curve(const WindSeries& speed, const PowerCurveSpec& spec) {
    spec.validate();
    std::vector<double> out;
    out.reserve(speed.size());
    for (double v : speed.values()) out.push_back(power_curve(v, spec));
    return speed.with_values(std::move(out), SeriesKind::Power, std::string(kPowerColumn));
}

} // namespace rampkit
