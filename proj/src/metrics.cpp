#include "rampkit/metrics.hpp"

#include "rampkit/error.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace rampkit {

namespace {

void require_pair(std::span<const double> pred, std::span<const double> meas) {
    if (pred.size() != meas.size())
        throw Error(ErrorKind::LengthMismatch,
                    fmt::format("{} predictions for {} measurements", pred.size(), meas.size()));
    if (pred.empty()) throw Error(ErrorKind::EmptyInput, "no points to evaluate");
}

void require_capacity(double capacity) {
    if (!(capacity > 0.0) || !std::isfinite(capacity))
        throw Error(ErrorKind::InvalidArgument, fmt::format("capacity must be positive, got {}", capacity));
}

} // namespace

double rmse(std::span<const double> pred, std::span<const double> meas) {
    require_pair(pred, meas);
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) sum += (meas[i] - pred[i]) * (meas[i] - pred[i]);
    return std::sqrt(sum / static_cast<double>(pred.size()));
}

double mae(std::span<const double> pred, std::span<const double> meas) {
    require_pair(pred, meas);
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) sum += std::abs(meas[i] - pred[i]);
    return sum / static_cast<double>(pred.size());
}

double accuracy_ac(std::span<const double> pred, std::span<const double> meas, double epsilon) {
    require_pair(pred, meas);
    if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double rel = (meas[i] - pred[i]) / std::max(std::abs(pred[i]), epsilon);
        sum += rel * rel;
    }
    return (1.0 - std::sqrt(sum / static_cast<double>(pred.size()))) * 100.0;
}

std::vector<bool> qualification_flags(std::span<const double> pred, std::span<const double> meas, double capacity) {
    require_capacity(capacity);
    const std::vector<double> caps(pred.size(), capacity);
    return qualification_flags(pred, meas, caps);
}

std::vector<bool> qualification_flags(std::span<const double> pred, std::span<const double> meas,
                                      std::span<const double> capacity) {
    if (pred.size() != meas.size() || capacity.size() != pred.size())
        throw Error(ErrorKind::LengthMismatch, "prediction, measurement and capacity lengths differ");
    std::vector<bool> flags(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
        require_capacity(capacity[i]);
        flags[i] = 1.0 - std::abs(meas[i] - pred[i]) / capacity[i] >= kQualifiedThreshold;
    }
    return flags;
}

double pr_power(const std::vector<bool>& flags) {
    if (flags.empty()) throw Error(ErrorKind::EmptyInput, "no qualification flags");
    const auto hits = std::count(flags.begin(), flags.end(), true);
    return static_cast<double>(hits) / static_cast<double>(flags.size()) * 100.0;
}

double pearson(std::span<const double> a, std::span<const double> b) {
    require_pair(a, b);
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa <= 0.0 || sbb <= 0.0) return 0.0;
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

EvalExtras extras(std::span<const double> pred, std::span<const double> meas, double capacity) {
    require_capacity(capacity);
    EvalExtras out;
    out.cc = pearson(pred, meas);
    out.r_rmse = rmse(pred, meas) / capacity * 100.0;
    out.r_mae = mae(pred, meas) / capacity * 100.0;
    return out;
}

EvalReport evaluate(std::span<const double> pred, std::span<const double> meas, double capacity,
                    std::optional<double> epsilon) {
    require_pair(pred, meas);
    require_capacity(capacity);
    EvalReport r;
    r.n = pred.size();
    r.capacity = capacity;
    r.rmse = rmse(pred, meas);
    r.mae = mae(pred, meas);
    r.ac = accuracy_ac(pred, meas, epsilon.value_or(0.01 * capacity));
    r.qualified_flags = qualification_flags(pred, meas, capacity);
    r.pr_power = pr_power(r.qualified_flags);
    r.extras = extras(pred, meas, capacity);
    return r;
}

nlohmann::json EvalReport::to_json() const {
    nlohmann::json flags = nlohmann::json::array();
    for (bool f : qualified_flags) flags.push_back(f ? 1 : 0);
    return {
        {"rmse", rmse},
        {"mae", mae},
        {"ac", ac},
        {"pr_power", pr_power},
        {"n", n},
        {"capacity", capacity},
        {"extras", {{"cc", extras.cc}, {"r_rmse", extras.r_rmse}, {"r_mae", extras.r_mae}}},
        {"qualified_flags", flags},
    };
}

} // namespace rampkit
