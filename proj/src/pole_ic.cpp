#include "rampkit/pole_ic.hpp"

#include "rampkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace rampkit {

std::string_view to_string(PoleKind kind) noexcept {
    return kind == PoleKind::Max ? "max" : "min";
}

std::vector<std::size_t> ExtremaSet::indices() const {
    std::vector<std::size_t> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.index);
    return out;
}

void SelectionParams::validate() const {
    if (!(ell > 0.0 && ell < 1.0))
        throw Error(ErrorKind::InvalidArgument, fmt::format("ell must be in (0, 1), got {}", ell));
    if (!(tau_rate > 0.0))
        throw Error(ErrorKind::InvalidArgument, fmt::format("tau_rate must be positive, got {}", tau_rate));
}

ExtremaSet find_extrema(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 3) throw Error(ErrorKind::TooShort, fmt::format("extrema need at least 3 samples, got {}", n));
    ExtremaSet out;
    out.source_len = n;
    std::size_t i = 1;
    while (i + 1 < n) {
        // Extend over a flat run [i, j].
        std::size_t j = i;
        while (j + 1 < n && x[j + 1] == x[i]) ++j;
        if (j + 1 >= n) break; // run touches the right boundary
        const double left = x[i - 1];
        const double right = x[j + 1];
        const double v = x[i];
        if (v > left && v > right)
            out.points.push_back({(i + j) / 2, v, PoleKind::Max});
        else if (v < left && v < right)
            out.points.push_back({(i + j) / 2, v, PoleKind::Min});
        i = j + 1;
    }
    return out;
}

ExtremaSet find_extrema(const WindSeries& series) { return find_extrema(series.values()); }

double dynamic_window(std::span<const double> values, double ell) {
    if (values.empty()) throw Error(ErrorKind::EmptyInput, "dynamic window of an empty series");
    if (!(ell > 0.0 && ell < 1.0))
        throw Error(ErrorKind::InvalidArgument, fmt::format("ell must be in (0, 1), got {}", ell));
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return ell * std::abs(*hi - *lo);
}

ExtremaSet select_poles(const ExtremaSet& extrema, double width) {
    if (!(width >= 0.0)) throw Error(ErrorKind::InvalidArgument, "window width must be non-negative");
    ExtremaSet out;
    out.source_len = extrema.source_len;
    for (const auto& p : extrema.points) {
        if (out.points.empty() || std::abs(p.value - out.points.back().value) > width)
            out.points.push_back(p);
    }
    return out;
}

ExtremaSet selected_poles(std::span<const double> values, double ell) {
    return select_poles(find_extrema(values), dynamic_window(values, ell));
}

double pole_rate(std::size_t selected_count, std::size_t n_original) {
    if (n_original == 0) throw Error(ErrorKind::ZeroBaseline, "pole rate with zero baseline poles");
    return static_cast<double>(selected_count) / static_cast<double>(n_original);
}

std::vector<double> pole_rates(std::span<const std::size_t> counts, std::size_t n_original) {
    std::vector<double> rates;
    rates.reserve(counts.size());
    for (std::size_t c : counts) {
        if (n_original > 0)
            rates.push_back(pole_rate(c, n_original));
        else
            rates.push_back(c == 0 ? 0.0 : std::numeric_limits<double>::infinity());
    }
    return rates;
}

ScreeningResult screen_modes(const ModeSet& modes, const SelectionParams& params) {
    params.validate();
    if (modes.count() == 0) throw Error(ErrorKind::EmptyInput, "no modes to screen");

    ScreeningResult out;
    const auto full = reconstruct(modes, all_modes(modes));
    out.n_original = selected_poles(full, params.ell).size();
    for (const auto& m : modes.modes) out.pole_counts.push_back(selected_poles(m, params.ell).size());
    out.rates = pole_rates(out.pole_counts, out.n_original);
    for (std::size_t k = 0; k < modes.count(); ++k)
        if (out.rates[k] <= params.tau_rate) out.kept.push_back(k);
    if (out.kept.empty())
        throw Error(ErrorKind::AllModesRejected,
                    fmt::format("no mode has pole rate <= {} (N_original = {})", params.tau_rate, out.n_original));
    out.recon = reconstruct(modes, out.kept);
    return out;
}

VmdIcResult vmd_ic(const WindSeries& series, const VmdParams& vmd, const SelectionParams& selection) {
    selection.validate();
    auto modes = vmd_decompose(series, vmd);
    const auto [lo, hi] = std::minmax_element(series.values().begin(), series.values().end());
    if (*lo == *hi) {
        // Round-off ripple in the modes of a flat input would otherwise show
        // up as spurious poles.
        ScreeningResult screening;
        screening.kept = all_modes(modes);
        screening.rates.assign(modes.count(), 0.0);
        screening.pole_counts.assign(modes.count(), 0);
        screening.recon = series.vector();
        ExtremaSet none;
        none.source_len = series.size();
        return {series.with_values(series.vector(), SeriesKind::Derived, "recon"), std::move(none),
                std::move(modes), std::move(screening)};
    }
    auto screening = screen_modes(modes, selection);
    auto recon = series.with_values(screening.recon, SeriesKind::Derived, "recon");
    auto extrema = selected_poles(recon.values(), selection.ell);
    return {std::move(recon), std::move(extrema), std::move(modes), std::move(screening)};
}

} // namespace rampkit
