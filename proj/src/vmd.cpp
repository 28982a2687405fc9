#include "rampkit/vmd.hpp"

#include "fft.hpp"
#include "rampkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include <fmt/format.h>

namespace rampkit {

using cplx = std::complex<double>;

void VmdParams::validate() const {
    if (modes < 1) throw Error(ErrorKind::InvalidArgument, "VMD needs K >= 1");
    if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "VMD alpha must be positive");
    if (!(tau_dual >= 0.0)) throw Error(ErrorKind::InvalidArgument, "VMD tau_dual must be non-negative");
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "VMD tol must be positive");
    if (max_iter < 1) throw Error(ErrorKind::InvalidArgument, "VMD max_iter must be >= 1");
}

namespace {

// Half-length mirror on each side: [rev(x[0:h]), x, rev(x[h:n])], length 2n.
std::vector<double> mirror_extend(std::span<const double> x) {
    const std::size_t n = x.size();
    const std::size_t half = n / 2;
    std::vector<double> out;
    out.reserve(2 * n);
    for (std::size_t i = half; i-- > 0;) out.push_back(x[i]);
    out.insert(out.end(), x.begin(), x.end());
    for (std::size_t i = n; i-- > half;) out.push_back(x[i]);
    return out;
}

double energy(std::span<const cplx> v) {
    double e = 0.0;
    for (const auto& c : v) e += std::norm(c);
    return e;
}

} // namespace

ModeSet vmd_decompose(std::span<const double> signal, const VmdParams& params) {
    params.validate();
    const std::size_t n = signal.size();
    const std::size_t k_modes = params.modes;
    if (n < 4 * k_modes)
        throw Error(ErrorKind::TooShort,
                    fmt::format("VMD with K={} needs at least {} samples, got {}", k_modes, 4 * k_modes, n));

    const auto extended = mirror_extend(signal);
    const std::size_t t_len = extended.size();
    // Analytic half-spectrum: bins 0 .. T/2-1 at j/T cycles per sample. The
    // Nyquist bin and negative frequencies stay zero throughout.
    const std::size_t bins = t_len / 2;
    auto spectrum = detail::rfft(extended);
    spectrum.resize(bins);

    std::vector<double> freqs(bins);
    for (std::size_t j = 0; j < bins; ++j) freqs[j] = static_cast<double>(j) / static_cast<double>(t_len);

    std::vector<std::vector<cplx>> u(k_modes, std::vector<cplx>(bins, cplx{}));
    std::vector<double> omega(k_modes);
    for (std::size_t k = 0; k < k_modes; ++k) omega[k] = 0.5 / static_cast<double>(k_modes) * static_cast<double>(k);
    std::vector<cplx> lambda(bins, cplx{});
    std::vector<cplx> total(bins, cplx{});
    std::vector<cplx> previous(bins);

    std::size_t iter = 0;
    while (iter < params.max_iter) {
        ++iter;
        double diff = 0.0;
        double base = 0.0;
        for (std::size_t k = 0; k < k_modes; ++k) {
            auto& uk = u[k];
            previous = uk;
            base += energy(previous);
            double weighted = 0.0;
            double power = 0.0;
            for (std::size_t j = 0; j < bins; ++j) {
                const cplx others = total[j] - uk[j];
                const double detune = freqs[j] - omega[k];
                uk[j] = (spectrum[j] - others - lambda[j] * 0.5) / (1.0 + params.alpha * detune * detune);
                total[j] = others + uk[j];
                const double p = std::norm(uk[j]);
                weighted += freqs[j] * p;
                power += p;
                diff += std::norm(uk[j] - previous[j]);
            }
            if (power > 0.0) omega[k] = weighted / power;
        }
        if (params.tau_dual > 0.0)
            for (std::size_t j = 0; j < bins; ++j) lambda[j] += params.tau_dual * (total[j] - spectrum[j]);

        // Aggregate relative update ||u^{n+1} - u^n||^2 / ||u^n||^2.
        if (base > 0.0 ? diff / base < params.tol : diff == 0.0) break;
    }

    std::vector<std::size_t> order(k_modes);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return omega[a] < omega[b]; });

    const std::size_t offset = n / 2;
    ModeSet out;
    out.iterations = iter;
    std::vector<double> sum(n, 0.0);
    for (std::size_t k : order) {
        const auto full = detail::irfft(u[k], t_len);
        std::vector<double> mode(full.begin() + static_cast<std::ptrdiff_t>(offset),
                                 full.begin() + static_cast<std::ptrdiff_t>(offset + n));
        for (std::size_t i = 0; i < n; ++i) sum[i] += mode[i];
        out.modes.push_back(std::move(mode));
        out.center_freqs.push_back(std::clamp(omega[k], 0.0, 0.5));
    }

    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        err += (signal[i] - sum[i]) * (signal[i] - sum[i]);
        ref += signal[i] * signal[i];
    }
    out.residual_norm = ref > 0.0 ? std::sqrt(err / ref) : std::sqrt(err);
    return out;
}

ModeSet vmd_decompose(const WindSeries& series, const VmdParams& params) {
    return vmd_decompose(series.values(), params);
}

std::vector<double> reconstruct(const ModeSet& modes, std::span<const std::size_t> keep) {
    if (keep.empty()) throw Error(ErrorKind::EmptySelection, "no modes selected for reconstruction");
    std::vector<double> out(modes.length(), 0.0);
    for (std::size_t k : keep) {
        if (k >= modes.count())
            throw Error(ErrorKind::OutOfRange, fmt::format("mode index {} out of range (K={})", k, modes.count()));
        const auto& m = modes.modes[k];
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += m[i];
    }
    return out;
}

WindSeries reconstruct(const ModeSet& modes, std::span<const std::size_t> keep, const WindSeries& clock) {
    if (clock.size() != modes.length())
        throw Error(ErrorKind::LengthMismatch, "mode length differs from the clock series");
    return clock.with_values(reconstruct(modes, keep), SeriesKind::Derived, "recon");
}

std::vector<std::size_t> all_modes(const ModeSet& modes) {
    std::vector<std::size_t> idx(modes.count());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

} // namespace rampkit
