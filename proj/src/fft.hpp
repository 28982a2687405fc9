#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rampkit::detail {

// Real-input DFT: returns bins 0..n/2 (unnormalized, e^{-2 pi i jk/n}).
std::vector<std::complex<double>> rfft(std::span<const double> x);

// Inverse of rfft for a length-n real signal, normalized by 1/n.
std::vector<double> irfft(std::span<const std::complex<double>> bins, std::size_t n);

} // namespace rampkit::detail
