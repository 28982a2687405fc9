#include "fft.hpp"

#include "rampkit/error.hpp"

#include <algorithm>
#include <mutex>

#include <fftw3.h>

namespace rampkit::detail {

namespace {

// The FFTW planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class Plan {
public:
    explicit Plan(fftw_plan p) : plan_(p) {
        if (!plan_) throw Error(ErrorKind::InvalidArgument, "FFTW failed to create a plan");
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

} // namespace

std::vector<std::complex<double>> rfft(std::span<const double> x) {
    const auto n = x.size();
    std::vector<double> in(x.begin(), x.end());
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_plan raw;
    {
        std::lock_guard lock(planner_mutex());
        raw = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                   reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    Plan plan(raw);
    plan.execute();
    return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> bins, std::size_t n) {
    std::vector<std::complex<double>> in(n / 2 + 1);
    std::copy_n(bins.begin(), std::min(bins.size(), in.size()), in.begin());
    std::vector<double> out(n);
    fftw_plan raw;
    {
        std::lock_guard lock(planner_mutex());
        raw = fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                   out.data(), FFTW_ESTIMATE);
    }
    Plan plan(raw);
    plan.execute();
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= scale;
    return out;
}

} // namespace rampkit::detail
