#include "helpers.hpp"
#include "oracles.hpp"

#include "rampkit/pole_ic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

using namespace rampkit;

namespace {

const Timestamp t0 = parse_timestamp("2024-01-01T00:00:00Z");

ExtremaSet make_set(const std::vector<double>& values) {
    ExtremaSet s;
    s.source_len = values.size() + 2;
    for (std::size_t i = 0; i < values.size(); ++i)
        s.points.push_back({i + 1, values[i], i % 2 == 0 ? PoleKind::Max : PoleKind::Min});
    return s;
}

std::vector<double> values_of(const ExtremaSet& s) {
    std::vector<double> v;
    for (const auto& p : s.points) v.push_back(p.value);
    return v;
}

std::vector<double> slow_wave(std::size_t n, double f, double amp, double offset) {
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t)
        x[t] = offset + amp * std::sin(2.0 * std::numbers::pi * f * static_cast<double>(t));
    return x;
}

} // namespace

TEST_CASE("find_extrema examples") {
    const std::vector<double> peak{0, 1, 0};
    const auto e = find_extrema(peak);
    REQUIRE(e.size() == 1);
    CHECK(e.points[0].index == 1);
    CHECK(e.points[0].kind == PoleKind::Max);
    CHECK(e.source_len == 3);

    const std::vector<double> mono{1, 2, 3, 4, 5};
    CHECK(find_extrema(mono).empty());

    const std::vector<double> plateau{0, 2, 2, 2, 0, 1, 1, 3};
    const auto p = find_extrema(plateau);
    REQUIRE(p.size() == 2);
    CHECK(p.points[0].index == 2);
    CHECK(p.points[0].kind == PoleKind::Max);
    CHECK(p.points[1].index == 4);
    CHECK(p.points[1].kind == PoleKind::Min);

    CHECK(thrown_kind([] { find_extrema(std::vector<double>{1, 2}); }) == ErrorKind::TooShort);
}

TEST_CASE("find_extrema matches the brute-force scan") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> small(0, 4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x;
        if (trial % 2 == 0) {
            x = oracle::gaussian(rng, 200);
        } else {
            for (int i = 0; i < 200; ++i) x.push_back(small(rng)); // many plateaus
        }
        const auto got = find_extrema(x);
        const auto want = oracle::extrema_scan(x);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i) {
            CHECK(got.points[i].index == want[i].index);
            CHECK(got.points[i].value == want[i].value);
            CHECK((got.points[i].kind == PoleKind::Max) == want[i].is_max);
        }
    }
}

TEST_CASE("property: unselected extrema alternate in kind") {
    std::mt19937_64 rng(22);
    const auto x = oracle::gaussian(rng, 500);
    const auto e = find_extrema(x);
    for (std::size_t i = 1; i < e.size(); ++i) {
        CHECK(e.points[i].kind != e.points[i - 1].kind);
        CHECK(e.points[i].index > e.points[i - 1].index);
        CHECK(e.points[i].index < x.size());
    }
}

TEST_CASE("dynamic_window examples") {
    CHECK(dynamic_window(std::vector<double>{0, 10, 5}, 0.05) == doctest::Approx(0.5));
    CHECK(dynamic_window(std::vector<double>{3, 3, 3}, 0.07) == 0.0);
    CHECK(dynamic_window(std::vector<double>{-2, 6, 0}, 0.03) == doctest::Approx(0.24));
}

TEST_CASE("select_poles examples") {
    const auto distinct = make_set({1, 2, 1.5, 3, 0});
    CHECK(select_poles(distinct, 0.0).size() == 5);

    const auto trace = make_set({0, 0.1, 5, 5.05, 0.2});
    CHECK(values_of(select_poles(trace, 0.5)) == std::vector<double>{0, 5, 0.2});

    CHECK(select_poles(ExtremaSet{}, 0.5).empty());
}

TEST_CASE("pole_rate examples") {
    CHECK(pole_rate(10, 100) == doctest::Approx(0.10));
    CHECK(pole_rate(0, 50) == 0.0);
    CHECK(pole_rate(150, 100) == doctest::Approx(1.5));
    CHECK(thrown_kind([] { pole_rate(3, 0); }) == ErrorKind::ZeroBaseline);
}

TEST_CASE("screening rule on hand-evaluated rates") {
    const std::vector<std::size_t> counts{2, 3, 50};
    const auto rates = pole_rates(counts, 10);
    CHECK(rates[0] == doctest::Approx(0.2));
    CHECK(rates[1] == doctest::Approx(0.3));
    CHECK(rates[2] == doctest::Approx(5.0));
    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < rates.size(); ++k)
        if (rates[k] <= 1.0) kept.push_back(k);
    CHECK(kept == std::vector<std::size_t>{0, 1});

    const auto degenerate = pole_rates(std::vector<std::size_t>{0, 4}, 0);
    CHECK(degenerate[0] == 0.0);
    CHECK(std::isinf(degenerate[1]));
}

TEST_CASE("screen_modes examples") {
    std::mt19937_64 rng(23);
    SUBCASE("single mode") {
        ModeSet m;
        m.modes = {oracle::gaussian(rng, 100)};
        m.center_freqs = {0.1};
        const auto r = screen_modes(m, SelectionParams{});
        CHECK(r.kept == std::vector<std::size_t>{0});
        CHECK(r.recon == m.modes[0]);
    }
    SUBCASE("infinite threshold keeps everything") {
        ModeSet m;
        for (int k = 0; k < 4; ++k) m.modes.push_back(oracle::gaussian(rng, 120));
        m.center_freqs = {0.1, 0.2, 0.3, 0.4};
        const auto r = screen_modes(m, SelectionParams{0.05, std::numeric_limits<double>::infinity()});
        CHECK(r.kept.size() == 4);
        CHECK(r.recon == reconstruct(m, all_modes(m)));
    }
    SUBCASE("all rejected surfaces an error") {
        ModeSet m;
        m.modes = {oracle::gaussian(rng, 200), oracle::gaussian(rng, 200)};
        m.center_freqs = {0.2, 0.3};
        CHECK(thrown_kind([&] { screen_modes(m, SelectionParams{0.05, 1e-9}); }) == ErrorKind::AllModesRejected);
    }
}

TEST_CASE("property: screen_modes kept set equals the brute-force rule") {
    std::mt19937_64 rng(24);
    std::uniform_int_distribution<int> kdist(1, 6);
    std::uniform_real_distribution<double> tau(0.3, 1.5);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        ModeSet m;
        const int k = kdist(rng);
        for (int i = 0; i < k; ++i) {
            auto mode = slow_wave(150, 0.01 * (i + 1), 3.0 / (i + 1), 0.0);
            const auto noise = oracle::gaussian(rng, 150, 0.1 * i);
            for (std::size_t t = 0; t < mode.size(); ++t) mode[t] += noise[t];
            m.modes.push_back(mode);
            m.center_freqs.push_back(0.01 * (i + 1));
        }
        const SelectionParams params{0.05, tau(rng)};

        std::vector<double> sum(150, 0.0);
        for (const auto& mode : m.modes)
            for (std::size_t t = 0; t < 150; ++t) sum[t] += mode[t];
        const auto count = [&](const std::vector<double>& v) {
            const auto ex = oracle::extrema_scan(v);
            double lo = v[0], hi = v[0];
            for (double x : v) lo = std::min(lo, x), hi = std::max(hi, x);
            const double width = 0.05 * (hi - lo);
            std::size_t kept = 0;
            double last = 0.0;
            for (const auto& e : ex) {
                if (kept == 0 || std::abs(e.value - last) > width) {
                    ++kept;
                    last = e.value;
                }
            }
            return kept;
        };
        const std::size_t n0 = count(sum);
        std::vector<std::size_t> want;
        for (int i = 0; i < k; ++i) {
            const std::size_t c = count(m.modes[static_cast<std::size_t>(i)]);
            const double rate = n0 == 0 ? (c == 0 ? 0.0 : std::numeric_limits<double>::infinity())
                                        : static_cast<double>(c) / static_cast<double>(n0);
            if (rate <= params.tau_rate) want.push_back(static_cast<std::size_t>(i));
        }
        if (want.empty()) {
            CHECK(thrown_kind([&] { screen_modes(m, params); }) == ErrorKind::AllModesRejected);
            continue;
        }
        const auto got = screen_modes(m, params);
        CHECK(got.kept == want);
        CHECK(got.n_original == n0);
        ++checked;
    }
    CHECK(checked > 30);
}

TEST_CASE("property: select_poles removes pseudo-poles and keeps a subsequence") {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = slow_wave(400, 0.01, 3.0, 5.0);
        const auto noise = oracle::gaussian(rng, 400, 0.2);
        for (std::size_t t = 0; t < x.size(); ++t) x[t] += noise[t];
        const auto all = find_extrema(x);
        const double width = dynamic_window(x, 0.05);
        const auto kept = select_poles(all, width);
        for (std::size_t i = 1; i < kept.size(); ++i)
            CHECK(std::abs(kept.points[i].value - kept.points[i - 1].value) > width);
        std::size_t j = 0;
        for (const auto& p : kept.points) {
            while (j < all.size() && !(all.points[j] == p)) ++j;
            CHECK(j < all.size());
        }
    }
}

TEST_CASE("property: select_poles is monotone in width") {
    std::mt19937_64 rng(26);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = slow_wave(400, 0.01, 3.0, 5.0);
        const auto noise = oracle::gaussian(rng, 400, 0.2);
        for (std::size_t t = 0; t < x.size(); ++t) x[t] += noise[t];
        const auto all = find_extrema(x);
        const double width = dynamic_window(x, 0.05);
        const auto idx = select_poles(all, width).indices();
        for (auto i : select_poles(all, 2.0 * width).indices()) CHECK(std::binary_search(idx.begin(), idx.end(), i));
    }
}

TEST_CASE("vmd_ic examples") {
    SUBCASE("noise reduces extrema") {
        std::mt19937_64 rng(26);
        auto x = slow_wave(1024, 0.02, 2.0, 8.0);
        const auto hf = slow_wave(1024, 0.2, 0.8, 0.0);
        const auto noise = oracle::gaussian(rng, 1024, 0.3);
        for (std::size_t t = 0; t < x.size(); ++t) x[t] += hf[t] + noise[t];
        const WindSeries s(x, t0);
        const auto r = vmd_ic(s);
        CHECK(oracle::extrema_scan(r.recon.vector()).size() < oracle::extrema_scan(x).size());
        CHECK(r.recon.size() == x.size());
        for (std::size_t i = 1; i < r.extrema.size(); ++i)
            CHECK(std::abs(r.extrema.points[i].value - r.extrema.points[i - 1].value) >
                  dynamic_window(r.recon.values(), 0.05));
    }
    SUBCASE("slow sinusoid passes through") {
        const auto x = slow_wave(512, 0.01, 2.0, 8.0);
        const auto r = vmd_ic(WindSeries(x, t0));
        CHECK(oracle::pearson(r.recon.vector(), x) > 0.99);
    }
    SUBCASE("constant series") {
        const std::vector<double> x(100, 6.0);
        const auto r = vmd_ic(WindSeries(x, t0));
        CHECK(r.recon.vector() == x);
        CHECK(r.extrema.empty());
    }
}

TEST_CASE("property: vmd_ic denoises without losing the signal") {
    std::mt19937_64 rng(27);
    for (int trial = 0; trial < 5; ++trial) {
        const auto truth = slow_wave(1024, 0.005 + 0.002 * trial, 2.0, 8.0);
        auto noisy = truth;
        const auto noise = oracle::gaussian(rng, truth.size(), 0.4);
        for (std::size_t t = 0; t < noisy.size(); ++t) noisy[t] += noise[t];
        const auto r = vmd_ic(WindSeries(noisy, t0));
        const double raw_count = static_cast<double>(oracle::extrema_scan(noisy).size());
        const double recon_count = static_cast<double>(oracle::extrema_scan(r.recon.vector()).size());
        CHECK(recon_count <= 0.5 * raw_count);
        CHECK(oracle::pearson(r.recon.vector(), truth) >= oracle::pearson(noisy, truth));
    }
}
