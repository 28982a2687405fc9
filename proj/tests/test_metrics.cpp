#include "helpers.hpp"
#include "oracles.hpp"

#include "rampkit/metrics.hpp"

#include <cmath>

#include <doctest.h>

using namespace rampkit;

namespace {

using V = std::vector<double>;

// Plain reference values.
double ref_rmse(const V& p, const V& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - m[i]) * (p[i] - m[i]);
    return std::sqrt(s / static_cast<double>(p.size()));
}

double ref_mae(const V& p, const V& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - m[i]);
    return s / static_cast<double>(p.size());
}

} // namespace

TEST_CASE("rmse and mae examples") {
    CHECK(rmse(V{1, 2, 3}, V{1, 2, 3}) == 0.0);
    CHECK(rmse(V{3}, V{0}) == 3.0);
    CHECK(rmse(V{1, 1}, V{0, 2}) == 1.0);
    CHECK(mae(V{1, 2}, V{1, 2}) == 0.0);
    CHECK(mae(V{1, 1}, V{0, 2}) == 1.0);
    CHECK(thrown_kind([] { rmse(V{1}, V{1, 2}); }) == ErrorKind::LengthMismatch);
    CHECK(thrown_kind([] { mae(V{}, V{}); }) == ErrorKind::EmptyInput);
}

TEST_CASE("accuracy_ac examples") {
    CHECK(accuracy_ac(V{1, 2, 3}, V{1, 2, 3}, 0.01) == 100.0);
    CHECK(accuracy_ac(V{2}, V{1}, 1e-9) == doctest::Approx(50.0));
    const double guarded = accuracy_ac(V{0.0}, V{0.5}, 0.05);
    CHECK(std::isfinite(guarded));
    CHECK(guarded == doctest::Approx(-900.0));
    CHECK(accuracy_ac(V{1}, V{10}, 0.1) < 0.0);
    CHECK(thrown_kind([] { accuracy_ac(V{1}, V{1}, 0.0); }) == ErrorKind::InvalidArgument);
    CHECK(thrown_kind([] { accuracy_ac(V{1}, V{1, 2}, 0.1); }) == ErrorKind::LengthMismatch);
}

TEST_CASE("qualification boundaries") {
    CHECK(qualification_flags(V{2}, V{0}, 10.0) == std::vector<bool>{true});
    CHECK(qualification_flags(V{0}, V{3}, 10.0) == std::vector<bool>{false});
    CHECK(qualification_flags(V{2.5}, V{0}, 10.0) == std::vector<bool>{true});
    CHECK(qualification_flags(V{4, 4}, V{4, 4}, 10.0) == std::vector<bool>{true, true});
    CHECK(qualification_flags(V{0, 0}, V{3, 3}, V{10, 20}) == std::vector<bool>{false, true});
    CHECK(thrown_kind([] { qualification_flags(V{1}, V{1}, 0.0); }) == ErrorKind::InvalidArgument);
    CHECK(thrown_kind([] { qualification_flags(V{1}, V{1}, V{1, 2}); }) == ErrorKind::LengthMismatch);
}

TEST_CASE("pr_power examples") {
    CHECK(pr_power({true, true}) == 100.0);
    CHECK(pr_power({false, false, false}) == 0.0);
    CHECK(pr_power({true, false, true, false}) == 50.0);
    CHECK(thrown_kind([] { pr_power({}); }) == ErrorKind::EmptyInput);
}

TEST_CASE("extras examples") {
    const V m{1, 3, 2, 5};
    auto e = extras(m, m, 10.0);
    CHECK(e.cc == doctest::Approx(1.0));
    CHECK(e.r_rmse == 0.0);
    V shifted;
    for (double v : m) shifted.push_back(v + 0.5);
    e = extras(shifted, m, 10.0);
    CHECK(e.cc == doctest::Approx(1.0));
    CHECK(e.r_mae == doctest::Approx(5.0));
    CHECK(extras(V{2, 2, 2}, V{1, 2, 3}, 1.0).cc == 0.0);
    CHECK(extras(V{104.66}, V{100.0}, 100.0).r_rmse == doctest::Approx(4.66));
}

TEST_CASE("evaluate: perfect forecast and report fields") {
    const V m{0.0, 1.0, 2.5, 4.0};
    const auto r = evaluate(m, m, 5.0);
    CHECK(r.rmse == 0.0);
    CHECK(r.mae == 0.0);
    CHECK(r.ac == 100.0);
    CHECK(r.pr_power == 100.0);
    CHECK(r.n == 4);
    CHECK(r.capacity == 5.0);
    const auto j = r.to_json();
    CHECK(j.at("qualified_flags").size() == 4);
    CHECK(j.at("extras").contains("cc"));
    CHECK(thrown_kind([&] { evaluate(m, m, -1.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("property: metric identities on random pairs") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 40);
        const auto p = oracle::uniform(rng, n, 0.0, 10.0), m = oracle::uniform(rng, n, 0.0, 10.0);
        const double r = rmse(p, m), a = mae(p, m);
        CHECK(r == doctest::Approx(ref_rmse(p, m)).epsilon(1e-12));
        CHECK(a == doctest::Approx(ref_mae(p, m)).epsilon(1e-12));
        CHECK(r >= a - 1e-12);
        CHECK(a >= 0.0);

        const auto flags = qualification_flags(p, m, 10.0);
        CHECK(pr_power(flags) == pr_power(qualification_flags(m, p, 10.0)));
        double mean_flag = 0.0;
        for (bool f : flags) mean_flag += f ? 1.0 : 0.0;
        CHECK(pr_power(flags) == doctest::Approx(mean_flag / static_cast<double>(n) * 100.0));

        CHECK(accuracy_ac(p, m, 0.1) < 100.0);
    }
}

TEST_CASE("property: scaling invariance") {
    std::mt19937_64 rng(72);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = oracle::uniform(rng, 30, 0.0, 10.0), m = oracle::uniform(rng, 30, 0.0, 10.0);
        const double s = std::ldexp(1.0, trial % 7 - 3); // exact powers of two keep flags bit-identical
        V ps, ms;
        for (std::size_t i = 0; i < p.size(); ++i) {
            ps.push_back(p[i] * s);
            ms.push_back(m[i] * s);
        }
        const auto a = evaluate(p, m, 10.0), b = evaluate(ps, ms, 10.0 * s);
        CHECK(b.pr_power == a.pr_power);
        CHECK(b.extras.r_rmse == doctest::Approx(a.extras.r_rmse).epsilon(1e-12));
        CHECK(b.extras.r_mae == doctest::Approx(a.extras.r_mae).epsilon(1e-12));
        CHECK(b.extras.cc == doctest::Approx(a.extras.cc).epsilon(1e-12));
        CHECK(b.rmse == doctest::Approx(a.rmse * s).epsilon(1e-12));
        CHECK(b.mae == doctest::Approx(a.mae * s).epsilon(1e-12));
    }
}

TEST_CASE("property: AC is 100 exactly when the vectors agree") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 200; ++trial) {
        auto p = oracle::uniform(rng, 10, 0.0, 5.0);
        auto m = p;
        CHECK(accuracy_ac(p, m, 0.05) == 100.0);
        m[static_cast<std::size_t>(trial % 10)] += 1e-6;
        CHECK(accuracy_ac(p, m, 0.05) < 100.0);
    }
}
