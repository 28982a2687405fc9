#include "helpers.hpp"
#include "oracles.hpp"

#include "rampkit/csv.hpp"
#include "rampkit/power_curve.hpp"
#include "rampkit/series.hpp"
#include "rampkit/synth.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <doctest.h>

using namespace rampkit;

namespace {

const Timestamp t0 = parse_timestamp("2024-03-01T00:00:00Z");

FeatureTable parse(const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
}

} // namespace

TEST_CASE("timestamps parse and format in UTC") {
    CHECK(format_timestamp(parse_timestamp("2024-03-01T06:15:00Z")) == "2024-03-01T06:15:00Z");
    CHECK(parse_timestamp("2024-03-01 06:15:00") == parse_timestamp("2024-03-01T06:15:00+00:00"));
    CHECK(thrown_kind([] { parse_timestamp("yesterday"); }) == ErrorKind::ParseError);
}

TEST_CASE("WindSeries rejects invalid values") {
    CHECK(thrown_kind([] { WindSeries({}, t0); }) == ErrorKind::EmptyInput);
    CHECK(thrown_kind([] { WindSeries({1.0, NAN}, t0); }) == ErrorKind::NonFiniteValue);
    CHECK(thrown_kind([] { WindSeries({-1.0}, t0, kDefaultStep, SeriesKind::Power); }) == ErrorKind::InvalidArgument);
    CHECK(thrown_kind([] { WindSeries({1.0}, t0, Seconds{0}); }) == ErrorKind::InvalidArgument);
    CHECK_FALSE(thrown_kind([] { WindSeries({-1.0}, t0, kDefaultStep, SeriesKind::Derived); }));
    const WindSeries s({1, 2, 3}, t0);
    CHECK(s.time_at(2) == t0 + 2 * kDefaultStep);
}

TEST_CASE("FeatureTable enforces one clock") {
    FeatureTable t;
    t.add_column(WindSeries({1, 2, 3}, t0, kDefaultStep, SeriesKind::Speed, "a"));
    CHECK(thrown_kind([&] { t.add_column(WindSeries({1, 2}, t0, kDefaultStep, SeriesKind::Speed, "b")); }) ==
          ErrorKind::AlignmentError);
    CHECK(thrown_kind([&] { t.add_column(WindSeries({1, 2, 3}, t0, Seconds{600}, SeriesKind::Speed, "b")); }) ==
          ErrorKind::AlignmentError);
    CHECK(thrown_kind([&] { t.add_column(WindSeries({1, 2, 3}, t0, kDefaultStep, SeriesKind::Speed, "a")); }) ==
          ErrorKind::InvalidArgument);
    CHECK(thrown_kind([&] { (void)t.column("zzz"); }) == ErrorKind::MissingColumn);
}

TEST_CASE("load_csv examples") {
    SUBCASE("three rows, one column") {
        const auto t = parse("timestamp,wind_speed_mps\n"
                             "2024-01-01T00:00:00Z,5.0\n"
                             "2024-01-01T00:15:00Z,5.5\n"
                             "2024-01-01T00:30:00Z,6.0\n");
        CHECK(t.columns().size() == 1);
        CHECK(t.rows() == 3);
        CHECK(t.column("wind_speed_mps").kind() == SeriesKind::Speed);
        CHECK(t.step() == Seconds{900});
    }
    SUBCASE("missing timestamp row") {
        CHECK(thrown_kind([] {
                  parse("timestamp,wind_speed_mps\n"
                        "2024-01-01T00:00:00Z,5.0\n"
                        "2024-01-01T00:15:00Z,5.5\n"
                        "2024-01-01T00:45:00Z,6.0\n");
              }) == ErrorKind::NonUniformStep);
    }
    SUBCASE("two NWP columns on one clock") {
        const auto t = parse("timestamp,nwp_speed_70m,nwp_temperature_70m\n"
                             "2024-01-01T00:00:00Z,5.0,12.5\n"
                             "2024-01-01T00:15:00Z,5.5,12.4\n");
        CHECK(t.columns().size() == 2);
        CHECK(t.column("nwp_speed_70m").same_clock(t.column("nwp_temperature_70m")));
        CHECK(t.column("nwp_temperature_70m").kind() == SeriesKind::NwpFeature);
    }
    SUBCASE("errors") {
        CHECK(thrown_kind([] { parse("timestamp,a\n2024-01-01T00:00:00Z,nan\n"); }) == ErrorKind::NonFiniteValue);
        CHECK(thrown_kind([] { parse("timestamp,a\n2024-01-01T00:00:00Z,abc\n"); }) == ErrorKind::ParseError);
        CHECK(thrown_kind([] { parse("timestamp,a\n2024-01-01T00:00:00Z,1,2\n"); }) == ErrorKind::ParseError);
        CHECK(thrown_kind([] { parse("time,a\n2024-01-01T00:00:00Z,1\n"); }) == ErrorKind::MissingColumn);
        CHECK(thrown_kind([] {
                  std::istringstream in("timestamp,a\n2024-01-01T00:00:00Z,1\n");
                  read_csv(in, CsvSchema{{"b"}});
              }) == ErrorKind::MissingColumn);
        CHECK(thrown_kind([] { parse("timestamp,a\n"); }) == ErrorKind::EmptyInput);
        CHECK(thrown_kind([] { load_csv("/nonexistent/file.csv"); }) == ErrorKind::Io);
    }
}

TEST_CASE("property: CSV round trip keeps 9 significant digits") {
    std::mt19937_64 rng(11);
    const auto speed = oracle::uniform(rng, 200, 0.0, 30.0);
    const auto temp = oracle::uniform(rng, 200, -20.0, 40.0);
    FeatureTable t;
    t.add_column(WindSeries(speed, t0, kDefaultStep, SeriesKind::Speed, "wind_speed_mps"));
    t.add_column(WindSeries(temp, t0, kDefaultStep, SeriesKind::NwpFeature, "nwp_temperature_70m"));
    std::stringstream a;
    write_csv(t, a);
    const auto back = read_csv(a);
    for (std::size_t i = 0; i < speed.size(); ++i) {
        CHECK(back.column("wind_speed_mps")[i] == doctest::Approx(speed[i]).epsilon(1e-9));
        CHECK(back.column("nwp_temperature_70m")[i] == doctest::Approx(temp[i]).epsilon(1e-9));
    }
    std::stringstream b;
    write_csv(back, b);
    CHECK(a.str() == b.str());
}

TEST_CASE("min_max_normalize examples") {
    const std::vector<double> a{2, 4, 6};
    CHECK(min_max_normalize(a, 0, 1) == std::vector<double>{0, 0.5, 1});
    const std::vector<double> flat{5, 5, 5};
    CHECK(min_max_normalize(flat, 0, 1) == std::vector<double>{0, 0, 0});
    const std::vector<double> two{1, 3};
    CHECK(min_max_normalize(two, -1, 1) == std::vector<double>{-1, 1});
    const WindSeries s({2, 4, 6}, t0);
    CHECK(min_max_normalize(s).kind() == SeriesKind::Derived);
}

TEST_CASE("property: min_max_normalize is bounded and idempotent") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = oracle::uniform(rng, 50, -100.0, 100.0);
        const double lo = -1.0 + trial * 0.01, hi = lo + 2.5;
        const auto y = min_max_normalize(x, lo, hi);
        for (double v : y) {
            CHECK(v >= lo);
            CHECK(v <= hi);
        }
        const auto z = min_max_normalize(y, lo, hi);
        for (std::size_t i = 0; i < y.size(); ++i) CHECK(z[i] == doctest::Approx(y[i]).epsilon(1e-12));
    }
}

TEST_CASE("power_curve examples") {
    CHECK(power_curve(2.0) == 0.0);
    CHECK(power_curve(10.5) == 5.0);
    const double expect = 5.0 * (343.0 - 42.875) / (1157.625 - 42.875);
    CHECK(power_curve(7.0) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(power_curve(25.0) == 0.0);
    CHECK(power_curve(3.5) == 0.0);
    PowerCurveSpec bad;
    bad.cut_in = 12.0;
    CHECK(thrown_kind([&] { bad.validate(); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("property: power_curve monotone below cut-out and zero above") {
    double prev = 0.0;
    for (double v = 0.0; v < 25.0; v += 0.01) {
        const double p = power_curve(v);
        CHECK(p >= prev);
        prev = p;
    }
    for (double v = 25.0; v < 60.0; v += 0.5) CHECK(power_curve(v) == 0.0);
}

TEST_CASE("synth_scenario examples") {
    SUBCASE("noise-free ramp is strictly increasing") {
        ScenarioConfig cfg;
        cfg.length = 100;
        cfg.noise_sigma = 0.0;
        cfg.events = {{40, 10, 6.0, Direction::Up}};
        const auto sc = synth_scenario(cfg, 1);
        const auto& v = sc.table.column(kSpeedColumn);
        for (std::size_t i = 40; i < 50; ++i) CHECK(v[i + 1] > v[i]);
        CHECK(v[50] == doctest::Approx(cfg.base_mean + 6.0));
        REQUIRE(sc.annotations.size() == 1);
        CHECK(sc.annotations[0].start_idx == 40);
        CHECK(sc.annotations[0].end_idx == 50);
    }
    SUBCASE("fixed seed is reproducible") {
        ScenarioConfig cfg;
        cfg.length = 500;
        cfg.events = {{100, 8, 3.0, Direction::Down}};
        CHECK(synth_scenario(cfg, 9).table == synth_scenario(cfg, 9).table);
        CHECK_FALSE(synth_scenario(cfg, 9).table == synth_scenario(cfg, 10).table);
    }
    SUBCASE("no events") {
        ScenarioConfig cfg;
        cfg.length = 50;
        CHECK(synth_scenario(cfg, 1).annotations.empty());
    }
    SUBCASE("columns") {
        ScenarioConfig cfg;
        cfg.length = 50;
        const auto sc = synth_scenario(cfg, 1);
        CHECK(sc.table.names() ==
              std::vector<std::string>{"wind_speed_mps", "power_mw", "nwp_speed_70m", "nwp_temperature_70m"});
        CHECK(sc.table.target() == std::optional<std::string>("power_mw"));
        const auto& sp = sc.table.column(kSpeedColumn);
        const auto& pw = sc.table.column(kPowerColumn);
        for (std::size_t i = 0; i < sp.size(); ++i) CHECK(pw[i] == power_curve(sp[i]));
    }
    SUBCASE("invalid configs") {
        ScenarioConfig cfg;
        cfg.length = 0;
        CHECK(thrown_kind([&] { synth_scenario(cfg, 1); }) == ErrorKind::InvalidConfig);
        cfg.length = 50;
        cfg.events = {{10, 0, 1.0, Direction::Up}};
        CHECK(thrown_kind([&] { synth_scenario(cfg, 1); }) == ErrorKind::InvalidConfig);
        cfg.events = {{45, 10, 1.0, Direction::Up}};
        CHECK(thrown_kind([&] { synth_scenario(cfg, 1); }) == ErrorKind::InvalidConfig);
        CHECK(thrown_kind([] { ScenarioConfig::from_json({{"length", -5}}); }) == ErrorKind::InvalidConfig);
    }
}

TEST_CASE("ScenarioConfig JSON round trip") {
    ScenarioConfig cfg;
    cfg.length = 321;
    cfg.noise_sigma = 0.7;
    cfg.events = {{10, 5, 2.5, Direction::Down}};
    const auto back = ScenarioConfig::from_json(cfg.to_json());
    CHECK(back.length == 321);
    CHECK(back.noise_sigma == 0.7);
    REQUIRE(back.events.size() == 1);
    CHECK(back.events[0].direction == Direction::Down);
    const auto sc = synth_scenario(cfg, 4);
    const auto ann = annotations_from_json(annotations_to_json(sc.annotations));
    REQUIRE(ann.size() == 1);
    CHECK(ann[0].end_idx == 15);
}
