#include "cli.hpp"

#include "rampkit/csv.hpp"
#include "rampkit/error.hpp"
#include "rampkit/forecasting.hpp"
#include "rampkit/matching.hpp"
#include "rampkit/metrics.hpp"
#include "rampkit/pole_ic.hpp"
#include "rampkit/ramp.hpp"
#include "rampkit/sparse_attention.hpp"
#include "rampkit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace rampkit::cli {

namespace {

constexpr const char* kScenarioFile = "scenario.csv";
constexpr const char* kAnnotationsFile = "annotations.json";
constexpr const char* kModesFile = "modes.csv";
constexpr const char* kPolesFile = "poles.csv";
constexpr const char* kDecomposeFile = "decompose.json";
constexpr const char* kRampsFile = "ramps.csv";
constexpr const char* kMatchesFile = "matches.csv";
constexpr const char* kForecastCsv = "forecast.csv";
constexpr const char* kForecastJson = "forecast.json";
constexpr const char* kEvalFile = "eval.json";
constexpr const char* kAttentionFile = "attention.json";

struct RunConfig {
    std::string out = ".";
    std::string config;
    std::string input;
    std::string historical;
    std::string predictions;
    std::uint64_t seed = 42;
    std::size_t threads = 0;

    // synth
    std::optional<std::size_t> length;

    // decompose
    std::string column = kNwpSpeedColumn;
    VmdParams vmd;
    SelectionParams selection;
    bool keep_all = false;

    // ramps
    std::string definition = "rf";
    std::optional<double> threshold;
    double quantile = 0.9;

    // match
    std::string hist_column = "wind_speed_mps";
    std::size_t radius = 1;
    bool exact_stride = false;

    // forecast / evaluate
    std::size_t horizon = 4;
    std::vector<std::size_t> lags{1, 2, 3, 4};
    std::vector<std::string> nwp;
    std::string model = "ridge";
    double lambda = 1e-3;
    double split = 0.7;
    double capacity = PowerCurveSpec{}.rated_power;

    // attention-bench
    std::size_t bench_length = 64;
    std::size_t bench_dim = 8;
    std::size_t bench_s = 8;
    std::size_t bench_trials = 50;
    double sample_factor = 1.0;
};

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidConfig, msg); }

void require_input(const std::string& path, const char* flag) {
    if (path.empty()) invalid(fmt::format("{} is required", flag));
}

void validate_common(const RunConfig& c) {
    if (c.out.empty()) invalid("--out must not be empty");
}

fs::path stage_file(const RunConfig& c, const char* name) { return fs::path(c.out) / name; }

fs::path prerequisite(const RunConfig& c, const char* name) {
    const auto p = stage_file(c, name);
    if (!fs::exists(p))
        throw Error(ErrorKind::Io, fmt::format("missing prerequisite '{}'; run the earlier stage first", p.string()));
    return p;
}

// Outputs are staged in memory and written only once every stage step has
// succeeded, so a failing run leaves no partial files behind.
struct Outputs {
    std::vector<std::pair<fs::path, std::string>> files;

    void add(fs::path path, std::string content) { files.emplace_back(std::move(path), std::move(content)); }

    void commit(const fs::path& dir) const {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw Error(ErrorKind::Io, fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
        for (const auto& [path, content] : files) {
            std::ofstream f(path, std::ios::binary);
            if (!f) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", path.string()));
            f << content;
        }
    }
};

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string table_csv(const FeatureTable& table) {
    std::ostringstream s;
    write_csv(table, s);
    return s.str();
}

json finite_or_null(std::span<const double> values) {
    json arr = json::array();
    for (double v : values) arr.push_back(std::isfinite(v) ? json(v) : json(nullptr));
    return arr;
}

// ---- synth ---------------------------------------------------------------

int cmd_synth(const RunConfig& c, const json& file_cfg, std::ostream& out) {
    validate_common(c);
    ScenarioConfig scenario;
    if (file_cfg.contains("scenario")) scenario = ScenarioConfig::from_json(file_cfg.at("scenario"));
    if (c.length) scenario.length = *c.length;
    scenario.validate();

    const auto sc = synth_scenario(scenario, c.seed);
    Outputs o;
    o.add(stage_file(c, kScenarioFile), table_csv(sc.table));
    o.add(stage_file(c, kAnnotationsFile),
          dump({{"seed", c.seed}, {"config", scenario.to_json()}, {"annotations", annotations_to_json(sc.annotations)}}));
    o.commit(c.out);
    out << fmt::format("synth: {} rows, {} ramp annotations -> {}\n", sc.table.rows(), sc.annotations.size(),
                       stage_file(c, kScenarioFile).string());
    return 0;
}

// ---- decompose -----------------------------------------------------------

int cmd_decompose(const RunConfig& c, std::ostream& out) {
    validate_common(c);
    require_input(c.input, "--input");
    c.vmd.validate();
    auto selection = c.selection;
    if (c.keep_all) selection.tau_rate = std::numeric_limits<double>::infinity();
    selection.validate();

    const auto table = load_csv(c.input);
    const auto& series = table.column(c.column);
    const auto ic = vmd_ic(series, c.vmd, selection);

    FeatureTable modes_table;
    for (std::size_t k = 0; k < ic.modes.count(); ++k)
        modes_table.add_column(series.with_values(ic.modes.modes[k], SeriesKind::Derived, fmt::format("mode_{}", k + 1)));
    modes_table.add_column(ic.recon.with_values(ic.recon.vector(), SeriesKind::Derived, "recon"));

    // Every extremum of the reconstruction, flagged when it survives selection.
    std::ostringstream poles;
    poles << "index,timestamp,value,kind,kept\n";
    const auto all_poles = ic.recon.size() >= 3 ? find_extrema(ic.recon) : ExtremaSet{};
    const auto kept_idx = ic.extrema.indices();
    for (const auto& p : all_poles.points) {
        const bool kept = std::binary_search(kept_idx.begin(), kept_idx.end(), p.index);
        poles << p.index << ',' << format_timestamp(series.time_at(p.index)) << ',' << format_number(p.value) << ','
              << to_string(p.kind) << ',' << (kept ? 1 : 0) << '\n';
    }

    std::vector<std::size_t> kept_1based;
    for (auto k : ic.screening.kept) kept_1based.push_back(k + 1);
    const json summary = {
        {"input", c.input},
        {"column", c.column},
        {"modes", ic.modes.count()},
        {"alpha", c.vmd.alpha},
        {"ell", selection.ell},
        {"tau_rate", std::isfinite(selection.tau_rate) ? json(selection.tau_rate) : json("inf")},
        {"center_freqs", ic.modes.center_freqs},
        {"residual_norm", ic.modes.residual_norm},
        {"iterations", ic.modes.iterations},
        {"pole_counts", ic.screening.pole_counts},
        {"pole_rates", finite_or_null(ic.screening.rates)},
        {"n_original", ic.screening.n_original},
        {"kept_modes", kept_1based},
        {"selected_poles", ic.extrema.size()},
    };

    Outputs o;
    o.add(stage_file(c, kModesFile), table_csv(modes_table));
    o.add(stage_file(c, kPolesFile), poles.str());
    o.add(stage_file(c, kDecomposeFile), dump(summary));
    o.commit(c.out);
    out << fmt::format("decompose: {} modes, kept {}, {} selected poles\n", ic.modes.count(), kept_1based.size(),
                       ic.extrema.size());
    return 0;
}

// ---- ramps ---------------------------------------------------------------

WindSeries load_recon(const RunConfig& c) {
    const auto table = load_csv(prerequisite(c, kModesFile), CsvSchema{{"recon"}});
    return table.column("recon");
}

std::vector<std::size_t> load_pole_indices(const RunConfig& c) {
    const auto rec = load_records(prerequisite(c, kPolesFile));
    std::vector<std::size_t> idx;
    for (std::size_t r = 0; r < rec.rows.size(); ++r)
        if (rec.integer(r, "kept") != 0) idx.push_back(rec.integer(r, "index"));
    return idx;
}

int cmd_ramps(const RunConfig& c, std::ostream& out) {
    validate_common(c);
    const auto definition = parse_ramp_definition(c.definition);
    if (!(c.quantile >= 0.0 && c.quantile <= 1.0)) invalid("--quantile must be in [0, 1]");

    const auto recon = load_recon(c);
    const auto poles = load_pole_indices(c);
    const auto segments = segment_at(recon, poles);

    RampThresholds th;
    double used = 0.0;
    if (definition == RampDefinition::RampFactor) {
        th.rho_threshold = c.threshold ? *c.threshold : default_rho_threshold(segments, c.quantile);
        used = th.rho_threshold;
    } else {
        if (c.threshold) th.p_val = *c.threshold;
        used = th.p_val;
    }
    th.validate();
    const auto events = label_ramps(segments, th, definition);

    std::ostringstream csv;
    csv << "segment,start_idx,end_idx,start_time,end_time,points,definition,delta_w,rho,direction,fired\n";
    std::size_t fired = 0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        fired += events[i].fired ? 1 : 0;
        csv << i << ',' << s.start_idx << ',' << s.end_idx << ',' << format_timestamp(recon.time_at(s.start_idx)) << ','
            << format_timestamp(recon.time_at(s.end_idx)) << ',' << s.points() << ',' << to_string(definition) << ','
            << format_number(s.delta_w)
            << ',' << format_number(s.rho) << ',' << to_string(s.direction) << ',' << (events[i].fired ? 1 : 0)
            << '\n';
    }

    Outputs o;
    o.add(stage_file(c, kRampsFile), csv.str());
    o.commit(c.out);
    out << fmt::format("ramps: {} segments, {} fired ({} threshold {})\n", segments.size(), fired,
                       to_string(definition), format_number(used));
    return 0;
}

// ---- match ---------------------------------------------------------------

struct SegmentTable {
    std::vector<RampSegment> segments;
    std::vector<RampEvent> events;
};

SegmentTable load_segments(const RunConfig& c) {
    const auto rec = load_records(prerequisite(c, kRampsFile));
    SegmentTable t;
    for (std::size_t r = 0; r < rec.rows.size(); ++r) {
        RampSegment s;
        s.start_idx = rec.integer(r, "start_idx");
        s.end_idx = rec.integer(r, "end_idx");
        s.delta_w = rec.number(r, "delta_w");
        s.rho = rec.number(r, "rho");
        s.direction = parse_direction(rec.text(r, "direction"));
        RampEvent e;
        e.segment = r;
        e.fired = rec.integer(r, "fired") != 0;
        t.segments.push_back(std::move(s));
        t.events.push_back(e);
    }
    if (t.segments.empty()) throw Error(ErrorKind::EmptyInput, fmt::format("{}: no segments", rec.source));
    return t;
}

int cmd_match(const RunConfig& c, std::ostream& out) {
    validate_common(c);
    require_input(c.historical, "--historical");
    if (c.radius < 1) invalid("--radius must be >= 1");

    const auto recon = load_recon(c);
    const auto listed = load_segments(c);
    std::vector<std::size_t> cuts;
    for (std::size_t i = 1; i < listed.segments.size(); ++i) cuts.push_back(listed.segments[i].start_idx);
    const auto segments = segment_at(recon, cuts);
    if (segments.size() != listed.segments.size() || segments.back().end_idx != listed.segments.back().end_idx)
        throw Error(ErrorKind::AlignmentError, "ramps.csv does not match the reconstructed series in modes.csv");

    const auto hist_table = load_csv(c.historical, CsvSchema{{c.hist_column}});
    const auto& hist = hist_table.column(c.hist_column);
    if (hist.step() != recon.step())
        throw Error(ErrorKind::AlignmentError, fmt::format("historical step {}s differs from {}s", hist.step().count(),
                                                           recon.step().count()));

    MatchOptions opts;
    opts.radius = c.radius;
    opts.exact_stride = c.exact_stride;
    opts.threads = c.threads;
    const auto records = match_periods(segments, hist, opts);

    std::ostringstream csv;
    csv << "segment_id,past_start,past_end,hist_start,hist_start_time,dtw_distance,wind_str,wind_tre,wind_str_norm,"
           "wind_tre_norm,omega\n";
    for (const auto& r : records)
        csv << r.segment << ',' << r.past_start << ',' << r.past_end << ',' << r.hist_start << ','
            << format_timestamp(hist.time_at(r.hist_start)) << ',' << format_number(r.dtw_distance) << ','
            << format_number(r.wind_str) << ',' << format_number(r.wind_tre) << ',' << format_number(r.wind_str_norm)
            << ',' << format_number(r.wind_tre_norm) << ',' << format_number(r.omega) << '\n';

    Outputs o;
    o.add(stage_file(c, kMatchesFile), csv.str());
    o.commit(c.out);
    out << fmt::format("match: {} segments matched against {} historical samples\n", records.size(), hist.size());
    return 0;
}

// ---- forecast ------------------------------------------------------------

std::vector<MatchRecord> load_matches(const RunConfig& c) {
    const auto rec = load_records(prerequisite(c, kMatchesFile));
    std::vector<MatchRecord> out;
    for (std::size_t r = 0; r < rec.rows.size(); ++r) {
        MatchRecord m;
        m.segment = rec.integer(r, "segment_id");
        m.past_start = rec.integer(r, "past_start");
        m.past_end = rec.integer(r, "past_end");
        m.hist_start = rec.integer(r, "hist_start");
        m.dtw_distance = rec.number(r, "dtw_distance");
        m.wind_str = rec.number(r, "wind_str");
        m.wind_tre = rec.number(r, "wind_tre");
        m.wind_str_norm = rec.number(r, "wind_str_norm");
        m.wind_tre_norm = rec.number(r, "wind_tre_norm");
        m.omega = rec.number(r, "omega");
        out.push_back(m);
    }
    return out;
}

int cmd_forecast(const RunConfig& c, std::ostream& out) {
    validate_common(c);
    require_input(c.input, "--input");
    require_input(c.historical, "--historical");
    if (c.model != "ridge" && c.model != "persistence") invalid("--model must be 'ridge' or 'persistence'");
    if (!(c.split > 0.0 && c.split < 1.0)) invalid("--split must be in (0, 1)");
    if (!(c.lambda >= 0.0) || !std::isfinite(c.lambda)) invalid("--lambda must be finite and >= 0");
    if (!(c.capacity > 0.0) || !std::isfinite(c.capacity)) invalid("--capacity must be positive");
    FeatureOptions fo;
    fo.horizon = c.horizon;
    fo.lags = c.lags;
    fo.nwp_columns = c.nwp;
    if (c.model == "persistence" && std::find(fo.lags.begin(), fo.lags.end(), 1) == fo.lags.end())
        fo.lags.insert(fo.lags.begin(), 1);
    fo.validate();

    const auto table = load_csv(c.input);
    const auto historical = load_csv(c.historical);
    const auto listed = load_segments(c);
    const auto matches = load_matches(c);
    const auto matrix = assemble_features(matches, listed.segments, listed.events, table, historical, fo);

    const auto report = c.model == "ridge" ? fit_predict_linear(matrix, c.lambda, c.split, c.capacity)
                                           : predict_persistence(matrix, c.capacity, c.split);
    const auto baseline = predict_persistence(matrix, c.capacity, c.split);

    std::ostringstream csv;
    report.write_csv(csv);
    auto doc = report.to_json();
    doc["split"] = c.split;
    doc["lambda"] = c.lambda;
    doc["capacity"] = c.capacity;
    doc["persistence_rmse"] = baseline.metrics.rmse;

    Outputs o;
    o.add(stage_file(c, kForecastCsv), csv.str());
    o.add(stage_file(c, kForecastJson), dump(doc));
    o.commit(c.out);
    out << fmt::format("forecast: {} on {} test rows, rmse {} (persistence {})\n", report.model_id,
                       report.predictions.size(), format_number(report.metrics.rmse),
                       format_number(baseline.metrics.rmse));
    return 0;
}

// ---- evaluate ------------------------------------------------------------

int cmd_evaluate(const RunConfig& c, std::ostream& out) {
    validate_common(c);
    if (!(c.capacity > 0.0) || !std::isfinite(c.capacity)) invalid("--capacity must be positive");
    const fs::path source = c.predictions.empty() ? prerequisite(c, kForecastCsv) : fs::path(c.predictions);
    const auto rec = load_records(source);
    std::vector<double> pred, meas;
    for (std::size_t r = 0; r < rec.rows.size(); ++r) {
        pred.push_back(rec.number(r, "predicted"));
        meas.push_back(rec.number(r, "actual"));
    }
    const auto report = evaluate(pred, meas, c.capacity);

    Outputs o;
    o.add(stage_file(c, kEvalFile), dump(report.to_json()));
    o.commit(c.out);
    out << fmt::format("{:<10}{:>14}\n", "metric", "value");
    out << fmt::format("{:<10}{:>14}\n", "n", report.n);
    out << fmt::format("{:<10}{:>14.4f}\n", "rmse", report.rmse);
    out << fmt::format("{:<10}{:>14.4f}\n", "mae", report.mae);
    out << fmt::format("{:<10}{:>14.2f}\n", "ac", report.ac);
    out << fmt::format("{:<10}{:>14.2f}\n", "pr_power", report.pr_power);
    out << fmt::format("{:<10}{:>14.4f}\n", "cc", report.extras.cc);
    out << fmt::format("{:<10}{:>14.2f}\n", "r_rmse", report.extras.r_rmse);
    out << fmt::format("{:<10}{:>14.2f}\n", "r_mae", report.extras.r_mae);
    return 0;
}

// ---- attention-bench -----------------------------------------------------

int cmd_attention_bench(const RunConfig& c, std::ostream& out) {
    validate_common(c);
    if (c.bench_length < 2) invalid("--length must be >= 2");
    if (c.bench_dim < 1) invalid("--dim must be >= 1");
    if (c.bench_s < 1 || c.bench_s > c.bench_length) invalid("--s must be in [1, length]");
    if (c.bench_trials < 1) invalid("--trials must be >= 1");
    if (!(c.sample_factor > 0.0)) invalid("--factor must be positive");

    using attention::Matrix;
    const auto l = static_cast<Eigen::Index>(c.bench_length);
    const auto d = static_cast<Eigen::Index>(c.bench_dim);
    double overlap_sum = 0.0, overlap_min = 1.0;
    std::size_t scoring = 0, samples = 0;
    for (std::size_t trial = 0; trial < c.bench_trials; ++trial) {
        std::mt19937_64 rng(c.seed + trial);
        std::normal_distribution<double> gauss(0.0, 1.0);
        attention::AttentionInput in{Matrix(l, d), Matrix(l, d), Matrix(l, d)};
        for (auto* m : {&in.queries, &in.keys, &in.values})
            for (Eigen::Index i = 0; i < m->size(); ++i) m->data()[i] = gauss(rng);

        std::vector<double> m_full(c.bench_length), m_bar_full(c.bench_length);
        for (Eigen::Index i = 0; i < l; ++i) {
            const attention::Vector q = in.queries.row(i).transpose();
            m_full[static_cast<std::size_t>(i)] = attention::m_score(q, in.keys, c.bench_dim);
            m_bar_full[static_cast<std::size_t>(i)] = attention::m_bar_score(q, in.keys, c.bench_dim);
        }
        const auto a = attention::top_s(m_full, c.bench_s);
        const auto b = attention::top_s(m_bar_full, c.bench_s);
        std::vector<std::size_t> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        const double overlap = static_cast<double>(common.size()) / static_cast<double>(c.bench_s);
        overlap_sum += overlap;
        overlap_min = std::min(overlap_min, overlap);

        const auto res = attention::prob_sparse_attention(in, c.bench_s, c.sample_factor, c.seed + trial);
        scoring = res.scoring_dot_products;
        samples = res.samples_per_query;
    }
    const double l_ln_l = static_cast<double>(c.bench_length) * std::log(static_cast<double>(c.bench_length));
    const json doc = {
        {"length", c.bench_length},
        {"dim", c.bench_dim},
        {"s", c.bench_s},
        {"trials", c.bench_trials},
        {"sample_factor", c.sample_factor},
        {"mean_overlap", overlap_sum / static_cast<double>(c.bench_trials)},
        {"min_overlap", overlap_min},
        {"samples_per_query", samples},
        {"scoring_dot_products", scoring},
        {"dense_dot_products", c.bench_length * c.bench_length},
        {"l_ln_l", l_ln_l},
        {"scoring_ratio", static_cast<double>(scoring) / l_ln_l},
    };
    Outputs o;
    o.add(stage_file(c, kAttentionFile), dump(doc));
    o.commit(c.out);
    out << dump(doc);
    return 0;
}

// ---- argument wiring -----------------------------------------------------

using Applier = std::function<void(const json&)>;

template <typename T>
void take(const json& cfg, const std::string& key, T& target) {
    if (cfg.contains(key)) target = cfg.at(key).get<T>();
}

template <typename T>
void take(const json& cfg, const std::string& key, std::optional<T>& target) {
    if (cfg.contains(key)) target = cfg.at(key).get<T>();
}

// Registers an option whose value may also come from the JSON config under
// `key`; a flag given on the command line wins.
template <typename T>
CLI::Option* bind_option(CLI::App* sub, std::vector<Applier>& appliers, const std::string& flags, const std::string& key,
                  T& target, const std::string& help) {
    CLI::Option* opt = sub->add_option(flags, target, help);
    appliers.push_back([opt, key, &target](const json& cfg) {
        if (opt->count() == 0) take(cfg, key, target);
    });
    return opt;
}

CLI::Option* bind_flag(CLI::App* sub, std::vector<Applier>& appliers, const std::string& flags,
                       const std::string& key, bool& target, const std::string& help) {
    CLI::Option* opt = sub->add_flag(flags, target, help);
    appliers.push_back([opt, key, &target](const json& cfg) {
        if (opt->count() == 0) take(cfg, key, target);
    });
    return opt;
}

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::Io, fmt::format("cannot open config '{}'", path));
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidConfig, fmt::format("{}: {}", path, e.what()));
    }
    if (!doc.is_object()) throw Error(ErrorKind::InvalidConfig, fmt::format("{}: config must be a JSON object", path));
    return doc;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Wind power ramp analysis and short-term forecasting pipeline", "rampkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    std::vector<std::pair<CLI::App*, std::vector<Applier>>> subs;
    const auto add_sub = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        subs.push_back({sub, {}});
        auto& ap = subs.back().second;
        sub->add_option("--config", cfg.config, "JSON file with option values; flags override it");
        bind_option(sub, ap, "-o,--out", "out", cfg.out, "Output (and stage working) directory")->capture_default_str();
        bind_option(sub, ap, "--threads", "threads", cfg.threads, "Worker cap (0: RAMPKIT_THREADS or 1)");
        return std::pair<CLI::App*, std::vector<Applier>*>{sub, &ap};
    };

    {
        auto [sub, ap] = add_sub("synth", "Generate a synthetic farm scenario with planted ramps");
        bind_option(sub, *ap, "--seed", "seed", cfg.seed, "Generator seed")->capture_default_str();
        bind_option(sub, *ap, "--length", "length", cfg.length, "Series length (overrides scenario.length)");
    }
    {
        auto [sub, ap] = add_sub("decompose", "VMD-IC decomposition, mode screening and pole selection");
        bind_option(sub, *ap, "-i,--input", "input", cfg.input, "Scenario CSV");
        bind_option(sub, *ap, "--column", "column", cfg.column, "Column to decompose")->capture_default_str();
        bind_option(sub, *ap, "-K,--modes", "modes", cfg.vmd.modes, "Number of modes")->capture_default_str();
        bind_option(sub, *ap, "--alpha", "alpha", cfg.vmd.alpha, "Bandwidth penalty")->capture_default_str();
        bind_option(sub, *ap, "--tau-dual", "tau_dual", cfg.vmd.tau_dual, "Dual ascent step")->capture_default_str();
        bind_option(sub, *ap, "--tol", "tol", cfg.vmd.tol, "Convergence tolerance")->capture_default_str();
        bind_option(sub, *ap, "--max-iter", "max_iter", cfg.vmd.max_iter, "Iteration cap")->capture_default_str();
        bind_option(sub, *ap, "--ell", "ell", cfg.selection.ell, "Pole window coefficient")->capture_default_str();
        bind_option(sub, *ap, "--tau-rate", "tau_rate", cfg.selection.tau_rate, "Pole-rate threshold")->capture_default_str();
        bind_flag(sub, *ap, "--keep-all", "keep_all", cfg.keep_all, "Keep every mode");
    }
    {
        auto [sub, ap] = add_sub("ramps", "Segment the reconstruction at its poles and label ramps");
        bind_option(sub, *ap, "--definition", "definition", cfg.definition, "def1, def2 or rf")->capture_default_str();
        bind_option(sub, *ap, "--threshold", "threshold", cfg.threshold,
             "p_val for def1/def2, rho threshold for rf (default: quantile of |rho|)");
        bind_option(sub, *ap, "--quantile", "quantile", cfg.quantile, "Quantile for the default rho threshold")
            ->capture_default_str();
    }
    {
        auto [sub, ap] = add_sub("match", "Match every segment to a historical window by FastDTW");
        bind_option(sub, *ap, "--historical", "historical", cfg.historical, "Historical CSV");
        bind_option(sub, *ap, "--hist-column", "hist_column", cfg.hist_column, "Historical column")->capture_default_str();
        bind_option(sub, *ap, "--radius", "radius", cfg.radius, "FastDTW radius")->capture_default_str();
        bind_flag(sub, *ap, "--exact-stride", "exact_stride", cfg.exact_stride, "Scan every historical origin");
    }
    {
        auto [sub, ap] = add_sub("forecast", "Assemble features and run a predictor");
        bind_option(sub, *ap, "-i,--input", "input", cfg.input, "Scenario CSV");
        bind_option(sub, *ap, "--historical", "historical", cfg.historical, "Historical CSV");
        bind_option(sub, *ap, "--horizon", "horizon", cfg.horizon, "Steps ahead")->capture_default_str();
        bind_option(sub, *ap, "--lags", "lags", cfg.lags, "Power lags, comma separated")->delimiter(',');
        bind_option(sub, *ap, "--nwp", "nwp", cfg.nwp, "NWP columns (default: top 2 by correlation)")->delimiter(',');
        bind_option(sub, *ap, "--model", "model", cfg.model, "ridge or persistence")->capture_default_str();
        bind_option(sub, *ap, "--lambda", "lambda", cfg.lambda, "Ridge penalty")->capture_default_str();
        bind_option(sub, *ap, "--split", "split", cfg.split, "Training fraction")->capture_default_str();
        bind_option(sub, *ap, "--capacity", "capacity", cfg.capacity, "Capacity in MW")->capture_default_str();
    }
    {
        auto [sub, ap] = add_sub("evaluate", "Score a forecast CSV");
        bind_option(sub, *ap, "--predictions", "predictions", cfg.predictions, "CSV with actual,predicted (default: forecast.csv)");
        bind_option(sub, *ap, "--capacity", "capacity", cfg.capacity, "Capacity in MW")->capture_default_str();
    }
    {
        auto [sub, ap] = add_sub("attention-bench", "Sparse attention overlap and operation counts");
        bind_option(sub, *ap, "--seed", "seed", cfg.seed, "First seed")->capture_default_str();
        bind_option(sub, *ap, "--length", "length", cfg.bench_length, "L_Q = L_K")->capture_default_str();
        bind_option(sub, *ap, "--dim", "dim", cfg.bench_dim, "Key dimension")->capture_default_str();
        bind_option(sub, *ap, "--s", "s", cfg.bench_s, "Selected queries")->capture_default_str();
        bind_option(sub, *ap, "--trials", "trials", cfg.bench_trials, "Seeded trials")->capture_default_str();
        bind_option(sub, *ap, "--factor", "sample_factor", cfg.sample_factor, "Sampling factor")->capture_default_str();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        for (auto& [sub, appliers] : subs) {
            if (!sub->parsed()) continue;
            const json file_cfg = load_config(cfg.config);
            try {
                for (auto& apply : appliers) apply(file_cfg);
            } catch (const json::exception& e) {
                throw Error(ErrorKind::InvalidConfig, fmt::format("{}: {}", cfg.config, e.what()));
            }
            const auto& name = sub->get_name();
            if (name == "synth") return cmd_synth(cfg, file_cfg, out);
            if (name == "decompose") return cmd_decompose(cfg, out);
            if (name == "ramps") return cmd_ramps(cfg, out);
            if (name == "match") return cmd_match(cfg, out);
            if (name == "forecast") return cmd_forecast(cfg, out);
            if (name == "evaluate") return cmd_evaluate(cfg, out);
            if (name == "attention-bench") return cmd_attention_bench(cfg, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
    err << "error: no subcommand\n";
    return 2;
}

} // namespace rampkit::cli
