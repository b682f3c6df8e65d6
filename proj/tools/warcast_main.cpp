// warcast: score, benchmark, ensemble, and validate probabilistic forecasts
// of monthly fatality counts.
//
// Exit codes: 0 success, 1 validation failure, 2 fatal error (bad usage,
// unreadable or malformed inputs, broken invariants).

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "warcast/warcast.hpp"

namespace fs = std::filesystem;
using namespace warcast;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitFatal = 2;

Level parse_level(const std::string& name) { return level_from_name(name); }

/// Split "YYYY-MM..YYYY-MM" into a month range.
std::pair<MonthId, MonthId> parse_month_range(const std::string& text) {
    const std::size_t sep = text.find("..");
    if (sep == std::string::npos)
        throw std::domain_error("month range must look like 2010-01..2015-12, got '" + text +
                                "'");
    const MonthId first = parse_year_month(text.substr(0, sep));
    const MonthId last = parse_year_month(text.substr(sep + 2));
    if (last < first) throw std::domain_error("month range '" + text + "' runs backwards");
    return {first, last};
}

std::string path_stem(const std::string& path) { return fs::path(path).stem().string(); }

/// All *.csv files in a directory, sorted by filename for determinism.
std::vector<fs::path> csv_files_in(const std::string& dir) {
    if (!fs::is_directory(dir)) throw std::runtime_error(dir + ": not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error(dir + ": no .csv files found");
    return files;
}

struct ValidateArgs {
    std::string submission;
    std::string level;
    std::string universe;
};

int run_validate(const ValidateArgs& args) {
    std::optional<Level> expected;
    if (!args.level.empty()) expected = parse_level(args.level);
    std::optional<io::Universe> universe;
    if (!args.universe.empty()) universe = io::read_universe(args.universe);

    const io::ValidationReport report =
        io::validate_submission(args.submission, expected, universe ? &*universe : nullptr);
    std::cout << args.submission << ": " << report.summary();
    return report.valid() ? kExitOk : kExitInvalid;
}

struct ScoreArgs {
    std::string submission;
    std::string obs;
    std::string windows;
    std::string ign_mode = "fourier";
    std::string mis_q = "standard";
    std::string out;
    bool point = false;
    int n_draws = 1000;
    std::uint64_t seed = 0;
};

int run_score(const ScoreArgs& args) {
    const ObservationPanel panel = io::read_observations(args.obs);
    const std::vector<EvaluationWindow> windows = io::read_windows(args.windows);
    const ForecastTable forecasts =
        args.point ? io::load_point_submission(args.submission, args.n_draws, args.seed)
                   : io::read_submission(args.submission);

    ScoreConfig cfg;
    cfg.ign.resample_mode = resample_mode_from_name(args.ign_mode);
    if (args.mis_q == "standard")
        cfg.mis = MisConfig::standard();
    else if (args.mis_q == "compat")
        cfg.mis = MisConfig::compat();
    else
        throw std::domain_error("--mis-q must be standard or compat, got '" + args.mis_q + "'");

    const EvaluationResult result = score_submission(forecasts, panel, windows, cfg);

    const std::string out =
        args.out.empty() ? path_stem(args.submission) + "_scores.csv" : args.out;
    io::write_score_table(result.table, out);

    std::cout << io::render_score_table_md(path_stem(args.submission), result.table) << "\n";
    std::cout << "scored " << result.coverage.forecast_cells << " cells; panel has "
              << result.coverage.panel_cells_in_windows << " cells in the declared windows, "
              << result.coverage.unforecast_cells.size() << " without a forecast\n";
    std::cout << "wrote " << out << "\n";
    return kExitOk;
}

struct BenchmarkArgs {
    std::string kind;
    std::string obs;
    std::string windows;
    std::string mask;
    std::string out;
    std::uint64_t seed = 0;
    int n_draws = 1000;
    int lookback = 0;  // 0 = kind default
    bool neighbors = false;
    bool rook = false;
};

int run_benchmark(const BenchmarkArgs& args) {
    const ObservationPanel panel = io::read_observations(args.obs);
    const std::vector<EvaluationWindow> windows = io::read_windows(args.windows);

    BenchmarkSpec spec = BenchmarkSpec::for_kind(benchmark_kind_from_name(args.kind));
    spec.seed = args.seed;
    spec.n_draws = args.n_draws;
    spec.use_neighbors = args.neighbors;
    if (args.lookback > 0) spec.lookback_months = args.lookback;

    std::vector<std::int32_t> units = panel.unit_ids();
    std::optional<GridTopology> topo;
    if (!args.mask.empty()) {
        if (panel.level() != Level::pgm)
            throw std::domain_error("--mask applies only to pgm observation panels");
        const std::vector<std::int32_t> mask = io::read_mask(args.mask);
        topo.emplace(mask, args.rook ? Contiguity::rook : Contiguity::queen);
        std::vector<std::int32_t> masked;
        for (const std::int32_t u : units)
            if (topo->contains(u)) masked.push_back(u);
        if (masked.empty()) throw std::runtime_error("mask excludes every panel unit");
        units = std::move(masked);
    } else if (panel.level() == Level::pgm) {
        topo.emplace(units, args.rook ? Contiguity::rook : Contiguity::queen);
    }

    const ForecastTable table =
        generate_benchmark(spec, panel, units, windows, topo ? &*topo : nullptr);

    const std::string out = args.out.empty() ? args.kind + ".csv" : args.out;
    io::write_submission(table, out);
    std::cout << "wrote " << table.cell_count() << " cells to " << out << "\n";
    return kExitOk;
}

struct EnsembleArgs {
    std::string members_dir;
    std::string scores_dir;
    std::string rule = "inverse";
    double tau = 1.0;
    int n_draws = 1000;
    std::uint64_t seed = 0;
    std::string out = "ensemble.csv";
};

int run_ensemble(const EnsembleArgs& args) {
    std::map<std::string, ForecastTable> members;
    for (const fs::path& file : csv_files_in(args.members_dir)) {
        const std::string name = file.stem().string();
        if (!members.emplace(name, io::read_submission(file.string())).second)
            throw std::runtime_error("duplicate member name '" + name + "'");
    }

    std::map<std::string, ScoreTable> tables;
    for (const auto& [name, table] : members) {
        const fs::path score_file = fs::path(args.scores_dir) / (name + ".csv");
        if (!fs::exists(score_file))
            throw std::runtime_error("no test scores for member '" + name + "': expected " +
                                     score_file.string());
        tables.emplace(name, io::read_score_table(score_file.string()));
    }

    EnsembleSpec spec;
    spec.weights = compute_weights(tables, weight_rule_from_name(args.rule), args.tau);
    spec.n_draws = args.n_draws;
    spec.seed = args.seed;

    std::cout << "weights (" << args.rule << "):\n";
    for (const auto& [name, w] : spec.weights)
        std::cout << "  " << name << " " << io::format_double(w) << "\n";

    const ForecastTable pooled = pool_submissions(members, spec);
    io::write_submission(pooled, args.out);
    std::cout << "wrote " << pooled.cell_count() << " cells to " << args.out << "\n";
    return kExitOk;
}

struct SynthArgs {
    std::string level = "cm";
    int units = 100;
    std::string months = "2010-01..2015-12";
    std::uint64_t seed = 0;
    double zero_share = -1.0;  // negative = level default
    double tail_mean = 30.0;
    double tail_dispersion = 0.5;
    double persistence = 0.9;
    std::string out;
};

int run_synth(const SynthArgs& args) {
    SynthSpec spec = SynthSpec::defaults(parse_level(args.level));
    spec.n_units = args.units;
    std::tie(spec.first_month, spec.last_month) = parse_month_range(args.months);
    spec.seed = args.seed;
    if (args.zero_share >= 0.0) spec.zero_share = args.zero_share;
    spec.tail_mean = args.tail_mean;
    spec.tail_dispersion = args.tail_dispersion;
    spec.persistence = args.persistence;

    const ObservationPanel panel = generate_panel(spec);
    const std::string out = args.out.empty() ? "synth_" + args.level + ".csv" : args.out;
    io::write_observations(panel, out);
    std::cout << "wrote " << panel.unit_count() << " units x "
              << (spec.last_month - spec.first_month + 1) << " months to " << out << "\n";
    return kExitOk;
}

struct ReportArgs {
    std::vector<std::string> scores;
    std::string format = "md";
};

int run_report(const ReportArgs& args) {
    if (args.format != "md" && args.format != "csv")
        throw std::domain_error("--format must be md or csv, got '" + args.format + "'");

    std::map<std::string, ScoreTable> tables;
    for (const std::string& path : args.scores) {
        const std::string name = path_stem(path);
        if (!tables.emplace(name, io::read_score_table(path)).second)
            throw std::runtime_error("duplicate submission name '" + name + "'");
    }
    const std::vector<LeaderboardEntry> board = rank_submissions(tables);

    if (args.format == "csv") {
        std::vector<std::pair<std::string, const ScoreTable*>> ordered;
        for (const LeaderboardEntry& e : board)
            ordered.emplace_back(e.name, &tables.at(e.name));
        std::cout << io::render_aggregates_csv(ordered);
        return kExitOk;
    }
    for (const LeaderboardEntry& e : board)
        std::cout << io::render_score_table_md(e.name, tables.at(e.name)) << "\n";
    if (board.size() > 1) std::cout << io::render_leaderboard_md(board);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scoring and benchmarking engine for probabilistic fatality forecasts"};
    app.require_subcommand(1);

    ValidateArgs validate_args;
    CLI::App* validate = app.add_subcommand("validate", "check a submission file");
    validate->add_option("submission", validate_args.submission, "submission file")->required();
    validate->add_option("--level", validate_args.level, "expected level: cm or pgm");
    validate->add_option("--universe", validate_args.universe,
                         "cell universe the submission must cover");

    ScoreArgs score_args;
    CLI::App* score = app.add_subcommand("score", "score a submission against observations");
    score->add_option("submission", score_args.submission, "submission file")->required();
    score->add_option("--obs", score_args.obs, "observation file")->required();
    score->add_option("--windows", score_args.windows, "evaluation window config")->required();
    score->add_option("--ign-mode", score_args.ign_mode, "resampling: tile or fourier");
    score->add_option("--mis-q", score_args.mis_q, "interval quantiles: standard or compat");
    score->add_option("--out", score_args.out, "score table output path");
    score->add_flag("--point", score_args.point,
                    "submission holds point predictions; expand via Poisson");
    score->add_option("--n-draws", score_args.n_draws, "draws per cell for --point");
    score->add_option("--seed", score_args.seed, "seed for --point expansion");

    BenchmarkArgs benchmark_args;
    CLI::App* benchmark = app.add_subcommand("benchmark", "generate a benchmark forecast");
    benchmark
        ->add_option("kind", benchmark_args.kind,
                     "exactly_zero, last_historical, conflictology, or bootstrap")
        ->required();
    benchmark->add_option("--obs", benchmark_args.obs, "observation file")->required();
    benchmark->add_option("--windows", benchmark_args.windows, "evaluation window config")
        ->required();
    benchmark->add_option("--seed", benchmark_args.seed, "random seed");
    benchmark->add_option("--n-draws", benchmark_args.n_draws, "draws per cell");
    benchmark->add_option("--lookback", benchmark_args.lookback,
                          "history months (default 12, bootstrap 240)");
    benchmark->add_flag("--neighbors", benchmark_args.neighbors,
                        "pool grid neighbors (pgm conflictology)");
    benchmark->add_flag("--rook", benchmark_args.rook, "rook contiguity instead of queen");
    benchmark->add_option("--mask", benchmark_args.mask, "region mask of grid ids (pgm)");
    benchmark->add_option("--out", benchmark_args.out, "forecast output path");

    EnsembleArgs ensemble_args;
    CLI::App* ensemble = app.add_subcommand("ensemble", "pool submissions with CRPS weights");
    ensemble->add_option("--members", ensemble_args.members_dir, "directory of member forecasts")
        ->required();
    ensemble
        ->add_option("--test-scores", ensemble_args.scores_dir,
                     "directory of member score tables (same file stems)")
        ->required();
    ensemble->add_option("--rule", ensemble_args.rule, "weight rule: inverse or softmin");
    ensemble->add_option("--tau", ensemble_args.tau, "softmin temperature");
    ensemble->add_option("--n-draws", ensemble_args.n_draws, "draws per pooled cell");
    ensemble->add_option("--seed", ensemble_args.seed, "random seed");
    ensemble->add_option("--out", ensemble_args.out, "pooled forecast output path");

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic observation panel");
    synth->add_option("--level", synth_args.level, "cm or pgm");
    synth->add_option("--units", synth_args.units, "number of units");
    synth->add_option("--months", synth_args.months, "range, e.g. 2010-01..2015-12");
    synth->add_option("--seed", synth_args.seed, "random seed");
    synth->add_option("--zero-share", synth_args.zero_share,
                      "share of zero months (default 0.87 cm, 0.99 pgm)");
    synth->add_option("--tail-mean", synth_args.tail_mean, "negative-binomial mean");
    synth->add_option("--tail-dispersion", synth_args.tail_dispersion,
                      "negative-binomial dispersion");
    synth->add_option("--persistence", synth_args.persistence,
                      "month-to-month conflict persistence in [0,1)");
    synth->add_option("--out", synth_args.out, "observation output path");

    ReportArgs report_args;
    CLI::App* report = app.add_subcommand("report", "format score tables and rank submissions");
    report->add_option("scores", report_args.scores, "score table files")
        ->required()
        ->expected(-1);
    report->add_option("--format", report_args.format, "md or csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitFatal;
    }

    try {
        if (*validate) return run_validate(validate_args);
        if (*score) return run_score(score_args);
        if (*benchmark) return run_benchmark(benchmark_args);
        if (*ensemble) return run_ensemble(ensemble_args);
        if (*synth) return run_synth(synth_args);
        if (*report) return run_report(report_args);
        std::cerr << "error: no subcommand\n";
        return kExitFatal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFatal;
    }
}
