// SPDX-License-Identifier: Apache-2.0
#include "belldisc/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "belldisc/locc.hpp"
#include "belldisc/noise.hpp"
#include "belldisc/protocol.hpp"
#include "belldisc/report.hpp"
#include "belldisc/session.hpp"
#include "belldisc/werner.hpp"

namespace belldisc {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240811;

struct CommonOpts {
    std::int64_t shots = 10000;
    std::uint64_t seed = kDefaultSeed;
    std::string noise_spec = "0,0,0";
    std::string out;
    std::string format = "csv";
    int parallel = 0;  // 0 = all available cores
};

NoiseModel parse_noise(const std::string& spec) {
    if (spec == "calibrated") return NoiseModel::calibrated();
    NoiseModel model;
    char comma1 = 0, comma2 = 0;
    std::istringstream in(spec);
    if (!(in >> model.p1 >> comma1 >> model.p2 >> comma2 >> model.readout_flip) ||
        comma1 != ',' || comma2 != ',' || !(in >> std::ws).eof())
        throw CLI::ValidationError("--noise", "expected p1,p2,readout or 'calibrated'");
    validate(model);
    return model;
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> grid;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        grid.push_back(std::stod(item, &used));
        if (used != item.size())
            throw CLI::ValidationError("--lambda-grid", "malformed number: " + item);
    }
    if (grid.empty()) throw CLI::ValidationError("--lambda-grid", "empty grid");
    return grid;
}

// CSV goes to --out (stdout when empty); svg-plot derives a sibling .svg.
struct OutputTarget {
    std::string csv_path;  // empty = stdout
    std::string svg_path;  // empty = no plot
};

OutputTarget resolve_output(const CommonOpts& opts) {
    if (opts.format != "csv" && opts.format != "svg-plot")
        throw CLI::ValidationError("--format", "expected csv or svg-plot");
    OutputTarget target;
    target.csv_path = opts.out;
    if (opts.format == "svg-plot") {
        if (opts.out.empty())
            throw CLI::ValidationError("--format", "svg-plot requires --out");
        std::string stem = opts.out;
        if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv")
            stem.resize(stem.size() - 4);
        target.svg_path = stem + ".svg";
    }
    return target;
}

class OutputFile {
  public:
    explicit OutputFile(const std::string& path) : path_(path) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw std::runtime_error("cannot open output file: " + path);
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void finish() {
        if (file_ && !*file_) throw std::runtime_error("write failed: " + path_);
    }

  private:
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
};

void write_common_header(std::ostream& out, const std::string& command,
                         const std::string& figure, const CommonOpts& opts,
                         const NoiseModel& noise) {
    out << "# belldisc " << command << '\n';
    if (!figure.empty()) out << "# figure: " << figure << '\n';
    out << "# seed=" << opts.seed << " shots=" << opts.shots << " noise="
        << format_double(noise.p1) << ',' << format_double(noise.p2) << ','
        << format_double(noise.readout_flip) << '\n';
}

// ---------------------------------------------------------------------------

int cmd_discriminate(const CommonOpts& opts) {
    const NoiseModel noise = parse_noise(opts.noise_spec);
    const OutputTarget target = resolve_output(opts);
    const std::vector<BellLabel> targets(kBellLabels.begin(), kBellLabels.end());
    const ExperimentStats stats =
        run_experiment(targets, opts.shots, ideal_ancillas(), noise, opts.seed, opts.parallel);

    OutputFile out(target.csv_path);
    write_common_header(out.stream(), "discriminate", "discrimination-rates", opts, noise);
    out.stream() << "target,shots,p_d,p_d_se,p_f,p_f_se,p_succ,p_succ_se\n";
    for (const TargetStats& t : stats.per_target) {
        out.stream() << to_string(t.target) << ',' << t.shots << ','
                     << format_double(t.p_d()) << ',' << format_double(t.stderr_of(t.p_d()))
                     << ',' << format_double(t.p_f()) << ','
                     << format_double(t.stderr_of(t.p_f())) << ','
                     << format_double(t.p_succ()) << ','
                     << format_double(t.stderr_of(t.p_succ())) << '\n';
    }
    out.stream() << "average," << stats.total_shots() << ',' << format_double(stats.p_d())
                 << ',' << format_double(stats.pooled_stderr(stats.p_d())) << ','
                 << format_double(stats.p_f()) << ','
                 << format_double(stats.pooled_stderr(stats.p_f())) << ','
                 << format_double(stats.p_succ()) << ','
                 << format_double(stats.pooled_stderr(stats.p_succ())) << '\n';
    out.finish();

    if (!target.svg_path.empty()) {
        OutputFile svg(target.svg_path);
        std::vector<std::string> groups;
        SvgBarSeries pd{"P_D", "#1f77b4", {}}, pf{"P_F", "#ff7f0e", {}};
        for (const TargetStats& t : stats.per_target) {
            groups.push_back(to_string(t.target));
            pd.values.push_back(t.p_d());
            pf.values.push_back(t.p_f());
        }
        write_svg_bars(svg.stream(), "Discrimination and preservation per Bell state", groups,
                       {pd, pf});
        svg.finish();
    }
    return 0;
}

int cmd_truth_table(const CommonOpts& opts) {
    const NoiseModel noise = parse_noise(opts.noise_spec);
    const OutputTarget target = resolve_output(opts);
    const std::vector<BellLabel> targets(kBellLabels.begin(), kBellLabels.end());
    const ExperimentStats stats =
        run_experiment(targets, opts.shots, ideal_ancillas(), noise, opts.seed, opts.parallel);

    OutputFile out(target.csv_path);
    write_common_header(out.stream(), "truth-table", "truth-table", opts, noise);
    out.stream() << "target,shots,tt,tf,ft,ff,tt_rate,tf_rate,ft_rate,ff_rate\n";
    for (const TargetStats& t : stats.per_target) {
        out.stream() << to_string(t.target) << ',' << t.shots << ',' << t.tt << ',' << t.tf
                     << ',' << t.ft << ',' << t.ff << ','
                     << format_double(t.rate(TruthClass::TT)) << ','
                     << format_double(t.rate(TruthClass::TF)) << ','
                     << format_double(t.rate(TruthClass::FT)) << ','
                     << format_double(t.rate(TruthClass::FF)) << '\n';
    }
    out.stream() << "average," << stats.total_shots() << ",,,,,"
                 << format_double(stats.rate(TruthClass::TT)) << ','
                 << format_double(stats.rate(TruthClass::TF)) << ','
                 << format_double(stats.rate(TruthClass::FT)) << ','
                 << format_double(stats.rate(TruthClass::FF)) << '\n';
    out.finish();

    if (!target.svg_path.empty()) {
        OutputFile svg(target.svg_path);
        std::vector<std::string> groups;
        SvgBarSeries tt{"TT", "#2ca02c", {}}, tf{"TF", "#ff7f0e", {}}, ft{"FT", "#1f77b4", {}},
            ff{"FF", "#d62728", {}};
        for (const TargetStats& t : stats.per_target) {
            groups.push_back(to_string(t.target));
            tt.values.push_back(t.rate(TruthClass::TT));
            tf.values.push_back(t.rate(TruthClass::TF));
            ft.values.push_back(t.rate(TruthClass::FT));
            ff.values.push_back(t.rate(TruthClass::FF));
        }
        write_svg_bars(svg.stream(), "Truth table per Bell state", groups, {tt, tf, ft, ff});
        svg.finish();
    }
    return 0;
}

int cmd_sweep_lambda(const CommonOpts& opts, const std::string& grid_spec) {
    const NoiseModel noise = parse_noise(opts.noise_spec);
    const OutputTarget target = resolve_output(opts);
    const std::vector<double> grid = parse_grid(grid_spec);
    const std::vector<SweepPoint> points =
        sweep_lambda(grid, opts.shots, noise, opts.seed, opts.parallel);

    OutputFile out(target.csv_path);
    write_common_header(out.stream(), "sweep-lambda", "success-vs-lambda", opts, noise);
    write_sweep_csv(out.stream(), points);
    out.finish();

    if (!target.svg_path.empty()) {
        OutputFile svg(target.svg_path);
        SvgSeries analytic{"(1 - 3*lambda/4)^2", "#1f77b4", true, {}};
        for (int i = 0; i <= 100; ++i) {
            const double lambda = i / 100.0;
            analytic.points.emplace_back(lambda, analytic_success(lambda));
        }
        SvgSeries empirical{"simulated", "#d62728", false, {}};
        for (const SweepPoint& p : points) empirical.points.emplace_back(p.lambda, p.p_succ);
        write_svg_chart(svg.stream(), "Success probability vs ancilla depolarization",
                        "lambda", "P_succ", {analytic, empirical});
        svg.finish();
    }
    return 0;
}

int cmd_locc_bound(const CommonOpts& opts, const std::string& dims_spec, int restarts,
                   std::int64_t iterations, bool baseline_only) {
    const OutputTarget target = resolve_output(opts);
    OutputFile out(target.csv_path);
    write_common_header(out.stream(), "locc-bound", "", opts, NoiseModel::noiseless());

    double max_seen = 0.0;
    const WinProbability random_guess = win_probability(random_guess_strategy());
    const WinProbability z_meas = win_probability(z_measurement_strategy());
    max_seen = std::max({max_seen, random_guess.value, z_meas.value});
    out.stream() << "# baseline random-guess p_win=" << format_double(random_guess.value)
                 << '\n'
                 << "# baseline z-measurement p_win=" << format_double(z_meas.value) << '\n';
    std::cout << "baseline random-guess: p_win = " << format_double(random_guess.value) << '\n'
              << "baseline z-measurement: p_win = " << format_double(z_meas.value) << '\n';

    double best = -1.0;
    int best_dim = 0;
    std::int64_t best_restart = 0, best_iter = 0;
    std::unique_ptr<KrausStrategy> best_strategy;

    out.stream() << "restart,iteration,p_win\n";
    if (!baseline_only) {
        for (double dim_value : parse_grid(dims_spec)) {
            const int dim = static_cast<int>(dim_value);
            if (dim != 1 && dim != 2 && dim != 4)
                throw CLI::ValidationError("--dims", "ancilla dims must be 1, 2 or 4");
            OptimizeOptions options;
            options.ancilla_dim = dim;
            options.restarts = restarts;
            options.iterations = iterations;
            options.seed = opts.seed + static_cast<std::uint64_t>(dim);
            options.parallel = opts.parallel;
            const OptimizeResult result = optimize_win_probability(options);
            out.stream() << "# ancilla_dim=" << dim << '\n';
            for (const CampaignRow& row : result.log)
                out.stream() << row.restart << ',' << row.iteration << ','
                             << format_double(row.p_win) << '\n';
            max_seen = std::max(max_seen, result.max_evaluated);
            if (result.best_value > best) {
                best = result.best_value;
                best_dim = dim;
                best_restart = result.best_restart;
                best_iter = result.best_iteration;
                best_strategy = std::make_unique<KrausStrategy>(result.best);
            }
            std::cout << "ancilla_dim " << dim << ": best p_win = "
                      << format_double(result.best_value)
                      << " (max evaluated " << format_double(result.max_evaluated) << ")\n";
        }
        out.stream() << "# summary best_p_win=" << format_double(best) << " ancilla_dim="
                     << best_dim << " restart=" << best_restart << " iteration=" << best_iter
                     << '\n';
        std::cout << "campaign best p_win = " << format_double(best) << " (ancilla_dim "
                  << best_dim << ", restart " << best_restart << ", iteration " << best_iter
                  << ")\n";

        if (best_strategy && !target.csv_path.empty()) {
            // Parameters of the best strategy, for reruns and inspection.
            nlohmann::json doc;
            doc["p_win"] = best;
            doc["ancilla_dim"] = best_dim;
            auto matrix_json = [](const Matrix& m) {
                nlohmann::json rows = nlohmann::json::array();
                for (int r = 0; r < m.rows; ++r) {
                    nlohmann::json row = nlohmann::json::array();
                    for (int c = 0; c < m.cols; ++c)
                        row.push_back({m.at(r, c).real(), m.at(r, c).imag()});
                    rows.push_back(row);
                }
                return rows;
            };
            doc["alice_unitary"] = matrix_json(best_strategy->alice.unitary);
            doc["bob_unitary"] = matrix_json(best_strategy->bob.unitary);
            nlohmann::json guesses = nlohmann::json::array();
            for (BellLabel l : best_strategy->guess_map) guesses.push_back(to_string(l));
            doc["guess_map"] = guesses;
            std::string stem = target.csv_path;
            if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv")
                stem.resize(stem.size() - 4);
            OutputFile json_out(stem + ".best.json");
            json_out.stream() << doc.dump(2) << '\n';
            json_out.finish();
        }
    }
    out.stream() << "# max_evaluated=" << format_double(max_seen) << '\n';
    out.finish();

    if (max_seen > kClassicalBound + kBoundTolerance)
        throw BoundViolation("strategy evaluated to " + format_double(max_seen) +
                             ", above the classical bound 1/4");
    return 0;
}

int cmd_event_table(const CommonOpts& opts) {
    const OutputTarget target = resolve_output(opts);
    const std::vector<EventTableRow> expected = event_table();
    const std::vector<EventTableRow> derived = derive_event_table_by_simulation();

    OutputFile out(target.csv_path);
    write_common_header(out.stream(), "event-table", "event-table", opts,
                        NoiseModel::noiseless());
    out.stream() << "ancilla1,ancilla2,p_f,p_d\n";
    for (const EventTableRow& row : expected)
        out.stream() << to_string(row.ancilla1) << ',' << to_string(row.ancilla2) << ','
                     << row.p_f << ',' << row.p_d << '\n';
    out.finish();

    if (derived != expected) {
        std::cerr << "event-table: simulation-derived table disagrees with the static table\n";
        return 1;
    }
    std::cout << "event-table: simulation-derived table matches (16/16 rows)\n";
    return 0;
}

int cmd_session_check(const CommonOpts& opts, std::int64_t trials, std::int64_t fuzz,
                      const std::string& transcript_path) {
    const NoiseModel noise = parse_noise(opts.noise_spec);

    std::int64_t mismatches = 0;
    for (std::int64_t i = 0; i < trials; ++i) {
        const BellLabel target = kBellLabels[static_cast<std::size_t>(i) % 4];
        const std::uint64_t trial_seed =
            Rng::derive(opts.seed, static_cast<std::uint64_t>(i)).next_u64();
        Rng rng(trial_seed);
        const ShotRecord mono = run_trial(target, BellLabel::PhiPlus, BellLabel::PhiPlus,
                                          noise, rng);
        const SessionResult session = run_protocol_session(
            target, BellLabel::PhiPlus, BellLabel::PhiPlus, noise, trial_seed);
        if (!(mono == session.record) || session.alice_guess != session.bob_guess)
            ++mismatches;
    }

    std::int64_t accepted_violations = 0;
    for (std::int64_t i = 0; i < fuzz; ++i) {
        Referee referee(BellLabel::PhiPlus, BellLabel::PhiPlus, BellLabel::PhiPlus, noise,
                        opts.seed + static_cast<std::uint64_t>(i));
        const WireMap& w = referee.wires();
        // Alternate a few cross-party shapes; all must be rejected.
        LocalRequest bad;
        switch (i % 4) {
            case 0: bad = {PartyId::Alice, Gate::cnot(w.sA, w.b2)}; break;
            case 1: bad = {PartyId::Bob, Gate::cnot(w.b1, w.sA)}; break;
            case 2: bad = {PartyId::Alice, Gate::h(w.b1)}; break;
            default: bad = {PartyId::Bob, MeasureAction{{w.a1}}}; break;
        }
        try {
            referee.execute(bad);
            ++accepted_violations;
        } catch (const LocalityViolation&) {
        }
    }

    std::cout << "session-check: " << (trials - mismatches) << '/' << trials
              << " trials identical to the monolithic runner\n"
              << "session-check: " << (fuzz - accepted_violations) << '/' << fuzz
              << " cross-party requests rejected\n";

    if (!transcript_path.empty()) {
        OutputFile out(transcript_path);
        const SessionResult sample = run_protocol_session(
            BellLabel::PsiMinus, BellLabel::PhiPlus, BellLabel::PhiPlus, noise, opts.seed);
        for (const std::string& line : sample.transcript) out.stream() << line << '\n';
        out.finish();
    }
    return (mismatches == 0 && accepted_violations == 0) ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Nondestructive Bell-state discrimination simulator"};
    app.set_config("--config", "", "Read defaults from a TOML/INI config file");
    app.fallthrough();  // lets --config and friends appear after the subcommand
    app.require_subcommand(1);

    CommonOpts opts;
    auto add_common = [&](CLI::App* cmd, bool with_shots = true) {
        if (with_shots)
            cmd->add_option("--shots", opts.shots, "Trials per target / per grid point")
                ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", opts.seed, "Master RNG seed (fixed default for reproducibility)");
        cmd->add_option("--noise", opts.noise_spec,
                        "Gate noise as p1,p2,readout or 'calibrated'");
        cmd->add_option("--out", opts.out, "Output CSV path (stdout if omitted)");
        cmd->add_option("--format", opts.format, "csv | svg-plot (svg derived next to CSV)");
        cmd->add_option("--parallel", opts.parallel, "Worker threads (0 = all cores)");
    };

    CLI::App* discriminate = app.add_subcommand(
        "discriminate",
        "Per-target discrimination/preservation rates. CSV columns: "
        "target,shots,p_d,p_d_se,p_f,p_f_se,p_succ,p_succ_se");
    add_common(discriminate);

    CLI::App* truth = app.add_subcommand(
        "truth-table",
        "Per-target TT/TF/FT/FF rates. CSV columns: "
        "target,shots,tt,tf,ft,ff,tt_rate,tf_rate,ft_rate,ff_rate");
    add_common(truth);

    std::string grid_spec = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
    CLI::App* sweep = app.add_subcommand(
        "sweep-lambda",
        "Success probability vs Werner weight. CSV columns: lambda,p_succ,stderr,shots");
    add_common(sweep);
    sweep->add_option("--lambda-grid", grid_spec, "Comma-separated weights in [0,1]");

    std::string dims_spec = "1,2,4";
    int restarts = 20;
    std::int64_t iterations = 800;
    bool baseline_only = false;
    CLI::App* bound = app.add_subcommand(
        "locc-bound",
        "Certify the 1/4 bound for unentangled strategies. Campaign CSV columns: "
        "restart,iteration,p_win");
    add_common(bound, false);
    bound->add_option("--dims", dims_spec, "Ancilla dimensions to search (subset of 1,2,4)");
    bound->add_option("--restarts", restarts, "Random restarts per dimension")
        ->check(CLI::PositiveNumber);
    bound->add_option("--iterations", iterations, "Hill-climb iterations per restart")
        ->check(CLI::PositiveNumber);
    bound->add_flag("--baseline-only", baseline_only,
                    "Evaluate only the two closed-form baseline strategies");

    CLI::App* events = app.add_subcommand(
        "event-table",
        "Per-ancilla-basis preservation/discrimination table, cross-checked against exact "
        "simulation. CSV columns: ancilla1,ancilla2,p_f,p_d");
    add_common(events, false);

    std::int64_t trials = 1000, fuzz = 100;
    std::string transcript_path;
    CLI::App* session = app.add_subcommand(
        "session-check",
        "Verify the two-party harness: record equality with the monolithic runner and "
        "rejection of cross-party requests");
    add_common(session, false);
    session->add_option("--trials", trials, "Seeded comparison trials")
        ->check(CLI::PositiveNumber);
    session->add_option("--fuzz", fuzz, "Cross-party requests to inject")
        ->check(CLI::PositiveNumber);
    session->add_option("--transcript", transcript_path, "Write a sample session transcript");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (discriminate->parsed()) return cmd_discriminate(opts);
        if (truth->parsed()) return cmd_truth_table(opts);
        if (sweep->parsed()) return cmd_sweep_lambda(opts, grid_spec);
        if (bound->parsed())
            return cmd_locc_bound(opts, dims_spec, restarts, iterations, baseline_only);
        if (events->parsed()) return cmd_event_table(opts);
        if (session->parsed()) return cmd_session_check(opts, trials, fuzz, transcript_path);
    } catch (const BoundViolation& e) {
        std::cerr << "bound violation: " << e.what() << '\n';
        return 3;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace belldisc
