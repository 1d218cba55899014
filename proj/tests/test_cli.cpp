// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "belldisc/cli.hpp"

using namespace belldisc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("belldisc_test_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("identical config and seed give byte-identical csv") {
    TempDir tmp;
    const fs::path a = tmp.path / "a.csv";
    const fs::path b = tmp.path / "b.csv";
    const std::vector<std::string> base = {"sweep-lambda", "--shots", "2000",
                                           "--lambda-grid", "0,0.5,1", "--seed", "42"};
    auto with_out = [&](const fs::path& p) {
        std::vector<std::string> args = base;
        args.push_back("--out");
        args.push_back(p.string());
        return args;
    };
    CHECK(run_cli(with_out(a)) == 0);
    CHECK(run_cli(with_out(b)) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find("# figure: success-vs-lambda") != std::string::npos);
    CHECK(slurp(a).find("lambda,p_succ,stderr,shots") != std::string::npos);
}

TEST_CASE("svg plots are derived next to the csv") {
    TempDir tmp;
    const fs::path out = tmp.path / "curve.csv";
    CHECK(run_cli({"sweep-lambda", "--shots", "500", "--lambda-grid", "0,1", "--out",
                   out.string(), "--format", "svg-plot"}) == 0);
    const fs::path svg = tmp.path / "curve.svg";
    CHECK(fs::exists(svg));
    CHECK(slurp(svg).find("<svg") != std::string::npos);
}

TEST_CASE("config errors exit with code 2") {
    CHECK(run_cli({"discriminate", "--noise", "nonsense"}) == 2);
    CHECK(run_cli({"discriminate", "--noise", "0.5,2.0,0"}) == 2);
    CHECK(run_cli({"sweep-lambda", "--format", "svg-plot"}) == 2);  // needs --out
    CHECK(run_cli({"sweep-lambda", "--lambda-grid", "0,1.7"}) == 2);
    CHECK(run_cli({"no-such-command"}) == 2);
}

TEST_CASE("discriminate and truth-table emit the documented columns") {
    TempDir tmp;
    const fs::path disc = tmp.path / "disc.csv";
    CHECK(run_cli({"discriminate", "--shots", "200", "--out", disc.string()}) == 0);
    const std::string disc_text = slurp(disc);
    CHECK(disc_text.find("target,shots,p_d,p_d_se,p_f,p_f_se,p_succ,p_succ_se") !=
          std::string::npos);
    CHECK(disc_text.find("# figure: discrimination-rates") != std::string::npos);
    // noiseless: every rate is exactly 1
    CHECK(disc_text.find("phi+,200,1,0,1,0,1,0") != std::string::npos);
    CHECK(disc_text.find("average,800,1,0,1,0,1,0") != std::string::npos);

    const fs::path truth = tmp.path / "truth.csv";
    CHECK(run_cli({"truth-table", "--shots", "150", "--out", truth.string()}) == 0);
    const std::string truth_text = slurp(truth);
    CHECK(truth_text.find("target,shots,tt,tf,ft,ff,tt_rate,tf_rate,ft_rate,ff_rate") !=
          std::string::npos);
    CHECK(truth_text.find("psi-,150,150,0,0,0,1,0,0,0") != std::string::npos);
}

TEST_CASE("event-table command cross-checks the simulation") {
    TempDir tmp;
    const fs::path out = tmp.path / "events.csv";
    CHECK(run_cli({"event-table", "--out", out.string()}) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("ancilla1,ancilla2,p_f,p_d") != std::string::npos);
    CHECK(text.find("phi+,phi+,1,1") != std::string::npos);
    CHECK(text.find("psi-,phi-,0,1") != std::string::npos);
}

TEST_CASE("locc-bound baseline mode reports the closed-form values") {
    TempDir tmp;
    const fs::path out = tmp.path / "bound.csv";
    CHECK(run_cli({"locc-bound", "--baseline-only", "--out", out.string()}) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("# baseline random-guess p_win=0.25") != std::string::npos);
    CHECK(text.find("# baseline z-measurement p_win=0.25") != std::string::npos);
}

TEST_CASE("locc-bound runs a small campaign") {
    TempDir tmp;
    const fs::path out = tmp.path / "campaign.csv";
    CHECK(run_cli({"locc-bound", "--dims", "1", "--restarts", "2", "--iterations", "50",
                   "--out", out.string()}) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("restart,iteration,p_win") != std::string::npos);
    CHECK(text.find("# summary best_p_win=") != std::string::npos);
    CHECK(fs::exists(tmp.path / "campaign.best.json"));

    // degenerate campaign still produces valid output within the bound
    const fs::path tiny = tmp.path / "tiny.csv";
    CHECK(run_cli({"locc-bound", "--dims", "2", "--restarts", "1", "--iterations", "1",
                   "--out", tiny.string()}) == 0);
    CHECK(slurp(tiny).find("# max_evaluated=") != std::string::npos);
}

TEST_CASE("single-shot runs produce valid rows") {
    TempDir tmp;
    const fs::path out = tmp.path / "one.csv";
    CHECK(run_cli({"discriminate", "--shots", "1", "--out", out.string()}) == 0);
    CHECK(slurp(out).find("phi+,1,1,0,1,0,1,0") != std::string::npos);
}

TEST_CASE("flags override config files which override defaults") {
    TempDir tmp;
    const fs::path cfg = tmp.path / "run.toml";
    {
        std::ofstream out(cfg);
        out << "[sweep-lambda]\nshots=500\nlambda-grid=\"0,1\"\nseed=99\n";
    }
    const fs::path from_config = tmp.path / "config.csv";
    CHECK(run_cli({"sweep-lambda", "--config", cfg.string(), "--out",
                   from_config.string()}) == 0);
    const std::string config_text = slurp(from_config);
    CHECK(config_text.find("# seed=99 shots=500") != std::string::npos);

    const fs::path overridden = tmp.path / "flag.csv";
    CHECK(run_cli({"sweep-lambda", "--config", cfg.string(), "--shots", "20", "--out",
                   overridden.string()}) == 0);
    CHECK(slurp(overridden).find("# seed=99 shots=20") != std::string::npos);
}

TEST_CASE("session-check validates the harness") {
    TempDir tmp;
    const fs::path transcript = tmp.path / "transcript.txt";
    CHECK(run_cli({"session-check", "--trials", "24", "--fuzz", "8", "--transcript",
                   transcript.string()}) == 0);
    const std::string text = slurp(transcript);
    CHECK(text.find("referee: resources prepared") != std::string::npos);
    CHECK(text.find("broadcast round 1") != std::string::npos);
}
