// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Expected values are frozen here, independent of the
// library internals they check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "belldisc/locc.hpp"
#include "belldisc/noise.hpp"
#include "belldisc/protocol.hpp"
#include "belldisc/session.hpp"
#include "belldisc/werner.hpp"

using namespace belldisc;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int index, const std::string& name, bool ok, const std::string& detail,
            double seconds) {
    std::printf("[%s] criterion %d: %s (%s, %.2fs)\n", ok ? "PASS" : "FAIL", index,
                name.c_str(), detail.c_str(), seconds);
    if (!ok) ++failures;
}

// The announcement table for ideal ancillas: outcome strings per target.
const std::map<BellLabel, std::set<std::string>> kAnnouncementRows = {
    {BellLabel::PhiPlus, {"0000", "0011", "1100", "1111"}},
    {BellLabel::PhiMinus, {"0111", "0100", "1000", "1011"}},
    {BellLabel::PsiPlus, {"0001", "0010", "1110", "1101"}},
    {BellLabel::PsiMinus, {"0101", "0110", "1001", "1010"}},
};

// Reference event table for target phi+: (ancilla1, ancilla2) -> (p_f, p_d).
const std::map<std::pair<BellLabel, BellLabel>, std::pair<int, int>> kEventRows = {
    {{BellLabel::PhiPlus, BellLabel::PhiPlus}, {1, 1}},
    {{BellLabel::PhiPlus, BellLabel::PsiPlus}, {1, 0}},
    {{BellLabel::PhiPlus, BellLabel::PsiMinus}, {0, 0}},
    {{BellLabel::PhiPlus, BellLabel::PhiMinus}, {0, 0}},
    {{BellLabel::PsiPlus, BellLabel::PhiPlus}, {0, 1}},
    {{BellLabel::PsiPlus, BellLabel::PsiPlus}, {0, 0}},
    {{BellLabel::PsiPlus, BellLabel::PsiMinus}, {0, 0}},
    {{BellLabel::PsiPlus, BellLabel::PhiMinus}, {0, 0}},
    {{BellLabel::PsiMinus, BellLabel::PhiPlus}, {0, 0}},
    {{BellLabel::PsiMinus, BellLabel::PsiPlus}, {0, 0}},
    {{BellLabel::PsiMinus, BellLabel::PsiMinus}, {0, 0}},
    {{BellLabel::PsiMinus, BellLabel::PhiMinus}, {0, 1}},
    {{BellLabel::PhiMinus, BellLabel::PhiPlus}, {1, 0}},
    {{BellLabel::PhiMinus, BellLabel::PsiPlus}, {1, 0}},
    {{BellLabel::PhiMinus, BellLabel::PsiMinus}, {0, 0}},
    {{BellLabel::PhiMinus, BellLabel::PhiMinus}, {0, 1}},
};

void criterion_1_noiseless_exactness() {
    Timer timer;
    bool ok = true;
    std::string detail = "P_D=P_F=P_succ=1 exactly, outcome sets verbatim";
    for (BellLabel target : kBellLabels) {
        const TrialDistribution dist =
            enumerate_trial(target, BellLabel::PhiPlus, BellLabel::PhiPlus);
        if (dist.p_d != 1.0 || dist.p_f != 1.0 || dist.p_succ != 1.0) {
            ok = false;
            detail = std::string("rates not exactly 1 for ") + to_string(target);
        }
        std::set<std::string> seen;
        for (const BranchOutcome& b : dist.branches) seen.insert(b.ancilla_bits);
        if (seen != kAnnouncementRows.at(target)) {
            ok = false;
            detail = std::string("outcome set mismatch for ") + to_string(target);
        }
    }
    const double elapsed = timer.seconds();
    if (elapsed >= 1.0) {
        ok = false;
        detail = "runtime budget exceeded";
    }
    report(1, "noiseless protocol exactness", ok, detail, elapsed);
}

void criterion_2_werner_curve() {
    Timer timer;
    const std::int64_t shots = 100000;
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    grid.push_back(2.0 / 3.0);

    const auto points = sweep_lambda(grid, shots, NoiseModel::noiseless(), 777, 0);
    bool ok = true;
    std::string detail = "4-sigma match on all grid points";
    double worst_pull = 0.0;
    for (const SweepPoint& point : points) {
        const double expected = analytic_success(point.lambda);
        const double sigma = std::sqrt(expected * (1.0 - expected) / double(shots));
        const double diff = std::abs(point.p_succ - expected);
        if (sigma == 0.0) {
            if (diff != 0.0) {
                ok = false;
                detail = "deterministic point missed";
            }
        } else {
            worst_pull = std::max(worst_pull, diff / sigma);
            if (diff > 4.0 * sigma) {
                ok = false;
                detail = "point off by more than 4 sigma at lambda=" +
                         std::to_string(point.lambda);
            }
        }
    }
    // pinned spot checks
    const double at_two_thirds = points[11].p_succ;
    const double at_one = points[10].p_succ;
    if (std::abs(at_two_thirds - 0.25) > 0.01) {
        ok = false;
        detail = "lambda=2/3 point outside 0.25 +- 0.01";
    }
    if (std::abs(at_one - 0.0625) > 0.01) {
        ok = false;
        detail = "lambda=1 point outside 0.0625 +- 0.01";
    }
    const double elapsed = timer.seconds();
    if (elapsed >= 120.0) {
        ok = false;
        detail = "runtime budget exceeded";
    }
    if (ok)
        detail = "worst pull " + std::to_string(worst_pull) + " sigma; endpoints on target";
    report(2, "werner success curve", ok, detail, elapsed);
}

void criterion_3_event_table_oracle() {
    Timer timer;
    const auto derived = derive_event_table_by_simulation();
    bool ok = derived.size() == 16;
    std::string detail = "16/16 rows equal";
    int matched = 0;
    for (const EventTableRow& row : derived) {
        const auto it = kEventRows.find({row.ancilla1, row.ancilla2});
        if (it != kEventRows.end() && it->second == std::pair{row.p_f, row.p_d}) {
            ++matched;
        } else {
            ok = false;
            detail = std::string("row (") + to_string(row.ancilla1) + "," +
                     to_string(row.ancilla2) + ") disagrees";
        }
    }
    if (matched != 16) ok = false;
    const double elapsed = timer.seconds();
    if (elapsed >= 5.0) {
        ok = false;
        detail = "runtime budget exceeded";
    }
    report(3, "event-table oracle equivalence", ok, detail, elapsed);
}

void criterion_4_mixture_identity() {
    Timer timer;
    bool ok = true;
    std::string detail = "identity holds to 1e-12 at 20 points";
    for (int k = 0; k < 20; ++k) {
        const double lambda = k / 19.0;
        const auto weights = bell_mixture_weights(lambda);
        double success = 0.0;
        for (const auto& [basis, entry] : kEventRows)
            success += weights[static_cast<std::size_t>(basis.first)] *
                       weights[static_cast<std::size_t>(basis.second)] * entry.first *
                       entry.second;
        if (std::abs(success - analytic_success(lambda)) > 1e-12) {
            ok = false;
            detail = "identity broken at lambda=" + std::to_string(lambda);
        }
    }
    report(4, "mixture identity", ok, detail, timer.seconds());
}

void criterion_5_bound_certification() {
    Timer timer;
    bool ok = true;
    std::string detail;

    const double random_guess = win_probability(random_guess_strategy()).value;
    const double z_meas = win_probability(z_measurement_strategy()).value;
    if (random_guess != 0.25 || z_meas != 0.25) {
        ok = false;
        detail = "baselines are not exactly 0.25";
    }

    double best = std::max(random_guess, z_meas);
    double max_evaluated = best;
    for (int dim : {1, 2, 4}) {
        OptimizeOptions options;
        options.ancilla_dim = dim;
        options.restarts = 20;
        options.iterations = 800;
        options.seed = 1000 + static_cast<std::uint64_t>(dim);
        const OptimizeResult result = optimize_win_probability(options);
        best = std::max(best, result.best_value);
        max_evaluated = std::max(max_evaluated, result.max_evaluated);
    }
    if (best < 0.249 || best > 0.25 + 1e-6) {
        ok = false;
        detail = "campaign best " + std::to_string(best) + " outside [0.249, 0.25+1e-6]";
    }
    if (max_evaluated > 0.25 + 1e-6) {
        ok = false;
        detail = "bound exceeded: " + std::to_string(max_evaluated);
    }
    const double elapsed = timer.seconds();
    if (elapsed >= 300.0) {
        ok = false;
        detail = "runtime budget exceeded";
    }
    if (ok)
        detail = "baselines exact; campaign best " + std::to_string(best) +
                 ", max evaluated " + std::to_string(max_evaluated);
    report(5, "classical bound certification", ok, detail, elapsed);
}

void criterion_6_evaluator_cross_check() {
    Timer timer;
    const std::int64_t shots = 100000;
    bool ok = true;
    std::string detail;
    double worst_pull = 0.0;
    Rng rng(31415);
    for (int i = 0; i < 20; ++i) {
        const int dim = 1 << (i % 3);  // cycle 1, 2, 4
        const KrausStrategy strategy = random_strategy(dim, rng);
        const double expected = win_probability(strategy).value;
        const McEstimate mc =
            monte_carlo_win_probability(strategy, shots, 9000 + static_cast<std::uint64_t>(i), 0);
        const double sigma = std::sqrt(expected * (1.0 - expected) / double(shots));
        const double pull = std::abs(mc.estimate - expected) / sigma;
        worst_pull = std::max(worst_pull, pull);
        if (pull > 4.0) {
            ok = false;
            detail = "strategy " + std::to_string(i) + " off by " + std::to_string(pull) +
                     " sigma";
        }
    }
    if (ok) detail = "20 strategies within 4 sigma (worst " + std::to_string(worst_pull) + ")";
    report(6, "analytic vs monte carlo evaluator", ok, detail, timer.seconds());
}

void criterion_7_hardware_reproduction() {
    Timer timer;
    const NoiseModel model = NoiseModel::calibrated();
    const ExperimentStats stats =
        run_experiment({kBellLabels.begin(), kBellLabels.end()}, 10000, ideal_ancillas(),
                       model, 20240806, 0);
    const double p_succ = stats.p_succ();
    const double ff = stats.rate(TruthClass::FF);
    const double tf = stats.rate(TruthClass::TF);
    const double ft = stats.rate(TruthClass::FT);

    bool ok = true;
    std::string detail;
    if (std::abs(p_succ - 0.736) > 0.03) {
        ok = false;
        detail = "P_succ " + std::to_string(p_succ) + " outside 0.736 +- 0.03";
    }
    if (!(ff > tf && ff > ft)) {
        ok = false;
        detail = "correlated-failure ordering violated";
    }
    if (ok)
        detail = "P_succ " + std::to_string(p_succ) + ", P_D " + std::to_string(stats.p_d()) +
                 ", P_F " + std::to_string(stats.p_f()) + "; FF " + std::to_string(ff) +
                 " > TF " + std::to_string(tf) + ", FT " + std::to_string(ft);
    report(7, "calibrated noise reproduction", ok, detail, timer.seconds());
}

void criterion_8_session_equivalence() {
    Timer timer;
    bool ok = true;
    std::string detail;

    int mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        const BellLabel target = kBellLabels[static_cast<std::size_t>(i) % 4];
        const NoiseModel noise = i % 2 ? NoiseModel::calibrated() : NoiseModel::noiseless();
        const std::uint64_t seed = Rng::derive(606, static_cast<std::uint64_t>(i)).next_u64();
        Rng rng(seed);
        const ShotRecord mono =
            run_trial(target, BellLabel::PhiPlus, BellLabel::PhiPlus, noise, rng);
        const SessionResult session =
            run_protocol_session(target, BellLabel::PhiPlus, BellLabel::PhiPlus, noise, seed);
        if (!(mono == session.record)) ++mismatches;
    }
    if (mismatches != 0) {
        ok = false;
        detail = std::to_string(mismatches) + " of 1000 trials diverged";
    }

    int rejected = 0;
    for (int i = 0; i < 100; ++i) {
        Referee referee(BellLabel::PhiPlus, BellLabel::PhiPlus, BellLabel::PhiPlus,
                        NoiseModel::noiseless(), static_cast<std::uint64_t>(i));
        const WireMap& w = referee.wires();
        LocalRequest bad;
        switch (i % 4) {
            case 0: bad = {PartyId::Alice, Gate::cnot(w.sA, w.sB)}; break;
            case 1: bad = {PartyId::Bob, Gate::cnot(w.b1, w.a1)}; break;
            case 2: bad = {PartyId::Alice, Gate::h(w.b2)}; break;
            default: bad = {PartyId::Bob, Gate::cnot(w.a2, w.b2)}; break;
        }
        try {
            referee.execute(bad);
        } catch (const LocalityViolation&) {
            ++rejected;
        }
    }
    if (rejected != 100) {
        ok = false;
        detail = "only " + std::to_string(rejected) + "/100 cross-party requests rejected";
    }
    if (ok) detail = "1000/1000 trials identical, 100/100 rejections";
    report(8, "two-party session equivalence", ok, detail, timer.seconds());
}

}  // namespace

int main() {
    criterion_1_noiseless_exactness();
    criterion_2_werner_curve();
    criterion_3_event_table_oracle();
    criterion_4_mixture_identity();
    criterion_5_bound_certification();
    criterion_6_evaluator_cross_check();
    criterion_7_hardware_reproduction();
    criterion_8_session_equivalence();
    if (failures == 0) {
        std::printf("acceptance: 8/8 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", failures);
    return 1;
}
