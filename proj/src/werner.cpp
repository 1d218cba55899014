// SPDX-License-Identifier: Apache-2.0
#include "belldisc/werner.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "belldisc/parallel.hpp"
#include "belldisc/report.hpp"

namespace belldisc {

void validate(const WernerParams& params) {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(params.lambda1) || !in_unit(params.lambda2))
        throw std::domain_error("werner weights must lie in [0, 1]");
}

std::array<double, 4> bell_mixture_weights(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::domain_error("werner weight must lie in [0, 1]");
    const double rest = lambda / 4.0;
    return {1.0 - 3.0 * rest, rest, rest, rest};
}

namespace {

BellLabel sample_label(const std::array<double, 4>& weights, Rng& rng) {
    const double u = rng.uniform01();
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        cum += weights[i];
        if (u < cum) return kBellLabels[i];
    }
    return kBellLabels.back();
}

}  // namespace

std::pair<BellLabel, BellLabel> sample_ancilla(const WernerParams& params, Rng& rng) {
    validate(params);
    const auto w1 = bell_mixture_weights(params.lambda1);
    const auto w2 = bell_mixture_weights(params.lambda2);
    const BellLabel first = sample_label(w1, rng);
    const BellLabel second = sample_label(w2, rng);
    return {first, second};
}

double analytic_success(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::domain_error("werner weight must lie in [0, 1]");
    const double kept = 1.0 - 0.75 * lambda;
    return kept * kept;
}

std::vector<EventTableRow> event_table() {
    std::vector<EventTableRow> rows;
    rows.reserve(16);
    auto entry = [](BellLabel a, BellLabel b) -> std::pair<int, int> {
        // (p_f, p_d) per ancilla basis, target phi+.
        if (a == BellLabel::PhiPlus && b == BellLabel::PhiPlus) return {1, 1};
        if (a == BellLabel::PhiPlus && b == BellLabel::PsiPlus) return {1, 0};
        if (a == BellLabel::PhiMinus && b == BellLabel::PhiPlus) return {1, 0};
        if (a == BellLabel::PhiMinus && b == BellLabel::PsiPlus) return {1, 0};
        if (a == BellLabel::PsiPlus && b == BellLabel::PhiPlus) return {0, 1};
        if (a == BellLabel::PsiMinus && b == BellLabel::PhiMinus) return {0, 1};
        if (a == BellLabel::PhiMinus && b == BellLabel::PhiMinus) return {0, 1};
        return {0, 0};
    };
    for (BellLabel a : kBellLabels) {
        for (BellLabel b : kBellLabels) {
            const auto [pf, pd] = entry(a, b);
            rows.push_back({a, b, pf, pd});
        }
    }
    return rows;
}

std::vector<EventTableRow> derive_event_table_by_simulation() {
    constexpr double kBinaryTol = 1e-9;
    std::vector<EventTableRow> rows;
    rows.reserve(16);
    for (BellLabel a : kBellLabels) {
        for (BellLabel b : kBellLabels) {
            const TrialDistribution dist = enumerate_trial(BellLabel::PhiPlus, a, b);
            auto to_binary = [](double v) {
                if (std::abs(v) < kBinaryTol) return 0;
                if (std::abs(v - 1.0) < kBinaryTol) return 1;
                throw std::logic_error("event table entry is not deterministic");
            };
            rows.push_back({a, b, to_binary(dist.p_f), to_binary(dist.p_d)});
        }
    }
    return rows;
}

std::vector<SweepPoint> sweep_lambda(const std::vector<double>& grid, std::int64_t shots,
                                     const NoiseModel& noise, std::uint64_t seed,
                                     int parallel) {
    if (shots < 1) throw std::invalid_argument("sweep_lambda: shots must be >= 1");
    validate(noise);
    for (double lambda : grid)
        if (!(lambda >= 0.0 && lambda <= 1.0))
            throw std::domain_error("sweep grid value outside [0, 1]");

    std::vector<SweepPoint> points;
    points.reserve(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const WernerParams params{grid[g], grid[g]};
        const int workers = resolve_workers(parallel);
        std::vector<std::int64_t> wins(static_cast<std::size_t>(workers), 0);
        parallel_chunks(shots, workers, [&](int w, std::int64_t begin, std::int64_t end) {
            std::int64_t local = 0;
            for (std::int64_t i = begin; i < end; ++i) {
                Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(g) * shots +
                                                static_cast<std::uint64_t>(i));
                const auto [anc1, anc2] = sample_ancilla(params, rng);
                const ShotRecord rec =
                    run_trial(BellLabel::PhiPlus, anc1, anc2, noise, rng);
                if (rec.cls == TruthClass::TT) ++local;
            }
            wins[static_cast<std::size_t>(w)] += local;
        });
        std::int64_t total = 0;
        for (std::int64_t w : wins) total += w;
        const double p = static_cast<double>(total) / static_cast<double>(shots);
        points.push_back({grid[g], p,
                          std::sqrt(p * (1.0 - p) / static_cast<double>(shots)), shots});
    }
    return points;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points) {
    out << "lambda,p_succ,stderr,shots\n";
    for (const SweepPoint& p : points) {
        out << format_double(p.lambda) << ',' << format_double(p.p_succ) << ','
            << format_double(p.stderr_) << ',' << p.shots << '\n';
    }
}

}  // namespace belldisc
