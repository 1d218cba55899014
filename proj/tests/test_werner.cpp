// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "belldisc/werner.hpp"

using namespace belldisc;

TEST_CASE("bell mixture weights") {
    const auto clean = bell_mixture_weights(0.0);
    CHECK(clean == std::array<double, 4>{1.0, 0.0, 0.0, 0.0});

    const auto mixed = bell_mixture_weights(1.0);
    CHECK(mixed == std::array<double, 4>{0.25, 0.25, 0.25, 0.25});

    const auto two_thirds = bell_mixture_weights(2.0 / 3.0);
    CHECK(two_thirds[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(two_thirds[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    CHECK_THROWS_AS(bell_mixture_weights(-0.1), std::domain_error);
    CHECK_THROWS_AS(bell_mixture_weights(1.1), std::domain_error);
}

TEST_CASE("mixture weights always sum to one") {
    Rng rng(8);
    for (int i = 0; i < 1000; ++i) {
        const auto w = bell_mixture_weights(rng.uniform01());
        CHECK(std::abs(w[0] + w[1] + w[2] + w[3] - 1.0) < 1e-12);
    }
}

TEST_CASE("ancilla sampling follows the product mixture") {
    Rng rng(123);

    for (int i = 0; i < 200; ++i)
        CHECK(sample_ancilla({0.0, 0.0}, rng) ==
              std::pair{BellLabel::PhiPlus, BellLabel::PhiPlus});

    // lambda = 1: all 16 combinations uniform.
    std::map<std::pair<BellLabel, BellLabel>, int> counts;
    const int shots = 1000000;
    for (int i = 0; i < shots; ++i) counts[sample_ancilla({1.0, 1.0}, rng)]++;
    const double p16 = 1.0 / 16.0;
    const double sigma16 = std::sqrt(p16 * (1 - p16) / shots);
    CHECK(counts.size() == 16);
    for (const auto& [combo, n] : counts)
        CHECK(std::abs(n / double(shots) - p16) < 4 * sigma16);

    // lambda = 0.5: P(phi+, phi+) = (1 - 0.375)^2 = 0.390625.
    int joint = 0;
    const int shots2 = 200000;
    for (int i = 0; i < shots2; ++i)
        if (sample_ancilla({0.5, 0.5}, rng) == std::pair{BellLabel::PhiPlus, BellLabel::PhiPlus})
            ++joint;
    const double p = 0.390625;
    const double sigma = std::sqrt(p * (1 - p) / shots2);
    CHECK(std::abs(joint / double(shots2) - p) < 4 * sigma);
}

TEST_CASE("analytic success curve") {
    CHECK(analytic_success(0.0) == 1.0);
    CHECK(analytic_success(2.0 / 3.0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(analytic_success(1.0) == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK_THROWS_AS(analytic_success(1.5), std::domain_error);
}

TEST_CASE("event table entries") {
    const auto rows = event_table();
    REQUIRE(rows.size() == 16);
    auto find = [&](BellLabel a, BellLabel b) {
        for (const EventTableRow& r : rows)
            if (r.ancilla1 == a && r.ancilla2 == b) return r;
        FAIL("row not found");
        return rows[0];
    };
    CHECK(find(BellLabel::PhiPlus, BellLabel::PhiPlus) ==
          EventTableRow{BellLabel::PhiPlus, BellLabel::PhiPlus, 1, 1});
    CHECK(find(BellLabel::PhiPlus, BellLabel::PsiPlus).p_f == 1);
    CHECK(find(BellLabel::PhiPlus, BellLabel::PsiPlus).p_d == 0);
    CHECK(find(BellLabel::PsiMinus, BellLabel::PhiMinus).p_f == 0);
    CHECK(find(BellLabel::PsiMinus, BellLabel::PhiMinus).p_d == 1);

    int nondestructive = 0;
    for (const EventTableRow& r : rows)
        if (r.p_f == 1 && r.p_d == 1) ++nondestructive;
    CHECK(nondestructive == 1);  // only (phi+, phi+)
}

TEST_CASE("simulation re-derives the event table") {
    CHECK(derive_event_table_by_simulation() == event_table());
}

TEST_CASE("mixture identity ties the weights to the event table") {
    const auto rows = event_table();
    for (int k = 0; k < 20; ++k) {
        const double lambda = k / 19.0;
        const auto w = bell_mixture_weights(lambda);
        double success = 0.0;
        for (const EventTableRow& r : rows)
            success += w[static_cast<std::size_t>(r.ancilla1)] *
                       w[static_cast<std::size_t>(r.ancilla2)] * r.p_f * r.p_d;
        CHECK(std::abs(success - analytic_success(lambda)) < 1e-12);
    }
}

TEST_CASE("noiseless sweep converges to the analytic curve") {
    const std::vector<double> grid = {0.0, 0.6, 1.0};
    const auto points = sweep_lambda(grid, 20000, NoiseModel::noiseless(), 55, 0);
    REQUIRE(points.size() == 3);

    CHECK(points[0].p_succ == 1.0);  // deterministic at lambda = 0

    // (1 - 0.45)^2 = 0.3025
    const double p06 = 0.3025;
    const double sigma06 = std::sqrt(p06 * (1 - p06) / 20000.0);
    CHECK(std::abs(points[1].p_succ - p06) < 4 * sigma06);

    const double p1 = 0.0625;
    const double sigma1 = std::sqrt(p1 * (1 - p1) / 20000.0);
    CHECK(std::abs(points[2].p_succ - p1) < 4 * sigma1);

    CHECK_THROWS_AS(sweep_lambda({0.5}, 0, NoiseModel::noiseless(), 1, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(sweep_lambda({1.5}, 10, NoiseModel::noiseless(), 1, 0), std::domain_error);
}

TEST_CASE("gate noise keeps the clean-ancilla point below one") {
    const auto points = sweep_lambda({0.0}, 4000, NoiseModel::calibrated(), 66, 0);
    CHECK(points[0].p_succ < 0.9);
    CHECK(points[0].p_succ > 0.5);
}

TEST_CASE("sweep csv format") {
    const auto points = sweep_lambda({0.0}, 10, NoiseModel::noiseless(), 1, 0);
    std::ostringstream out;
    write_sweep_csv(out, points);
    std::istringstream in(out.str());
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "lambda,p_succ,stderr,shots");
    CHECK(row == "0,1,0,10");
}

TEST_CASE("werner params validation") {
    CHECK_THROWS_AS(validate(WernerParams{-0.2, 0.5}), std::domain_error);
    CHECK_NOTHROW(validate(WernerParams{0.3, 0.9}));
}
