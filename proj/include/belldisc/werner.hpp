// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "belldisc/noise.hpp"
#include "belldisc/protocol.hpp"
#include "belldisc/qstate.hpp"
#include "belldisc/rng.hpp"

namespace belldisc {

// Depolarization weight per ancilla pair. lambda = 0 is a clean phi+ pair,
// lambda = 1 the maximally mixed two-qubit state. The two pairs may carry
// different weights; the CLI couples them by default.
struct WernerParams {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

// Throws std::domain_error unless both weights lie in [0, 1].
void validate(const WernerParams& params);

// Bell-diagonal decomposition of the Werner state: probability
// (1 - 3*lambda/4) for phi+ and lambda/4 for each of the other three labels,
// in canonical label order. Throws std::domain_error for lambda outside [0,1].
std::array<double, 4> bell_mixture_weights(double lambda);

// Draws each pair's Bell label independently from its mixture weights.
std::pair<BellLabel, BellLabel> sample_ancilla(const WernerParams& params, Rng& rng);

// (1 - 3*lambda/4)^2: the probability that both sampled pairs are phi+,
// which is exactly the nondestructive-discrimination success probability.
double analytic_success(double lambda);

// Whether a trial with this ancilla basis preserves the target (p_f) and
// announces it correctly (p_d). Outcomes are deterministic per basis, so the
// entries are binary.
struct EventTableRow {
    BellLabel ancilla1;
    BellLabel ancilla2;
    int p_f;
    int p_d;

    bool operator==(const EventTableRow&) const = default;
};

// The 16-row event table for discriminating phi+, rows ordered by
// (ancilla1, ancilla2) in canonical label order.
std::vector<EventTableRow> event_table();

// Re-derives the table by exact branch enumeration of the noiseless
// protocol; agreement with event_table() ties the circuit to the mixture
// arithmetic.
std::vector<EventTableRow> derive_event_table_by_simulation();

struct SweepPoint {
    double lambda;
    double p_succ;
    double stderr_;
    std::int64_t shots;
};

// Monte Carlo success curve for target phi+: per grid point, samples Werner
// ancillas (lambda1 = lambda2 = lambda) and counts TT trials. Per-trial RNG
// streams are derived from (seed, point, trial), so the curve is independent
// of worker count.
std::vector<SweepPoint> sweep_lambda(const std::vector<double>& grid, std::int64_t shots,
                                     const NoiseModel& noise, std::uint64_t seed,
                                     int parallel = 0);

// CSV columns: lambda, p_succ, stderr, shots.
void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points);

}  // namespace belldisc
