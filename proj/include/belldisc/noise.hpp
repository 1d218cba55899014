// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "belldisc/qstate.hpp"
#include "belldisc/rng.hpp"

namespace belldisc {

// Stochastic Pauli (depolarizing) gate noise plus classical readout flips,
// applied as trajectory sampling: each trial stays a pure state and noise is
// a random Pauli inserted after a gate with the configured probability.
struct NoiseModel {
    double p1 = 0.0;            // depolarizing probability after a 1-qubit gate
    double p2 = 0.0;            // depolarizing probability after a 2-qubit gate
    double readout_flip = 0.0;  // independent per-bit classical flip probability

    bool is_noiseless() const { return p1 == 0.0 && p2 == 0.0 && readout_flip == 0.0; }

    static NoiseModel noiseless() { return NoiseModel{}; }

    // Depolarizing rates tuned by parameter sweep so the six-qubit
    // discrimination circuit reproduces the trapped-ion reference run
    // (P_succ ~= 0.736, P_D ~= 0.80, P_F ~= 0.80). See README for the
    // sweep procedure and achieved rates.
    static NoiseModel calibrated();
};

// Throws std::domain_error if any field is outside [0, 1].
void validate(const NoiseModel& model);

// Applies the ideal gate, then with probability p1 (1-qubit) or p2 (2-qubit)
// a uniformly random non-identity Pauli on the gate's qubits: 3 choices for
// one qubit, 15 for two. Zero-probability channels consume no randomness, so
// a noiseless model is bit-exact with apply_gate.
void apply_noisy_gate(PureState& state, const Gate& gate, const NoiseModel& model, Rng& rng);

// Flips each bit independently with probability readout_flip.
std::string flip_readout(std::string bits, const NoiseModel& model, Rng& rng);

}  // namespace belldisc
