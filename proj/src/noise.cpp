// SPDX-License-Identifier: Apache-2.0
#include "belldisc/noise.hpp"

#include <stdexcept>

namespace belldisc {

NoiseModel NoiseModel::calibrated() {
    // Frozen from a (p1, p2, readout) grid sweep against the reference run
    // statistics; see README "Noise calibration".
    return NoiseModel{0.0080, 0.0315, 0.0080};
}

void validate(const NoiseModel& model) {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(model.p1) || !in_unit(model.p2) || !in_unit(model.readout_flip))
        throw std::domain_error("noise probabilities must lie in [0, 1]");
}

namespace {

void apply_pauli(PureState& state, int code, int qubit) {
    switch (code) {
        case 1: apply_gate_in_place(state, Gate::x(qubit)); break;
        case 2: apply_gate_in_place(state, Gate::y(qubit)); break;
        case 3: apply_gate_in_place(state, Gate::z(qubit)); break;
        default: break;
    }
}

}  // namespace

void apply_noisy_gate(PureState& state, const Gate& gate, const NoiseModel& model, Rng& rng) {
    apply_gate_in_place(state, gate);
    const double p = gate.arity() == 1 ? model.p1 : model.p2;
    if (p <= 0.0) return;
    if (rng.uniform01() >= p) return;
    if (gate.arity() == 1) {
        apply_pauli(state, 1 + static_cast<int>(rng.below(3)), gate.qubits[0]);
    } else {
        const int pair = 1 + static_cast<int>(rng.below(15));  // skip identity x identity
        apply_pauli(state, pair >> 2, gate.qubits[0]);
        apply_pauli(state, pair & 3, gate.qubits[1]);
    }
}

std::string flip_readout(std::string bits, const NoiseModel& model, Rng& rng) {
    if (model.readout_flip <= 0.0) return bits;
    for (char& b : bits)
        if (rng.uniform01() < model.readout_flip) b = (b == '0') ? '1' : '0';
    return bits;
}

}  // namespace belldisc
