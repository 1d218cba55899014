// SPDX-License-Identifier: Apache-2.0
#include "belldisc/session.hpp"

#include <stdexcept>

namespace belldisc {

const char* to_string(PartyId party) { return party == PartyId::Alice ? "alice" : "bob"; }

Referee::Referee(BellLabel target, BellLabel ancilla1, BellLabel ancilla2, NoiseModel noise,
                 std::uint64_t seed)
    : wires_(WireMap::standard()), state_(zero_state(6)), noise_(noise), rng_(seed) {
    validate(noise_);
    for (const Gate& g : preparation_gates(target, ancilla1, ancilla2, wires_))
        apply_noisy_gate(state_, g, noise_, rng_);
    transcript_.push_back("referee: resources prepared");
}

bool Referee::owns(PartyId party, int qubit) const {
    if (party == PartyId::Alice)
        return qubit == wires_.a1 || qubit == wires_.a2 || qubit == wires_.sA;
    return qubit == wires_.b1 || qubit == wires_.b2 || qubit == wires_.sB;
}

std::string Referee::execute(const LocalRequest& request) {
    if (const Gate* gate = std::get_if<Gate>(&request.action)) {
        for (int i = 0; i < gate->arity(); ++i) {
            const int q = gate->qubits[static_cast<std::size_t>(i)];
            if (!owns(request.party, q))
                throw LocalityViolation(std::string(to_string(request.party)) +
                                        " requested a gate on qubit " + std::to_string(q) +
                                        " outside its partition");
        }
        apply_noisy_gate(state_, *gate, noise_, rng_);
        transcript_.push_back(std::string(to_string(request.party)) + ": gate on qubit " +
                              std::to_string(gate->qubits[0]) +
                              (gate->arity() == 2 ? "," + std::to_string(gate->qubits[1]) : ""));
        return {};
    }
    const MeasureAction& action = std::get<MeasureAction>(request.action);
    for (int q : action.qubits)
        if (!owns(request.party, q))
            throw LocalityViolation(std::string(to_string(request.party)) +
                                    " requested a measurement on qubit " + std::to_string(q) +
                                    " outside its partition");
    std::string bits;
    for (int q : action.qubits)
        bits += flip_readout(measure_in_place(state_, {q}, rng_), noise_, rng_);
    transcript_.push_back(std::string(to_string(request.party)) + ": measured " +
                          std::to_string(action.qubits.size()) + " qubit(s) -> " + bits);
    return bits;
}

BellLabel Referee::verify() {
    for (const Gate& g : verification_gates(wires_))
        apply_noisy_gate(state_, g, noise_, rng_);
    std::string bits;
    for (int q : {wires_.sA, wires_.sB})
        bits += flip_readout(measure_in_place(state_, {q}, rng_), noise_, rng_);
    const BellLabel label = bell_label_from_bits(bits[0], bits[1]);
    transcript_.push_back(std::string("referee: verification -> ") + to_string(label));
    return label;
}

void Referee::log_message(const ClassicalMessage& message) {
    transcript_.push_back(std::string(to_string(message.from)) + " broadcast round " +
                          std::to_string(message.round) + ": " + message.payload);
}

SessionResult run_protocol_session(BellLabel target, BellLabel ancilla1, BellLabel ancilla2,
                                   const NoiseModel& noise, std::uint64_t seed) {
    Referee referee(target, ancilla1, ancilla2, noise, seed);
    const WireMap& w = referee.wires();

    // Discrimination layers, each issued by its owner in the canonical order.
    referee.execute({PartyId::Alice, Gate::cnot(w.sA, w.a2)});
    referee.execute({PartyId::Bob, Gate::cnot(w.sB, w.b2)});
    referee.execute({PartyId::Alice, Gate::cnot(w.a1, w.sA)});
    referee.execute({PartyId::Bob, Gate::cnot(w.b1, w.sB)});
    referee.execute({PartyId::Alice, Gate::h(w.a1)});
    referee.execute({PartyId::Bob, Gate::h(w.b1)});

    // Ancilla readout, alternating so the global qubit order matches the
    // monolithic runner: a1, b1, a2, b2.
    const std::string a1 = referee.execute({PartyId::Alice, MeasureAction{{w.a1}}});
    const std::string b1 = referee.execute({PartyId::Bob, MeasureAction{{w.b1}}});
    const std::string a2 = referee.execute({PartyId::Alice, MeasureAction{{w.a2}}});
    const std::string b2 = referee.execute({PartyId::Bob, MeasureAction{{w.b2}}});

    // One round of classical communication: each party broadcasts its bits.
    SessionResult result;
    const ClassicalMessage alice_msg{PartyId::Alice, a1 + a2, 1};
    const ClassicalMessage bob_msg{PartyId::Bob, b1 + b2, 1};
    referee.log_message(alice_msg);
    referee.log_message(bob_msg);
    result.messages = {alice_msg, bob_msg};

    // Each party assembles a1 b1 a2 b2 from its own bits plus the received
    // message and decodes the parities independently.
    const std::string alice_view = a1 + std::string(1, bob_msg.payload[0]) + a2 +
                                   std::string(1, bob_msg.payload[1]);
    const std::string bob_view = std::string(1, alice_msg.payload[0]) + b1 +
                                 std::string(1, alice_msg.payload[1]) + b2;
    result.alice_guess = classify_outcome(alice_view);
    result.bob_guess = classify_outcome(bob_view);

    result.record.target = target;
    result.record.ancilla_bits = alice_view;
    result.record.guess = result.alice_guess;
    result.record.verified = referee.verify();
    result.record.cls =
        classify_shot(result.record.target, result.record.guess, result.record.verified);
    result.transcript = referee.transcript();
    return result;
}

}  // namespace belldisc
