// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "belldisc/noise.hpp"
#include "belldisc/protocol.hpp"
#include "belldisc/qstate.hpp"

namespace belldisc {

// Two-party execution harness. Alice and Bob issue only local operations and
// classical messages; the referee owns the joint state and rejects anything
// that would touch the other party's qubits. The locality constraint is
// informational, so the referee is an in-process component rather than a
// network server; that keeps equivalence with the monolithic runner exact.

enum class PartyId { Alice, Bob };

const char* to_string(PartyId party);

struct MeasureAction {
    std::vector<int> qubits;
};

struct LocalRequest {
    PartyId party;
    std::variant<Gate, MeasureAction> action;
};

struct ClassicalMessage {
    PartyId from;
    std::string payload;
    int round = 0;
};

class LocalityViolation : public std::runtime_error {
  public:
    explicit LocalityViolation(const std::string& what) : std::runtime_error(what) {}
};

// Owns the six-qubit joint state, the noise model and the RNG stream. The
// resource states (two shared ancilla pairs plus the Bell pair under test)
// are prepared by the referee itself, mirroring the monolithic runner's gate
// sequence so both paths consume identical randomness.
class Referee {
  public:
    Referee(BellLabel target, BellLabel ancilla1, BellLabel ancilla2, NoiseModel noise,
            std::uint64_t seed);

    // Applies a gate or measures qubits on behalf of a party. Measurement
    // results (with readout noise) are returned to that party only. Throws
    // LocalityViolation if any referenced qubit is not owned by the party.
    std::string execute(const LocalRequest& request);

    // Diagnostic Bell measurement of the (sA, sB) pair by the harness. Not a
    // party operation: no local strategy could perform it.
    BellLabel verify();

    bool owns(PartyId party, int qubit) const;
    const WireMap& wires() const { return wires_; }
    const std::vector<std::string>& transcript() const { return transcript_; }
    void log_message(const ClassicalMessage& message);

  private:
    WireMap wires_;
    PureState state_;
    NoiseModel noise_;
    Rng rng_;
    std::vector<std::string> transcript_;
};

struct SessionResult {
    ShotRecord record;
    BellLabel alice_guess;
    BellLabel bob_guess;
    std::vector<ClassicalMessage> messages;
    std::vector<std::string> transcript;
};

// Scripts both parties through the discrimination protocol: local CNOT and
// Hadamard layers, per-qubit ancilla readout in a1, b1, a2, b2 order, one
// classical exchange of readout bits, independent parity decoding by each
// party, then the referee's verification. With the same seed this produces
// the identical ShotRecord as run_trial, bit for bit.
SessionResult run_protocol_session(BellLabel target, BellLabel ancilla1, BellLabel ancilla2,
                                   const NoiseModel& noise, std::uint64_t seed);

}  // namespace belldisc
