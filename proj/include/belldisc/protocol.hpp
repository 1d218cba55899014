// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "belldisc/noise.hpp"
#include "belldisc/qstate.hpp"
#include "belldisc/rng.hpp"

namespace belldisc {

// ---------------------------------------------------------------------------
// Wiring
// ---------------------------------------------------------------------------

// Positions of the six protocol qubits inside a PureState. Alice holds
// {a1, a2, sA}, Bob holds {b1, b2, sB}; (sA, sB) carry the Bell pair under
// test and (a1, b1), (a2, b2) are the two shared ancilla pairs.
struct WireMap {
    int a1 = 0, b1 = 1, a2 = 2, b2 = 3, sA = 4, sB = 5;

    static WireMap standard() { return WireMap{}; }
    std::array<int, 6> all() const { return {a1, b1, a2, b2, sA, sB}; }
    bool valid() const;
};

// ---------------------------------------------------------------------------
// Shot records
// ---------------------------------------------------------------------------

// Crossing of discrimination success (first letter) with state preservation
// (second letter).
enum class TruthClass { TT, TF, FT, FF };

const char* to_string(TruthClass cls);

TruthClass classify_shot(BellLabel target, std::optional<BellLabel> guess, BellLabel verified);

// One protocol trial. `guess` is empty only for outcome alphabets larger
// than the four-bit strings produced here; every 4-bit outcome classifies.
struct ShotRecord {
    BellLabel target;
    std::string ancilla_bits;  // a1 b1 a2 b2
    std::optional<BellLabel> guess;
    BellLabel verified;
    TruthClass cls;

    bool operator==(const ShotRecord&) const = default;
};

// CSV columns: target, ancilla_bits, guess, verified, class.
void write_records_csv(std::ostream& out, const std::vector<ShotRecord>& records);

// ---------------------------------------------------------------------------
// Circuit layers
// ---------------------------------------------------------------------------

// The discrimination interaction: CNOT(sA->a2), CNOT(sB->b2), CNOT(a1->sA),
// CNOT(b1->sB), H(a1), H(b1). Every gate stays within one party's qubits.
std::vector<Gate> discrimination_layers(const WireMap& wires);

// Gate-level state preparation (so gate noise covers it): each pair is built
// as H + CNOT into phi+, then a Pauli on the second qubit selects the label
// (X -> psi+, Z -> phi-, Y -> psi-, up to global phase). The target pair
// always gets its selector gate, identity included; ancilla pairs only when
// their label differs from phi+.
std::vector<Gate> preparation_gates(BellLabel target, BellLabel ancilla1, BellLabel ancilla2,
                                    const WireMap& wires);

// The diagnostic Bell-basis rotation on (sA, sB) used to verify the pair was
// left unchanged; downstream applications of the protocol can skip it.
std::vector<Gate> verification_gates(const WireMap& wires);

// Maps a 4-bit a1 b1 a2 b2 outcome to the announced Bell label via the
// parity pair (a1^b1, a2^b2): (0,0) -> phi+, (1,0) -> phi-, (0,1) -> psi+,
// (1,1) -> psi-. Throws std::invalid_argument for malformed strings.
BellLabel classify_outcome(const std::string& bits);

// The 4 outcome strings announcing `label`, in ascending binary order.
std::array<std::string, 4> outcome_strings(BellLabel label);

// Analytic oracle for the post-interaction ancilla pair labels when both
// ancillas start in phi+ and the target is `target`.
std::pair<BellLabel, BellLabel> expected_ancilla_state(BellLabel target);

// ---------------------------------------------------------------------------
// Trials
// ---------------------------------------------------------------------------

// Runs one full trial: gate-level preparation, discrimination layers,
// per-qubit ancilla readout (a1, b1, a2, b2 order, readout noise applied
// bit by bit), classification, then the verification Bell measurement.
// All gates go through the noise model.
ShotRecord run_trial(BellLabel target, BellLabel ancilla1, BellLabel ancilla2,
                     const NoiseModel& noise, Rng& rng);

// ---------------------------------------------------------------------------
// Exhaustive (noiseless) branch evaluation
// ---------------------------------------------------------------------------

struct BranchOutcome {
    std::string ancilla_bits;
    double probability;                   // of this ancilla outcome
    std::optional<BellLabel> guess;
    std::array<double, 4> verified_probs; // Bell-verification distribution, label order
};

// Exact enumeration of every positive-probability measurement branch of a
// noiseless trial. Rates are normalized by the total enumerated probability,
// so an all-success distribution reports exactly 1.0.
struct TrialDistribution {
    BellLabel target;
    std::vector<BranchOutcome> branches;
    double p_d = 0.0;
    double p_f = 0.0;
    double p_succ = 0.0;
};

TrialDistribution enumerate_trial(BellLabel target, BellLabel ancilla1, BellLabel ancilla2);

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

// Draws the ancilla pair labels for one trial.
using AncillaSource = std::function<std::pair<BellLabel, BellLabel>(Rng&)>;

AncillaSource ideal_ancillas();

struct TargetStats {
    BellLabel target = BellLabel::PhiPlus;
    std::int64_t shots = 0;
    std::int64_t tt = 0, tf = 0, ft = 0, ff = 0;

    double p_d() const { return static_cast<double>(tt + tf) / static_cast<double>(shots); }
    double p_f() const { return static_cast<double>(tt + ft) / static_cast<double>(shots); }
    double p_succ() const { return static_cast<double>(tt) / static_cast<double>(shots); }
    double rate(TruthClass cls) const;
    double stderr_of(double p) const;
};

struct ExperimentStats {
    std::vector<TargetStats> per_target;

    std::int64_t total_shots() const;
    // Averages over targets (equal priors).
    double p_d() const;
    double p_f() const;
    double p_succ() const;
    double rate(TruthClass cls) const;
    // Binomial standard error of the pooled rate estimate.
    double pooled_stderr(double p) const;
};

// Runs `shots` trials per target. Each trial gets its own RNG stream derived
// from (seed, global trial index), so results are independent of the worker
// count and aggregation order.
ExperimentStats run_experiment(const std::vector<BellLabel>& targets, std::int64_t shots,
                               const AncillaSource& ancillas, const NoiseModel& noise,
                               std::uint64_t seed, int parallel = 0);

}  // namespace belldisc
