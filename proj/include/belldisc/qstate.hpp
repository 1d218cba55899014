// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "belldisc/rng.hpp"

namespace belldisc {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Bell labels
// ---------------------------------------------------------------------------

// The four Bell states. The enumeration order is the canonical iteration and
// reporting order everywhere in the library.
enum class BellLabel : int { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline constexpr std::array<BellLabel, 4> kBellLabels = {
    BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus};

const char* to_string(BellLabel label);
std::optional<BellLabel> bell_label_from_string(std::string_view name);

// ---------------------------------------------------------------------------
// Pure states
// ---------------------------------------------------------------------------

// Dense amplitude vector over n qubits.
//
// Bit convention: qubit 0 is the leftmost character of every printed bit
// string, and the amplitude index is the big-endian value of that string,
// i.e. bit of qubit q within index i is (i >> (num_qubits-1-q)) & 1. Printed
// measurement strings therefore read left to right in qubit order.
struct PureState {
    int num_qubits = 0;
    std::vector<cplx> amps;

    std::size_t dim() const { return amps.size(); }
    double norm_sq() const;
    int bit(std::size_t index, int qubit) const {
        return static_cast<int>((index >> (num_qubits - 1 - qubit)) & 1u);
    }
};

// |0...0> on n qubits. n must be in [1, 12]; the engine is sized for small
// protocol circuits, not generic workloads.
PureState zero_state(int n);

// Tensor product; `a` occupies the leading (leftmost) qubits of the result.
PureState tensor(const PureState& a, const PureState& b);

// |<a|b>|^2. Throws std::invalid_argument on qubit-count mismatch.
double fidelity(const PureState& a, const PureState& b);

// The named Bell pair on 2 qubits, global phase fixed so the first nonzero
// amplitude is real positive:
//   PhiPlus  = (|00> + |11>)/sqrt2      PhiMinus = (|00> - |11>)/sqrt2
//   PsiPlus  = (|01> + |10>)/sqrt2      PsiMinus = (|01> - |10>)/sqrt2
PureState bell_pair(BellLabel label);

// ---------------------------------------------------------------------------
// Gates
// ---------------------------------------------------------------------------

struct Gate {
    enum class Kind { H, X, Y, Z, Cnot, Unitary1, Unitary2 };

    Kind kind;
    std::array<int, 2> qubits{-1, -1};  // [q,-], [control,target] or [q0,q1]
    std::vector<cplx> matrix;           // row-major 2x2 / 4x4 for Unitary kinds

    int arity() const { return qubits[1] < 0 ? 1 : 2; }

    static Gate h(int q);
    static Gate x(int q);
    static Gate y(int q);
    static Gate z(int q);
    static Gate cnot(int control, int target);
    // Matrices are validated to be unitary within 1e-10, else
    // std::invalid_argument.
    static Gate unitary1(const std::vector<cplx>& m, int q);
    static Gate unitary2(const std::vector<cplx>& m, int q0, int q1);
};

// Applies the gate on the named qubits. Throws std::out_of_range for bad
// indices and std::invalid_argument for index collisions.
void apply_gate_in_place(PureState& state, const Gate& gate);
PureState apply_gate(PureState state, const Gate& gate);

// Applies a dense 2^k x 2^k unitary to the listed qubits (first listed qubit
// is the most significant bit of the local index). No unitarity check; used
// by dilation simulations that have validated their operators already.
void apply_unitary_in_place(PureState& state, const std::vector<cplx>& matrix,
                            const std::vector<int>& qubits);

// ---------------------------------------------------------------------------
// Measurement
// ---------------------------------------------------------------------------

// Projective measurement of the listed qubits in the computational basis.
// Samples one qubit at a time, in list order, one uniform draw per qubit;
// the returned string is in list order. The collapsed state is renormalized,
// so re-measuring the same qubits reproduces `bits` with probability 1.
std::string measure_in_place(PureState& state, const std::vector<int>& qubits, Rng& rng);

struct MeasureResult {
    std::string bits;
    PureState state;
};
MeasureResult measure(const PureState& state, const std::vector<int>& qubits, Rng& rng);

// Marginal probability that the listed qubits read as `bits`.
double outcome_probability(const PureState& state, const std::vector<int>& qubits,
                           const std::string& bits);

// Collapses onto the given outcome of the listed qubits and renormalizes.
// Throws std::invalid_argument if the outcome has zero probability.
void project_in_place(PureState& state, const std::vector<int>& qubits,
                      const std::string& bits);

// Bell-basis measurement of a qubit pair: CNOT(q0->q1), H(q0), then a
// computational readout of [q0, q1]. Bit-to-label convention (first bit is
// the post-Hadamard qubit q0): 00 -> PhiPlus, 10 -> PhiMinus, 01 -> PsiPlus,
// 11 -> PsiMinus.
BellLabel bell_label_from_bits(char b0, char b1);

struct BellMeasureResult {
    BellLabel label;
    PureState state;
};
BellMeasureResult bell_measure(const PureState& state, int q0, int q1, Rng& rng);

}  // namespace belldisc
