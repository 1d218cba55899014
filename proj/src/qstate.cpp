// SPDX-License-Identifier: Apache-2.0
#include "belldisc/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace belldisc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kUnitaryTol = 1e-10;

void check_qubit(const PureState& state, int q) {
    if (q < 0 || q >= state.num_qubits)
        throw std::out_of_range("qubit index " + std::to_string(q) +
                                " out of range for " + std::to_string(state.num_qubits) +
                                "-qubit state");
}

// max |(U^dag U - I)_{ij}| for a dense dim x dim matrix.
double unitarity_defect(const std::vector<cplx>& m, std::size_t dim) {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < dim; ++k)
                s += std::conj(m[k * dim + i]) * m[k * dim + j];
            if (i == j) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

}  // namespace

const char* to_string(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return "phi+";
        case BellLabel::PhiMinus: return "phi-";
        case BellLabel::PsiPlus: return "psi+";
        case BellLabel::PsiMinus: return "psi-";
    }
    return "?";
}

std::optional<BellLabel> bell_label_from_string(std::string_view name) {
    for (BellLabel l : kBellLabels)
        if (name == to_string(l)) return l;
    return std::nullopt;
}

double PureState::norm_sq() const {
    double s = 0.0;
    for (const cplx& a : amps) s += std::norm(a);
    return s;
}

PureState zero_state(int n) {
    if (n < 1 || n > 12)
        throw std::out_of_range("qubit count must be in [1, 12], got " + std::to_string(n));
    PureState state;
    state.num_qubits = n;
    state.amps.assign(std::size_t{1} << n, cplx{0.0, 0.0});
    state.amps[0] = 1.0;
    return state;
}

PureState tensor(const PureState& a, const PureState& b) {
    PureState out;
    out.num_qubits = a.num_qubits + b.num_qubits;
    if (out.num_qubits > 12) throw std::out_of_range("tensor product exceeds 12 qubits");
    out.amps.resize(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            out.amps[i * b.dim() + j] = a.amps[i] * b.amps[j];
    return out;
}

double fidelity(const PureState& a, const PureState& b) {
    if (a.num_qubits != b.num_qubits)
        throw std::invalid_argument("fidelity: qubit counts differ");
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) overlap += std::conj(a.amps[i]) * b.amps[i];
    return std::norm(overlap);
}

PureState bell_pair(BellLabel label) {
    PureState state = zero_state(2);
    state.amps[0] = 0.0;
    switch (label) {
        case BellLabel::PhiPlus:
            state.amps[0] = kInvSqrt2;
            state.amps[3] = kInvSqrt2;
            break;
        case BellLabel::PhiMinus:
            state.amps[0] = kInvSqrt2;
            state.amps[3] = -kInvSqrt2;
            break;
        case BellLabel::PsiPlus:
            state.amps[1] = kInvSqrt2;
            state.amps[2] = kInvSqrt2;
            break;
        case BellLabel::PsiMinus:
            state.amps[1] = kInvSqrt2;
            state.amps[2] = -kInvSqrt2;
            break;
    }
    return state;
}

Gate Gate::h(int q) { return Gate{Kind::H, {q, -1}, {}}; }
Gate Gate::x(int q) { return Gate{Kind::X, {q, -1}, {}}; }
Gate Gate::y(int q) { return Gate{Kind::Y, {q, -1}, {}}; }
Gate Gate::z(int q) { return Gate{Kind::Z, {q, -1}, {}}; }

Gate Gate::cnot(int control, int target) {
    if (control == target) throw std::invalid_argument("cnot: control == target");
    return Gate{Kind::Cnot, {control, target}, {}};
}

Gate Gate::unitary1(const std::vector<cplx>& m, int q) {
    if (m.size() != 4) throw std::invalid_argument("unitary1: expected 2x2 matrix");
    if (unitarity_defect(m, 2) > kUnitaryTol)
        throw std::invalid_argument("unitary1: matrix is not unitary");
    return Gate{Kind::Unitary1, {q, -1}, m};
}

Gate Gate::unitary2(const std::vector<cplx>& m, int q0, int q1) {
    if (m.size() != 16) throw std::invalid_argument("unitary2: expected 4x4 matrix");
    if (q0 == q1) throw std::invalid_argument("unitary2: qubit indices collide");
    if (unitarity_defect(m, 4) > kUnitaryTol)
        throw std::invalid_argument("unitary2: matrix is not unitary");
    return Gate{Kind::Unitary2, {q0, q1}, m};
}

namespace {

// Fast single-qubit path: visits each amplitude pair (bit=0, bit=1) once.
template <typename PairOp>
void for_each_pair(PureState& state, int q, PairOp&& op) {
    const std::size_t stride = std::size_t{1} << (state.num_qubits - 1 - q);
    const std::size_t dim = state.dim();
    for (std::size_t base = 0; base < dim; base += 2 * stride)
        for (std::size_t i = base; i < base + stride; ++i)
            op(state.amps[i], state.amps[i + stride]);
}

}  // namespace

void apply_unitary_in_place(PureState& state, const std::vector<cplx>& matrix,
                            const std::vector<int>& qubits) {
    const int k = static_cast<int>(qubits.size());
    const std::size_t sub = std::size_t{1} << k;
    if (matrix.size() != sub * sub)
        throw std::invalid_argument("apply_unitary: matrix size does not match qubit count");
    std::size_t seen = 0;
    for (int q : qubits) {
        check_qubit(state, q);
        const std::size_t m = std::size_t{1} << (state.num_qubits - 1 - q);
        if (seen & m) throw std::invalid_argument("apply_unitary: duplicate qubit index");
        seen |= m;
    }

    // Bit position of each listed qubit within the full index; first listed
    // qubit is the most significant bit of the local index.
    std::vector<std::size_t> pos(qubits.size());
    for (int i = 0; i < k; ++i)
        pos[static_cast<std::size_t>(i)] =
            std::size_t{1} << (state.num_qubits - 1 - qubits[static_cast<std::size_t>(i)]);

    std::vector<cplx> in(sub), out(sub);
    const std::size_t dim = state.dim();
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & seen) continue;  // only indices with all listed bits clear
        for (std::size_t p = 0; p < sub; ++p) {
            std::size_t idx = base;
            for (int b = 0; b < k; ++b)
                if ((p >> (k - 1 - b)) & 1u) idx |= pos[static_cast<std::size_t>(b)];
            in[p] = state.amps[idx];
        }
        for (std::size_t r = 0; r < sub; ++r) {
            cplx s = 0.0;
            for (std::size_t c = 0; c < sub; ++c) s += matrix[r * sub + c] * in[c];
            out[r] = s;
        }
        for (std::size_t p = 0; p < sub; ++p) {
            std::size_t idx = base;
            for (int b = 0; b < k; ++b)
                if ((p >> (k - 1 - b)) & 1u) idx |= pos[static_cast<std::size_t>(b)];
            state.amps[idx] = out[p];
        }
    }
}

void apply_gate_in_place(PureState& state, const Gate& gate) {
    const int q0 = gate.qubits[0];
    switch (gate.kind) {
        case Gate::Kind::H: {
            check_qubit(state, q0);
            for_each_pair(state, q0, [](cplx& a0, cplx& a1) {
                const cplx t0 = (a0 + a1) * kInvSqrt2;
                const cplx t1 = (a0 - a1) * kInvSqrt2;
                a0 = t0;
                a1 = t1;
            });
            return;
        }
        case Gate::Kind::X: {
            check_qubit(state, q0);
            for_each_pair(state, q0, [](cplx& a0, cplx& a1) { std::swap(a0, a1); });
            return;
        }
        case Gate::Kind::Y: {
            check_qubit(state, q0);
            for_each_pair(state, q0, [](cplx& a0, cplx& a1) {
                const cplx t0 = cplx{0.0, -1.0} * a1;
                const cplx t1 = cplx{0.0, 1.0} * a0;
                a0 = t0;
                a1 = t1;
            });
            return;
        }
        case Gate::Kind::Z: {
            check_qubit(state, q0);
            for_each_pair(state, q0, [](cplx&, cplx& a1) { a1 = -a1; });
            return;
        }
        case Gate::Kind::Cnot: {
            const int control = q0;
            const int target = gate.qubits[1];
            check_qubit(state, control);
            check_qubit(state, target);
            if (control == target) throw std::invalid_argument("cnot: control == target");
            const std::size_t cm = std::size_t{1} << (state.num_qubits - 1 - control);
            const std::size_t tm = std::size_t{1} << (state.num_qubits - 1 - target);
            const std::size_t dim = state.dim();
            for (std::size_t i = 0; i < dim; ++i)
                if ((i & cm) && !(i & tm)) std::swap(state.amps[i], state.amps[i | tm]);
            return;
        }
        case Gate::Kind::Unitary1:
            apply_unitary_in_place(state, gate.matrix, {q0});
            return;
        case Gate::Kind::Unitary2:
            apply_unitary_in_place(state, gate.matrix, {q0, gate.qubits[1]});
            return;
    }
}

PureState apply_gate(PureState state, const Gate& gate) {
    apply_gate_in_place(state, gate);
    return state;
}

std::string measure_in_place(PureState& state, const std::vector<int>& qubits, Rng& rng) {
    if (qubits.empty()) throw std::invalid_argument("measure: empty qubit list");
    std::size_t seen = 0;
    for (int q : qubits) {
        check_qubit(state, q);
        const std::size_t m = std::size_t{1} << (state.num_qubits - 1 - q);
        if (seen & m) throw std::invalid_argument("measure: duplicate qubit index");
        seen |= m;
    }

    std::string bits;
    bits.reserve(qubits.size());
    const std::size_t dim = state.dim();
    for (int q : qubits) {
        const std::size_t mask = std::size_t{1} << (state.num_qubits - 1 - q);
        double p1 = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            if (i & mask) p1 += std::norm(state.amps[i]);
        const int bit = rng.uniform01() < p1 ? 1 : 0;
        const double p = bit ? p1 : 1.0 - p1;
        const double scale = 1.0 / std::sqrt(p);
        for (std::size_t i = 0; i < dim; ++i) {
            if (static_cast<int>((i & mask) != 0) == bit)
                state.amps[i] *= scale;
            else
                state.amps[i] = 0.0;
        }
        bits.push_back(bit ? '1' : '0');
    }
    return bits;
}

MeasureResult measure(const PureState& state, const std::vector<int>& qubits, Rng& rng) {
    MeasureResult result;
    result.state = state;
    result.bits = measure_in_place(result.state, qubits, rng);
    return result;
}

double outcome_probability(const PureState& state, const std::vector<int>& qubits,
                           const std::string& bits) {
    if (qubits.size() != bits.size())
        throw std::invalid_argument("outcome_probability: qubit/bit count mismatch");
    std::size_t mask = 0, want = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        check_qubit(state, qubits[i]);
        const std::size_t m = std::size_t{1} << (state.num_qubits - 1 - qubits[i]);
        mask |= m;
        if (bits[i] == '1')
            want |= m;
        else if (bits[i] != '0')
            throw std::invalid_argument("outcome_probability: non-binary bit string");
    }
    double p = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i)
        if ((i & mask) == want) p += std::norm(state.amps[i]);
    return p;
}

void project_in_place(PureState& state, const std::vector<int>& qubits,
                      const std::string& bits) {
    const double p = outcome_probability(state, qubits, bits);
    if (p <= 0.0)
        throw std::invalid_argument("project: outcome " + bits + " has zero probability");
    std::size_t mask = 0, want = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        const std::size_t m = std::size_t{1} << (state.num_qubits - 1 - qubits[i]);
        mask |= m;
        if (bits[i] == '1') want |= m;
    }
    const double scale = 1.0 / std::sqrt(p);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if ((i & mask) == want)
            state.amps[i] *= scale;
        else
            state.amps[i] = 0.0;
    }
}

BellLabel bell_label_from_bits(char b0, char b1) {
    const int code = (b0 == '1' ? 2 : 0) | (b1 == '1' ? 1 : 0);
    switch (code) {
        case 0: return BellLabel::PhiPlus;   // 00
        case 2: return BellLabel::PhiMinus;  // 10
        case 1: return BellLabel::PsiPlus;   // 01
        default: return BellLabel::PsiMinus; // 11
    }
}

BellMeasureResult bell_measure(const PureState& state, int q0, int q1, Rng& rng) {
    if (q0 == q1) throw std::invalid_argument("bell_measure: qubit indices collide");
    BellMeasureResult result;
    result.state = state;
    apply_gate_in_place(result.state, Gate::cnot(q0, q1));
    apply_gate_in_place(result.state, Gate::h(q0));
    const std::string bits = measure_in_place(result.state, {q0, q1}, rng);
    result.label = bell_label_from_bits(bits[0], bits[1]);
    return result;
}

}  // namespace belldisc
