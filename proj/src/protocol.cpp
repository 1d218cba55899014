// SPDX-License-Identifier: Apache-2.0
#include "belldisc/protocol.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>

#include "belldisc/parallel.hpp"

namespace belldisc {

bool WireMap::valid() const {
    const auto idx = all();
    std::set<int> unique(idx.begin(), idx.end());
    return unique.size() == idx.size() &&
           *std::min_element(idx.begin(), idx.end()) >= 0;
}

const char* to_string(TruthClass cls) {
    switch (cls) {
        case TruthClass::TT: return "TT";
        case TruthClass::TF: return "TF";
        case TruthClass::FT: return "FT";
        case TruthClass::FF: return "FF";
    }
    return "?";
}

TruthClass classify_shot(BellLabel target, std::optional<BellLabel> guess, BellLabel verified) {
    const bool discriminated = guess.has_value() && *guess == target;
    const bool preserved = verified == target;
    if (discriminated) return preserved ? TruthClass::TT : TruthClass::TF;
    return preserved ? TruthClass::FT : TruthClass::FF;
}

void write_records_csv(std::ostream& out, const std::vector<ShotRecord>& records) {
    out << "target,ancilla_bits,guess,verified,class\n";
    for (const ShotRecord& r : records) {
        out << to_string(r.target) << ',' << r.ancilla_bits << ','
            << (r.guess ? to_string(*r.guess) : "none") << ',' << to_string(r.verified)
            << ',' << to_string(r.cls) << '\n';
    }
}

std::vector<Gate> discrimination_layers(const WireMap& wires) {
    if (!wires.valid()) throw std::invalid_argument("discrimination_layers: invalid wire map");
    return {
        Gate::cnot(wires.sA, wires.a2), Gate::cnot(wires.sB, wires.b2),
        Gate::cnot(wires.a1, wires.sA), Gate::cnot(wires.b1, wires.sB),
        Gate::h(wires.a1),              Gate::h(wires.b1),
    };
}

namespace {

// Pauli on the second qubit of a phi+ pair selecting the Bell label.
// 0 = identity, 1 = X, 2 = Y, 3 = Z.
int label_selector(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return 0;
        case BellLabel::PsiPlus: return 1;
        case BellLabel::PsiMinus: return 2;  // Y, up to global phase i
        case BellLabel::PhiMinus: return 3;
    }
    return 0;
}

void push_selector(std::vector<Gate>& gates, BellLabel label, int qubit) {
    switch (label_selector(label)) {
        case 1: gates.push_back(Gate::x(qubit)); break;
        case 2: gates.push_back(Gate::y(qubit)); break;
        case 3: gates.push_back(Gate::z(qubit)); break;
        default: break;
    }
}

// Identity as an explicit 1-qubit gate, so the phi+ target still spends the
// same gate count (and noise exposure) as the other three labels.
Gate identity_gate(int qubit) {
    return Gate::unitary1({cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}}, qubit);
}

}  // namespace

std::vector<Gate> preparation_gates(BellLabel target, BellLabel ancilla1, BellLabel ancilla2,
                                    const WireMap& wires) {
    if (!wires.valid()) throw std::invalid_argument("preparation_gates: invalid wire map");
    std::vector<Gate> gates;
    gates.push_back(Gate::h(wires.a1));
    gates.push_back(Gate::cnot(wires.a1, wires.b1));
    push_selector(gates, ancilla1, wires.b1);
    gates.push_back(Gate::h(wires.a2));
    gates.push_back(Gate::cnot(wires.a2, wires.b2));
    push_selector(gates, ancilla2, wires.b2);
    gates.push_back(Gate::h(wires.sA));
    gates.push_back(Gate::cnot(wires.sA, wires.sB));
    if (label_selector(target) == 0)
        gates.push_back(identity_gate(wires.sB));
    else
        push_selector(gates, target, wires.sB);
    return gates;
}

std::vector<Gate> verification_gates(const WireMap& wires) {
    return {Gate::cnot(wires.sA, wires.sB), Gate::h(wires.sA)};
}

BellLabel classify_outcome(const std::string& bits) {
    if (bits.size() != 4) throw std::invalid_argument("classify_outcome: need 4 bits");
    int value[4];
    for (int i = 0; i < 4; ++i) {
        const char c = bits[static_cast<std::size_t>(i)];
        if (c != '0' && c != '1')
            throw std::invalid_argument("classify_outcome: non-binary string");
        value[i] = c - '0';
    }
    const int parity1 = value[0] ^ value[1];
    const int parity2 = value[2] ^ value[3];
    if (parity1 == 0) return parity2 == 0 ? BellLabel::PhiPlus : BellLabel::PsiPlus;
    return parity2 == 0 ? BellLabel::PhiMinus : BellLabel::PsiMinus;
}

std::array<std::string, 4> outcome_strings(BellLabel label) {
    std::array<std::string, 4> rows;
    std::size_t next = 0;
    for (int v = 0; v < 16; ++v) {
        std::string bits = {
            char('0' + ((v >> 3) & 1)), char('0' + ((v >> 2) & 1)),
            char('0' + ((v >> 1) & 1)), char('0' + (v & 1))};
        if (classify_outcome(bits) == label) rows[next++] = std::move(bits);
    }
    return rows;
}

std::pair<BellLabel, BellLabel> expected_ancilla_state(BellLabel target) {
    switch (target) {
        case BellLabel::PhiPlus: return {BellLabel::PhiPlus, BellLabel::PhiPlus};
        case BellLabel::PhiMinus: return {BellLabel::PsiPlus, BellLabel::PhiPlus};
        case BellLabel::PsiPlus: return {BellLabel::PhiPlus, BellLabel::PsiPlus};
        case BellLabel::PsiMinus: return {BellLabel::PsiPlus, BellLabel::PsiPlus};
    }
    throw std::invalid_argument("expected_ancilla_state: bad label");
}

ShotRecord run_trial(BellLabel target, BellLabel ancilla1, BellLabel ancilla2,
                     const NoiseModel& noise, Rng& rng) {
    const WireMap wires = WireMap::standard();
    PureState state = zero_state(6);
    for (const Gate& g : preparation_gates(target, ancilla1, ancilla2, wires))
        apply_noisy_gate(state, g, noise, rng);
    for (const Gate& g : discrimination_layers(wires))
        apply_noisy_gate(state, g, noise, rng);

    // Readout is one qubit at a time with its flip applied immediately; the
    // two-party harness replays the identical draw order.
    std::string ancilla_bits;
    for (int q : {wires.a1, wires.b1, wires.a2, wires.b2})
        ancilla_bits += flip_readout(measure_in_place(state, {q}, rng), noise, rng);

    ShotRecord record;
    record.target = target;
    record.ancilla_bits = ancilla_bits;
    record.guess = classify_outcome(ancilla_bits);

    for (const Gate& g : verification_gates(wires))
        apply_noisy_gate(state, g, noise, rng);
    std::string verify_bits;
    for (int q : {wires.sA, wires.sB})
        verify_bits += flip_readout(measure_in_place(state, {q}, rng), noise, rng);
    record.verified = bell_label_from_bits(verify_bits[0], verify_bits[1]);
    record.cls = classify_shot(record.target, record.guess, record.verified);
    return record;
}

TrialDistribution enumerate_trial(BellLabel target, BellLabel ancilla1, BellLabel ancilla2) {
    constexpr double kBranchCutoff = 1e-12;
    const WireMap wires = WireMap::standard();
    const NoiseModel noiseless;
    Rng unused(0);  // noiseless gate path consumes no randomness

    PureState state = zero_state(6);
    for (const Gate& g : preparation_gates(target, ancilla1, ancilla2, wires))
        apply_noisy_gate(state, g, noiseless, unused);
    for (const Gate& g : discrimination_layers(wires))
        apply_noisy_gate(state, g, noiseless, unused);

    const std::vector<int> ancilla_qubits = {wires.a1, wires.b1, wires.a2, wires.b2};
    TrialDistribution dist;
    dist.target = target;

    double total = 0.0, d_sum = 0.0, f_sum = 0.0, succ_sum = 0.0;
    for (int v = 0; v < 16; ++v) {
        std::string bits = {
            char('0' + ((v >> 3) & 1)), char('0' + ((v >> 2) & 1)),
            char('0' + ((v >> 1) & 1)), char('0' + (v & 1))};
        const double p = outcome_probability(state, ancilla_qubits, bits);
        if (p < kBranchCutoff) continue;

        PureState branch = state;
        project_in_place(branch, ancilla_qubits, bits);
        for (const Gate& g : verification_gates(wires))
            apply_noisy_gate(branch, g, noiseless, unused);

        BranchOutcome outcome;
        outcome.ancilla_bits = bits;
        outcome.probability = p;
        outcome.guess = classify_outcome(bits);

        // Probabilities of the four verification readouts, renormalized
        // within the branch; the map to labels follows bell_label_from_bits.
        double branch_total = 0.0;
        std::array<double, 4> verified{};
        for (int code = 0; code < 4; ++code) {
            const std::string vb = {char('0' + (code >> 1)), char('0' + (code & 1))};
            const double q = outcome_probability(branch, {wires.sA, wires.sB}, vb);
            verified[static_cast<std::size_t>(bell_label_from_bits(vb[0], vb[1]))] = q;
            branch_total += q;
        }
        for (double& q : verified) q /= branch_total;
        outcome.verified_probs = verified;

        const bool guessed = *outcome.guess == target;
        const double preserved = verified[static_cast<std::size_t>(target)];
        total += p;
        if (guessed) d_sum += p;
        f_sum += p * preserved;
        if (guessed) succ_sum += p * preserved;
        dist.branches.push_back(std::move(outcome));
    }

    dist.p_d = d_sum / total;
    dist.p_f = f_sum / total;
    dist.p_succ = succ_sum / total;
    return dist;
}

AncillaSource ideal_ancillas() {
    return [](Rng&) { return std::make_pair(BellLabel::PhiPlus, BellLabel::PhiPlus); };
}

double TargetStats::rate(TruthClass cls) const {
    const std::int64_t n = cls == TruthClass::TT   ? tt
                           : cls == TruthClass::TF ? tf
                           : cls == TruthClass::FT ? ft
                                                   : ff;
    return static_cast<double>(n) / static_cast<double>(shots);
}

double TargetStats::stderr_of(double p) const {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
}

std::int64_t ExperimentStats::total_shots() const {
    std::int64_t n = 0;
    for (const TargetStats& t : per_target) n += t.shots;
    return n;
}

namespace {
template <typename Fn>
double target_mean(const std::vector<TargetStats>& per_target, Fn&& fn) {
    double s = 0.0;
    for (const TargetStats& t : per_target) s += fn(t);
    return s / static_cast<double>(per_target.size());
}
}  // namespace

double ExperimentStats::p_d() const {
    return target_mean(per_target, [](const TargetStats& t) { return t.p_d(); });
}
double ExperimentStats::p_f() const {
    return target_mean(per_target, [](const TargetStats& t) { return t.p_f(); });
}
double ExperimentStats::p_succ() const {
    return target_mean(per_target, [](const TargetStats& t) { return t.p_succ(); });
}
double ExperimentStats::rate(TruthClass cls) const {
    return target_mean(per_target, [cls](const TargetStats& t) { return t.rate(cls); });
}
double ExperimentStats::pooled_stderr(double p) const {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(total_shots()));
}

ExperimentStats run_experiment(const std::vector<BellLabel>& targets, std::int64_t shots,
                               const AncillaSource& ancillas, const NoiseModel& noise,
                               std::uint64_t seed, int parallel) {
    if (shots < 1) throw std::invalid_argument("run_experiment: shots must be >= 1");
    if (targets.empty()) throw std::invalid_argument("run_experiment: no targets");
    validate(noise);

    ExperimentStats stats;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const int workers = resolve_workers(parallel);
        std::vector<TargetStats> partial(static_cast<std::size_t>(workers));
        parallel_chunks(shots, workers, [&](int w, std::int64_t begin, std::int64_t end) {
            TargetStats& acc = partial[static_cast<std::size_t>(w)];
            for (std::int64_t i = begin; i < end; ++i) {
                Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(t) * shots +
                                                static_cast<std::uint64_t>(i));
                const auto [anc1, anc2] = ancillas(rng);
                const ShotRecord rec = run_trial(targets[t], anc1, anc2, noise, rng);
                acc.shots += 1;
                switch (rec.cls) {
                    case TruthClass::TT: acc.tt += 1; break;
                    case TruthClass::TF: acc.tf += 1; break;
                    case TruthClass::FT: acc.ft += 1; break;
                    case TruthClass::FF: acc.ff += 1; break;
                }
            }
        });
        TargetStats merged;
        merged.target = targets[t];
        for (const TargetStats& p : partial) {
            merged.shots += p.shots;
            merged.tt += p.tt;
            merged.tf += p.tf;
            merged.ft += p.ft;
            merged.ff += p.ff;
        }
        stats.per_target.push_back(merged);
    }
    return stats;
}

}  // namespace belldisc
