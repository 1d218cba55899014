// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "belldisc/qstate.hpp"
#include "belldisc/rng.hpp"

namespace belldisc {

// ---------------------------------------------------------------------------
// Small dense complex matrices
// ---------------------------------------------------------------------------

struct Matrix {
    int rows = 0, cols = 0;
    std::vector<cplx> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    cplx& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const cplx& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    static Matrix identity(int n);
    Matrix operator*(const Matrix& rhs) const;
    Matrix adjoint() const;
    cplx trace() const;
};

Matrix kron(const Matrix& a, const Matrix& b);
// max |(U^dag U - I)_{ij}|
double unitary_defect(const Matrix& u);
bool is_unitary(const Matrix& u, double tol = 1e-10);
// QR-style orthonormalization of a complex Gaussian matrix (Haar measure).
Matrix haar_unitary(int n, Rng& rng);

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

// One party's local apparatus: an ancilla of dimension d prepared in
// `ancilla_init`, a unitary on (system qubit x ancilla) with index layout
// s*d + a, and a computational-basis ancilla readout. Any other readout
// basis can be folded into the unitary, so this loses no generality.
struct LocalStrategy {
    int ancilla_dim = 1;
    std::vector<cplx> ancilla_init;  // length ancilla_dim, unit norm
    Matrix unitary;                  // (2 ancilla_dim) x (2 ancilla_dim)

    // Validates dimensions, normalization (1e-10) and unitarity (1e-10);
    // throws std::invalid_argument on violation.
    static LocalStrategy make(int ancilla_dim, std::vector<cplx> ancilla_init, Matrix unitary);
    static LocalStrategy identity();       // trivial 1-dimensional ancilla
    static LocalStrategy z_measurement();  // copies the system bit onto the ancilla
};

// Conditional system operators K^o = (I2 (x) <o|) U (I2 (x) |z>), one per
// ancilla outcome o. They satisfy sum_o K^dag K = I2 exactly in algebra;
// the numeric defect is checked against 1e-8 by KrausStrategy::make.
std::vector<Matrix> kraus_operators(const LocalStrategy& strategy);

// A full two-party strategy without shared entanglement: product ancilla,
// local unitaries, local readouts, and a joint classical decision rule
// mapping the outcome pair to an announced Bell label. The product ancilla
// is structural; a protocol needing an entangled |z> between the parties is
// not expressible here (see strategy_from_joint_ancilla).
//
// Two reductions the class relies on: every outcome announces some label
// (an abstaining outcome contributes zero to the score, so mapping it to any
// label never lowers the win probability), and a mixed separable ancilla
// never helps (the win probability is linear in the ancilla density
// operator, so the maximum over a separable state is attained at a pure
// product |zA> (x) |zB>).
struct KrausStrategy {
    LocalStrategy alice;
    LocalStrategy bob;
    std::vector<BellLabel> guess_map;  // index = alice_outcome * bob_dim + bob_outcome

    BellLabel guess(int alice_outcome, int bob_outcome) const {
        return guess_map[static_cast<std::size_t>(alice_outcome) *
                             static_cast<std::size_t>(bob.ancilla_dim) +
                         static_cast<std::size_t>(bob_outcome)];
    }

    static KrausStrategy make(LocalStrategy alice, LocalStrategy bob,
                              std::vector<BellLabel> guess_map);
};

KrausStrategy random_guess_strategy();   // touch nothing, always announce phi+
KrausStrategy z_measurement_strategy();  // both parties measure Z, decode by bit pair

// Rejects entangled joint ancilla vectors (Schmidt rank > 1 within 1e-9) with
// std::invalid_argument; otherwise factors |z> into the per-party states.
// `joint` has index layout alice_index * bob_dim + bob_index.
KrausStrategy strategy_from_joint_ancilla(int alice_dim, int bob_dim,
                                          const std::vector<cplx>& joint, Matrix alice_unitary,
                                          Matrix bob_unitary, std::vector<BellLabel> guess_map);

// ---------------------------------------------------------------------------
// Win probability
// ---------------------------------------------------------------------------

// Probability of announcing the prepared Bell state and leaving it intact,
// averaged over the four Bell states with equal priors:
//   (1/4) sum_Psi sum_{(i,j): guess(i,j)=Psi} |<Psi| K_A^i (x) K_B^j |Psi>|^2
struct WinProbability {
    double value = 0.0;
    std::array<double, 4> per_target{};  // success probability per Bell label
};

WinProbability win_probability(const KrausStrategy& strategy);

struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::int64_t shots = 0;
};

// Cross-check by sampling the dilated circuit: draw a Bell state uniformly,
// run both local unitaries on (system x ancilla), read the ancillas, then
// Bell-verify the system pair. Requires power-of-two ancilla dimensions.
McEstimate monte_carlo_win_probability(const KrausStrategy& strategy, std::int64_t shots,
                                       std::uint64_t seed, int parallel = 0);

// For each outcome pair, the announcement maximizing its own win term. Using
// it can only raise the win probability, so bound checks stay valid.
std::vector<BellLabel> greedy_guess_map(const LocalStrategy& alice, const LocalStrategy& bob);

// Haar-random local unitaries with the ancilla pinned to |0> (the unitary
// absorbs the ancilla preparation), greedy decision rule.
KrausStrategy random_strategy(int ancilla_dim, Rng& rng);

// ---------------------------------------------------------------------------
// Bound certification
// ---------------------------------------------------------------------------

struct OptimizeOptions {
    int ancilla_dim = 2;
    int restarts = 20;
    std::int64_t iterations = 800;
    std::uint64_t seed = 1;
    int parallel = 0;
};

struct CampaignRow {
    int restart;
    std::int64_t iteration;
    double p_win;
};

struct OptimizeResult {
    double best_value = 0.0;
    KrausStrategy best;
    int best_restart = 0;
    std::int64_t best_iteration = 0;
    // Max over every strategy evaluated, accepted or not; this is what a
    // bound certificate must look at.
    double max_evaluated = 0.0;
    std::vector<CampaignRow> log;  // improvements, per restart
};

// Derivative-free hill climb over the two local unitaries: random Givens
// rotations and row phases with a decreasing step, greedy guess map after
// every proposal, best-of-restarts. Restarts run in parallel on independent
// RNG streams.
OptimizeResult optimize_win_probability(const OptimizeOptions& options);

// Raised by callers (the CLI) when an evaluated strategy exceeds the 1/4
// classical bound beyond numerical tolerance; reaching it means the
// evaluator or the strategy constraints are broken.
class BoundViolation : public std::runtime_error {
  public:
    explicit BoundViolation(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kClassicalBound = 0.25;
inline constexpr double kBoundTolerance = 1e-6;

}  // namespace belldisc
