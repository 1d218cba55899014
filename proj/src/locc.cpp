// SPDX-License-Identifier: Apache-2.0
#include "belldisc/locc.hpp"

#include <algorithm>
#include <cmath>

#include "belldisc/parallel.hpp"

namespace belldisc {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols != rhs.rows) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix out(rows, rhs.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const cplx v = at(i, k);
            if (v == cplx{}) continue;
            for (int j = 0; j < rhs.cols; ++j) out.at(i, j) += v * rhs.at(k, j);
        }
    return out;
}

Matrix Matrix::adjoint() const {
    Matrix out(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out.at(j, i) = std::conj(at(i, j));
    return out;
}

cplx Matrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < std::min(rows, cols); ++i) t += at(i, i);
    return t;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows * b.rows, a.cols * b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            for (int k = 0; k < b.rows; ++k)
                for (int l = 0; l < b.cols; ++l)
                    out.at(i * b.rows + k, j * b.cols + l) = a.at(i, j) * b.at(k, l);
    return out;
}

double unitary_defect(const Matrix& u) {
    if (u.rows != u.cols) return 1.0;
    double worst = 0.0;
    for (int i = 0; i < u.cols; ++i)
        for (int j = 0; j < u.cols; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < u.rows; ++k) s += std::conj(u.at(k, i)) * u.at(k, j);
            if (i == j) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    return worst;
}

bool is_unitary(const Matrix& u, double tol) { return unitary_defect(u) <= tol; }

Matrix haar_unitary(int n, Rng& rng) {
    Matrix g(n, n);
    for (cplx& v : g.a) v = cplx{rng.normal(), rng.normal()};
    // Modified Gram-Schmidt on columns, with a second pass for orthogonality
    // at machine precision.
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < j; ++k) {
                cplx proj = 0.0;
                for (int i = 0; i < n; ++i) proj += std::conj(g.at(i, k)) * g.at(i, j);
                for (int i = 0; i < n; ++i) g.at(i, j) -= proj * g.at(i, k);
            }
            double norm = 0.0;
            for (int i = 0; i < n; ++i) norm += std::norm(g.at(i, j));
            const double inv = 1.0 / std::sqrt(norm);
            for (int i = 0; i < n; ++i) g.at(i, j) *= inv;
        }
    }
    return g;
}

// ---------------------------------------------------------------------------

LocalStrategy LocalStrategy::make(int ancilla_dim, std::vector<cplx> ancilla_init,
                                  Matrix unitary) {
    if (ancilla_dim < 1) throw std::invalid_argument("local strategy: ancilla_dim must be >= 1");
    if (static_cast<int>(ancilla_init.size()) != ancilla_dim)
        throw std::invalid_argument("local strategy: ancilla_init has wrong dimension");
    double norm = 0.0;
    for (const cplx& v : ancilla_init) norm += std::norm(v);
    if (std::abs(norm - 1.0) > 1e-10)
        throw std::invalid_argument("local strategy: ancilla_init is not normalized");
    if (unitary.rows != 2 * ancilla_dim || unitary.cols != 2 * ancilla_dim)
        throw std::invalid_argument("local strategy: unitary has wrong dimension");
    if (!is_unitary(unitary, 1e-10))
        throw std::invalid_argument("local strategy: matrix is not unitary");
    return LocalStrategy{ancilla_dim, std::move(ancilla_init), std::move(unitary)};
}

LocalStrategy LocalStrategy::identity() {
    return make(1, {cplx{1.0, 0.0}}, Matrix::identity(2));
}

LocalStrategy LocalStrategy::z_measurement() {
    // CNOT from the system qubit onto the ancilla qubit; reading the ancilla
    // then reads the system bit without further disturbance.
    Matrix u(4, 4);
    u.at(0, 0) = 1.0;  // |s=0,a=0>
    u.at(1, 1) = 1.0;  // |s=0,a=1>
    u.at(3, 2) = 1.0;  // |s=1,a=0> -> |s=1,a=1>
    u.at(2, 3) = 1.0;
    return make(2, {cplx{1.0, 0.0}, cplx{0.0, 0.0}}, std::move(u));
}

std::vector<Matrix> kraus_operators(const LocalStrategy& strategy) {
    const int d = strategy.ancilla_dim;
    std::vector<Matrix> ops;
    ops.reserve(static_cast<std::size_t>(d));
    for (int outcome = 0; outcome < d; ++outcome) {
        Matrix k(2, 2);
        for (int s_out = 0; s_out < 2; ++s_out)
            for (int s_in = 0; s_in < 2; ++s_in) {
                cplx sum = 0.0;
                for (int a = 0; a < d; ++a)
                    sum += strategy.unitary.at(s_out * d + outcome, s_in * d + a) *
                           strategy.ancilla_init[static_cast<std::size_t>(a)];
                k.at(s_out, s_in) = sum;
            }
        ops.push_back(std::move(k));
    }
    return ops;
}

namespace {

double completeness_defect(const std::vector<Matrix>& kraus) {
    Matrix sum(2, 2);
    for (const Matrix& k : kraus) {
        const Matrix term = k.adjoint() * k;
        for (std::size_t i = 0; i < sum.a.size(); ++i) sum.a[i] += term.a[i];
    }
    sum.at(0, 0) -= 1.0;
    sum.at(1, 1) -= 1.0;
    double worst = 0.0;
    for (const cplx& v : sum.a) worst = std::max(worst, std::abs(v));
    return worst;
}

}  // namespace

KrausStrategy KrausStrategy::make(LocalStrategy alice, LocalStrategy bob,
                                  std::vector<BellLabel> guess_map) {
    if (static_cast<int>(guess_map.size()) != alice.ancilla_dim * bob.ancilla_dim)
        throw std::invalid_argument("strategy: guess map has wrong size");
    KrausStrategy s{std::move(alice), std::move(bob), std::move(guess_map)};
    if (completeness_defect(kraus_operators(s.alice)) > 1e-8 ||
        completeness_defect(kraus_operators(s.bob)) > 1e-8)
        throw std::invalid_argument("strategy: Kraus family is not complete");
    return s;
}

KrausStrategy random_guess_strategy() {
    return KrausStrategy::make(LocalStrategy::identity(), LocalStrategy::identity(),
                               {BellLabel::PhiPlus});
}

KrausStrategy z_measurement_strategy() {
    // Outcome pair (bit a, bit b): equal bits can only come from phi+/phi-,
    // unequal from psi+/psi-; announce one representative of each parity.
    std::vector<BellLabel> map = {BellLabel::PhiPlus, BellLabel::PsiPlus,
                                  BellLabel::PsiMinus, BellLabel::PhiMinus};
    return KrausStrategy::make(LocalStrategy::z_measurement(), LocalStrategy::z_measurement(),
                               std::move(map));
}

KrausStrategy strategy_from_joint_ancilla(int alice_dim, int bob_dim,
                                          const std::vector<cplx>& joint, Matrix alice_unitary,
                                          Matrix bob_unitary, std::vector<BellLabel> guess_map) {
    if (static_cast<int>(joint.size()) != alice_dim * bob_dim)
        throw std::invalid_argument("joint ancilla: wrong dimension");
    double norm = 0.0;
    for (const cplx& v : joint) norm += std::norm(v);
    if (std::abs(norm - 1.0) > 1e-10)
        throw std::invalid_argument("joint ancilla: not normalized");

    // Product test via the reduced state on Alice's side: G = Z Z^dag with
    // Z[a][b] = joint[a*bob_dim+b]. |z> is a product vector iff G has rank
    // one, i.e. tr(G^2) == (tr G)^2 == 1.
    Matrix z(alice_dim, bob_dim);
    z.a = joint;
    const Matrix g = z * z.adjoint();
    const Matrix g2 = g * g;
    const double purity = g2.trace().real();
    if (purity < 1.0 - 1e-9)
        throw std::invalid_argument(
            "joint ancilla: entangled across the parties; local strategies require a "
            "product ancilla");

    // Leading eigenvector of the rank-one G by power iteration.
    std::vector<cplx> za(static_cast<std::size_t>(alice_dim), cplx{0.0, 0.0});
    // Seed with the largest row of Z to avoid an orthogonal start.
    int best_row = 0;
    double best_norm = -1.0;
    for (int a = 0; a < alice_dim; ++a) {
        double row_norm = 0.0;
        for (int b = 0; b < bob_dim; ++b) row_norm += std::norm(z.at(a, b));
        if (row_norm > best_norm) {
            best_norm = row_norm;
            best_row = a;
        }
    }
    za[static_cast<std::size_t>(best_row)] = 1.0;
    for (int iter = 0; iter < 8; ++iter) {
        std::vector<cplx> next(za.size(), cplx{0.0, 0.0});
        for (int i = 0; i < alice_dim; ++i)
            for (int j = 0; j < alice_dim; ++j)
                next[static_cast<std::size_t>(i)] += g.at(i, j) * za[static_cast<std::size_t>(j)];
        double n = 0.0;
        for (const cplx& v : next) n += std::norm(v);
        const double inv = 1.0 / std::sqrt(n);
        for (cplx& v : next) v *= inv;
        za = std::move(next);
    }
    // zb = Z^dag za, normalized; phases follow Z itself.
    std::vector<cplx> zb(static_cast<std::size_t>(bob_dim), cplx{0.0, 0.0});
    for (int b = 0; b < bob_dim; ++b)
        for (int a = 0; a < alice_dim; ++a)
            zb[static_cast<std::size_t>(b)] += std::conj(za[static_cast<std::size_t>(a)]) * z.at(a, b);
    double zb_norm = 0.0;
    for (const cplx& v : zb) zb_norm += std::norm(v);
    const double inv = 1.0 / std::sqrt(zb_norm);
    for (cplx& v : zb) v *= inv;

    return KrausStrategy::make(LocalStrategy::make(alice_dim, std::move(za), std::move(alice_unitary)),
                               LocalStrategy::make(bob_dim, std::move(zb), std::move(bob_unitary)),
                               std::move(guess_map));
}

// ---------------------------------------------------------------------------
// Evaluator
// ---------------------------------------------------------------------------

namespace {

// Bell vectors with integer coefficients; the 1/sqrt2 normalization of each
// side enters as an exact factor 1/2 on the sandwich, which keeps the
// closed-form baseline values bit-exact.
constexpr std::array<std::array<double, 4>, 4> kBellCoeffs = {{
    {1.0, 0.0, 0.0, 1.0},   // phi+
    {1.0, 0.0, 0.0, -1.0},  // phi-
    {0.0, 1.0, 1.0, 0.0},   // psi+
    {0.0, 1.0, -1.0, 0.0},  // psi-
}};

// |<Psi| K_A (x) K_B |Psi>|^2 for all four Bell states at once.
std::array<double, 4> win_terms(const Matrix& ka, const Matrix& kb) {
    const Matrix joint = kron(ka, kb);
    std::array<double, 4> terms{};
    for (BellLabel label : kBellLabels) {
        const auto& bell = kBellCoeffs[static_cast<std::size_t>(label)];
        cplx sandwich = 0.0;
        for (int r = 0; r < 4; ++r) {
            if (bell[static_cast<std::size_t>(r)] == 0.0) continue;
            cplx row = 0.0;
            for (int c = 0; c < 4; ++c)
                row += joint.at(r, c) * bell[static_cast<std::size_t>(c)];
            sandwich += bell[static_cast<std::size_t>(r)] * row;
        }
        terms[static_cast<std::size_t>(label)] = std::norm(0.5 * sandwich);
    }
    return terms;
}

}  // namespace

WinProbability win_probability(const KrausStrategy& strategy) {
    const std::vector<Matrix> ka = kraus_operators(strategy.alice);
    const std::vector<Matrix> kb = kraus_operators(strategy.bob);
    WinProbability result;
    for (int i = 0; i < strategy.alice.ancilla_dim; ++i) {
        for (int j = 0; j < strategy.bob.ancilla_dim; ++j) {
            const auto terms = win_terms(ka[static_cast<std::size_t>(i)],
                                         kb[static_cast<std::size_t>(j)]);
            const BellLabel announced = strategy.guess(i, j);
            result.per_target[static_cast<std::size_t>(announced)] +=
                terms[static_cast<std::size_t>(announced)];
        }
    }
    result.value = (result.per_target[0] + result.per_target[1] + result.per_target[2] +
                    result.per_target[3]) /
                   4.0;
    return result;
}

std::vector<BellLabel> greedy_guess_map(const LocalStrategy& alice, const LocalStrategy& bob) {
    const std::vector<Matrix> ka = kraus_operators(alice);
    const std::vector<Matrix> kb = kraus_operators(bob);
    std::vector<BellLabel> map;
    map.reserve(static_cast<std::size_t>(alice.ancilla_dim * bob.ancilla_dim));
    for (int i = 0; i < alice.ancilla_dim; ++i) {
        for (int j = 0; j < bob.ancilla_dim; ++j) {
            const auto terms = win_terms(ka[static_cast<std::size_t>(i)],
                                         kb[static_cast<std::size_t>(j)]);
            std::size_t best = 0;
            for (std::size_t l = 1; l < 4; ++l)
                if (terms[l] > terms[best]) best = l;
            map.push_back(kBellLabels[best]);
        }
    }
    return map;
}

KrausStrategy random_strategy(int ancilla_dim, Rng& rng) {
    if (ancilla_dim != 1 && ancilla_dim != 2 && ancilla_dim != 4)
        throw std::invalid_argument("random_strategy: ancilla_dim must be 1, 2 or 4");
    std::vector<cplx> z(static_cast<std::size_t>(ancilla_dim), cplx{0.0, 0.0});
    z[0] = 1.0;
    LocalStrategy alice = LocalStrategy::make(ancilla_dim, z, haar_unitary(2 * ancilla_dim, rng));
    LocalStrategy bob = LocalStrategy::make(ancilla_dim, z, haar_unitary(2 * ancilla_dim, rng));
    std::vector<BellLabel> map = greedy_guess_map(alice, bob);
    return KrausStrategy::make(std::move(alice), std::move(bob), std::move(map));
}

// ---------------------------------------------------------------------------
// Monte Carlo dilation
// ---------------------------------------------------------------------------

namespace {

int log2_exact(int v) {
    int k = 0;
    while ((1 << k) < v) ++k;
    if ((1 << k) != v) return -1;
    return k;
}

}  // namespace

McEstimate monte_carlo_win_probability(const KrausStrategy& strategy, std::int64_t shots,
                                       std::uint64_t seed, int parallel) {
    if (shots < 1) throw std::invalid_argument("monte_carlo: shots must be >= 1");
    const int ka = log2_exact(strategy.alice.ancilla_dim);
    const int kb = log2_exact(strategy.bob.ancilla_dim);
    if (ka < 0 || kb < 0)
        throw std::invalid_argument("monte_carlo: ancilla dimensions must be powers of two");
    const int n = 2 + ka + kb;  // [A system, B system, A ancilla..., B ancilla...]

    std::vector<int> alice_block{0};
    for (int i = 0; i < ka; ++i) alice_block.push_back(2 + i);
    std::vector<int> bob_block{1};
    for (int i = 0; i < kb; ++i) bob_block.push_back(2 + ka + i);
    std::vector<int> alice_anc(alice_block.begin() + 1, alice_block.end());
    std::vector<int> bob_anc(bob_block.begin() + 1, bob_block.end());

    const int workers = resolve_workers(parallel);
    std::vector<std::int64_t> wins(static_cast<std::size_t>(workers), 0);
    parallel_chunks(shots, workers, [&](int w, std::int64_t begin, std::int64_t end) {
        std::int64_t local = 0;
        for (std::int64_t i = begin; i < end; ++i) {
            Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
            const BellLabel prepared = kBellLabels[rng.below(4)];

            // bell (x) zA (x) zB, assembled directly.
            PureState state = zero_state(n);
            const PureState bell = bell_pair(prepared);
            std::fill(state.amps.begin(), state.amps.end(), cplx{0.0, 0.0});
            const int da = strategy.alice.ancilla_dim, db = strategy.bob.ancilla_dim;
            for (int s = 0; s < 4; ++s) {
                const cplx bs = bell.amps[static_cast<std::size_t>(s)];
                if (bs == cplx{}) continue;
                for (int a = 0; a < da; ++a)
                    for (int b = 0; b < db; ++b) {
                        const std::size_t idx =
                            (static_cast<std::size_t>(s) * static_cast<std::size_t>(da) +
                             static_cast<std::size_t>(a)) *
                                static_cast<std::size_t>(db) +
                            static_cast<std::size_t>(b);
                        state.amps[idx] = bs * strategy.alice.ancilla_init[static_cast<std::size_t>(a)] *
                                          strategy.bob.ancilla_init[static_cast<std::size_t>(b)];
                    }
            }

            apply_unitary_in_place(state, strategy.alice.unitary.a, alice_block);
            apply_unitary_in_place(state, strategy.bob.unitary.a, bob_block);

            int alice_outcome = 0, bob_outcome = 0;
            if (!alice_anc.empty()) {
                const std::string bits = measure_in_place(state, alice_anc, rng);
                for (char c : bits) alice_outcome = alice_outcome * 2 + (c - '0');
            }
            if (!bob_anc.empty()) {
                const std::string bits = measure_in_place(state, bob_anc, rng);
                for (char c : bits) bob_outcome = bob_outcome * 2 + (c - '0');
            }
            const BellLabel announced = strategy.guess(alice_outcome, bob_outcome);
            const BellMeasureResult verified = bell_measure(state, 0, 1, rng);
            if (announced == prepared && verified.label == prepared) ++local;
        }
        wins[static_cast<std::size_t>(w)] += local;
    });

    std::int64_t total = 0;
    for (std::int64_t w : wins) total += w;
    const double p = static_cast<double>(total) / static_cast<double>(shots);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(shots)), shots};
}

// ---------------------------------------------------------------------------
// Optimizer
// ---------------------------------------------------------------------------

namespace {

// In-place left multiplication by a complex Givens rotation of rows (i, j).
void rotate_rows(Matrix& u, int i, int j, double theta, double phi) {
    const double c = std::cos(theta), s = std::sin(theta);
    const cplx phase = std::polar(1.0, phi);
    for (int col = 0; col < u.cols; ++col) {
        const cplx vi = u.at(i, col), vj = u.at(j, col);
        u.at(i, col) = c * vi - phase * s * vj;
        u.at(j, col) = std::conj(phase) * s * vi + c * vj;
    }
}

void phase_row(Matrix& u, int i, double theta) {
    const cplx phase = std::polar(1.0, theta);
    for (int col = 0; col < u.cols; ++col) u.at(i, col) *= phase;
}

double evaluate(const LocalStrategy& alice, const LocalStrategy& bob) {
    const std::vector<Matrix> ka = kraus_operators(alice);
    const std::vector<Matrix> kb = kraus_operators(bob);
    double sum = 0.0;
    for (const Matrix& a : ka)
        for (const Matrix& b : kb) {
            const auto terms = win_terms(a, b);
            sum += *std::max_element(terms.begin(), terms.end());
        }
    return sum / 4.0;
}

}  // namespace

OptimizeResult optimize_win_probability(const OptimizeOptions& options) {
    if (options.restarts < 1 || options.iterations < 1)
        throw std::invalid_argument("optimize: restarts and iterations must be >= 1");

    struct RestartOutcome {
        double best = -1.0;
        double max_evaluated = 0.0;
        LocalStrategy alice, bob;
        std::int64_t best_iteration = 0;
        std::vector<CampaignRow> log;
    };
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(options.restarts));

    parallel_chunks(options.restarts, resolve_workers(options.parallel),
                    [&](int, std::int64_t begin, std::int64_t end) {
        for (std::int64_t r = begin; r < end; ++r) {
            Rng rng = Rng::derive(options.seed, static_cast<std::uint64_t>(r));
            RestartOutcome& out = outcomes[static_cast<std::size_t>(r)];
            KrausStrategy current = random_strategy(options.ancilla_dim, rng);
            out.alice = current.alice;
            out.bob = current.bob;
            out.best = evaluate(out.alice, out.bob);
            out.max_evaluated = out.best;
            out.log.push_back({static_cast<int>(r), 0, out.best});

            const int dim = 2 * options.ancilla_dim;
            const double eps0 = 0.6, eps1 = 0.002;
            for (std::int64_t it = 1; it <= options.iterations; ++it) {
                const double frac = static_cast<double>(it) /
                                    static_cast<double>(options.iterations);
                const double eps = eps0 * std::pow(eps1 / eps0, frac);

                LocalStrategy& party = rng.below(2) == 0 ? out.alice : out.bob;
                Matrix proposal = party.unitary;
                if (dim >= 2 && rng.below(3) != 0) {
                    int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)));
                    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(dim - 1)));
                    if (j >= i) ++j;
                    rotate_rows(proposal, i, j, (2.0 * rng.uniform01() - 1.0) * eps,
                                2.0 * 3.141592653589793 * rng.uniform01());
                } else {
                    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)));
                    phase_row(proposal, i, (2.0 * rng.uniform01() - 1.0) * eps);
                }

                const Matrix saved = party.unitary;
                party.unitary = proposal;
                const double value = evaluate(out.alice, out.bob);
                out.max_evaluated = std::max(out.max_evaluated, value);
                if (value > out.best) {
                    out.best = value;
                    out.best_iteration = it;
                    out.log.push_back({static_cast<int>(r), it, value});
                } else {
                    party.unitary = saved;
                }
            }
        }
    });

    OptimizeResult result;
    result.best_value = -1.0;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        const RestartOutcome& out = outcomes[r];
        result.max_evaluated = std::max(result.max_evaluated, out.max_evaluated);
        result.log.insert(result.log.end(), out.log.begin(), out.log.end());
        if (out.best > result.best_value) {
            result.best_value = out.best;
            result.best_restart = static_cast<int>(r);
            result.best_iteration = out.best_iteration;
            result.best = KrausStrategy::make(out.alice, out.bob,
                                              greedy_guess_map(out.alice, out.bob));
        }
    }
    return result;
}

}  // namespace belldisc
