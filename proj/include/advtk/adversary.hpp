#pragma once
// Quantum adversary bounds: witness evaluators for the sum and max variants,
// the spectral form, probability schemes, the classical special cases
// (Khrapchenko / Koutsoupias / Hastad random restrictions), composition,
// heuristic optimizers with exact re-certification, and the derived quantum /
// formula-size bounds.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "advtk/boolfn.hpp"
#include "advtk/common.hpp"
#include "advtk/config.hpp"
#include "advtk/matrix.hpp"

namespace advtk {

// One probability distribution over positions per domain input.
struct ProbabilityFamily {
    int n = 0;
    std::map<uint64_t, std::vector<double>> p;
};

// Checks shape, nonnegativity and unit sums (within cfg.check_tol), and that
// the family covers the whole domain of f.
void validate_family(const BooleanFunction& f, const ProbabilityFamily& w,
                     const Config& cfg = {});

struct EvalReport {
    double value = 0.0;   // the witness value (an upper bound on sumPI/maxPI)
    uint64_t wx = 0, wy = 0;  // attaining cross pair
};

// max over cross pairs of 1 / sum_{i: x_i != y_i} sqrt(p_x(i) p_y(i)).
// Errors: one-sided function ("no cross pairs"), zero denominator (named pair).
EvalReport eval_sumpi_witness(const BooleanFunction& f, const ProbabilityFamily& w,
                              const Config& cfg = {}, ExecPolicy policy = ExecPolicy::Auto);

// Same with max_i in place of the sum.
EvalReport eval_maxpi_witness(const BooleanFunction& f, const ProbabilityFamily& w,
                              const Config& cfg = {}, ExecPolicy policy = ExecPolicy::Auto);

// Monte-Carlo variant scanning `samples` uniformly seeded cross pairs; a cheap
// estimate (never used by verification paths).
EvalReport eval_sumpi_witness_sampled(const BooleanFunction& f, const ProbabilityFamily& w,
                                      uint64_t samples, uint64_t seed);

// Uniform distribution over a lexicographically-least minimum certificate of
// each input; for partial functions the side minimizing n * C_side keeps its
// certificates and the other side falls back to uniform over all positions.
// Degrades to the uniform family when the domain exceeds 20000 inputs (the
// exact certificate search is quadratic in the domain).
ProbabilityFamily certificate_witness(const BooleanFunction& f);

// p_x uniform over [n] for every domain input.
ProbabilityFamily uniform_witness(const BooleanFunction& f);

// Sensitivity-weighted family: sensitive positions of x get weight `ws`,
// insensitive ones `wi`, requiring the weights to sum to 1 on every input.
// With ws = 2/5, wi = 1/10 on the 4-bit sortedness function this is the
// classic 2.5-witness.
ProbabilityFamily sensitivity_witness(const BooleanFunction& f, const Rat& ws, const Rat& wi);

// Max-variant witness for collision(n): uniform on all-distinct inputs; on a
// colliding input, 1/2 on position 1 and 1/2 on its partner.
ProbabilityFamily collision_maxpi_witness(int n, const Config& cfg = {});

// ||Gamma|| / max_i ||Gamma_i|| for a nonnegative |X| x |Y| matrix.
struct SpectralReport {
    double value = 0, num = 0, den = 0;
    int argmax_index = -1;   // 1-based position attaining the denominator
};
SpectralReport spectral_value(const BooleanFunction& f, const Matrix& gamma,
                              const Config& cfg = {});

// Probability scheme (the PA quantity): q over cross pairs, p_A over X, p_B
// over Y, and per-(input, position) transition distributions onto the other
// side.
struct ProbSchemeWitness {
    int n = 0;
    std::map<std::pair<uint64_t, uint64_t>, double> q;               // (x,y) -> weight
    std::map<uint64_t, double> pA, pB;
    std::map<std::pair<uint64_t, int>, std::map<uint64_t, double>> px;  // (x,i)->dist over Y
    std::map<std::pair<uint64_t, int>, std::map<uint64_t, double>> py;  // (y,i)->dist over X
};

// min over admissible (x,y,i) of sqrt(pA(x) pB(y) px(y) py(x)) / q(x,y);
// a lower bound on sumPI.  Errors: q vanishing on all cross pairs.
double prob_scheme_value(const BooleanFunction& f, const ProbSchemeWitness& s,
                         const Config& cfg = {});

// |C|^2 / (|A| |B|) over Hamming-distance-1 cross pairs, exact.  This is the
// formula-size bound (the square of the sumPI bound).
struct RatValue {
    Rat exact;
    double value = 0;
};
RatValue khrapchenko(const BooleanFunction& f, const std::vector<uint64_t>& A,
                     const std::vector<uint64_t>& B);

// ||Q||_2^2 for the distance-1 indicator on A x B (formula-size bound).
double koutsoupias(const BooleanFunction& f, const std::vector<uint64_t>& A,
                   const std::vector<uint64_t>& B, const Config& cfg = {});

// Hastad's random-restriction bound
//   Pr[C|Delta]^2 / (Pr[A|Delta] Pr[B|Delta]) * ((1-p) / 2p)^2
// by exact enumeration of all 3^n restrictions (formula-size bound).
double hastad_bound(const BooleanFunction& f, double p, const Filter* delta = nullptr,
                    const Config& cfg = {}, ExecPolicy policy = ExecPolicy::Auto);

// Witness composition q_x(i) = p_{g(x)}(j) * p_{j,x}(i) for f = h(g_1,...,g_m)
// on consecutive blocks; the composed value is at most the product of the two
// witness values.
struct WitnessedBlock {
    const BooleanFunction* g = nullptr;
    const ProbabilityFamily* w = nullptr;
};
ProbabilityFamily compose_witness(const ProbabilityFamily& h_wit,
                                  const std::vector<WitnessedBlock>& blocks,
                                  const BooleanFunction& f);

// Index selection (the maxPI dual side): P_i >= 0 entrywise, sum_i P_i = all
// ones on X x Y, P_i vanishing where x_i = y_i.
struct IndexSelection {
    std::vector<Matrix> P;   // one 0/1 |X| x |Y| matrix per position
};
// True iff the P_i are 0/1, sum to the all-ones matrix, and P_i vanishes
// wherever x_i = y_i.  On failure `reason` (if given) names the constraint.
bool validate_index_selection(const BooleanFunction& f, const IndexSelection& sel,
                              std::string* reason = nullptr, const Config& cfg = {});
// ||A|| / max_i ||A o P_i|| (Hadamard products); throws VerifyError on an
// invalid selection and on a zero denominator.
double index_selection_value(const BooleanFunction& f, const IndexSelection& sel,
                             const Matrix& A, const Config& cfg = {});

// --- optimizers (heuristic search, exactly re-certified results) ---

struct SpectralOpt {
    double value = 0;       // spectral_value of gamma, recomputed exactly
    Matrix gamma;
    std::string start;      // which start won (diagnostic)
};
// Projected-gradient ascent on Gamma >= 0 (gradient = outer product of the top
// singular vectors, clip, rescale to max_i ||Gamma_i|| = 1) from structured and
// seeded starts.  Deterministic given (seed, iterations, restarts).
SpectralOpt optimize_spectral(const BooleanFunction& f, uint64_t seed, int iterations,
                              const Config& cfg = {});
SpectralOpt optimize_spectral(const BooleanFunction& f, const Config& cfg = {});

struct PrimalOpt {
    double value = 0;            // exact witness evaluation of `witness`
    ProbabilityFamily witness;
    Matrix dual_gamma;           // spectral start distilled from the multipliers
};
// Minimizes a log-sum-exp smoothed maximum of the pairwise reciprocals by
// projected gradient on the probability simplices, over a portfolio of
// annealing schedules; the returned value is re-evaluated exactly.
PrimalOpt optimize_sumpi_primal(const BooleanFunction& f, uint64_t seed, int iterations,
                                const Config& cfg = {});
PrimalOpt optimize_sumpi_primal(const BooleanFunction& f, const Config& cfg = {});
// Same with the inner sum replaced by a smoothed max over positions.
PrimalOpt optimize_maxpi_primal(const BooleanFunction& f, uint64_t seed, int iterations,
                                const Config& cfg = {});
PrimalOpt optimize_maxpi_primal(const BooleanFunction& f, const Config& cfg = {});

// --- brackets and derived bounds ---

struct Bound {
    double value = 0;
    std::string method;
};
struct Bracket {
    Bound lower, upper;
};
// lower = best certified spectral/Khrapchenko value, upper = best witness value.
Bracket sumpi_bracket(const BooleanFunction& f, const Config& cfg = {});
Bracket maxpi_bracket(const BooleanFunction& f, const Config& cfg = {});

// sqrt(C0 C1) for total functions, min over sides of sqrt(n C_side) for
// partial ones (upper limit of the max-variant bound).
double certificate_barrier(const BooleanFunction& f);

double quantum_bound(double v, double eps);        // (1 - 2 sqrt(eps(1-eps))) v
double formula_bound(double v);                    // v^2
double prob_formula_bound(double v, double eps);   // ((1-2eps) v)^2

} // namespace advtk
