#pragma once
// Caps, tolerances, seeds and optimizer budgets.  Every knob here is surfaced
// as a CLI flag; the defaults below are the library-wide defaults.

#include <cstdint>

namespace advtk {

enum class ExecPolicy { Auto, Serial, Parallel };

struct Config {
    // resource caps
    uint64_t table_cap = 1ull << 20;       // max truth-table entries for iterate/builtins
    int restriction_cap = 12;              // max n for 3^n restriction enumeration
    int block_sens_cap = 12;               // max n for exact block sensitivity
    int minsize_cap_n = 4;                 // max arity for exact minimal formula search
    uint64_t partition_cells_cap = 64;     // max |X|*|Y| for exact partition number
    uint64_t opt_cells_cap = 1ull << 26;   // max |X|*|Y| for optimizers

    // numerics
    double norm_tol = 1e-14;               // Rayleigh-quotient convergence threshold
    uint64_t norm_iter_cap = 1000000;      // power-iteration cap
    double check_tol = 1e-9;               // inequality slack in verification checks

    // randomness / determinism
    uint64_t seed = 0;

    // spectral optimizer
    int spectral_restarts = 3;             // seeded random restarts (after structured starts)
    int spectral_iterations = 200;         // ascent steps per start
    uint64_t class_start_cells_cap = 4096; // pair-class coordinate ascent only below this

    // primal optimizers
    int primal_iterations = 3000;          // gradient steps per run
    int primal_restarts = 3;               // starts per schedule (uniform, certificate, seeded)
    int primal_schedules = 4;              // annealing schedule portfolio size
    double simplex_floor = 1e-6;           // interior floor of the probability simplex
    uint64_t primal_dense_cells_cap = 1ull << 20;  // above this, evaluate closed-form starts only

    // threading
    ExecPolicy policy = ExecPolicy::Auto;
};

// Number of OpenMP threads the Parallel/Auto policies may use; honours the
// ADVTK_THREADS environment variable, else the OpenMP default.
int worker_threads();

// True if `policy` resolves to parallel execution for a workload of `cells` units.
bool use_parallel(ExecPolicy policy, uint64_t cells);

} // namespace advtk
