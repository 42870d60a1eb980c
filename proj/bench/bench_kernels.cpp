// Benchmarks the parallel kernels against the serial reference paths and
// checks that both produce identical results.
//
//   bench_kernels [n] [reps]
//
// Covers the two hot loops: the cross-pair overlap scan behind witness
// evaluation, and the power-iteration matvec behind spectral norms.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "advtk/adversary.hpp"
#include "advtk/boolfn.hpp"
#include "advtk/matrix.hpp"
#include "advtk/pairscan.hpp"

using namespace advtk;
using clk = std::chrono::steady_clock;

namespace {

double ms_since(clk::time_point t0) {
    return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

template <class F>
double timed(int reps, F&& body) {
    auto t0 = clk::now();
    for (int r = 0; r < reps; ++r) body();
    return ms_since(t0) / reps;
}

} // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 16;
    int reps = argc > 2 ? std::atoi(argv[2]) : 3;
    Config cfg;
    cfg.table_cap = 1u << 26;
    cfg.opt_cells_cap = 1ull << 40;

    std::printf("threads: %d\n", worker_threads());

    // --- pair scan: parity(n) with the uniform witness ---
    BooleanFunction f = builtin("parity", {n}, cfg);
    ProbabilityFamily w = uniform_witness(f);
    EvalReport serial, parallel;
    double t_serial = timed(reps, [&] { serial = eval_sumpi_witness(f, w, cfg, ExecPolicy::Serial); });
    double t_par = timed(reps, [&] { parallel = eval_sumpi_witness(f, w, cfg, ExecPolicy::Parallel); });
    bool scan_same = serial.value == parallel.value && serial.wx == parallel.wx &&
                     serial.wy == parallel.wy;
    std::printf("pair scan  parity(%d): %10.2f ms serial  %10.2f ms parallel  x%.2f  %s\n", n,
                t_serial, t_par, t_serial / t_par, scan_same ? "identical" : "MISMATCH");

    // --- spectral norm: dense pseudorandom square matrix ---
    int dim = 1 << (n > 18 ? 9 : n / 2 + 1);
    Matrix A(dim, dim);
    Rng rng(12345);
    for (double& v : A.a) v = rng.uniform();
    double norm_serial = 0, norm_par = 0;
    double t_ns = timed(reps, [&] { norm_serial = spectral_norm(A, cfg, ExecPolicy::Serial); });
    double t_np = timed(reps, [&] { norm_par = spectral_norm(A, cfg, ExecPolicy::Parallel); });
    bool norm_same = norm_serial == norm_par;
    std::printf("matvec %4dx%-4d      : %10.2f ms serial  %10.2f ms parallel  x%.2f  %s\n", dim,
                dim, t_ns, t_np, t_ns / t_np, norm_same ? "identical" : "MISMATCH");

    if (!scan_same || !norm_same) {
        std::printf("FAIL: parallel kernels diverged from the serial reference\n");
        return 1;
    }
    return 0;
}
