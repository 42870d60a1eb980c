#pragma once
// Dense matrices with optional exact rational entries, spectral norms by power
// iteration, rectangle partitions and the norm-vs-partition inequality used by
// every rectangle bound.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advtk/common.hpp"
#include "advtk/config.hpp"

namespace advtk {

struct Matrix {
    int rows = 0, cols = 0;
    std::vector<double> a;                   // row-major
    std::optional<std::vector<Rat>> exact;   // parallel exact entries when known

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c, 0.0) {}

    double& at(int r, int c) { return a[size_t(r) * cols + c]; }
    double at(int r, int c) const { return a[size_t(r) * cols + c]; }
    void set_exact(int r, int c, const Rat& v);
    static Matrix from_rational(int r, int c, const std::vector<Rat>& entries);
    bool all_zero() const;
};

// Combinatorial rectangle: sorted row and column index sets.
struct Rectangle {
    std::vector<int> rws, cls;
    size_t cells() const { return rws.size() * cls.size(); }
    bool empty() const { return rws.empty() || cls.empty(); }
};

struct RectanglePartition {
    std::vector<Rectangle> rects;
};

// ||A||_2 by power iteration on A^T A: deterministic all-ones start with a
// fixed seed-0 pseudorandom restart, Rayleigh threshold cfg.norm_tol,
// iteration cap cfg.norm_iter_cap.  Relative error <= 1e-10 at desk scale.
double spectral_norm(const Matrix& A, const Config& cfg = {},
                     ExecPolicy policy = ExecPolicy::Auto);

// Top singular triple (sigma, u, v) with optional warm-started right vector.
struct SvTriple {
    double sigma = 0.0;
    std::vector<double> u, v;
};
SvTriple top_singular(const Matrix& A, const std::vector<double>* warm_v,
                      double tol, uint64_t iter_cap, ExecPolicy policy = ExecPolicy::Auto);

double norm_one(const Matrix& A);  // max column abs sum
double norm_inf(const Matrix& A);  // max row abs sum

// An arbitrary subset of grid cells as (row, col) pairs.
using CellSet = std::vector<std::pair<int, int>>;

// Copy of A with entries outside `cells` zeroed; out-of-range cells throw.
Matrix mask_subset(const Matrix& A, const CellSet& cells);
Matrix mask_rectangle(const Matrix& A, const Rectangle& R);   // zero outside R
Matrix submatrix(const Matrix& A, const Rectangle& R);

// Validates that P partitions the full grid of A, then reports
// lhs = ||A||_2^2 against rhs = sum over rectangles of ||A_R||_2^2.
struct KeyLemmaReport {
    double lhs = 0, rhs = 0;
    bool holds = false;
};
KeyLemmaReport key_lemma_check(const Matrix& A, const RectanglePartition& P,
                               const Config& cfg = {});

// Exact rank over the rationals (fraction-free elimination); requires exact
// entries.
int rank_exact(const Matrix& A);

enum class RectMeasure { SpectralSq, Rank };

// Theorem-style partition lower bound mu(X x Y) / max_S mu(A restricted to S)
// over a covering list of cell sets (overlaps allowed).  Rank measure
// requires exact entries.  Errors: empty cover, cover that misses a cell,
// all-zero A.
double rectangle_measure_bound(const Matrix& A, RectMeasure measure,
                               const std::vector<CellSet>& cover,
                               const Config& cfg = {});

} // namespace advtk
