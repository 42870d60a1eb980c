#include "advtk/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include <boost/multiprecision/cpp_int.hpp>

namespace advtk {

void Matrix::set_exact(int r, int c, const Rat& v) {
    if (!exact) exact.emplace(size_t(rows) * cols, Rat(0));
    (*exact)[size_t(r) * cols + c] = v;
    at(r, c) = v.to_double();
}

Matrix Matrix::from_rational(int r, int c, const std::vector<Rat>& entries) {
    if (entries.size() != size_t(r) * c) throw UsageError("entry count does not match shape");
    Matrix A(r, c);
    A.exact = entries;
    for (size_t i = 0; i < entries.size(); ++i) A.a[i] = entries[i].to_double();
    return A;
}

bool Matrix::all_zero() const {
    for (double v : a)
        if (v != 0.0) return false;
    return true;
}

namespace {

// y = A v and z = A^T y, each row/column accumulated serially so the result
// is identical under any thread count.
void matvec(const Matrix& A, const std::vector<double>& v, std::vector<double>& y,
            bool parallel) {
    y.assign(A.rows, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(worker_threads()) if (parallel)
#endif
    for (int r = 0; r < A.rows; ++r) {
        const double* row = &A.a[size_t(r) * A.cols];
        double s = 0;
        for (int c = 0; c < A.cols; ++c) s += row[c] * v[c];
        y[r] = s;
    }
}

void matvec_t(const Matrix& A, const std::vector<double>& y, std::vector<double>& z,
              bool parallel) {
    z.assign(A.cols, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(worker_threads()) if (parallel)
#endif
    for (int c = 0; c < A.cols; ++c) {
        double s = 0;
        for (int r = 0; r < A.rows; ++r) s += A.a[size_t(r) * A.cols + c] * y[r];
        z[c] = s;
    }
}

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

SvTriple power_run(const Matrix& A, std::vector<double> v, double tol, uint64_t iter_cap,
                   bool parallel) {
    SvTriple out;
    double nv = norm2(v);
    if (nv == 0.0) return out;
    for (double& x : v) x /= nv;
    std::vector<double> y, z;
    double lambda = -1.0;
    int stalls = 0;
    for (uint64_t it = 0; it < iter_cap; ++it) {
        matvec(A, v, y, parallel);
        double l = 0;
        for (double x : y) l += x * x;  // v is unit, so l = ||Av||^2
        matvec_t(A, y, z, parallel);
        double nz = norm2(z);
        if (nz == 0.0) {
            lambda = l;
            break;
        }
        for (size_t i = 0; i < z.size(); ++i) v[i] = z[i] / nz;
        // require the Rayleigh quotient to stall on consecutive iterations, so
        // a slowly-converging run is not declared done prematurely
        if (lambda >= 0 && std::abs(l - lambda) <= tol * std::max(l, 1e-300)) {
            if (++stalls >= 3) {
                lambda = l;
                break;
            }
        } else {
            stalls = 0;
        }
        lambda = l;
    }
    matvec(A, v, y, parallel);
    double sig = norm2(y);
    out.sigma = sig;
    out.v = v;
    if (sig > 0) {
        out.u = y;
        for (double& x : out.u) x /= sig;
    } else {
        out.u.assign(A.rows, 0.0);
    }
    return out;
}

} // namespace

SvTriple top_singular(const Matrix& A, const std::vector<double>* warm_v, double tol,
                      uint64_t iter_cap, ExecPolicy policy) {
    if (A.rows <= 0 || A.cols <= 0) throw UsageError("empty matrix");
    bool par = use_parallel(policy, uint64_t(A.rows) * A.cols);
    std::vector<double> v0;
    if (warm_v && warm_v->size() == size_t(A.cols)) {
        v0 = *warm_v;
    } else {
        v0.assign(A.cols, 1.0);
    }
    return power_run(A, std::move(v0), tol, iter_cap, par);
}

double spectral_norm(const Matrix& A, const Config& cfg, ExecPolicy policy) {
    if (A.rows <= 0 || A.cols <= 0) throw UsageError("empty matrix");
    if (A.all_zero()) return 0.0;
    bool par = use_parallel(policy, uint64_t(A.rows) * A.cols);
    std::vector<double> ones(A.cols, 1.0);
    SvTriple a = power_run(A, ones, cfg.norm_tol, cfg.norm_iter_cap, par);
    // Guard run from a fixed pseudorandom start: the deterministic all-ones
    // start can be orthogonal to the top singular vector.
    Rng rng(0);
    std::vector<double> r(A.cols);
    for (double& x : r) x = rng.uniform() + 0.25;
    SvTriple b = power_run(A, std::move(r), cfg.norm_tol, cfg.norm_iter_cap, par);
    return std::max(a.sigma, b.sigma);
}

double norm_one(const Matrix& A) {
    double best = 0;
    for (int c = 0; c < A.cols; ++c) {
        double s = 0;
        for (int r = 0; r < A.rows; ++r) s += std::abs(A.at(r, c));
        best = std::max(best, s);
    }
    return best;
}

double norm_inf(const Matrix& A) {
    double best = 0;
    for (int r = 0; r < A.rows; ++r) {
        double s = 0;
        for (int c = 0; c < A.cols; ++c) s += std::abs(A.at(r, c));
        best = std::max(best, s);
    }
    return best;
}

Matrix mask_subset(const Matrix& A, const CellSet& cells) {
    Matrix M(A.rows, A.cols);
    if (A.exact) M.exact.emplace(size_t(A.rows) * A.cols, Rat(0));
    for (const auto& [r, c] : cells) {
        if (r < 0 || r >= A.rows || c < 0 || c >= A.cols)
            throw UsageError("cell (" + std::to_string(r) + "," + std::to_string(c) +
                             ") outside a " + std::to_string(A.rows) + "x" +
                             std::to_string(A.cols) + " grid");
        M.at(r, c) = A.at(r, c);
        if (A.exact) (*M.exact)[size_t(r) * A.cols + c] = (*A.exact)[size_t(r) * A.cols + c];
    }
    return M;
}

Matrix mask_rectangle(const Matrix& A, const Rectangle& R) {
    Matrix M(A.rows, A.cols);
    if (A.exact) M.exact.emplace(size_t(A.rows) * A.cols, Rat(0));
    for (int r : R.rws) {
        if (r < 0 || r >= A.rows) throw UsageError("rectangle row out of range");
        for (int c : R.cls) {
            if (c < 0 || c >= A.cols) throw UsageError("rectangle column out of range");
            M.at(r, c) = A.at(r, c);
            if (A.exact) (*M.exact)[size_t(r) * A.cols + c] = (*A.exact)[size_t(r) * A.cols + c];
        }
    }
    return M;
}

Matrix submatrix(const Matrix& A, const Rectangle& R) {
    Matrix M(int(R.rws.size()), int(R.cls.size()));
    if (A.exact) M.exact.emplace(R.rws.size() * R.cls.size(), Rat(0));
    for (size_t i = 0; i < R.rws.size(); ++i) {
        int r = R.rws[i];
        if (r < 0 || r >= A.rows) throw UsageError("rectangle row out of range");
        for (size_t j = 0; j < R.cls.size(); ++j) {
            int c = R.cls[j];
            if (c < 0 || c >= A.cols) throw UsageError("rectangle column out of range");
            M.at(int(i), int(j)) = A.at(r, c);
            if (A.exact)
                (*M.exact)[i * R.cls.size() + j] = (*A.exact)[size_t(r) * A.cols + c];
        }
    }
    return M;
}

KeyLemmaReport key_lemma_check(const Matrix& A, const RectanglePartition& P, const Config& cfg) {
    // the rectangles must tile the grid exactly once
    std::vector<uint8_t> seen(size_t(A.rows) * A.cols, 0);
    size_t covered = 0;
    for (const Rectangle& R : P.rects) {
        for (int r : R.rws) {
            if (r < 0 || r >= A.rows) throw UsageError("rectangle row out of range");
            for (int c : R.cls) {
                if (c < 0 || c >= A.cols) throw UsageError("rectangle column out of range");
                uint8_t& s = seen[size_t(r) * A.cols + c];
                if (s) throw UsageError("rectangles overlap at (" + std::to_string(r) + "," +
                                        std::to_string(c) + ")");
                s = 1;
                ++covered;
            }
        }
    }
    if (covered != size_t(A.rows) * A.cols)
        throw UsageError("rectangles do not cover the grid");
    KeyLemmaReport rep;
    double l = spectral_norm(A, cfg);
    rep.lhs = l * l;
    rep.rhs = 0;
    for (const Rectangle& R : P.rects) {
        if (R.empty()) continue;
        double s = spectral_norm(submatrix(A, R), cfg);
        rep.rhs += s * s;
    }
    rep.holds = rep.lhs <= rep.rhs + cfg.check_tol;
    return rep;
}

int rank_exact(const Matrix& A) {
    if (!A.exact) throw UsageError("rank_exact requires exact rational entries");
    using Big = boost::multiprecision::cpp_int;
    int m = A.rows, n = A.cols;
    // Row-scale to integers (scaling by positive constants preserves rank).
    std::vector<std::vector<Big>> M(m, std::vector<Big>(n));
    for (int r = 0; r < m; ++r) {
        long long l = 1;
        for (int c = 0; c < n; ++c) {
            long long d = (*A.exact)[size_t(r) * n + c].den;
            l = std::lcm(l, d);
        }
        for (int c = 0; c < n; ++c) {
            const Rat& q = (*A.exact)[size_t(r) * n + c];
            M[r][c] = Big(q.num) * (l / q.den);
        }
    }
    // Fraction-free (Bareiss) elimination with row pivoting.
    int rank = 0;
    Big prev = 1;
    for (int col = 0; col < n && rank < m; ++col) {
        int pivot = -1;
        for (int r = rank; r < m; ++r)
            if (M[r][col] != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(M[rank], M[pivot]);
        for (int r = rank + 1; r < m; ++r) {
            for (int c = col + 1; c < n; ++c)
                M[r][c] = (M[rank][col] * M[r][c] - M[r][col] * M[rank][c]) / prev;
            M[r][col] = 0;
        }
        prev = M[rank][col];
        ++rank;
    }
    return rank;
}

double rectangle_measure_bound(const Matrix& A, RectMeasure measure,
                               const std::vector<CellSet>& cover, const Config& cfg) {
    if (cover.empty()) throw UsageError("empty covering");
    if (A.all_zero()) throw UsageError("measure bound undefined for the zero matrix");
    std::vector<uint8_t> seen(size_t(A.rows) * A.cols, 0);
    for (const CellSet& S : cover)
        for (const auto& [r, c] : S) {
            if (r < 0 || r >= A.rows || c < 0 || c >= A.cols)
                throw UsageError("cover cell out of range");
            seen[size_t(r) * A.cols + c] = 1;
        }
    for (size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw UsageError("cover misses cell (" + std::to_string(i / A.cols) + "," +
                             std::to_string(i % A.cols) + ")");
    auto mu = [&](const Matrix& M) -> double {
        if (measure == RectMeasure::SpectralSq) {
            double s = spectral_norm(M, cfg);
            return s * s;
        }
        return double(rank_exact(M));
    };
    double total = mu(A);
    double worst = 0;
    for (const CellSet& S : cover) worst = std::max(worst, mu(mask_subset(A, S)));
    return total / worst;
}

} // namespace advtk
