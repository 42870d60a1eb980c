#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "advtk/adversary.hpp"
#include "advtk/measures.hpp"
#include "advtk/pairscan.hpp"

// Heuristic searches for the primal (witness) and dual (spectral) sides.
// Everything here is best-effort: every returned number is re-certified by an
// exact evaluator, so optimizer quality affects tightness, never soundness.

namespace advtk {

namespace {

// ---------- shared pair/grid scaffolding ----------

struct Grid {
    std::vector<uint64_t> xs, ys;      // side codes
    std::vector<uint8_t> symx, symy;   // expanded symbols, row-major
    int n = 0, k = 2;
    uint64_t cells() const { return uint64_t(xs.size()) * ys.size(); }
};

Grid build_grid(const BooleanFunction& f) {
    Grid g;
    g.n = f.n;
    g.k = f.k;
    g.xs = f.side(0);
    g.ys = f.side(1);
    if (g.xs.empty() || g.ys.empty())
        throw UsageError("function is one-sided: no cross pairs exist");
    g.symx = symbol_table(g.xs, f.n, f.k);
    g.symy = symbol_table(g.ys, f.n, f.k);
    return g;
}

// per-input mask of sensitive positions (bit i = position i+1 sensitive)
uint64_t sens_bits(const BooleanFunction& f, uint64_t code) {
    auto l0 = f.label(code);
    uint64_t bits = 0;
    for (int pos = 0; pos < f.n; ++pos) {
        int cur = symbol_at(code, pos + 1, f.n, f.k);
        uint64_t place = pow_u64(f.k, f.n - 1 - pos);
        for (int sym = 0; sym < f.k; ++sym) {
            if (sym == cur) continue;
            auto l1 = f.label(code + (uint64_t(sym) - uint64_t(cur)) * place);
            if (l1 && *l1 != *l0) {
                bits |= 1ull << pos;
                break;
            }
        }
    }
    return bits;
}

// ---------- relaxed-precision norms for optimizer-internal ranking ----------

struct NormCache {
    std::vector<std::vector<double>> warm;  // one right vector per slot
    double tol = 1e-9;
    uint64_t cap = 600;

    double norm(const Matrix& A, size_t slot) {
        if (warm.size() <= slot) warm.resize(slot + 1);
        if (A.all_zero()) return 0.0;
        SvTriple t = top_singular(A, warm[slot].empty() ? nullptr : &warm[slot], tol, cap,
                                  ExecPolicy::Serial);
        warm[slot] = t.v;
        return t.sigma;
    }
};

// Gamma with entries outside position i's difference mask zeroed.
void mask_into(const Grid& g, const Matrix& G, int i, Matrix& out) {
    out.rows = G.rows;
    out.cols = G.cols;
    out.a.assign(G.a.size(), 0.0);
    for (int r = 0; r < G.rows; ++r) {
        const uint8_t* ax = &g.symx[size_t(r) * g.n];
        for (int c = 0; c < G.cols; ++c)
            if (ax[i] != g.symy[size_t(c) * g.n + i])
                out.at(r, c) = G.at(r, c);
    }
}

// max_i ||G o D_i|| at ranking precision; -1 slot base for the cache
double masked_den(const Grid& g, const Matrix& G, NormCache& nc, Matrix& scratch) {
    double den = 0;
    for (int i = 0; i < g.n; ++i) {
        mask_into(g, G, i, scratch);
        den = std::max(den, nc.norm(scratch, size_t(i) + 1));
    }
    return den;
}

// ---------- spectral ascent (line search on the true ratio) ----------

struct AscentResult {
    double value = 0;
    Matrix gamma;
};

AscentResult ascent_line_search(const Grid& g, Matrix G, int iterations) {
    static const double kEtas[] = {0.02, 0.05, 0.1, 0.2, 0.4, 0.8, 1.6};
    NormCache nc;
    Matrix scratch, cand;
    double den = masked_den(g, G, nc, scratch);
    AscentResult best;
    if (den <= 0) return best;
    for (double& v : G.a) v /= den;
    best.value = nc.norm(G, 0);
    best.gamma = G;
    double cur = best.value;
    for (int t = 0; t < iterations; ++t) {
        SvTriple top = top_singular(G, nc.warm.empty() || nc.warm[0].empty() ? nullptr : &nc.warm[0],
                                    nc.tol, nc.cap, ExecPolicy::Serial);
        if (top.sigma <= 0) break;
        double usum = 0;
        for (double v : top.u) usum += v;
        double sign = usum < 0 ? -1.0 : 1.0;
        // ascent direction: outer product of the (sign-fixed, clipped) top pair
        std::vector<double> u = top.u, v = top.v;
        for (double& x : u) x = std::max(0.0, sign * x);
        for (double& x : v) x = std::max(0.0, sign * x);
        double bestval = -1;
        Matrix bestG;
        for (double eta : kEtas) {
            cand.rows = G.rows;
            cand.cols = G.cols;
            cand.a.resize(G.a.size());
            for (int r = 0; r < G.rows; ++r)
                for (int c = 0; c < G.cols; ++c)
                    cand.at(r, c) = std::max(0.0, G.at(r, c) + eta * u[r] * v[c]);
            double d = masked_den(g, cand, nc, scratch);
            if (d <= 0) continue;
            for (double& x : cand.a) x /= d;
            double val = nc.norm(cand, 0);
            if (val > bestval) {
                bestval = val;
                bestG = cand;
            }
        }
        if (bestval < 0) break;
        G = bestG;
        cur = bestval;
        if (cur > best.value) {
            best.value = cur;
            best.gamma = G;
        }
    }
    return best;
}

// ---------- structured starts ----------

Matrix ones_start(const Grid& g) {
    Matrix G(int(g.xs.size()), int(g.ys.size()));
    for (double& v : G.a) v = 1.0;
    return G;
}

Matrix distance_one_start(const Grid& g) {
    Matrix G(int(g.xs.size()), int(g.ys.size()));
    for (size_t r = 0; r < g.xs.size(); ++r)
        for (size_t c = 0; c < g.ys.size(); ++c) {
            int d = 0;
            for (int i = 0; i < g.n; ++i)
                d += g.symx[r * size_t(g.n) + i] != g.symy[c * size_t(g.n) + i];
            if (d == 1) G.at(int(r), int(c)) = 1.0;
        }
    return G;
}

// pair classes keyed by (distance, min/max sensitive-differing counts); the
// coordinate ascent tunes one weight per class on a fixed grid
Matrix class_coord_start(const BooleanFunction& f, const Grid& g) {
    std::vector<uint64_t> sx(g.xs.size()), sy(g.ys.size());
    for (size_t r = 0; r < g.xs.size(); ++r) sx[r] = sens_bits(f, g.xs[r]);
    for (size_t c = 0; c < g.ys.size(); ++c) sy[c] = sens_bits(f, g.ys[c]);
    std::map<std::tuple<int, int, int>, int> keys;
    std::vector<int> cls(g.cells());
    for (size_t r = 0; r < g.xs.size(); ++r)
        for (size_t c = 0; c < g.ys.size(); ++c) {
            int d = 0, kx = 0, ky = 0;
            for (int i = 0; i < g.n; ++i) {
                if (g.symx[r * size_t(g.n) + i] == g.symy[c * size_t(g.n) + i]) continue;
                ++d;
                kx += (sx[r] >> i) & 1;
                ky += (sy[c] >> i) & 1;
            }
            auto key = std::make_tuple(d, std::min(kx, ky), std::max(kx, ky));
            auto [it, fresh] = keys.insert({key, int(keys.size())});
            cls[r * g.ys.size() + c] = it->second;
        }
    int ncls = int(keys.size());
    static const double kGrid[] = {0.0, 0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0, 1.5, 2.5};
    std::vector<double> w(ncls, 1.0);
    NormCache nc;
    Matrix G(int(g.xs.size()), int(g.ys.size())), scratch;
    auto build = [&]() {
        for (size_t idx = 0; idx < cls.size(); ++idx) G.a[idx] = w[cls[idx]];
    };
    auto value = [&]() -> double {
        build();
        if (G.all_zero()) return 0.0;
        double den = masked_den(g, G, nc, scratch);
        return den <= 0 ? 0.0 : nc.norm(G, 0) / den;
    };
    double best = value();
    for (int pass = 0; pass < 6; ++pass) {
        bool improved = false;
        for (int c = 0; c < ncls; ++c) {
            double keep = w[c], bval = best, bw = keep;
            for (double gval : kGrid) {
                if (gval == keep) continue;
                w[c] = gval;
                double v = value();
                if (v > bval + 1e-12) {
                    bval = v;
                    bw = gval;
                }
            }
            w[c] = bw;
            if (bval > best) {
                best = bval;
                improved = true;
            }
        }
        if (!improved) break;
    }
    build();
    return G;
}

// ---------- the primal smoothed min-max descent ----------

struct Schedule {
    double t0_scale, t_min, eta0;
};
constexpr Schedule kSchedules[] = {
    {0.3, 0.005, 0.5},
    {0.5, 0.05, 0.3},
    {0.1, 0.002, 1.0},
    {0.5, 0.02, 2.0},
};

// row-wise Euclidean projection onto {p : sum p = 1, p >= floor}
void project_row(double* p, int n, double floor_val, std::vector<double>& buf) {
    double mass = 1.0 - n * floor_val;
    buf.assign(p, p + n);
    for (double& v : buf) v -= floor_val;
    std::sort(buf.begin(), buf.end(), std::greater<double>());
    double css = 0, theta = 0;
    int rho = -1;
    for (int i = 0; i < n; ++i) {
        css += buf[i];
        if (buf[i] * (i + 1) > css - mass) {
            rho = i;
            theta = (css - mass) / (i + 1);
        }
    }
    (void)rho;
    for (int i = 0; i < n; ++i) p[i] = std::max(0.0, p[i] - floor_val - theta) + floor_val;
}

struct PrimalCore {
    // best exact objective seen, with the iterate and pair weights behind it
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> bestP;   // m x n
    std::vector<double> bestW;   // per-pair softmax weights at the best iterate
};

// Dense gradient runs over the materialized pair list.  `kind` picks the
// overlap (sum or smoothed max).  Fully serial: results are independent of
// thread count by construction.
void primal_dense(const Grid& g, ScanKind kind, uint64_t seed, int iterations, int restarts,
                  int schedules, double floor_val, const std::vector<double>& cert_start,
                  PrimalCore& out) {
    size_t nx = g.xs.size(), ny = g.ys.size(), m = nx + ny;
    int n = g.n;
    size_t pairs = nx * ny;
    // pair -> differing-position mask, bit-packed per pair
    std::vector<uint64_t> mask(pairs, 0);
    for (size_t r = 0; r < nx; ++r)
        for (size_t c = 0; c < ny; ++c) {
            uint64_t mk = 0;
            for (int i = 0; i < n; ++i)
                if (g.symx[r * size_t(n) + i] != g.symy[c * size_t(n) + i]) mk |= 1ull << i;
            mask[r * ny + c] = mk;
        }
    int iters_eff = iterations;
    if (pairs > (1ull << 14) && iterations > 0)
        iters_eff = std::max<int>(200, int(uint64_t(iterations) * (1ull << 14) / pairs));

    std::vector<double> P(m * size_t(n)), S(m * size_t(n)), G(m * size_t(n));
    std::vector<double> O(pairs), Oexact(pairs), V(pairs), W(pairs), buf;
    std::vector<double> inner(static_cast<size_t>(n));
    Rng rng(seed);
    out.bestP.assign(m * size_t(n), 1.0 / n);
    out.bestW.assign(pairs, 1.0 / double(pairs));

    for (int sch = 0; sch < schedules; ++sch) {
        const Schedule& S0 = kSchedules[sch % 4];
        for (int rs = 0; rs < restarts; ++rs) {
            if (rs == 0) {
                std::fill(P.begin(), P.end(), 1.0 / n);
            } else if (rs == 1) {
                P = cert_start;
            } else {
                for (double& v : P) v = rng.uniform() * 2.0;
                for (size_t r = 0; r < m; ++r) project_row(&P[r * n], n, floor_val, buf);
            }
            double T0 = -1, decay = 1;
            for (int t = 0; t < iters_eff; ++t) {
                for (size_t idx = 0; idx < P.size(); ++idx)
                    S[idx] = std::sqrt(std::max(P[idx], 1e-18));
                double cur = 0, cur_exact = 0;
                for (size_t pi = 0; pi < pairs; ++pi) {
                    size_t r = pi / ny, c = pi % ny;
                    const double* sx = &S[r * size_t(n)];
                    const double* sy = &S[(nx + c) * size_t(n)];
                    uint64_t mk = mask[pi];
                    double osum = 0, omax = 0;
                    for (uint64_t mm = mk; mm; mm &= mm - 1) {
                        int i = __builtin_ctzll(mm);
                        double o = sx[i] * sy[i];
                        osum += o;
                        if (o > omax) omax = o;
                    }
                    double oval;
                    if (kind == ScanKind::Sum) {
                        oval = osum;
                        Oexact[pi] = osum;
                    } else {
                        // smoothed max enters the gradient; the exact max is
                        // what gets tracked
                        oval = omax;
                        Oexact[pi] = omax;
                    }
                    O[pi] = oval;
                    double v = 1.0 / std::max(oval, 1e-12);
                    V[pi] = v;
                    if (v > cur) cur = v;
                    double ve = 1.0 / std::max(Oexact[pi], 1e-300);
                    if (ve > cur_exact) cur_exact = ve;
                }
                if (T0 < 0) {
                    T0 = std::max(cur * S0.t0_scale, S0.t_min);
                    decay = iters_eff > 1 ? std::pow(S0.t_min / T0, 1.0 / (iters_eff - 1)) : 1.0;
                }
                double T = std::max(T0 * std::pow(decay, t), S0.t_min);
                double wsum = 0;
                for (size_t pi = 0; pi < pairs; ++pi) {
                    W[pi] = std::exp((V[pi] - cur) / T);
                    wsum += W[pi];
                }
                for (size_t pi = 0; pi < pairs; ++pi) W[pi] /= wsum;
                if (cur_exact < out.best) {
                    out.best = cur_exact;
                    out.bestP = P;
                    out.bestW = W;
                }
                // gradient of the smoothed objective
                std::fill(G.begin(), G.end(), 0.0);
                for (size_t pi = 0; pi < pairs; ++pi) {
                    size_t r = pi / ny, c = pi % ny;
                    double* gx = &G[r * size_t(n)];
                    double* gy = &G[(nx + c) * size_t(n)];
                    const double* sx = &S[r * size_t(n)];
                    const double* sy = &S[(nx + c) * size_t(n)];
                    double coef = -W[pi] / std::max(O[pi] * O[pi], 1e-8);
                    uint64_t mk = mask[pi];
                    if (kind == ScanKind::Sum) {
                        for (uint64_t mm = mk; mm; mm &= mm - 1) {
                            int i = __builtin_ctzll(mm);
                            gx[i] += coef * 0.5 * (sy[i] / std::max(sx[i], 1e-9));
                            gy[i] += coef * 0.5 * (sx[i] / std::max(sy[i], 1e-9));
                        }
                    } else {
                        // inner log-sum-exp weights over the differing positions
                        double imax = 0, isum = 0;
                        for (uint64_t mm = mk; mm; mm &= mm - 1) {
                            int i = __builtin_ctzll(mm);
                            double o = sx[i] * sy[i];
                            if (o > imax) imax = o;
                        }
                        for (uint64_t mm = mk; mm; mm &= mm - 1) {
                            int i = __builtin_ctzll(mm);
                            double e = std::exp((sx[i] * sy[i] - imax) / T);
                            inner[i] = e;
                            isum += e;
                        }
                        for (uint64_t mm = mk; mm; mm &= mm - 1) {
                            int i = __builtin_ctzll(mm);
                            double wi = inner[i] / isum;
                            gx[i] += coef * wi * 0.5 * (sy[i] / std::max(sx[i], 1e-9));
                            gy[i] += coef * wi * 0.5 * (sx[i] / std::max(sy[i], 1e-9));
                        }
                    }
                }
                double eta = S0.eta0 / std::sqrt(1.0 + t);
                for (size_t idx = 0; idx < P.size(); ++idx) {
                    double step = std::clamp(G[idx], -1e4, 1e4);
                    P[idx] -= eta * step;
                }
                for (size_t r = 0; r < m; ++r) project_row(&P[r * n], n, floor_val, buf);
            }
            // evaluate the final iterate of a zero-iteration run (starts-only
            // mode relies on this) and of the last step
            for (size_t idx = 0; idx < P.size(); ++idx)
                S[idx] = std::sqrt(std::max(P[idx], 1e-18));
            double cur_exact = 0;
            size_t arg = 0;
            for (size_t pi = 0; pi < pairs; ++pi) {
                size_t r = pi / ny, c = pi % ny;
                const double* sx = &S[r * size_t(n)];
                const double* sy = &S[(nx + c) * size_t(n)];
                double osum = 0, omax = 0;
                for (uint64_t mm = mask[pi]; mm; mm &= mm - 1) {
                    int i = __builtin_ctzll(mm);
                    double o = sx[i] * sy[i];
                    osum += o;
                    if (o > omax) omax = o;
                }
                double oexact = kind == ScanKind::Sum ? osum : omax;
                double ve = 1.0 / std::max(oexact, 1e-300);
                if (ve > cur_exact) {
                    cur_exact = ve;
                    arg = pi;
                }
            }
            (void)arg;
            if (cur_exact < out.best) {
                out.best = cur_exact;
                out.bestP = P;
                std::fill(W.begin(), W.end(), 0.0);
                W[arg] = 1.0;
                out.bestW = W;
            }
        }
    }
}

ProbabilityFamily family_from_rows(const Grid& g, const std::vector<double>& P, int n) {
    ProbabilityFamily w;
    w.n = n;
    size_t nx = g.xs.size();
    for (size_t r = 0; r < nx; ++r) {
        std::vector<double> p(P.begin() + r * n, P.begin() + (r + 1) * n);
        w.p[g.xs[r]] = std::move(p);
    }
    for (size_t c = 0; c < g.ys.size(); ++c) {
        std::vector<double> p(P.begin() + (nx + c) * n, P.begin() + (nx + c + 1) * n);
        w.p[g.ys[c]] = std::move(p);
    }
    return w;
}

Matrix dual_gamma_from(const Grid& g, const std::vector<double>& W) {
    size_t nx = g.xs.size(), ny = g.ys.size();
    Matrix L{int(nx), int(ny)};
    for (size_t pi = 0; pi < W.size(); ++pi) L.a[pi] = W[pi];
    std::vector<double> ra(nx, 0), cb(ny, 0);
    for (size_t r = 0; r < nx; ++r)
        for (size_t c = 0; c < ny; ++c) {
            ra[r] += L.at(int(r), int(c));
            cb[c] += L.at(int(r), int(c));
        }
    Matrix G{int(nx), int(ny)};
    for (size_t r = 0; r < nx; ++r)
        for (size_t c = 0; c < ny; ++c)
            if (ra[r] > 1e-15 && cb[c] > 1e-15)
                G.at(int(r), int(c)) = L.at(int(r), int(c)) / std::sqrt(ra[r] * cb[c]);
    return G;
}

// certificate start rows projected to the interior simplex
std::vector<double> cert_rows(const BooleanFunction& f, const Grid& g, double floor_val) {
    ProbabilityFamily cw = certificate_witness(f);
    size_t nx = g.xs.size(), m = nx + g.ys.size();
    std::vector<double> P(m * size_t(f.n));
    std::vector<double> buf;
    for (size_t r = 0; r < nx; ++r) {
        const auto& p = cw.p.at(g.xs[r]);
        std::copy(p.begin(), p.end(), P.begin() + r * f.n);
    }
    for (size_t c = 0; c < g.ys.size(); ++c) {
        const auto& p = cw.p.at(g.ys[c]);
        std::copy(p.begin(), p.end(), P.begin() + (nx + c) * f.n);
    }
    for (size_t r = 0; r < m; ++r) project_row(&P[r * f.n], f.n, floor_val, buf);
    return P;
}

// Exact evaluation of a family through the scan kernels.
double exact_eval(const BooleanFunction& f, const Grid& g, const ProbabilityFamily& w,
                  ScanKind kind, const Config& cfg) {
    std::vector<double> sx(g.xs.size() * size_t(f.n)), sy(g.ys.size() * size_t(f.n));
    for (size_t r = 0; r < g.xs.size(); ++r) {
        const auto& p = w.p.at(g.xs[r]);
        for (int i = 0; i < f.n; ++i) sx[r * f.n + i] = std::sqrt(p[i]);
    }
    for (size_t c = 0; c < g.ys.size(); ++c) {
        const auto& p = w.p.at(g.ys[c]);
        for (int i = 0; i < f.n; ++i) sy[c * f.n + i] = std::sqrt(p[i]);
    }
    ScanInput in;
    in.n = f.n;
    in.xs = &g.xs;
    in.ys = &g.ys;
    in.symx = &g.symx;
    in.symy = &g.symy;
    in.sqrtp_x = &sx;
    in.sqrtp_y = &sy;
    ScanResult res = scan_pairs(in, kind, cfg.policy);
    if (res.zero_overlap)
        throw VerifyError("optimizer produced a zero-overlap family");
    return res.value;
}

PrimalOpt primal_optimize(const BooleanFunction& f, ScanKind kind, uint64_t seed, int iterations,
                          const Config& cfg) {
    Grid g = build_grid(f);
    if (g.cells() > cfg.opt_cells_cap)
        throw CapExceeded("optimizer grid has " + std::to_string(g.cells()) + " cells (cap " +
                          std::to_string(cfg.opt_cells_cap) + ")");
    PrimalOpt out;
    if (g.cells() > cfg.primal_dense_cells_cap || iterations == 0) {
        // starts-only mode: evaluate the closed-form starts exactly and keep
        // the better one; no gradient machinery, no materialized pair list
        ProbabilityFamily uni = uniform_witness(f);
        ProbabilityFamily cert = certificate_witness(f);
        double vu = exact_eval(f, g, uni, kind, cfg);
        double vc = exact_eval(f, g, cert, kind, cfg);
        out.value = std::min(vu, vc);
        out.witness = vu <= vc ? std::move(uni) : std::move(cert);
        out.dual_gamma = Matrix();
        return out;
    }
    PrimalCore core;
    int schedules = std::clamp(cfg.primal_schedules, 1, 4);
    int restarts = std::max(2, cfg.primal_restarts);
    primal_dense(g, kind, seed, iterations, restarts, schedules, cfg.simplex_floor,
                 cert_rows(f, g, cfg.simplex_floor), core);
    out.witness = family_from_rows(g, core.bestP, f.n);
    out.value = exact_eval(f, g, out.witness, kind, cfg);
    out.dual_gamma = dual_gamma_from(g, core.bestW);
    return out;
}

} // namespace

PrimalOpt optimize_sumpi_primal(const BooleanFunction& f, uint64_t seed, int iterations,
                                const Config& cfg) {
    return primal_optimize(f, ScanKind::Sum, seed, iterations, cfg);
}

PrimalOpt optimize_sumpi_primal(const BooleanFunction& f, const Config& cfg) {
    return primal_optimize(f, ScanKind::Sum, cfg.seed, cfg.primal_iterations, cfg);
}

PrimalOpt optimize_maxpi_primal(const BooleanFunction& f, uint64_t seed, int iterations,
                                const Config& cfg) {
    return primal_optimize(f, ScanKind::Max, seed, iterations, cfg);
}

PrimalOpt optimize_maxpi_primal(const BooleanFunction& f, const Config& cfg) {
    return primal_optimize(f, ScanKind::Max, cfg.seed, cfg.primal_iterations, cfg);
}

namespace {

SpectralOpt spectral_optimize(const BooleanFunction& f, uint64_t seed, int iterations,
                              const Matrix* extra_start, const Config& cfg) {
    Grid g = build_grid(f);
    if (g.cells() > cfg.opt_cells_cap)
        throw CapExceeded("optimizer grid has " + std::to_string(g.cells()) + " cells (cap " +
                          std::to_string(cfg.opt_cells_cap) + ")");
    int iters_eff = iterations;
    if (g.cells() > 4096 && iterations > 0)
        iters_eff = std::max<int>(8, int(uint64_t(iterations) * 4096 / g.cells()));

    std::vector<std::pair<std::string, Matrix>> starts;
    starts.push_back({"ones", ones_start(g)});
    Matrix d1 = distance_one_start(g);
    if (!d1.all_zero()) starts.push_back({"distance-1", std::move(d1)});
    if (g.cells() <= cfg.class_start_cells_cap)
        starts.push_back({"class-weights", class_coord_start(f, g)});
    if (extra_start && !extra_start->a.empty() && !extra_start->all_zero())
        starts.push_back({"dual-gamma", *extra_start});
    Rng rng(seed);
    for (int s = 0; s < cfg.spectral_restarts; ++s) {
        Matrix R(int(g.xs.size()), int(g.ys.size()));
        for (double& v : R.a) v = rng.uniform();
        starts.push_back({"random-" + std::to_string(s), std::move(R)});
    }

    SpectralOpt out;
    Matrix incumbent;
    for (auto& [name, G0] : starts) {
        AscentResult res = ascent_line_search(g, G0, iters_eff);
        if (res.value > out.value) {
            out.value = res.value;
            out.start = name;
            incumbent = std::move(res.gamma);
        }
    }
    if (incumbent.a.empty())
        throw VerifyError("spectral search failed to produce a nonzero matrix");
    // certify at full precision
    SpectralReport rep = spectral_value(f, incumbent, cfg);
    out.value = rep.value;
    out.gamma = std::move(incumbent);
    return out;
}

} // namespace

SpectralOpt optimize_spectral(const BooleanFunction& f, uint64_t seed, int iterations,
                              const Config& cfg) {
    return spectral_optimize(f, seed, iterations, nullptr, cfg);
}

SpectralOpt optimize_spectral(const BooleanFunction& f, const Config& cfg) {
    return spectral_optimize(f, cfg.seed, cfg.spectral_iterations, nullptr, cfg);
}

namespace {

Bracket bracket_for(const BooleanFunction& f, ScanKind kind, const Config& cfg) {
    PrimalOpt po = primal_optimize(f, kind, cfg.seed, cfg.primal_iterations, cfg);
    Bracket br;
    br.upper = {po.value, "primal-optimizer"};
    ProbabilityFamily cert = certificate_witness(f);
    Grid g = build_grid(f);
    double cv = exact_eval(f, g, cert, kind, cfg);
    if (cv < br.upper.value) br.upper = {cv, "certificate-witness"};

    br.lower = {0.0, "trivial"};
    if (g.cells() <= cfg.opt_cells_cap) {
        SpectralOpt so = spectral_optimize(f, cfg.seed, cfg.spectral_iterations,
                                           po.dual_gamma.a.empty() ? nullptr : &po.dual_gamma, cfg);
        if (so.value > br.lower.value) br.lower = {so.value, "spectral-optimizer"};
    }
    if (f.k == 2) {
        RatValue kh = khrapchenko(f, f.side(0), f.side(1));
        double lo = std::sqrt(kh.value);
        if (lo > br.lower.value) br.lower = {lo, "khrapchenko"};
    }
    return br;
}

} // namespace

Bracket sumpi_bracket(const BooleanFunction& f, const Config& cfg) {
    return bracket_for(f, ScanKind::Sum, cfg);
}

Bracket maxpi_bracket(const BooleanFunction& f, const Config& cfg) {
    // maxPI >= sumPI, so sum-variant lower certificates remain valid; the
    // upper side must come from max-variant evaluations
    Bracket br = bracket_for(f, ScanKind::Max, cfg);
    return br;
}

} // namespace advtk
