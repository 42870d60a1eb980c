#include "advtk/adversary.hpp"

#include <algorithm>
#include <cmath>

#include "advtk/measures.hpp"
#include "advtk/pairscan.hpp"

namespace advtk {

namespace {

std::string pair_str(const BooleanFunction& f, uint64_t x, uint64_t y) {
    return "x=" + input_string(x, f.n, f.k) + ", y=" + input_string(y, f.n, f.k);
}

void require_cross(const BooleanFunction& f, const std::vector<uint64_t>& xs,
                   const std::vector<uint64_t>& ys) {
    (void)f;
    if (xs.empty() || ys.empty()) throw UsageError("function is one-sided: no cross pairs exist");
}

// sqrt-probability rows in side order
std::vector<double> sqrt_rows(const ProbabilityFamily& w, const std::vector<uint64_t>& codes,
                              int n) {
    std::vector<double> s(codes.size() * size_t(n));
    for (size_t r = 0; r < codes.size(); ++r) {
        const auto& p = w.p.at(codes[r]);
        for (int i = 0; i < n; ++i) s[r * size_t(n) + i] = std::sqrt(p[i]);
    }
    return s;
}

EvalReport eval_witness(const BooleanFunction& f, const ProbabilityFamily& w, ScanKind kind,
                        const Config& cfg, ExecPolicy policy) {
    validate_family(f, w, cfg);
    std::vector<uint64_t> xs = f.side(0), ys = f.side(1);
    require_cross(f, xs, ys);
    std::vector<uint8_t> symx = symbol_table(xs, f.n, f.k), symy = symbol_table(ys, f.n, f.k);
    std::vector<double> sx = sqrt_rows(w, xs, f.n), sy = sqrt_rows(w, ys, f.n);
    ScanInput in;
    in.n = f.n;
    in.xs = &xs;
    in.ys = &ys;
    in.symx = &symx;
    in.symy = &symy;
    in.sqrtp_x = &sx;
    in.sqrtp_y = &sy;
    ScanResult res = scan_pairs(in, kind, policy == ExecPolicy::Auto ? cfg.policy : policy);
    if (res.zero_overlap)
        throw VerifyError("infinite witness value: pair " + pair_str(f, res.x, res.y) +
                          " has zero overlap");
    return EvalReport{res.value, res.x, res.y};
}

} // namespace

void validate_family(const BooleanFunction& f, const ProbabilityFamily& w, const Config& cfg) {
    if (w.n != f.n) throw UsageError("witness arity " + std::to_string(w.n) +
                                     " does not match function arity " + std::to_string(f.n));
    uint64_t covered = 0;
    for (const auto& [code, p] : w.p) {
        if (!f.label(code))
            throw UsageError("witness lists input " + input_string(code, f.n, f.k) +
                             " outside the promise");
        if ((int)p.size() != f.n)
            throw UsageError("distribution for " + input_string(code, f.n, f.k) + " has " +
                             std::to_string(p.size()) + " entries, expected " +
                             std::to_string(f.n));
        double sum = 0;
        for (double v : p) {
            if (v < 0) throw VerifyError("negative probability for input " +
                                         input_string(code, f.n, f.k));
            sum += v;
        }
        if (std::abs(sum - 1.0) > cfg.check_tol)
            throw VerifyError("distribution for " + input_string(code, f.n, f.k) +
                              " sums to " + std::to_string(sum));
        ++covered;
    }
    if (covered != f.domain_size())
        throw UsageError("witness covers " + std::to_string(covered) + " of " +
                         std::to_string(f.domain_size()) + " domain inputs");
}

EvalReport eval_sumpi_witness(const BooleanFunction& f, const ProbabilityFamily& w,
                              const Config& cfg, ExecPolicy policy) {
    return eval_witness(f, w, ScanKind::Sum, cfg, policy);
}

EvalReport eval_maxpi_witness(const BooleanFunction& f, const ProbabilityFamily& w,
                              const Config& cfg, ExecPolicy policy) {
    return eval_witness(f, w, ScanKind::Max, cfg, policy);
}

EvalReport eval_sumpi_witness_sampled(const BooleanFunction& f, const ProbabilityFamily& w,
                                      uint64_t samples, uint64_t seed) {
    Config cfg;
    validate_family(f, w, cfg);
    std::vector<uint64_t> xs = f.side(0), ys = f.side(1);
    require_cross(f, xs, ys);
    Rng rng(seed);
    EvalReport rep;
    rep.value = 0;
    for (uint64_t t = 0; t < samples; ++t) {
        uint64_t x = xs[rng.below(xs.size())];
        uint64_t y = ys[rng.below(ys.size())];
        const auto& px = w.p.at(x);
        const auto& py = w.p.at(y);
        double overlap = 0;
        for (int i = 0; i < f.n; ++i)
            if (symbol_at(x, i + 1, f.n, f.k) != symbol_at(y, i + 1, f.n, f.k))
                overlap += std::sqrt(px[i]) * std::sqrt(py[i]);
        if (overlap <= 0)
            throw VerifyError("infinite witness value: pair " + pair_str(f, x, y) +
                              " has zero overlap");
        double v = 1.0 / overlap;
        if (v > rep.value) {
            rep.value = v;
            rep.wx = x;
            rep.wy = y;
        }
    }
    return rep;
}

ProbabilityFamily certificate_witness(const BooleanFunction& f) {
    std::vector<uint64_t> xs = f.side(0), ys = f.side(1);
    require_cross(f, xs, ys);
    // The exact certificate search rescans the domain for every candidate
    // position set of every input; past this size it degrades to the uniform
    // family instead of stalling for hours.
    if (f.domain_size() > 20000) return uniform_witness(f);
    ProbabilityFamily w;
    w.n = f.n;
    auto uniform_cert = [&](uint64_t code) {
        std::vector<int> cert = min_certificate(f, code);
        std::vector<double> p(f.n, 0.0);
        if (cert.empty()) {
            for (double& v : p) v = 1.0 / f.n;
        } else {
            for (int pos : cert) p[pos] = 1.0 / double(cert.size());
        }
        return p;
    };
    auto uniform_all = [&]() { return std::vector<double>(f.n, 1.0 / f.n); };
    if (f.total) {
        for (uint64_t c = 0; c < f.table.size(); ++c) w.p[c] = uniform_cert(c);
    } else {
        int c0 = certificate_complexity(f, Side::Zero);
        int c1 = certificate_complexity(f, Side::One);
        // keep certificates on the side minimizing n * C_side (ties toward 0)
        int cert_side = c0 <= c1 ? 0 : 1;
        for (const auto& [code, lab] : f.entries)
            w.p[code] = (lab == cert_side) ? uniform_cert(code) : uniform_all();
    }
    return w;
}

ProbabilityFamily uniform_witness(const BooleanFunction& f) {
    ProbabilityFamily w;
    w.n = f.n;
    std::vector<double> u(f.n, 1.0 / f.n);
    if (f.total) {
        for (uint64_t c = 0; c < f.table.size(); ++c) w.p[c] = u;
    } else {
        for (const auto& [code, lab] : f.entries) w.p[code] = u;
    }
    return w;
}

ProbabilityFamily sensitivity_witness(const BooleanFunction& f, const Rat& ws, const Rat& wi) {
    ProbabilityFamily w;
    w.n = f.n;
    auto fill = [&](uint64_t code) {
        std::vector<double> p(f.n);
        Rat total(0);
        for (int pos = 0; pos < f.n; ++pos) {
            bool sens = false;
            int cur = symbol_at(code, pos + 1, f.n, f.k);
            for (int sym = 0; sym < f.k && !sens; ++sym) {
                if (sym == cur) continue;
                uint64_t place = pow_u64(f.k, f.n - 1 - pos);
                uint64_t other = code + (uint64_t(sym) - uint64_t(cur)) * place;
                auto l0 = f.label(code);
                auto l1 = f.label(other);
                if (l0 && l1 && *l0 != *l1) sens = true;
            }
            const Rat& v = sens ? ws : wi;
            p[pos] = v.to_double();
            total = total + v;
        }
        if (total != Rat(1))
            throw VerifyError("sensitivity weights sum to " + total.str() + " on input " +
                              input_string(code, f.n, f.k));
        return p;
    };
    if (f.total) {
        for (uint64_t c = 0; c < f.table.size(); ++c) w.p[c] = fill(c);
    } else {
        for (const auto& [code, lab] : f.entries) w.p[code] = fill(code);
    }
    return w;
}

ProbabilityFamily collision_maxpi_witness(int n, const Config& cfg) {
    BooleanFunction f = builtin("collision", {n}, cfg);
    ProbabilityFamily w;
    w.n = n;
    for (const auto& [code, lab] : f.entries) {
        std::vector<double> p(n, 0.0);
        if (lab == 1) {
            for (double& v : p) v = 1.0 / n;
        } else {
            int s1 = symbol_at(code, 1, n, n);
            int partner = -1;
            for (int pos = 2; pos <= n; ++pos)
                if (symbol_at(code, pos, n, n) == s1) { partner = pos; break; }
            p[0] = 0.5;
            p[partner - 1] = 0.5;
        }
        w.p[code] = p;
    }
    return w;
}

SpectralReport spectral_value(const BooleanFunction& f, const Matrix& gamma, const Config& cfg) {
    std::vector<uint64_t> xs = f.side(0), ys = f.side(1);
    require_cross(f, xs, ys);
    if (gamma.rows != (int)xs.size() || gamma.cols != (int)ys.size())
        throw UsageError("matrix shaped " + std::to_string(gamma.rows) + "x" +
                         std::to_string(gamma.cols) + ", expected " + std::to_string(xs.size()) +
                         "x" + std::to_string(ys.size()));
    for (double v : gamma.a)
        if (v < 0) throw UsageError("adversary matrix must be nonnegative");
    if (gamma.all_zero()) throw UsageError("adversary matrix must be nonzero");
    SpectralReport rep;
    rep.num = spectral_norm(gamma, cfg);
    std::vector<uint8_t> symx = symbol_table(xs, f.n, f.k), symy = symbol_table(ys, f.n, f.k);
    Matrix masked(gamma.rows, gamma.cols);
    for (int i = 0; i < f.n; ++i) {
        bool any = false;
        for (int r = 0; r < gamma.rows; ++r)
            for (int c = 0; c < gamma.cols; ++c) {
                bool diff = symx[size_t(r) * f.n + i] != symy[size_t(c) * f.n + i];
                double v = diff ? gamma.at(r, c) : 0.0;
                masked.at(r, c) = v;
                any = any || v != 0.0;
            }
        double d = any ? spectral_norm(masked, cfg) : 0.0;
        if (d > rep.den) {
            rep.den = d;
            rep.argmax_index = i + 1;
        }
    }
    if (rep.den <= 0) throw UsageError("all masked matrices are zero");
    rep.value = rep.num / rep.den;
    return rep;
}

double prob_scheme_value(const BooleanFunction& f, const ProbSchemeWitness& s, const Config& cfg) {
    std::vector<uint64_t> xs = f.side(0), ys = f.side(1);
    require_cross(f, xs, ys);
    if (s.n != f.n) throw UsageError("scheme arity mismatch");
    auto check_dist = [&](const std::map<uint64_t, double>& d, const std::vector<uint64_t>& side,
                          const std::string& what) {
        double sum = 0;
        for (const auto& [code, v] : d) {
            if (v < 0) throw VerifyError(what + " has a negative entry");
            if (!std::binary_search(side.begin(), side.end(), code))
                throw UsageError(what + " puts weight on " + input_string(code, f.n, f.k) +
                                 " which is not on that side");
            sum += v;
        }
        if (std::abs(sum - 1.0) > cfg.check_tol)
            throw VerifyError(what + " sums to " + std::to_string(sum));
    };
    check_dist(s.pA, xs, "p_A");
    check_dist(s.pB, ys, "p_B");
    double qsum = 0;
    bool any_cross = false;
    for (const auto& [xy, v] : s.q) {
        if (v < 0) throw VerifyError("q has a negative entry");
        auto lx = f.label(xy.first), ly = f.label(xy.second);
        if (!lx || !ly || *lx != 0 || *ly != 1)
            throw UsageError("q puts weight on a non-cross pair " +
                             pair_str(f, xy.first, xy.second));
        qsum += v;
        if (v > 0) any_cross = true;
    }
    if (std::abs(qsum - 1.0) > cfg.check_tol)
        throw VerifyError("q sums to " + std::to_string(qsum));
    if (!any_cross) throw UsageError("q vanishes on all cross pairs");
    for (const auto& [key, d] : s.px) {
        if (key.second < 1 || key.second > f.n) throw UsageError("p' position out of range");
        check_dist(d, ys, "p'_{x,i}");
    }
    for (const auto& [key, d] : s.py) {
        if (key.second < 1 || key.second > f.n) throw UsageError("p' position out of range");
        check_dist(d, xs, "p'_{y,i}");
    }
    auto dist_at = [&](const std::map<std::pair<uint64_t, int>, std::map<uint64_t, double>>& m,
                       uint64_t code, int i, uint64_t target) -> double {
        auto it = m.find({code, i});
        if (it == m.end()) return 0.0;
        auto jt = it->second.find(target);
        return jt == it->second.end() ? 0.0 : jt->second;
    };
    double best = -1;
    for (const auto& [xy, qv] : s.q) {
        if (qv <= 0) continue;
        auto [x, y] = xy;
        double pa = s.pA.count(x) ? s.pA.at(x) : 0.0;
        double pb = s.pB.count(y) ? s.pB.at(y) : 0.0;
        for (int i = 1; i <= f.n; ++i) {
            if (symbol_at(x, i, f.n, f.k) == symbol_at(y, i, f.n, f.k)) continue;
            double num = pa * pb * dist_at(s.px, x, i, y) * dist_at(s.py, y, i, x);
            double ratio = std::sqrt(num) / qv;
            if (best < 0 || ratio < best) best = ratio;
        }
    }
    if (best < 0) throw UsageError("q is not supported on any differing position");
    return best;
}

RatValue khrapchenko(const BooleanFunction& f, const std::vector<uint64_t>& A,
                     const std::vector<uint64_t>& B) {
    if (f.k != 2) throw UsageError("khrapchenko requires a binary alphabet");
    if (A.empty() || B.empty()) throw UsageError("khrapchenko requires nonempty sides");
    for (uint64_t a : A) {
        auto l = f.label(a);
        if (!l || *l != 0) throw UsageError("A must contain 0-inputs only");
    }
    for (uint64_t b : B) {
        auto l = f.label(b);
        if (!l || *l != 1) throw UsageError("B must contain 1-inputs only");
    }
    long long cpairs = 0;
    for (uint64_t a : A)
        for (uint64_t b : B)
            if (__builtin_popcountll(a ^ b) == 1) ++cpairs;
    RatValue out;
    out.exact = Rat(Rat::checked(__int128(cpairs) * cpairs),
                    Rat::checked(__int128((long long)A.size()) * (long long)B.size()));
    out.value = out.exact.to_double();
    return out;
}

double koutsoupias(const BooleanFunction& f, const std::vector<uint64_t>& A,
                   const std::vector<uint64_t>& B, const Config& cfg) {
    if (f.k != 2) throw UsageError("koutsoupias requires a binary alphabet");
    if (A.empty() || B.empty()) throw UsageError("koutsoupias requires nonempty sides");
    for (uint64_t a : A) {
        auto l = f.label(a);
        if (!l || *l != 0) throw UsageError("A must contain 0-inputs only");
    }
    for (uint64_t b : B) {
        auto l = f.label(b);
        if (!l || *l != 1) throw UsageError("B must contain 1-inputs only");
    }
    Matrix Q(int(A.size()), int(B.size()));
    bool any = false;
    for (size_t r = 0; r < A.size(); ++r)
        for (size_t c = 0; c < B.size(); ++c)
            if (__builtin_popcountll(A[r] ^ B[c]) == 1) {
                Q.at(int(r), int(c)) = 1.0;
                any = true;
            }
    if (!any) return 0.0;
    double s = spectral_norm(Q, cfg);
    return s * s;
}

double hastad_bound(const BooleanFunction& f, double p, const Filter* delta, const Config& cfg,
                    ExecPolicy policy) {
    (void)policy;
    if (!f.total || f.k != 2) throw UsageError("hastad_bound requires a total binary function");
    if (!(p > 0.0 && p < 1.0)) throw UsageError("star probability must lie in (0,1)");
    if (delta) validate_filter(*delta, f.n, cfg);
    auto all = enumerate_restrictions(f.n, p, cfg);
    double wD = 0, wA = 0, wB = 0, wC = 0;
    for (const auto& [rho, wt] : all) {
        if (delta && !(*delta)(rho)) continue;
        wD += wt;
        BooleanFunction g = restrict_inputs(f, rho);
        bool c0 = true, c1 = true;
        for (uint8_t v : g.table) {
            c0 = c0 && v == 0;
            c1 = c1 && v == 1;
        }
        if (c0) {
            wA += wt;
            continue;
        }
        if (c1) {
            wB += wt;
            continue;
        }
        // single literal: g equals some free variable or its negation
        bool lit = false;
        for (int j = 0; j < g.n && !lit; ++j) {
            bool pos = true, neg = true;
            for (uint64_t c = 0; c < g.table.size(); ++c) {
                int bit = int((c >> (g.n - 1 - j)) & 1);
                pos = pos && g.table[c] == bit;
                neg = neg && g.table[c] == (1 - bit);
            }
            lit = pos || neg;
        }
        if (lit) wC += wt;
    }
    if (wD <= 0) throw UsageError("the filter has probability zero");
    if (wC <= 0) return 0.0;
    double factor = (1.0 - p) / (2.0 * p);
    return (wC * wC) / (wA * wB) * factor * factor;
}

ProbabilityFamily compose_witness(const ProbabilityFamily& h_wit,
                                  const std::vector<WitnessedBlock>& blocks,
                                  const BooleanFunction& f) {
    int m = h_wit.n;
    if ((int)blocks.size() != m)
        throw UsageError("composition has " + std::to_string(blocks.size()) +
                         " blocks but the outer witness has arity " + std::to_string(m));
    int total_n = 0;
    for (const auto& blk : blocks) {
        if (!blk.g || !blk.w) throw UsageError("missing block function or witness");
        if (!blk.g->total || blk.g->k != 2)
            throw UsageError("block functions must be total and binary");
        if (blk.w->n != blk.g->n) throw UsageError("block witness arity mismatch");
        total_n += blk.g->n;
    }
    if (f.k != 2 || f.n != total_n)
        throw UsageError("composed function arity " + std::to_string(f.n) +
                         " does not match the blocks' total " + std::to_string(total_n));
    ProbabilityFamily out;
    out.n = f.n;
    auto build = [&](uint64_t code) {
        std::vector<double> q(f.n, 0.0);
        // split into block codes (block 1 = most significant bits) and feed
        // the inner outputs to the outer witness
        std::vector<uint64_t> sub(m);
        uint64_t z = 0;
        int off = 0;
        for (int j = 0; j < m; ++j) {
            int nj = blocks[j].g->n;
            sub[j] = (code >> (f.n - off - nj)) & ((1ull << nj) - 1);
            z = z * 2 + uint64_t(blocks[j].g->table[sub[j]]);
            off += nj;
        }
        auto hz = h_wit.p.find(z);
        if (hz == h_wit.p.end())
            throw UsageError("outer witness misses inner output " + input_string(z, m, 2));
        off = 0;
        for (int j = 0; j < m; ++j) {
            int nj = blocks[j].g->n;
            const auto& pj = blocks[j].w->p.at(sub[j]);
            for (int i = 0; i < nj; ++i) q[off + i] = hz->second[j] * pj[i];
            off += nj;
        }
        return q;
    };
    if (f.total) {
        for (uint64_t c = 0; c < f.table.size(); ++c) out.p[c] = build(c);
    } else {
        for (const auto& [code, lab] : f.entries) out.p[code] = build(code);
    }
    return out;
}

bool validate_index_selection(const BooleanFunction& f, const IndexSelection& sel,
                              std::string* reason, const Config& cfg) {
    auto fail = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    std::vector<uint64_t> xs = f.side(0), ys = f.side(1);
    require_cross(f, xs, ys);
    if ((int)sel.P.size() != f.n) return fail("expected one matrix per position");
    for (const Matrix& P : sel.P)
        if (P.rows != (int)xs.size() || P.cols != (int)ys.size())
            return fail("matrix shape mismatch");
    std::vector<uint8_t> symx = symbol_table(xs, f.n, f.k), symy = symbol_table(ys, f.n, f.k);
    for (size_t r = 0; r < xs.size(); ++r)
        for (size_t c = 0; c < ys.size(); ++c) {
            double sum = 0;
            for (int i = 0; i < f.n; ++i) {
                double v = sel.P[i].at(int(r), int(c));
                if (v != 0.0 && v != 1.0) return fail("entries must be 0 or 1");
                if (v == 1.0 && symx[r * size_t(f.n) + i] == symy[c * size_t(f.n) + i])
                    return fail("P_" + std::to_string(i + 1) +
                                " selects a position where the strings agree");
                sum += v;
            }
            if (std::abs(sum - 1.0) > cfg.check_tol)
                return fail("sum of P_i is not the all-ones matrix");
        }
    if (reason) reason->clear();
    return true;
}

double index_selection_value(const BooleanFunction& f, const IndexSelection& sel, const Matrix& A,
                             const Config& cfg) {
    std::string why;
    if (!validate_index_selection(f, sel, &why, cfg))
        throw VerifyError("invalid index selection: " + why);
    std::vector<uint64_t> xs = f.side(0), ys = f.side(1);
    if (A.rows != (int)xs.size() || A.cols != (int)ys.size())
        throw UsageError("adversary matrix shape mismatch");
    double num = spectral_norm(A, cfg);
    double den = 0;
    Matrix H(A.rows, A.cols);
    for (int i = 0; i < f.n; ++i) {
        for (int r = 0; r < A.rows; ++r)
            for (int c = 0; c < A.cols; ++c)
                H.at(r, c) = A.at(r, c) * sel.P[i].at(r, c);
        if (!H.all_zero()) den = std::max(den, spectral_norm(H, cfg));
    }
    if (den <= 0) throw VerifyError("denominator is zero: A vanishes on every selection");
    return num / den;
}

double certificate_barrier(const BooleanFunction& f) {
    int c0 = certificate_complexity(f, Side::Zero);
    int c1 = certificate_complexity(f, Side::One);
    if (f.total) return std::sqrt(double(c0) * c1);
    return std::min(std::sqrt(double(f.n) * c0), std::sqrt(double(f.n) * c1));
}

double quantum_bound(double v, double eps) {
    if (v < 0) throw UsageError("bound value must be nonnegative");
    if (!(eps >= 0 && eps < 0.5)) throw UsageError("error rate must lie in [0, 1/2)");
    return (1.0 - 2.0 * std::sqrt(eps * (1.0 - eps))) * v;
}

double formula_bound(double v) {
    if (v < 0) throw UsageError("bound value must be nonnegative");
    return v * v;
}

double prob_formula_bound(double v, double eps) {
    if (v < 0) throw UsageError("bound value must be nonnegative");
    if (!(eps >= 0 && eps < 0.5)) throw UsageError("error rate must lie in [0, 1/2)");
    double t = (1.0 - 2.0 * eps) * v;
    return t * t;
}

} // namespace advtk
