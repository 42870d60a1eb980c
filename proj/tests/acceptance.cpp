// Acceptance gate: every release criterion in one binary, one verdict line
// each.  Takes the CLI binary path as its argument (used by criterion 11).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "advtk/adversary.hpp"
#include "advtk/boolfn.hpp"
#include "advtk/formula.hpp"
#include "advtk/matrix.hpp"
#include "advtk/measures.hpp"
#include "advtk/propsuite.hpp"
#include "json.hpp"

using namespace advtk;
using nlohmann::json;

namespace {

using Problems = std::vector<std::string>;

struct Gate {
    int failed = 0;
    int index = 0;

    void criterion(const std::string& name, double budget_s,
                   const std::function<void(Problems&)>& body) {
        ++index;
        Problems problems;
        auto t0 = std::chrono::steady_clock::now();
        try {
            body(problems);
        } catch (const std::exception& e) {
            problems.push_back(std::string("unexpected exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (budget_s > 0 && secs > budget_s)
            problems.push_back("runtime " + std::to_string(secs) + "s exceeds " +
                               std::to_string(budget_s) + "s");
        if (problems.empty()) {
            std::printf("PASS  %2d  %s  (%.1fs)\n", index, name.c_str(), secs);
        } else {
            ++failed;
            std::printf("FAIL  %2d  %s  (%.1fs)\n", index, name.c_str(), secs);
            for (size_t i = 0; i < problems.size() && i < 5; ++i)
                std::printf("          - %s\n", problems[i].c_str());
            if (problems.size() > 5)
                std::printf("          - ... and %zu more\n", problems.size() - 5);
        }
        std::fflush(stdout);
    }
};

void expect(Problems& out, bool ok, const std::string& what) {
    if (!ok) out.push_back(what);
}

Matrix hamming_gamma(const BooleanFunction& f) {
    std::vector<uint64_t> xs = f.side(0), ys = f.side(1);
    Matrix G(int(xs.size()), int(ys.size()));
    for (size_t r = 0; r < xs.size(); ++r)
        for (size_t c = 0; c < ys.size(); ++c) {
            int dist = 0;
            for (int i = 1; i <= f.n; ++i)
                dist += symbol_at(xs[r], i, f.n, f.k) != symbol_at(ys[c], i, f.n, f.k);
            if (dist == 1) G.at(int(r), int(c)) = 1.0;
        }
    return G;
}

ProbabilityFamily self_composed(const BooleanFunction& base, const ProbabilityFamily& w,
                                const BooleanFunction& next) {
    std::vector<WitnessedBlock> blocks(size_t(base.n));
    for (auto& b : blocks) {
        b.g = &base;
        b.w = &w;
    }
    return compose_witness(w, blocks, next);
}

// All AND/OR trees with exactly `leaves` literals over x1..x3 (negations
// allowed), built in place and rolled back; visit() sees each once.
void enum_trees(Formula& f, int leaves, const std::function<void(int)>& visit) {
    if (leaves == 1) {
        for (int v = 1; v <= 3; ++v)
            for (int neg = 0; neg < 2; ++neg) {
                size_t mark = f.nodes.size();
                f.nodes.push_back({'L', v, neg == 1, -1, -1});
                visit(int(mark));
                f.nodes.resize(mark);
            }
        return;
    }
    for (int s = 1; s < leaves; ++s)
        enum_trees(f, s, [&](int left) {
            enum_trees(f, leaves - s, [&](int right) {
                for (char op : {'&', '|'}) {
                    size_t mark = f.nodes.size();
                    f.nodes.push_back({op, 0, false, left, right});
                    visit(int(mark));
                    f.nodes.resize(mark);
                }
            });
        });
}

BooleanFunction random_total(int n, Rng& rng) {
    for (;;) {
        std::vector<uint8_t> t(size_t(1) << n);
        for (auto& v : t) v = uint8_t(rng.below(2));
        BooleanFunction f = make_total(n, 2, std::move(t));
        if (!f.side(0).empty() && !f.side(1).empty()) return f;
    }
}

struct CliRun {
    int code = -1;
    json doc;
};

CliRun run_cli(const std::string& tool, const std::string& args) {
    CliRun res;
    std::string cmd = "'" + tool + "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return res;
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    int st = pclose(p);
    res.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    res.doc = json::parse(out, nullptr, false);
    return res;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-advtk>\n");
        return 2;
    }
    const std::string tool = argv[argc - 1];
    Gate gate;

    gate.criterion("exact Khrapchenko values on parity (n = 2..8)", 1.0, [](Problems& out) {
        for (int n = 2; n <= 8; ++n) {
            BooleanFunction f = builtin("parity", {n}, {});
            RatValue kv = khrapchenko(f, f.side(0), f.side(1));
            expect(out, kv.exact == Rat((long long)n * n),
                   "parity(" + std::to_string(n) + "): exact value " + kv.exact.str());
            expect(out, kv.value == double(n * n),
                   "parity(" + std::to_string(n) + "): double value " + std::to_string(kv.value));
        }
    });

    gate.criterion("majority pinch: witnesses, bracket and composition at 2^h", 120.0,
                   [](Problems& out) {
        Config cfg;
        BooleanFunction maj = builtin("maj3", {}, cfg);
        SpectralReport sr = spectral_value(maj, hamming_gamma(maj), cfg);
        expect(out, std::abs(sr.value - 2.0) <= 1e-9,
               "distance-1 spectral value " + std::to_string(sr.value));

        ProbabilityFamily cw = certificate_witness(maj);
        double mx = eval_maxpi_witness(maj, cw, cfg).value;
        expect(out, std::abs(mx - 2.0) <= 1e-9, "certificate max-witness " + std::to_string(mx));

        Bracket br = sumpi_bracket(maj, cfg);
        expect(out, br.lower.value <= 2.0 + 1e-9 && br.upper.value >= 2.0 - 1e-9,
               "bracket misses 2: [" + std::to_string(br.lower.value) + ", " +
                   std::to_string(br.upper.value) + "]");
        expect(out, br.upper.value - br.lower.value <= 0.02,
               "bracket width " + std::to_string(br.upper.value - br.lower.value));

        BooleanFunction rm2 = builtin("recmaj", {2}, cfg);
        double comp = eval_sumpi_witness(rm2, self_composed(maj, cw, rm2), cfg).value;
        expect(out, std::abs(comp - 4.0) <= 1e-9, "composed witness " + std::to_string(comp));

        SpectralOpt so = optimize_spectral(rm2, 0, cfg.spectral_iterations, cfg);
        expect(out, so.value >= 3.95, "height-2 optimizer value " + std::to_string(so.value));
    });

    gate.criterion("4-bit sortedness: 2.5 witness, optimizer, squared composition", 1800.0,
                   [](Problems& out) {
        Config cfg;
        BooleanFunction amb = builtin("ambainis", {}, cfg);
        ProbabilityFamily w = sensitivity_witness(amb, Rat(2, 5), Rat(1, 10));
        double v = eval_sumpi_witness(amb, w, cfg).value;
        expect(out, std::abs(v - 2.5) <= 1e-12, "sensitivity witness " + std::to_string(v));

        SpectralOpt so = optimize_spectral(amb, 0, cfg.spectral_iterations, cfg);
        expect(out, so.value >= 2.48, "optimizer value " + std::to_string(so.value));

        BooleanFunction amb2 = builtin("ambainis_iter", {2}, cfg);
        double v2 = eval_sumpi_witness(amb2, self_composed(amb, w, amb2), cfg).value;
        expect(out, v2 <= 6.25 + 1e-9 && v2 >= 6.25 - 1e-9,
               "composed witness full scan " + std::to_string(v2));
    });

    gate.criterion("collision witnesses at 2 and sqrt(2n); primal stays above sqrt(n/2)", 0.0,
                   [](Problems& out) {
        for (long long n : {4LL, 6LL, 8LL}) {
            Config cfg;
            cfg.opt_cells_cap = 1ull << 33;  // the n = 8 grid has ~7.1e9 cells
            BooleanFunction col = builtin("collision", {n}, cfg);
            std::string tag = "collision(" + std::to_string(n) + "): ";

            double uni = eval_sumpi_witness(col, uniform_witness(col), cfg).value;
            expect(out, std::abs(uni - 2.0) <= 1e-12, tag + "uniform " + std::to_string(uni));

            double pw = eval_maxpi_witness(col, collision_maxpi_witness(int(n), cfg), cfg).value;
            expect(out, std::abs(pw - std::sqrt(2.0 * n)) <= 1e-9,
                   tag + "pairing " + std::to_string(pw));

            PrimalOpt po = n == 4 ? optimize_maxpi_primal(col, 0, 400, cfg)
                                  : optimize_maxpi_primal(col, cfg);
            expect(out, po.value >= std::sqrt(n / 2.0) - 1e-6,
                   tag + "primal " + std::to_string(po.value) + " below sqrt(n/2)");
        }
    });

    gate.criterion("norm property suites: 1000 seeded instances each", 30.0, [](Problems& out) {
        Config cfg;
        SuiteReport kl = key_lemma_suite(1000, 0, cfg);
        SuiteReport np = norm_product_suite(1000, 1, cfg);
        SuiteReport nm = norm_monotone_suite(1000, 2, cfg);
        expect(out, kl.failures == 0,
               "partition inequality failed " + std::to_string(kl.failures) + " times");
        expect(out, np.failures == 0,
               "norm product failed " + std::to_string(np.failures) + " times");
        expect(out, nm.failures == 0,
               "norm monotonicity failed " + std::to_string(nm.failures) + " times");
        expect(out, kl.trials == 1000 && np.trials == 1000 && nm.trials == 1000,
               "suites did not run 1000 trials");
    });

    gate.criterion("protocol partitions valid for every formula with <= 5 leaves", 60.0,
                   [](Problems& out) {
        Config cfg;
        long long seen = 0, bad = 0;
        Formula phi;
        for (int leaves = 1; leaves <= 5; ++leaves)
            enum_trees(phi, leaves, [&](int root) {
                phi.root = root;
                ++seen;
                BooleanFunction f = make_total(3, 2, formula_table(phi, 3));
                KWPartition P = kw_partition(phi, f, cfg);
                KWCheck chk = check_kw_partition(P, f);
                if (!chk.ok() || chk.nonempty > leaves) {
                    if (++bad <= 3)
                        out.push_back("invalid partition for " + format_formula(phi));
                }
            });
        if (bad > 3) out.push_back(std::to_string(bad) + " invalid partitions in total");
        expect(out, seen == 1795470, "enumerated " + std::to_string(seen) + " formulas");
    });

    gate.criterion("exact minimum formula sizes: 1 / 2 / 4 / 5 and the 4-bit cap", 1800.0,
                   [](Problems& out) {
        Config cfg;
        auto check_size = [&](const BooleanFunction& f, int cap, int want,
                              const std::string& name) {
            MinFormula mf = min_formula_size(f, cap, cfg);
            expect(out, !mf.exceeded && mf.size == want,
                   name + ": size " + (mf.exceeded ? "exceeded" : std::to_string(mf.size)) +
                       ", wanted " + std::to_string(want));
            if (!mf.exceeded) {
                std::vector<uint8_t> table = formula_table(mf.witness, f.n);
                bool agrees = true;
                for (uint64_t code = 0; code < f.input_count(); ++code)
                    agrees = agrees && table[code] == *f.label(code);
                expect(out, agrees, name + ": witness does not compute the function");
            }
        };
        check_size(make_total(1, 2, {0, 1}), 3, 1, "single variable");
        check_size(builtin("and", {2}, cfg), 4, 2, "two-bit AND");
        check_size(builtin("parity", {2}, cfg), 6, 4, "two-bit parity");
        check_size(builtin("maj3", {}, cfg), 6, 5, "majority");
        MinFormula over = min_formula_size(builtin("ambainis", {}, cfg), 6, cfg);
        expect(out, over.exceeded, "sortedness fits in 6 leaves (bound says > 6.25)");
    });

    gate.criterion("spectral^2 <= partition number <= formula size on all 3-variable functions",
                   600.0, [](Problems& out) {
        Config cfg;
        int tested = 0;
        for (int bits = 0; bits < 256; ++bits) {
            std::vector<uint8_t> t(8);
            for (int c = 0; c < 8; ++c) t[c] = uint8_t((bits >> c) & 1);
            BooleanFunction f = make_total(3, 2, std::move(t));
            std::string tag = "table " + std::to_string(bits) + ": ";
            if (f.is_constant()) {
                bool threw = false;
                try {
                    optimize_spectral(f, 0, 10, cfg);
                } catch (const UsageError&) {
                    threw = true;
                }
                expect(out, threw, tag + "constant accepted by the optimizer");
                continue;
            }
            SpectralOpt so = optimize_spectral(f, 0, cfg.spectral_iterations, cfg);
            double lower = so.value * so.value;
            int cd = rectangle_partition_number(f, cfg, lower);
            MinFormula mf = min_formula_size(f, 12, cfg);
            expect(out, !mf.exceeded, tag + "no formula within 12 leaves");
            expect(out, lower <= cd + 1e-6,
                   tag + "spectral^2 " + std::to_string(lower) + " > partitions " +
                       std::to_string(cd));
            expect(out, mf.exceeded || cd <= mf.size,
                   tag + "partitions " + std::to_string(cd) + " > size " +
                       std::to_string(mf.size));
            ++tested;
        }
        expect(out, tested == 254, "tested " + std::to_string(tested) + " functions");
    });

    gate.criterion("random-restriction bound: pinned values and the s0*s1 ceiling", 120.0,
                   [](Problems& out) {
        Config cfg;
        BooleanFunction x1 = make_total(1, 2, {0, 1});
        BooleanFunction p2 = builtin("parity", {2}, cfg);
        for (int i = 1; i <= 9; ++i) {
            double p = i / 10.0;
            double vx = hastad_bound(x1, p, nullptr, cfg);
            expect(out, std::abs(vx - 1.0) <= 1e-9,
                   "single variable at p=" + std::to_string(p) + ": " + std::to_string(vx));
            double vp = hastad_bound(p2, p, nullptr, cfg);
            expect(out, std::abs(vp - 4.0) <= 1e-9,
                   "two-bit parity at p=" + std::to_string(p) + ": " + std::to_string(vp));
        }
        Rng rng(0);
        for (int trial = 0; trial < 500; ++trial) {
            int n = 2 + int(rng.below(3));
            BooleanFunction f = random_total(n, rng);
            double ceiling =
                double(sensitivity(f, Side::Zero)) * double(sensitivity(f, Side::One));
            for (int i = 1; i <= 9; ++i) {
                double v = hastad_bound(f, i / 10.0, nullptr, cfg);
                if (v > ceiling + 1e-9) {
                    out.push_back("trial " + std::to_string(trial) + " (n=" + std::to_string(n) +
                                  ", p=" + std::to_string(i / 10.0) + "): " + std::to_string(v) +
                                  " > s0*s1 = " + std::to_string(ceiling));
                    return;
                }
            }
        }
    });

    gate.criterion("bracket sweep on all 3-variable functions: order, barriers, width", 0.0,
                   [](Problems& out) {
        Config cfg;
        int tested = 0, tight = 0;
        for (int bits = 0; bits < 256; ++bits) {
            std::vector<uint8_t> t(8);
            for (int c = 0; c < 8; ++c) t[c] = uint8_t((bits >> c) & 1);
            BooleanFunction f = make_total(3, 2, std::move(t));
            if (f.is_constant()) continue;
            std::string tag = "table " + std::to_string(bits) + ": ";
            Bracket br = sumpi_bracket(f, cfg);
            expect(out, br.lower.value <= br.upper.value + 1e-6,
                   tag + "bracket inverted [" + std::to_string(br.lower.value) + ", " +
                       std::to_string(br.upper.value) + "]");
            double bs = block_sensitivity(f, cfg);
            expect(out, br.upper.value >= std::sqrt(bs) - 1e-6,
                   tag + "upper " + std::to_string(br.upper.value) + " below sqrt(bs) " +
                       std::to_string(std::sqrt(bs)));
            double barrier = std::sqrt(double(certificate_complexity(f, Side::Zero)) *
                                       double(certificate_complexity(f, Side::One)));
            expect(out, br.lower.value <= barrier + 1e-6,
                   tag + "lower " + std::to_string(br.lower.value) + " above sqrt(C0*C1) " +
                       std::to_string(barrier));
            ++tested;
            if (br.upper.value - br.lower.value <= 0.1) ++tight;
        }
        expect(out, tested == 254, "tested " + std::to_string(tested) + " functions");
        expect(out, tight * 20 >= tested * 19,  // at least 95%
               "only " + std::to_string(tight) + "/" + std::to_string(tested) +
                   " brackets within width 0.1");
    });

    gate.criterion("summary table reproduces through the CLI", 0.0, [&tool](Problems& out) {
        CliRun res = run_cli(tool, "reproduce-table --no-meta");
        expect(out, res.code == 0, "exit code " + std::to_string(res.code));
        if (res.doc.is_discarded()) {
            out.push_back("CLI output is not JSON");
            return;
        }
        expect(out, res.doc["result"]["pass"] == true, "table reports pass=false");
        std::vector<std::string> want{"MAJ^1", "MAJ^2", "A^1", "A^2", "Col(4)"};
        const json& rows = res.doc["result"]["rows"];
        expect(out, rows.size() == want.size(),
               "expected 5 rows, got " + std::to_string(rows.size()));
        for (size_t i = 0; i < rows.size() && i < want.size(); ++i) {
            expect(out, rows[i]["function"] == want[i],
                   "row " + std::to_string(i) + " is " + rows[i]["function"].dump());
            expect(out, rows[i]["ok"] == true, want[i] + " row failed its checks");
        }
    });

    std::printf("%s: %d/%d criteria passed\n", gate.failed == 0 ? "ACCEPTED" : "REJECTED",
                gate.index - gate.failed, gate.index);
    return gate.failed == 0 ? 0 : 1;
}
