#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "advtk/adversary.hpp"
#include "advtk/boolfn.hpp"
#include "advtk/measures.hpp"

using namespace advtk;

namespace {

// Hamming-distance-1 relation matrix over X x Y in side order.
Matrix hamming_gamma(const BooleanFunction& f) {
    std::vector<uint64_t> xs = f.side(0), ys = f.side(1);
    Matrix G(int(xs.size()), int(ys.size()));
    for (size_t r = 0; r < xs.size(); ++r)
        for (size_t c = 0; c < ys.size(); ++c)
            if (__builtin_popcountll(xs[r] ^ ys[c]) == 1) G.at(int(r), int(c)) = 1.0;
    return G;
}

} // namespace

TEST_CASE("certificate witness evaluates to 2 on majority") {
    BooleanFunction maj = builtin("maj3", {}, {});
    ProbabilityFamily w = certificate_witness(maj);
    CHECK(std::abs(eval_sumpi_witness(maj, w).value - 2.0) <= 1e-12);
    CHECK(std::abs(eval_maxpi_witness(maj, w).value - 2.0) <= 1e-12);
    // an attaining pair is a genuine cross pair
    EvalReport er = eval_sumpi_witness(maj, w);
    CHECK(*maj.label(er.wx) == 0);
    CHECK(*maj.label(er.wy) == 1);
}

TEST_CASE("sensitivity-weighted witness gives 5/2 on the sortedness function") {
    BooleanFunction f = builtin("ambainis", {}, {});
    ProbabilityFamily w = sensitivity_witness(f, Rat(2, 5), Rat(1, 10));
    CHECK(std::abs(eval_sumpi_witness(f, w).value - 2.5) <= 1e-12);
    // weights must sum to 1 per input
    CHECK_THROWS_AS(sensitivity_witness(f, Rat(1, 2), Rat(1, 2)), UsageError);
}

TEST_CASE("uniform witness on parity") {
    BooleanFunction f = builtin("parity", {2}, {});
    // cross pairs differ in one position, overlap sqrt(1/2 * 1/2) = 1/2
    CHECK(std::abs(eval_sumpi_witness(f, uniform_witness(f)).value - 2.0) <= 1e-12);
    // sampling is seeded and agrees on a flat landscape
    CHECK(std::abs(eval_sumpi_witness_sampled(f, uniform_witness(f), 64, 1).value - 2.0) <=
          1e-12);
}

TEST_CASE("collision witnesses") {
    for (int n : {4, 6}) {
        BooleanFunction f = builtin("collision", {n}, {});
        CHECK(std::abs(eval_sumpi_witness(f, uniform_witness(f)).value - 2.0) <= 1e-12);
        double mp = eval_maxpi_witness(f, collision_maxpi_witness(n, {}), {}).value;
        CHECK(std::abs(mp - std::sqrt(2.0 * n)) <= 1e-9);
    }
}

TEST_CASE("spectral adversary on the Hamming graph of majority") {
    BooleanFunction maj = builtin("maj3", {}, {});
    SpectralReport r = spectral_value(maj, hamming_gamma(maj), {});
    CHECK(std::abs(r.value - 2.0) <= 1e-9);
    CHECK(r.num == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.den == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.argmax_index >= 1);
    CHECK(r.argmax_index <= 3);

    Matrix zero(4, 4);
    CHECK_THROWS_AS(spectral_value(maj, zero, {}), UsageError);
    Matrix bad(2, 2);
    CHECK_THROWS_AS(spectral_value(maj, bad, {}), UsageError);  // wrong shape
}

TEST_CASE("khrapchenko is exact on parity") {
    for (int n = 2; n <= 5; ++n) {
        BooleanFunction f = builtin("parity", {n}, {});
        RatValue kv = khrapchenko(f, f.side(0), f.side(1));
        CHECK(kv.exact == Rat(n) * Rat(n));
        CHECK(kv.value == double(n) * n);
    }
    // restricted sides work too: single pair at distance 1 gives 1/(1*1)
    BooleanFunction p2 = builtin("parity", {2}, {});
    RatValue one = khrapchenko(p2, {0}, {1});
    CHECK(one.exact == Rat(1));
}

TEST_CASE("koutsoupias refines khrapchenko on parity") {
    BooleanFunction f = builtin("parity", {2}, {});
    double v = koutsoupias(f, f.side(0), f.side(1), {});
    CHECK(v == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(v >= khrapchenko(f, f.side(0), f.side(1)).value - 1e-9);
}

TEST_CASE("restriction-averaged bound") {
    // single variable: the bound is exactly 1 for every p
    BooleanFunction x1 = make_total(1, 2, {0, 1});
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9})
        CHECK(std::abs(hastad_bound(x1, p, nullptr, {}) - 1.0) <= 1e-9);
    // parity of two variables: exactly 4 for every p
    BooleanFunction p2 = builtin("parity", {2}, {});
    for (double p : {0.1, 0.5, 0.9})
        CHECK(std::abs(hastad_bound(p2, p, nullptr, {}) - 4.0) <= 1e-9);
    CHECK_THROWS_AS(hastad_bound(p2, 0.0, nullptr, {}), UsageError);
    CHECK_THROWS_AS(hastad_bound(p2, 1.0, nullptr, {}), UsageError);

    // a filter must be downward closed
    Filter bad = [](const Restriction& rho) { return rho.stars() == rho.n; };
    CHECK_THROWS_AS(hastad_bound(p2, 0.5, &bad, {}), VerifyError);
}

TEST_CASE("witness composition multiplies values on recursive majority") {
    BooleanFunction maj = builtin("maj3", {}, {});
    BooleanFunction rec2 = builtin("recmaj", {2}, {});
    ProbabilityFamily base = certificate_witness(maj);
    std::vector<WitnessedBlock> blocks(3, WitnessedBlock{&maj, &base});
    ProbabilityFamily w = compose_witness(base, blocks, rec2);
    CHECK(std::abs(eval_sumpi_witness(rec2, w).value - 4.0) <= 1e-9);
    CHECK(std::abs(eval_maxpi_witness(rec2, w).value - 4.0) <= 1e-9);

    // arity mismatch is rejected
    std::vector<WitnessedBlock> two(2, WitnessedBlock{&maj, &base});
    CHECK_THROWS_AS(compose_witness(base, two, rec2), UsageError);
}

TEST_CASE("probability schemes lower-bound sumPI") {
    BooleanFunction x1 = make_total(1, 2, {0, 1});
    ProbSchemeWitness s;
    s.n = 1;
    s.q[{0, 1}] = 1.0;
    s.pA[0] = 1.0;
    s.pB[1] = 1.0;
    s.px[{0, 1}][1] = 1.0;
    s.py[{1, 1}][0] = 1.0;
    CHECK(std::abs(prob_scheme_value(x1, s, {}) - 1.0) <= 1e-12);

    // q must be a probability distribution
    s.q[{0, 1}] = 0.5;
    CHECK_THROWS_AS(prob_scheme_value(x1, s, {}), VerifyError);

    // parity(2): uniform q over the four cross pairs with deterministic
    // transitions onto the distance-1 partner certifies the full value 2
    BooleanFunction p2 = builtin("parity", {2}, {});
    ProbSchemeWitness t;
    t.n = 2;
    uint64_t c00 = 0, c01 = 1, c10 = 2, c11 = 3;
    for (uint64_t x : {c00, c11})
        for (uint64_t y : {c01, c10}) t.q[{x, y}] = 0.25;
    t.pA[c00] = t.pA[c11] = 0.5;
    t.pB[c01] = t.pB[c10] = 0.5;
    t.px[{c00, 1}][c10] = 1.0;
    t.px[{c00, 2}][c01] = 1.0;
    t.px[{c11, 1}][c01] = 1.0;
    t.px[{c11, 2}][c10] = 1.0;
    t.py[{c01, 1}][c11] = 1.0;
    t.py[{c01, 2}][c00] = 1.0;
    t.py[{c10, 1}][c00] = 1.0;
    t.py[{c10, 2}][c11] = 1.0;
    CHECK(std::abs(prob_scheme_value(p2, t, {}) - 2.0) <= 1e-12);
}

TEST_CASE("index selections certify the max variant") {
    BooleanFunction maj = builtin("maj3", {}, {});
    std::vector<uint64_t> xs = maj.side(0), ys = maj.side(1);
    IndexSelection sel;
    sel.P.assign(3, Matrix(int(xs.size()), int(ys.size())));
    // route every pair to its least differing position
    for (size_t r = 0; r < xs.size(); ++r)
        for (size_t c = 0; c < ys.size(); ++c) {
            uint64_t d = xs[r] ^ ys[c];
            int i = 0;
            for (int pos = 0; pos < 3; ++pos)
                if (d & (1ull << (2 - pos))) { i = pos; break; }
            sel.P[i].at(int(r), int(c)) = 1.0;
        }
    std::string reason;
    CHECK(validate_index_selection(maj, sel, &reason, {}));

    Matrix G = hamming_gamma(maj);
    double v = index_selection_value(maj, sel, G, {});
    CHECK(v >= 2.0 - 1e-9);  // recovers the spectral bound here

    // breaking the partition property is caught
    sel.P[0].at(0, 0) += 1.0;
    CHECK(!validate_index_selection(maj, sel, &reason, {}));
    CHECK(!reason.empty());
}

TEST_CASE("family validation") {
    BooleanFunction maj = builtin("maj3", {}, {});
    ProbabilityFamily w = uniform_witness(maj);
    CHECK_NOTHROW(validate_family(maj, w));
    w.p[0][0] = -0.5;
    CHECK_THROWS_AS(validate_family(maj, w), VerifyError);
    ProbabilityFamily missing;
    missing.n = 3;
    CHECK_THROWS_AS(validate_family(maj, missing), VerifyError);
}

TEST_CASE("certificate barriers") {
    CHECK(certificate_barrier(builtin("maj3", {}, {})) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(certificate_barrier(builtin("ambainis", {}, {})) ==
          doctest::Approx(3.0).epsilon(1e-12));
    CHECK(certificate_barrier(builtin("recmaj", {2}, {})) ==
          doctest::Approx(4.0).epsilon(1e-12));
    // partial: min over sides of sqrt(n C_side) = sqrt(4 * 2)
    CHECK(certificate_barrier(builtin("collision", {4}, {})) ==
          doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));
}

TEST_CASE("derived bound formulas") {
    CHECK(formula_bound(3.0) == 9.0);
    CHECK(quantum_bound(3.0, 0.0) == doctest::Approx(3.0));
    CHECK(quantum_bound(3.0, 1.0 / 3.0) ==
          doctest::Approx((1.0 - 2.0 * std::sqrt(2.0) / 3.0) * 3.0).epsilon(1e-12));
    CHECK(prob_formula_bound(3.0, 1.0 / 3.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prob_formula_bound(2.0, 0.0) == doctest::Approx(4.0).epsilon(1e-12));
}
