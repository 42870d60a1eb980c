#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "advtk/adversary.hpp"
#include "advtk/boolfn.hpp"

using namespace advtk;

TEST_CASE("spectral search recovers the majority optimum") {
    BooleanFunction maj = builtin("maj3", {}, {});
    SpectralOpt so = optimize_spectral(maj, 0, 200, {});
    CHECK(so.value >= 2.0 - 1e-9);
    CHECK(so.value <= 2.0 + 1e-9);   // 2 is the true optimum
    CHECK(!so.gamma.all_zero());
    CHECK(!so.start.empty());
    // the reported value is the exact spectral value of the returned matrix
    SpectralReport r = spectral_value(maj, so.gamma, {});
    CHECK(r.value == doctest::Approx(so.value).epsilon(1e-12));
}

TEST_CASE("spectral search is deterministic") {
    BooleanFunction f = builtin("ambainis", {}, {});
    SpectralOpt a = optimize_spectral(f, 0, 200, {});
    SpectralOpt b = optimize_spectral(f, 0, 200, {});
    CHECK(a.value == b.value);
    CHECK(a.start == b.start);
    CHECK(a.gamma.a == b.gamma.a);
    // a different seed may land elsewhere but stays certified
    SpectralOpt c = optimize_spectral(f, 12345, 200, {});
    CHECK(spectral_value(f, c.gamma, {}).value == doctest::Approx(c.value).epsilon(1e-12));
}

TEST_CASE("spectral search clears the known optima") {
    CHECK(optimize_spectral(builtin("ambainis", {}, {}), 0, 200, {}).value >= 2.48);
    CHECK(optimize_spectral(builtin("recmaj", {2}, {}), 0, 200, {}).value >= 3.95);
}

TEST_CASE("primal search tightens to the majority optimum") {
    BooleanFunction maj = builtin("maj3", {}, {});
    PrimalOpt po = optimize_sumpi_primal(maj, 0, 3000, {});
    CHECK(po.value >= 2.0 - 1e-9);   // no witness beats the true value
    CHECK(po.value <= 2.0 + 1e-6);   // and the search reaches it
    CHECK_NOTHROW(validate_family(maj, po.witness));
    CHECK(std::abs(eval_sumpi_witness(maj, po.witness).value - po.value) <= 1e-12);

    PrimalOpt again = optimize_sumpi_primal(maj, 0, 3000, {});
    CHECK(again.value == po.value);
    CHECK(again.witness.p == po.witness.p);
}

TEST_CASE("primal search on the max variant stays above the collision floor") {
    for (int n : {4, 6}) {
        BooleanFunction f = builtin("collision", {n}, {});
        PrimalOpt po = optimize_maxpi_primal(f, 0, 400, {});
        CHECK(po.value >= std::sqrt(n / 2.0) - 1e-6);
        CHECK_NOTHROW(validate_family(f, po.witness));
        CHECK(std::abs(eval_maxpi_witness(f, po.witness).value - po.value) <= 1e-12);
    }
}

TEST_CASE("zero-iteration primal still returns a certified witness") {
    BooleanFunction maj = builtin("maj3", {}, {});
    PrimalOpt po = optimize_sumpi_primal(maj, 0, 0, {});
    CHECK(po.value >= 2.0 - 1e-9);
    CHECK(std::isfinite(po.value));
    CHECK_NOTHROW(validate_family(maj, po.witness));
}

TEST_CASE("starts-only mode evaluates the cheap families exactly") {
    BooleanFunction maj = builtin("maj3", {}, {});
    Config cfg;
    cfg.primal_dense_cells_cap = 1;  // force the streaming path
    PrimalOpt po = optimize_sumpi_primal(maj, 0, 3000, cfg);
    // min(uniform = 3, certificate = 2)
    CHECK(std::abs(po.value - 2.0) <= 1e-12);
}

TEST_CASE("brackets enclose the majority and parity values") {
    BooleanFunction maj = builtin("maj3", {}, {});
    Bracket br = sumpi_bracket(maj, {});
    CHECK(br.lower.value >= 2.0 - 0.02);
    CHECK(br.upper.value <= 2.0 + 0.02);
    CHECK(br.upper.value - br.lower.value <= 0.02);
    CHECK(br.lower.value <= br.upper.value + 1e-6);
    CHECK(!br.lower.method.empty());
    CHECK(!br.upper.method.empty());

    for (int n : {2, 3}) {
        BooleanFunction p = builtin("parity", {n}, {});
        Bracket bp = sumpi_bracket(p, {});
        // khrapchenko pins the lower side at n exactly
        CHECK(bp.lower.value >= n - 1e-9);
        CHECK(bp.upper.value >= bp.lower.value - 1e-6);
        CHECK(bp.upper.value <= n + 1e-6);
    }
}

TEST_CASE("max-variant bracket on collision stays inside the known window") {
    BooleanFunction f = builtin("collision", {4}, {});
    Bracket br = maxpi_bracket(f, {});
    CHECK(br.lower.value <= br.upper.value + 1e-6);
    CHECK(br.upper.value <= std::sqrt(8.0) + 1e-9);
    CHECK(br.upper.value >= std::sqrt(2.0) - 1e-6);
}

TEST_CASE("optimizer caps") {
    Config tiny;
    tiny.opt_cells_cap = 4;
    BooleanFunction maj = builtin("maj3", {}, {});
    CHECK_THROWS_AS(optimize_spectral(maj, 0, 200, tiny), CapExceeded);
    CHECK_THROWS_AS(optimize_sumpi_primal(maj, 0, 100, tiny), CapExceeded);
    BooleanFunction c1 = make_total(2, 2, {1, 1, 1, 1});
    CHECK_THROWS_AS(optimize_spectral(c1, 0, 10, {}), UsageError);  // one-sided
}
