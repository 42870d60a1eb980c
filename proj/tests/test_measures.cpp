#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "advtk/boolfn.hpp"
#include "advtk/measures.hpp"

using namespace advtk;

TEST_CASE("majority measures") {
    BooleanFunction maj = builtin("maj3", {}, {});
    CHECK(sensitivity(maj, Side::Zero) == 2);
    CHECK(sensitivity(maj, Side::One) == 2);
    CHECK(certificate_complexity(maj, Side::Zero) == 2);
    CHECK(certificate_complexity(maj, Side::One) == 2);
    CHECK(block_sensitivity(maj, {}) == 2);

    // 011: flipping x2 or x3 drops the majority, x1 does not
    CHECK(sensitivity_at(maj, 3) == 2);
    CHECK(min_certificate(maj, 0) == std::vector<int>{0, 1});
    CHECK(min_certificate(maj, 3) == std::vector<int>{1, 2});
    CHECK(min_certificate(maj, 7) == std::vector<int>{0, 1});
}

TEST_CASE("parity measures are the arity") {
    for (int n : {2, 3, 4, 5}) {
        BooleanFunction f = builtin("parity", {n}, {});
        CHECK(sensitivity(f, Side::Zero) == n);
        CHECK(sensitivity(f, Side::One) == n);
        CHECK(certificate_complexity(f, Side::Zero) == n);
        CHECK(certificate_complexity(f, Side::One) == n);
        CHECK(block_sensitivity(f, {}) == n);
        CHECK(min_certificate(f, 0).size() == size_t(n));
    }
}

TEST_CASE("or measures are one-sided") {
    BooleanFunction f = builtin("or", {3}, {});
    CHECK(sensitivity(f, Side::Zero) == 3);   // all-zeros flips on any bit
    CHECK(sensitivity(f, Side::One) == 1);    // only single-one inputs are sensitive
    CHECK(certificate_complexity(f, Side::Zero) == 3);
    CHECK(certificate_complexity(f, Side::One) == 1);
    CHECK(block_sensitivity(f, {}) == 3);
    CHECK(block_sensitivity_at(f, 0, {}) == 3);
    CHECK(min_certificate(f, 4) == std::vector<int>{0});  // "100": x1 = 1 certifies
}

TEST_CASE("sortedness base function measures") {
    BooleanFunction f = builtin("ambainis", {}, {});
    CHECK(sensitivity(f, Side::Zero) == 2);
    CHECK(sensitivity(f, Side::One) == 2);
    CHECK(certificate_complexity(f, Side::Zero) == 3);
    CHECK(certificate_complexity(f, Side::One) == 3);
    CHECK(block_sensitivity(f, {}) == 3);
    CHECK(min_certificate(f, 0) == std::vector<int>{0, 1, 2});   // 0000
    CHECK(min_certificate(f, 3) == std::vector<int>{0, 1, 3});   // 0011
}

TEST_CASE("collision inputs have no in-promise neighbors") {
    BooleanFunction f = builtin("collision", {4}, {});
    CHECK(sensitivity(f, Side::Zero) == 0);
    CHECK(sensitivity(f, Side::One) == 0);
    // a single symbol change never stays 2-to-1 or 1-to-1
    CHECK(sensitivity_at(f, parse_input("0123", 4)) == 0);
    // certificates: two equal positions pin a 0, three distinct pin a 1
    CHECK(certificate_complexity(f, Side::Zero) == 2);
    CHECK(certificate_complexity(f, Side::One) == 3);
    CHECK(min_certificate(f, parse_input("0011", 4)) == std::vector<int>{0, 1});
}

TEST_CASE("measure guards") {
    BooleanFunction f = builtin("collision", {4}, {});
    CHECK_THROWS_AS(block_sensitivity(f, {}), UsageError);  // partial, k > 2
    CHECK_THROWS_AS(sensitivity_at(f, parse_input("0001", 4)), UsageError);

    Config tiny;
    tiny.block_sens_cap = 3;
    BooleanFunction p4 = builtin("parity", {4}, {});
    CHECK_THROWS_AS(block_sensitivity(p4, tiny), CapExceeded);

    BooleanFunction c0 = make_total(2, 2, {0, 0, 0, 0});
    CHECK_THROWS_AS(certificate_complexity(c0, Side::Zero), UsageError);  // one-sided
}

TEST_CASE("block sensitivity can exceed sensitivity relations hold") {
    // s <= bs <= C on assorted functions
    for (const char* name : {"maj3", "ambainis"}) {
        BooleanFunction f = builtin(name, {}, {});
        int s = std::max(sensitivity(f, Side::Zero), sensitivity(f, Side::One));
        int bs = block_sensitivity(f, {});
        int c = std::max(certificate_complexity(f, Side::Zero),
                         certificate_complexity(f, Side::One));
        CHECK(s <= bs);
        CHECK(bs <= c);
    }
}
