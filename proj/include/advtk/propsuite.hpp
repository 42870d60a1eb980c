#pragma once
// Seeded property suites over random matrices: the key partition lemma
// (norm-squared subadditivity over rectangle partitions) and the two
// operator-norm inequalities (Prop. 1 items: ||A||^2 <= ||A||_1 ||A||_inf and
// monotonicity 0 <= A <= B => ||A|| <= ||B||).  Shared by the CLI's
// lemma-check subcommand and the test suite.

#include <cstdint>
#include <limits>

#include "advtk/config.hpp"

namespace advtk {

struct SuiteReport {
    uint64_t trials = 0;
    uint64_t failures = 0;
    // smallest margin (rhs + tol - lhs) observed; negative means a violation
    double worst_slack = std::numeric_limits<double>::infinity();
    bool pass() const { return failures == 0; }
};

// Random A in [0,1]^{r x c} with r, c <= 10 and a random guillotine rectangle
// partition; checks ||A||^2 <= sum_R ||A_R||^2 + tol.
SuiteReport key_lemma_suite(uint64_t trials, uint64_t seed, const Config& cfg = {});

// ||A||^2 <= ||A||_1 ||A||_inf + tol on random matrices.
SuiteReport norm_product_suite(uint64_t trials, uint64_t seed, const Config& cfg = {});

// 0 <= A <= B entrywise implies ||A|| <= ||B|| + tol on random pairs.
SuiteReport norm_monotone_suite(uint64_t trials, uint64_t seed, const Config& cfg = {});

} // namespace advtk
