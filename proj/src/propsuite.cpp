#include <algorithm>

#include "advtk/matrix.hpp"
#include "advtk/propsuite.hpp"

namespace advtk {

namespace {

Matrix random_matrix(Rng& rng, int rows, int cols) {
    Matrix A(rows, cols);
    for (double& v : A.a) v = rng.uniform();
    return A;
}

// random guillotine split: pick row/column cut points, take all bands
RectanglePartition random_partition(Rng& rng, int rows, int cols) {
    auto cuts = [&](int m) {
        std::vector<int> edges{0, m};
        for (int i = 1; i < m; ++i)
            if (rng.below(3) == 0) edges.push_back(i);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return edges;
    };
    std::vector<int> re = cuts(rows), ce = cuts(cols);
    RectanglePartition P;
    for (size_t bi = 0; bi + 1 < re.size(); ++bi)
        for (size_t bj = 0; bj + 1 < ce.size(); ++bj) {
            Rectangle R;
            for (int r = re[bi]; r < re[bi + 1]; ++r) R.rws.push_back(r);
            for (int c = ce[bj]; c < ce[bj + 1]; ++c) R.cls.push_back(c);
            P.rects.push_back(std::move(R));
        }
    return P;
}

} // namespace

SuiteReport key_lemma_suite(uint64_t trials, uint64_t seed, const Config& cfg) {
    Rng rng(seed);
    SuiteReport rep;
    rep.trials = trials;
    for (uint64_t t = 0; t < trials; ++t) {
        int rows = 1 + int(rng.below(10));
        int cols = 1 + int(rng.below(10));
        Matrix A = random_matrix(rng, rows, cols);
        RectanglePartition P = random_partition(rng, rows, cols);
        KeyLemmaReport r = key_lemma_check(A, P, cfg);
        double slack = r.rhs + cfg.check_tol - r.lhs;
        if (!r.holds) ++rep.failures;
        rep.worst_slack = std::min(rep.worst_slack, slack);
    }
    return rep;
}

SuiteReport norm_product_suite(uint64_t trials, uint64_t seed, const Config& cfg) {
    Rng rng(seed);
    SuiteReport rep;
    rep.trials = trials;
    for (uint64_t t = 0; t < trials; ++t) {
        int rows = 1 + int(rng.below(10));
        int cols = 1 + int(rng.below(10));
        Matrix A = random_matrix(rng, rows, cols);
        double n2 = spectral_norm(A, cfg);
        double slack = norm_one(A) * norm_inf(A) + cfg.check_tol - n2 * n2;
        if (slack < 0) ++rep.failures;
        rep.worst_slack = std::min(rep.worst_slack, slack);
    }
    return rep;
}

SuiteReport norm_monotone_suite(uint64_t trials, uint64_t seed, const Config& cfg) {
    Rng rng(seed);
    SuiteReport rep;
    rep.trials = trials;
    for (uint64_t t = 0; t < trials; ++t) {
        int rows = 1 + int(rng.below(10));
        int cols = 1 + int(rng.below(10));
        Matrix B = random_matrix(rng, rows, cols);
        Matrix A = B;
        for (double& v : A.a) v *= rng.uniform();
        double slack = spectral_norm(B, cfg) + cfg.check_tol - spectral_norm(A, cfg);
        if (slack < 0) ++rep.failures;
        rep.worst_slack = std::min(rep.worst_slack, slack);
    }
    return rep;
}

} // namespace advtk
