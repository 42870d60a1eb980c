#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "advtk/adversary.hpp"
#include "advtk/boolfn.hpp"
#include "advtk/witness_io.hpp"

using namespace advtk;

TEST_CASE("sum-variant families parse with rationals and decimals") {
    BooleanFunction and2 = builtin("and", {2}, {});
    const char* text = R"({
      "type": "sumpi", "n": 2,
      "p": {
        "00": ["1/2", "1/2"],
        "01": [1, 0],
        "10": [0.0, 1.0],
        "11": ["1/2", "1/2"]
      }
    })";
    WitnessFile wf = parse_witness(text, and2);
    CHECK(wf.type == "sumpi");
    CHECK(wf.n == 2);
    validate_family(and2, wf.family, {});
    CHECK(wf.family.p.at(0)[0] == 0.5);   // "1/2" parses exactly
    CHECK(wf.family.p.at(1)[0] == 1.0);

    EvalReport sum = eval_sumpi_witness(and2, wf.family, {});
    CHECK(sum.value == doctest::Approx(1.0 / std::sqrt(0.5)).epsilon(1e-12));
    EvalReport mx = eval_maxpi_witness(and2, wf.family, {});
    CHECK(mx.value == doctest::Approx(2.0).epsilon(1e-12));
    // the max-variant worst pair is the all-differing one
    CHECK(mx.wx == 0);
    CHECK(mx.wy == 3);
}

TEST_CASE("family serialization round-trips") {
    BooleanFunction maj = builtin("maj3", {}, {});
    ProbabilityFamily w = certificate_witness(maj);
    std::string text = format_family(w, maj, "sumpi");
    WitnessFile back = parse_witness(text, maj);
    CHECK(back.type == "sumpi");
    CHECK(back.family.p == w.p);

    // partial-function inputs key by their promise strings
    BooleanFunction col = builtin("collision", {4}, {});
    ProbabilityFamily u = uniform_witness(col);
    WitnessFile back2 = parse_witness(format_family(u, col, "maxpi"), col);
    CHECK(back2.type == "maxpi");
    CHECK(back2.family.p == u.p);
}

namespace {

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

} // namespace

TEST_CASE("spectral matrices parse in both forms") {
    BooleanFunction maj = builtin("maj3", {}, {});
    Matrix G = hamming_gamma(maj);

    // triple form, as emitted by format_gamma
    std::string text = format_gamma(G, maj);
    WitnessFile wf = parse_witness(text, maj);
    CHECK(wf.type == "spectral");
    CHECK(wf.gamma.rows == G.rows);
    CHECK(wf.gamma.cols == G.cols);
    CHECK(wf.gamma.a == G.a);

    // dense form gives the same matrix
    std::ostringstream dense;
    dense << "{\"type\": \"spectral\", \"n\": 3, \"matrix\": [";
    for (int r = 0; r < G.rows; ++r) {
        dense << (r ? ", [" : "[");
        for (int c = 0; c < G.cols; ++c) dense << (c ? ", " : "") << G.at(r, c);
        dense << "]";
    }
    dense << "]}";
    WitnessFile wf2 = parse_witness(dense.str(), maj);
    CHECK(wf2.gamma.a == G.a);

    SpectralReport rep = spectral_value(maj, wf.gamma, {});
    CHECK(rep.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("probability schemes parse and evaluate") {
    BooleanFunction p2 = builtin("parity", {2}, {});
    // the optimal scheme for two-bit parity: uniform endpoints, deterministic
    // transitions onto the unique distance-one partner
    const char* text = R"({
      "type": "probscheme", "n": 2,
      "pA": {"00": "1/2", "11": "1/2"},
      "pB": {"01": "1/2", "10": "1/2"},
      "q": [["00","01","1/4"], ["00","10","1/4"], ["11","01","1/4"], ["11","10","1/4"]],
      "px": {"00,2": {"01": 1}, "00,1": {"10": 1}, "11,1": {"01": 1}, "11,2": {"10": 1}},
      "py": {"01,2": {"00": 1}, "01,1": {"11": 1}, "10,1": {"00": 1}, "10,2": {"11": 1}}
    })";
    WitnessFile wf = parse_witness(text, p2);
    CHECK(wf.type == "probscheme");
    double val = prob_scheme_value(p2, wf.scheme, {});
    CHECK(val == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("files load from disk") {
    BooleanFunction maj = builtin("maj3", {}, {});
    ProbabilityFamily w = uniform_witness(maj);
    const char* path = "witness_io_tmp.json";
    {
        std::ofstream out(path);
        out << format_family(w, maj, "sumpi");
    }
    WitnessFile wf = load_witness(path, maj);
    CHECK(wf.family.p == w.p);
    std::remove(path);

    CHECK_THROWS_AS(load_witness("definitely_missing.json", maj), UsageError);
}

TEST_CASE("malformed documents are rejected") {
    BooleanFunction maj = builtin("maj3", {}, {});
    BooleanFunction col = builtin("collision", {4}, {});

    CHECK_THROWS_AS(parse_witness("{nope", maj), UsageError);
    CHECK_THROWS_AS(parse_witness("[1, 2]", maj), UsageError);
    CHECK_THROWS_AS(parse_witness(R"({"type": "magic", "n": 3, "p": {}})", maj), UsageError);
    // arity mismatch
    CHECK_THROWS_AS(parse_witness(R"({"type": "sumpi", "n": 5, "p": {}})", maj), UsageError);
    // missing payload field
    CHECK_THROWS_AS(parse_witness(R"({"type": "sumpi", "n": 3})", maj), UsageError);
    CHECK_THROWS_AS(parse_witness(R"({"type": "spectral", "n": 3})", maj), UsageError);
    // wrong input length
    CHECK_THROWS_AS(
        parse_witness(R"({"type": "sumpi", "n": 3, "p": {"0011": [1, 0, 0]}})", maj),
        UsageError);
    // wrong distribution length
    CHECK_THROWS_AS(
        parse_witness(R"({"type": "sumpi", "n": 3, "p": {"000": [1, 0]}})", maj),
        UsageError);
    // input outside the promise (0000 is not 1-to-1 or 2-to-1 over {0..3})
    CHECK_THROWS_AS(
        parse_witness(R"({"type": "maxpi", "n": 4, "p": {"0000": [1, 0, 0, 0]}})", col),
        UsageError);
    // spectral entry on the wrong side: 111 evaluates to 1, not 0
    CHECK_THROWS_AS(
        parse_witness(R"({"type": "spectral", "n": 3, "entries": [["111", "011", 1]]})", maj),
        UsageError);
    // dense matrix with the wrong shape
    CHECK_THROWS_AS(
        parse_witness(R"({"type": "spectral", "n": 3, "matrix": [[1, 0], [0, 1]]})", maj),
        UsageError);
    // scheme keys must look like "input,i" with a valid index
    CHECK_THROWS_AS(parse_witness(R"({"type": "probscheme", "n": 3, "pA": {}, "pB": {},
                                      "q": [], "px": {"000": {"111": 1}}})",
                                  maj),
                    UsageError);
    CHECK_THROWS_AS(parse_witness(R"({"type": "probscheme", "n": 3, "pA": {}, "pB": {},
                                      "q": [], "px": {"000,7": {"111": 1}}})",
                                  maj),
                    UsageError);
    // a non-numeric probability
    CHECK_THROWS_AS(
        parse_witness(R"({"type": "sumpi", "n": 3, "p": {"000": [true, false, false]}})", maj),
        UsageError);
}
