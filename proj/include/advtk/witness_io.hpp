#pragma once
// Witness file I/O.  Witness files are JSON documents:
//   { "type": "sumpi" | "maxpi" | "spectral" | "probscheme",
//     "n": <arity>, ... }
// Probability families key distributions by input string; spectral matrices
// list entries as [row, col, value] triples (or a dense "matrix" array);
// numbers are decimals or "a/b" rational strings, parsed exactly.

#include <string>

#include "advtk/adversary.hpp"
#include "advtk/boolfn.hpp"
#include "advtk/matrix.hpp"

namespace advtk {

struct WitnessFile {
    std::string type;           // sumpi | maxpi | spectral | probscheme
    int n = 0;
    ProbabilityFamily family;   // sumpi / maxpi
    Matrix gamma;               // spectral (shaped |X| x |Y| for the target f)
    ProbSchemeWitness scheme;   // probscheme
};

// Parses and shape-checks a witness against f (sides give the matrix shape
// and the valid input strings).  Throws UsageError on malformed documents.
WitnessFile load_witness(const std::string& path, const BooleanFunction& f);
WitnessFile parse_witness(const std::string& text, const BooleanFunction& f);

// Serializations (used by the CLI to emit certificates).
std::string format_family(const ProbabilityFamily& w, const BooleanFunction& f,
                          const std::string& type);
std::string format_gamma(const Matrix& gamma, const BooleanFunction& f);

} // namespace advtk
