#pragma once
// Cross-pair scan kernels shared by the witness evaluators: for every pair
// (x, y) with f(x) = 0, f(y) = 1 compute the overlap of two per-input
// distributions and reduce to the extremal pair.  The parallel kernel
// partitions rows and merges per-thread results in (value, x, y) lexicographic
// order, so it agrees with the serial kernel bit for bit.

#include <cstdint>
#include <vector>

#include "advtk/boolfn.hpp"
#include "advtk/config.hpp"

namespace advtk {

// One reduced result: the maximal reciprocal overlap and its attaining pair.
struct ScanResult {
    double value = 0.0;     // max over pairs of 1 / overlap(x, y)
    uint64_t x = 0, y = 0;  // attaining codes (lexicographically least pair)
    bool zero_overlap = false;   // some pair had overlap 0 (value unusable)
};

enum class ScanKind { Sum, Max };

// xs/ys: codes of the 0-side and 1-side inputs (row r of each side table
// describes the input with code xs[r] / ys[r]).  symx/symy: expanded symbol
// strings (n bytes per row).  sqrtp_x/sqrtp_y: sqrt of the distribution
// entries (n doubles per row).
struct ScanInput {
    int n = 0;
    const std::vector<uint64_t>* xs = nullptr;
    const std::vector<uint64_t>* ys = nullptr;
    const std::vector<uint8_t>* symx = nullptr;    // |X| x n, row-major
    const std::vector<uint8_t>* symy = nullptr;    // |Y| x n, row-major
    const std::vector<double>* sqrtp_x = nullptr;  // |X| x n, row-major
    const std::vector<double>* sqrtp_y = nullptr;  // |Y| x n, row-major
};

// Sum overlap: sum_i [x_i != y_i] sx(i) sy(i).
// Max overlap: max_i [x_i != y_i] sx(i) sy(i), ties toward the smallest i.
ScanResult scan_pairs_serial(const ScanInput& in, ScanKind kind);
ScanResult scan_pairs_parallel(const ScanInput& in, ScanKind kind);
ScanResult scan_pairs(const ScanInput& in, ScanKind kind, ExecPolicy policy);

// Expands symbol strings for a code list into a dense symbol table
// (|codes| x n, row-major), the layout the kernels consume.
std::vector<uint8_t> symbol_table(const std::vector<uint64_t>& codes, int n, int k);

} // namespace advtk
