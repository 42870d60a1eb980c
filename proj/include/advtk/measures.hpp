#pragma once
// Classical complexity measures: sensitivity, certificate complexity, block
// sensitivity.  All are exact and desk-scale.

#include <cstdint>
#include <vector>

#include "advtk/boolfn.hpp"

namespace advtk {

enum class Side { Zero, One, Both };

// For k > 2 a position counts as sensitive when some single-position change
// lands in the domain with the other label.
int sensitivity(const BooleanFunction& f, Side side = Side::Both);
int sensitivity_at(const BooleanFunction& f, uint64_t code);

// Smallest-size certificate at one input, lexicographically least among the
// minimum ones; positions are 0-based indices.
std::vector<int> min_certificate(const BooleanFunction& f, uint64_t code);

int certificate_complexity(const BooleanFunction& f, Side side = Side::Both);

// Exact block sensitivity (total binary functions, n <= cfg.block_sens_cap).
int block_sensitivity(const BooleanFunction& f, const Config& cfg = {});
int block_sensitivity_at(const BooleanFunction& f, uint64_t code, const Config& cfg = {});

} // namespace advtk
