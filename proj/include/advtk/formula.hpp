#pragma once
// Formula ASTs in negation-normal form, the Karchmer-Wigderson conversion to
// monochromatic rectangle partitions, coloring covers, exact minimal formula
// search, and the exact rectangle partition number.

#include <cstdint>
#include <string>
#include <vector>

#include "advtk/boolfn.hpp"
#include "advtk/config.hpp"
#include "advtk/matrix.hpp"

namespace advtk {

// Binary AND/OR tree with literals at the leaves (negations pushed to leaves
// at parse time; sizes are leaf counts).
struct Formula {
    struct Node {
        char op = 'L';          // 'L' leaf, '&' AND, '|' OR
        int var = 0;            // 1-based variable index (leaves)
        bool neg = false;       // negated literal (leaves)
        int left = -1, right = -1;
    };
    std::vector<Node> nodes;    // root last by construction, but `root` is authoritative
    int root = -1;

    bool valid() const { return root >= 0 && root < (int)nodes.size(); }
};

// Grammar: literals x1..xn, prefix '!', infix '&' and '|' (no precedence:
// mixing & and | at one level requires parentheses), parentheses, whitespace
// ignored.  Interior '!' is pushed to the leaves by De Morgan rewriting.
// Throws UsageError with the offending position on syntax errors.
Formula parse_formula(const std::string& text);

// Fully parenthesized text in the same grammar.
std::string format_formula(const Formula& phi);

int eval_formula(const Formula& phi, const std::vector<int>& bits);  // bits[v-1]
int eval_formula(const Formula& phi, uint64_t code, int n);          // binary input code
int leaf_count(const Formula& phi);
int depth(const Formula& phi);      // leaf depth 0
int max_var(const Formula& phi);

// Truth table of phi over n binary variables, indexed by input code.
std::vector<uint8_t> formula_table(const Formula& phi, int n);

// Substitutes fresh variable copies d-fold; leaf_count(result) =
// leaf_count(phi)^d and the result computes iterate(f, d) for the function f
// computed by phi.  Cap: leaf counts beyond cfg.table_cap.
Formula iterate_formula(const Formula& phi, int d, const Config& cfg = {});

// Rectangle partition of X x Y induced by the formula's communication
// protocol.  Rows index f^{-1}(0) in code order, columns f^{-1}(1).
struct KWPartition {
    std::vector<uint64_t> xs, ys;    // row / column code maps
    std::vector<Rectangle> rects;    // one per leaf, in leaf order (may be empty)
    std::vector<int> colors;         // 1-based literal variable per leaf
};

// Simulates the protocol: at an AND gate the 0-side moves to the first child
// (in child order) evaluating to 0 on x, at an OR gate the 1-side moves
// symmetrically; each leaf collects the pairs reaching it.  Verifies that phi
// computes f first (VerifyError with a counterexample input otherwise).
// Guarantees: leaf_count(phi) rectangles, pairwise disjoint, each nonempty one
// monochromatic in its color, union = X x Y.
KWPartition kw_partition(const Formula& phi, const BooleanFunction& f, const Config& cfg = {});

// S_c = union of the partition's rectangles whose least valid color is c;
// result[c-1] is the cell set S_c (indices into the partition's grid).  The
// sets cover the grid and feed rectangle_measure_bound.
std::vector<CellSet> color_cover(const KWPartition& P, int n);

// Validation report for a KW partition (used by tests and the CLI verdicts).
struct KWCheck {
    bool disjoint = false, covers = false, monochromatic = false;
    int nonempty = 0;
    bool ok() const { return disjoint && covers && monochromatic; }
};
KWCheck check_kw_partition(const KWPartition& P, const BooleanFunction& f);

// Exact minimum leaf count by dynamic programming over truth tables:
// reachable(1) = all 2n literals, reachable(s) = binary AND/OR combinations,
// deduplicated by table, stopping at the first size containing f.
struct MinFormula {
    bool exceeded = false;   // true: every formula within the cap misses f
    int size = 0;            // minimum leaf count when !exceeded
    Formula witness;         // one witness of that size
};
// Pre: f total, k = 2, n <= cfg.minsize_cap_n.  The cap sentinel is a result,
// not an error.
MinFormula min_formula_size(const BooleanFunction& f, int cap, const Config& cfg = {});

// Exact rectangle partition number of the relation R_f by branch and bound:
// the uncovered cell with the fewest maximal valid rectangles branches,
// pruning with ceil(remaining / largest rectangle) and an optional caller-
// supplied lower bound (e.g. a squared spectral value).
int rectangle_partition_number(const BooleanFunction& f, const Config& cfg = {},
                               double known_lower = 0.0);

} // namespace advtk
