#pragma once
// Boolean and promise functions over a finite alphabet, with dense storage for
// total functions and sorted sparse storage for partial ones.
//
// Input encoding: an input is a string x_1 x_2 ... x_n over {0,...,k-1}; its
// code is the mixed-radix integer with position 1 most significant, so the
// natural code order coincides with lexicographic string order.  Symbols print
// as 0-9a-z (k <= 36).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "advtk/common.hpp"
#include "advtk/config.hpp"

namespace advtk {

uint64_t pow_u64(uint64_t b, int e);

struct BooleanFunction {
    int n = 0;        // arity; 0 only for fully-restricted (constant) results
    int k = 2;        // alphabet size, 2..36
    bool total = true;
    std::vector<uint8_t> table;                         // total: k^n labels
    std::vector<std::pair<uint64_t, uint8_t>> entries;  // partial: sorted by code

    uint64_t input_count() const { return pow_u64(k, n); }
    uint64_t domain_size() const { return total ? input_count() : entries.size(); }

    // label of a code, or nullopt when outside the promise
    std::optional<int> label(uint64_t code) const;

    // all domain codes with the given label, in increasing code order
    std::vector<uint64_t> side(int lab) const;

    bool is_constant() const;
};

// --- encoding helpers ---
uint64_t encode(const std::vector<int>& symbols, int k);
std::vector<int> decode(uint64_t code, int n, int k);
int symbol_at(uint64_t code, int pos, int n, int k);           // pos is 1-based
std::string input_string(uint64_t code, int n, int k);
uint64_t parse_input(const std::string& s, int k);             // chars 0-9a-z

// --- constructors ---

// Named builtin families.  Supported names (with params):
//   parity(n), or(n), and(n), maj3, recmaj(h), ambainis, ambainis_iter(d),
//   collision(n)   [n even; alphabet size k = n]
BooleanFunction builtin(const std::string& name, const std::vector<long long>& params,
                        const Config& cfg = {});

// d-fold iteration f^d of a total binary function on disjoint blocks;
// block 1 = the first n^(d-1) positions.  Caps at cfg.table_cap table entries.
BooleanFunction iterate(const BooleanFunction& f, int d, const Config& cfg = {});

BooleanFunction make_total(int n, int k, std::vector<uint8_t> table);
BooleanFunction make_partial(int n, int k, std::vector<std::pair<uint64_t, uint8_t>> entries);

// --- restrictions ---

// A restriction fixes some positions to symbols and stars the rest.
struct Restriction {
    int n = 0;
    int k = 2;
    std::vector<int> fix;   // length n; -1 = star, else symbol

    int stars() const;
    std::string str() const;                       // e.g. "0*1"
    static Restriction parse(const std::string& s, int k);
    // restriction obtained by fixing star position `pos` (1-based) to `sym`
    Restriction fixed(int pos, int sym) const;
};

// f restricted to the star positions of rho (total f required); an arity-0
// result is the constant function on the empty string.
BooleanFunction restrict_inputs(const BooleanFunction& f, const Restriction& rho);

// restriction of the promise: keep only the listed domain codes
BooleanFunction restrict_domain(const BooleanFunction& f, const std::vector<uint64_t>& keep);

// all 3^n binary restrictions with R_p weights p^#stars * ((1-p)/2)^#fixed,
// in lexicographic order over the alphabet 0 < 1 < *
std::vector<std::pair<Restriction, double>> enumerate_restrictions(int n, double p,
                                                                   const Config& cfg = {});

// A filter is a predicate on restrictions; it must be downward closed under
// fixing stars.
using Filter = std::function<bool(const Restriction&)>;

// Checks downward closure by full enumeration; throws VerifyError with an
// offending pair when the property fails.
void validate_filter(const Filter& delta, int n, const Config& cfg = {});

// --- .bf file format ---
// Header "n k", then one "<input> <label>" line per domain element; '#' starts
// a comment; inputs absent from the file are outside the promise.
BooleanFunction load_bf(const std::string& path);
std::string format_bf(const BooleanFunction& f);

} // namespace advtk
