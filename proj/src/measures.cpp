#include "advtk/measures.hpp"

#include <algorithm>
#include <functional>

#include "advtk/common.hpp"

namespace advtk {

namespace {

// Next input code after changing position `pos` (0-based) of `code` to `sym`.
uint64_t with_symbol(uint64_t code, int pos, int sym, int n, int k) {
    uint64_t place = pow_u64(k, n - 1 - pos);
    int old = int((code / place) % uint64_t(k));
    return code + (uint64_t(sym) - uint64_t(old)) * place;
}

void require_two_sided(const BooleanFunction& f) {
    bool has0 = false, has1 = false;
    if (f.total) {
        for (uint8_t v : f.table) (v ? has1 : has0) = true;
    } else {
        for (const auto& [c, l] : f.entries) (l ? has1 : has0) = true;
    }
    if (!has0 || !has1) throw UsageError("function is one-sided: no cross pairs exist");
}

} // namespace

int sensitivity_at(const BooleanFunction& f, uint64_t code) {
    auto l0 = f.label(code);
    if (!l0) throw UsageError("input outside the promise");
    int s = 0;
    for (int pos = 0; pos < f.n; ++pos) {
        bool sensitive = false;
        int cur = symbol_at(code, pos + 1, f.n, f.k);
        for (int sym = 0; sym < f.k && !sensitive; ++sym) {
            if (sym == cur) continue;
            auto l1 = f.label(with_symbol(code, pos, sym, f.n, f.k));
            if (l1 && *l1 != *l0) sensitive = true;
        }
        s += sensitive;
    }
    return s;
}

int sensitivity(const BooleanFunction& f, Side side) {
    int best = 0;
    auto scan = [&](uint64_t code, int lab) {
        if (side == Side::Zero && lab != 0) return;
        if (side == Side::One && lab != 1) return;
        best = std::max(best, sensitivity_at(f, code));
    };
    if (f.total) {
        for (uint64_t c = 0; c < f.table.size(); ++c) scan(c, f.table[c]);
    } else {
        for (const auto& [c, l] : f.entries) scan(c, l);
    }
    return best;
}

std::vector<int> min_certificate(const BooleanFunction& f, uint64_t code) {
    auto l0 = f.label(code);
    if (!l0) throw UsageError("input outside the promise");
    // A position set I certifies `code` when every domain input agreeing with
    // it on I carries the same label.
    auto certifies = [&](const std::vector<int>& I) {
        auto agree = [&](uint64_t c) {
            for (int pos : I)
                if (symbol_at(c, pos + 1, f.n, f.k) != symbol_at(code, pos + 1, f.n, f.k))
                    return false;
            return true;
        };
        if (f.total) {
            for (uint64_t c = 0; c < f.table.size(); ++c)
                if (agree(c) && f.table[c] != *l0) return false;
        } else {
            for (const auto& [c, l] : f.entries)
                if (agree(c) && l != *l0) return false;
        }
        return true;
    };
    // Sizes in increasing order; within a size, lexicographic combinations.
    std::vector<int> I;
    for (int size = 0; size <= f.n; ++size) {
        I.assign(size, 0);
        for (int i = 0; i < size; ++i) I[i] = i;
        while (true) {
            if (certifies(I)) return I;
            // next combination
            int i = size - 1;
            while (i >= 0 && I[i] == f.n - size + i) --i;
            if (i < 0) break;
            ++I[i];
            for (int j = i + 1; j < size; ++j) I[j] = I[j - 1] + 1;
        }
    }
    // unreachable: the full position set always certifies
    I.resize(f.n);
    for (int i = 0; i < f.n; ++i) I[i] = i;
    return I;
}

int certificate_complexity(const BooleanFunction& f, Side side) {
    require_two_sided(f);
    int best = 0;
    auto scan = [&](uint64_t code, int lab) {
        if (side == Side::Zero && lab != 0) return;
        if (side == Side::One && lab != 1) return;
        best = std::max(best, int(min_certificate(f, code).size()));
    };
    if (f.total) {
        for (uint64_t c = 0; c < f.table.size(); ++c) scan(c, f.table[c]);
    } else {
        for (const auto& [c, l] : f.entries) scan(c, l);
    }
    return best;
}

int block_sensitivity_at(const BooleanFunction& f, uint64_t code, const Config& cfg) {
    if (!f.total || f.k != 2) throw UsageError("block sensitivity requires a total binary function");
    if (f.n > cfg.block_sens_cap)
        throw CapExceeded("block sensitivity cap n <= " + std::to_string(cfg.block_sens_cap));
    uint8_t l0 = f.table[code];
    uint64_t full = (1ull << f.n) - 1;
    // Sensitive blocks as bitmasks over positions.  Only minimal blocks matter
    // for a maximum disjoint packing: a block with a sensitive proper subset
    // can always be replaced by that subset.
    std::vector<uint8_t> sens(full + 1, 0);
    for (uint64_t b = 1; b <= full; ++b) sens[b] = f.table[code ^ b] != l0;
    std::vector<uint64_t> blocks;
    for (uint64_t b = 1; b <= full; ++b) {
        if (!sens[b]) continue;
        bool minimal = true;
        for (uint64_t s = (b - 1) & b; s && minimal; s = (s - 1) & b)
            if (sens[s]) minimal = false;
        if (minimal) blocks.push_back(b);
    }
    // Maximum number of pairwise disjoint blocks by branch and bound, blocks
    // sorted by popcount so small blocks pack first.
    std::sort(blocks.begin(), blocks.end(), [](uint64_t a, uint64_t b) {
        int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
        return pa != pb ? pa < pb : a < b;
    });
    int best = 0;
    std::function<void(uint64_t, size_t, int)> go = [&](uint64_t used, size_t from, int count) {
        best = std::max(best, count);
        for (size_t i = from; i < blocks.size(); ++i) {
            if (blocks[i] & used) continue;
            int free_pos = f.n - __builtin_popcountll(used);
            if (count + free_pos / __builtin_popcountll(blocks[i]) <= best) return;
            go(used | blocks[i], i + 1, count + 1);
        }
    };
    go(0, 0, 0);
    return best;
}

int block_sensitivity(const BooleanFunction& f, const Config& cfg) {
    if (!f.total || f.k != 2) throw UsageError("block sensitivity requires a total binary function");
    int best = 0;
    for (uint64_t c = 0; c < f.table.size(); ++c)
        best = std::max(best, block_sensitivity_at(f, c, cfg));
    return best;
}

} // namespace advtk
