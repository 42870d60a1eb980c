#include "advtk/boolfn.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "advtk/common.hpp"

namespace advtk {

uint64_t pow_u64(uint64_t b, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (b != 0 && r > UINT64_MAX / b) throw CapExceeded("input space size overflows 64 bits");
        r *= b;
    }
    return r;
}

std::optional<int> BooleanFunction::label(uint64_t code) const {
    if (code >= input_count()) return std::nullopt;
    if (total) return int(table[code]);
    auto it = std::lower_bound(entries.begin(), entries.end(), code,
                               [](const auto& e, uint64_t c) { return e.first < c; });
    if (it == entries.end() || it->first != code) return std::nullopt;
    return int(it->second);
}

std::vector<uint64_t> BooleanFunction::side(int lab) const {
    std::vector<uint64_t> out;
    if (total) {
        for (uint64_t c = 0; c < table.size(); ++c)
            if (table[c] == lab) out.push_back(c);
    } else {
        for (const auto& [c, l] : entries)
            if (l == lab) out.push_back(c);
    }
    return out;
}

bool BooleanFunction::is_constant() const {
    if (total) {
        for (uint8_t v : table)
            if (v != table[0]) return false;
        return true;
    }
    for (const auto& [c, l] : entries)
        if (l != entries[0].second) return false;
    return true;
}

// --- encoding ---

uint64_t encode(const std::vector<int>& symbols, int k) {
    uint64_t code = 0;
    for (int s : symbols) {
        if (s < 0 || s >= k) throw UsageError("symbol out of range");
        code = code * k + uint64_t(s);
    }
    return code;
}

std::vector<int> decode(uint64_t code, int n, int k) {
    std::vector<int> s(n);
    for (int i = n - 1; i >= 0; --i) {
        s[i] = int(code % k);
        code /= k;
    }
    return s;
}

int symbol_at(uint64_t code, int pos, int n, int k) {
    for (int i = n - pos; i > 0; --i) code /= k;
    return int(code % k);
}

namespace {

char symbol_char(int s) { return s < 10 ? char('0' + s) : char('a' + s - 10); }

int char_symbol(char c, int k) {
    int s;
    if (c >= '0' && c <= '9') s = c - '0';
    else if (c >= 'a' && c <= 'z') s = c - 'a' + 10;
    else throw UsageError(std::string("invalid input character '") + c + "'");
    if (s >= k) throw UsageError(std::string("symbol '") + c + "' out of range for alphabet size " +
                                 std::to_string(k));
    return s;
}

} // namespace

std::string input_string(uint64_t code, int n, int k) {
    std::string s(n, '0');
    for (int i = n - 1; i >= 0; --i) {
        s[i] = symbol_char(int(code % k));
        code /= k;
    }
    return s;
}

uint64_t parse_input(const std::string& s, int k) {
    uint64_t code = 0;
    for (char c : s) code = code * k + uint64_t(char_symbol(c, k));
    return code;
}

// --- constructors ---

BooleanFunction make_total(int n, int k, std::vector<uint8_t> table) {
    if (n < 0 || k < 2 || k > 36) throw UsageError("arity/alphabet out of range");
    BooleanFunction f;
    f.n = n;
    f.k = k;
    f.total = true;
    if (table.size() != f.input_count())
        throw UsageError("table size " + std::to_string(table.size()) + " does not match k^n");
    for (uint8_t v : table)
        if (v > 1) throw UsageError("labels must be 0 or 1");
    f.table = std::move(table);
    return f;
}

BooleanFunction make_partial(int n, int k, std::vector<std::pair<uint64_t, uint8_t>> entries) {
    if (n < 0 || k < 2 || k > 36) throw UsageError("arity/alphabet out of range");
    BooleanFunction f;
    f.n = n;
    f.k = k;
    f.total = false;
    std::sort(entries.begin(), entries.end());
    for (size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].first >= f.input_count()) throw UsageError("domain code out of range");
        if (entries[i].second > 1) throw UsageError("labels must be 0 or 1");
        if (i > 0 && entries[i].first == entries[i - 1].first)
            throw UsageError("duplicate domain input " +
                             input_string(entries[i].first, n, k));
    }
    f.entries = std::move(entries);
    if (f.entries.empty()) throw UsageError("empty promise domain");
    return f;
}

namespace {

BooleanFunction maj3_fn() {
    std::vector<uint8_t> t(8);
    for (int c = 0; c < 8; ++c) {
        int ones = ((c >> 2) & 1) + ((c >> 1) & 1) + (c & 1);
        t[c] = ones >= 2;
    }
    return make_total(3, 2, std::move(t));
}

BooleanFunction ambainis_fn() {
    // 1 exactly when the bits are sorted one way or the other:
    // x1 <= x2 <= x3 <= x4 or x1 >= x2 >= x3 >= x4.
    std::vector<uint8_t> t(16, 0);
    for (int c = 0; c < 16; ++c) {
        int b[4] = {(c >> 3) & 1, (c >> 2) & 1, (c >> 1) & 1, c & 1};
        bool up = b[0] <= b[1] && b[1] <= b[2] && b[2] <= b[3];
        bool dn = b[0] >= b[1] && b[1] >= b[2] && b[2] >= b[3];
        t[c] = (up || dn) ? 1 : 0;
    }
    return make_total(4, 2, std::move(t));
}

// 2-to-1 strings: every position has exactly one partner holding the same
// symbol.  Generated as (perfect matching of positions) x (injective symbol
// choice per pair), deduplicated by code.
void gen_matchings(std::vector<int>& pos, std::vector<std::pair<int, int>>& cur,
                   std::vector<std::vector<std::pair<int, int>>>& out) {
    if (pos.empty()) {
        out.push_back(cur);
        return;
    }
    int a = pos[0];
    for (size_t j = 1; j < pos.size(); ++j) {
        int b = pos[j];
        std::vector<int> rest;
        for (size_t t = 1; t < pos.size(); ++t)
            if (t != j) rest.push_back(pos[t]);
        cur.push_back({a, b});
        gen_matchings(rest, cur, out);
        cur.pop_back();
    }
}

BooleanFunction collision_fn(int n) {
    if (n < 2 || n % 2 != 0) throw UsageError("collision requires an even arity >= 2");
    if (n > 10) throw CapExceeded("collision supported up to n = 10");
    int k = n;
    std::vector<std::pair<uint64_t, uint8_t>> entries;

    // positive side: all symbols distinct, i.e. permutations of the alphabet
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
        entries.push_back({encode(perm, k), 1});
    } while (std::next_permutation(perm.begin(), perm.end()));

    // negative side: 2-to-1 strings
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[i] = i;
    std::vector<std::vector<std::pair<int, int>>> matchings;
    std::vector<std::pair<int, int>> cur;
    gen_matchings(pos, cur, matchings);
    int half = n / 2;
    std::vector<int> chosen(half);
    std::vector<int> word(n);
    for (const auto& m : matchings) {
        // ordered injective assignment of symbols to the half pairs
        std::vector<int> stack(half, -1);
        std::vector<bool> used(k, false);
        int depth = 0;
        while (depth >= 0) {
            int& s = stack[depth];
            if (s >= 0) used[s] = false;
            ++s;
            while (s < k && used[s]) ++s;
            if (s >= k) {
                stack[depth] = -1;
                --depth;
                continue;
            }
            used[s] = true;
            if (depth + 1 < half) {
                ++depth;
                continue;
            }
            for (int t = 0; t < half; ++t) {
                word[m[t].first] = stack[t];
                word[m[t].second] = stack[t];
            }
            entries.push_back({encode(word, k), 0});
        }
    }
    return make_partial(n, k, std::move(entries));
}

int eval_iterated(const BooleanFunction& base, int d, const std::vector<int>& bits,
                  size_t off, uint64_t span) {
    if (d == 1) {
        uint64_t code = 0;
        for (int i = 0; i < base.n; ++i) code = code * 2 + uint64_t(bits[off + i]);
        return int(base.table[code]);
    }
    uint64_t sub = span / base.n;
    uint64_t code = 0;
    for (int j = 0; j < base.n; ++j)
        code = code * 2 + uint64_t(eval_iterated(base, d - 1, bits, off + j * sub, sub));
    return int(base.table[code]);
}

} // namespace

BooleanFunction iterate(const BooleanFunction& f, int d, const Config& cfg) {
    if (!f.total || f.k != 2) throw UsageError("iterate requires a total binary function");
    if (d < 1) throw UsageError("iteration depth must be >= 1");
    if (d == 1) return f;
    uint64_t vars = 1;
    for (int i = 0; i < d; ++i) {
        vars *= uint64_t(f.n);
        if (vars > 62) throw CapExceeded("iterated arity exceeds 62 variables");
    }
    uint64_t size = pow_u64(2, int(vars));
    if (size > cfg.table_cap)
        throw CapExceeded("iterated table would have " + std::to_string(size) +
                          " entries (cap " + std::to_string(cfg.table_cap) + ")");
    std::vector<uint8_t> table(size);
    std::vector<int> bits(vars);
    for (uint64_t c = 0; c < size; ++c) {
        for (uint64_t i = 0; i < vars; ++i) bits[i] = int((c >> (vars - 1 - i)) & 1);
        table[c] = uint8_t(eval_iterated(f, d, bits, 0, vars));
    }
    return make_total(int(vars), 2, std::move(table));
}

BooleanFunction builtin(const std::string& name, const std::vector<long long>& params,
                        const Config& cfg) {
    auto want = [&](size_t c) {
        if (params.size() != c)
            throw UsageError("builtin '" + name + "' takes " + std::to_string(c) +
                             " parameter(s), got " + std::to_string(params.size()));
    };
    auto arity = [&](long long lo, long long hi) {
        if (params[0] < lo || params[0] > hi)
            throw UsageError("builtin '" + name + "' arity out of range [" + std::to_string(lo) +
                             "," + std::to_string(hi) + "]");
        return int(params[0]);
    };
    if (name == "parity" || name == "or" || name == "and") {
        want(1);
        int n = arity(1, 20);
        std::vector<uint8_t> t(pow_u64(2, n));
        for (uint64_t c = 0; c < t.size(); ++c) {
            int pop = __builtin_popcountll(c);
            if (name == "parity") t[c] = pop & 1;
            else if (name == "or") t[c] = pop > 0;
            else t[c] = uint64_t(pop) == uint64_t(n);
        }
        return make_total(n, 2, std::move(t));
    }
    if (name == "maj3") {
        want(0);
        return maj3_fn();
    }
    if (name == "recmaj") {
        want(1);
        int h = arity(1, 20);
        return iterate(maj3_fn(), h, cfg);
    }
    if (name == "ambainis") {
        want(0);
        return ambainis_fn();
    }
    if (name == "ambainis_iter") {
        want(1);
        int d = arity(1, 20);
        return iterate(ambainis_fn(), d, cfg);
    }
    if (name == "collision") {
        want(1);
        return collision_fn(int(params[0]));
    }
    throw UsageError("unknown builtin '" + name + "'");
}

// --- restrictions ---

int Restriction::stars() const {
    int s = 0;
    for (int v : fix) s += (v < 0);
    return s;
}

std::string Restriction::str() const {
    std::string s;
    for (int v : fix) s += v < 0 ? '*' : symbol_char(v);
    return s;
}

Restriction Restriction::parse(const std::string& s, int k) {
    Restriction r;
    r.n = int(s.size());
    r.k = k;
    r.fix.reserve(s.size());
    for (char c : s) r.fix.push_back(c == '*' ? -1 : char_symbol(c, k));
    return r;
}

Restriction Restriction::fixed(int pos, int sym) const {
    if (pos < 1 || pos > n || fix[pos - 1] >= 0)
        throw UsageError("fixed() requires a star position");
    if (sym < 0 || sym >= k) throw UsageError("symbol out of range");
    Restriction r = *this;
    r.fix[pos - 1] = sym;
    return r;
}

BooleanFunction restrict_inputs(const BooleanFunction& f, const Restriction& rho) {
    if (!f.total) throw UsageError("restrict_inputs requires a total function");
    if (rho.n != f.n || rho.k != f.k) throw UsageError("restriction shape mismatch");
    std::vector<int> star_pos;
    for (int i = 0; i < f.n; ++i)
        if (rho.fix[i] < 0) star_pos.push_back(i);
    int m = int(star_pos.size());
    std::vector<uint8_t> table(pow_u64(f.k, m));
    std::vector<int> word(f.n);
    for (int i = 0; i < f.n; ++i) word[i] = rho.fix[i] < 0 ? 0 : rho.fix[i];
    for (uint64_t c = 0; c < table.size(); ++c) {
        uint64_t rem = c;
        for (int j = m - 1; j >= 0; --j) {
            word[star_pos[j]] = int(rem % f.k);
            rem /= f.k;
        }
        table[c] = f.table[encode(word, f.k)];
    }
    return make_total(m, f.k, std::move(table));
}

BooleanFunction restrict_domain(const BooleanFunction& f, const std::vector<uint64_t>& keep) {
    std::vector<std::pair<uint64_t, uint8_t>> entries;
    entries.reserve(keep.size());
    for (uint64_t c : keep) {
        auto l = f.label(c);
        if (!l) throw UsageError("restrict_domain: input " + input_string(c, f.n, f.k) +
                                 " is outside the promise");
        entries.push_back({c, uint8_t(*l)});
    }
    return make_partial(f.n, f.k, std::move(entries));
}

std::vector<std::pair<Restriction, double>> enumerate_restrictions(int n, double p,
                                                                   const Config& cfg) {
    if (n < 1) throw UsageError("enumerate_restrictions requires n >= 1");
    if (n > cfg.restriction_cap)
        throw CapExceeded("restriction enumeration needs 3^" + std::to_string(n) +
                          " entries (cap n = " + std::to_string(cfg.restriction_cap) + ")");
    if (p < 0.0 || p > 1.0) throw UsageError("star probability must lie in [0,1]");
    uint64_t count = pow_u64(3, n);
    std::vector<std::pair<Restriction, double>> out;
    out.reserve(count);
    Restriction r;
    r.n = n;
    r.k = 2;
    r.fix.assign(n, 0);
    std::vector<int> trits(n, 0);  // 0,1 fixed; 2 = star
    for (uint64_t c = 0; c < count; ++c) {
        uint64_t rem = c;
        for (int i = n - 1; i >= 0; --i) {
            trits[i] = int(rem % 3);
            rem /= 3;
        }
        double w = 1.0;
        for (int i = 0; i < n; ++i) {
            r.fix[i] = trits[i] == 2 ? -1 : trits[i];
            w *= trits[i] == 2 ? p : (1.0 - p) / 2.0;
        }
        out.push_back({r, w});
    }
    return out;
}

void validate_filter(const Filter& delta, int n, const Config& cfg) {
    auto all = enumerate_restrictions(n, 0.5, cfg);
    for (const auto& [rho, w] : all) {
        if (!delta(rho)) continue;
        for (int pos = 1; pos <= n; ++pos) {
            if (rho.fix[pos - 1] >= 0) continue;
            for (int sym = 0; sym < 2; ++sym) {
                Restriction child = rho.fixed(pos, sym);
                if (!delta(child))
                    throw VerifyError("filter is not downward closed: contains " + rho.str() +
                                      " but not " + child.str());
            }
        }
    }
}

// --- .bf files ---

BooleanFunction load_bf(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    int n = -1, k = -1;
    std::vector<std::pair<uint64_t, uint8_t>> entries;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        if (n < 0) {
            if (!(ss >> n >> k)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) { n = -1; continue; }
                throw UsageError(path + ":" + std::to_string(lineno) + ": expected header 'n k'");
            }
            if (n < 1 || k < 2 || k > 36)
                throw UsageError(path + ":" + std::to_string(lineno) + ": bad header values");
            continue;
        }
        std::string word;
        int lab;
        if (!(ss >> word)) continue;  // blank
        if (!(ss >> lab) || (lab != 0 && lab != 1))
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected '<input> <0|1>'");
        if ((int)word.size() != n)
            throw UsageError(path + ":" + std::to_string(lineno) + ": input length " +
                             std::to_string(word.size()) + " != n = " + std::to_string(n));
        uint64_t code;
        try {
            code = parse_input(word, k);
        } catch (const UsageError& e) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        entries.push_back({code, uint8_t(lab)});
    }
    if (n < 0) throw UsageError(path + ": missing header line 'n k'");
    if (entries.empty()) throw UsageError(path + ": no domain entries");
    uint64_t full = pow_u64(k, n);
    if (uint64_t(entries.size()) == full) {
        std::sort(entries.begin(), entries.end());
        std::vector<uint8_t> table(full);
        for (uint64_t c = 0; c < full; ++c) {
            if (entries[c].first != c)
                throw UsageError(path + ": duplicate domain input " +
                                 input_string(entries[c].first, n, k));
            table[c] = entries[c].second;
        }
        return make_total(n, k, std::move(table));
    }
    try {
        return make_partial(n, k, std::move(entries));
    } catch (const UsageError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

std::string format_bf(const BooleanFunction& f) {
    std::ostringstream out;
    out << f.n << " " << f.k << "\n";
    if (f.total) {
        for (uint64_t c = 0; c < f.table.size(); ++c)
            out << input_string(c, f.n, f.k) << " " << int(f.table[c]) << "\n";
    } else {
        for (const auto& [c, l] : f.entries)
            out << input_string(c, f.n, f.k) << " " << int(l) << "\n";
    }
    return out.str();
}

} // namespace advtk
