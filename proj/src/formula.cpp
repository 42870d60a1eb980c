#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <unordered_map>

#include "advtk/formula.hpp"

namespace advtk {

namespace {

int add_leaf(Formula& phi, int var, bool neg) {
    Formula::Node nd;
    nd.op = 'L';
    nd.var = var;
    nd.neg = neg;
    phi.nodes.push_back(nd);
    return int(phi.nodes.size()) - 1;
}

int add_gate(Formula& phi, char op, int l, int r) {
    Formula::Node nd;
    nd.op = op;
    nd.left = l;
    nd.right = r;
    phi.nodes.push_back(nd);
    return int(phi.nodes.size()) - 1;
}

// recursive-descent parser; `neg` carries the parity of enclosing '!'s so the
// tree is built directly in negation-normal form (De Morgan at the gates)
struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw UsageError("formula syntax error at position " + std::to_string(pos + 1) + ": " +
                         what);
    }
    void skip() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    // expr := term (op term)* with a single connective per parenthesis level
    int expr(Formula& phi, bool neg) {
        int lhs = term(phi, neg);
        skip();
        if (pos >= s.size() || s[pos] == ')') return lhs;
        char op = s[pos];
        if (op != '&' && op != '|') fail(std::string("expected '&', '|' or ')', got '") + op + "'");
        char eff = neg ? (op == '&' ? '|' : '&') : op;
        while (eat(op)) {
            int rhs = term(phi, neg);
            lhs = add_gate(phi, eff, lhs, rhs);
            skip();
            if (pos < s.size() && (s[pos] == '&' || s[pos] == '|') && s[pos] != op)
                fail("mixing '&' and '|' requires parentheses");
        }
        return lhs;
    }

    int term(Formula& phi, bool neg) {
        skip();
        if (pos >= s.size()) fail("unexpected end of input");
        if (s[pos] == '!') {
            ++pos;
            return term(phi, !neg);
        }
        if (s[pos] == '(') {
            ++pos;
            int inner = expr(phi, neg);
            if (!eat(')')) fail("missing ')'");
            return inner;
        }
        if (s[pos] == 'x' || s[pos] == 'X') {
            ++pos;
            size_t start = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            if (pos == start) fail("expected a variable index after 'x'");
            int var = 0;
            for (size_t i = start; i < pos; ++i) {
                var = var * 10 + (s[i] - '0');
                if (var > 1000000) fail("variable index out of range");
            }
            if (var == 0) fail("variable indices are 1-based");
            return add_leaf(phi, var, neg);
        }
        fail(std::string("unexpected character '") + s[pos] + "'");
    }
};

void require_valid(const Formula& phi) {
    if (!phi.valid()) throw UsageError("empty or invalid formula");
}

} // namespace

Formula parse_formula(const std::string& text) {
    Parser p(text);
    Formula phi;
    phi.root = p.expr(phi, false);
    p.skip();
    if (p.pos != text.size())
        throw UsageError("formula syntax error at position " + std::to_string(p.pos + 1) +
                         ": trailing input");
    return phi;
}

namespace {

void format_rec(const Formula& phi, int idx, std::string& out) {
    const auto& nd = phi.nodes[idx];
    if (nd.op == 'L') {
        if (nd.neg) out += '!';
        out += 'x';
        out += std::to_string(nd.var);
        return;
    }
    out += '(';
    format_rec(phi, nd.left, out);
    out += ' ';
    out += nd.op;
    out += ' ';
    format_rec(phi, nd.right, out);
    out += ')';
}

int eval_rec(const Formula& phi, int idx, const std::vector<int>& bits) {
    const auto& nd = phi.nodes[idx];
    if (nd.op == 'L') {
        if (nd.var > (int)bits.size())
            throw UsageError("formula refers to x" + std::to_string(nd.var) + " but only " +
                             std::to_string(bits.size()) + " inputs were given");
        int b = bits[nd.var - 1] ? 1 : 0;
        return nd.neg ? 1 - b : b;
    }
    int l = eval_rec(phi, nd.left, bits);
    if (nd.op == '&' && l == 0) return 0;
    if (nd.op == '|' && l == 1) return 1;
    return eval_rec(phi, nd.right, bits);
}

int depth_rec(const Formula& phi, int idx) {
    const auto& nd = phi.nodes[idx];
    if (nd.op == 'L') return 0;
    return 1 + std::max(depth_rec(phi, nd.left), depth_rec(phi, nd.right));
}

} // namespace

std::string format_formula(const Formula& phi) {
    require_valid(phi);
    std::string out;
    format_rec(phi, phi.root, out);
    return out;
}

int eval_formula(const Formula& phi, const std::vector<int>& bits) {
    require_valid(phi);
    return eval_rec(phi, phi.root, bits);
}

int eval_formula(const Formula& phi, uint64_t code, int n) {
    std::vector<int> bits(n);
    for (int i = 0; i < n; ++i) bits[i] = symbol_at(code, i + 1, n, 2);
    return eval_formula(phi, bits);
}

int leaf_count(const Formula& phi) {
    require_valid(phi);
    int cnt = 0;
    for (const auto& nd : phi.nodes) cnt += nd.op == 'L';
    return cnt;
}

int depth(const Formula& phi) {
    require_valid(phi);
    return depth_rec(phi, phi.root);
}

int max_var(const Formula& phi) {
    require_valid(phi);
    int mv = 0;
    for (const auto& nd : phi.nodes)
        if (nd.op == 'L') mv = std::max(mv, nd.var);
    return mv;
}

std::vector<uint8_t> formula_table(const Formula& phi, int n) {
    require_valid(phi);
    if (n < 0 || n > 62) throw UsageError("variable count out of range");
    if (max_var(phi) > n)
        throw UsageError("formula refers to x" + std::to_string(max_var(phi)) + " but n = " +
                         std::to_string(n));
    uint64_t total = pow_u64(2, n);
    std::vector<uint8_t> table(total);
    std::vector<int> bits(n);
    for (uint64_t code = 0; code < total; ++code) {
        for (int i = 0; i < n; ++i) bits[i] = symbol_at(code, i + 1, n, 2);
        table[code] = uint8_t(eval_rec(phi, phi.root, bits));
    }
    return table;
}

namespace {

// copy `src` into `dst` with leaves remapped onto variable block `block`
// (1-based, width n); `flip` negates the whole copy via De Morgan
int graft(Formula& dst, const Formula& src, int idx, int block, int n, bool flip) {
    const auto& nd = src.nodes[idx];
    if (nd.op == 'L') return add_leaf(dst, (block - 1) * n + nd.var, flip ? !nd.neg : nd.neg);
    char op = flip ? (nd.op == '&' ? '|' : '&') : nd.op;
    int l = graft(dst, src, nd.left, block, n, flip);
    int r = graft(dst, src, nd.right, block, n, flip);
    return add_gate(dst, op, l, r);
}

// outer with every leaf v replaced by a copy of `inner` on variable block v
int substitute_rec(Formula& dst, const Formula& outer, int idx, const Formula& inner, int n) {
    const auto& nd = outer.nodes[idx];
    if (nd.op == 'L') return graft(dst, inner, inner.root, nd.var, n, nd.neg);
    int l = substitute_rec(dst, outer, nd.left, inner, n);
    int r = substitute_rec(dst, outer, nd.right, inner, n);
    return add_gate(dst, nd.op, l, r);
}

} // namespace

Formula iterate_formula(const Formula& phi, int d, const Config& cfg) {
    require_valid(phi);
    if (d < 1) throw UsageError("iteration depth must be >= 1");
    double leaves = 1;
    for (int i = 0; i < d; ++i) {
        leaves *= leaf_count(phi);
        if (leaves > double(cfg.table_cap))
            throw CapExceeded("iterated formula would have ~" +
                              std::to_string(uint64_t(leaves)) + " leaves (cap " +
                              std::to_string(cfg.table_cap) + ")");
    }
    int n = max_var(phi);
    Formula cur = phi;
    for (int level = 1; level < d; ++level) {
        Formula next;
        next.root = substitute_rec(next, cur, cur.root, phi, n);
        cur = std::move(next);
    }
    return cur;
}

// --- Karchmer-Wigderson ---

namespace {

// truth table of every node, bottom-up
std::vector<std::vector<uint8_t>> node_tables(const Formula& phi, int n) {
    uint64_t total = pow_u64(2, n);
    std::vector<std::vector<uint8_t>> val(phi.nodes.size());
    // nodes are appended children-first by the parser and the builders, so an
    // index-order sweep sees children before parents
    for (size_t idx = 0; idx < phi.nodes.size(); ++idx) {
        const auto& nd = phi.nodes[idx];
        auto& t = val[idx];
        t.resize(total);
        if (nd.op == 'L') {
            for (uint64_t code = 0; code < total; ++code) {
                int b = symbol_at(code, nd.var, n, 2);
                t[code] = uint8_t(nd.neg ? 1 - b : b);
            }
        } else {
            const auto& a = val[nd.left];
            const auto& b = val[nd.right];
            if (nd.op == '&')
                for (uint64_t code = 0; code < total; ++code) t[code] = a[code] & b[code];
            else
                for (uint64_t code = 0; code < total; ++code) t[code] = a[code] | b[code];
        }
    }
    return val;
}

void leaf_order(const Formula& phi, int idx, std::vector<int>& slots, int& next) {
    const auto& nd = phi.nodes[idx];
    if (nd.op == 'L') {
        slots[idx] = next++;
        return;
    }
    leaf_order(phi, nd.left, slots, next);
    leaf_order(phi, nd.right, slots, next);
}

} // namespace

KWPartition kw_partition(const Formula& phi, const BooleanFunction& f, const Config& cfg) {
    require_valid(phi);
    if (!f.total || f.k != 2)
        throw UsageError("the protocol partition needs a total binary function");
    if (max_var(phi) > f.n)
        throw UsageError("formula refers to x" + std::to_string(max_var(phi)) + " but n = " +
                         std::to_string(f.n));
    if (f.input_count() > cfg.table_cap)
        throw CapExceeded("truth table would have " + std::to_string(f.input_count()) +
                          " entries (cap " + std::to_string(cfg.table_cap) + ")");
    auto val = node_tables(phi, f.n);
    for (uint64_t code = 0; code < f.input_count(); ++code)
        if (val[phi.root][code] != *f.label(code))
            throw VerifyError("formula disagrees with the function on input " +
                              input_string(code, f.n, f.k));

    KWPartition P;
    P.xs = f.side(0);
    P.ys = f.side(1);
    if (uint64_t(P.xs.size()) * P.ys.size() > cfg.opt_cells_cap)
        throw CapExceeded("cross-pair grid has " +
                          std::to_string(uint64_t(P.xs.size()) * P.ys.size()) + " cells (cap " +
                          std::to_string(cfg.opt_cells_cap) + ")");
    int leaves = leaf_count(phi);
    P.rects.assign(leaves, {});
    P.colors.assign(leaves, 0);
    std::vector<int> slot(phi.nodes.size(), -1);
    {
        int next = 0;
        leaf_order(phi, phi.root, slot, next);
    }
    for (size_t idx = 0; idx < phi.nodes.size(); ++idx)
        if (phi.nodes[idx].op == 'L') P.colors[slot[idx]] = phi.nodes[idx].var;

    // Route the full grid down the tree.  The pairs reaching a node always
    // form a rectangle: rows split at AND gates (the 0-side speaks), columns
    // at OR gates, so every node receives exactly one (rows, cols) item.
    struct Item {
        int node;
        std::vector<int> rws, cls;
    };
    std::vector<Item> work;
    {
        Item root;
        root.node = phi.root;
        root.rws.resize(P.xs.size());
        root.cls.resize(P.ys.size());
        for (size_t i = 0; i < P.xs.size(); ++i) root.rws[i] = int(i);
        for (size_t j = 0; j < P.ys.size(); ++j) root.cls[j] = int(j);
        work.push_back(std::move(root));
    }
    while (!work.empty()) {
        Item it = std::move(work.back());
        work.pop_back();
        const auto& nd = phi.nodes[it.node];
        if (nd.op == 'L') {
            Rectangle R;
            R.rws = std::move(it.rws);
            R.cls = std::move(it.cls);
            P.rects[slot[it.node]] = std::move(R);
            continue;
        }
        Item l, r;
        l.node = nd.left;
        r.node = nd.right;
        if (nd.op == '&') {
            // every row evaluates 0 here; it moves to the first child that is
            // 0 on it (left preferred), columns follow both children
            for (int ri : it.rws)
                (val[nd.left][P.xs[ri]] == 0 ? l.rws : r.rws).push_back(ri);
            l.cls = it.cls;
            r.cls = std::move(it.cls);
        } else {
            for (int ci : it.cls)
                (val[nd.left][P.ys[ci]] == 1 ? l.cls : r.cls).push_back(ci);
            l.rws = it.rws;
            r.rws = std::move(it.rws);
        }
        work.push_back(std::move(l));
        work.push_back(std::move(r));
    }
    return P;
}

std::vector<CellSet> color_cover(const KWPartition& P, int n) {
    if (n <= 0) throw UsageError("variable count must be positive");
    std::vector<CellSet> cover(n);
    for (size_t t = 0; t < P.rects.size(); ++t) {
        const Rectangle& R = P.rects[t];
        if (R.empty()) continue;
        int chosen = 0;
        for (int c = 1; c <= n && !chosen; ++c) {
            bool valid = true;
            for (int ri : R.rws) {
                int xb = symbol_at(P.xs[ri], c, n, 2);
                for (int ci : R.cls)
                    if (symbol_at(P.ys[ci], c, n, 2) == xb) {
                        valid = false;
                        break;
                    }
                if (!valid) break;
            }
            if (valid) chosen = c;
        }
        if (!chosen)
            throw VerifyError("rectangle " + std::to_string(t + 1) +
                              " is not monochromatic under any index");
        auto& cells = cover[chosen - 1];
        for (int ri : R.rws)
            for (int ci : R.cls) cells.push_back({ri, ci});
    }
    for (auto& cells : cover) std::sort(cells.begin(), cells.end());
    return cover;
}

KWCheck check_kw_partition(const KWPartition& P, const BooleanFunction& f) {
    KWCheck out;
    size_t nx = P.xs.size(), ny = P.ys.size();
    std::vector<uint8_t> hits(nx * ny, 0);
    bool dup = false, mono = true;
    for (size_t t = 0; t < P.rects.size(); ++t) {
        const Rectangle& R = P.rects[t];
        if (!R.empty()) ++out.nonempty;
        int c = t < P.colors.size() ? P.colors[t] : 0;
        for (int ri : R.rws)
            for (int ci : R.cls) {
                uint8_t& h = hits[size_t(ri) * ny + ci];
                if (h) dup = true;
                h = 1;
                if (c < 1 || c > f.n ||
                    symbol_at(P.xs[ri], c, f.n, f.k) == symbol_at(P.ys[ci], c, f.n, f.k))
                    mono = false;
            }
    }
    out.disjoint = !dup;
    out.covers = std::all_of(hits.begin(), hits.end(), [](uint8_t h) { return h == 1; });
    out.monochromatic = mono;
    return out;
}

// --- exact minimum formula size ---

MinFormula min_formula_size(const BooleanFunction& f, int cap, const Config& cfg) {
    if (!f.total || f.k != 2 || f.n < 1)
        throw UsageError("minimum formula search needs a total binary function on >= 1 variables");
    if (f.n > cfg.minsize_cap_n || f.n > 6)
        throw CapExceeded("minimum formula search capped at n = " +
                          std::to_string(std::min(cfg.minsize_cap_n, 6)));
    if (cap < 1) throw UsageError("size cap must be >= 1");
    uint64_t total = f.input_count();
    uint64_t full = total == 64 ? ~0ull : (1ull << total) - 1;
    uint64_t target = 0;
    for (uint64_t code = 0; code < total; ++code)
        if (*f.label(code)) target |= 1ull << code;

    struct Prov {
        char op;            // 'L' literal, '&', '|'
        int var = 0;        // literals
        bool neg = false;
        uint64_t lt = 0, rt = 0;  // child tables for gates
    };
    std::unordered_map<uint64_t, int> size_of;        // table -> first size
    std::unordered_map<uint64_t, Prov> prov;
    std::vector<std::vector<uint64_t>> by_size(1);    // by_size[s-1]

    auto note = [&](uint64_t t, int s, const Prov& p) {
        if (size_of.count(t)) return;
        size_of[t] = s;
        prov[t] = p;
        by_size[s - 1].push_back(t);
    };

    for (int v = 1; v <= f.n; ++v) {
        uint64_t t = 0;
        for (uint64_t code = 0; code < total; ++code)
            if (symbol_at(code, v, f.n, 2)) t |= 1ull << code;
        Prov p{'L', v, false, 0, 0};
        note(t, 1, p);
        p.neg = true;
        note(~t & full, 1, p);
    }
    int found = size_of.count(target) ? 1 : 0;
    for (int s = 2; s <= cap && !found; ++s) {
        by_size.push_back({});
        for (int a = 1; a <= s - 1; ++a) {
            int b = s - a;
            if (b < a) break;
            for (uint64_t ta : by_size[a - 1])
                for (uint64_t tb : by_size[b - 1]) {
                    note(ta & tb, s, {'&', 0, false, ta, tb});
                    note(ta | tb, s, {'|', 0, false, ta, tb});
                }
        }
        if (size_of.count(target) && size_of[target] == s) found = s;
    }
    MinFormula out;
    if (!found) {
        out.exceeded = true;
        return out;
    }
    out.size = found;
    // rebuild a witness from the provenance chain
    std::function<int(Formula&, uint64_t)> build = [&](Formula& phi, uint64_t t) -> int {
        const Prov& p = prov.at(t);
        if (p.op == 'L') return add_leaf(phi, p.var, p.neg);
        int l = build(phi, p.lt);
        int r = build(phi, p.rt);
        return add_gate(phi, p.op, l, r);
    };
    out.witness.root = build(out.witness, target);
    return out;
}

// --- exact rectangle partition number ---

namespace {

struct PartCtx {
    size_t nx = 0, ny = 0;
    int n = 0;
    std::vector<std::vector<uint64_t>> row_nb;  // per position, row -> differing-column mask
    std::vector<uint64_t> maximal;              // maximal monochromatic cell masks (heuristic aid)
    int max_cells = 1;
    int best = 0;
    int floor_stop = 0;  // certified lower bound; reaching it ends the search

    uint64_t row_of(uint64_t uncovered, size_t r) const {
        return (uncovered >> (r * ny)) & (ny == 64 ? ~0ull : (1ull << ny) - 1);
    }
};

// all monochromatic rectangles A x B inside `uncovered` with (er, ec) in them,
// as cell masks, deduplicated and sorted large-first
std::vector<uint64_t> candidates_at(const PartCtx& ctx, uint64_t uncovered, int er, int ec) {
    std::vector<uint64_t> out;
    for (int i = 0; i < ctx.n; ++i) {
        if (!((ctx.row_nb[i][er] >> ec) & 1)) continue;
        uint64_t bmax = ctx.row_nb[i][er] & ctx.row_of(uncovered, er);
        // subsets of bmax containing ec
        uint64_t rest = bmax & ~(1ull << ec);
        for (uint64_t sb = rest;; sb = (sb - 1) & rest) {
            uint64_t B = sb | (1ull << ec);
            // rows compatible with every column of B
            uint64_t amax = 0;
            for (size_t r = 0; r < ctx.nx; ++r)
                if ((ctx.row_nb[i][r] & B) == B && (ctx.row_of(uncovered, r) & B) == B)
                    amax |= 1ull << r;
            uint64_t arest = amax & ~(1ull << er);
            for (uint64_t sa = arest;; sa = (sa - 1) & arest) {
                uint64_t A = sa | (1ull << er);
                uint64_t mask = 0;
                for (uint64_t mm = A; mm; mm &= mm - 1)
                    mask |= B << (uint64_t(__builtin_ctzll(mm)) * ctx.ny);
                out.push_back(mask);
                if (sa == 0) break;
            }
            if (sb == 0) break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::sort(out.begin(), out.end(), [](uint64_t a, uint64_t b) {
        int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
        return pa != pb ? pa > pb : a < b;
    });
    return out;
}

void part_dfs(PartCtx& ctx, uint64_t uncovered, int used) {
    if (!uncovered) {
        ctx.best = std::min(ctx.best, used);
        return;
    }
    if (ctx.best <= ctx.floor_stop) return;
    int remaining = __builtin_popcountll(uncovered);
    if (used + (remaining + ctx.max_cells - 1) / ctx.max_cells >= ctx.best) return;
    // branch on the uncovered cell inside the fewest still-usable maximal
    // rectangles (most constrained first)
    int pick = __builtin_ctzll(uncovered), bestcnt = INT32_MAX;
    for (uint64_t mm = uncovered; mm; mm &= mm - 1) {
        int cell = __builtin_ctzll(mm);
        int cnt = 0;
        for (uint64_t rm : ctx.maximal)
            if (((rm >> cell) & 1) && (rm & ~uncovered) == 0) ++cnt;
        if (cnt < bestcnt) {
            bestcnt = cnt;
            pick = cell;
        }
        if (bestcnt == 0) break;
    }
    int er = pick / int(ctx.ny), ec = pick % int(ctx.ny);
    for (uint64_t mask : candidates_at(ctx, uncovered, er, ec)) {
        part_dfs(ctx, uncovered & ~mask, used + 1);
        if (ctx.best <= ctx.floor_stop) return;
    }
}

} // namespace

int rectangle_partition_number(const BooleanFunction& f, const Config& cfg, double known_lower) {
    std::vector<uint64_t> xs = f.side(0), ys = f.side(1);
    size_t nx = xs.size(), ny = ys.size();
    if (nx == 0 || ny == 0) return 0;
    uint64_t cells = uint64_t(nx) * ny;
    if (cells > cfg.partition_cells_cap || cells > 64)
        throw CapExceeded("partition search needs |X|*|Y| <= " +
                          std::to_string(std::min<uint64_t>(cfg.partition_cells_cap, 64)) +
                          ", got " + std::to_string(cells));
    PartCtx ctx;
    ctx.nx = nx;
    ctx.ny = ny;
    ctx.n = f.n;
    // difference graphs, one per position: edge (r,c) iff x_r and y_c differ there
    ctx.row_nb.assign(f.n, std::vector<uint64_t>(nx, 0));
    for (int i = 0; i < f.n; ++i)
        for (size_t r = 0; r < nx; ++r)
            for (size_t c = 0; c < ny; ++c)
                if (symbol_at(xs[r], i + 1, f.n, f.k) != symbol_at(ys[c], i + 1, f.n, f.k))
                    ctx.row_nb[i][r] |= 1ull << c;

    // maximal monochromatic rectangles of the full grid (branching heuristic
    // and the piece-size prune): close row subsets against each difference graph
    {
        std::vector<uint64_t> masks;
        uint64_t colfull = ny == 64 ? ~0ull : (1ull << ny) - 1;
        // cells <= 64 keeps the enumerated side at <= 8 elements
        for (int i = 0; i < f.n; ++i) {
            if (nx <= ny) {
                for (uint64_t sub = 1; sub < (1ull << nx); ++sub) {
                    uint64_t colset = colfull;
                    for (uint64_t mm = sub; mm; mm &= mm - 1)
                        colset &= ctx.row_nb[i][__builtin_ctzll(mm)];
                    if (!colset) continue;
                    uint64_t rowset = 0;
                    for (size_t r = 0; r < nx; ++r)
                        if ((ctx.row_nb[i][r] & colset) == colset) rowset |= 1ull << r;
                    uint64_t mask = 0;
                    for (uint64_t mm = rowset; mm; mm &= mm - 1)
                        mask |= colset << (uint64_t(__builtin_ctzll(mm)) * ny);
                    masks.push_back(mask);
                }
            } else {
                for (uint64_t sub = 1; sub < (1ull << ny); ++sub) {
                    uint64_t rowset = 0;
                    for (size_t r = 0; r < nx; ++r)
                        if ((ctx.row_nb[i][r] & sub) == sub) rowset |= 1ull << r;
                    if (!rowset) continue;
                    uint64_t colset = colfull;
                    for (uint64_t mm = rowset; mm; mm &= mm - 1)
                        colset &= ctx.row_nb[i][__builtin_ctzll(mm)];
                    uint64_t mask = 0;
                    for (uint64_t mm = rowset; mm; mm &= mm - 1)
                        mask |= colset << (uint64_t(__builtin_ctzll(mm)) * ny);
                    masks.push_back(mask);
                }
            }
        }
        std::sort(masks.begin(), masks.end());
        masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
        for (uint64_t m : masks) {
            bool dominated = false;
            for (uint64_t other : masks)
                if (other != m && (m & other) == m) {
                    dominated = true;
                    break;
                }
            if (!dominated) ctx.maximal.push_back(m);
        }
        for (uint64_t m : ctx.maximal)
            ctx.max_cells = std::max(ctx.max_cells, __builtin_popcountll(m));
    }

    ctx.best = int(cells);  // singleton rectangles always form a partition
    ctx.floor_stop = std::max(0, int(std::ceil(known_lower - 1e-6)));
    uint64_t all = cells == 64 ? ~0ull : (1ull << cells) - 1;
    part_dfs(ctx, all, 0);
    return ctx.best;
}

} // namespace advtk
