#include "advtk/pairscan.hpp"

#include <algorithm>
#include <cmath>

#include "advtk/common.hpp"

namespace advtk {

std::vector<uint8_t> symbol_table(const std::vector<uint64_t>& codes, int n, int k) {
    std::vector<uint8_t> sym(codes.size() * size_t(n));
    for (size_t r = 0; r < codes.size(); ++r) {
        uint64_t code = codes[r];
        for (int i = n - 1; i >= 0; --i) {
            sym[r * size_t(n) + i] = uint8_t(code % uint64_t(k));
            code /= uint64_t(k);
        }
    }
    return sym;
}

namespace {

struct RowReduce {
    double value = -1.0;
    uint64_t x = 0, y = 0;
    bool zero_overlap = false;
    uint64_t zx = 0, zy = 0;   // first zero-overlap pair, row-major order

    // lexicographic merge on (value desc, x asc, y asc) keeps parallel and
    // serial scans bitwise identical
    void take(double v, uint64_t cx, uint64_t cy) {
        if (v > value || (v == value && (cx < x || (cx == x && cy < y)))) {
            value = v;
            x = cx;
            y = cy;
        }
    }
    void take_zero(uint64_t cx, uint64_t cy) {
        if (!zero_overlap || cx < zx || (cx == zx && cy < zy)) {
            zero_overlap = true;
            zx = cx;
            zy = cy;
        }
    }
    void merge(const RowReduce& o) {
        if (o.value >= 0) take(o.value, o.x, o.y);
        if (o.zero_overlap) take_zero(o.zx, o.zy);
    }
};

// Scans the rows [r0, r1) of the X side against all of Y.
RowReduce scan_rows(const ScanInput& in, ScanKind kind, size_t r0, size_t r1) {
    const int n = in.n;
    const auto& ys = *in.ys;
    const auto& xs = *in.xs;
    const auto& symx = *in.symx;
    const auto& symy = *in.symy;
    const auto& sx = *in.sqrtp_x;
    const auto& sy = *in.sqrtp_y;
    RowReduce red;
    for (size_t r = r0; r < r1; ++r) {
        const uint8_t* ax = &symx[r * size_t(n)];
        const double* px = &sx[r * size_t(n)];
        for (size_t c = 0; c < ys.size(); ++c) {
            const uint8_t* ay = &symy[c * size_t(n)];
            const double* py = &sy[c * size_t(n)];
            double overlap = 0.0;
            if (kind == ScanKind::Sum) {
                for (int i = 0; i < n; ++i)
                    overlap += (ax[i] != ay[i]) ? px[i] * py[i] : 0.0;
            } else {
                for (int i = 0; i < n; ++i) {
                    double t = (ax[i] != ay[i]) ? px[i] * py[i] : 0.0;
                    if (t > overlap) overlap = t;  // strict: ties keep the smallest i
                }
            }
            if (overlap <= 0.0) {
                red.take_zero(xs[r], ys[c]);
            } else {
                red.take(1.0 / overlap, xs[r], ys[c]);
            }
        }
    }
    return red;
}

} // namespace

ScanResult scan_pairs_serial(const ScanInput& in, ScanKind kind) {
    RowReduce red = scan_rows(in, kind, 0, in.xs->size());
    ScanResult out;
    out.zero_overlap = red.zero_overlap;
    if (red.zero_overlap) {
        out.x = red.zx;
        out.y = red.zy;
        return out;
    }
    out.value = red.value;
    out.x = red.x;
    out.y = red.y;
    return out;
}

ScanResult scan_pairs_parallel(const ScanInput& in, ScanKind kind) {
    size_t rows = in.xs->size();
    int threads = worker_threads();
    int chunks = std::max(1, std::min<int>(threads * 8, int(std::min<size_t>(rows, 1 << 14))));
    std::vector<RowReduce> parts(chunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (int ck = 0; ck < chunks; ++ck) {
        size_t r0 = rows * size_t(ck) / chunks;
        size_t r1 = rows * size_t(ck + 1) / chunks;
        parts[ck] = scan_rows(in, kind, r0, r1);
    }
    RowReduce red;
    for (const RowReduce& p : parts) red.merge(p);
    ScanResult out;
    out.zero_overlap = red.zero_overlap;
    if (red.zero_overlap) {
        out.x = red.zx;
        out.y = red.zy;
        return out;
    }
    out.value = red.value;
    out.x = red.x;
    out.y = red.y;
    return out;
}

ScanResult scan_pairs(const ScanInput& in, ScanKind kind, ExecPolicy policy) {
    if (in.xs->empty() || in.ys->empty())
        throw UsageError("function is one-sided: no cross pairs exist");
    uint64_t cells = uint64_t(in.xs->size()) * in.ys->size();
    if (use_parallel(policy, cells)) return scan_pairs_parallel(in, kind);
    return scan_pairs_serial(in, kind);
}

} // namespace advtk
