#include "srst/sumrank.hpp"

#include <omp.h>

#include <numeric>

namespace srst {

Partition Partition::equal(std::uint32_t N, std::uint32_t L) {
    if (L == 0 || N % L != 0) throw Error(Errc::BadParams, "partition: L must divide N");
    Partition part;
    part.total = N;
    part.blocks.assign(L, N / L);
    return part;
}

bool Partition::equal_blocks() const {
    for (auto b : blocks)
        if (b != blocks[0]) return false;
    return true;
}

std::uint32_t sum_rank_weight(const FieldCtx& ctx, std::span<const Fe> c, const Partition& part,
                              std::span<const Fe> basis) {
    if (c.size() != part.total) throw Error(Errc::LengthMismatch, "vector length does not match partition");
    std::uint32_t w = 0;
    std::size_t off = 0;
    for (auto r : part.blocks) {
        w += rank_fp(matrix_rep(ctx, c.subspan(off, r), basis), ctx.p());
        off += r;
    }
    return w;
}

std::uint32_t sum_rank_weight(const FieldCtx& ctx, std::span<const Fe> c, const Partition& part) {
    return sum_rank_weight(ctx, c, part, ctx.basis());
}

std::uint32_t sum_rank_distance(const FieldCtx& ctx, std::span<const Fe> c, std::span<const Fe> d,
                                const Partition& part) {
    if (c.size() != d.size()) throw Error(Errc::LengthMismatch, "vectors differ in length");
    std::vector<Fe> diff(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) diff[i] = ctx.sub(c[i], d[i]);
    return sum_rank_weight(ctx, diff, part);
}

std::uint32_t hamming_weight(std::span<const Fe> c) {
    std::uint32_t w = 0;
    for (auto x : c) w += (x != 0);
    return w;
}

namespace {

// Weight of message index u (digits base q^m) encoded by G. Work buffers are
// caller-provided so the enumeration loop stays allocation-free.
struct WeightKernel {
    const FieldCtx& ctx;
    std::span<const Fe> G;
    std::uint32_t k, N;
    const Partition& part;

    std::uint32_t operator()(std::uint64_t msg, std::vector<Fe>& cw, FqMatrix& rep,
                             std::vector<std::uint32_t>& dig) const {
        const Fe q_m = ctx.size();
        std::fill(cw.begin(), cw.end(), 0);
        for (std::uint32_t i = 0; i < k; ++i) {
            Fe ui = static_cast<Fe>(msg % q_m);
            msg /= q_m;
            if (ui == 0) continue;
            for (std::uint32_t j = 0; j < N; ++j) cw[j] = ctx.add(cw[j], ctx.mul(ui, G[i * N + j]));
        }
        // Inline sum_rank_weight with the polynomial basis (digit extraction).
        const std::uint32_t m = ctx.m();
        std::uint32_t w = 0;
        std::size_t off = 0;
        for (auto r : part.blocks) {
            rep.rows = m;
            rep.cols = r;
            rep.a.assign(m * r, 0);
            for (std::uint32_t j = 0; j < r; ++j) {
                ctx.coords(cw[off + j], dig);
                for (std::uint32_t i = 0; i < m; ++i) rep.at(i, j) = dig[i];
            }
            w += rank_fp_destructive(rep, ctx.p());
            off += r;
        }
        return w;
    }
};

std::uint64_t codebook_size(const FieldCtx& ctx, std::uint32_t k, std::uint64_t limit) {
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        total *= ctx.size();
        if (total > limit) throw Error(Errc::TooLarge, "codebook too large for brute-force enumeration");
    }
    return total;
}

}  // namespace

std::uint32_t min_sum_rank_distance(const FieldCtx& ctx, std::span<const Fe> G, std::uint32_t k,
                                    std::uint32_t N, const Partition& part, std::uint64_t limit) {
    const std::uint64_t total = codebook_size(ctx, k, limit);
    WeightKernel kernel{ctx, G, k, N, part};
    std::uint32_t best = N + 1;
#pragma omp parallel
    {
        std::vector<Fe> cw(N);
        FqMatrix rep;
        std::vector<std::uint32_t> dig(ctx.m());
        std::uint32_t local = N + 1;
#pragma omp for schedule(static)
        for (std::int64_t msg = 1; msg < static_cast<std::int64_t>(total); ++msg) {
            local = std::min(local, kernel(static_cast<std::uint64_t>(msg), cw, rep, dig));
        }
#pragma omp critical
        best = std::min(best, local);
    }
    return best;
}

std::uint32_t min_sum_rank_distance_serial(const FieldCtx& ctx, std::span<const Fe> G, std::uint32_t k,
                                           std::uint32_t N, const Partition& part, std::uint64_t limit) {
    const std::uint64_t total = codebook_size(ctx, k, limit);
    WeightKernel kernel{ctx, G, k, N, part};
    std::vector<Fe> cw(N);
    FqMatrix rep;
    std::vector<std::uint32_t> dig(ctx.m());
    std::uint32_t best = N + 1;
    for (std::uint64_t msg = 1; msg < total; ++msg) best = std::min(best, kernel(msg, cw, rep, dig));
    return best;
}

std::uint64_t singleton_bound(const FieldCtx& ctx, const Partition& part, std::uint32_t d) {
    if (d < 1 || d > part.total) throw Error(Errc::BadParams, "distance out of range");
    const std::uint64_t e = std::uint64_t(ctx.m()) * (part.total - d + 1);
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (r > UINT64_MAX / ctx.p()) throw Error(Errc::TooLarge, "singleton bound overflows 64 bits");
        r *= ctx.p();
    }
    return r;
}

bool check_extension_degree(const Partition& part, std::uint32_t m) {
    if (!part.equal_blocks()) throw Error(Errc::BadParams, "extension degree bound assumes equal blocks");
    return std::uint64_t(m) * part.L() >= part.total;
}

}  // namespace srst
