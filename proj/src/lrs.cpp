#include "srst/lrs.hpp"

#include <algorithm>
#include <set>

namespace srst {

SumRankCode lrs_generator(std::shared_ptr<const FieldCtx> ctx, const Partition& part, std::uint32_t k) {
    const std::uint32_t N = part.total, L = part.L();
    if (!part.equal_blocks()) throw Error(Errc::BadParams, "LRS codes use equal-block partitions");
    const std::uint32_t nl = N / L;
    if (ctx->p() <= L) throw Error(Errc::BadParams, "LRS requires q > L");
    if (ctx->m() < nl) throw Error(Errc::BadParams, "LRS requires m >= N/L");
    if (k < 1 || k > N) throw Error(Errc::BadParams, "dimension out of range");

    SumRankCode code;
    code.ctx = ctx;
    code.part = part;
    code.k = k;
    code.N = N;
    code.G.assign(std::size_t(k) * N, 0);
    for (std::uint32_t ell = 0; ell < L; ++ell) {
        const Fe a = ctx->pow(ctx->alpha(), ell);  // alpha^{ell-1} with 1-based ell
        for (std::uint32_t i = 0; i < k; ++i) {
            for (std::uint32_t j = 0; j < nl; ++j) {
                code.G[i * N + ell * nl + j] = ctx->op_d(a, i, ctx->basis()[j]);
            }
        }
    }
    return code;
}

SumRankCode systematize(SumRankCode code, std::span<const std::uint32_t> info_set) {
    const auto& ctx = *code.ctx;
    const std::uint32_t k = code.k, N = code.N;
    if (info_set.size() != k) throw Error(Errc::BadParams, "information set must have k indices");
    std::set<std::uint32_t> seen(info_set.begin(), info_set.end());
    if (seen.size() != k || *seen.rbegin() >= N)
        throw Error(Errc::BadParams, "information set indices must be distinct and in range");

    // Gauss-Jordan on the selected columns.
    auto& G = code.G;
    for (std::uint32_t r = 0; r < k; ++r) {
        const std::uint32_t col = info_set[r];
        std::uint32_t piv = r;
        while (piv < k && G[piv * N + col] == 0) ++piv;
        if (piv == k) throw Error(Errc::SingularInfoSet, "columns do not form an information set");
        if (piv != r)
            for (std::uint32_t j = 0; j < N; ++j) std::swap(G[piv * N + j], G[r * N + j]);
        const Fe s = ctx.inv(G[r * N + col]);
        for (std::uint32_t j = 0; j < N; ++j) G[r * N + j] = ctx.mul(G[r * N + j], s);
        for (std::uint32_t rr = 0; rr < k; ++rr) {
            if (rr == r || G[rr * N + col] == 0) continue;
            const Fe f = G[rr * N + col];
            for (std::uint32_t j = 0; j < N; ++j)
                G[rr * N + j] = ctx.sub(G[rr * N + j], ctx.mul(f, G[r * N + j]));
        }
    }
    code.info_set.assign(info_set.begin(), info_set.end());
    return code;
}

std::vector<Fe> encode(const SumRankCode& code, std::span<const Fe> u) {
    if (u.size() != code.k) throw Error(Errc::LengthMismatch, "message length != k");
    const auto& ctx = *code.ctx;
    std::vector<Fe> c(code.N, 0);
    for (std::uint32_t i = 0; i < code.k; ++i) {
        if (u[i] == 0) continue;
        for (std::uint32_t j = 0; j < code.N; ++j)
            c[j] = ctx.add(c[j], ctx.mul(u[i], code.G[i * code.N + j]));
    }
    return c;
}

std::uint32_t min_distance(const SumRankCode& code, std::uint64_t enumeration_limit) {
    return min_sum_rank_distance(*code.ctx, code.G, code.k, code.N, code.part, enumeration_limit);
}

}  // namespace srst
