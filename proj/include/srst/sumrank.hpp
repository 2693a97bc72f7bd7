#ifndef SRST_SUMRANK_HPP
#define SRST_SUMRANK_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "srst/galois.hpp"

namespace srst {

/// Sum-rank length partition N = r_1 + ... + r_L.
struct Partition {
    std::uint32_t total = 0;
    std::vector<std::uint32_t> blocks;

    static Partition equal(std::uint32_t N, std::uint32_t L);
    static Partition hamming(std::uint32_t N) { return equal(N, N); }
    static Partition rank(std::uint32_t N) { return equal(N, 1); }
    std::uint32_t L() const { return static_cast<std::uint32_t>(blocks.size()); }
    bool equal_blocks() const;
};

/// Sum of per-block matrix-representation ranks (polynomial basis).
std::uint32_t sum_rank_weight(const FieldCtx& ctx, std::span<const Fe> c, const Partition& part);
std::uint32_t sum_rank_weight(const FieldCtx& ctx, std::span<const Fe> c, const Partition& part,
                              std::span<const Fe> basis);

std::uint32_t sum_rank_distance(const FieldCtx& ctx, std::span<const Fe> c, std::span<const Fe> d,
                                const Partition& part);

/// Brute-force minimum distance of the linear code with generator G (k x N
/// row-major over F_{q^m}): the minimum sum-rank weight over all q^{mk}-1
/// nonzero codewords. OpenMP-parallel over the message space.
std::uint32_t min_sum_rank_distance(const FieldCtx& ctx, std::span<const Fe> G, std::uint32_t k,
                                    std::uint32_t N, const Partition& part,
                                    std::uint64_t enumeration_limit = 1000000);

/// Serial reference for the oracle above; same contract, same result.
std::uint32_t min_sum_rank_distance_serial(const FieldCtx& ctx, std::span<const Fe> G, std::uint32_t k,
                                           std::uint32_t N, const Partition& part,
                                           std::uint64_t enumeration_limit = 1000000);

/// Generalized Singleton bound: |C| <= q^{m(N-d+1)}.
std::uint64_t singleton_bound(const FieldCtx& ctx, const Partition& part, std::uint32_t d);

/// Necessary condition m >= N/L for an equal-block MSRD code with d > 1.
bool check_extension_degree(const Partition& part, std::uint32_t m);

std::uint32_t hamming_weight(std::span<const Fe> c);

}  // namespace srst

#endif
