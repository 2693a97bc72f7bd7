#ifndef SRST_LRS_HPP
#define SRST_LRS_HPP

#include <memory>

#include "srst/sumrank.hpp"

namespace srst {

/**
 * Linear sum-rank code: generator matrix over F_{q^m} plus its length
 * partition. After systematize() the columns indexed by info_set form I_k.
 */
struct SumRankCode {
    std::shared_ptr<const FieldCtx> ctx;
    Partition part;
    std::uint32_t k = 0;
    std::uint32_t N = 0;
    std::vector<Fe> G;  // k x N row-major
    std::vector<std::uint32_t> info_set;  // 0-based, empty until systematized

    Fe g(std::uint32_t row, std::uint32_t col) const { return G[row * N + col]; }
};

/**
 * Linearized Reed-Solomon generator: sub-codeword generator ell has rows
 * D^i_{alpha^{ell-1}}(beta_j) for i = 0..k-1, with beta_1..beta_{N/L} the
 * first N/L polynomial-basis elements. Requires q > L and m >= N/L. L = 1
 * yields a Gabidulin code. The returned generator is not yet systematized.
 */
SumRankCode lrs_generator(std::shared_ptr<const FieldCtx> ctx, const Partition& part, std::uint32_t k);

/// Row-reduce so that columns at info_set (k distinct indices) form I_k.
/// Always succeeds for MSRD codes; throws SingularInfoSet otherwise.
SumRankCode systematize(SumRankCode code, std::span<const std::uint32_t> info_set);

/// u * G.
std::vector<Fe> encode(const SumRankCode& code, std::span<const Fe> u);

/// Brute-force minimum sum-rank distance of the code (linearity exploited).
std::uint32_t min_distance(const SumRankCode& code, std::uint64_t enumeration_limit = 1000000);

}  // namespace srst

#endif
