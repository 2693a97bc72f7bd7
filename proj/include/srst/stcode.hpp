#ifndef SRST_STCODE_HPP
#define SRST_STCODE_HPP

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "srst/lattice.hpp"
#include "srst/lrs.hpp"

namespace srst {

using CMatrix = Eigen::MatrixXcd;

enum class StKind { SRA, SRB };

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double value() const { return double(num) / double(den); }
};
Rational make_rational(std::int64_t num, std::int64_t den);

struct StParams {
    std::uint32_t n_t = 1, T = 1, L = 1, d = 1;
    StKind kind = StKind::SRB;
    Constellation constellation;
};

/**
 * Message-to-complex-codeword pipeline built on a linearized Reed-Solomon
 * code and a rank-metric-preserving constellation map. SRA covers T >= n_t
 * (m = T, N = L*n_t), SRB covers T <= n_t (m = n_t, N = L*T). For T = n_t the
 * two differ only by sub-codeword transposition and SRA is canonicalized to
 * SRB, which is the layout the decoder expects.
 */
struct SpaceTimeEncoder {
    StParams params;
    std::shared_ptr<const FieldCtx> ctx;
    SumRankCode code;  // systematic on the first k coordinates
    std::uint32_t m = 0, N = 0, k = 0;
    bool transposed = false;  // SRA layout: sub-codewords are transposed

    std::uint64_t message_count() const;  // q^{mk}, throws TooLarge past 2^63
};

SpaceTimeEncoder build_encoder(StParams params);

/// Field-symbol matrix (entries of F_q, n_t x LT) and the complex codeword
/// X = phi applied entrywise.
struct StCodeword {
    std::vector<std::uint16_t> symbols;  // column-major n_t x LT
    CMatrix X;                           // n_t x LT
};

StCodeword encode_st(const SpaceTimeEncoder& enc, std::span<const Fe> u);

/// Message with index `idx` in the enumeration order used by the exhaustive
/// decoder (digits base q^m, least significant first).
std::vector<Fe> message_from_index(const SpaceTimeEncoder& enc, std::uint64_t idx);

struct RateInfo {
    Rational R;           // symbols per channel use, exact
    double R_b = 0;       // bpcu
    double R_b_per_tx = 0;
    double log2_codebook = 0;
    std::optional<std::uint64_t> codebook_size;  // exact when it fits
};

RateInfo rate_descriptors(const SpaceTimeEncoder& enc);

/// Rate-diversity tradeoff bound R <= n_t - ((d-1)/L) max{n_t/T, 1}, exact.
Rational tradeoff_bound(std::uint32_t n_t, std::uint32_t T, std::uint32_t L, std::uint32_t d);

/// Constellation-size lower bound F_eps.
double constellation_size_bound(std::uint32_t n_t, std::uint32_t T, std::uint32_t L, double eps,
                                double R_b_per_tx);

/// E[ ||X||_F^2 ] = (n_t L T / |A|) * sum_a |a|^2 for uniform messages.
double expected_energy(const SpaceTimeEncoder& enc);

/// Minimum over distinct codeword pairs of the summed complex ranks of
/// sub-codeword differences (exact lattice arithmetic for mod-lattice
/// constellations, tolerance-based rank for PSK). Desk-scale only.
std::uint32_t transmit_diversity_bruteforce(const SpaceTimeEncoder& enc,
                                            std::uint64_t pair_budget = 1u << 30);

/// Derived multiblock code descriptors from single-block codes.
struct DerivedStCode {
    std::uint32_t n_t = 0, T = 0, L = 0, d = 0;
    Rational R;
    bool optimal = false;
    // maps a source-encoder message to the derived L-block codeword
    std::function<CMatrix(std::span<const Fe>)> codeword;
};

DerivedStCode repetition_code(const SpaceTimeEncoder& enc_single, std::uint32_t L);
DerivedStCode horizontal_slice(const SpaceTimeEncoder& enc_wide, std::uint32_t L);
DerivedStCode vertical_slice(const SpaceTimeEncoder& enc_tall, std::uint32_t L);

/// All q^{mk} codewords in message-index order. Throws TooLarge beyond limit.
std::vector<StCodeword> enumerate_codebook(const SpaceTimeEncoder& enc, std::uint64_t limit = 1000000);

}  // namespace srst

#endif
