#ifndef SRST_DECODER_HPP
#define SRST_DECODER_HPP

#include "srst/channel.hpp"

namespace srst {

struct DecoderConfig {
    enum class FutureCost { Off, ColumnMin, Eigenbound };
    FutureCost future_costing = FutureCost::Off;
    bool spherical = false;
    bool spatial_perm = false;
    bool temporal_perm = false;
    double alpha = 1.75;   // initial spherical threshold multiplier
    double delta = 0.25;   // threshold increment on restart
    std::size_t stack_capacity = std::size_t(1) << 20;

    static DecoderConfig vanilla() { return {}; }
    static DecoderConfig all_on(FutureCost fc = FutureCost::ColumnMin) {
        DecoderConfig cfg;
        cfg.future_costing = fc;
        cfg.spherical = cfg.spatial_perm = cfg.temporal_perm = true;
        return cfg;
    }
};

struct DecodeStats {
    std::uint64_t nodes_visited = 0;  // cost evaluations plus scanned lattice points
    std::uint64_t peak_stack = 0;     // max priority-queue size across restarts
    std::uint64_t restarts = 0;       // threshold increases
};

struct DecodeResult {
    std::vector<std::uint16_t> symbols;  // n_t x (L T) field entries, column-major, original order
    double cost = 0;                     // sum of per-block residual norms
    DecodeStats stats;
};

/// QL factorization M = Q L with Q unitary and L lower-triangular (its top
/// n_r - n_t rows vanish when M is tall); the diagonal of the square bottom
/// part is made real non-negative.
void ql_decompose(const CMatrix& M, CMatrix& Q, CMatrix& L);

/// Effective channel of a linear dispersion code: rows stack H_{l(j)} a_i^{(j)}
/// over the LT codeword columns j, scaled by rho. Result is (n_r LT) x K for
/// K dispersion matrices.
CMatrix ld_effective_channel(const std::vector<CMatrix>& H, const std::vector<CMatrix>& dispersion,
                             double rho, std::uint32_t T);

/// Received blocks stacked column-major into a single vector.
Eigen::VectorXcd ld_receive_vector(const std::vector<CMatrix>& Y);

/// Per-block column permutations sorting channel columns by descending
/// 2-norm; ties keep the original order.
std::vector<std::vector<std::uint32_t>> spatial_permutation(const std::vector<CMatrix>& H);

/// Permutation of the LT received columns by descending 2-norm; ties keep
/// the original order.
std::vector<std::uint32_t> temporal_permutation_for(const std::vector<CMatrix>& Y, std::uint32_t T);

/**
 * One decode: QL factors, permutations, heuristic tables and the best-first
 * search state for a single received word. The search pops the cheapest
 * prefix (cost plus admissible future-cost bound), expands children - all of
 * them, or only those inside the cost sphere - and finishes when a leaf is
 * popped, which is then the exact ML codeword. If spherical bounding empties
 * the queue, the threshold multiplier grows by delta and the search restarts.
 *
 * Prefixes handed to the exposed helpers are in detection order (after the
 * spatial/temporal permutations); run() returns symbols in original order.
 */
class DecoderRun {
  public:
    DecoderRun(const SpaceTimeEncoder& enc, const ChannelRealization& real,
               const std::vector<CMatrix>& Y, DecoderConfig cfg);

    /// Flat MIMO detection min over A^n of ||y - M x||^2 (uncoded or linear
    /// dispersion effective channels). Permutation flags are ignored.
    DecoderRun(const CMatrix& M, const Eigen::VectorXcd& y, const Constellation& A,
               DecoderConfig cfg);

    DecodeResult run();

    std::uint32_t depth_total() const { return n_; }
    std::uint32_t info_depth() const { return info_cols_ * col_size_; }
    double cost_offset() const { return offset_; }

    /// Incremental cost f_{|p|+1}(p, next).
    double cost_step(std::span<const std::uint16_t> prefix, std::uint16_t next) const;
    double prefix_cost(std::span<const std::uint16_t> prefix) const;
    /// E(p): full alphabet below the information depth, the unique parity
    /// continuation above it, empty at leaves.
    std::vector<std::uint16_t> children(std::span<const std::uint16_t> prefix) const;
    /// {t in E(p) | f(pt) <= threshold - C(p)} via circle enumeration.
    std::vector<std::uint16_t> sphere_children(std::span<const std::uint16_t> prefix,
                                               double threshold,
                                               std::uint64_t* visited = nullptr) const;

    const std::vector<double>& column_minima() const { return col_min_; }
    double heuristic(std::size_t depth) const { return h_.empty() ? 0.0 : h_[depth]; }
    const std::vector<std::vector<std::uint32_t>>& spatial_perms() const { return spatial_; }
    const std::vector<std::uint32_t>& temporal_perm() const { return temporal_; }
    const CMatrix& block_factor(std::size_t ell) const { return lfac_[ell]; }

  private:
    struct Node {
        double priority;
        double cost;
        std::int32_t parent;
        std::uint16_t sym;
        std::uint16_t depth;
    };

    void setup_heuristics();
    void column_prefix(std::span<const std::uint16_t> prefix, std::uint32_t col,
                       std::uint16_t* out, std::uint32_t count) const;
    std::complex<double> residual(std::uint32_t col, std::uint32_t row,
                                  const std::uint16_t* colsyms) const;
    void parity_tail(const std::uint16_t* info, std::uint16_t* tail) const;
    double solve_column_min(std::uint32_t col) const;

    // Search internals operating on the node arena.
    void gather_column(std::int32_t id, std::uint32_t row, std::uint16_t* out) const;
    bool heap_less(std::int32_t a, std::int32_t b) const;
    void heap_push(std::int32_t id);
    std::int32_t heap_pop();

    const Constellation* con_ = nullptr;
    std::uint32_t col_size_ = 0;  // symbols per column
    std::uint32_t n_cols_ = 0;
    std::uint32_t info_cols_ = 0;
    std::uint32_t n_ = 0;  // total depth
    DecoderConfig cfg_;
    double offset_ = 0;
    double noise_energy_ = 0;  // sum over blocks of E||W||_F^2

    std::vector<CMatrix> lfac_;              // per block, square lower factor
    std::vector<std::uint32_t> col_block_;   // detection column -> block
    std::vector<Eigen::VectorXcd> col_y_;    // detection column -> rotated column
    std::vector<std::vector<std::uint32_t>> spatial_;
    std::vector<std::uint32_t> temporal_;

    // Space-time structure (absent for flat problems).
    const SpaceTimeEncoder* enc_ = nullptr;
    std::vector<Fe> gperm_;  // systematized permuted generator, k x N

    std::vector<double> col_min_;  // per detection column lower bounds
    std::vector<double> h_;        // heuristic per prefix length

    // Arena and binary heap for the current search.
    std::vector<Node> arena_;
    std::vector<std::int32_t> heap_;
};

/// argmin over the whole codebook of the ML metric; ties resolve to the
/// first message in enumeration order. `book` may hold the pre-enumerated
/// codebook to avoid re-encoding.
DecodeResult exhaustive_ml(const SpaceTimeEncoder& enc, const ChannelRealization& real,
                           const std::vector<CMatrix>& Y,
                           const std::vector<StCodeword>* book = nullptr);

/// Convenience wrapper building a DecoderRun and running it.
DecodeResult stack_decode(const SpaceTimeEncoder& enc, const ChannelRealization& real,
                          const std::vector<CMatrix>& Y, const DecoderConfig& cfg);

/// Sum over blocks of ||Y_l - rho H_l X_l||_F^2 evaluated directly.
double ml_cost(const ChannelRealization& real, const std::vector<CMatrix>& Y, const CMatrix& X,
               std::uint32_t T);

}  // namespace srst

#endif
