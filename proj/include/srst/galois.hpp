#ifndef SRST_GALOIS_HPP
#define SRST_GALOIS_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "srst/errors.hpp"

namespace srst {

/// Element of F_{p^m}, encoded as an index in [0, p^m): the base-p digits of
/// the index are the coordinates in the polynomial basis (1, x, ..., x^{m-1}),
/// least significant digit first.
using Fe = std::uint32_t;

/// Matrix over F_p, row-major.
struct FqMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint32_t> a;

    FqMatrix() = default;
    FqMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
    std::uint32_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    bool operator==(const FqMatrix&) const = default;
};

/**
 * Arithmetic context for F_p and F_{p^m}.
 *
 * The modulus polynomial is the first monic irreducible of degree m when the
 * coefficient vector (c_0, ..., c_{m-1}) is read as a base-p integer, and the
 * primitive element alpha is the smallest element index of full multiplicative
 * order. Both searches are deterministic so contexts are reproducible.
 *
 * Immutable after construction; all operations are pure and thread-safe.
 */
class FieldCtx {
  public:
    static std::shared_ptr<const FieldCtx> build(std::uint32_t p, std::uint32_t m);

    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    Fe size() const { return q_m_; }  // p^m
    Fe alpha() const { return alpha_; }
    const std::vector<Fe>& basis() const { return basis_; }  // polynomial basis
    /// Modulus coefficients (c_0, ..., c_{m-1}, 1), length m+1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Fe add(Fe a, Fe b) const;
    Fe sub(Fe a, Fe b) const;
    Fe neg(Fe a) const;
    Fe mul(Fe a, Fe b) const;
    Fe inv(Fe a) const;
    Fe pow(Fe a, std::uint64_t e) const;

    /// sigma^i(a) = a^{q^i} with q = p (Frobenius with respect to F_p).
    Fe frobenius(Fe a, std::uint32_t i = 1) const;
    /// N_i(a) = sigma^{i-1}(a) ... sigma(a) a, with N_0(a) = 1.
    Fe truncated_norm(Fe a, std::uint32_t i) const;
    /// D_a^i(b) = sigma^i(b) N_i(a).
    Fe op_d(Fe a, std::uint32_t i, Fe b) const;

    /// Coordinates of a in the polynomial basis (digit extraction).
    void coords(Fe a, std::span<std::uint32_t> out) const;
    Fe from_coords(std::span<const std::uint32_t> c) const;

    /// True for elements of the embedded base field, i.e. fixed points of sigma.
    bool in_base_field(Fe a) const;

  private:
    FieldCtx() = default;

    std::uint32_t p_ = 0, m_ = 0;
    Fe q_m_ = 0;
    Fe alpha_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<Fe> basis_;
    std::vector<Fe> frob_;      // sigma(a) for all a when tables enabled
    std::vector<Fe> exp_;       // alpha^i, i in [0, q_m-1)
    std::vector<std::uint32_t> log_;  // inverse of exp_ on nonzero elements
    bool tables_ = false;

    Fe mul_nolut(Fe a, Fe b) const;
};

/// Matrix representation map: column j holds the coordinates of c[j] with
/// respect to `basis` (any ordered basis over F_p). Result is m x s over F_p.
FqMatrix matrix_rep(const FieldCtx& ctx, std::span<const Fe> c, std::span<const Fe> basis);
FqMatrix matrix_rep(const FieldCtx& ctx, std::span<const Fe> c);

/// Inverse of matrix_rep for the same basis.
std::vector<Fe> matrix_unrep(const FieldCtx& ctx, const FqMatrix& mat, std::span<const Fe> basis);
std::vector<Fe> matrix_unrep(const FieldCtx& ctx, const FqMatrix& mat);

/// Rank over F_p by row reduction (exact arithmetic).
std::uint32_t rank_fp(FqMatrix mat, std::uint32_t p);
/// Same, reducing in place (the matrix contents are destroyed).
std::uint32_t rank_fp_destructive(FqMatrix& mat, std::uint32_t p);

bool is_prime_u64(std::uint64_t n);

}  // namespace srst

#endif
