#include "srst/galois.hpp"

#include <algorithm>
#include <cassert>

namespace srst {

namespace {

constexpr std::uint64_t kLutLimit = 1u << 16;  // exp/log tables up to 2^16 elements

// Dense polynomial over F_p, coefficient vector with lowest degree first.
using Poly = std::vector<std::uint32_t>;

std::size_t poly_deg(const Poly& f) {
    std::size_t d = f.size();
    while (d > 0 && f[d - 1] == 0) --d;
    return d == 0 ? 0 : d - 1;
}

bool poly_is_zero(const Poly& f) {
    return std::all_of(f.begin(), f.end(), [](std::uint32_t c) { return c == 0; });
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
    // Fermat; p prime, a != 0.
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

// f mod g, g monic.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
    std::size_t dg = poly_deg(g);
    while (!poly_is_zero(f) && poly_deg(f) >= dg) {
        std::size_t df = poly_deg(f);
        std::uint64_t c = f[df];
        for (std::size_t i = 0; i <= dg; ++i) {
            std::uint64_t t = f[df - dg + i] + (p - ((c * g[i]) % p));
            f[df - dg + i] = static_cast<std::uint32_t>(t % p);
        }
    }
    return f;
}

Poly poly_mul(const Poly& f, const Poly& g, std::uint32_t p) {
    Poly r(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j) {
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(f[i]) * g[j]) % p);
        }
    }
    return r;
}

// Does g divide f exactly? g monic.
bool poly_divides(const Poly& g, const Poly& f, std::uint32_t p) {
    return poly_is_zero(poly_mod(f, g, p));
}

Poly poly_from_index(std::uint64_t v, std::size_t len, std::uint32_t p) {
    Poly f(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        f[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
    }
    return f;
}

// Irreducibility by trial division with all monic polynomials of degree
// 1..deg/2. Fine at the degrees this library targets.
bool poly_irreducible(const Poly& f, std::uint32_t p) {
    std::size_t d = poly_deg(f);
    if (d == 1) return true;
    for (std::size_t dd = 1; dd <= d / 2; ++dd) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < dd; ++i) count *= p;
        for (std::uint64_t v = 0; v < count; ++v) {
            Poly g = poly_from_index(v, dd + 1, p);
            g[dd] = 1;
            if (poly_divides(g, f, p)) return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::shared_ptr<const FieldCtx> FieldCtx::build(std::uint32_t p, std::uint32_t m) {
    if (!is_prime_u64(p)) throw Error(Errc::NotPrime, "base field size must be prime: " + std::to_string(p));
    if (m < 1) throw Error(Errc::BadParams, "extension degree must be >= 1");

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->m_ = m;
    std::uint64_t q_m = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q_m *= p;
        if (q_m > (std::uint64_t(1) << 31)) throw Error(Errc::TooLarge, "field too large");
    }
    ctx->q_m_ = static_cast<Fe>(q_m);

    if (m == 1) {
        ctx->modulus_ = {0, 1};  // x
    } else {
        bool found = false;
        for (std::uint64_t v = 0; v < q_m; ++v) {
            Poly f = poly_from_index(v, m + 1, p);
            f[m] = 1;
            if (poly_irreducible(f, p)) {
                ctx->modulus_.assign(f.begin(), f.end());
                found = true;
                break;
            }
        }
        assert(found);
        (void)found;
    }

    ctx->basis_.resize(m);
    for (std::uint32_t i = 0; i < m; ++i) {
        std::uint64_t b = 1;
        for (std::uint32_t j = 0; j < i; ++j) b *= p;
        ctx->basis_[i] = static_cast<Fe>(b);  // x^i
    }

    // Primitive element: smallest index with multiplicative order q_m - 1.
    const std::uint64_t group = q_m - 1;
    auto factors = prime_factors(group);
    for (Fe a = 1; a < ctx->q_m_; ++a) {
        bool primitive = true;
        for (auto f : factors) {
            if (ctx->pow(a, group / f) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            ctx->alpha_ = a;
            break;
        }
    }

    if (q_m <= kLutLimit) {
        ctx->exp_.resize(group);
        ctx->log_.assign(q_m, 0);
        Fe x = 1;
        for (std::uint64_t i = 0; i < group; ++i) {
            ctx->exp_[i] = x;
            ctx->log_[x] = static_cast<std::uint32_t>(i);
            x = ctx->mul_nolut(x, ctx->alpha_);
        }
        ctx->frob_.resize(q_m);
        for (Fe a = 0; a < ctx->q_m_; ++a) ctx->frob_[a] = ctx->pow(a, p);
        ctx->tables_ = true;
    }
    return ctx;
}

Fe FieldCtx::add(Fe a, Fe b) const {
    if (m_ == 1) return (a + b) % p_;
    Fe r = 0, mult = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        std::uint32_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        r += ((da + db) % p_) * mult;
        mult *= p_;
    }
    return r;
}

Fe FieldCtx::neg(Fe a) const {
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    Fe r = 0, mult = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        std::uint32_t d = a % p_;
        a /= p_;
        r += (d == 0 ? 0 : p_ - d) * mult;
        mult *= p_;
    }
    return r;
}

Fe FieldCtx::sub(Fe a, Fe b) const { return add(a, neg(b)); }

Fe FieldCtx::mul_nolut(Fe a, Fe b) const {
    if (m_ == 1) return static_cast<Fe>(std::uint64_t(a) * b % p_);
    Poly fa(m_), fb(m_);
    for (std::uint32_t i = 0; i < m_; ++i) {
        fa[i] = a % p_;
        a /= p_;
        fb[i] = b % p_;
        b /= p_;
    }
    Poly prod = poly_mod(poly_mul(fa, fb, p_), Poly(modulus_.begin(), modulus_.end()), p_);
    Fe r = 0, mult = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        r += (i < prod.size() ? prod[i] : 0) * mult;
        mult *= p_;
    }
    return r;
}

Fe FieldCtx::mul(Fe a, Fe b) const {
    if (a == 0 || b == 0) return 0;
    if (tables_) {
        std::uint64_t e = std::uint64_t(log_[a]) + log_[b];
        const std::uint64_t group = q_m_ - 1;
        if (e >= group) e -= group;
        return exp_[e];
    }
    return mul_nolut(a, b);
}

Fe FieldCtx::inv(Fe a) const {
    if (a == 0) throw Error(Errc::BadParams, "inverse of zero");
    if (tables_) {
        const std::uint64_t group = q_m_ - 1;
        return exp_[(group - log_[a]) % group];
    }
    return pow(a, q_m_ - 2);
}

Fe FieldCtx::pow(Fe a, std::uint64_t e) const {
    Fe r = 1, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

Fe FieldCtx::frobenius(Fe a, std::uint32_t i) const {
    i %= m_;  // sigma^m = identity
    Fe r = a;
    for (std::uint32_t j = 0; j < i; ++j) r = tables_ ? frob_[r] : pow(r, p_);
    return r;
}

Fe FieldCtx::truncated_norm(Fe a, std::uint32_t i) const {
    Fe r = 1;
    for (std::uint32_t j = 0; j < i; ++j) r = mul(r, frobenius(a, j));
    return r;
}

Fe FieldCtx::op_d(Fe a, std::uint32_t i, Fe b) const { return mul(frobenius(b, i), truncated_norm(a, i)); }

void FieldCtx::coords(Fe a, std::span<std::uint32_t> out) const {
    for (std::uint32_t i = 0; i < m_; ++i) {
        out[i] = a % p_;
        a /= p_;
    }
}

Fe FieldCtx::from_coords(std::span<const std::uint32_t> c) const {
    Fe r = 0, mult = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        r += (c[i] % p_) * mult;
        mult *= p_;
    }
    return r;
}

bool FieldCtx::in_base_field(Fe a) const { return frobenius(a, 1) == a; }

namespace {

// Coordinates of `a` with respect to an arbitrary basis: solve B x = digits(a)
// where column i of B holds the polynomial-basis digits of basis[i].
struct BasisSolver {
    const FieldCtx& ctx;
    FqMatrix binv;  // m x m, inverse of the basis coordinate matrix

    explicit BasisSolver(const FieldCtx& c, std::span<const Fe> basis) : ctx(c) {
        const std::uint32_t m = ctx.m(), p = ctx.p();
        if (basis.size() != m) throw Error(Errc::BadParams, "basis size must equal extension degree");
        // Gauss-Jordan on [B | I].
        FqMatrix work(m, 2 * m);
        std::vector<std::uint32_t> dig(m);
        for (std::uint32_t j = 0; j < m; ++j) {
            ctx.coords(basis[j], dig);
            for (std::uint32_t i = 0; i < m; ++i) work.at(i, j) = dig[i];
            work.at(j, m + j) = 1;
        }
        for (std::uint32_t col = 0; col < m; ++col) {
            std::uint32_t piv = col;
            while (piv < m && work.at(piv, col) == 0) ++piv;
            if (piv == m) throw Error(Errc::BadParams, "basis is linearly dependent");
            if (piv != col)
                for (std::uint32_t j = 0; j < 2 * m; ++j) std::swap(work.at(piv, j), work.at(col, j));
            std::uint32_t s = mod_inv(work.at(col, col), p);
            for (std::uint32_t j = 0; j < 2 * m; ++j)
                work.at(col, j) = static_cast<std::uint32_t>(std::uint64_t(work.at(col, j)) * s % p);
            for (std::uint32_t r = 0; r < m; ++r) {
                if (r == col || work.at(r, col) == 0) continue;
                std::uint64_t f = work.at(r, col);
                for (std::uint32_t j = 0; j < 2 * m; ++j) {
                    std::uint64_t t = work.at(r, j) + (p - static_cast<std::uint32_t>(f * work.at(col, j) % p));
                    work.at(r, j) = static_cast<std::uint32_t>(t % p);
                }
            }
        }
        binv = FqMatrix(m, m);
        for (std::uint32_t i = 0; i < m; ++i)
            for (std::uint32_t j = 0; j < m; ++j) binv.at(i, j) = work.at(i, m + j);
    }

    void solve(Fe a, std::span<std::uint32_t> out) const {
        const std::uint32_t m = ctx.m(), p = ctx.p();
        std::vector<std::uint32_t> dig(m);
        ctx.coords(a, dig);
        for (std::uint32_t i = 0; i < m; ++i) {
            std::uint64_t s = 0;
            for (std::uint32_t j = 0; j < m; ++j) s += std::uint64_t(binv.at(i, j)) * dig[j];
            out[i] = static_cast<std::uint32_t>(s % p);
        }
    }
};

bool is_polynomial_basis(const FieldCtx& ctx, std::span<const Fe> basis) {
    return std::equal(basis.begin(), basis.end(), ctx.basis().begin(), ctx.basis().end());
}

}  // namespace

FqMatrix matrix_rep(const FieldCtx& ctx, std::span<const Fe> c, std::span<const Fe> basis) {
    const std::uint32_t m = ctx.m();
    FqMatrix mat(m, c.size());
    std::vector<std::uint32_t> col(m);
    if (is_polynomial_basis(ctx, basis)) {
        for (std::size_t j = 0; j < c.size(); ++j) {
            ctx.coords(c[j], col);
            for (std::uint32_t i = 0; i < m; ++i) mat.at(i, j) = col[i];
        }
        return mat;
    }
    BasisSolver solver(ctx, basis);
    for (std::size_t j = 0; j < c.size(); ++j) {
        solver.solve(c[j], col);
        for (std::uint32_t i = 0; i < m; ++i) mat.at(i, j) = col[i];
    }
    return mat;
}

FqMatrix matrix_rep(const FieldCtx& ctx, std::span<const Fe> c) { return matrix_rep(ctx, c, ctx.basis()); }

std::vector<Fe> matrix_unrep(const FieldCtx& ctx, const FqMatrix& mat, std::span<const Fe> basis) {
    if (mat.rows != ctx.m()) throw Error(Errc::DimensionMismatch, "matrix_unrep: row count != m");
    std::vector<Fe> c(mat.cols);
    for (std::size_t j = 0; j < mat.cols; ++j) {
        Fe s = 0;
        for (std::uint32_t i = 0; i < ctx.m(); ++i) {
            Fe term = ctx.mul(basis[i], mat.at(i, j) % ctx.p());
            s = ctx.add(s, term);
        }
        c[j] = s;
    }
    return c;
}

std::vector<Fe> matrix_unrep(const FieldCtx& ctx, const FqMatrix& mat) {
    return matrix_unrep(ctx, mat, ctx.basis());
}

std::uint32_t rank_fp(FqMatrix mat, std::uint32_t p) { return rank_fp_destructive(mat, p); }

std::uint32_t rank_fp_destructive(FqMatrix& mat, std::uint32_t p) {
    std::uint32_t rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < mat.cols && row < mat.rows; ++col) {
        std::size_t piv = row;
        while (piv < mat.rows && mat.at(piv, col) == 0) ++piv;
        if (piv == mat.rows) continue;
        if (piv != row)
            for (std::size_t j = col; j < mat.cols; ++j) std::swap(mat.at(piv, j), mat.at(row, j));
        std::uint32_t s = mod_inv(mat.at(row, col), p);
        for (std::size_t j = col; j < mat.cols; ++j)
            mat.at(row, j) = static_cast<std::uint32_t>(std::uint64_t(mat.at(row, j)) * s % p);
        for (std::size_t r = 0; r < mat.rows; ++r) {
            if (r == row || mat.at(r, col) == 0) continue;
            std::uint64_t f = mat.at(r, col);
            for (std::size_t j = col; j < mat.cols; ++j) {
                std::uint64_t t = mat.at(r, j) + (p - static_cast<std::uint32_t>(f * mat.at(row, j) % p));
                mat.at(r, j) = static_cast<std::uint32_t>(t % p);
            }
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace srst
