#include "srst/stcode.hpp"

#include <cmath>
#include <numeric>

namespace srst {

Rational make_rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) throw Error(Errc::BadParams, "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

std::uint64_t SpaceTimeEncoder::message_count() const
{
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        if (total > (std::uint64_t(1) << 63) / ctx->size())
            throw Error(Errc::TooLarge, "codebook exceeds 2^63");
        total *= ctx->size();
    }
    return total;
}

SpaceTimeEncoder build_encoder(StParams params)
{
    const std::uint32_t n_t = params.n_t, T = params.T, L = params.L, d = params.d;
    const std::uint32_t q = params.constellation.size();
    if (n_t < 1 || T < 1 || L < 1) throw Error(Errc::BadParams, "dimensions must be positive");
    if (q <= L) throw Error(Errc::BadParams, "construction requires q > L (q = " + std::to_string(q) +
                                                 ", L = " + std::to_string(L) + ")");

    // SRA with T = n_t differs from SRB only by sub-codeword transposition;
    // canonicalize to SRB which the decoder consumes directly.
    if (params.kind == StKind::SRA && T == n_t) params.kind = StKind::SRB;

    SpaceTimeEncoder enc;
    if (params.kind == StKind::SRA) {
        if (T < n_t) throw Error(Errc::BadParams, "SRA requires T >= n_t");
        if (d < 1 || d > L * n_t) throw Error(Errc::BadParams, "SRA requires 1 <= d <= L*n_t");
        enc.m = T;
        enc.N = L * n_t;
        enc.transposed = true;
    } else {
        if (T > n_t) throw Error(Errc::BadParams, "SRB requires T <= n_t");
        if (d < 1 || d > L * T) throw Error(Errc::BadParams, "SRB requires 1 <= d <= L*T");
        enc.m = n_t;
        enc.N = L * T;
        enc.transposed = false;
    }
    enc.k = enc.N - d + 1;
    enc.ctx = FieldCtx::build(q, enc.m);
    const Partition part = Partition::equal(enc.N, L);
    SumRankCode code = lrs_generator(enc.ctx, part, enc.k);
    std::vector<std::uint32_t> first_k(enc.k);
    std::iota(first_k.begin(), first_k.end(), 0);
    enc.code = systematize(std::move(code), first_k);
    enc.params = std::move(params);
    return enc;
}

StCodeword encode_st(const SpaceTimeEncoder& enc, std::span<const Fe> u)
{
    const auto& ctx = *enc.ctx;
    const std::uint32_t n_t = enc.params.n_t, T = enc.params.T, L = enc.params.L;
    const std::vector<Fe> c = encode(enc.code, u);
    const std::uint32_t per_block = enc.N / L;

    StCodeword cw;
    cw.symbols.assign(std::size_t(n_t) * L * T, 0);
    cw.X.resize(n_t, std::int64_t(L) * T);
    std::vector<std::uint32_t> dig(enc.m);
    auto put = [&](std::uint32_t row, std::uint32_t col, std::uint32_t sym) {
        cw.symbols[std::size_t(col) * n_t + row] = std::uint16_t(sym);
        cw.X(row, col) = enc.params.constellation.point(sym);
    };
    for (std::uint32_t ell = 0; ell < L; ++ell) {
        for (std::uint32_t j = 0; j < per_block; ++j) {
            ctx.coords(c[ell * per_block + j], dig);
            if (enc.transposed) {
                // SRA: M_B(u G_ell)^T, code coordinate j is a codeword row.
                for (std::uint32_t t = 0; t < T; ++t) put(j, ell * T + t, dig[t]);
            } else {
                // SRB: code coordinate j is a codeword column.
                for (std::uint32_t r = 0; r < n_t; ++r) put(r, ell * T + j, dig[r]);
            }
        }
    }
    return cw;
}

std::vector<Fe> message_from_index(const SpaceTimeEncoder& enc, std::uint64_t idx)
{
    std::vector<Fe> u(enc.k);
    for (std::uint32_t i = 0; i < enc.k; ++i) {
        u[i] = Fe(idx % enc.ctx->size());
        idx /= enc.ctx->size();
    }
    return u;
}

RateInfo rate_descriptors(const SpaceTimeEncoder& enc)
{
    const std::uint32_t LT = enc.params.L * enc.params.T;
    RateInfo info;
    // |X| = q^{mk} so log_q|X| = m*k exactly.
    info.R = make_rational(std::int64_t(enc.m) * enc.k, LT);
    info.log2_codebook = double(enc.m) * enc.k * std::log2(double(enc.params.constellation.size()));
    info.R_b = info.log2_codebook / LT;
    info.R_b_per_tx = info.R_b / enc.params.n_t;
    try {
        info.codebook_size = enc.message_count();
    } catch (const Error&) {
        info.codebook_size.reset();
    }
    return info;
}

Rational tradeoff_bound(std::uint32_t n_t, std::uint32_t T, std::uint32_t L, std::uint32_t d)
{
    const std::uint32_t lo = std::min(n_t, T);
    if (d < 1 || d > std::uint64_t(L) * lo) throw Error(Errc::BadParams, "d out of range");
    if (n_t >= T) {
        // n_t - (d-1) n_t / (L T)
        return make_rational(std::int64_t(n_t) * L * T - std::int64_t(d - 1) * n_t,
                             std::int64_t(L) * T);
    }
    return make_rational(std::int64_t(n_t) * L - std::int64_t(d - 1), L);
}

double constellation_size_bound(std::uint32_t n_t, std::uint32_t T, std::uint32_t L, double eps,
                                double R_b_per_tx)
{
    if (eps < 0 || eps >= 1) throw Error(Errc::BadParams, "eps must satisfy 0 <= eps < 1");
    const double lmin = double(L) * std::min(n_t, T);
    return std::exp(R_b_per_tx * std::numbers::ln2 / (eps + 1.0 / lmin));
}

double expected_energy(const SpaceTimeEncoder& enc)
{
    const auto& con = enc.params.constellation;
    const double lt = double(enc.params.L) * enc.params.T;
    return double(enc.params.n_t) * lt * con.energy_sum() / double(con.size());
}

namespace {

std::uint32_t complex_rank_psk(const CMatrix& M)
{
    Eigen::JacobiSVD<CMatrix> svd(M);
    const auto& s = svd.singularValues();
    std::uint32_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > 1e-9) ++r;
    return r;
}

}  // namespace

std::uint32_t transmit_diversity_bruteforce(const SpaceTimeEncoder& enc, std::uint64_t pair_budget)
{
    const std::uint64_t total = enc.message_count();
    if (total * (total - 1) / 2 > pair_budget)
        throw Error(Errc::TooLarge, "pair enumeration exceeds budget");
    const auto book = enumerate_codebook(enc, total);
    const std::uint32_t n_t = enc.params.n_t, T = enc.params.T, L = enc.params.L;
    const bool exact = enc.params.constellation.is_lattice();
    const LatticeKind kind = exact ? enc.params.constellation.lattice() : LatticeKind::Gaussian;
    const auto& lat_pts = enc.params.constellation.lattice_points();

    std::uint32_t best = UINT32_MAX;
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best)
    for (std::int64_t i = 0; i < std::int64_t(total); ++i) {
        std::vector<LPoint> diff(std::size_t(n_t) * T);
        for (std::uint64_t j = i + 1; j < total; ++j) {
            std::uint32_t sum = 0;
            for (std::uint32_t ell = 0; ell < L && sum < best; ++ell) {
                if (exact) {
                    for (std::uint32_t col = 0; col < T; ++col) {
                        for (std::uint32_t row = 0; row < n_t; ++row) {
                            const auto a = lat_pts[book[i].symbols[(ell * T + col) * n_t + row]];
                            const auto b = lat_pts[book[j].symbols[(ell * T + col) * n_t + row]];
                            diff[row * T + col] = lat_sub(kind, a, b);
                        }
                    }
                    sum += lat_rank(kind, diff, n_t, T);
                } else {
                    const CMatrix d = book[i].X.middleCols(ell * T, T) - book[j].X.middleCols(ell * T, T);
                    sum += complex_rank_psk(d);
                }
            }
            best = std::min(best, sum);
        }
    }
    return best;
}

std::vector<StCodeword> enumerate_codebook(const SpaceTimeEncoder& enc, std::uint64_t limit)
{
    const std::uint64_t total = enc.message_count();
    if (total > limit) throw Error(Errc::TooLarge, "codebook too large to enumerate");
    std::vector<StCodeword> book;
    book.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx)
        book.push_back(encode_st(enc, message_from_index(enc, idx)));
    return book;
}

DerivedStCode repetition_code(const SpaceTimeEncoder& enc_single, std::uint32_t L)
{
    if (enc_single.params.L != 1) throw Error(Errc::BadParams, "repetition starts from a 1-block code");
    if (L < 2) throw Error(Errc::BadParams, "repetition needs L > 1");
    const auto single_rate = rate_descriptors(enc_single).R;
    const std::uint32_t d_single = enc_single.params.d;
    DerivedStCode out;
    out.n_t = enc_single.params.n_t;
    out.T = enc_single.params.T;
    out.L = L;
    out.d = L * d_single;
    out.R = make_rational(single_rate.num, single_rate.den * L);
    const auto bound = tradeoff_bound(out.n_t, out.T, out.L, out.d);
    out.optimal = out.R.num == bound.num && out.R.den == bound.den;
    out.codeword = [enc = enc_single, L](std::span<const Fe> u) {
        const CMatrix x = encode_st(enc, u).X;
        CMatrix rep(x.rows(), x.cols() * L);
        for (std::uint32_t ell = 0; ell < L; ++ell) rep.middleCols(ell * x.cols(), x.cols()) = x;
        return rep;
    };
    return out;
}

DerivedStCode horizontal_slice(const SpaceTimeEncoder& enc_wide, std::uint32_t L)
{
    if (enc_wide.params.L != 1) throw Error(Errc::BadParams, "slicing starts from a 1-block code");
    if (enc_wide.params.n_t % L != 0) throw Error(Errc::BadParams, "L must divide the row count");
    const std::uint32_t n_t = enc_wide.params.n_t / L, T = enc_wide.params.T;
    if (T < std::uint64_t(L) * n_t) throw Error(Errc::BadParams, "horizontal slicing requires T >= L*n_t");
    const auto wide_rate = rate_descriptors(enc_wide).R;
    DerivedStCode out;
    out.n_t = n_t;
    out.T = T;
    out.L = L;
    out.d = enc_wide.params.d;
    out.R = make_rational(wide_rate.num, wide_rate.den * L);
    const auto bound = tradeoff_bound(out.n_t, out.T, out.L, out.d);
    out.optimal = out.R.num == bound.num && out.R.den == bound.den;
    out.codeword = [enc = enc_wide, L, n_t, T](std::span<const Fe> u) {
        const CMatrix x = encode_st(enc, u).X;  // (L n_t) x T
        CMatrix sliced(n_t, std::int64_t(L) * T);
        for (std::uint32_t ell = 0; ell < L; ++ell)
            sliced.middleCols(ell * T, T) = x.middleRows(ell * n_t, n_t);
        return sliced;
    };
    return out;
}

DerivedStCode vertical_slice(const SpaceTimeEncoder& enc_tall, std::uint32_t L)
{
    if (enc_tall.params.L != 1) throw Error(Errc::BadParams, "slicing starts from a 1-block code");
    if (enc_tall.params.T % L != 0) throw Error(Errc::BadParams, "L must divide the column count");
    const std::uint32_t n_t = enc_tall.params.n_t, T = enc_tall.params.T / L;
    if (n_t < std::uint64_t(L) * T) throw Error(Errc::BadParams, "vertical slicing requires n_t >= L*T");
    // The tall code already spans LT channel uses, so slicing leaves R as is.
    const auto tall_rate = rate_descriptors(enc_tall).R;
    DerivedStCode out;
    out.n_t = n_t;
    out.T = T;
    out.L = L;
    out.d = enc_tall.params.d;
    out.R = tall_rate;
    const auto bound = tradeoff_bound(out.n_t, out.T, out.L, out.d);
    out.optimal = out.R.num == bound.num && out.R.den == bound.den;
    out.codeword = [enc = enc_tall, L, T](std::span<const Fe> u) {
        return encode_st(enc, u).X;  // columns already laid out as L blocks of T
    };
    return out;
}

}  // namespace srst
