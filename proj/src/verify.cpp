#include "srst/verify.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

namespace srst {

namespace {

SpaceTimeEncoder desk_encoder(std::uint32_t q, std::uint32_t d, LatticeKind kind = LatticeKind::Gaussian) {
    StParams params;
    params.n_t = params.T = params.L = 2;
    params.d = d;
    params.kind = StKind::SRB;
    params.constellation = Constellation::build(kind, find_prime(kind, q));
    return build_encoder(std::move(params));
}

}  // namespace

SuiteResult verify_msrd() {
    SuiteResult res{"msrd", 0, 0};
    const auto ctx = FieldCtx::build(5, 2);
    const Partition part = Partition::equal(4, 2);
    for (std::uint32_t k = 1; k <= 4; ++k) {
        const SumRankCode code = lrs_generator(ctx, part, k);
        ++res.checks;
        if (min_distance(code) != code.N - k + 1) ++res.failures;
    }
    return res;
}

SuiteResult verify_rank_preservation() {
    SuiteResult res{"rank-preservation", 0, 0};
    const auto con = Constellation::build(LatticeKind::Gaussian, {2, 1});
    const auto ctx = FieldCtx::build(5, 1);
    const auto& lat = con.lattice_points();

    std::uint64_t checks = 0, failures = 0;
    // All pairs of 2x2 matrices over F_5; ranks of phi-images compared in
    // exact Gaussian-integer arithmetic.
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : checks, failures)
    for (std::int64_t ci = 0; ci < 625; ++ci) {
        std::uint32_t ce[4], de[4];
        std::uint32_t x = std::uint32_t(ci);
        for (int t = 0; t < 4; ++t) {
            ce[t] = x % 5;
            x /= 5;
        }
        FqMatrix diff(2, 2);
        std::vector<LPoint> latdiff(4);
        for (std::uint32_t dj = 0; dj < 625; ++dj) {
            if (dj == std::uint64_t(ci)) continue;
            std::uint32_t y = dj;
            for (int t = 0; t < 4; ++t) {
                de[t] = y % 5;
                y /= 5;
            }
            for (int t = 0; t < 4; ++t) {
                diff.a[t] = (ce[t] + 5 - de[t]) % 5;
                latdiff[t] = lat_sub(LatticeKind::Gaussian, lat[ce[t]], lat[de[t]]);
            }
            const std::uint32_t rank_f = rank_fp(diff, 5);
            const std::uint32_t rank_c = lat_rank(LatticeKind::Gaussian, latdiff, 2, 2);
            ++checks;
            if (rank_c < rank_f) ++failures;
        }
        (void)ctx;
    }
    res.checks = checks;
    res.failures = failures;
    return res;
}

SuiteResult verify_circle_enum(std::uint64_t seed, std::uint64_t draws) {
    SuiteResult res{"circle-enum", 0, 0};
    const Constellation cons[] = {
        Constellation::build(LatticeKind::Gaussian, {4, 1}),
        Constellation::build(LatticeKind::Eisenstein, {9, 19}),
    };
    for (const auto& con : cons) {
        Rng rng(mix_key(seed, 0xc1, con.size()));
        const double span = std::max(con.x_hi() - con.x_lo(), con.y_hi() - con.y_lo());
        for (std::uint64_t it = 0; it < draws; ++it) {
            const std::complex<double> c{con.x_lo() + (con.x_hi() - con.x_lo() + 2) * rng.uniform01() - 1,
                                         con.y_lo() + (con.y_hi() - con.y_lo() + 2) * rng.uniform01() - 1};
            const double r = rng.uniform01() * span * 1.2;
            auto got = enumerate_circle(con, c, r).symbols;
            std::sort(got.begin(), got.end());
            std::vector<std::uint32_t> want;
            for (std::uint32_t z = 0; z < con.size(); ++z)
                if (std::norm(con.point(z) - c) <= r * r) want.push_back(z);
            ++res.checks;
            if (got != want) ++res.failures;
        }
    }
    return res;
}

SuiteResult verify_ml_equivalence(std::uint64_t seed, std::uint64_t trials_per_snr) {
    SuiteResult res{"ml-equivalence", 0, 0};
    const auto enc = desk_encoder(5, 3);
    const auto book = enumerate_codebook(enc);
    const double snrs[] = {0, 5, 10, 15, 20};

    std::vector<DecoderConfig> cfgs;
    cfgs.push_back(DecoderConfig::vanilla());
    {
        DecoderConfig c;
        c.future_costing = DecoderConfig::FutureCost::ColumnMin;
        cfgs.push_back(c);
    }
    {
        DecoderConfig c;
        c.future_costing = DecoderConfig::FutureCost::Eigenbound;
        cfgs.push_back(c);
    }
    {
        DecoderConfig c;
        c.spherical = true;
        cfgs.push_back(c);
    }
    {
        DecoderConfig c;
        c.spatial_perm = c.temporal_perm = true;
        cfgs.push_back(c);
    }
    cfgs.push_back(DecoderConfig::all_on(DecoderConfig::FutureCost::ColumnMin));
    cfgs.push_back(DecoderConfig::all_on(DecoderConfig::FutureCost::Eigenbound));

    std::uint64_t checks = 0, failures = 0;
    for (std::uint32_t s = 0; s < 5; ++s) {
#pragma omp parallel for schedule(dynamic) reduction(+ : checks, failures)
        for (std::int64_t trial = 0; trial < std::int64_t(trials_per_snr); ++trial) {
            const std::uint64_t key = mix_key(seed, s, trial);
            Rng rng(mix_key(key, 0x6d));
            std::vector<Fe> u(enc.k);
            for (auto& ui : u) ui = Fe(rng.below(enc.ctx->size()));
            const StCodeword cw = encode_st(enc, u);
            ChannelRealization real = sample_channel(key, 2, 2, 2, 2);
            real.rho = compute_rho(enc, snrs[s]);
            const auto Y = transmit(real, cw.X, 2);
            const auto exact = exhaustive_ml(enc, real, Y, &book);
            for (const auto& cfg : cfgs) {
                const auto got = stack_decode(enc, real, Y, cfg);
                ++checks;
                const double scale = std::max(1.0, exact.cost);
                if (std::abs(got.cost - exact.cost) > 1e-9 * scale) ++failures;
            }
        }
    }
    res.checks = checks;
    res.failures = failures;
    return res;
}

SuiteResult verify_normalization(std::uint64_t seed, std::uint64_t samples) {
    SuiteResult res{"normalization", 0, 0};
    const auto enc = desk_encoder(5, 3);
    const double snr_db = 7.0;
    const double rho = compute_rho(enc, snr_db);
    double sum = 0;
#pragma omp parallel for reduction(+ : sum)
    for (std::int64_t i = 0; i < std::int64_t(samples); ++i) {
        Rng rng(mix_key(seed, 0xe7, i));
        std::vector<Fe> u(enc.k);
        for (auto& ui : u) ui = Fe(rng.below(enc.ctx->size()));
        sum += encode_st(enc, u).X.squaredNorm();
    }
    const double lhs = rho * rho * sum / double(samples);
    const double want = double(enc.params.L) * enc.params.T * std::pow(10.0, snr_db / 10.0);
    ++res.checks;
    if (std::abs(lhs - want) > 0.01 * want) ++res.failures;
    return res;
}

std::vector<std::string> suite_names() {
    return {"msrd", "rank-preservation", "circle-enum", "ml-equivalence", "normalization"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
    if (name == "msrd") return verify_msrd();
    if (name == "rank-preservation") return verify_rank_preservation();
    if (name == "circle-enum") return verify_circle_enum(seed);
    if (name == "ml-equivalence") return verify_ml_equivalence(seed);
    if (name == "normalization") return verify_normalization(seed);
    throw Error(Errc::Usage, "unknown suite: " + name);
}

}  // namespace srst
