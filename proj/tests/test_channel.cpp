#include <doctest.h>

#include "srst/decoder.hpp"

using namespace srst;

namespace {

SpaceTimeEncoder gauss5_encoder(std::uint32_t d = 3) {
    StParams p;
    p.n_t = p.T = p.L = 2;
    p.d = d;
    p.kind = StKind::SRB;
    p.constellation = Constellation::build(LatticeKind::Gaussian, {2, 1});
    return build_encoder(std::move(p));
}

}  // namespace

TEST_CASE("sampling is deterministic in the key") {
    const auto a = sample_channel(1234, 2, 2, 2, 2);
    const auto b = sample_channel(1234, 2, 2, 2, 2);
    for (int ell = 0; ell < 2; ++ell) {
        CHECK(a.H[ell] == b.H[ell]);
        CHECK(a.W[ell] == b.W[ell]);
    }
    const auto c = sample_channel(1235, 2, 2, 2, 2);
    CHECK(a.H[0] != c.H[0]);
}

TEST_CASE("entries are unit-variance circularly symmetric") {
    double e2 = 0, cross = 0, re = 0, im = 0;
    const int n = 1000000;
    Rng seeder(9);
    for (int i = 0; i < n; ++i) {
        Rng rng(mix_key(42, i));
        const auto z = rng.cgauss();
        e2 += std::norm(z);
        cross += z.real() * z.imag();
        re += z.real();
        im += z.imag();
    }
    CHECK(e2 / n == doctest::Approx(1.0).epsilon(0.01));
    // E[Re Im] = 0 with Var(Re Im) = 1/4 per sample: 3 sigma band
    CHECK(std::abs(cross / n) < 3.0 * 0.5 / std::sqrt(double(n)));
    CHECK(std::abs(re / n) < 3.0 / std::sqrt(2.0 * n));
    CHECK(std::abs(im / n) < 3.0 / std::sqrt(2.0 * n));
}

TEST_CASE("rho normalization") {
    // PSK: E||X||^2 = n_t L T so rho = 1/sqrt(n_t) at 0 dB
    StParams p;
    p.n_t = p.T = p.L = 2;
    p.d = 2;
    p.kind = StKind::SRB;
    p.constellation = Constellation::psk(7);
    const auto psk = build_encoder(std::move(p));
    CHECK(compute_rho(psk, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    // +10 dB multiplies rho^2 by 10
    const double r0 = compute_rho(psk, 3.0), r10 = compute_rho(psk, 13.0);
    CHECK(r10 * r10 / (r0 * r0) == doctest::Approx(10.0));

    const auto g5 = gauss5_encoder();
    double s = 0;
    for (const auto& z : g5.params.constellation.points()) s += std::norm(z);
    const double energy = 8.0 * s / 5.0;
    CHECK(compute_rho(g5, 7.0) ==
          doctest::Approx(std::sqrt(4.0 * std::pow(10.0, 0.7) / energy)));
}

TEST_CASE("transmit is the per-block affine map") {
    const auto enc = gauss5_encoder();
    ChannelRealization real;
    real.rho = 2.0;
    for (int ell = 0; ell < 2; ++ell) {
        real.H.push_back(CMatrix::Identity(2, 2));
        real.W.push_back(CMatrix::Zero(2, 2));
    }
    const auto cw = encode_st(enc, std::vector<Fe>{5, 19});
    const auto Y = transmit(real, cw.X, 2);
    for (int ell = 0; ell < 2; ++ell)
        CHECK((Y[ell] - 2.0 * cw.X.middleCols(2 * ell, 2)).cwiseAbs().maxCoeff() == 0.0);

    // X = 0 passes the noise through
    ChannelRealization noisy = sample_channel(5, 2, 2, 2, 2);
    noisy.rho = 1.0;
    const auto Y2 = transmit(noisy, CMatrix::Zero(2, 4), 2);
    for (int ell = 0; ell < 2; ++ell) CHECK(Y2[ell] == noisy.W[ell]);
}

TEST_CASE("normalization: E||rho X||^2 = L T SNR within 1%") {
    const auto enc = gauss5_encoder();
    const double snr_db = 12.0;
    const double rho = compute_rho(enc, snr_db);
    double acc = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        Rng rng(mix_key(31, i));
        std::vector<Fe> u(enc.k);
        for (auto& ui : u) ui = Fe(rng.below(enc.ctx->size()));
        acc += rho * rho * encode_st(enc, u).X.squaredNorm();
    }
    const double want = 4.0 * std::pow(10.0, snr_db / 10.0);
    CHECK(acc / n == doctest::Approx(want).epsilon(0.01));
}

TEST_CASE("near-noiseless exhaustive ML recovers every transmission") {
    const auto enc = gauss5_encoder();
    const auto book = enumerate_codebook(enc);
    int correct = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t key = mix_key(60, 0, t);
        Rng rng(mix_key(key, 0x6d));
        std::vector<Fe> u(enc.k);
        for (auto& ui : u) ui = Fe(rng.below(enc.ctx->size()));
        const auto cw = encode_st(enc, u);
        ChannelRealization real = sample_channel(key, 2, 2, 2, 2);
        real.rho = compute_rho(enc, 60.0);
        const auto Y = transmit(real, cw.X, 2);
        const auto dec = exhaustive_ml(enc, real, Y, &book);
        correct += dec.symbols == cw.symbols;
    }
    CHECK(correct == trials);
}
