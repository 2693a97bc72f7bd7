#include "srst/channel.hpp"

#include <cmath>

namespace srst {

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next() { return splitmix64(state_); }

double Rng::uniform01() { return double(next() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
    // Rejection to avoid modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % n;
}

std::complex<double> Rng::cgauss() {
    // sqrt(-ln u1) e^{i 2 pi u2} has E|z|^2 = 1 with independent parts of
    // variance 1/2 each.
    const double u1 = (double((next() >> 11) + 1)) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01();
    const double mag = std::sqrt(-std::log(u1));
    return {mag * std::cos(2.0 * std::numbers::pi * u2), mag * std::sin(2.0 * std::numbers::pi * u2)};
}

std::uint64_t mix_key(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    std::uint64_t s = a;
    std::uint64_t h = splitmix64(s);
    s ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= splitmix64(s);
    s ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= splitmix64(s);
    s ^= d + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= splitmix64(s);
    return h;
}

ChannelRealization sample_channel(std::uint64_t key, std::uint32_t n_r, std::uint32_t n_t,
                                  std::uint32_t T, std::uint32_t L) {
    if (n_r < 1 || n_t < 1 || T < 1 || L < 1) throw Error(Errc::BadParams, "dimensions must be >= 1");
    ChannelRealization real;
    real.H.reserve(L);
    real.W.reserve(L);
    for (std::uint32_t ell = 0; ell < L; ++ell) {
        Rng rng(mix_key(key, 0x48, ell));
        CMatrix h(n_r, n_t);
        for (std::uint32_t i = 0; i < n_r; ++i)
            for (std::uint32_t j = 0; j < n_t; ++j) h(i, j) = rng.cgauss();
        real.H.push_back(std::move(h));
        Rng rngw(mix_key(key, 0x57, ell));
        CMatrix w(n_r, T);
        for (std::uint32_t i = 0; i < n_r; ++i)
            for (std::uint32_t j = 0; j < T; ++j) w(i, j) = rngw.cgauss();
        real.W.push_back(std::move(w));
    }
    return real;
}

double compute_rho(const SpaceTimeEncoder& enc, double snr_db) {
    const double energy = expected_energy(enc);
    if (energy <= 0) throw Error(Errc::ZeroEnergy, "expected codeword energy must be positive");
    const double snr = std::pow(10.0, snr_db / 10.0);
    const double lt = double(enc.params.L) * enc.params.T;
    return std::sqrt(lt * snr / energy);
}

std::vector<CMatrix> transmit(const ChannelRealization& real, const CMatrix& X, std::uint32_t T) {
    const std::uint32_t L = std::uint32_t(real.H.size());
    if (X.cols() != std::int64_t(L) * T) throw Error(Errc::DimensionMismatch, "codeword has wrong width");
    std::vector<CMatrix> Y;
    Y.reserve(L);
    for (std::uint32_t ell = 0; ell < L; ++ell) {
        if (real.H[ell].cols() != X.rows())
            throw Error(Errc::DimensionMismatch, "channel/codeword dimension mismatch");
        Y.push_back(real.rho * real.H[ell] * X.middleCols(std::int64_t(ell) * T, T) + real.W[ell]);
    }
    return Y;
}

}  // namespace srst
