#ifndef SRST_CHANNEL_HPP
#define SRST_CHANNEL_HPP

#include <cstdint>

#include "srst/stcode.hpp"

namespace srst {

/// Counter-style seeded stream: the state is a SplitMix64 counter, so a
/// stream is fully determined by its 64-bit key and streams with different
/// keys are independent for simulation purposes. Keys are derived by hashing
/// (seed, snr_index, trial, ...) tuples with mix_key, which keeps every
/// trial reproducible independently of thread scheduling.
class Rng {
  public:
    explicit Rng(std::uint64_t key) : state_(key) {}
    std::uint64_t next();
    double uniform01();                    // [0, 1)
    std::uint64_t below(std::uint64_t n);  // uniform in [0, n)
    /// Circularly-symmetric complex Gaussian, unit variance (1/2 per part),
    /// via the polar Box-Muller transform.
    std::complex<double> cgauss();

  private:
    std::uint64_t state_;
};

std::uint64_t mix_key(std::uint64_t a, std::uint64_t b = 0x9e3779b97f4a7c15ULL,
                      std::uint64_t c = 0, std::uint64_t d = 0);

/// One channel use: L fading blocks with iid CN(0,1) entries.
struct ChannelRealization {
    std::vector<CMatrix> H;  // L matrices, n_r x n_t
    std::vector<CMatrix> W;  // L matrices, n_r x T
    double rho = 0;
    double snr_linear = 0;
};

/// Deterministic in `key`; block ell uses the sub-stream mix_key(key, ell).
ChannelRealization sample_channel(std::uint64_t key, std::uint32_t n_r, std::uint32_t n_t,
                                  std::uint32_t T, std::uint32_t L);

/// rho from E[||rho X||_F^2] = L*T*SNR.
double compute_rho(const SpaceTimeEncoder& enc, double snr_db);

/// Y_ell = rho H_ell X_ell + W_ell.
std::vector<CMatrix> transmit(const ChannelRealization& real, const CMatrix& X, std::uint32_t T);

}  // namespace srst

#endif
