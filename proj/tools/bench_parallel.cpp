// Compares the OpenMP kernels against their serial reference implementations:
// the brute-force minimum-distance oracle and the Monte Carlo sweep engine.
// Both paths must produce identical results; the table reports the speedup.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "srst/sim.hpp"

using namespace srst;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

SpaceTimeEncoder desk_encoder() {
    StParams params;
    params.n_t = params.T = params.L = 2;
    params.d = 3;
    params.kind = StKind::SRB;
    params.constellation = Constellation::build(LatticeKind::Gaussian, {4, 1});
    return build_encoder(std::move(params));
}

}  // namespace

int main() {
    std::printf("threads available: %d\n\n", omp_get_max_threads());

    {
        const auto ctx = FieldCtx::build(5, 2);
        const Partition part = Partition::equal(4, 2);
        const SumRankCode code = lrs_generator(ctx, part, 4);  // 390625 codewords

        auto t0 = Clock::now();
        const auto d_serial = min_sum_rank_distance_serial(*ctx, code.G, code.k, code.N, part);
        const double ts = seconds_since(t0);

        t0 = Clock::now();
        const auto d_parallel = min_sum_rank_distance(*ctx, code.G, code.k, code.N, part);
        const double tp = seconds_since(t0);

        std::printf("min-distance oracle  [4,4]_{25}: serial %.3fs  parallel %.3fs  speedup %.2fx  %s\n",
                    ts, tp, ts / tp, d_serial == d_parallel ? "(results agree)" : "(MISMATCH)");
        if (d_serial != d_parallel) return 1;
    }

    {
        const auto enc = desk_encoder();
        SimConfig cfg;
        cfg.snr_grid_db = {10.0};
        cfg.trials_per_point = 4000;
        cfg.seed = 7;
        cfg.decoder = DecoderConfig::all_on(DecoderConfig::FutureCost::Eigenbound);

        cfg.serial = true;
        auto t0 = Clock::now();
        const auto rows_serial = run_sweep(enc, cfg);
        const double ts = seconds_since(t0);

        cfg.serial = false;
        t0 = Clock::now();
        const auto rows_parallel = run_sweep(enc, cfg);
        const double tp = seconds_since(t0);

        const bool agree = rows_serial[0].errors == rows_parallel[0].errors &&
                           rows_serial[0].nodes_sum == rows_parallel[0].nodes_sum &&
                           rows_serial[0].peak_sum == rows_parallel[0].peak_sum;
        std::printf("monte-carlo sweep   17-Gauss d=3: serial %.3fs  parallel %.3fs  speedup %.2fx  %s\n",
                    ts, tp, ts / tp, agree ? "(results agree)" : "(MISMATCH)");
        if (!agree) return 1;
    }
    return 0;
}
