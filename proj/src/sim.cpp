#include "srst/sim.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace srst {

namespace {

constexpr std::uint64_t kChunk = 1024;

std::uint32_t receive_antennas(const SpaceTimeEncoder& enc, const SimConfig& cfg) {
    return cfg.n_r ? cfg.n_r : enc.params.n_t;
}

}  // namespace

TrialResult run_trial(const SpaceTimeEncoder& enc, const SimConfig& cfg, double snr_db,
                      std::uint32_t snr_index, std::uint64_t trial,
                      const std::vector<StCodeword>* book) {
    const std::uint64_t key = mix_key(cfg.seed, snr_index, trial);
    Rng rng(mix_key(key, 0x6d));

    std::vector<Fe> u(enc.k);
    for (auto& ui : u) ui = Fe(rng.below(enc.ctx->size()));
    const StCodeword cw = encode_st(enc, u);

    ChannelRealization real =
        sample_channel(key, receive_antennas(enc, cfg), enc.params.n_t, enc.params.T, enc.params.L);
    real.snr_linear = std::pow(10.0, snr_db / 10.0);
    real.rho = compute_rho(enc, snr_db);
    const auto Y = transmit(real, cw.X, enc.params.T);

    DecodeResult dec;
    if (cfg.use_exhaustive) {
        dec = exhaustive_ml(enc, real, Y, book);
    } else {
        dec = stack_decode(enc, real, Y, cfg.decoder);
    }
    TrialResult out;
    out.error = dec.symbols != cw.symbols;
    out.stats = dec.stats;
    return out;
}

SnrPointResult run_point(const SpaceTimeEncoder& enc, const SimConfig& cfg, double snr_db,
                         std::uint32_t snr_index) {
    SnrPointResult row;
    row.snr_db = snr_db;
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<StCodeword> book;
    const std::vector<StCodeword>* book_ptr = nullptr;
    if (cfg.use_exhaustive) {
        book = enumerate_codebook(enc);
        book_ptr = &book;
    }

    std::vector<TrialResult> chunk(kChunk);
    std::uint64_t done = 0;
    bool stop = false;
    while (!stop && done < cfg.trials_per_point) {
        const std::uint64_t count = std::min(kChunk, cfg.trials_per_point - done);
        // Exceptions may not unwind out of the parallel region; record the
        // first failing trial and rethrow with its index afterwards.
        std::int64_t failed_trial = -1;
        std::string failure;
        Errc failure_code = Errc::BadParams;
        if (cfg.serial) {
            for (std::uint64_t i = 0; i < count; ++i)
                chunk[i] = run_trial(enc, cfg, snr_db, snr_index, done + i, book_ptr);
        } else {
#pragma omp parallel for schedule(dynamic)
            for (std::int64_t i = 0; i < std::int64_t(count); ++i) {
                try {
                    chunk[i] = run_trial(enc, cfg, snr_db, snr_index, done + i, book_ptr);
                } catch (const std::exception& e) {
#pragma omp critical
                    if (failed_trial < 0 || std::int64_t(done) + i < failed_trial) {
                        failed_trial = std::int64_t(done) + i;
                        failure = e.what();
                        const auto* err = dynamic_cast<const Error*>(&e);
                        failure_code = err ? err->code() : Errc::BadParams;
                    }
                }
            }
            if (failed_trial >= 0)
                throw Error(failure_code, "trial " + std::to_string(failed_trial) +
                                              " at snr_db=" + std::to_string(snr_db) +
                                              " failed: " + failure);
        }
        // In-order fold; results beyond the stopping trial are discarded so
        // the aggregate is independent of chunking and thread count.
        for (std::uint64_t i = 0; i < count; ++i) {
            const auto& tr = chunk[i];
            ++row.trials;
            row.errors += tr.error;
            row.nodes_sum += tr.stats.nodes_visited;
            row.peak_sum += tr.stats.peak_stack;
            row.restart_sum += tr.stats.restarts;
            if (cfg.target_errors && row.errors >= cfg.target_errors) {
                stop = true;
                break;
            }
        }
        done += count;
    }

    row.wall_seconds =
        cfg.timing ? std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() : 0.0;
    return row;
}

std::vector<SnrPointResult> run_sweep(const SpaceTimeEncoder& enc, const SimConfig& cfg) {
    if (cfg.snr_grid_db.empty()) throw Error(Errc::BadParams, "SNR grid is empty");
    if (cfg.trials_per_point < 1) throw Error(Errc::BadParams, "need at least one trial");
    if (receive_antennas(enc, cfg) < enc.params.n_t)
        throw Error(Errc::BadParams, "simulator requires n_r >= n_t");
    if (enc.transposed && !cfg.use_exhaustive)
        throw Error(Errc::BadParams,
                    "tree decoding expects the SRB layout (T <= n_t); use --exhaustive for SRA codes");
    std::vector<SnrPointResult> rows;
    rows.reserve(cfg.snr_grid_db.size());
    for (std::uint32_t s = 0; s < cfg.snr_grid_db.size(); ++s)
        rows.push_back(run_point(enc, cfg, cfg.snr_grid_db[s], s));
    return rows;
}

void write_csv(std::ostream& os, const std::vector<SnrPointResult>& rows, const SimConfig& cfg) {
    os << "snr_db,trials,errors,cer,avg_nodes_visited,avg_peak_stack,avg_restarts,wall_seconds,seed\n";
    char buf[512];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%llu,%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%llu\n",
                      r.snr_db, (unsigned long long)r.trials, (unsigned long long)r.errors, r.cer(),
                      r.avg_nodes(), r.avg_peak(), r.avg_restarts(), r.wall_seconds,
                      (unsigned long long)cfg.seed);
        os << buf;
    }
}

std::string csv_string(const std::vector<SnrPointResult>& rows, const SimConfig& cfg) {
    std::ostringstream ss;
    write_csv(ss, rows, cfg);
    return ss.str();
}

}  // namespace srst
