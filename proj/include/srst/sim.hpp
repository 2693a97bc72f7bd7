#ifndef SRST_SIM_HPP
#define SRST_SIM_HPP

#include <iosfwd>
#include <string>

#include "srst/decoder.hpp"

namespace srst {

struct SimConfig {
    std::uint32_t n_r = 0;  // 0: defaults to n_t
    std::vector<double> snr_grid_db;
    std::uint64_t trials_per_point = 1000;
    std::uint64_t target_errors = 0;  // 0 disables the early-stop rule
    std::uint64_t seed = 1;
    DecoderConfig decoder;
    bool use_exhaustive = false;  // decode by exhaustive search instead
    bool timing = true;           // emit wall_seconds (zeroed when false)
    bool serial = false;          // run the serial reference engine
};

struct SnrPointResult {
    double snr_db = 0;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    std::uint64_t nodes_sum = 0;
    std::uint64_t peak_sum = 0;
    std::uint64_t restart_sum = 0;
    double wall_seconds = 0;

    double cer() const { return trials ? double(errors) / double(trials) : 0.0; }
    double avg_nodes() const { return trials ? double(nodes_sum) / double(trials) : 0.0; }
    double avg_peak() const { return trials ? double(peak_sum) / double(trials) : 0.0; }
    double avg_restarts() const { return trials ? double(restart_sum) / double(trials) : 0.0; }
};

struct TrialResult {
    bool error = false;
    DecodeStats stats;
};

/// One seeded trial: sample the message and channel from the trial key,
/// transmit, decode, compare. Pure in (enc, cfg, snr_index, trial).
TrialResult run_trial(const SpaceTimeEncoder& enc, const SimConfig& cfg, double snr_db,
                      std::uint32_t snr_index, std::uint64_t trial,
                      const std::vector<StCodeword>* book = nullptr);

/**
 * One SNR point of the sweep. Trials are processed in fixed-size chunks with
 * an OpenMP-parallel loop inside each chunk; per-trial seeding plus in-order
 * aggregation make the outcome identical for any thread count and identical
 * to the serial engine. The stopping rule is exact: the point stops at
 * min(trials_per_point, first trial count reaching target_errors).
 */
SnrPointResult run_point(const SpaceTimeEncoder& enc, const SimConfig& cfg, double snr_db,
                         std::uint32_t snr_index);

std::vector<SnrPointResult> run_sweep(const SpaceTimeEncoder& enc, const SimConfig& cfg);

/// CSV with a fixed header; floats carry 17 significant digits.
void write_csv(std::ostream& os, const std::vector<SnrPointResult>& rows, const SimConfig& cfg);
std::string csv_string(const std::vector<SnrPointResult>& rows, const SimConfig& cfg);

}  // namespace srst

#endif
