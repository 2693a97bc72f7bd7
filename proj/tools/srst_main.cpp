#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>

#include "srst/verify.hpp"

using namespace srst;

namespace {

Constellation parse_constellation(const std::string& spec) {
    const auto dash = spec.find('-');
    if (dash == std::string::npos)
        throw Error(Errc::Usage, "constellation must look like 17-gauss, 271-eis or 7-psk");
    const std::uint64_t p = std::stoull(spec.substr(0, dash));
    std::string kind = spec.substr(dash + 1);
    for (auto& ch : kind) ch = char(std::tolower(ch));
    if (kind == "psk") return Constellation::psk(std::uint32_t(p));
    const LatticeKind lat = (kind == "gauss" || kind == "gaussian") ? LatticeKind::Gaussian
                            : (kind == "eis" || kind == "eisenstein")
                                ? LatticeKind::Eisenstein
                                : throw Error(Errc::Usage, "unknown constellation kind: " + kind);
    const LPoint pi = find_prime(lat, p);
    if (lat_norm(lat, pi) != p)
        throw Error(Errc::Usage, "no " + kind + " constellation of size " + std::to_string(p) +
                                     "; nearest admissible size is " + std::to_string(lat_norm(lat, pi)));
    return Constellation::build(lat, pi);
}

DecoderConfig parse_decoder(const std::string& spec, double alpha, double delta,
                            std::uint64_t capacity) {
    DecoderConfig cfg;
    cfg.alpha = alpha;
    cfg.delta = delta;
    cfg.stack_capacity = capacity;
    std::size_t pos = 0;
    while (pos <= spec.size() && !spec.empty()) {
        const auto comma = spec.find(',', pos);
        std::string tok = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        for (auto& ch : tok) ch = char(std::tolower(ch));
        if (tok == "vanilla" || tok.empty()) {
        } else if (tok == "columnmin" || tok == "column-min") {
            cfg.future_costing = DecoderConfig::FutureCost::ColumnMin;
        } else if (tok == "eigenbound" || tok == "eigen") {
            cfg.future_costing = DecoderConfig::FutureCost::Eigenbound;
        } else if (tok == "sphere" || tok == "spherical") {
            cfg.spherical = true;
        } else if (tok == "spatial") {
            cfg.spatial_perm = true;
        } else if (tok == "temporal") {
            cfg.temporal_perm = true;
        } else if (tok == "perms") {
            cfg.spatial_perm = cfg.temporal_perm = true;
        } else if (tok == "all") {
            cfg = DecoderConfig::all_on(DecoderConfig::FutureCost::ColumnMin);
            cfg.alpha = alpha;
            cfg.delta = delta;
            cfg.stack_capacity = capacity;
        } else {
            throw Error(Errc::Usage, "unknown decoder token: " + tok);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return cfg;
}

struct CodeArgs {
    std::uint32_t n_t = 2, T = 2, L = 2, d = 3;
    std::string constellation = "17-gauss";
    std::string construction = "auto";
};

void add_code_options(CLI::App* cmd, CodeArgs& args) {
    cmd->add_option("--nt", args.n_t, "transmit antennas");
    cmd->add_option("--T", args.T, "fading block length");
    cmd->add_option("--L", args.L, "fading blocks per codeword");
    cmd->add_option("-d,--diversity", args.d, "transmit diversity gain");
    cmd->add_option("--constellation", args.constellation,
                    "constellation spec: <p>-gauss | <p>-eis | <p>-psk");
    cmd->add_option("--construction", args.construction, "sra | srb | auto");
}

SpaceTimeEncoder make_encoder(const CodeArgs& args) {
    StParams params;
    params.n_t = args.n_t;
    params.T = args.T;
    params.L = args.L;
    params.d = args.d;
    std::string c = args.construction;
    for (auto& ch : c) ch = char(std::tolower(ch));
    if (c == "sra") {
        params.kind = StKind::SRA;
    } else if (c == "srb") {
        params.kind = StKind::SRB;
    } else {
        params.kind = args.T >= args.n_t && args.T != args.n_t ? StKind::SRA : StKind::SRB;
    }
    params.constellation = parse_constellation(args.constellation);
    return build_encoder(std::move(params));
}

int cmd_codegen(const CodeArgs& args) {
    const SpaceTimeEncoder enc = make_encoder(args);
    const RateInfo rate = rate_descriptors(enc);
    const Rational bound = tradeoff_bound(args.n_t, args.T, args.L, args.d);

    std::printf("construction:      %s\n", enc.transposed ? "SRA" : "SRB");
    std::printf("constellation:     %s\n", enc.params.constellation.describe().c_str());
    std::printf("n_t=%u T=%u L=%u d=%u\n", args.n_t, args.T, args.L, args.d);
    std::printf("field:             F_%u^%u, code [%u,%u]\n", enc.ctx->p(), enc.m, enc.N, enc.k);
    if (rate.codebook_size)
        std::printf("codebook size:     %llu\n", (unsigned long long)*rate.codebook_size);
    else
        std::printf("codebook size:     2^%.6g\n", rate.log2_codebook);
    std::printf("rate R:            %lld/%lld = %.10g symbols/use\n", (long long)rate.R.num,
                (long long)rate.R.den, rate.R.value());
    std::printf("rate R_b:          %.10g bpcu\n", rate.R_b);
    std::printf("rate R_b/tx:       %.10g bpcu per antenna\n", rate.R_b_per_tx);
    std::printf("tradeoff bound:    %lld/%lld = %.10g\n", (long long)bound.num, (long long)bound.den,
                bound.value());
    std::printf("rate-diversity:    %s\n",
                rate.R.num == bound.num && rate.R.den == bound.den ? "optimal" : "suboptimal");
    if (args.d == 1) std::printf("note:              d = 1 corresponds to uncoded signalling\n");
    std::printf("expected energy:   %.10g\n", expected_energy(enc));

    bool feasible = true;
    try {
        if (enc.message_count() > 1000000) feasible = false;
    } catch (const Error&) {
        feasible = false;
    }
    if (feasible) {
        const std::uint32_t dm = min_distance(enc.code);
        std::printf("min sum-rank dist: %u (brute force) %s\n", dm,
                    dm == enc.N - enc.k + 1 ? "= N-k+1, MSRD" : "UNEXPECTED");
        if (dm != enc.N - enc.k + 1) return 1;
    } else {
        std::printf("min sum-rank dist: %u (MSRD by construction; codebook too large to enumerate)\n",
                    enc.N - enc.k + 1);
    }
    return 0;
}

struct SimArgs {
    CodeArgs code;
    std::uint32_t n_r = 0;
    std::vector<double> snr;
    std::uint64_t trials = 1000;
    std::uint64_t target_errors = 100;
    std::uint64_t seed = 1;
    std::string decoder = "vanilla";
    double alpha = 1.75, delta = 0.25;
    std::uint64_t capacity = std::uint64_t(1) << 20;
    bool exhaustive = false;
    bool no_timing = false;
    bool serial = false;
    int threads = 0;
    std::string output;
};

/// Expands `--config FILE` into the flags it stands for, in place, so flat
/// key=value files compose with command-line flags (last occurrence wins).
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string file;
        if (args[i] == "--config" && i + 1 < args.size()) {
            file = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
        } else if (args[i].rfind("--config=", 0) == 0) {
            file = args[i].substr(9);
            args.erase(args.begin() + i);
        } else {
            continue;
        }
        std::ifstream in(file);
        if (!in) throw Error(Errc::Usage, "cannot read config file: " + file);
        std::vector<std::string> extra;
        std::string line;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw Error(Errc::Usage, "config line is not key=value: " + line);
            const std::string key = trim(line.substr(0, eq));
            std::string val = trim(line.substr(eq + 1));
            // multi-value keys (e.g. snr) are space separated
            std::vector<std::string> toks;
            std::size_t pos = 0;
            while (pos <= val.size()) {
                const auto sep = val.find_first_of(" \t", pos);
                const std::string tok = val.substr(pos, sep == std::string::npos ? val.size() - pos : sep - pos);
                if (!tok.empty()) toks.push_back(tok);
                if (sep == std::string::npos) break;
                pos = sep + 1;
            }
            if (toks.size() == 1) {
                extra.push_back("--" + key + "=" + toks[0]);  // works for flags too
            } else {
                extra.push_back("--" + key);
                extra.insert(extra.end(), toks.begin(), toks.end());
            }
        }
        args.insert(args.begin() + i, extra.begin(), extra.end());
        break;
    }
    return args;
}

void add_sim_options(CLI::App* cmd, SimArgs& args) {
    cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    add_code_options(cmd, args.code);
    cmd->add_option("--nr", args.n_r, "receive antennas (default n_t)");
    cmd->add_option("--snr", args.snr, "SNR grid in dB")->required()->expected(-1);
    cmd->add_option("--trials", args.trials, "max trials per SNR point");
    cmd->add_option("--target-errors", args.target_errors,
                    "stop a point once this many errors are collected (0 = never)");
    cmd->add_option("--seed", args.seed, "sweep seed");
    cmd->add_option("--decoder", args.decoder,
                    "comma list of: vanilla,columnmin,eigenbound,sphere,spatial,temporal,perms,all");
    cmd->add_option("--alpha", args.alpha, "initial spherical threshold multiplier");
    cmd->add_option("--delta", args.delta, "threshold increment on restart");
    cmd->add_option("--stack-capacity", args.capacity, "priority queue node limit");
    cmd->add_flag("--exhaustive", args.exhaustive, "decode by exhaustive codebook search");
    cmd->add_flag("--no-timing", args.no_timing, "zero the wall_seconds column (byte-stable output)");
    cmd->add_flag("--serial", args.serial, "run the serial reference engine");
    cmd->add_option("--threads", args.threads, "OpenMP thread count (0 = default)");
    cmd->add_option("-o,--output", args.output, "write CSV here instead of stdout");
}

int run_sim(const SimArgs& args, bool bench_columns) {
    if (args.threads > 0) omp_set_num_threads(args.threads);
    const SpaceTimeEncoder enc = make_encoder(args.code);
    SimConfig cfg;
    cfg.n_r = args.n_r;
    cfg.snr_grid_db = args.snr;
    cfg.trials_per_point = args.trials;
    cfg.target_errors = args.target_errors;
    cfg.seed = args.seed;
    cfg.decoder = parse_decoder(args.decoder, args.alpha, args.delta, args.capacity);
    cfg.use_exhaustive = args.exhaustive;
    cfg.timing = !args.no_timing;
    cfg.serial = args.serial;

    const auto rows = run_sweep(enc, cfg);

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!args.output.empty()) {
        file.open(args.output, std::ios::binary);
        if (!file) throw Error(Errc::Usage, "cannot open output file: " + args.output);
        os = &file;
    }
    if (!bench_columns) {
        write_csv(*os, rows, cfg);
    } else {
        *os << "snr_db,trials,avg_nodes_visited,avg_peak_stack,avg_restarts,wall_seconds,seed\n";
        char buf[512];
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof buf, "%.17g,%llu,%.17g,%.17g,%.17g,%.17g,%llu\n", r.snr_db,
                          (unsigned long long)r.trials, r.avg_nodes(), r.avg_peak(), r.avg_restarts(),
                          r.wall_seconds, (unsigned long long)cfg.seed);
            *os << buf;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sum-rank space-time code simulator"};
    app.require_subcommand(1);

    CodeArgs codegen_args;
    auto* codegen = app.add_subcommand("codegen", "construct a code and report its parameters");
    add_code_options(codegen, codegen_args);

    SimArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "seeded CER-vs-SNR Monte Carlo sweep");
    add_sim_options(simulate, sim_args);

    SimArgs bench_args;
    auto* bench = app.add_subcommand("bench-decoder", "complexity sweep (CER columns suppressed)");
    add_sim_options(bench, bench_args);

    std::string suite;
    std::uint64_t verify_seed = 1;
    auto* verify = app.add_subcommand("verify", "run a named property suite");
    verify->add_option("suite", suite, "one of: msrd, rank-preservation, circle-enum, ml-equivalence, normalization")
        ->required();
    verify->add_option("--seed", verify_seed, "suite seed");

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11's vector parse pops from the back
        app.parse(std::move(args));
        if (codegen->parsed()) return cmd_codegen(codegen_args);
        if (simulate->parsed()) return run_sim(sim_args, false);
        if (bench->parsed()) return run_sim(bench_args, true);
        if (verify->parsed()) {
            const SuiteResult res = run_suite(suite, verify_seed);
            std::printf("%s: %llu checks, %llu failures -> %s\n", res.name.c_str(),
                        (unsigned long long)res.checks, (unsigned long long)res.failures,
                        res.passed() ? "pass" : "FAIL");
            return res.passed() ? 0 : 1;
        }
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.code() == Errc::Usage || e.code() == Errc::BadParams ? 2 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
