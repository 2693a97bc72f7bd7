#ifndef SRST_VERIFY_HPP
#define SRST_VERIFY_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "srst/sim.hpp"

namespace srst {

struct SuiteResult {
    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    bool passed() const { return failures == 0 && checks > 0; }
};

/// Named property suites exercised by `verify`. Unknown names throw Usage.
/// Suites: msrd, rank-preservation, circle-enum, ml-equivalence, normalization.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = 1);
std::vector<std::string> suite_names();

// Individual suites, callable from tests.
SuiteResult verify_msrd();
SuiteResult verify_rank_preservation();
SuiteResult verify_circle_enum(std::uint64_t seed, std::uint64_t draws = 10000);
SuiteResult verify_ml_equivalence(std::uint64_t seed, std::uint64_t trials_per_snr = 1000);
SuiteResult verify_normalization(std::uint64_t seed, std::uint64_t samples = 100000);

}  // namespace srst

#endif
