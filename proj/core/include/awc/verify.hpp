#ifndef AWC_VERIFY_HPP
#define AWC_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace awc::verify {

struct CheckResult {
    std::string name;
    std::string statement; // the identity being verified
    int cases = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

/* The ten acceptance criteria, deterministic for a given seed. */
std::vector<CheckResult> run_acceptance(std::uint64_t seed);

/* Acceptance criteria plus the per-module invariant battery.  When
 * tol_override is set it replaces every item tolerance (used by the CLI to
 * demonstrate designed failures). */
std::vector<CheckResult> run_suite(std::uint64_t seed,
                                   std::optional<double> tol_override = std::nullopt);

/* Names and statements without running anything (CLI --list). */
std::vector<CheckResult> list_suite();

} // namespace awc::verify

#endif
