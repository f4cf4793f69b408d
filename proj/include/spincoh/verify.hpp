#pragma once

#include <iosfwd>

#include "spincoh/greens.hpp"
#include "spincoh/layered.hpp"

namespace spincoh {

// Nested central-difference curls of the single-mode electric reflection tensor
// (exact phase, step step_frac * d on all six coordinates), compared against the
// k-space curl construction at z = z' = d. Returns the max relative deviation.
double fd_curl_relative_error(double K, double phi, double omega, double d,
                              const LayerStack& stack, double step_frac = 1e-3);

struct VerifyOptions {
    double tol = 1e-8;        // quadrature tolerance tier
    int random_sets = 10;
    bool inject_tm_flip = false; // mutation hook: flips the TM Fresnel sign
    unsigned seed = 20240901;
};

// Runs the oracle-equivalence, identity and asymptotic-slope suites; prints one
// pass/fail line per check. Returns true when everything passed.
bool run_verification(const VerifyOptions& opt, std::ostream& os);

} // namespace spincoh
