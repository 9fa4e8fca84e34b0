#ifndef GFBT_MC_SIM_HPP
#define GFBT_MC_SIM_HPP

#include <cstdint>

#include "gfbt/linear_code.hpp"

namespace gfbt {

struct MCEstimate {
    double fer = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double ci95_half_width = 0.0;
    std::uint64_t seed = 0;
};

// Frame-error-rate estimate under brute-force ML decoding of BPSK over
// AWGN with noise standard deviation sigma per dimension. Transmits the
// all-zero codeword (linearity + channel symmetry make that lossless) and
// counts a frame error whenever some nonzero codeword is at least as close
// to the received point; ties count as errors.
//
// Trial i draws from a counter-based stream keyed by (seed, i), so the
// error count is identical for any worker count. workers = 0 picks the
// hardware concurrency. Throws std::invalid_argument for k > 16.
MCEstimate simulate_fer(const GeneratorMatrix& g, double sigma,
                        std::uint64_t trials, std::uint64_t seed,
                        int workers = 0);

}  // namespace gfbt

#endif
