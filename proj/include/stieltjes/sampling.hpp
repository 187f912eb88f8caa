#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace stieltjes {

using Rng = std::mt19937_64;

struct Histogram {
    double bin_width = 0;
    double origin = 0;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    double bin_left(std::size_t i) const { return origin + bin_width * static_cast<double>(i); }
    // counts / (total * bin_width), so the heights integrate to 1.
    std::vector<double> normalized() const;
};

// Standard complex Gaussian entries (real and imaginary parts N(0, 1/2)),
// drawn by Box-Muller from 53-bit uniforms so that streams are portable.
Eigen::MatrixXcd ginibre(int k, Rng& rng);

// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
// diag(R) moved into Q.
Eigen::MatrixXcd haar_unitary(int k, Rng& rng);

struct TraceSample {
    int k = 0;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    Histogram histogram;
    std::vector<double> mean;       // mean of |Tr U|^(2n), n = 0..n_max
    std::vector<double> std_error;  // sample std / sqrt(samples)
};

// Samples are drawn in fixed-size chunks, chunk c seeded by seed_seq{seed, c},
// and merged in chunk order: results do not depend on the thread count.
// Threads: STIELTJES_THREADS if set, else the hardware concurrency.
TraceSample trace_sq_sample(int k, std::uint64_t samples, double bin_width, std::uint64_t seed, int n_max = 4);
Histogram trace_sq_histogram(int k, std::uint64_t samples, double bin_width, std::uint64_t seed);

} // namespace stieltjes
