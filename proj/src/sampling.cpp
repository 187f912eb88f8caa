#include "stieltjes/sampling.hpp"

#include "stieltjes/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

namespace stieltjes {

namespace {

constexpr std::uint64_t kChunk = 8192;

double uniform_open(Rng& rng) {
    // (0, 1]: avoids log(0) in Box-Muller.
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

unsigned thread_count() {
    if (const char* env = std::getenv("STIELTJES_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

struct Partial {
    std::vector<std::uint64_t> counts;
    std::vector<double> power_sums;  // sum of x^m, m = 0..2 n_max
};

Partial run_chunk(int k, std::uint64_t seed, std::uint64_t chunk, std::uint64_t count, double bin_width, std::size_t bins, int n_max) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(chunk),
                      static_cast<std::uint32_t>(chunk >> 32)};
    Rng rng(seq);
    Partial out{std::vector<std::uint64_t>(bins, 0), std::vector<double>(static_cast<std::size_t>(2 * n_max + 1), 0.0)};
    for (std::uint64_t s = 0; s < count; ++s) {
        const double x = std::norm(haar_unitary(k, rng).trace());
        const auto bin = std::min(bins - 1, static_cast<std::size_t>(x / bin_width));
        ++out.counts[bin];
        double power = 1;
        for (auto& p : out.power_sums) {
            p += power;
            power *= x;
        }
    }
    return out;
}

} // namespace

std::vector<double> Histogram::normalized() const {
    std::vector<double> out;
    out.reserve(counts.size());
    for (auto c : counts) out.push_back(total == 0 ? 0.0 : static_cast<double>(c) / (static_cast<double>(total) * bin_width));
    return out;
}

Eigen::MatrixXcd ginibre(int k, Rng& rng) {
    Eigen::MatrixXcd z(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const double radius = std::sqrt(-std::log(uniform_open(rng)));
            const double angle = 2 * std::numbers::pi * uniform_open(rng);
            z(i, j) = std::polar(radius, angle);
        }
    }
    return z;
}

Eigen::MatrixXcd haar_unitary(int k, Rng& rng) {
    if (k < 1) fail("DomainError", "matrix size must be >= 1");
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre(k, rng));
    Eigen::MatrixXcd q = qr.householderQ();
    const auto& r = qr.matrixQR();
    for (int j = 0; j < k; ++j) {
        const std::complex<double> d = r(j, j);
        const double m = std::abs(d);
        q.col(j) *= m == 0 ? std::complex<double>(1) : d / m;
    }
    return q;
}

TraceSample trace_sq_sample(int k, std::uint64_t samples, double bin_width, std::uint64_t seed, int n_max) {
    if (k < 1) fail("DomainError", "matrix size must be >= 1");
    if (samples < 1) fail("DomainError", "need at least one sample");
    if (!(bin_width > 0)) fail("DomainError", "bin width must be positive");
    if (n_max < 0) fail("DomainError", "n_max must be >= 0");
    const double top = static_cast<double>(k) * k;
    const auto bins = static_cast<std::size_t>(std::ceil(top / bin_width - 1e-9));
    const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<Partial> partials(chunks);
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(thread_count(), chunks));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t c = w; c < chunks; c += workers) {
                    const std::uint64_t count = std::min(kChunk, samples - c * kChunk);
                    partials[c] = run_chunk(k, seed, c, count, bin_width, bins, n_max);
                }
            });
        }
    }
    TraceSample out;
    out.k = k;
    out.seed = seed;
    out.samples = samples;
    out.histogram.bin_width = bin_width;
    out.histogram.counts.assign(bins, 0);
    out.histogram.total = samples;
    std::vector<double> sums(static_cast<std::size_t>(2 * n_max + 1), 0.0);
    for (const auto& p : partials) {
        for (std::size_t i = 0; i < bins; ++i) out.histogram.counts[i] += p.counts[i];
        for (std::size_t m = 0; m < sums.size(); ++m) sums[m] += p.power_sums[m];
    }
    const double count = static_cast<double>(samples);
    for (int n = 0; n <= n_max; ++n) {
        const double mean = sums[static_cast<std::size_t>(n)] / count;
        const double second = sums[static_cast<std::size_t>(2 * n)] / count;
        const double variance = samples > 1 ? std::max(0.0, (second - mean * mean) * count / (count - 1)) : 0.0;
        out.mean.push_back(mean);
        out.std_error.push_back(std::sqrt(variance / count));
    }
    return out;
}

Histogram trace_sq_histogram(int k, std::uint64_t samples, double bin_width, std::uint64_t seed) {
    return trace_sq_sample(k, samples, bin_width, seed, 0).histogram;
}

} // namespace stieltjes
