#pragma once

#include "stieltjes/bigrat.hpp"
#include "stieltjes/poly.hpp"
#include "stieltjes/sequences.hpp"
#include "stieltjes/series.hpp"

#include <optional>
#include <vector>

namespace stieltjes {

// a_0 / (1 - alpha_1 x / (1 - alpha_2 x / (1 - ...)));  alphas[0] = a_0.
struct SFrac {
    std::vector<BigRat> alphas;
    bool terminated = false;  // the fraction is finite: every later alpha is 0
};

// beta_0 / (1 - gamma_0 x - beta_1 x^2 / (1 - gamma_1 x - ...));  betas[0] = beta_0 = a_0.
struct JFrac {
    std::vector<BigRat> gammas;
    std::vector<BigRat> betas;  // betas.size() == gammas.size()
};

// Quotient-difference scheme in exact arithmetic. N terms give alphas[0..N-1].
// Throws ZeroDivisor when a divisor vanishes while the remaining data is not
// that of a finite fraction.
SFrac extract_sfrac(const MomentSeq& seq);
TruncSeries sfrac_to_series(const SFrac& cf, int n_terms);

// Monic orthogonal polynomial recurrence for the functional x^k -> a_k.
// Throws ZeroHankelMinor(n) when Delta_0^n vanishes.
JFrac extract_jfrac(const MomentSeq& seq);
TruncSeries jfrac_to_series(const JFrac& cf, int n_terms);

// Denominator of the convergent that keeps alpha_1..alpha_n (later alphas set to 0).
Poly convergent_denominator(const SFrac& cf, int n);

struct BoundEntry {
    int n;
    double value;
};

struct BoundsReport {
    double ratio_bound = 0;                  // max a_n / a_{n-1}
    int ratio_index = 0;
    std::vector<BoundEntry> truncated_cf;    // mu_n
    std::vector<BoundEntry> monotone_tail;   // (sqrt(alpha_n) + sqrt(alpha_{n-1}))^2
    bool mu_nondecreasing = true;
    bool assumes_interleaved_monotone = true;  // needed for monotone_tail to be a bound

    double best_truncated() const;
    double best_monotone() const;
};

// Throws NegativeAlpha if an extracted alpha is negative.
BoundsReport growth_bounds(const MomentSeq& seq, const BigRat& root_precision = rat(1, 1000000));

struct AlphaRow {
    int n;
    double n_pow;  // n^(-2/3)
    BigRat alpha;
    bool odd;
};
std::vector<AlphaRow> alpha_scaling_data(const SFrac& cf);

} // namespace stieltjes
