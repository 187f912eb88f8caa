#pragma once

#include "stieltjes/series.hpp"

#include <vector>

namespace stieltjes {

// x^(half/2) * s(x): a series whose exponents are shifted by a half-integer
// tag. Sums require matching parity of the tag; products add tags.
struct HalfSeries {
    TruncSeries series;
    int half = 0;  // 0 or 1 after normalization
    bool zero = false;

    static HalfSeries make_zero() { return HalfSeries{TruncSeries(), 0, true}; }
    static HalfSeries make_one() { return HalfSeries{TruncSeries::constant(1), 0, false}; }

    friend HalfSeries operator+(const HalfSeries& a, const HalfSeries& b);
    friend HalfSeries operator-(const HalfSeries& a, const HalfSeries& b);
    friend HalfSeries operator*(const HalfSeries& a, const HalfSeries& b);
};

// I_j(x) = sum_m x^(m + j/2) / (m! (m+j)!) for j >= 0, with terms through x^(order-1+j/2).
HalfSeries bessel_i(int j, int order);

// det [I_{|i-j|}]_{i,j < size}; throws HalfPowerResidue if the result
// carries a half-integer offset.
TruncSeries bessel_toeplitz_det(int size, int order);

} // namespace stieltjes
