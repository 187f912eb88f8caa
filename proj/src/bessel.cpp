#include "stieltjes/bessel.hpp"

#include "stieltjes/error.hpp"
#include "stieltjes/matrix.hpp"

namespace stieltjes {

namespace {
HalfSeries normalized(TruncSeries s, int half) {
    const int whole = (half >= 0) ? half / 2 : -((-half + 1) / 2);
    const int rest = half - 2 * whole;
    return HalfSeries{s.shifted(whole), rest, false};
}
} // namespace

HalfSeries operator+(const HalfSeries& a, const HalfSeries& b) {
    if (a.zero) return b;
    if (b.zero) return a;
    if (a.half != b.half) fail("HalfPowerResidue", "sum of series with integer and half-integer exponents");
    return HalfSeries{a.series + b.series, a.half, false};
}

HalfSeries operator-(const HalfSeries& a, const HalfSeries& b) {
    if (b.zero) return a;
    HalfSeries nb{-b.series, b.half, false};
    return a + nb;
}

HalfSeries operator*(const HalfSeries& a, const HalfSeries& b) {
    if (a.zero || b.zero) return HalfSeries::make_zero();
    return normalized(a.series * b.series, a.half + b.half);
}

HalfSeries bessel_i(int j, int order) {
    if (j < 0) j = -j;  // I_{-j} = I_j for integer j
    std::vector<BigRat> c;
    for (int m = 0; m < order; ++m) c.emplace_back(BigRat(1) / BigRat(factorial(static_cast<unsigned long>(m)) * factorial(static_cast<unsigned long>(m + j))));
    return normalized(TruncSeries(0, std::move(c), order), j);
}

TruncSeries bessel_toeplitz_det(int size, int order) {
    std::vector<HalfSeries> entries;
    for (int d = 0; d < size; ++d) entries.push_back(bessel_i(d, order));
    std::vector<std::vector<HalfSeries>> m(static_cast<std::size_t>(size), std::vector<HalfSeries>(static_cast<std::size_t>(size)));
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = entries[static_cast<std::size_t>(std::abs(i - j))];
    const HalfSeries det = det_expand(m, HalfSeries::make_zero(), HalfSeries::make_one());
    if (det.zero) return TruncSeries(0, {}, order);
    if (det.half != 0) fail("HalfPowerResidue", "Toeplitz determinant kept a half-integer exponent");
    return det.series.truncated(order);
}

} // namespace stieltjes
