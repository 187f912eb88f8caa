#pragma once

#include "stieltjes/bigrat.hpp"
#include "stieltjes/poly.hpp"

#include <optional>
#include <vector>

namespace stieltjes {

struct RootInterval {
    BigRat lo;
    BigRat hi;
    double midpoint() const { return to_double((lo + hi) / 2); }
};

std::vector<Poly> sturm_sequence(const Poly& p);
// Number of distinct real roots of the square-free part in (a, b].
int count_roots(const std::vector<Poly>& sturm, const BigRat& a, const BigRat& b);

// Isolating interval [lo, hi] of width <= precision containing the smallest
// positive real root of p; std::nullopt when p has no positive root.
std::optional<RootInterval> smallest_positive_root(const Poly& p, const BigRat& precision);

} // namespace stieltjes
