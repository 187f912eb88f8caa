#pragma once

#include "stieltjes/bigrat.hpp"
#include "stieltjes/poly.hpp"

#include <limits>
#include <string>
#include <vector>

namespace stieltjes {

// Truncated Laurent series  sum_{e = low}^{order-1} c_e x^e + O(x^order).
// An order of kExact marks a finite exact object (a Laurent polynomial).
// Every operation reports only coefficients it can actually certify, so
// the order of a result is the minimum that the operands justify.
class TruncSeries {
public:
    static constexpr int kExact = std::numeric_limits<int>::max() / 4;

    TruncSeries() = default;  // exact zero
    TruncSeries(int low, std::vector<BigRat> coeffs, int order);

    static TruncSeries from_poly(const Poly& p, int order = kExact);
    static TruncSeries constant(const BigRat& c, int order = kExact);
    static TruncSeries monomial(const BigRat& c, int exponent, int order = kExact);
    // Power series whose coefficients are terms[0..n-1], with order n.
    static TruncSeries from_terms(const std::vector<BigRat>& terms);

    int low() const { return low_; }
    int order() const { return order_; }
    bool exact() const { return order_ >= kExact; }

    // Coefficient of x^e; throws InsufficientOrder at or beyond the order.
    BigRat coeff(int e) const;
    // Coefficients of x^from .. x^(to-1).
    std::vector<BigRat> coeffs(int from, int to) const;
    // First exponent with a nonzero coefficient, or order() if none is known.
    int valuation() const;
    bool is_zero() const { return valuation() >= order_; }

    TruncSeries truncated(int order) const;
    TruncSeries shifted(int k) const;  // x^k * this
    TruncSeries derivative() const;
    TruncSeries inverse() const;
    TruncSeries inverse(int order) const;
    // this(inner); requires valuation() >= 0 and inner.valuation() >= 1.
    TruncSeries compose(const TruncSeries& inner) const;
    // Largest finite-order view with coefficients up to x^(order-1).
    Poly to_poly_truncated() const;

    TruncSeries& operator+=(const TruncSeries& o);
    TruncSeries& operator-=(const TruncSeries& o);
    TruncSeries& operator*=(const BigRat& c);

    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator/(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(TruncSeries a, const BigRat& c) { return a *= c; }
    friend TruncSeries operator*(const BigRat& c, TruncSeries a) { return a *= c; }
    friend TruncSeries operator-(TruncSeries a);

    // Equality of certified coefficients on the common range.
    bool agrees_with(const TruncSeries& o) const;

    std::string to_string(const std::string& var = "x", int max_terms = 12) const;

private:
    void normalize();
    const BigRat& raw(int e) const;

    int low_ = 0;
    std::vector<BigRat> c_;
    int order_ = kExact;
};

// Saturating addition on orders so that kExact stays exact.
int add_orders(int a, int b);

// s^p for rational p via Newton iteration on the unit part; the leading
// monomial c x^v is handled separately and must give an integer v*p and a
// rational c^p. Exact inputs need an explicit relative precision.
TruncSeries series_pow_rational(const TruncSeries& s, const BigRat& p);
TruncSeries series_pow_rational(const TruncSeries& s, const BigRat& p, int relative_terms);
TruncSeries pow(const TruncSeries& s, long exponent);

} // namespace stieltjes
