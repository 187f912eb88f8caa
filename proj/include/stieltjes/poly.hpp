#pragma once

#include "stieltjes/bigrat.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace stieltjes {

// Dense univariate polynomial over Q; coeffs[i] multiplies x^i.
// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<BigRat> coeffs);
    Poly(std::initializer_list<long> coeffs);
    static Poly constant(const BigRat& c);
    static Poly monomial(const BigRat& c, int degree);
    static Poly x() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<BigRat>& coeffs() const { return coeffs_; }
    BigRat coeff(int i) const;
    BigRat leading() const;

    BigRat operator()(const BigRat& x) const;
    double eval(double x) const;
    long double eval(long double x) const;

    Poly derivative() const;
    // p(x + a), computed by repeated synthetic division.
    Poly shifted(const BigRat& a) const;
    // p(q(x)).
    Poly compose(const Poly& q) const;
    // Coefficients reversed: x^deg p(1/x).
    Poly reversed() const;
    Poly monic() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const BigRat& c);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
    friend Poly operator*(Poly a, const BigRat& c) { return a *= c; }
    friend Poly operator*(const BigRat& c, Poly a) { return a *= c; }
    friend Poly operator-(Poly a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<BigRat> coeffs_;
};

// Quotient and remainder of Euclidean division; throws on zero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);
Poly pow(const Poly& p, unsigned exponent);

} // namespace stieltjes
