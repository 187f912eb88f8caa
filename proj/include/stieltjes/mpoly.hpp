#pragma once

#include "stieltjes/bigrat.hpp"
#include "stieltjes/poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace stieltjes {

// Sparse multivariate polynomial over Q in a fixed, small number of variables.
class MPoly {
public:
    using Exponents = std::vector<int>;

    explicit MPoly(std::size_t nvars = 3) : nvars_(nvars) {}
    static MPoly constant(std::size_t nvars, const BigRat& c);
    static MPoly variable(std::size_t nvars, std::size_t index);
    static MPoly term(std::size_t nvars, const BigRat& c, Exponents exps);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponents, BigRat>& terms() const { return terms_; }
    int degree_in(std::size_t var) const;
    // Coefficient of var^k, as a polynomial in the remaining variables (var exponent 0).
    MPoly coeff_in(std::size_t var, int k) const;
    BigRat eval(const std::vector<BigRat>& point) const;
    // Univariate restriction: all other variables set to the given values.
    Poly restrict_to(std::size_t var, const std::vector<BigRat>& point) const;
    // Gcd of coefficients set to 1 and leading term (lex) positive.
    MPoly normalized() const;

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(MPoly a, const BigRat& c);
    friend MPoly operator-(const MPoly& a) { return a * BigRat(-1); }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

    std::string to_string(const std::vector<std::string>& names) const;

private:
    void add_term(const Exponents& e, const BigRat& c);
    std::size_t nvars_;
    std::map<Exponents, BigRat> terms_;
};

MPoly pow(const MPoly& p, unsigned exponent);

// Resultant with respect to `var`: the literal Sylvester determinant with the
// p-block rows first and columns ordered by increasing power of `var`.
MPoly resultant(const MPoly& p, const MPoly& q, std::size_t var);

// True iff a == c * b for some nonzero rational c.
bool proportional(const MPoly& a, const MPoly& b);

} // namespace stieltjes
