#include "stieltjes/mpoly.hpp"

#include "stieltjes/error.hpp"
#include "stieltjes/matrix.hpp"

#include <sstream>

namespace stieltjes {

MPoly MPoly::constant(std::size_t nvars, const BigRat& c) {
    return term(nvars, c, Exponents(nvars, 0));
}

MPoly MPoly::variable(std::size_t nvars, std::size_t index) {
    Exponents e(nvars, 0);
    e.at(index) = 1;
    return term(nvars, 1, e);
}

MPoly MPoly::term(std::size_t nvars, const BigRat& c, Exponents exps) {
    if (exps.size() != nvars) fail("DomainError", "exponent vector length differs from variable count");
    MPoly p(nvars);
    p.add_term(exps, c);
    return p;
}

void MPoly::add_term(const Exponents& e, const BigRat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int MPoly::degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

MPoly MPoly::coeff_in(std::size_t var, int k) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] != k) continue;
        Exponents f = e;
        f[var] = 0;
        r.add_term(f, c);
    }
    return r;
}

BigRat MPoly::eval(const std::vector<BigRat>& point) const {
    BigRat acc = 0;
    for (const auto& [e, c] : terms_) {
        BigRat t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i]) t *= pow(point.at(i), e[i]);
        acc += t;
    }
    return acc;
}

Poly MPoly::restrict_to(std::size_t var, const std::vector<BigRat>& point) const {
    std::vector<BigRat> c(static_cast<std::size_t>(std::max(0, degree_in(var) + 1)));
    for (const auto& [e, coef] : terms_) {
        BigRat t = coef;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (i != var && e[i]) t *= pow(point.at(i), e[i]);
        c[static_cast<std::size_t>(e[var])] += t;
    }
    return Poly(std::move(c));
}

MPoly MPoly::normalized() const {
    if (is_zero()) return *this;
    BigInt g = 0, l = 1;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    BigRat f(l, g);
    f.canonicalize();
    if (sgn(terms_.rbegin()->second) < 0) f = -f;
    return *this * f;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            MPoly::Exponents e(a.nvars_);
            for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MPoly operator*(MPoly a, const BigRat& c) {
    if (c == 0) return MPoly(a.nvars_);
    for (auto& [e, v] : a.terms_) v *= c;
    return a;
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        first = false;
        BigRat mag = abs(c);
        bool any = false;
        for (std::size_t i = 0; i < nvars_; ++i) any = any || e[i] != 0;
        if (mag != 1 || !any) os << mag.get_str() << (any ? "*" : "");
        bool firstvar = true;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (!e[i]) continue;
            if (!firstvar) os << "*";
            firstvar = false;
            os << names.at(i);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

MPoly pow(const MPoly& p, unsigned exponent) {
    MPoly result = MPoly::constant(p.nvars(), 1);
    for (unsigned i = 0; i < exponent; ++i) result = result * p;
    return result;
}

MPoly resultant(const MPoly& p, const MPoly& q, std::size_t var) {
    if (p.is_zero() || q.is_zero()) fail("ZeroPolynomial", "resultant of a zero polynomial");
    const int m = p.degree_in(var);
    const int n = q.degree_in(var);
    const std::size_t nv = p.nvars();
    const std::size_t size = static_cast<std::size_t>(m + n);
    if (size == 0) return MPoly::constant(nv, 1);
    const MPoly zero(nv);
    std::vector<std::vector<MPoly>> syl(size, std::vector<MPoly>(size, zero));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) syl[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + k)] = p.coeff_in(var, k);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) syl[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + k)] = q.coeff_in(var, k);
    return det_expand(syl, zero, MPoly::constant(nv, 1));
}

bool proportional(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.normalized() == b.normalized();
}

} // namespace stieltjes
