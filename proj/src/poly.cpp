#include "stieltjes/poly.hpp"

#include "stieltjes/error.hpp"

#include <sstream>

namespace stieltjes {

Poly::Poly(std::vector<BigRat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
}

Poly Poly::constant(const BigRat& c) { return Poly(std::vector<BigRat>{c}); }

Poly Poly::monomial(const BigRat& c, int degree) {
    std::vector<BigRat> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigRat Poly::coeff(int i) const {
    if (i < 0 || i > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

BigRat Poly::leading() const { return is_zero() ? BigRat(0) : coeffs_.back(); }

BigRat Poly::operator()(const BigRat& x) const {
    BigRat acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Poly::eval(double x) const {
    double acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

long double Poly::eval(long double x) const {
    long double acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_long_double(*it);
    return acc;
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<BigRat> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
    return Poly(std::move(d));
}

Poly Poly::shifted(const BigRat& a) const {
    std::vector<BigRat> c = coeffs_;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) c[j - 1] += a * c[j];
    return Poly(std::move(c));
}

Poly Poly::compose(const Poly& q) const {
    Poly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + constant(*it);
    return acc;
}

Poly Poly::reversed() const {
    std::vector<BigRat> c(coeffs_.rbegin(), coeffs_.rend());
    return Poly(std::move(c));
}

Poly Poly::monic() const {
    if (is_zero()) return {};
    return *this * (1 / leading());
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& o) {
    if (is_zero() || o.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<BigRat> r(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    coeffs_ = std::move(r);
    trim();
    return *this;
}

Poly& Poly::operator*=(const BigRat& c) {
    for (auto& v : coeffs_) v *= c;
    trim();
    return *this;
}

Poly operator-(Poly a) {
    for (auto& v : a.coeffs_) v = -v;
    return a;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigRat& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        BigRat mag = abs(c);
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        first = false;
        const bool unit = (mag == 1);
        if (!unit || i == 0) os << mag.get_str();
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) fail("DivisionByZero", "polynomial division by zero");
    std::vector<BigRat> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {Poly{}, a};
    std::vector<BigRat> quo(static_cast<std::size_t>(a.degree() - db) + 1);
    const BigRat lead_inv = 1 / b.leading();
    for (int i = a.degree(); i >= db; --i) {
        const BigRat f = rem[static_cast<std::size_t>(i)] * lead_inv;
        quo[static_cast<std::size_t>(i - db)] = f;
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b.coeff(j);
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly pow(const Poly& p, unsigned exponent) {
    Poly result = Poly::constant(1);
    Poly base = p;
    while (exponent) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent) base *= base;
    }
    return result;
}

} // namespace stieltjes
