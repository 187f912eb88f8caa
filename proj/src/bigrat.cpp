#include "stieltjes/bigrat.hpp"

#include "stieltjes/error.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace stieltjes {

BigRat rat(long num, long den) {
    if (den == 0) fail("DivisionByZero", "zero denominator");
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

BigRat parse_rat(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    if (s.empty()) fail("ParseError", "empty rational literal");
    BigRat q;
    if (q.set_str(s, 10) != 0) fail("ParseError", "not a rational literal: '" + s + "'");
    if (q.get_den() == 0) fail("ParseError", "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const BigRat& q) { return q.get_str(); }
std::string to_string(const BigInt& z) { return z.get_str(); }

double to_double(const BigRat& q) { return mpq_get_d(q.get_mpq_t()); }

long double to_long_double(const BigRat& q) {
    // mpq_get_d truncates to double; split into a double head and a double tail.
    const double head = to_double(q);
    if (!std::isfinite(head) || head == 0.0) return head;
    const BigRat rest = q - from_double(head);
    return static_cast<long double>(head) + static_cast<long double>(to_double(rest));
}

BigRat from_double(double v) {
    if (!std::isfinite(v)) fail("DomainError", "non-finite value cannot be made exact");
    BigRat q(v);
    q.canonicalize();
    return q;
}

BigRat pow(const BigRat& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) fail("DivisionByZero", "zero to a negative power");
        BigRat inv = 1 / base;
        return pow(inv, -exponent);
    }
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt binomial(long n, long k) {
    if (k < 0) return 0;
    BigInt r;
    if (n >= 0) {
        if (k > n) return 0;
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    } else {
        BigInt nn = n;
        mpz_bin_ui(r.get_mpz_t(), nn.get_mpz_t(), static_cast<unsigned long>(k));
    }
    return r;
}

namespace {
std::optional<BigInt> exact_int_root(const BigInt& z, unsigned long k) {
    BigInt r;
    if (mpz_root(r.get_mpz_t(), z.get_mpz_t(), k) == 0) return std::nullopt;
    return r;
}
} // namespace

std::optional<BigRat> exact_root(const BigRat& q, unsigned long k) {
    if (k == 0) fail("DomainError", "zeroth root");
    if (sgn(q) < 0 && k % 2 == 0) return std::nullopt;
    auto num = exact_int_root(q.get_num(), k);
    auto den = exact_int_root(q.get_den(), k);
    if (!num || !den) return std::nullopt;
    BigRat r(*num, *den);
    r.canonicalize();
    return r;
}

} // namespace stieltjes
