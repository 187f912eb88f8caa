#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace stieltjes {

using BigInt = mpz_class;
using BigRat = mpq_class;

BigRat rat(long num, long den = 1);
BigRat parse_rat(std::string_view text);
std::string to_string(const BigRat& q);
std::string to_string(const BigInt& z);
double to_double(const BigRat& q);
long double to_long_double(const BigRat& q);
// Exact binary value of a finite double.
BigRat from_double(double v);

BigRat pow(const BigRat& base, long exponent);
BigInt factorial(unsigned long n);
BigInt binomial(long n, long k);

// Exact k-th root of q when it is rational (principal, so q >= 0 for even k).
std::optional<BigRat> exact_root(const BigRat& q, unsigned long k);

inline int sign(const BigRat& q) { return sgn(q); }
inline bool is_integer(const BigRat& q) { return q.get_den() == 1; }

} // namespace stieltjes
