#include "stieltjes/hyp2f1.hpp"

#include "stieltjes/error.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>

namespace stieltjes {

namespace {

constexpr long kMaxTerms = 1000000;

bool nonpositive_integer(const BigRat& q) { return is_integer(q) && sgn(q) <= 0; }

bool is_pole(const Real& x) { return x <= 0 && x == floor(x); }

Real power(const Real& base, const Real& e) { return boost::multiprecision::pow(base, e); }

// Direct Gauss series; polynomial when a or b is a nonpositive integer.
Real direct_series(const Real& a, const Real& b, const Real& c, const Real& z, const Real& tol) {
    Real sum = 1;
    Real term = 1;
    for (long n = 0; n < kMaxTerms; ++n) {
        const Real ratio = (a + n) * (b + n) / ((c + n) * (n + 1));
        term *= ratio * z;
        sum += term;
        if (term == 0) return sum;
        if (abs(term) <= tol * abs(sum) && abs(ratio * z) < 1) return sum;
    }
    fail("NoConvergence", "hypergeometric series exceeded " + std::to_string(kMaxTerms) + " terms");
}

Real digamma(const Real& x) { return boost::math::digamma(x); }

// c = a + b + m with integer m >= 0; 1-z small and positive.
Real log_connection(const Real& a, const Real& b, long m, const Real& z, const Real& tol) {
    const Real c = a + b + m;
    const Real w = 1 - z;
    const Real gc = gamma_real(c);
    Real total = 0;
    if (m > 0) {
        Real finite = 0;
        Real term = 1;
        for (long n = 0; n < m; ++n) {
            finite += term;
            term *= (a + n) * (b + n) / (Real(n + 1) * Real(1 - m + n)) * w;
        }
        total += gamma_real(Real(m)) * gc * rgamma_real(a + m) * rgamma_real(b + m) * finite;
    }
    const Real lw = log(w);
    Real psi1 = digamma(Real(1));
    Real psi2 = digamma(Real(m + 1));
    Real psia = digamma(a + m);
    Real psib = digamma(b + m);
    Real coef = 1 / gamma_real(Real(m + 1));  // (a+m)_n (b+m)_n / (n! (n+m)!) w^n
    Real sum = 0;
    for (long n = 0; n < kMaxTerms; ++n) {
        const Real term = coef * (lw - psi1 - psi2 + psia + psib);
        sum += term;
        if (n > 2 && abs(term) <= tol * abs(sum)) break;
        coef *= (a + m + n) * (b + m + n) / (Real(n + 1) * Real(n + m + 1)) * w;
        psi1 += Real(1) / (n + 1);
        psi2 += Real(1) / (n + m + 1);
        psia += 1 / (a + m + n);
        psib += 1 / (b + m + n);
        if (n + 1 == kMaxTerms) fail("NoConvergence", "logarithmic connection series did not converge");
    }
    const Real sign = (m % 2 == 0) ? Real(1) : Real(-1);  // (z-1)^m = (-w)^m
    total -= sign * power(w, Real(m)) * gc * rgamma_real(a) * rgamma_real(b) * sum;
    return total;
}

Real near_one(const BigRat& a, const BigRat& b, const BigRat& c, const Real& z, const Real& tol);

Real evaluate(const BigRat& a, const BigRat& b, const BigRat& c, const Real& z, const Real& tol) {
    if (nonpositive_integer(c)) fail("DomainError", "c is a nonpositive integer");
    if (z >= 1) fail("BranchPoint", "real 2F1 needs z < 1");
    const bool terminating = nonpositive_integer(a) || nonpositive_integer(b);
    if (abs(z) <= Real("0.5") || (terminating && abs(z) <= 1)) return direct_series(to_real(a), to_real(b), to_real(c), z, tol);
    if (z < 0) {
        // Pfaff: (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)), argument in (1/3, 1)
        return power(1 - z, -to_real(a)) * evaluate(a, c - b, c, z / (z - 1), tol);
    }
    return near_one(a, b, c, z, tol);
}

Real near_one(const BigRat& a, const BigRat& b, const BigRat& c, const Real& z, const Real& tol) {
    const Real ar = to_real(a), br = to_real(b), cr = to_real(c);
    if (nonpositive_integer(a) || nonpositive_integer(b)) return direct_series(ar, br, cr, z, tol);
    const BigRat s = c - a - b;
    const Real w = 1 - z;
    if (is_integer(s)) {
        const long m = s.get_num().get_si();
        if (m >= 0) return log_connection(ar, br, m, z, tol);
        // Euler: (1-z)^(c-a-b) 2F1(c-a, c-b; c; z) turns c-a-b into a+b-c > 0
        return power(w, Real(m)) * log_connection(cr - ar, cr - br, -m, z, tol);
    }
    const Real sr = to_real(s);
    const Real gc = gamma_real(cr);
    const Real first = gc * gamma_real(sr) * rgamma_real(to_real(c - a)) * rgamma_real(to_real(c - b));
    const Real second = gc * gamma_real(-sr) * rgamma_real(ar) * rgamma_real(br);
    Real value = 0;
    if (first != 0) value += first * direct_series(ar, br, 1 - sr, w, tol);
    if (second != 0) value += second * power(w, sr) * direct_series(cr - ar, cr - br, 1 + sr, w, tol);
    return value;
}

HypParams canonical(const HypParams& p) {
    if (p.b < p.a) return {p.b, p.a, p.c};
    return p;
}

} // namespace

Real to_real(const BigRat& q) { return Real(q.get_num().get_str()) / Real(q.get_den().get_str()); }

Real real_pi() { return boost::math::constants::pi<Real>(); }

Real gamma_real(const Real& x) {
    if (is_pole(x)) fail("DomainError", "Gamma pole");
    return boost::math::tgamma(x);
}

Real rgamma_real(const Real& x) {
    if (is_pole(x)) return 0;
    return 1 / boost::math::tgamma(x);
}

Real gauss_2f1(const HypParams& params, const Real& z, const Real& tol) {
    const HypParams p = canonical(params);
    return evaluate(p.a, p.b, p.c, z, tol);
}

Real gauss_2f1_derivative(const HypParams& p, const Real& z, const Real& tol) {
    const HypParams up{p.a + 1, p.b + 1, p.c + 1};
    return to_real(p.a * p.b / p.c) * gauss_2f1(up, z, tol);
}

Complex hyp2f1_above_cut(const HypParams& params, const Real& x, const Real& tol) {
    const HypParams p = canonical(params);
    if (x <= 1) fail("DomainError", "above-the-cut value needs x > 1");
    const BigRat s_exact = p.c - p.a - p.b;
    if (is_integer(s_exact)) fail("IntegerExponentDegenerate", "c-a-b = " + s_exact.get_str() + " is an integer");
    const Real a = to_real(p.a), b = to_real(p.b), c = to_real(p.c), s = to_real(s_exact);
    const Real w = 1 - x;  // negative
    const Real gc = gamma_real(c);
    const Real first = gc * gamma_real(s) * rgamma_real(c - a) * rgamma_real(c - b);
    const Real second = gc * gamma_real(-s) * rgamma_real(a) * rgamma_real(b);
    // 1 - (x + i0) = (x-1) e^{-i pi}
    const Real mod = power(x - 1, s);
    const Real pi = real_pi();
    Real re = 0, im = 0;
    if (first != 0) re += first * evaluate(p.a, p.b, 1 - s_exact, w, tol);
    if (second != 0) {
        const Real f2 = evaluate(p.c - p.a, p.c - p.b, 1 + s_exact, w, tol);
        re += second * mod * cos(pi * s) * f2;
        im -= second * mod * sin(pi * s) * f2;
    }
    return Complex(re, im);
}

Real im_2f1_above_cut(const HypParams& p, const Real& x, const Real& tol) { return hyp2f1_above_cut(p, x, tol).imag(); }

Complex continue_2f1(const HypParams& p, const std::vector<Complex>& waypoints) {
    const Real a = to_real(p.a), b = to_real(p.b), c = to_real(p.c);
    const Real start("0.25");
    const Real eps("1e-48");
    Complex z(start, 0);
    Complex w(gauss_2f1(p, start, eps), 0);
    Complex dw(gauss_2f1_derivative(p, start, eps), 0);
    const Real ab = a * b;
    for (const Complex& target : waypoints) {
        while (abs(target - z) > Real("1e-45")) {
            const Real dist = std::min(abs(z), abs(z - Complex(1, 0)));
            if (dist < Real("1e-6")) fail("DomainError", "continuation path passes through a singular point");
            const Real remaining = abs(target - z);
            const Real step = std::min(remaining, Real("0.4") * dist);
            const Complex h = (target - z) * (step / remaining);
            const Complex p0 = z * (Complex(1, 0) - z);
            const Complex p1 = Complex(1, 0) - Complex(2, 0) * z;
            const Complex q0 = Complex(c, 0) - Complex(a + b + 1, 0) * z;
            const Real q1 = -(a + b + 1);
            Complex t_prev = w, t_cur = dw;  // t_0, t_1
            Complex hp = h;                  // h^k for the current k
            Complex value = w + dw * h;
            Complex deriv = dw;
            Real scale = abs(w) + abs(dw) + 1;
            for (long k = 0; k < 5000; ++k) {
                // t_{k+2} from t_{k+1} (= t_cur) and t_k (= t_prev)
                const Complex num = (p1 * Real(k * (k + 1)) + q0 * Real(k + 1)) * t_cur + Complex(Real(-k * (k - 1)) + q1 * k - ab, 0) * t_prev;
                const Complex t_next = -num / (p0 * Real((k + 2) * (k + 1)));
                deriv += t_next * Real(k + 2) * hp;
                hp *= h;
                const Complex contrib = t_next * hp;
                value += contrib;
                t_prev = t_cur;
                t_cur = t_next;
                if (k > 4 && abs(contrib) < eps * scale && abs(t_prev * hp) < eps * scale) break;
            }
            z += h;
            w = value;
            dw = deriv;
        }
    }
    return w;
}

} // namespace stieltjes
