#include "stieltjes/dfinite.hpp"

#include "stieltjes/bessel.hpp"
#include "stieltjes/error.hpp"
#include "stieltjes/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace stieltjes {

DiffOp::DiffOp(std::vector<Poly> c, Poly den) : coeffs(std::move(c)), denominator(std::move(den)) {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    if (coeffs.empty()) fail("DomainError", "differential operator with no nonzero coefficient");
    if (denominator.is_zero()) fail("ZeroDivisor", "differential operator with zero denominator");
}

DiffOp DiffOp::shifted(const BigRat& x0) const {
    std::vector<Poly> c;
    c.reserve(coeffs.size());
    for (const auto& p : coeffs) c.push_back(p.shifted(x0));
    return DiffOp(std::move(c), denominator.shifted(x0));
}

std::string DiffOp::to_string(const std::string& var) const {
    std::ostringstream out;
    bool first = true;
    for (int i = order(); i >= 0; --i) {
        const Poly& c = coeffs[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        out << "(" << c.to_string(var) << ")";
        if (i > 0) out << "*D^" << i;
    }
    if (!(denominator == Poly{1})) return "(" + out.str() + ") / (" + denominator.to_string(var) + ")";
    return out.str();
}

bool proportional(const DiffOp& a, const DiffOp& b) {
    if (a.order() != b.order()) return false;
    const Poly top_a = a.leading() * b.denominator;
    const Poly top_b = b.leading() * a.denominator;
    const BigRat scale = top_b.leading() / top_a.leading();
    for (int i = 0; i <= a.order(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        if (!(a.coeffs[k] * b.denominator * scale == b.coeffs[k] * a.denominator)) return false;
    }
    return true;
}

namespace {

Poly linear(long c0, long c1) { return Poly{c0, c1}; }
Poly xpow(int k) { return Poly::monomial(1, k); }

} // namespace

DiffOp named_operator(std::string_view name) {
    const Poly x = Poly::x();
    if (name == "L2") {
        // D^2 + (5-27x)/((1-9x)x) D + (9x^2-9x+4)/(x^2(1-9x)(1-x)), cleared
        const Poly common = xpow(2) * linear(1, -9) * linear(1, -1);
        return DiffOp({Poly{4, -9, 9}, x * linear(1, -1) * linear(5, -27), common});
    }
    if (name == "L3") {
        const Poly base = linear(1, -16) * linear(1, -4);
        return DiffOp({Poly{9, -20, 32} * BigRat(4), x * Poly{11, -87, 160} * BigRat(4),
                       xpow(2) * Poly{13, -182, 448}, xpow(3) * base});
    }
    if (name == "U2") {
        const Poly base = linear(1, -16) * linear(1, -4);
        return DiffOp({linear(1, -8), xpow(2) * linear(-5, 32) * BigRat(8), xpow(2) * base * BigRat(4)});
    }
    if (name == "L4") {
        return DiffOp({Poly{-576, 1225, -2325, 900},
                       x * Poly{-649, 5708, -14643, 7200},
                       xpow(2) * Poly{-215, 3650, -14241, 8550},
                       xpow(3) * Poly{-13, 336, -1865, 1350} * BigRat(2),
                       xpow(4) * linear(-1, 1) * linear(-1, 9) * linear(-1, 25)});
    }
    if (name == "L5") {
        return DiffOp({Poly{-29160, 166912, -475344, 456192},
                       x * Poly{-6185, 82202, -343620, 425088} * BigRat(4),
                       xpow(2) * Poly{-893, 20161, -122397, 190944} * BigRat(8),
                       xpow(3) * Poly{-449, 14824, -124430, 241920} * BigRat(2),
                       xpow(4) * Poly{-25, 1106, -12232, 29376} * BigRat(2),
                       xpow(5) * linear(-1, 4) * linear(-1, 16) * linear(-1, 36)});
    }
    if (name == "L6") {
        return DiffOp({Poly{518400, -1002001, 2073337, -1887480, 396900},
                       x * Poly{483601, -4684008, 15390947, -21425184, 5953500},
                       xpow(2) * Poly{160367, -3329230, 19376513, -38766996, 13693050},
                       xpow(3) * Poly{12385, -424260, 3929062, -10985516, 4862025} * BigRat(2),
                       xpow(4) * Poly{1913, -94818, 1273932, -4858886, 2679075},
                       xpow(5) * Poly{71, -4704, 85686, -434024, 297675},
                       xpow(6) * linear(-1, 1) * linear(-1, 9) * linear(-1, 25) * linear(-1, 49)});
    }
    if (name == "A4") {
        const Poly q = Poly{-4, 0, 1} * Poly{-16, 0, 1};
        return DiffOp({Poly{-64, 0, 0, 0, 1}, x * Poly{64, 0, -32, 0, 7},
                       xpow(4) * Poly{-10, 0, 1} * BigRat(6), xpow(3) * q});
    }
    if (name == "mux2") {
        const Poly q = Poly{-4, 0, 1} * Poly{-16, 0, 1};
        return DiffOp({x * Poly{2, 0, 1} * BigRat(-96), Poly{-64, 0, 16, 0, 51},
                       -(x * Poly{-64, 0, -64, 0, 11}), xpow(2) * q});
    }
    if (name == "p4-to-mu") {
        // the order-zero coefficient carries 1/x, so everything is over x
        const Poly c2 = x * linear(4, 1) * linear(-2, 1) * linear(2, 1) * linear(-4, 1) * Poly{-1376, 0, -590, 0, 1};
        const Poly c1 = Poly{38912, 0, 10368, 0, 11280, 0, -1298, 0, 3};
        const Poly c0 = Poly{-38912, 0, -19072, 0, 2208, 0, -382, 0, 1};
        return DiffOp({c0, x * c1, x * c2}, x);
    }
    if (name == "mu4") {
        return DiffOp({linear(-2, 1) * BigRat(-12), x * linear(2, 1) * BigRat(10),
                       x * Poly{-64, -1, 2} * BigRat(-2), xpow(2) * linear(-4, 1) * linear(-16, 1)});
    }
    if (name == "Lcal2") return DiffOp({Poly{-2}, Poly{2, -4}, Poly{0, 4}, xpow(2)});
    if (name == "Lcal3") return DiffOp({Poly{-9, 9}, Poly{9, -32}, Poly{0, 23, -10}, Poly{0, 0, 10}, xpow(3)});
    if (name == "I0") return DiffOp({Poly{-1}, Poly{1}, x});
    if (name == "I1") return DiffOp({Poly{-1, -4}, Poly{0, 4}, Poly{0, 0, 4}});
    if (name == "catalan") return DiffOp({Poly{-1, 2}, Poly{0, -1, 4}});
    fail("UnknownOperator", std::string(name));
}

std::vector<std::string> operator_names() {
    return {"L2", "L3", "L4", "L5", "L6", "U2", "A4", "mux2", "p4-to-mu", "mu4", "Lcal2", "Lcal3", "I0", "I1", "catalan"};
}

TruncSeries apply_op(const DiffOp& op, const TruncSeries& s) {
    if (!s.exact() && s.order() - op.order() <= s.low())
        fail("InsufficientOrder", "series known to x^" + std::to_string(s.order() - 1) + " cannot carry an operator of order " + std::to_string(op.order()));
    TruncSeries acc;
    TruncSeries d = s;
    for (int i = 0; i <= op.order(); ++i) {
        if (i > 0) d = d.derivative();
        const Poly& c = op.coeffs[static_cast<std::size_t>(i)];
        if (!c.is_zero()) acc += TruncSeries::from_poly(c) * d;
    }
    const Poly& den = op.denominator;
    if (den == Poly{1}) return acc;
    const auto& dc = den.coeffs();
    const auto nonzero = std::count_if(dc.begin(), dc.end(), [](const BigRat& q) { return q != 0; });
    if (nonzero == 1) return acc.shifted(-den.degree()) * (1 / den.leading());
    if (acc.exact()) fail("InsufficientOrder", "exact series divided by a non-monomial denominator needs a truncation order");
    return acc / TruncSeries::from_poly(den);
}

DiffOp pullback_inverse(const DiffOp& op) {
    // f(x) = y h(y) with x = 1/y and d/dx = -y^2 d/dy; cur is the operator
    // on h that equals (d/dx)^i f.
    const int r = op.order();
    std::vector<TruncSeries> cur{TruncSeries::monomial(1, 1)};
    std::vector<TruncSeries> total(static_cast<std::size_t>(r + 1));
    const TruncSeries minus_y2 = TruncSeries::monomial(-1, 2);
    for (int i = 0; i <= r; ++i) {
        const Poly& c = op.coeffs[static_cast<std::size_t>(i)];
        if (!c.is_zero()) {
            // c(1/y) = sum_k c_k y^-k
            const TruncSeries at_inverse(-c.degree(), std::vector<BigRat>(c.coeffs().rbegin(), c.coeffs().rend()), TruncSeries::kExact);
            for (std::size_t j = 0; j < cur.size(); ++j) total[j] += at_inverse * cur[j];
        }
        if (i == r) break;
        std::vector<TruncSeries> next(cur.size() + 1);
        for (std::size_t j = 0; j < cur.size(); ++j) {
            next[j] += minus_y2 * cur[j].derivative();
            next[j + 1] += minus_y2 * cur[j];
        }
        cur = std::move(next);
    }
    int low = TruncSeries::kExact;
    for (const auto& t : total)
        if (!t.is_zero()) low = std::min(low, t.valuation());
    std::vector<Poly> coeffs;
    for (const auto& t : total) coeffs.push_back(t.is_zero() ? Poly{} : t.shifted(-low).to_poly_truncated());
    Poly g;
    for (const auto& c : coeffs)
        if (!c.is_zero()) g = gcd(g, c);
    for (auto& c : coeffs)
        if (!c.is_zero()) c = divmod(c, g).first;
    const BigRat scale = 1 / coeffs.back().leading();
    for (auto& c : coeffs) c *= scale;
    return DiffOp(std::move(coeffs));
}

std::vector<TruncSeries> local_solutions(const DiffOp& op, const BigRat& x0, int order) {
    const DiffOp local = op.shifted(x0);
    const int r = local.order();
    const BigRat lead0 = local.leading().coeff(0);
    if (lead0 == 0) fail("SingularPoint", to_string(x0) + " is a singular point of the operator");
    if (order < r) fail("InsufficientOrder", "order below the operator order");
    // t^n coefficient of sum_i c_i(t) s^(i)(t), solved for a_{n+r}
    auto falling = [](long top, int k) {
        BigInt f = 1;
        for (int j = 0; j < k; ++j) f *= top - j;
        return f;
    };
    std::vector<TruncSeries> basis;
    for (int j = 0; j < r; ++j) {
        std::vector<BigRat> a(static_cast<std::size_t>(order));
        a[static_cast<std::size_t>(j)] = 1;
        for (int n = 0; n + r < order; ++n) {
            BigRat rest = 0;
            for (int i = 0; i <= r; ++i) {
                const auto& c = local.coeffs[static_cast<std::size_t>(i)].coeffs();
                for (int m = 0; m < static_cast<int>(c.size()) && m <= n; ++m) {
                    if (i == r && m == 0) continue;
                    const BigRat& cm = c[static_cast<std::size_t>(m)];
                    if (cm == 0) continue;
                    const BigRat& am = a[static_cast<std::size_t>(n - m + i)];
                    if (am == 0) continue;
                    rest += cm * am * BigRat(falling(n - m + i, i));
                }
            }
            a[static_cast<std::size_t>(n + r)] = -rest / (lead0 * BigRat(falling(n + r, r)));
        }
        basis.push_back(TruncSeries::from_terms(a));
    }
    return basis;
}

bool gauge_equiv_check(const DiffOp& src, const DiffOp& intertwiner, const DiffOp& dst,
                       const BigRat& x0, int order) {
    const DiffOp mid = intertwiner.shifted(x0);
    const DiffOp target = dst.shifted(x0);
    if (target.leading().coeff(0) == 0) fail("SingularPoint", to_string(x0) + " is a singular point of the target operator");
    if (mid.denominator.coeff(0) == 0) fail("SingularPoint", to_string(x0) + " is a pole of the intertwiner");
    const int work = order + mid.order() + target.order();
    for (const auto& s : local_solutions(src, x0, work)) {
        const TruncSeries r = apply_op(target, apply_op(mid, s));
        if (r.order() < order) fail("InsufficientOrder", "residual certified only to x^" + std::to_string(r.order() - 1));
        if (!r.truncated(order).is_zero()) return false;
    }
    return true;
}

BigInt lis_bounded_count(int n, int k) {
    if (n < 0 || k < 0) fail("DomainError", "negative size");
    if (n == 0) return 1;
    BigInt total = 0;
    const BigInt nfact = factorial(static_cast<unsigned long>(n));
    std::vector<int> parts;
    // partitions of n with largest part <= k, parts non-increasing
    std::function<void(int, int)> walk = [&](int remaining, int cap) {
        if (remaining == 0) {
            BigInt hooks = 1;
            const int rows = static_cast<int>(parts.size());
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < parts[static_cast<std::size_t>(i)]; ++j) {
                    int below = 0;
                    for (int l = i + 1; l < rows && parts[static_cast<std::size_t>(l)] > j; ++l) ++below;
                    hooks *= parts[static_cast<std::size_t>(i)] - j + below;
                }
            const BigInt f = nfact / hooks;
            total += f * f;
            return;
        }
        for (int p = std::min(remaining, cap); p >= 1; --p) {
            parts.push_back(p);
            walk(remaining - p, p);
            parts.pop_back();
        }
    };
    walk(n, k);
    return total;
}

TruncSeries toeplitz_count_residual(int k, int n_terms) {
    const TruncSeries y = bessel_toeplitz_det(k, n_terms);
    std::vector<BigRat> diff(static_cast<std::size_t>(n_terms));
    for (int n = 0; n < n_terms; ++n) {
        const BigInt f = factorial(static_cast<unsigned long>(n));
        diff[static_cast<std::size_t>(n)] = y.coeff(n) * BigRat(f * f) - BigRat(lis_bounded_count(n, k));
    }
    return TruncSeries(0, std::move(diff), n_terms);
}

namespace {

TruncSeries ser(const Poly& p, int order) { return TruncSeries::from_poly(p, order); }

TruncSeries ratfun(const Poly& num, const Poly& den, int order) {
    return (TruncSeries::from_poly(num, order) / TruncSeries::from_poly(den)).truncated(order);
}

// p^e as a series with p(0) = 1.
TruncSeries ppow(const Poly& p, const BigRat& e, int order) {
    return series_pow_rational(TruncSeries::from_poly(p), e, order);
}

TruncSeries hyp_coeffs(const BigRat& a, const BigRat& b, const BigRat& c, int order) {
    std::vector<BigRat> t(static_cast<std::size_t>(order));
    if (order > 0) t[0] = 1;
    for (int n = 0; n + 1 < order; ++n)
        t[static_cast<std::size_t>(n + 1)] = t[static_cast<std::size_t>(n)] * (a + n) * (b + n) / ((c + n) * (n + 1));
    return TruncSeries(0, std::move(t), order);
}

// 2F1(a, b; c; arg) for a series argument without constant term.
TruncSeries hyp(const BigRat& a, const BigRat& b, const BigRat& c, const TruncSeries& arg, int order) {
    return hyp_coeffs(a, b, c, order).compose(arg.truncated(order)).truncated(order);
}

BigRat floor_rat(const BigRat& q) {
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return BigRat(f);
}

// (-1)^phase * prod p^e * y^offset * series, with (-1)^phase = exp(i pi phase)
// and phase in [0, 1), each
// radical exponent in (0, 1) and offset in [0, 1). Integer parts are folded
// into the rational series.
struct Surd {
    BigRat phase = 0;
    std::map<unsigned long, BigRat> radicals;
    BigRat offset = 0;
    TruncSeries series = TruncSeries::constant(1);

    void normalize() {
        const BigRat turns = floor_rat(phase);
        if (turns.get_num() % 2 != 0) series *= BigRat(-1);
        phase -= turns;
        for (auto it = radicals.begin(); it != radicals.end();) {
            const BigRat whole = floor_rat(it->second);
            if (whole != 0) {
                series *= pow(BigRat(static_cast<long>(it->first)), whole.get_num().get_si());
                it->second -= whole;
            }
            it = (it->second == 0) ? radicals.erase(it) : std::next(it);
        }
        const BigRat whole = floor_rat(offset);
        if (whole != 0) {
            series = series.shifted(static_cast<int>(whole.get_num().get_si()));
            offset -= whole;
        }
    }

    bool same_kind(const Surd& o) const { return phase == o.phase && radicals == o.radicals && offset == o.offset; }

    friend Surd operator*(Surd a, const Surd& b) {
        a.phase += b.phase;
        for (const auto& [p, e] : b.radicals) a.radicals[p] += e;
        a.offset += b.offset;
        a.series = a.series * b.series;
        a.normalize();
        return a;
    }
    friend Surd operator+(Surd a, const Surd& b) {
        if (!a.same_kind(b)) fail("IncompatibleTerms", "sum of terms with different algebraic constants");
        a.series += b.series;
        return a;
    }
    friend Surd operator*(Surd a, const BigRat& c) {
        a.series *= c;
        return a;
    }
};

Surd surd_of(TruncSeries s) {
    Surd out;
    out.series = std::move(s);
    return out;
}

void add_prime_powers(std::map<unsigned long, BigRat>& radicals, BigInt n, const BigRat& e) {
    for (unsigned long p = 2; n > 1; ++p) {
        if (BigInt(p) * BigInt(p) > n) {
            if (!n.fits_ulong_p()) fail("DomainError", "constant too large to factor");
            radicals[n.get_ui()] += e;
            return;
        }
        while (n % p == 0) {
            n /= p;
            radicals[p] += e;
        }
    }
}

// p(1/y)^e as a series in y.
Surd poly_at_inverse_pow(const Poly& p, const BigRat& e, int order) {
    const BigRat c = p.leading();
    Surd s;
    s.offset = -BigRat(p.degree()) * e;
    if (c < 0) s.phase = e;
    const BigRat mag = abs(c);
    add_prime_powers(s.radicals, mag.get_num(), e);
    add_prime_powers(s.radicals, mag.get_den(), -e);
    const Poly unit = p.reversed() * (1 / c);
    s.series = is_integer(e) ? pow(TruncSeries::from_poly(unit, order), e.get_num().get_si())
                             : series_pow_rational(TruncSeries::from_poly(unit), e, order);
    s.normalize();
    return s;
}

// num(1/y) / den(1/y) as a series in y; must vanish at y = 0.
TruncSeries ratfun_at_inverse(const Poly& num, const Poly& den, int order) {
    const int shift = den.degree() - num.degree();
    return (TruncSeries::from_poly(num.reversed(), order + 2) / TruncSeries::from_poly(den.reversed())).shifted(shift).truncated(order);
}

struct Report {
    IdentityCheckReport r;

    void part(const std::string& label, const TruncSeries& residual) { r.parts.emplace_back(label, residual); }

    IdentityCheckReport finish() {
        r.pass = true;
        r.residual = TruncSeries(0, {}, r.order);
        bool chosen = false;
        for (auto& [label, res] : r.parts) {
            if (res.order() < r.order) fail("InsufficientOrder", r.id + "/" + label + " certified only to x^" + std::to_string(res.order() - 1));
            res = res.truncated(r.order);
            if (!res.is_zero()) {
                r.pass = false;
                if (!chosen) {
                    r.residual = res;
                    chosen = true;
                }
            }
        }
        return std::move(r);
    }
};

TruncSeries av_increasing_series(int length, int order) {
    return generate(Family{FamilyKind::AvIncreasing, length}, order).as_series();
}

// num / (den x^k) as an exact Laurent polynomial.
TruncSeries laurent(const Poly& num, long den, int k) {
    return TruncSeries::from_poly(num).shifted(-k) * BigRat(1, den);
}

void check_rational_split(Report& rep, int order) {
    struct Case {
        const char* op;
        int length;
        Poly num;
        long den;
        int k;
        int shift;  // the operator acts on x^shift (F - R)
    };
    const std::map<std::string, Case> cases{
        {"a", {"L2", 4, Poly{1, 5}, 6, 2, 0}},
        {"b", {"L3", 5, Poly{1, 10, 18}, 12, 3, 0}},
        {"c", {"L4", 6, Poly{1, 17, 71, 63}, 20, 4, 0}},
        {"d", {"L5", 7, Poly{1, 26, 198, 476, 247}, 30, 5, -1}},
        {"e", {"L6", 8, Poly{1, 37, 447, 2079, 3348, 1160}, 42, 6, 0}},
    };
    const Case& c = cases.at(rep.r.id);
    const DiffOp op = named_operator(c.op);
    const TruncSeries f = av_increasing_series(c.length, order + op.order() + 1);
    const TruncSeries g = (f - laurent(c.num, c.den, c.k)).shifted(c.shift);
    if (c.shift == 0) {
        rep.part(std::string(c.op) + "(F - R)", apply_op(op, g));
        return;
    }
    rep.part(std::string(c.op) + "(x^" + std::to_string(c.shift) + " (F - R))", apply_op(op, g));
    const TruncSeries plain = apply_op(op, f - laurent(c.num, c.den, c.k)).truncated(order);
    rep.r.note = std::string(c.op) + " as printed annihilates x^" + std::to_string(c.shift) + " (F - R); applied to F - R itself it leaves " +
                 (plain.is_zero() ? std::string("no residual") : "a residual starting at x^" + std::to_string(plain.valuation()));
}

// H(x) near 0.
TruncSeries calh(int order) {
    const int work = order + 2;
    const Poly x = Poly::x();
    const TruncSeries a = ratfun(x * BigRat(-64), linear(1, -1) * pow(linear(1, -9), 3), work);
    const TruncSeries pre = ppow(linear(1, -1), rat(1, 4), work) * ppow(linear(1, -9), rat(3, 4), work);
    return (pre * hyp(rat(-1, 4), rat(3, 4), 1, a, work)).shifted(-2) * rat(-1, 6);
}

void check_infinity_factor(Report& rep, int order) {
    const int work = order + 4;
    const Poly x = Poly::x();
    const Poly one_m_x = linear(1, -1);
    const Poly one_m_9x = linear(1, -9);
    const TruncSeries a = ratfun_at_inverse(x * BigRat(-64), one_m_x * pow(one_m_9x, 3), work);
    const TruncSeries b = ratfun_at_inverse(pow(x, 3) * BigRat(-64), pow(one_m_x, 3) * one_m_9x, work);
    const Surd inv_y = surd_of(TruncSeries::monomial(1, -1));
    const Surd g = inv_y * poly_at_inverse_pow(one_m_x, rat(1, 4), work) * poly_at_inverse_pow(one_m_9x, rat(3, 4), work) *
                   poly_at_inverse_pow(x, -2, work) * surd_of(hyp(rat(-1, 4), rat(3, 4), 1, a, work)) * rat(-1, 6);
    const Surd first = inv_y * poly_at_inverse_pow(one_m_9x, rat(1, 4), work) * poly_at_inverse_pow(linear(1, 3), 2, work) *
                       poly_at_inverse_pow(one_m_x, rat(-5, 4), work) * poly_at_inverse_pow(x, -2, work) *
                       surd_of(hyp(rat(-1, 4), rat(3, 4), 1, b, work)) * rat(-1, 6);
    const Surd second_common = inv_y * poly_at_inverse_pow(x * Poly{1, -6, -3}, 1, work) *
                               poly_at_inverse_pow(one_m_9x, rat(-3, 4), work) * poly_at_inverse_pow(one_m_x, rat(-17, 4), work);
    const Surd second = second_common * surd_of(hyp(rat(3, 4), rat(7, 4), 2, b, work)) * BigRat(-16);
    const Surd printed = second_common * surd_of(hyp(rat(-3, 4), rat(7, 4), 1, b, work)) * BigRat(16);
    const Surd residual = g * BigRat(3) + (first + second) * BigRat(-1);
    rep.part("3G - G2", residual.series);
    const Surd printed_residual = g * BigRat(3) + (first + printed) * BigRat(-1);
    const TruncSeries pr = printed_residual.series.truncated(order);
    rep.r.note = "H2 second term taken as -16x(1-6x-3x^2)(1-9x)^(-3/4)(1-x)^(-17/4) 2F1(3/4,7/4;2;B); "
                 "the printed +16x(...) 2F1(-3/4,7/4;1;B) form ";
    rep.r.note += pr.is_zero() ? std::string("also passes")
                               : "leaves a residual starting at y^" + std::to_string(pr.valuation());
}

void check_modular_13(Report& rep, int order) {
    const Poly x = Poly::x();
    const TruncSeries a = ratfun(x * BigRat(-64), linear(1, -1) * pow(linear(1, -9), 3), order);
    const TruncSeries b = ratfun(pow(x, 3) * BigRat(-64), pow(linear(1, -1), 3) * linear(1, -9), order);
    auto poly = [](const TruncSeries& A, const TruncSeries& B) {
        const TruncSeries AB = A * B;
        const TruncSeries S = A + B;
        const TruncSeries A2 = A * A, B2 = B * B, AB2 = AB * AB;
        return AB2 * AB * BigRat(4096) - AB2 * S * BigRat(4608) - A2 * A2 + A2 * AB * BigRat(900) - AB2 * BigRat(28422) +
               AB * B2 * BigRat(900) - B2 * B2 - AB * S * BigRat(4608) + AB * BigRat(4096);
    };
    rep.part("modular relation", poly(a, b));
}

TruncSeries hauptmodul_a2(int order) {
    const Poly x = Poly::x();
    return ratfun(pow(x, 2) * BigRat(-108), linear(1, -16) * pow(linear(1, 2), 2), order);
}

TruncSeries hauptmodul_b2(int order) {
    const Poly x = Poly::x();
    return ratfun(x * BigRat(108), linear(1, -4) * pow(linear(1, 32), 2), order);
}

void check_modular_2(Report& rep, int order) {
    auto poly = [](const TruncSeries& A, const TruncSeries& B) {
        const TruncSeries AB = A * B;
        const TruncSeries S = A + B;
        const TruncSeries A2 = A * A, B2 = B * B, AB2 = AB * AB;
        return AB2 * AB * BigRat(625) - AB2 * S * BigRat(525) - AB * (A2 * BigRat(32) + AB + B2 * BigRat(32)) * BigRat(3) -
               S * (A2 - AB * BigRat(133) + B2) * BigRat(4) - AB * BigRat(432);
    };
    rep.part("modular relation", poly(hauptmodul_a2(order), hauptmodul_b2(order)));
}

void check_involution(Report& rep, int order) {
    const Poly x = Poly::x();
    const TruncSeries a = ratfun(x * BigRat(-64), linear(1, -1) * pow(linear(1, -9), 3), order);
    const TruncSeries b = ratfun(pow(x, 3) * BigRat(-64), pow(linear(1, -1), 3) * linear(1, -9), order);
    const TruncSeries lhs = ser(Poly{1, -6, -3}, order) * ppow(linear(1, -9), rat(3, 2), order) * hyp(rat(3, 4), rat(3, 4), 1, b, order);
    const TruncSeries rhs = ppow(linear(1, -1), rat(3, 2), order) * ser(Poly{1, 18, -27}, order) * hyp(rat(3, 4), rat(3, 4), 1, a, order);
    rep.part("lhs - rhs", lhs - rhs);
}

void check_transformation(Report& rep, int order) {
    const int work = order + 4;
    const Poly x = Poly::x();
    const TruncSeries b = ratfun(pow(x, 3) * BigRat(-64), pow(linear(1, -1), 3) * linear(1, -9), work);
    const TruncSeries lhs = (ppow(linear(1, -1), rat(3, 4), work) * ppow(linear(1, -9), rat(1, 4), work) *
                             hyp(rat(-1, 4), rat(3, 4), 1, b, work)).shifted(1) * rat(-1, 2);
    const TruncSeries h = calh(work);
    const TruncSeries inner = ser(x * linear(-1, 1) * BigRat(8), work) * h.derivative() + ser(linear(-13, 5), work) * h;
    const TruncSeries rhs = (inner / TruncSeries::from_poly(linear(1, -9))).shifted(3);
    rep.part("lhs - rhs", lhs - rhs);
}

void check_domb(Report& rep, int order) {
    const Poly x = Poly::x();
    const TruncSeries domb_arg = ratfun(pow(x, 2) * BigRat(108), pow(linear(1, -4), 3), order);
    const TruncSeries lhs = ppow(linear(1, -4), rat(1, 2), order) * hyp(rat(1, 6), rat(2, 3), 1, hauptmodul_a2(order), order);
    const TruncSeries rhs = ppow(linear(1, -16), rat(1, 6), order) * ppow(linear(1, 2), rat(1, 3), order) *
                            hyp(rat(1, 6), rat(1, 3), 1, domb_arg, order);
    rep.part("lhs - rhs", lhs - rhs);
}

void check_order_two_expansion(Report& rep, int order) {
    const int work = order + 8;
    const Poly x = Poly::x();
    const TruncSeries form = ppow(linear(1, -16), rat(-1, 6), work) * ppow(linear(1, 2), rat(-1, 3), work) *
                             hyp(rat(1, 6), rat(2, 3), 1, hauptmodul_a2(work), work);
    const TruncSeries f = (form * form).shifted(1);
    const TruncSeries d1 = f.derivative();
    const TruncSeries d2 = d1.derivative();
    const Poly c2 = linear(-1, 4) * linear(-1, 16) * Poly{-1, 590, 1376};
    const Poly c1 = Poly{1, -344, 396, 10304, 63488};
    const Poly c0 = Poly{-1, 420, -3372, 2176};
    const TruncSeries expr = (TruncSeries::from_poly(c2) * d2).shifted(-3) * rat(-1, 864) +
                             (TruncSeries::from_poly(c1) * d1).shifted(-4) * rat(-1, 864) +
                             (TruncSeries::from_poly(c0) * f).shifted(-5) * rat(-1, 864) + laurent(Poly{1, 10, 18}, 12, 3);
    rep.part("expansion - F4", expr - av_increasing_series(5, work));
    rep.r.note = "F is used as printed (leading factor x); no constant rescaling is applied";
}

void check_toeplitz(Report& rep, int order) {
    for (int k = 2; k <= 7; ++k) rep.part("Y" + std::to_string(k) + " counts", toeplitz_count_residual(k, order));
    const HalfSeries i0 = bessel_i(0, order + 2);
    const HalfSeries i1 = bessel_i(1, order + 2);
    const HalfSeries root{TruncSeries::constant(1), 1, false};
    const HalfSeries two{TruncSeries::constant(2), 0, false};
    const HalfSeries inv_x{TruncSeries::monomial(1, -1), 0, false};
    const HalfSeries y2 = i0 * i0 - i1 * i1;
    const HalfSeries y3 = (two * root * i0 * i0 * i1 - i0 * i1 * i1 - two * root * i1 * i1 * i1) * inv_x;
    if (y2.half != 0 || y3.half != 0) fail("HalfPowerResidue", "Y2 or Y3 carries a half-integer exponent");
    const TruncSeries det2 = bessel_toeplitz_det(2, order + 4);
    const TruncSeries det3 = bessel_toeplitz_det(3, order + 4);
    rep.part("Y2 = I0^2 - I1^2", det2 - y2.series);
    rep.part("Y3 display", det3 - y3.series);
    rep.part("Lcal2 Y2", apply_op(named_operator("Lcal2"), det2));
    rep.part("Lcal3 Y3", apply_op(named_operator("Lcal3"), det3));
    rep.part("I0 equation", apply_op(named_operator("I0"), i0.series));
}

void check_jfraction_b(Report& rep, int order) {
    constexpr int kMaxJ = 6;
    const int work = order + 2 * kMaxJ + 4;
    const Poly x = Poly::x();
    std::vector<TruncSeries> bs{TruncSeries::constant(1, work), walk_model_series(13, work)};
    bs[1] *= 1 / bs[1].coeff(0);
    for (int j = 1; j < kMaxJ; ++j) {
        const long gamma = (j == 1) ? 3 : 2;
        const BigRat beta = BigRat((4 * j - 1) * (4 * j + 1), (2 * j - 1) * (2 * j + 1));
        const TruncSeries next = (ser(linear(1, -gamma), work) * bs[static_cast<std::size_t>(j)] - bs[static_cast<std::size_t>(j - 1)]).shifted(-2) * (1 / beta);
        bs.push_back(next);
    }
    for (int j = 0; j <= kMaxJ; ++j) {
        const TruncSeries& b = bs[static_cast<std::size_t>(j)];
        const long jj = j;
        // Bdiff times x(1-6x)(1+2x)
        const DiffOp op({linear(2 * jj + 1, 6 * (jj + 1)) * BigRat(-2 * jj), Poly{2 * jj, -(8 * jj + 6), -24 * (jj + 1)},
                         x * linear(1, -6) * linear(1, 2)});
        rep.part("Bdiff j=" + std::to_string(j), apply_op(op, b));
        if (j == 0) continue;  // the recurrence divides by 2j + n
        const int n_terms = b.order();
        std::vector<BigRat> rec(static_cast<std::size_t>(n_terms));
        BigRat prev = 0, cur = 1;
        rec[0] = b.coeff(0) - 1;
        for (int n = 0; n + 1 < n_terms; ++n) {
            const long m = n + jj;
            const BigRat next = (BigRat(2 * (2 * n + 2 * jj + 1) * m) * cur + BigRat(12 * m * (m - 1)) * prev) / BigRat((2 * jj + n) * (n + 1));
            rec[static_cast<std::size_t>(n + 1)] = b.coeff(n + 1) - next;
            prev = cur;
            cur = next;
        }
        rep.part("coefficient recurrence j=" + std::to_string(j), TruncSeries(0, std::move(rec), n_terms));
    }
}

void check_modular_form_rewrite(Report& rep, int order) {
    const TruncSeries lhs = ppow(linear(1, -16), rat(-1, 6), order) * ppow(linear(1, 2), rat(-1, 3), order) *
                            hyp(rat(1, 6), rat(2, 3), 1, hauptmodul_a2(order), order);
    const TruncSeries rhs = ppow(linear(1, -4), rat(-1, 6), order) * ppow(linear(1, 32), rat(-1, 3), order) *
                            hyp(rat(1, 6), rat(2, 3), 1, hauptmodul_b2(order), order);
    rep.part("x^(-1/2) (lhs - rhs)", lhs - rhs);
}

void check_telescoping(Report& rep) {
    using cplx = std::complex<double>;
    auto u = [](int n, cplx x) { return std::pow(x, n) * std::sqrt((4.0 - x) / x); };
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> pick_n(0, 20);
    std::uniform_real_distribution<double> pick_x(0.05, 3.95);
    constexpr double kStep = 1e-30;
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = pick_n(rng);
        const double x = pick_x(rng);
        // complex-step derivative of x(x-4)U(n,x)
        const cplx z(x, kStep);
        const double deriv = (z * (z - 4.0) * u(n, z)).imag() / kStep;
        const double lhs = (n + 2) * u(n + 1, x).real() - (4 * n + 2) * u(n, x).real();
        const double scale = std::max({std::abs(lhs), std::abs(deriv), std::abs((n + 2) * u(n + 1, x).real())});
        worst = std::max(worst, std::abs(lhs - deriv) / scale);
    }
    rep.r.max_rel_error = worst;
    rep.r.note = "20 random (n, x) with n in [0, 20], x in (0, 4); complex-step derivative";
    // a failing spot check shows up as a unit residual
    rep.part("numeric", TruncSeries(0, {BigRat(worst > 1e-10 ? 1 : 0)}, rep.r.order));
}

} // namespace

std::vector<std::string> identity_catalog() {
    return {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "o", "p"};
}

IdentityCheckReport check_identity(std::string_view id, int order) {
    if (order < 10) fail("InsufficientOrder", "identity checks need order >= 10");
    Report rep;
    rep.r.id = std::string(id);
    rep.r.order = order;
    if (id == "a" || id == "b" || id == "c" || id == "d" || id == "e") check_rational_split(rep, order);
    else if (id == "f") check_infinity_factor(rep, order);
    else if (id == "g") check_modular_13(rep, order);
    else if (id == "h") check_modular_2(rep, order);
    else if (id == "i") check_involution(rep, order);
    else if (id == "j") check_transformation(rep, order);
    else if (id == "k") check_domb(rep, order);
    else if (id == "l") check_order_two_expansion(rep, order);
    else if (id == "m") check_toeplitz(rep, order);
    else if (id == "n") check_jfraction_b(rep, order);
    else if (id == "o") check_modular_form_rewrite(rep, order);
    else if (id == "p") check_telescoping(rep);
    else fail("UnknownIdentity", std::string(id));
    return rep.finish();
}

} // namespace stieltjes
