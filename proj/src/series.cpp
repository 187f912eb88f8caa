#include "stieltjes/series.hpp"

#include "stieltjes/error.hpp"

#include <algorithm>
#include <sstream>

namespace stieltjes {

namespace {
const BigRat kZero = 0;
}

int add_orders(int a, int b) {
    if (a >= TruncSeries::kExact || b >= TruncSeries::kExact) return TruncSeries::kExact;
    return a + b;
}

TruncSeries::TruncSeries(int low, std::vector<BigRat> coeffs, int order)
    : low_(low), c_(std::move(coeffs)), order_(std::min(order, kExact)) {
    normalize();
}

void TruncSeries::normalize() {
    if (!exact()) {
        if (order_ < low_) {
            low_ = order_;
            c_.clear();
        }
        c_.resize(static_cast<std::size_t>(order_ - low_));
    }
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
        low_ += static_cast<int>(lead);
    }
    if (exact()) {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        if (c_.empty()) low_ = 0;
    }
}

TruncSeries TruncSeries::from_poly(const Poly& p, int order) {
    return TruncSeries(0, p.coeffs(), order);
}

TruncSeries TruncSeries::constant(const BigRat& c, int order) {
    return TruncSeries(0, {c}, order);
}

TruncSeries TruncSeries::monomial(const BigRat& c, int exponent, int order) {
    return TruncSeries(exponent, {c}, order);
}

TruncSeries TruncSeries::from_terms(const std::vector<BigRat>& terms) {
    return TruncSeries(0, terms, static_cast<int>(terms.size()));
}

const BigRat& TruncSeries::raw(int e) const {
    const long idx = static_cast<long>(e) - low_;
    if (idx < 0 || idx >= static_cast<long>(c_.size())) return kZero;
    return c_[static_cast<std::size_t>(idx)];
}

BigRat TruncSeries::coeff(int e) const {
    if (e >= order_)
        fail("InsufficientOrder", "coefficient of x^" + std::to_string(e) + " requested from a series known to O(x^" +
                                      std::to_string(order_) + ")");
    return raw(e);
}

std::vector<BigRat> TruncSeries::coeffs(int from, int to) const {
    std::vector<BigRat> out;
    out.reserve(static_cast<std::size_t>(std::max(0, to - from)));
    for (int e = from; e < to; ++e) out.push_back(coeff(e));
    return out;
}

int TruncSeries::valuation() const {
    if (c_.empty()) return order_;
    return low_;  // leading zeros are stripped by normalize()
}

TruncSeries TruncSeries::truncated(int order) const {
    if (order >= order_) return *this;
    std::vector<BigRat> c;
    for (int e = low_; e < order; ++e) c.push_back(raw(e));
    return TruncSeries(std::min(low_, order), std::move(c), order);
}

TruncSeries TruncSeries::shifted(int k) const {
    return TruncSeries(low_ + k, c_, add_orders(order_, k));
}

TruncSeries TruncSeries::derivative() const {
    std::vector<BigRat> d(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) d[i] = c_[i] * (low_ + static_cast<long>(i));
    return TruncSeries(low_ - 1, std::move(d), exact() ? kExact : order_ - 1);
}

TruncSeries TruncSeries::inverse() const {
    if (exact()) fail("InsufficientOrder", "inverse of an exact series needs an explicit truncation order");
    return inverse(kExact);
}

TruncSeries TruncSeries::inverse(int order) const {
    const int v = valuation();
    if (v >= order_) fail("DivisionByZero", "inverse of a series with no known nonzero coefficient");
    int result_order = exact() ? order : std::min(order, order_ - 2 * v);
    if (result_order >= kExact) fail("InsufficientOrder", "inverse of an exact series needs an explicit order");
    const int n = result_order + v;  // number of coefficients from x^{-v}
    std::vector<BigRat> b(static_cast<std::size_t>(std::max(0, n)));
    if (n <= 0) return TruncSeries(-v, {}, result_order);
    const BigRat inv_lead = 1 / raw(v);
    b[0] = inv_lead;
    for (int k = 1; k < n; ++k) {
        BigRat acc = 0;
        for (int i = 1; i <= k; ++i) {
            const BigRat& ai = raw(v + i);
            if (ai != 0) acc += ai * b[static_cast<std::size_t>(k - i)];
        }
        b[static_cast<std::size_t>(k)] = -acc * inv_lead;
    }
    return TruncSeries(-v, std::move(b), result_order);
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    const int va = a.valuation();
    const int vb = b.valuation();
    const int order = std::min(add_orders(a.order(), vb), add_orders(b.order(), va));
    if (a.c_.empty() || b.c_.empty()) return TruncSeries(va + vb, {}, order);
    const int lo = a.low_ + b.low_;
    int hi = a.low_ + static_cast<int>(a.c_.size()) - 1 + b.low_ + static_cast<int>(b.c_.size()) - 1;
    if (order < TruncSeries::kExact) hi = std::min(hi, order - 1);
    if (hi < lo) return TruncSeries(lo, {}, order);
    std::vector<BigRat> r(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        const int ei = a.low_ + static_cast<int>(i);
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            const int e = ei + b.low_ + static_cast<int>(j);
            if (e > hi) break;
            if (b.c_[j] == 0) continue;
            r[static_cast<std::size_t>(e - lo)] += a.c_[i] * b.c_[j];
        }
    }
    return TruncSeries(lo, std::move(r), order);
}

TruncSeries operator/(const TruncSeries& a, const TruncSeries& b) {
    if (b.exact()) {
        if (a.exact()) fail("InsufficientOrder", "division of exact series needs an explicit truncation order");
        // a has finite order; b^{-1} only needs to reach the order a allows.
        const int vb = b.valuation();
        const int needed = a.order() - a.valuation() - vb;
        return a * b.inverse(needed + 1);
    }
    return a * b.inverse();
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
    const int order = std::min(order_, o.order_);
    int lo = std::min(low_, o.low_);
    if (!c_.empty() && o.c_.empty()) lo = low_;
    if (c_.empty() && !o.c_.empty()) lo = o.low_;
    int hi_a = low_ + static_cast<int>(c_.size());
    int hi_b = o.low_ + static_cast<int>(o.c_.size());
    int hi = std::max(hi_a, hi_b);
    if (order < kExact) hi = std::min(hi, order);
    std::vector<BigRat> r(static_cast<std::size_t>(std::max(0, hi - lo)));
    for (int e = lo; e < hi; ++e) r[static_cast<std::size_t>(e - lo)] = raw(e) + o.raw(e);
    *this = TruncSeries(lo, std::move(r), order);
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) { return *this += -o; }

TruncSeries& TruncSeries::operator*=(const BigRat& c) {
    for (auto& v : c_) v *= c;
    normalize();
    return *this;
}

TruncSeries operator-(TruncSeries a) {
    for (auto& v : a.c_) v = -v;
    return a;
}

TruncSeries TruncSeries::compose(const TruncSeries& inner) const {
    if (valuation() < 0) fail("DomainError", "composition of a Laurent series with negative exponents");
    if (c_.empty()) return TruncSeries(0, {}, order_ >= kExact ? kExact : 0);
    const int top = low_ + static_cast<int>(c_.size()) - 1;
    if (inner.is_zero()) {
        const int order = top > 0 ? inner.order() : kExact;
        return TruncSeries::constant(raw(0), std::min(order, order_));
    }
    const int vt = inner.valuation();
    if (vt < 1) fail("DomainError", "inner series of a composition must vanish at 0");
    int order = kExact;
    if (!exact()) order = static_cast<int>(std::min<long>(static_cast<long>(order_) * vt, kExact));
    if (top > 0) order = std::min(order, inner.order());
    TruncSeries acc = TruncSeries::constant(raw(top));
    for (int e = top - 1; e >= 0; --e) acc = (acc * inner).truncated(order) + TruncSeries::constant(raw(e));
    return acc.truncated(order);
}

Poly TruncSeries::to_poly_truncated() const {
    if (valuation() < 0) fail("DomainError", "Laurent series with negative exponents is not a polynomial");
    std::vector<BigRat> c;
    const int top = low_ + static_cast<int>(c_.size());
    for (int e = 0; e < top; ++e) c.push_back(raw(e));
    return Poly(std::move(c));
}

bool TruncSeries::agrees_with(const TruncSeries& o) const {
    const int order = std::min(order_, o.order_);
    int lo = std::min(low_, o.low_);
    int hi = std::max(low_ + static_cast<int>(c_.size()), o.low_ + static_cast<int>(o.c_.size()));
    hi = std::min(hi, order);
    for (int e = lo; e < hi; ++e)
        if (raw(e) != o.raw(e)) return false;
    return true;
}

std::string TruncSeries::to_string(const std::string& var, int max_terms) const {
    std::ostringstream os;
    int shown = 0;
    bool first = true;
    for (std::size_t i = 0; i < c_.size() && shown < max_terms; ++i) {
        if (c_[i] == 0) continue;
        const int e = low_ + static_cast<int>(i);
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[i].get_str() << ")";
        if (e != 0) os << "*" << var << "^" << e;
        ++shown;
    }
    if (first) os << "0";
    if (!exact()) os << " + O(" << var << "^" << order_ << ")";
    return os.str();
}

TruncSeries pow(const TruncSeries& s, long exponent) {
    if (exponent < 0) return pow(s.inverse(), -exponent);
    TruncSeries result = TruncSeries::constant(1);
    TruncSeries base = s;
    while (exponent) {
        if (exponent & 1L) result = result * base;
        exponent >>= 1;
        if (exponent) base = base * base;
    }
    return result;
}

namespace {

// Unit-part root u^(1/b) for a power series u = 1 + O(x), to n coefficients.
TruncSeries unit_root(const TruncSeries& u, long b, int n) {
    TruncSeries w = TruncSeries::constant(1, 1);
    int prec = 1;
    const BigRat inv_b(1, b);
    while (prec < n) {
        prec = std::min(2 * prec, n);
        TruncSeries wp = w.truncated(prec);
        wp = TruncSeries(0, wp.coeffs(0, wp.order()), prec);
        // w <- ((b-1) w + u w^(1-b)) / b
        TruncSeries w_pow = pow(wp, b - 1);
        TruncSeries term = u.truncated(prec) * w_pow.inverse(prec);
        w = (wp * BigRat(b - 1) + term) * inv_b;
        w = w.truncated(prec);
    }
    return w.truncated(n);
}

} // namespace

TruncSeries series_pow_rational(const TruncSeries& s, const BigRat& p) {
    if (s.exact()) fail("InsufficientOrder", "rational power of an exact series needs an explicit precision");
    return series_pow_rational(s, p, s.order() - s.valuation());
}

TruncSeries series_pow_rational(const TruncSeries& s, const BigRat& p, int relative_terms) {
    const int v = s.valuation();
    if (v >= s.order()) fail("DomainError", "rational power of a series with no known nonzero term");
    const BigRat vp = p * v;
    if (!is_integer(vp)) fail("FractionalLeadingExponent", "leading exponent " + std::to_string(v) + " times " + p.get_str() + " is not an integer");
    const BigRat lead = s.coeff(v);
    const long num = p.get_num().get_si();
    const long den = p.get_den().get_si();
    BigRat lead_pow;
    if (den == 1) {
        lead_pow = pow(lead, num);
    } else {
        if (sgn(lead) < 0) fail("NegativeLeadingCoefficient", "principal branch of a negative leading coefficient " + lead.get_str() + " is not real");
        auto root = exact_root(lead, static_cast<unsigned long>(den));
        if (!root) fail("IrrationalLeadingPower", "leading coefficient " + lead.get_str() + " has no rational power " + p.get_str());
        lead_pow = pow(*root, num);
    }
    const int n = s.exact() ? relative_terms : std::min(relative_terms, s.order() - v);
    // unit part u = s / (lead x^v), known to n coefficients
    std::vector<BigRat> uc(static_cast<std::size_t>(n));
    const BigRat inv_lead = 1 / lead;
    for (int i = 0; i < n; ++i) uc[static_cast<std::size_t>(i)] = s.coeff(v + i) * inv_lead;
    TruncSeries u(0, std::move(uc), n);
    TruncSeries w = (den == 1) ? u : unit_root(u, den, n);
    TruncSeries r = pow(w, num).truncated(n);
    const int shift = static_cast<int>(vp.get_num().get_si());
    return (r * lead_pow).shifted(shift);
}

} // namespace stieltjes
