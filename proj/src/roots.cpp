#include "stieltjes/roots.hpp"

#include "stieltjes/error.hpp"

namespace stieltjes {

std::vector<Poly> sturm_sequence(const Poly& p) {
    if (p.is_zero()) fail("ZeroPolynomial", "Sturm sequence of the zero polynomial");
    const Poly g = gcd(p, p.derivative());
    Poly sq = divmod(p, g).first;
    std::vector<Poly> seq{sq, sq.derivative()};
    while (!seq.back().is_zero()) {
        Poly r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) break;
        // keep coefficients small: only the sign of the scale matters
        seq.push_back(-r.monic() * BigRat(sgn(r.leading())));
    }
    if (seq.back().is_zero()) seq.pop_back();
    return seq;
}

namespace {
int variations(const std::vector<Poly>& seq, const BigRat& x) {
    int count = 0;
    int last = 0;
    for (const auto& s : seq) {
        const int v = sgn(s(x));
        if (v == 0) continue;
        if (last != 0 && v != last) ++count;
        last = v;
    }
    return count;
}
} // namespace

int count_roots(const std::vector<Poly>& sturm, const BigRat& a, const BigRat& b) {
    return variations(sturm, a) - variations(sturm, b);
}

std::optional<RootInterval> smallest_positive_root(const Poly& p, const BigRat& precision) {
    if (p.is_zero()) fail("ZeroPolynomial", "root isolation of the zero polynomial");
    if (sgn(precision) <= 0) fail("DomainError", "root precision must be positive");
    if (p.degree() == 0) return std::nullopt;
    const auto seq = sturm_sequence(p);
    // Cauchy bound on root moduli
    BigRat bound = 0;
    for (int i = 0; i < p.degree(); ++i) bound = std::max(bound, BigRat(abs(p.coeff(i) / p.leading())));
    bound += 1;
    BigRat lo = 0;
    BigRat hi = bound;
    if (count_roots(seq, lo, hi) == 0) return std::nullopt;
    while (hi - lo > precision) {
        BigRat mid = (lo + hi) / 2;
        if (count_roots(seq, lo, mid) >= 1) hi = mid;
        else lo = mid;
    }
    return RootInterval{lo, hi};
}

} // namespace stieltjes
