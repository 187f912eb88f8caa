#include "stieltjes/cfrac.hpp"

#include "stieltjes/error.hpp"
#include "stieltjes/roots.hpp"

#include <algorithm>
#include <cmath>

namespace stieltjes {

SFrac extract_sfrac(const MomentSeq& seq) {
    const int n = static_cast<int>(seq.size());
    if (n == 0) fail("InsufficientTerms", "empty sequence");
    if (seq[0] == 0) fail("ZeroDivisor", "level 0: a_0 = 0");
    SFrac cf;
    cf.alphas.push_back(seq[0]);
    // f_0 = A / a_0;  1 - 1/f_k = alpha_{k+1} x f_{k+1}.
    TruncSeries f = seq.as_series() * BigRat(1 / seq[0]);
    for (int level = 1; level < n; ++level) {
        TruncSeries rest = TruncSeries::constant(1) - f.inverse();
        const BigRat alpha = rest.coeff(1);
        if (alpha == 0) {
            if (rest.is_zero()) {
                cf.terminated = true;
                return cf;
            }
            fail("ZeroDivisor", "level " + std::to_string(level) + ": vanishing divisor with nonzero remainder");
        }
        cf.alphas.push_back(alpha);
        f = rest.shifted(-1) * BigRat(1 / alpha);
    }
    return cf;
}

TruncSeries sfrac_to_series(const SFrac& cf, int n_terms) {
    if (cf.alphas.empty()) return TruncSeries(0, {}, n_terms);
    TruncSeries t = TruncSeries::constant(1, n_terms);
    for (std::size_t i = cf.alphas.size() - 1; i >= 1; --i)
        t = (TruncSeries::constant(1) - TruncSeries::monomial(cf.alphas[i], 1) * t).inverse(n_terms);
    return (t * cf.alphas[0]).truncated(n_terms);
}

namespace {

BigRat apply_functional(const Poly& p, const MomentSeq& seq) {
    BigRat acc = 0;
    for (int i = 0; i <= p.degree(); ++i) acc += p.coeff(i) * seq[static_cast<std::size_t>(i)];
    return acc;
}

} // namespace

JFrac extract_jfrac(const MomentSeq& seq) {
    const std::size_t n = seq.size();
    if (n == 0) fail("InsufficientTerms", "empty sequence");
    if (seq[0] == 0) fail("ZeroHankelMinor", "n=1: a_0 = 0");
    JFrac cf;
    Poly prev;                 // P_{-1} = 0
    Poly cur = Poly::constant(1);
    BigRat norm_prev = 0;
    const Poly x = Poly::x();
    for (std::size_t level = 0; 2 * level + 1 < n; ++level) {
        const Poly sq = cur * cur;
        const BigRat norm = apply_functional(sq, seq);
        if (norm == 0) fail("ZeroHankelMinor", "n=" + std::to_string(level + 1) + ": Hankel minor vanishes");
        const BigRat gamma = apply_functional(x * sq, seq) / norm;
        cf.betas.push_back(level == 0 ? norm : BigRat(norm / norm_prev));
        cf.gammas.push_back(gamma);
        Poly next = (x - Poly::constant(gamma)) * cur - prev * cf.betas.back();
        prev = std::move(cur);
        cur = std::move(next);
        norm_prev = norm;
    }
    return cf;
}

TruncSeries jfrac_to_series(const JFrac& cf, int n_terms) {
    TruncSeries t(0, {}, n_terms);
    for (std::size_t i = cf.gammas.size(); i-- > 0;) {
        const BigRat beta_next = i + 1 < cf.betas.size() ? cf.betas[i + 1] : BigRat(0);
        const TruncSeries denom = TruncSeries::from_poly(Poly(std::vector<BigRat>{1, -cf.gammas[i]}))
                                  - TruncSeries::monomial(beta_next, 2) * t;
        t = denom.inverse(n_terms);
    }
    if (cf.betas.empty()) return t;
    return (t * cf.betas[0]).truncated(n_terms);
}

Poly convergent_denominator(const SFrac& cf, int n) {
    if (n < 0 || (!cf.terminated && static_cast<std::size_t>(n) >= cf.alphas.size()))
        fail("InsufficientTerms", "convergent needs alpha_" + std::to_string(n));
    Poly older = Poly::constant(1);  // Q_{-1}
    Poly cur = Poly::constant(1);    // Q_0
    for (int k = 1; k <= n; ++k) {
        const BigRat alpha = static_cast<std::size_t>(k) < cf.alphas.size() ? cf.alphas[static_cast<std::size_t>(k)] : BigRat(0);
        Poly next = cur - Poly::monomial(alpha, 1) * older;
        older = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double BoundsReport::best_truncated() const {
    double best = 0;
    for (const auto& e : truncated_cf) best = std::max(best, e.value);
    return best;
}

double BoundsReport::best_monotone() const {
    double best = 0;
    for (const auto& e : monotone_tail) best = std::max(best, e.value);
    return best;
}

BoundsReport growth_bounds(const MomentSeq& seq, const BigRat& root_precision) {
    const SFrac cf = extract_sfrac(seq);
    for (std::size_t i = 0; i < cf.alphas.size(); ++i)
        if (sgn(cf.alphas[i]) < 0) fail("NegativeAlpha", "alpha_" + std::to_string(i) + " = " + cf.alphas[i].get_str());

    BoundsReport report;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        if (seq[i - 1] == 0) continue;
        const double r = to_double(seq[i] / seq[i - 1]);
        if (r > report.ratio_bound) {
            report.ratio_bound = r;
            report.ratio_index = static_cast<int>(i);
        }
    }
    const double prec = to_double(root_precision);
    for (int k = 1; static_cast<std::size_t>(k) < cf.alphas.size(); ++k) {
        const auto root = smallest_positive_root(convergent_denominator(cf, k), root_precision);
        if (!root) continue;
        const double mu = 1.0 / root->midpoint();
        if (!report.truncated_cf.empty()) {
            const double last = report.truncated_cf.back().value;
            if (mu < last - 4 * prec * std::max(mu, last) * std::max(mu, last)) report.mu_nondecreasing = false;
        }
        report.truncated_cf.push_back({k, mu});
    }
    for (int k = 2; static_cast<std::size_t>(k) < cf.alphas.size(); ++k) {
        const double s = std::sqrt(to_double(cf.alphas[static_cast<std::size_t>(k)])) + std::sqrt(to_double(cf.alphas[static_cast<std::size_t>(k - 1)]));
        report.monotone_tail.push_back({k, s * s});
    }
    return report;
}

std::vector<AlphaRow> alpha_scaling_data(const SFrac& cf) {
    std::vector<AlphaRow> rows;
    for (std::size_t i = 1; i < cf.alphas.size(); ++i) {
        const int n = static_cast<int>(i);
        rows.push_back({n, std::pow(static_cast<double>(n), -2.0 / 3.0), cf.alphas[i], n % 2 == 1});
    }
    return rows;
}

} // namespace stieltjes
