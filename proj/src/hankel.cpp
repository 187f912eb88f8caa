#include "stieltjes/hankel.hpp"

#include "stieltjes/error.hpp"
#include "stieltjes/matrix.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace stieltjes {

std::vector<BigRat> minors(const MomentSeq& seq, int shift, int n_max) {
    if (shift != 0 && shift != 1) fail("DomainError", "shift must be 0 or 1");
    if (n_max < 0) fail("DomainError", "n_max must be >= 0");
    const std::size_t needed = n_max == 0 ? 0 : static_cast<std::size_t>(2 * n_max - 1 + shift);
    if (seq.size() < needed)
        fail("InsufficientTerms", "Delta_" + std::to_string(shift) + "^" + std::to_string(n_max) + " needs " + std::to_string(needed) + " terms, have " + std::to_string(seq.size()));
    std::vector<BigRat> out;
    for (int n = 1; n <= n_max; ++n) {
        RatMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = seq[i + j + static_cast<std::size_t>(shift)];
        out.push_back(det_bareiss(m));
    }
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::StieltjesConsistent: return "StieltjesConsistent";
    case Verdict::HamburgerOnlyConsistent: return "HamburgerOnlyConsistent";
    case Verdict::NotHamburger: return "NotHamburger";
    }
    return "?";
}

std::string HankelReport::summary() const {
    std::ostringstream s;
    s << to_string(verdict) << " (prefix-consistent on " << prefix_terms << " terms, not a proof)";
    if (first_violation) s << "; first negative minor Delta_" << first_violation->shift << "^" << first_violation->n;
    return s.str();
}

HankelReport classify(const MomentSeq& seq) {
    const auto n_terms = static_cast<int>(seq.size());
    if (n_terms < 3) fail("InsufficientTerms", "classification needs at least 3 terms");
    HankelReport r;
    r.prefix_terms = seq.size();
    r.delta0 = minors(seq, 0, (n_terms + 1) / 2);
    r.delta1 = minors(seq, 1, n_terms / 2);
    auto first_negative = [](const std::vector<BigRat>& d) -> std::optional<int> {
        for (std::size_t i = 0; i < d.size(); ++i)
            if (sgn(d[i]) < 0) return static_cast<int>(i) + 1;
        return std::nullopt;
    };
    if (auto n = first_negative(r.delta0)) {
        r.verdict = Verdict::NotHamburger;
        r.first_violation = Violation{0, *n};
    } else if (auto m = first_negative(r.delta1)) {
        r.verdict = Verdict::HamburgerOnlyConsistent;
        r.first_violation = Violation{1, *m};
    }
    return r;
}

bool check_minor_alpha(const MomentSeq& seq, const SFrac& cf, int n_max) {
    const auto& al = cf.alphas;
    auto alpha = [&](int i) -> BigRat {
        if (static_cast<std::size_t>(i) < al.size()) return al[static_cast<std::size_t>(i)];
        if (cf.terminated) return 0;
        fail("InsufficientTerms", "alpha_" + std::to_string(i) + " not available");
    };
    const auto d0 = minors(seq, 0, n_max);
    const auto d1 = minors(seq, 1, n_max);
    for (int n = 1; n <= n_max; ++n) {
        BigRat p0 = pow(alpha(0), n);
        BigRat p1 = pow(alpha(0), n) * pow(alpha(1), n);
        for (int k = 1; k < n; ++k) {
            p0 *= pow(alpha(2 * k - 1) * alpha(2 * k), n - k);
            p1 *= pow(alpha(2 * k) * alpha(2 * k + 1), n - k);
        }
        if (p0 != d0[static_cast<std::size_t>(n - 1)] || p1 != d1[static_cast<std::size_t>(n - 1)]) return false;
    }
    return true;
}

MinorSample sample_minors(const MomentSeq& seq, int count, std::uint64_t seed) {
    MinorSample s;
    const int top = static_cast<int>(seq.size()) - 1;  // i + j <= top
    if (top < 4) return s;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, top / 2);
    for (int t = 0; t < count; ++t) {
        std::vector<int> rows, cols;
        while (rows.size() < 3) {
            int v = pick(rng);
            if (std::find(rows.begin(), rows.end(), v) == rows.end()) rows.push_back(v);
        }
        while (cols.size() < 3) {
            int v = pick(rng);
            if (std::find(cols.begin(), cols.end(), v) == cols.end()) cols.push_back(v);
        }
        std::sort(rows.begin(), rows.end());
        std::sort(cols.begin(), cols.end());
        if (rows.back() + cols.back() > top) continue;
        RatMatrix m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = seq[static_cast<std::size_t>(rows[i] + cols[j])];
        ++s.sampled;
        if (sgn(det_bareiss(m)) < 0) ++s.negative;
    }
    return s;
}

BigRat quarter_turn_asm(int n) {
    BigRat v = pow(BigRat(-4), n * (n - 1) / 2);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) v *= BigRat(4 * (j - i) + 1) / BigRat(j - i + n);
    return v;
}

namespace {

[[noreturn]] void mismatch(int model, int n, const std::string& what) {
    fail("ClosedFormMismatch", "model " + std::to_string(model) + ", n=" + std::to_string(n) + ": " + what);
}

// Smallest-order constant-coefficient recurrence (order <= 3) fitted on the
// first values and confirmed on at least one further value.
std::optional<std::vector<BigRat>> fit_recurrence(const std::vector<BigRat>& u) {
    for (std::size_t d = 1; d <= 3; ++d) {
        if (u.size() < 2 * d + 1) break;
        RatMatrix m(d, d);
        std::vector<BigRat> rhs(d);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t i = 1; i <= d; ++i) m(r, i - 1) = u[r + d - i];
            rhs[r] = u[r + d];
        }
        std::vector<BigRat> c;
        try {
            c = solve_exact(m, rhs);
        } catch (const ComputationError&) {
            continue;
        }
        bool ok = true;
        for (std::size_t n = d; n < u.size() && ok; ++n) {
            BigRat acc = 0;
            for (std::size_t i = 1; i <= d; ++i) acc += c[i - 1] * u[n - i];
            ok = acc == u[n];
        }
        if (ok) return c;
    }
    return std::nullopt;
}

} // namespace

WalkClosedForm check_walk_closed_forms(int model, int n_max) {
    if (n_max < 3) fail("DomainError", "n_max must be >= 3");
    const MomentSeq seq = generate(Family{FamilyKind::WalkModel, model}, 2 * n_max + 1);
    WalkClosedForm r;
    r.model = model;
    r.delta0 = minors(seq, 0, n_max);
    r.delta1 = minors(seq, 1, n_max);
    for (int n = 0; n < n_max; ++n) {
        const BigRat& d0 = r.delta0[static_cast<std::size_t>(n)];
        if (d0 == 0) mismatch(model, n + 1, "Delta_0 vanishes");
        r.u.push_back(r.delta1[static_cast<std::size_t>(n)] / d0);
    }
    if (model == 13) {
        for (int n = 1; n <= n_max; ++n)
            if (r.delta0[static_cast<std::size_t>(n - 1)] != quarter_turn_asm(n)) mismatch(model, n, "Delta_0 differs from the quarter-turn ASM product");
        for (int n = 0; n + 2 < n_max; ++n) {
            const BigRat coef = BigRat((4 * n + 9) * (4 * n + 7)) / BigRat((2 * n + 5) * (2 * n + 3));
            const auto k = static_cast<std::size_t>(n);
            if (r.u[k + 2] != 2 * r.u[k + 1] - coef * r.u[k]) mismatch(model, n + 2, "u recurrence fails");
        }
        return r;
    }
    r.q = r.delta0[1];
    for (int n = 1; n <= n_max; ++n)
        if (r.delta0[static_cast<std::size_t>(n - 1)] != pow(r.q, n * (n - 1) / 2)) mismatch(model, n, "Delta_0 != q^C(n,2)");
    auto rec = fit_recurrence(r.u);
    if (!rec) mismatch(model, n_max, "no constant-coefficient recurrence of order <= 3 for u");
    r.recurrence = *rec;
    return r;
}

} // namespace stieltjes
