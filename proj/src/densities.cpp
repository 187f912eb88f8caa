#include "stieltjes/densities.hpp"

#include "stieltjes/error.hpp"
#include "stieltjes/matrix.hpp"
#include "stieltjes/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stieltjes {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

Density make_exact(std::string name, double lo, double hi, std::function<double(double)> fn, double left, double right) {
    Density d;
    d.name = std::move(name);
    d.lo = lo;
    d.hi = hi;
    d.continuous = std::move(fn);
    d.kind = DensityKind::Exact;
    d.left_exponent = left;
    d.right_exponent = right;
    return d;
}

// sqrt((x - lo)(hi - x)), the semicircle factor shared by most walk models.
double semicircle(double x, double lo, double hi) { return std::sqrt(std::max(0.0, (x - lo) * (hi - x))); }

Density walk_density(int model) {
    const std::string name = "walk" + std::to_string(model);
    const double s2 = 2 * std::numbers::sqrt2;
    const double s3 = 2 * std::numbers::sqrt3;
    // sqrt((x - lo)/(hi - x)) / (scale pi)
    auto ratio_root = [&](double lo, double hi, double scale) {
        return make_exact(name, lo, hi, [=](double x) { return std::sqrt((x - lo) / (hi - x)) / (scale * kPi); }, 0.5, -0.5);
    };
    // sqrt((x - lo)(hi - x)) / (pole - x) / (scale pi)
    auto semicircle_pole = [&](double lo, double hi, double pole, double scale) {
        return make_exact(name, lo, hi, [=](double x) { return semicircle(x, lo, hi) / (pole - x) / (scale * kPi); }, 0.5, 0.5);
    };
    Density d;
    switch (model) {
    case 1: d = ratio_root(-2, 2, 2); break;
    case 2: d = ratio_root(-1, 3, 2); break;
    case 3: d = ratio_root(-3, 5, 4); break;
    case 4: d = ratio_root(-4, 4, 4); break;
    case 5: d = semicircle_pole(-s2, s2, 3, 2); break;
    case 6:
        d = semicircle_pole(-s2, s2, 3, 4);
        d.atoms = {{3, 0.5}};
        break;
    case 7: d = semicircle_pole(-s3, s3, 4, 2); break;
    case 8: d = semicircle_pole(1 - s2, 1 + s2, 4, 2); break;
    case 9:
        d = semicircle_pole(1 - s2, 1 + s2, 4, 4);
        d.atoms = {{4, 0.5}};
        break;
    case 10: d = semicircle_pole(1 - s3, 1 + s3, 5, 2); break;
    case 11:
        d = make_exact(name, -1, 3, [](double x) { return semicircle(x, -1, 3) / (2 * kPi); }, 0.5, 0.5);
        break;
    case 12:
        d = make_exact(name, -2, 6, [](double x) { return semicircle(x, -2, 6) / (8 * kPi); }, 0.5, 0.5);
        break;
    case 13:
        d = make_exact(name, -2, 6, [](double x) { return std::pow((2 + x) / (6 - x), 0.25) / (2 * std::numbers::sqrt2 * kPi); }, 0.25, -0.25);
        break;
    default: fail("UnknownName", "walk model must be 1..13");
    }
    return d;
}

const Real& gamma_three_quarters() {
    static const Real value = gamma_real(Real(3) / 4);
    return value;
}

const HypParams kLowParams{rat(-1, 4), rat(1, 4), rat(1)};
const HypParams kHighFirst{rat(-1, 4), rat(-1, 4), rat(1, 2)};
const HypParams kHighSecond{rat(5, 4), rat(5, 4), rat(3, 2)};
const Real kPieceTol("1e-30");

double as_double(const Real& r) { return r.convert_to<double>(); }

struct Panel {
    double a;
    double b;
    double left_exponent;   // weight (x - a)^left_exponent handled by the rule
    double right_exponent;  // weight (b - x)^right_exponent
};

// Composite panels on [a, b], refined geometrically toward both ends. The two
// end panels carry the endpoint exponents, when given.
void append_graded_panels(std::vector<Panel>& panels, double a, double b, double left, double right, int levels) {
    const double mid = 0.5 * (a + b);
    double edge = mid - a;
    for (int k = 0; k < levels; ++k) {
        const double inner = edge / 2;
        panels.push_back({a + inner, a + edge, 0, 0});
        panels.push_back({b - edge, b - inner, 0, 0});
        edge = inner;
    }
    panels.push_back({a, a + edge, left, 0});
    panels.push_back({b - edge, b, 0, right});
}

std::vector<double> panel_moments(const std::function<double(double)>& fn, const std::vector<Panel>& panels, int nodes, int n_max) {
    std::vector<double> out(static_cast<std::size_t>(n_max + 1), 0.0);
    for (const auto& panel : panels) {
        const QuadratureRule rule = gauss_jacobi(nodes, panel.right_exponent, panel.left_exponent);
        const double half = 0.5 * (panel.b - panel.a);
        const double scale = std::pow(half, 1 + panel.left_exponent + panel.right_exponent);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double t = rule.nodes[q];
            const double x = panel.a + half * (1 + t);
            double value = fn(x);
            if (panel.left_exponent != 0) value /= std::pow(half * (1 + t), panel.left_exponent);
            if (panel.right_exponent != 0) value /= std::pow(half * (1 - t), panel.right_exponent);
            const double w = scale * rule.weights[q] * value;
            double power = 1;
            for (auto& m : out) {
                m += w * power;
                power *= x;
            }
        }
    }
    return out;
}

std::vector<double> jacobi_moments(const Density& d, int nodes, int n_max) {
    std::vector<double> out(static_cast<std::size_t>(n_max + 1), 0.0);
    const double len = d.hi - d.lo;
    const QuadratureRule rule = gauss_jacobi(nodes, d.right_exponent, d.left_exponent);
    const double scale = std::pow(len / 2, 1 + d.left_exponent + d.right_exponent);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double t = rule.nodes[q];
        const double left = len * (1 + t) / 2;
        const double right = len * (1 - t) / 2;
        const double x = d.lo + left;
        const double regular = d.continuous(x) / (std::pow(left, d.left_exponent) * std::pow(right, d.right_exponent));
        const double w = scale * rule.weights[q] * regular;
        double power = 1;
        for (auto& m : out) {
            m += w * power;
            power *= x;
        }
    }
    return out;
}

std::vector<double> sample_moments(const Density& d, int n_max) {
    std::vector<double> out(static_cast<std::size_t>(n_max + 1), 0.0);
    for (std::size_t i = 0; i + 1 < d.samples.size(); ++i) {
        const auto [x0, y0] = d.samples[i];
        const auto [x1, y1] = d.samples[i + 1];
        const double h = (x1 - x0) / 2;
        double p0 = 1, p1 = 1;
        for (auto& m : out) {
            m += h * (y0 * p0 + y1 * p1);
            p0 *= x0;
            p1 *= x1;
        }
    }
    return out;
}

bool converged(const std::vector<double>& a, const std::vector<double>& b, double tol, int& first_bad) {
    for (std::size_t n = 0; n < a.size(); ++n) {
        const double scale = std::max(std::abs(b[n]), 1e-300);
        if (std::abs(a[n] - b[n]) > tol * scale) {
            first_bad = static_cast<int>(n);
            return false;
        }
    }
    return true;
}

Real horner(const std::vector<Real>& coeffs, const Real& t) {
    Real acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
}

// Shifted Jacobi polynomial P_j^{(2,0)}(2t - 1), orthogonal for (1-t)^2 on [0, 1].
Poly shifted_jacobi(int j) {
    Poly out;
    const Poly t_minus_one{-1, 1};
    for (int s = 0; s <= j; ++s) {
        const BigRat c = BigRat(binomial(j + 2, j - s)) * BigRat(binomial(j, s));
        out += pow(t_minus_one, static_cast<unsigned>(s)) * Poly::monomial(c, j - s);
    }
    return out;
}

BigRat integral_01(const Poly& p) {
    BigRat sum = 0;
    for (int i = 0; i <= p.degree(); ++i) sum += p.coeff(i) / (i + 1);
    return sum;
}

Density fit_density(const std::string& name, const BigRat& mu, std::vector<Real> q_coeffs) {
    Density d;
    d.name = name;
    d.lo = 0;
    d.hi = to_double(mu);
    d.kind = DensityKind::PolynomialFit;
    const Real mu_real = to_real(mu);
    d.continuous = [q = std::move(q_coeffs), mu_real](double x) { return as_double(horner(q, Real(x) / mu_real)); };
    return d;
}

} // namespace

std::string to_string(DensityKind k) {
    switch (k) {
    case DensityKind::Exact: return "Exact";
    case DensityKind::PiecewiseHypergeometric: return "PiecewiseHypergeometric";
    case DensityKind::PolynomialFit: return "PolynomialFit";
    case DensityKind::Numerical: return "Numerical";
    }
    return "?";
}

double Density::operator()(double x) const {
    if (!continuous || x < lo || x > hi) return 0;
    return continuous(x);
}

std::vector<std::string> density_catalog() {
    std::vector<std::string> names{"catalan", "motzkin", "av1342", "av1234"};
    for (int i = 1; i <= 13; ++i) names.push_back("walk" + std::to_string(i));
    return names;
}

Real av1234_piece_low(const Real& y) {
    const Real quad = y * y + 18 * y - 27;
    const Real prefactor = sqrt(-quad) / 6;
    if (y == 1) {
        // Gauss sum at argument 1: Gamma(1)^2 / (Gamma(5/4) Gamma(3/4)).
        return prefactor / (gamma_real(Real(5) / 4) * gamma_three_quarters());
    }
    const Real z = 64 * y * y * y / (quad * quad);
    return prefactor * gauss_2f1(kLowParams, z, kPieceTol);
}

Real av1234_piece_high(const Real& y) {
    if (y >= 9) return 0;
    const Real pi = real_pi();
    const Real g2 = gamma_three_quarters() * gamma_three_quarters();
    const Real quad = y * y + 18 * y - 27;
    const Real first_coef = 2 * g2 / (3 * pi * sqrt(pi));
    const Real second_coef = sqrt(pi) / (3072 * g2);
    const Real nine_minus = 9 - y;
    if (y == 1) {
        // (y - 1) 2F1(5/4,5/4;3/2;Z) -> Gamma(3/2) / Gamma(5/4)^2 * 64 / 8^3 as y -> 1.
        const Real gauss_first = gamma_real(Real(1) / 2) / g2;
        const Real g54 = gamma_real(Real(5) / 4);
        const Real limit = gamma_real(Real(3) / 2) / (g54 * g54) / 8;
        return first_coef * gauss_first + second_coef * 512 * 8 * limit;
    }
    const Real z = quad * quad / (64 * y * y * y);
    const Real first = first_coef * pow(y, Real(3) / 4) * gauss_2f1(kHighFirst, z, kPieceTol);
    const Real second = second_coef * (y - 1) * nine_minus * nine_minus * nine_minus * pow(y, Real(-15) / 4) * (-quad) *
                        gauss_2f1(kHighSecond, z, kPieceTol);
    return first + second;
}

const Av1234Calibration& av1234_calibration() {
    static const Av1234Calibration calibration = [] {
        const double r = 6 * std::numbers::sqrt3 - 9;
        Density low;
        low.lo = 0;
        low.hi = 1;
        low.kind = DensityKind::PiecewiseHypergeometric;
        low.continuous = [](double y) { return as_double(av1234_piece_low(Real(y)) / real_pi()); };
        Density high;
        high.lo = 1;
        high.hi = 9;
        high.kind = DensityKind::PiecewiseHypergeometric;
        high.breakpoints = {r};
        high.continuous = [](double y) { return as_double(av1234_piece_high(Real(y)) / real_pi()); };
        const auto ml = moments_of(low, 7, 1e-10);
        const auto mh = moments_of(high, 7, 1e-10);
        const MomentSeq target = generate(Family{FamilyKind::AvIncreasing, 4}, 8);
        // Least squares in relative error: minimise sum_n ((cl ml + ch mh) / f - 1)^2.
        double all = 0, alh = 0, ahh = 0, bl = 0, bh = 0;
        for (std::size_t n = 0; n < 8; ++n) {
            const double f = stieltjes::to_double(target[n]);
            const double u = ml[n] / f;
            const double v = mh[n] / f;
            all += u * u;
            alh += u * v;
            ahh += v * v;
            bl += u;
            bh += v;
        }
        const double det = all * ahh - alh * alh;
        Av1234Calibration c;
        c.fit_low = (bl * ahh - bh * alh) / det;
        c.fit_high = (all * bh - alh * bl) / det;
        c.factor_low = static_cast<int>(std::lround(c.fit_low));
        c.factor_high = static_cast<int>(std::lround(c.fit_high));
        for (std::size_t n = 0; n < 8; ++n) {
            const double f = stieltjes::to_double(target[n]);
            const double value = c.factor_low * ml[n] + c.factor_high * mh[n];
            c.max_rel_error = std::max(c.max_rel_error, std::abs(value - f) / f);
        }
        return c;
    }();
    return calibration;
}

double av1234_density(double x) {
    if (x < 0 || x > 9) return 0;
    const auto& c = av1234_calibration();
    if (x <= 1) return c.factor_low * as_double(av1234_piece_low(Real(x)) / real_pi());
    return c.factor_high * as_double(av1234_piece_high(Real(x)) / real_pi());
}

Density exact_density(const std::string& name) {
    Family family;
    try {
        family = Family::parse(name);
    } catch (const ComputationError&) {
        fail("UnknownName", "no exact density named '" + name + "'");
    }
    switch (family.kind) {
    case FamilyKind::Catalan:
        return make_exact("catalan", 0, 4, [](double x) { return std::sqrt((4 - x) / x) / (2 * kPi); }, -0.5, 0.5);
    case FamilyKind::Motzkin:
        return make_exact("motzkin", -1, 3, [](double x) { return semicircle(x, -1, 3) / (2 * kPi); }, 0.5, 0.5);
    case FamilyKind::Av1342:
        return make_exact("av1342", 0, 8,
                          [](double x) { return std::pow(8 - x, 1.5) * std::sqrt(x) / (2 * kPi * std::pow(1 + x, 3)); }, 0.5, 1.5);
    case FamilyKind::WalkModel: return walk_density(family.parameter);
    case FamilyKind::AvIncreasing:
        if (family.parameter == 3) {
            auto d = exact_density("catalan");
            d.name = "av123";
            return d;
        }
        if (family.parameter == 4) {
            const auto& c = av1234_calibration();
            Density d;
            d.name = "av1234";
            d.lo = 0;
            d.hi = 9;
            d.kind = DensityKind::PiecewiseHypergeometric;
            d.continuous = [](double x) { return av1234_density(x); };
            d.breakpoints = {1, 6 * std::numbers::sqrt3 - 9};
            d.meta["factor_low"] = std::to_string(c.factor_low);
            d.meta["factor_high"] = std::to_string(c.factor_high);
            d.meta["fit_low"] = std::to_string(c.fit_low);
            d.meta["fit_high"] = std::to_string(c.fit_high);
            d.meta["calibration_max_rel_error"] = std::to_string(c.max_rel_error);
            return d;
        }
        break;
    default: break;
    }
    fail("UnknownName", "no exact density named '" + name + "'");
}

GfEvaluator catalog_gf(const std::string& name) {
    Family family;
    try {
        family = Family::parse(name);
    } catch (const ComputationError&) {
        fail("UnknownName", "no closed-form generating function named '" + name + "'");
    }
    // Every branch is written in w = 1/z so that it is analytic off the support.
    switch (family.kind) {
    case FamilyKind::Catalan:
        return [](cplx z) {
            const cplx w = 1.0 / z;
            return w * (1.0 - std::sqrt(w - 4.0) / std::sqrt(w)) / 2.0;
        };
    case FamilyKind::Motzkin:
        return [](cplx z) {
            const cplx w = 1.0 / z;
            return w * w * (1.0 - 1.0 / w - std::sqrt(w - 3.0) * std::sqrt(w + 1.0) / w) / 2.0;
        };
    case FamilyKind::Av1342:
        return [](cplx z) {
            const cplx w = 1.0 / z;
            const cplx root = std::sqrt(w - 8.0) / std::sqrt(w);
            return (root * root * root + 1.0 + 20.0 * z - 8.0 * z * z) / (2.0 * std::pow(1.0 + z, 3));
        };
    case FamilyKind::WalkModel: {
        if (family.parameter == 13) {
            return [](cplx z) {
                const cplx w = 1.0 / z;
                return (std::pow((w + 2.0) / (w - 6.0), 0.25) - 1.0) / (2.0 * z);
            };
        }
        const WalkGf gf = walk_gf(family.parameter);
        // radicand(1/w) = (w - r1)(w - r2) / w^2, with real roots r1, r2.
        const double b = to_double(gf.radicand.coeff(1));
        const double c = to_double(gf.radicand.coeff(2));
        const double disc = std::sqrt(b * b - 4 * c);
        const double r1 = (-b - disc) / 2;
        const double r2 = (-b + disc) / 2;
        auto coeffs = [](const Poly& p) {
            std::vector<double> out;
            for (const auto& q : p.coeffs()) out.push_back(stieltjes::to_double(q));
            return out;
        };
        return [num = coeffs(gf.numerator), den = coeffs(gf.denominator), sign = gf.root_sign, r1, r2](cplx z) {
            auto eval = [&](const std::vector<double>& p) {
                cplx acc = 0;
                for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
                return acc;
            };
            const cplx w = 1.0 / z;
            const cplx root = std::sqrt(w - r1) * std::sqrt(w - r2) / w;
            return (eval(num) + static_cast<double>(sign) * root) / eval(den);
        };
    }
    default: break;
    }
    fail("UnknownName", "no closed-form generating function named '" + name + "'");
}

std::vector<double> default_eps_schedule() {
    std::vector<double> eps;
    for (int j = 0; j <= 8; ++j) eps.push_back(1e-2 * std::ldexp(1.0, -j));
    return eps;
}

double numeric_inversion(const GfEvaluator& gf, double x, const std::vector<double>& eps_schedule) {
    if (eps_schedule.size() < 4) fail("DomainError", "eps schedule needs at least 4 entries");
    std::vector<double> h;
    for (double eps : eps_schedule) {
        const cplx w(x, eps);
        h.push_back(-(gf(1.0 / w) / w).imag() / kPi);
    }
    // Three-point Richardson for halving steps, removing the eps and eps^2 terms.
    std::vector<double> est;
    for (std::size_t j = 2; j < h.size(); ++j) est.push_back((8 * h[j] - 6 * h[j - 1] + h[j - 2]) / 3);
    const std::size_t k = est.size();
    const double last = std::abs(est[k - 1] - est[k - 2]);
    const double prev = std::abs(est[k - 2] - est[k - 3]);
    if (!std::isfinite(est[k - 1]) || (last > 1e-8 * std::max(1.0, std::abs(est[k - 1])) && last > 0.5 * prev))
        fail("ExtrapolationDiverged", "no eps -> 0 limit at x = " + std::to_string(x));
    return est[k - 1];
}

PolynomialFit poly_moment_fit(const MomentSeq& seq, const FitConfig& cfg) {
    const int n = cfg.n;
    if (n < 0) fail("DomainError", "fit needs n >= 0");
    if (sgn(cfg.right_end) <= 0) fail("DomainError", "right end must be positive");
    if (seq.size() < static_cast<std::size_t>(n + 1)) fail("InsufficientTerms", "fit needs a_0 .. a_" + std::to_string(n));
    const BigRat& mu = cfg.right_end;
    const int dim = n + 3;
    PolynomialFit out;
    // Work with Q(t) = P(mu t) on [0, 1]: int t^k Q = a_k / mu^(k+1).
    if (cfg.basis == FitBasis::MonomialExact) {
        RatMatrix m(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
        std::vector<BigRat> rhs(static_cast<std::size_t>(dim));
        for (int k = 0; k <= n; ++k) {
            for (int j = 0; j < dim; ++j) m(k, j) = BigRat(1, j + k + 1);
            rhs[k] = seq[k] / pow(mu, k + 1);
        }
        for (int j = 0; j < dim; ++j) {
            m(n + 1, j) = 1;
            m(n + 2, j) = j;
        }
        const auto q = solve_exact(m, rhs);
        std::vector<BigRat> p(q.size());
        std::vector<Real> q_real;
        for (std::size_t j = 0; j < q.size(); ++j) {
            p[j] = q[j] / pow(mu, static_cast<long>(j));
            q_real.push_back(to_real(q[j]));
        }
        out.poly = Poly(p);
        out.density = fit_density("fit(" + seq.name + ")", mu, std::move(q_real));
    } else {
        // Q = (1-t)^2 sum_j d_j P_j with P_j orthogonal for (1-t)^2, so each d_j is explicit.
        const Real mu_real = to_real(mu);
        std::vector<Real> moments;
        for (int k = 0; k <= n; ++k) moments.push_back(to_real(seq[k]) / pow(mu_real, k + 1));
        std::vector<Real> inner(static_cast<std::size_t>(n + 1), Real(0));
        const Poly weight{1, -2, 1};
        for (int j = 0; j <= n; ++j) {
            const Poly pj = shifted_jacobi(j);
            const Real norm = to_real(integral_01(weight * pj * pj));
            Real proj = 0;
            for (int i = 0; i <= pj.degree(); ++i) proj += to_real(pj.coeff(i)) * moments[i];
            const Real dj = proj / norm;
            out.float_coeffs.push_back(dj.convert_to<double>());
            for (int i = 0; i <= pj.degree(); ++i) inner[i] += dj * to_real(pj.coeff(i));
        }
        std::vector<Real> q(static_cast<std::size_t>(dim), Real(0));
        for (int i = 0; i <= n; ++i) {
            q[i] += inner[i];
            q[i + 1] -= 2 * inner[i];
            q[i + 2] += inner[i];
        }
        out.density = fit_density("fit(" + seq.name + ")", mu, std::move(q));
    }
    out.density.meta["degree"] = std::to_string(n + 2);
    out.density.meta["right_end"] = to_string(mu);
    out.density.meta["basis"] = cfg.basis == FitBasis::MonomialExact ? "monomial-exact" : "shifted-jacobi";
    return out;
}

std::vector<double> moments_of(const Density& d, int n_max, double tol) {
    if (n_max < 0) fail("DomainError", "n_max must be >= 0");
    std::vector<double> result(static_cast<std::size_t>(n_max + 1), 0.0);
    if (!d.samples.empty()) {
        result = sample_moments(d, n_max);
    } else if (d.continuous && d.hi > d.lo) {
        std::vector<double> previous;
        int first_bad = 0;
        bool done = false;
        if (d.kind == DensityKind::Exact) {
            // One Gauss-Jacobi rule over the whole support, exact for smooth regular parts.
            for (int nodes = 32; nodes <= 512 && !done; nodes *= 2) {
                auto current = jacobi_moments(d, nodes, n_max);
                done = !previous.empty() && converged(current, previous, tol, first_bad);
                previous = std::move(current);
            }
        }
        if (!done) {
            std::vector<double> cuts{d.lo};
            for (double b : d.breakpoints)
                if (b > d.lo && b < d.hi) cuts.push_back(b);
            cuts.push_back(d.hi);
            std::sort(cuts.begin(), cuts.end());
            std::vector<Panel> panels;
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                const double left = i == 0 ? d.left_exponent : 0;
                const double right = i + 2 == cuts.size() ? d.right_exponent : 0;
                append_graded_panels(panels, cuts[i], cuts[i + 1], left, right, 40);
            }
            previous.clear();
            for (int nodes = 8; nodes <= 64 && !done; nodes *= 2) {
                auto current = panel_moments(d.continuous, panels, nodes, n_max);
                done = !previous.empty() && converged(current, previous, tol, first_bad);
                previous = std::move(current);
            }
        }
        if (!done) fail("QuadratureFail", "n=" + std::to_string(first_bad));
        result = std::move(previous);
    }
    for (const auto& atom : d.atoms) {
        double power = atom.weight;
        for (auto& m : result) {
            m += power;
            power *= atom.location;
        }
    }
    return result;
}

Density shifted_forward(const Density& d) {
    Density out = d;
    out.name = "shift(" + d.name + ")";
    if (d.continuous) out.continuous = [f = d.continuous](double x) { return x * f(x); };
    for (auto& s : out.samples) s.second *= s.first;
    for (auto& a : out.atoms) a.weight *= a.location;
    std::erase_if(out.atoms, [](const Atom& a) { return a.weight == 0; });
    return out;
}

Density power_pushforward(const Density& d, int r) {
    if (r < 1) fail("DomainError", "power must be >= 1");
    if (d.lo < 0) fail("UnboundedSupport", "power push-forward needs support in [0, inf)");
    if (!d.samples.empty()) fail("DomainError", "power push-forward of a sampled density is not supported");
    Density out = d;
    out.name = "pow" + std::to_string(r) + "(" + d.name + ")";
    out.lo = std::pow(d.lo, r);
    out.hi = std::pow(d.hi, r);
    const double inv = 1.0 / r;
    if (d.continuous)
        out.continuous = [f = d.continuous, inv](double y) { return f(std::pow(y, inv)) * inv * std::pow(y, inv - 1); };
    if (d.lo == 0) out.left_exponent = (d.left_exponent + 1) * inv - 1;
    for (auto& b : out.breakpoints) b = std::pow(b, r);
    for (auto& a : out.atoms) a.location = std::pow(a.location, r);
    return out;
}

Density dilated(const Density& d, double tau, double weight) {
    if (tau <= 0) fail("DomainError", "dilation factor must be positive");
    Density out = d;
    out.name = d.name;
    out.lo = tau * d.lo;
    out.hi = tau * d.hi;
    if (d.continuous) out.continuous = [f = d.continuous, tau, weight](double x) { return weight * f(x / tau) / tau; };
    for (auto& s : out.samples) s = {tau * s.first, weight * s.second / tau};
    for (auto& b : out.breakpoints) b *= tau;
    for (auto& a : out.atoms) a = {tau * a.location, weight * a.weight};
    return out;
}

Density sampled_density(std::string name, std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) fail("DomainError", "a sampled density needs at least two points");
    std::sort(samples.begin(), samples.end());
    Density d;
    d.name = std::move(name);
    d.kind = DensityKind::Numerical;
    d.lo = samples.front().first;
    d.hi = samples.back().first;
    d.samples = samples;
    d.continuous = [s = std::move(samples)](double x) {
        auto it = std::lower_bound(s.begin(), s.end(), std::make_pair(x, -HUGE_VAL));
        if (it == s.end()) return 0.0;
        if (it == s.begin()) return it->first == x ? it->second : 0.0;
        const auto& [x1, y1] = *it;
        const auto& [x0, y0] = *(it - 1);
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    };
    return d;
}

Density mult_convolution(const Density& a, const Density& b, int grid) {
    const bool a_cont = static_cast<bool>(a.continuous);
    const bool b_cont = static_cast<bool>(b.continuous);
    if ((a_cont && a.lo < 0) || (b_cont && b.lo < 0)) fail("UnboundedSupport", "multiplicative convolution needs supports in [0, inf)");
    for (const auto* d : {&a, &b})
        for (const auto& atom : d->atoms)
            if (atom.location < 0) fail("UnboundedSupport", "multiplicative convolution needs atoms in [0, inf)");
    if (grid < 8) fail("DomainError", "grid must have at least 8 points");

    const std::string name = "(" + a.name + ")*(" + b.name + ")";
    // A single unit-free atom acts as a dilation, which is exact.
    if (!b_cont && b.atoms.size() == 1 && b.atoms[0].location > 0) {
        auto out = dilated(a, b.atoms[0].location, b.atoms[0].weight);
        out.name = name;
        return out;
    }
    if (!a_cont && a.atoms.size() == 1 && a.atoms[0].location > 0) {
        auto out = dilated(b, a.atoms[0].location, a.atoms[0].weight);
        out.name = name;
        return out;
    }

    std::vector<Atom> atoms;
    for (const auto& p : a.atoms)
        for (const auto& q : b.atoms) atoms.push_back({p.location * q.location, p.weight * q.weight});

    double lo = HUGE_VAL, hi = -HUGE_VAL;
    auto extend = [&](double l, double h) {
        lo = std::min(lo, l);
        hi = std::max(hi, h);
    };
    if (a_cont && b_cont) extend(a.lo * b.lo, a.hi * b.hi);
    if (a_cont)
        for (const auto& q : b.atoms)
            if (q.location > 0) extend(a.lo * q.location, a.hi * q.location);
    if (b_cont)
        for (const auto& p : a.atoms)
            if (p.location > 0) extend(b.lo * p.location, b.hi * p.location);

    if (!(lo < hi)) {
        Density out;
        out.name = name;
        out.kind = DensityKind::Numerical;
        out.atoms = std::move(atoms);
        return out;
    }

    boost::math::quadrature::tanh_sinh<double> integrator;
    auto value = [&](double x) {
        double total = 0;
        if (a_cont && b_cont) {
            const double s_lo = std::max(a.lo, x / b.hi);
            const double s_hi = b.lo > 0 ? std::min(a.hi, x / b.lo) : a.hi;
            if (s_lo < s_hi) {
                try {
                    total += integrator.integrate([&](double s) { return a(s) * b(x / s) / s; }, s_lo, s_hi);
                } catch (const std::exception&) {
                    total = HUGE_VAL;
                }
            }
        }
        for (const auto& q : b.atoms)
            if (q.location > 0) total += q.weight * a(x / q.location) / q.location;
        for (const auto& p : a.atoms)
            if (p.location > 0) total += p.weight * b(x / p.location) / p.location;
        return std::isfinite(total) ? total : 0.0;
    };
    // Grid graded like u^4 toward both ends, where algebraic-logarithmic endpoint behaviour sits.
    std::vector<std::pair<double, double>> samples;
    const double len = hi - lo;
    for (int i = 0; i <= grid; ++i) {
        const double u = static_cast<double>(i) / grid;
        const double s = u <= 0.5 ? 8 * std::pow(u, 4) : 1 - 8 * std::pow(1 - u, 4);
        const double x = lo + len * s;
        samples.emplace_back(x, (i == 0 || i == grid) ? 0.0 : value(x));
    }
    auto out = sampled_density(name, std::move(samples));
    out.atoms = std::move(atoms);
    return out;
}

MPoly algebraic_density_poly(const MPoly& k) {
    if (k.nvars() != 2) fail("DomainError", "expected a polynomial in (x, y)");
    if (k.degree_in(1) < 1) fail("DomainError", "polynomial does not involve y");
    // Square-freeness in y, checked at two generic rational x values.
    int repeated = 0;
    for (const BigRat& x0 : {rat(7, 3), rat(13, 5)}) {
        const Poly p = k.restrict_to(1, {x0, BigRat(0)});
        if (gcd(p, p.derivative()).degree() > 0) ++repeated;
    }
    if (repeated == 2) fail("NotSquareFree", "polynomial has a repeated factor in y");

    // y = u + i v: split (u + i v)^m into real and imaginary parts in variables (x, u, v).
    MPoly re(3), im(3);
    for (const auto& [exps, c] : k.terms()) {
        const int xe = exps[0];
        const int ye = exps[1];
        for (int m = 0; m <= ye; ++m) {
            const BigRat coef = c * BigRat(binomial(ye, m));
            const int sign = ((m / 2) % 2 == 0) ? 1 : -1;
            const MPoly term = MPoly::term(3, coef * sign, {xe, ye - m, m});
            if (m % 2 == 0) re += term;
            else im += term;
        }
    }
    const MPoly res = resultant(re, im, 1);
    MPoly out(2);
    for (const auto& [exps, c] : res.terms()) out += MPoly::term(2, c, {exps[0], exps[2]});
    return out.normalized();
}

} // namespace stieltjes
