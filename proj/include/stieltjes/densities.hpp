#pragma once

#include "stieltjes/bigrat.hpp"
#include "stieltjes/hyp2f1.hpp"
#include "stieltjes/mpoly.hpp"
#include "stieltjes/poly.hpp"
#include "stieltjes/sequences.hpp"

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace stieltjes {

struct Atom {
    double location;
    double weight;
};

enum class DensityKind { Exact, PiecewiseHypergeometric, PolynomialFit, Numerical };
std::string to_string(DensityKind k);

// Continuous part on [lo, hi] plus Dirac atoms. The endpoint exponents
// describe continuous(x) ~ (x-lo)^left_exponent and (hi-x)^right_exponent,
// and steer the quadrature.
struct Density {
    std::string name;
    double lo = 0;
    double hi = 0;
    std::function<double(double)> continuous;
    std::vector<Atom> atoms;
    DensityKind kind = DensityKind::Exact;
    double left_exponent = 0;
    double right_exponent = 0;
    std::vector<double> breakpoints;                 // interior non-analytic points
    std::vector<std::pair<double, double>> samples;  // grid values of Numerical densities
    std::map<std::string, std::string> meta;

    // Continuous part, zero outside the support.
    double operator()(double x) const;
};

// catalan, motzkin, av1342, av1234, walk1 .. walk13. Throws UnknownName.
Density exact_density(const std::string& name);
std::vector<std::string> density_catalog();

// Unscaled pieces of the Av(1234) density, before the per-interval factor:
// sqrt(27-18y-y^2)/(6 pi) 2F1(-1/4,1/4;1;64y^3/(y^2+18y-27)^2) on [0,1] and the
// two-term 2F1(-1/4,-1/4;1/2;Z), 2F1(5/4,5/4;3/2;Z) combination on [1,9],
// Z = (y^2+18y-27)^2/(64y^3).
Real av1234_piece_low(const Real& y);
Real av1234_piece_high(const Real& y);

struct Av1234Calibration {
    double fit_low = 0;    // least-squares factors before rounding
    double fit_high = 0;
    int factor_low = 0;    // rounded factors used by the density
    int factor_high = 0;
    double max_rel_error = 0;  // of moments 0..7 after rounding
};
// Determines the factor on each interval by matching moments 0..7 with f_{n3}.
const Av1234Calibration& av1234_calibration();
double av1234_density(double x);

using GfEvaluator = std::function<std::complex<double>(std::complex<double>)>;
// Closed-form generating functions (principal branches) for the catalog.
GfEvaluator catalog_gf(const std::string& name);
std::vector<double> default_eps_schedule();
// -Im(g(x + i eps))/pi with g(w) = f(1/w)/w, extrapolated to eps -> 0.
// Throws ExtrapolationDiverged.
double numeric_inversion(const GfEvaluator& gf, double x, const std::vector<double>& eps_schedule = default_eps_schedule());

enum class FitBasis { MonomialExact, ShiftedJacobi };
struct FitConfig {
    int n = 0;            // moments a_0 .. a_n are matched; degree n + 2
    BigRat right_end;     // mu: support [0, mu], P(mu) = P'(mu) = 0
    FitBasis basis = FitBasis::MonomialExact;
};
struct PolynomialFit {
    Poly poly;  // exact on the MonomialExact path
    std::vector<double> float_coeffs;  // shifted-Legendre coefficients on the floating path
    Density density;
};
// Throws SingularSystem, InsufficientTerms.
PolynomialFit poly_moment_fit(const MomentSeq& seq, const FitConfig& cfg);

// Moments 0..n_max of the continuous part plus atoms. Throws QuadratureFail(n).
std::vector<double> moments_of(const Density& d, int n_max, double tol = 1e-12);

// x mu(x): the density whose moments are the forward-shifted sequence.
Density shifted_forward(const Density& d);
// Push-forward under x -> x^r (support in [0, inf)): moments a_{r n}.
Density power_pushforward(const Density& d, int r);
// mu(x / tau) / tau: moments scale by tau^n.
Density dilated(const Density& d, double tau, double weight = 1);
// Grid density, piecewise linear between samples (sorted by x).
Density sampled_density(std::string name, std::vector<std::pair<double, double>> samples);

// nu(x) = integral mu(s) lambda(x/s) ds/s on a grid of `grid` points.
// Throws UnboundedSupport for supports reaching below 0.
Density mult_convolution(const Density& a, const Density& b, int grid = 600);

// K(x, y) in variables (x, y) with g = y a root: returns Res_u(Re K(x, u+iv), Im K(x, u+iv))
// as a polynomial in (x, v). Throws NotSquareFree.
MPoly algebraic_density_poly(const MPoly& k);

} // namespace stieltjes
