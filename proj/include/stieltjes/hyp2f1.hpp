#pragma once

#include "stieltjes/bigrat.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <vector>

namespace stieltjes {

using Real = boost::multiprecision::cpp_bin_float_50;
using Complex = boost::multiprecision::cpp_complex_50;

Real to_real(const BigRat& q);
Real real_pi();

struct HypParams {
    BigRat a;
    BigRat b;
    BigRat c;
};

// Gamma on the positive axis (and elsewhere away from the poles).
Real gamma_real(const Real& x);
// 1/Gamma(x), zero at the poles.
Real rgamma_real(const Real& x);

// 2F1(a,b;c;z) for real z < 1. Direct series on [-1/2, 1/2], Pfaff map for
// z < -1/2, connection formulas around z = 1 on (1/2, 1), including the
// logarithmic cases where c-a-b is an integer. Throws BranchPoint for z >= 1,
// NoConvergence if a series exceeds its term cap.
Real gauss_2f1(const HypParams& p, const Real& z, const Real& tol = Real("1e-12"));

// d/dz 2F1 = (ab/c) 2F1(a+1,b+1;c+1;z).
Real gauss_2f1_derivative(const HypParams& p, const Real& z, const Real& tol = Real("1e-12"));

// Limit of 2F1(a,b;c;x + i0) for x > 1 (from above the cut), via the
// connection formula in 1-z. Throws IntegerExponentDegenerate when c-a-b is
// an integer. The limit from below is the complex conjugate.
Complex hyp2f1_above_cut(const HypParams& p, const Real& x, const Real& tol = Real("1e-12"));
Real im_2f1_above_cut(const HypParams& p, const Real& x, const Real& tol = Real("1e-12"));

// Analytic continuation of 2F1 from z = 1/4 along the polygon through
// `waypoints` (ending at the target) by Taylor stepping on the
// hypergeometric equation. Independent of the connection formulas.
Complex continue_2f1(const HypParams& p, const std::vector<Complex>& waypoints);

} // namespace stieltjes
