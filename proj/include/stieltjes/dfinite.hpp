#pragma once

#include "stieltjes/bigrat.hpp"
#include "stieltjes/poly.hpp"
#include "stieltjes/series.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stieltjes {

// (1/denominator) * sum_i coeffs[i] D^i with D = d/dx.
struct DiffOp {
    std::vector<Poly> coeffs;
    Poly denominator = Poly{1};

    DiffOp() = default;
    explicit DiffOp(std::vector<Poly> c, Poly den = Poly{1});

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    const Poly& leading() const { return coeffs.back(); }
    // Same operator after x -> x + x0, i.e. written in t = x - x0.
    DiffOp shifted(const BigRat& x0) const;
    std::string to_string(const std::string& var = "x") const;
};

// True when a and b agree up to a nonzero rational factor (denominators included).
bool proportional(const DiffOp& a, const DiffOp& b);

// Operators by name: L2 L3 L4 L5 L6 U2 A4 mux2 p4-to-mu mu4 Lcal2 Lcal3 I0 I1
// catalan (homogeneous part of the Catalan generating-function equation).
DiffOp named_operator(std::string_view name);
std::vector<std::string> operator_names();

// sum_i coeffs[i] s^(i) / denominator, with the certified order tracked.
TruncSeries apply_op(const DiffOp& op, const TruncSeries& s);

// Operator in y annihilating y^-1 f(1/y) whenever op annihilates f; the
// coefficients are cleared to coprime polynomials with a monic top
// coefficient.
DiffOp pullback_inverse(const DiffOp& op);

// Power-series basis at an ordinary point x0, as series in t = x - x0.
// Element j has initial data t^j for j < op.order().
std::vector<TruncSeries> local_solutions(const DiffOp& op, const BigRat& x0, int order);

// Whether dst(intertwiner(s)) vanishes through the order for each local
// solution s of src at x0.
bool gauge_equiv_check(const DiffOp& src, const DiffOp& intertwiner, const DiffOp& dst,
                       const BigRat& x0, int order);

struct IdentityCheckReport {
    std::string id;
    int order = 0;
    TruncSeries residual;
    bool pass = false;
    // Named sub-checks; the top-level residual is the first nonzero one.
    std::vector<std::pair<std::string, TruncSeries>> parts;
    double max_rel_error = 0.0;  // numeric checks only
    std::string note;
};

std::vector<std::string> identity_catalog();  // "a" .. "p"
IdentityCheckReport check_identity(std::string_view id, int order);

// n!^2 [x^n] det[I_{i-j}] for n < n_terms minus the hook-length count of
// permutations with longest increasing subsequence at most k.
TruncSeries toeplitz_count_residual(int k, int n_terms);
// Permutations of n with longest increasing subsequence <= k, summed over
// shapes by the hook-length formula.
BigInt lis_bounded_count(int n, int k);

} // namespace stieltjes
