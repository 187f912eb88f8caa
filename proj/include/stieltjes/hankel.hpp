#pragma once

#include "stieltjes/bigrat.hpp"
#include "stieltjes/cfrac.hpp"
#include "stieltjes/sequences.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stieltjes {

// Delta_shift^1 .. Delta_shift^n_max, where Delta_s^n = det[a_{i+j+s}]_{i,j<n}.
std::vector<BigRat> minors(const MomentSeq& seq, int shift, int n_max);

enum class Verdict { StieltjesConsistent, HamburgerOnlyConsistent, NotHamburger };
std::string to_string(Verdict v);

struct Violation {
    int shift;
    int n;
};

// A verdict on the available prefix only: finitely many minors never prove
// the moment property.
struct HankelReport {
    std::vector<BigRat> delta0;
    std::vector<BigRat> delta1;
    Verdict verdict = Verdict::StieltjesConsistent;
    std::optional<Violation> first_violation;
    std::size_t prefix_terms = 0;

    std::string summary() const;
};

HankelReport classify(const MomentSeq& seq);

// Delta_0^n = a0^n (alpha1 alpha2)^(n-1) (alpha3 alpha4)^(n-2) ... and
// Delta_1^n = a0^n alpha1^n (alpha2 alpha3)^(n-1) ... for n <= n_max.
bool check_minor_alpha(const MomentSeq& seq, const SFrac& cf, int n_max);

// Random 3x3 minors of the infinite Hankel matrix H_0 (condition (c) spot check).
struct MinorSample {
    int sampled = 0;
    int negative = 0;
};
MinorSample sample_minors(const MomentSeq& seq, int count, std::uint64_t seed);

struct WalkClosedForm {
    int model = 0;
    BigRat q;                          // Delta_0^2, models 1-12
    std::vector<BigRat> delta0;
    std::vector<BigRat> delta1;
    std::vector<BigRat> u;             // u_n = Delta_1^(n+1) / Delta_0^(n+1)
    std::vector<BigRat> recurrence;    // u_{n+d} = sum_i c_i u_{n+d-i}, models 1-12
};

// Delta_0^n = q^C(n,2) and a constant-coefficient recurrence for u (models 1-12);
// the quarter-turn ASM product and the polynomial recurrence for model 13.
// Throws ClosedFormMismatch.
WalkClosedForm check_walk_closed_forms(int model, int n_max);

// (-4)^C(n,2) prod_{i,j=1..n} (4(j-i)+1)/(j-i+n).
BigRat quarter_turn_asm(int n);

} // namespace stieltjes
