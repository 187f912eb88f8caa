#include "stieltjes/bessel.hpp"
#include "stieltjes/dfinite.hpp"
#include "stieltjes/error.hpp"
#include "stieltjes/sequences.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace stieltjes;

namespace {

// x = 1/y about y0 = -1, written in u = y + 1: returns x + 1 and y.
std::pair<TruncSeries, TruncSeries> inverse_chart(int order) {
    const TruncSeries y = TruncSeries::from_poly(Poly{-1, 1}, order);
    const TruncSeries x = TruncSeries::constant(1, order) / y;
    return {x + TruncSeries::constant(1), y};
}

bool same_coeffs(const DiffOp& a, const std::vector<Poly>& coeffs) {
    if (a.coeffs.size() != coeffs.size()) return false;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (!(a.coeffs[i] == coeffs[i])) return false;
    return a.denominator == Poly{1};
}

} // namespace

TEST_CASE("apply_op on Bessel, constants and the Catalan equation", "[dfinite]") {
    const TruncSeries i0 = bessel_i(0, 40).series;
    const TruncSeries r = apply_op(named_operator("I0"), i0);
    CHECK(r.order() >= 38);
    CHECK(r.is_zero());

    const TruncSeries c = TruncSeries::constant(7);
    CHECK(apply_op(DiffOp({Poly{}, Poly{1}}), c).is_zero());

    // z(4z-1) f' + (2z-1) f + 1 = 0
    const TruncSeries f = generate(Family::parse("catalan"), 42).as_series();
    const TruncSeries inhom = apply_op(named_operator("catalan"), f) + TruncSeries::constant(1);
    CHECK(inhom.order() >= 40);
    CHECK(inhom.truncated(40).is_zero());
}

TEST_CASE("apply_op tracks truncation and is linear", "[dfinite]") {
    const DiffOp op = named_operator("L3");
    const TruncSeries s = generate(Family::parse("catalan"), 20).as_series();
    CHECK(apply_op(op, s).order() == 20);
    CHECK_THROWS_AS(apply_op(op, TruncSeries::from_terms({1, 2, 3})), ComputationError);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> pick(-50, 50);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<BigRat> a(25), b(25);
        for (auto& v : a) v = BigRat(pick(rng), 1 + (pick(rng) + 50) % 7);
        for (auto& v : b) v = BigRat(pick(rng), 1 + (pick(rng) + 50) % 5);
        const TruncSeries sa = TruncSeries::from_terms(a), sb = TruncSeries::from_terms(b);
        const BigRat k(pick(rng), 3);
        const TruncSeries lhs = apply_op(op, sa * k + sb);
        const TruncSeries rhs = apply_op(op, sa) * k + apply_op(op, sb);
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("operator with a monomial denominator divides exactly", "[dfinite]") {
    const DiffOp op({Poly{1}}, Poly::x());
    const TruncSeries r = apply_op(op, TruncSeries::constant(3));
    CHECK(r.exact());
    CHECK(r.coeff(-1) == 3);
}

TEST_CASE("pullback_inverse of the Catalan operator", "[dfinite]") {
    const DiffOp g = pullback_inverse(named_operator("catalan"));
    CHECK(same_coeffs(g, {Poly{-2}, Poly{0, -4, 1}}));
}

TEST_CASE("pullback_inverse on a rational witness", "[dfinite]") {
    // (1-x) f' - f = 0 has f = 1/(1-x); y^-1 f(1/y) = 1/(y-1)
    const DiffOp op({Poly{-1}, Poly{1, -1}});
    const DiffOp back = pullback_inverse(op);
    const TruncSeries h = TruncSeries::constant(1, 40) / TruncSeries::from_poly(Poly{-1, 1});
    const TruncSeries r = apply_op(back, h);
    CHECK(r.order() >= 38);
    CHECK(r.is_zero());
}

TEST_CASE("pullback of L3 and the printed density operator", "[dfinite]") {
    const DiffOp mu = pullback_inverse(named_operator("L3"));
    const Poly x = Poly::x();
    // printed constant coefficient is -12(x-2); the pullback gives -12(x+2)
    CHECK(same_coeffs(mu, {Poly{-24, -12}, Poly{0, 20, 10}, Poly{0, 128, 2, -4}, Poly{0, 0, 64, -20, 1}}));
    CHECK_FALSE(proportional(mu, named_operator("mu4")));
    const DiffOp printed = named_operator("mu4");
    for (int i = 1; i <= 3; ++i) CHECK(mu.coeffs[static_cast<std::size_t>(i)] == printed.coeffs[static_cast<std::size_t>(i)]);

    // transport local solutions of L3 at x = -1 to y = 1/x about y = -1
    const int order = 40;
    const auto [t, y] = inverse_chart(order + 4);
    for (const auto& s : local_solutions(named_operator("L3"), -1, order + 4)) {
        const TruncSeries h = s.compose(t) / y;
        const TruncSeries ours = apply_op(mu.shifted(-1), h);
        const TruncSeries theirs = apply_op(printed.shifted(-1), h);
        CHECK(ours.truncated(order).is_zero());
        CHECK_FALSE(theirs.truncated(order).is_zero());
    }
}

TEST_CASE("the mu(x^2) operator follows from the pulled-back operator", "[dfinite]") {
    // s(y) solves the density operator at y = 1; s(x^2) must solve mux2 at x = 1
    const DiffOp mu = pullback_inverse(named_operator("L3"));
    const int order = 30;
    const TruncSeries square_shift = TruncSeries::from_poly(Poly{0, 2, 1});  // x^2 - 1 in t = x - 1
    for (const auto& s : local_solutions(mu, 1, order + 4)) {
        const TruncSeries composed = s.compose(square_shift.truncated(order + 4));
        const TruncSeries r = apply_op(named_operator("mux2").shifted(1), composed);
        CHECK(r.truncated(order).is_zero());
    }
}

TEST_CASE("pullback_inverse is an involution on solution spaces", "[dfinite]") {
    for (const char* name : {"L2", "L3", "U2", "A4"}) {
        const DiffOp op = named_operator(name);
        const DiffOp twice = pullback_inverse(pullback_inverse(op));
        CHECK(proportional(twice, pullback_inverse(pullback_inverse(twice))));
        for (const auto& s : local_solutions(op, rat(-1, 3), 30)) {
            const TruncSeries r = apply_op(twice.shifted(rat(-1, 3)), s);
            CHECK(r.truncated(25).is_zero());
        }
    }
}

TEST_CASE("local_solutions basics", "[dfinite]") {
    const auto basis = local_solutions(DiffOp({Poly{}, Poly{}, Poly{1}}), 0, 10);
    REQUIRE(basis.size() == 2);
    CHECK((basis[0] - TruncSeries::constant(1)).is_zero());
    CHECK((basis[1] - TruncSeries::monomial(1, 1)).is_zero());

    const DiffOp a4 = named_operator("A4");
    const auto sols = local_solutions(a4, 1, 34);
    REQUIRE(sols.size() == 3);
    for (int j = 0; j < 3; ++j) {
        CHECK(sols[static_cast<std::size_t>(j)].coeff(j) == 1);
        const TruncSeries r = apply_op(a4.shifted(1), sols[static_cast<std::size_t>(j)]);
        CHECK(r.order() >= 30);
        CHECK(r.truncated(30).is_zero());
    }
    CHECK_THROWS_AS(local_solutions(a4, 0, 10), ComputationError);
    CHECK_THROWS_AS(local_solutions(named_operator("L2"), rat(1, 9), 10), ComputationError);
}

TEST_CASE("local solutions of the I0 equation reproduce the Taylor shift of I0", "[dfinite]") {
    // I0 = sum x^m / m!^2; its Taylor coefficients at 1 are sum_m binom(m, j) / m!^2
    constexpr int kTerms = 15;
    std::vector<double> taylor(kTerms, 0.0);
    for (int j = 0; j < kTerms; ++j) {
        double acc = 0;
        for (int m = j; m < 60; ++m) {
            double term = 1;
            for (int i = 1; i <= m; ++i) term /= static_cast<double>(i) * i;
            acc += std::tgamma(m + 1.0) / (std::tgamma(j + 1.0) * std::tgamma(m - j + 1.0)) * term;
        }
        taylor[static_cast<std::size_t>(j)] = acc;
    }
    const auto sols = local_solutions(named_operator("I0"), 1, kTerms);
    REQUIRE(sols.size() == 2);
    for (int j = 0; j < kTerms; ++j) {
        const double combo = taylor[0] * to_double(sols[0].coeff(j)) + taylor[1] * to_double(sols[1].coeff(j));
        CHECK(std::abs(combo - taylor[static_cast<std::size_t>(j)]) <= 1e-12 * std::max(1.0, std::abs(taylor[static_cast<std::size_t>(j)])));
    }
}

TEST_CASE("gauge equivalence of the random-walk and trace operators", "[dfinite]") {
    const DiffOp a4 = named_operator("A4");
    CHECK(gauge_equiv_check(a4, named_operator("p4-to-mu"), named_operator("mux2"), 1, 30));
    CHECK(gauge_equiv_check(a4, DiffOp({Poly{1}}), a4, 1, 30));
    CHECK_FALSE(gauge_equiv_check(a4, DiffOp({Poly{1}}), DiffOp({Poly{}, Poly{1}}), 1, 30));
    CHECK_THROWS_AS(gauge_equiv_check(a4, DiffOp({Poly{1}}), a4, 2, 30), ComputationError);
}

TEST_CASE("hook-length counts agree with brute force", "[dfinite]") {
    for (int k = 3; k <= 6; ++k) {
        const auto brute = brute_force_av(Pattern::increasing(k + 1), 8);
        for (int n = 0; n <= 8; ++n) CHECK(BigRat(lis_bounded_count(n, k)) == brute[static_cast<std::size_t>(n)]);
    }
    CHECK(lis_bounded_count(10, 10) == factorial(10));
}

TEST_CASE("Toeplitz determinant reproduces f_{n4} through n = 25", "[dfinite]") {
    const TruncSeries r = toeplitz_count_residual(4, 26);
    CHECK(r.order() == 26);
    CHECK(r.is_zero());
    const auto seq = generate(Family::parse("av12345"), 26);
    const TruncSeries y = bessel_toeplitz_det(4, 26);
    for (int n = 0; n < 26; ++n) {
        const BigInt f = factorial(static_cast<unsigned long>(n));
        CHECK(y.coeff(n) * BigRat(f * f) == seq[static_cast<std::size_t>(n)]);
    }
    const std::vector<long> printed{1, 1, 2, 6, 24, 119, 694, 4582, 33324};
    for (std::size_t n = 0; n < printed.size(); ++n) CHECK(seq[n] == printed[n]);
}

TEST_CASE("identity catalog", "[dfinite]") {
    const auto a = check_identity("a", 60);
    CHECK(a.pass);
    CHECK(a.order == 60);
    CHECK(a.residual.is_zero());
    CHECK(check_identity("g", 40).pass);
    for (const char* id : {"b", "h", "i", "k", "n", "o", "p"}) {
        INFO(id);
        CHECK(check_identity(id, 20).pass);
    }
    const auto d = check_identity("d", 20);
    CHECK(d.pass);
    CHECK(d.note.find("x^-1") != std::string::npos);
    const auto f = check_identity("f", 20);
    CHECK(f.pass);
    CHECK(f.note.find("residual") != std::string::npos);
    CHECK_THROWS_AS(check_identity("q", 20), ComputationError);
    CHECK_THROWS_AS(check_identity("a", 5), ComputationError);
    CHECK(identity_catalog().size() == 16);
}

TEST_CASE("named operators are well formed", "[dfinite]") {
    for (const auto& name : operator_names()) {
        const DiffOp op = named_operator(name);
        CHECK(!op.leading().is_zero());
        CHECK(!op.to_string().empty());
    }
    CHECK(named_operator("L6").order() == 6);
    CHECK(named_operator("p4-to-mu").order() == 2);
    CHECK_THROWS_AS(named_operator("L9"), ComputationError);
}
