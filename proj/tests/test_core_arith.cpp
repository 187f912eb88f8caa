#include <catch_amalgamated.hpp>

#include "stieltjes/error.hpp"
#include "stieltjes/matrix.hpp"
#include "stieltjes/mpoly.hpp"
#include "stieltjes/roots.hpp"
#include "stieltjes/series.hpp"

#include <cmath>
#include <random>

using namespace stieltjes;

namespace {

BigRat cofactor_det(const RatMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    BigRat acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        RatMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t c = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) minor(i - 1, c++) = m(i, k);
        }
        const BigRat term = m(0, j) * cofactor_det(minor);
        acc += (j % 2 == 0) ? term : BigRat(-term);
    }
    return acc;
}

RatMatrix random_matrix(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rat(num(rng), den(rng));
    return m;
}

TruncSeries random_series(std::mt19937& rng, int order) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
    std::vector<BigRat> c;
    for (int i = 0; i < order; ++i) c.push_back(rat(num(rng), den(rng)));
    return TruncSeries(0, c, order);
}

std::vector<long> as_longs(const TruncSeries& s, int n) {
    std::vector<long> out;
    for (int i = 0; i < n; ++i) out.push_back(s.coeff(i).get_num().get_si());
    return out;
}

} // namespace

TEST_CASE("det_bareiss small cases", "[core-arith]") {
    CHECK(det_bareiss(RatMatrix{{1, 1}, {1, 2}}) == 1);
    CHECK(det_bareiss(RatMatrix{{1, 2}, {2, 3}}) == -1);
    CHECK(det_bareiss(RatMatrix::identity(5)) == 1);
    CHECK(det_bareiss(RatMatrix{{0, 1}, {1, 0}}) == -1);
    CHECK(det_bareiss(RatMatrix{{1, 2}, {2, 4}}) == 0);
    CHECK_THROWS_AS(det_bareiss(RatMatrix(2, 3)), ComputationError);
}

TEST_CASE("det_bareiss agrees with cofactor expansion on random rational 4x4", "[core-arith]") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const RatMatrix m = random_matrix(rng, 4);
        CHECK(det_bareiss(m) == cofactor_det(m));
    }
}

TEST_CASE("solve_exact", "[core-arith]") {
    SECTION("identity and 1x1") {
        const std::vector<BigRat> b{rat(3), rat(-1, 2), rat(7)};
        CHECK(solve_exact(RatMatrix::identity(3), b) == b);
        CHECK(solve_exact(RatMatrix{{2}}, {rat(1)}) == std::vector<BigRat>{rat(1, 2)});
    }
    SECTION("Vandermonde against Lagrange interpolation") {
        // nodes 0,1,2; values 1,1,2
        RatMatrix v{{1, 0, 0}, {1, 1, 1}, {1, 2, 4}};
        const std::vector<BigRat> values{rat(1), rat(1), rat(2)};
        const auto coeffs = solve_exact(v, values);
        // Lagrange form: sum y_i prod_{j != i} (x - x_j)/(x_i - x_j)
        const std::vector<long> nodes{0, 1, 2};
        Poly lagrange;
        for (std::size_t i = 0; i < 3; ++i) {
            Poly basis = Poly::constant(1);
            for (std::size_t j = 0; j < 3; ++j) {
                if (i == j) continue;
                basis *= Poly{-nodes[j], 1};
                basis *= rat(1, nodes[i] - nodes[j]);
            }
            lagrange += basis * values[i];
        }
        CHECK(Poly(coeffs) == lagrange);
    }
    SECTION("singular") {
        CHECK_THROWS_WITH(solve_exact(RatMatrix{{1, 2}, {2, 4}}, {rat(1), rat(1)}), Catch::Matchers::ContainsSubstring("SingularSystem"));
    }
}

TEST_CASE("series arithmetic tracks truncation", "[core-arith]") {
    const auto a = TruncSeries(0, {rat(1), rat(2), rat(3)}, 3);
    const auto b = TruncSeries(0, {rat(1), rat(1), rat(1), rat(1), rat(1)}, 5);
    CHECK((a + b).order() == 3);
    CHECK((a * b).order() == 3);
    CHECK_THROWS_WITH((a * b).coeff(3), Catch::Matchers::ContainsSubstring("InsufficientOrder"));
    // x^2 * a is known to x^5
    CHECK((TruncSeries::monomial(1, 2) * a).order() == 5);
    const auto inv = TruncSeries(0, {rat(1), rat(-1)}, 6).inverse();
    CHECK(as_longs(inv, 6) == std::vector<long>{1, 1, 1, 1, 1, 1});
    const auto laurent = TruncSeries(1, {rat(1), rat(1)}, 8).inverse();
    CHECK(laurent.low() == -1);
    CHECK(laurent.order() == 6);
    CHECK(laurent.coeff(-1) == 1);
    CHECK(laurent.coeff(0) == -1);
}

TEST_CASE("series multiplication is associative and distributive", "[core-arith]") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_series(rng, 9), b = random_series(rng, 7), c = random_series(rng, 8);
        CHECK(((a * b) * c).agrees_with(a * (b * c)));
        CHECK(((a * b) * c).order() >= 7);
        CHECK((a * (b + c)).agrees_with(a * b + a * c));
    }
}

TEST_CASE("series_pow_rational", "[core-arith]") {
    SECTION("(1-4x)^(1/2): squared output returns the input") {
        const auto s = TruncSeries::from_poly(Poly{1, -4}, 12);
        const auto r = series_pow_rational(s, rat(1, 2));
        CHECK(as_longs(r, 4) == std::vector<long>{1, -2, -2, -4});
        CHECK((r * r).agrees_with(s));
        CHECK((r * r).order() == 12);
    }
    SECTION("(1+x)^1") {
        const auto s = TruncSeries::from_poly(Poly{1, 1}, 6);
        CHECK(series_pow_rational(s, rat(1)).agrees_with(s));
    }
    SECTION("(1-8x)^(3/2) equals the cube of (1-8x)^(1/2)") {
        const auto s = TruncSeries::from_poly(Poly{1, -8}, 4);
        const auto r = series_pow_rational(s, rat(3, 2));
        CHECK(as_longs(r, 4) == std::vector<long>{1, -12, 24, 32});
        const auto half = series_pow_rational(s, rat(1, 2));
        CHECK((half * half * half).agrees_with(r));
    }
    SECTION("leading monomial and coefficient") {
        // (4x^2 (1 + x))^(1/2) = 2x (1 + x/2 - x^2/8 + ...)
        const auto s = TruncSeries(2, {rat(4), rat(4)}, 7);
        const auto r = series_pow_rational(s, rat(1, 2));
        CHECK(r.valuation() == 1);
        CHECK(r.coeff(1) == 2);
        CHECK(r.coeff(2) == 1);
        CHECK(r.coeff(3) == rat(-1, 4));
        // negative exponent
        const auto inv = series_pow_rational(TruncSeries::from_poly(Poly{1, -4}, 8), rat(-1, 2));
        CHECK(inv.coeff(1) == 2);
        CHECK(inv.coeff(2) == 6);
    }
    SECTION("errors") {
        CHECK_THROWS_WITH(series_pow_rational(TruncSeries(1, {rat(1)}, 5), rat(1, 2)), Catch::Matchers::ContainsSubstring("FractionalLeadingExponent"));
        CHECK_THROWS_WITH(series_pow_rational(TruncSeries(0, {rat(-1), rat(1)}, 5), rat(1, 2)), Catch::Matchers::ContainsSubstring("NegativeLeadingCoefficient"));
    }
    SECTION("round trip s^p then ^(1/p)") {
        std::mt19937 rng(11);
        const std::vector<BigRat> exps{rat(1, 2), rat(3, 4), rat(-1, 3), rat(5, 6)};
        for (const auto& p : exps) {
            auto s = random_series(rng, 10);
            s = s - TruncSeries::constant(s.coeff(0)) + TruncSeries::constant(1);
            const auto back = series_pow_rational(series_pow_rational(s, p), 1 / p);
            CHECK(back.agrees_with(s));
        }
    }
}

TEST_CASE("series composition and derivative", "[core-arith]") {
    // 1/(1-t) composed with t = 2x gives sum 2^n x^n
    const auto geo = TruncSeries(0, std::vector<BigRat>(8, BigRat(1)), 8);
    const auto comp = geo.compose(TruncSeries::monomial(2, 1));
    CHECK(as_longs(comp, 8) == std::vector<long>{1, 2, 4, 8, 16, 32, 64, 128});
    const auto d = geo.derivative();
    CHECK(d.order() == 7);
    CHECK(as_longs(d, 7) == std::vector<long>{1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("resultant", "[core-arith]") {
    const std::size_t X = 0, U = 1, V = 2;
    const MPoly x = MPoly::variable(3, X), u = MPoly::variable(3, U), v = MPoly::variable(3, V);
    const MPoly one = MPoly::constant(3, 1);
    SECTION("linear pair") {
        CHECK(resultant(u - v, u + v, U) == v * BigRat(-2));
    }
    SECTION("constant resultant") {
        CHECK(resultant(u * u - one * BigRat(2), u - one, U) == MPoly::constant(3, -1));
    }
    SECTION("Catalan real/imaginary system") {
        const MPoly re = one - x * u + x * (u * u - v * v);
        const MPoly im = x * v * BigRat(-1) + x * u * v * BigRat(2);
        const MPoly target = x * x * v * v * (one * BigRat(4) * (one - x * v * v) - x);
        CHECK(proportional(resultant(re, im, U), target));
    }
    SECTION("vanishes at common roots") {
        std::mt19937 rng(3);
        std::uniform_int_distribution<long> d(-4, 4);
        for (int trial = 0; trial < 8; ++trial) {
            // p = (u - r)(u - a x - b v), q = (u - r)(u + c)
            const BigRat r = d(rng), a = d(rng), b = d(rng), c = d(rng);
            const MPoly root = one * r + x * a;
            const MPoly p = (u - root) * (u - x * b - v * a);
            const MPoly q = (u - root) * (u + one * c);
            const MPoly res = resultant(p, q, U);
            CHECK(res.is_zero());
            // and nonzero when the shared factor is removed from q
            const MPoly q2 = (u - one * (r + 100)) * (u + one * c);
            CHECK(resultant(p, q2, U).eval({rat(1), rat(0), rat(2)}) != 0);
        }
    }
}

TEST_CASE("smallest_positive_root", "[core-arith]") {
    const BigRat eps = rat(1, 1000000);
    SECTION("linear") {
        auto r = smallest_positive_root(Poly{1, -2}, eps);
        REQUIRE(r);
        CHECK(r->lo <= rat(1, 2));
        CHECK(r->hi >= rat(1, 2));
        CHECK(r->hi - r->lo <= eps);
    }
    SECTION("quadratics against the quadratic formula") {
        auto r = smallest_positive_root(Poly{1, -1, -1}, eps);
        REQUIRE(r);
        CHECK(r->midpoint() == Catch::Approx((std::sqrt(5.0) - 1) / 2).margin(1e-6));
        auto s = smallest_positive_root(Poly{1, -3, 1}, eps);
        REQUIRE(s);
        CHECK(s->midpoint() == Catch::Approx((3 - std::sqrt(5.0)) / 2).margin(1e-6));
        for (const Poly& p : {Poly{1, -2}, Poly{1, -1, -1}, Poly{1, -3, 1}}) {
            auto iv = smallest_positive_root(p, eps);
            CHECK(sgn(p(iv->lo)) * sgn(p(iv->hi)) <= 0);
        }
    }
    SECTION("no positive root and zero polynomial") {
        CHECK_FALSE(smallest_positive_root(Poly{1, 1}, eps));
        CHECK_FALSE(smallest_positive_root(Poly{1, 0, 1}, eps));
        CHECK_THROWS_AS(smallest_positive_root(Poly{}, eps), ComputationError);
    }
    SECTION("double root") {
        // (1 - 2x)^2 (1 + x)
        auto r = smallest_positive_root(pow(Poly{1, -2}, 2) * Poly{1, 1}, eps);
        REQUIRE(r);
        CHECK(r->midpoint() == Catch::Approx(0.5).margin(1e-6));
    }
}
