#include "stieltjes/cfrac.hpp"
#include "stieltjes/error.hpp"
#include "stieltjes/hankel.hpp"
#include "stieltjes/matrix.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace stieltjes;

namespace {

MomentSeq seq_of(std::vector<BigRat> terms, std::string name = "test") {
    MomentSeq s;
    s.name = std::move(name);
    s.terms = std::move(terms);
    return s;
}

MomentSeq from_sfrac(const std::vector<BigRat>& alphas, int n) {
    const auto s = sfrac_to_series(SFrac{alphas, false}, n);
    return seq_of(s.coeffs(0, n));
}

std::vector<BigRat> random_alphas(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<long> num(1, 9), den(1, 4);
    std::vector<BigRat> a;
    for (int i = 0; i < n; ++i) a.push_back(rat(num(rng), den(rng)));
    return a;
}

std::string error_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const ComputationError& e) {
        return e.code();
    }
    return "";
}

} // namespace

TEST_CASE("Hankel minors of classical sequences", "[hankel]") {
    const auto cat = generate(Family::parse("catalan"), 21);
    for (const auto& d : minors(cat, 0, 10)) CHECK(d == 1);
    for (const auto& d : minors(cat, 1, 10)) CHECK(d == 1);

    const auto fib = generate(Family::parse("fibonacci"), 6);
    CHECK(minors(fib, 1, 2)[1] == -1);

    const auto motz = generate(Family::parse("motzkin"), 40);
    const auto d1 = minors(motz, 1, 18);
    const std::vector<long> period = {1, 0, -1, -1, 0, 1};
    for (std::size_t n = 0; n < d1.size(); ++n) CHECK(d1[n] == period[n % 6]);
    for (const auto& d : minors(motz, 0, 18)) CHECK(d == 1);

    CHECK(error_code([&] { minors(fib, 0, 4); }) == "InsufficientTerms");
}

TEST_CASE("Hankel minors agree with cofactor expansion", "[hankel]") {
    const auto av = generate(Family::parse("av1342"), 15);
    const auto fast = minors(av, 1, 7);
    for (int n = 1; n <= 7; ++n) {
        std::vector<std::vector<BigRat>> m(static_cast<std::size_t>(n), std::vector<BigRat>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = av[static_cast<std::size_t>(i + j + 1)];
        CHECK(det_expand<BigRat>(m, BigRat(0), BigRat(1)) == fast[static_cast<std::size_t>(n - 1)]);
    }
}

TEST_CASE("classification verdicts", "[hankel]") {
    const auto cat = generate(Family::parse("catalan"), 20);
    CHECK(classify(cat).verdict == Verdict::StieltjesConsistent);
    CHECK_FALSE(classify(cat).first_violation);
    CHECK(classify(cat).summary().find("prefix-consistent") != std::string::npos);

    const auto motz = classify(generate(Family::parse("motzkin"), 20));
    CHECK(motz.verdict == Verdict::HamburgerOnlyConsistent);
    REQUIRE(motz.first_violation);
    CHECK(motz.first_violation->shift == 1);
    CHECK(motz.first_violation->n == 3);

    for (std::size_t idx = 2; idx < 8; ++idx) {
        auto bad = cat;
        bad.terms[idx] = -bad.terms[idx];
        const auto r = classify(bad);
        INFO("negated index " << idx);
        CHECK(r.verdict != Verdict::StieltjesConsistent);
        CHECK(r.first_violation.has_value());
    }

    std::mt19937_64 rng(7);
    for (int t = 0; t < 5; ++t) {
        const auto s = from_sfrac(random_alphas(rng, 14), 14);
        CHECK(classify(s).verdict == Verdict::StieltjesConsistent);
        const auto sample = sample_minors(s, 50, 11);
        CHECK(sample.negative == 0);
    }
}

TEST_CASE("minors as products of continued-fraction coefficients", "[hankel]") {
    const auto cat = generate(Family::parse("catalan"), 21);
    CHECK(check_minor_alpha(cat, extract_sfrac(cat), 10));
    const auto fact = generate(Family::parse("factorial"), 17);
    CHECK(check_minor_alpha(fact, extract_sfrac(fact), 8));

    std::mt19937_64 rng(2024);
    for (int t = 0; t < 10; ++t) {
        const auto s = from_sfrac(random_alphas(rng, 16), 16);
        CHECK(check_minor_alpha(s, extract_sfrac(s), 7));
    }
}

TEST_CASE("walk-model Hankel closed forms", "[hankel]") {
    const auto m10 = check_walk_closed_forms(10, 8);
    CHECK(m10.q == 3);
    const std::vector<long> d1 = {2, -3, -189, -2916, 1003833, 416118303};
    for (std::size_t i = 0; i < d1.size(); ++i) CHECK(m10.delta1[i] == d1[i]);
    const std::vector<long> u = {2, -1, -7, -4, 17, 29, -22, -109};
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(m10.u[i] == u[i]);
    REQUIRE(m10.recurrence.size() == 2);
    CHECK(m10.recurrence[0] == 1);
    CHECK(m10.recurrence[1] == -3);

    for (int model = 1; model <= 12; ++model) {
        INFO("model " << model);
        const auto r = check_walk_closed_forms(model, 8);
        CHECK((r.q == 1 || r.q == 2 || r.q == 3 || r.q == 4));
    }

    const auto m13 = check_walk_closed_forms(13, 8);
    const std::vector<long> d0 = {1, 5, 105, 9009, 3128697, 4379132901L};
    for (std::size_t i = 0; i < d0.size(); ++i) CHECK(m13.delta0[i] == d0[i]);
    const std::vector<BigRat> u13 = {3, 1, rat(-53, 5), rat(-177, 7), rat(-23, 3), rat(2857, 33), rat(29169, 143), rat(3921, 65)};
    for (std::size_t i = 0; i < u13.size(); ++i) CHECK(m13.u[i] == u13[i]);
    CHECK(m13.delta1[2] == -1113);
}

TEST_CASE("S-fraction extraction", "[cfrac]") {
    const auto cat = extract_sfrac(generate(Family::parse("catalan"), 20));
    for (const auto& a : cat.alphas) CHECK(a == 1);
    CHECK(cat.alphas.size() == 20);

    const auto fact = extract_sfrac(generate(Family::parse("factorial"), 12));
    const std::vector<long> euler = {1, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6};
    for (std::size_t i = 0; i < euler.size(); ++i) CHECK(fact.alphas[i] == euler[i]);

    // a_n = c (c+1) ... (c+n-1) with c = 1/2
    std::vector<BigRat> poch{1};
    const BigRat c = rat(1, 2);
    for (int n = 1; n < 12; ++n) poch.push_back(poch.back() * (c + n - 1));
    const auto pc = extract_sfrac(seq_of(poch));
    for (int n = 1; 2 * n < 12; ++n) {
        CHECK(pc.alphas[static_cast<std::size_t>(2 * n - 1)] == c + n - 1);
        CHECK(pc.alphas[static_cast<std::size_t>(2 * n)] == n);
    }

    std::vector<BigRat> geo;
    for (int n = 0; n < 10; ++n) geo.push_back(pow(BigRat(2), n));
    const auto g = extract_sfrac(seq_of(geo));
    CHECK(g.terminated);
    REQUIRE(g.alphas.size() == 2);
    CHECK(g.alphas[1] == 2);
    CHECK(sfrac_to_series(g, 10).coeffs(0, 10) == geo);

    CHECK(error_code([] { extract_sfrac(seq_of({1, 0, 1, 0, 2})); }) == "ZeroDivisor");
    CHECK(error_code([] { extract_sfrac(seq_of({0, 1})); }) == "ZeroDivisor");
}

TEST_CASE("S-fraction expansion", "[cfrac]") {
    CHECK(sfrac_to_series(SFrac{{1, 1}, false}, 6).coeffs(0, 6) == std::vector<BigRat>{1, 1, 1, 1, 1, 1});
    CHECK(sfrac_to_series(SFrac{{1, 1, 1}, false}, 6).coeffs(0, 6) == std::vector<BigRat>{1, 1, 2, 4, 8, 16});
    SFrac ones{std::vector<BigRat>(20, BigRat(1)), false};
    CHECK(sfrac_to_series(ones, 20).coeffs(0, 20) == generate(Family::parse("catalan"), 20).terms);

    std::mt19937_64 rng(99);
    for (int t = 0; t < 10; ++t) {
        const auto s = from_sfrac(random_alphas(rng, 18), 18);
        const auto cf = extract_sfrac(s);
        CHECK(sfrac_to_series(cf, 18).coeffs(0, 18) == s.terms);
    }
}

TEST_CASE("J-fraction extraction", "[cfrac]") {
    const auto motz = extract_jfrac(generate(Family::parse("motzkin"), 30));
    for (const auto& g : motz.gammas) CHECK(g == 1);
    for (const auto& b : motz.betas) CHECK(b == 1);

    const auto cat = extract_jfrac(generate(Family::parse("catalan"), 30));
    CHECK(cat.gammas[0] == 1);
    for (std::size_t j = 1; j < cat.gammas.size(); ++j) CHECK(cat.gammas[j] == 2);
    for (const auto& b : cat.betas) CHECK(b == 1);

    const auto w13 = extract_jfrac(generate(Family{FamilyKind::WalkModel, 13}, 24));
    REQUIRE(w13.gammas.size() >= 11);
    CHECK(w13.gammas[0] == 3);
    for (int j = 1; j <= 10; ++j) {
        CHECK(w13.gammas[static_cast<std::size_t>(j)] == 2);
        CHECK(w13.betas[static_cast<std::size_t>(j)] == BigRat((4 * j - 1) * (4 * j + 1)) / BigRat((2 * j - 1) * (2 * j + 1)));
    }

    for (const char* fam : {"av1342", "walk6", "factorial", "motzkin"}) {
        const auto s = generate(Family::parse(fam), 16);
        const auto cf = extract_jfrac(s);
        INFO(fam);
        CHECK(jfrac_to_series(cf, 16).coeffs(0, 16) == s.terms);
    }
    CHECK(error_code([] { extract_jfrac(seq_of({1, 1, 1, 1, 1})); }) == "ZeroHankelMinor");
}

TEST_CASE("growth-rate lower bounds", "[cfrac]") {
    const auto cat = generate(Family::parse("catalan"), 30);
    const auto rep = growth_bounds(cat);
    REQUIRE(rep.truncated_cf.size() >= 2);
    CHECK(rep.truncated_cf[1].n == 2);
    CHECK(rep.truncated_cf[1].value == Catch::Approx(2.0).epsilon(1e-5));
    CHECK(rep.monotone_tail[0].n == 2);
    CHECK(rep.monotone_tail[0].value == Catch::Approx(4.0));
    CHECK(rep.mu_nondecreasing);
    CHECK(rep.best_truncated() < 4.0);
    CHECK(rep.best_truncated() > 3.9);
    CHECK(4.0 * to_double(extract_sfrac(cat).alphas.back()) == rep.best_monotone());
    // mu_n is the exact growth of the truncated fraction: convergent 1/(1-x) has growth 1.
    CHECK(convergent_denominator(extract_sfrac(cat), 1) == Poly{1, -1});

    for (const char* fam : {"catalan", "av1342", "factorial", "av1234"}) {
        const auto s = generate(Family::parse(fam), 24);
        const auto r = growth_bounds(s);
        INFO(fam);
        CHECK(r.mu_nondecreasing);
        for (const auto& m : r.monotone_tail)
            for (const auto& t : r.truncated_cf)
                if (t.n == m.n) CHECK(m.value >= t.value * (1 - 1e-9));
        // mu_n is at least the last ratio it has seen (log-convexity of the truncated sequence)
        CHECK(r.best_truncated() >= r.ratio_bound * (1 - 1e-6));
    }

    CHECK(error_code([] { growth_bounds(generate(Family::parse("fibonacci"), 10)); }) == "NegativeAlpha");

    const auto rows = alpha_scaling_data(extract_sfrac(cat));
    for (const auto& row : rows) CHECK(row.alpha == 1);
    CHECK(rows[0].odd);
}
