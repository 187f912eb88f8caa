#include "stieltjes/bessel.hpp"
#include "stieltjes/error.hpp"
#include "stieltjes/sequences.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

using namespace stieltjes;

namespace {

std::vector<BigRat> ints(std::initializer_list<long> xs) {
    std::vector<BigRat> out;
    for (long v : xs) out.emplace_back(v);
    return out;
}

std::vector<BigRat> prefix(const MomentSeq& s, std::size_t n) {
    return {s.terms.begin(), s.terms.begin() + static_cast<std::ptrdiff_t>(n)};
}

// Oracle: count permutations of length n avoiding p by checking every subsequence.
long naive_avoiders(const std::vector<int>& pattern, int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    const std::size_t m = pattern.size();
    long count = 0;
    do {
        bool contains = false;
        if (m <= perm.size()) {
            std::vector<bool> pick(perm.size(), false);
            std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m), true);
            do {
                std::vector<int> sub;
                for (std::size_t i = 0; i < perm.size(); ++i)
                    if (pick[i]) sub.push_back(perm[i]);
                bool iso = true;
                for (std::size_t i = 0; i < m && iso; ++i)
                    for (std::size_t j = 0; j < m && iso; ++j)
                        iso = (sub[i] < sub[j]) == (pattern[i] < pattern[j]);
                contains = iso;
            } while (!contains && std::prev_permutation(pick.begin(), pick.end()));
        }
        if (!contains) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

} // namespace

TEST_CASE("classical families", "[sequences]") {
    CHECK(generate(Family::parse("catalan"), 7).terms == ints({1, 1, 2, 5, 14, 42, 132}));
    CHECK(generate(Family::parse("fibonacci"), 7).terms == ints({1, 1, 2, 3, 5, 8, 13}));
    CHECK(generate(Family::parse("factorial"), 6).terms == ints({1, 1, 2, 6, 24, 120}));
    CHECK(generate(Family::parse("motzkin"), 8).terms == ints({1, 1, 2, 4, 9, 21, 51, 127}));
    CHECK(generate(Family::parse("av1342"), 9).terms == ints({1, 1, 2, 6, 23, 103, 512, 2740, 15485}));
}

TEST_CASE("increasing-pattern avoiders from the Toeplitz determinant", "[sequences]") {
    CHECK(generate(Family{FamilyKind::AvIncreasing, 4}, 8).terms == ints({1, 1, 2, 6, 23, 103, 513, 2761}));
    CHECK(generate(Family{FamilyKind::AvIncreasing, 5}, 9).terms == ints({1, 1, 2, 6, 24, 119, 694, 4582, 33324}));
    CHECK(generate(Family{FamilyKind::AvIncreasing, 3}, 8).terms == generate(Family::parse("catalan"), 8).terms);

    for (int k = 3; k <= 6; ++k) {
        const auto det = generate(Family{FamilyKind::AvIncreasing, k}, 10);
        const auto brute = brute_force_av(Pattern::increasing(k), 9);
        CHECK(prefix(det, 10) == brute.terms);
    }

    // k > n: every permutation avoids a pattern longer than itself.
    const auto wide = generate(Family{FamilyKind::AvIncreasing, 9}, 9);
    CHECK(wide.terms == generate(Family::parse("factorial"), 9).terms);
}

TEST_CASE("half-integer exponents cancel in even and odd sizes", "[sequences]") {
    for (int size = 1; size <= 4; ++size) CHECK_NOTHROW(bessel_toeplitz_det(size, 6));
    const HalfSeries odd = bessel_i(1, 4);
    CHECK(odd.half == 1);
    CHECK_THROWS_AS((odd + bessel_i(0, 4)), ComputationError);
}

TEST_CASE("brute force agrees with direct subsequence checks", "[sequences]") {
    for (const char* p : {"132", "231", "1324", "2413", "4231", "1342"}) {
        const Pattern pat = Pattern::parse(p);
        const auto fast = brute_force_av(pat, 7);
        for (int n = 0; n <= 7; ++n) {
            INFO(p << " n=" << n);
            CHECK(fast.terms[static_cast<std::size_t>(n)] == naive_avoiders(pat.perm, n));
        }
    }
    const auto av1324 = brute_force_av(Pattern::parse("1324"), 8);
    CHECK(av1324.terms == ints({1, 1, 2, 6, 23, 103, 513, 2762, 15793}));
    CHECK(brute_force_av(Pattern::parse("123"), 6).terms == ints({1, 1, 2, 5, 14, 42, 132}));
    CHECK(prefix(brute_force_av(Pattern::parse("1342"), 9), 9) == generate(Family::parse("av1342"), 9).terms);
}

TEST_CASE("walk-model series", "[sequences]") {
    const std::vector<std::vector<long>> printed = {
        {1, 1, 2, 3, 6, 10, 20, 35},  {1, 2, 5, 13, 35, 96, 267},   {1, 3, 13, 55, 249, 1131},
        {1, 2, 8, 24, 96, 320},       {1, 1, 3, 5, 15, 29, 87, 181}, {1, 2, 6, 16, 48, 136, 408},
        {1, 1, 4, 7, 28, 58, 232},    {1, 2, 6, 18, 58, 190, 638},  {1, 3, 11, 41, 157, 607},
        {1, 2, 7, 23, 85, 314},       {1, 1, 2, 4, 9, 21, 51, 127}, {1, 2, 8, 32, 144, 672},
        {1, 3, 14, 67, 342, 1790},
    };
    for (int model = 1; model <= 13; ++model) {
        INFO("model " << model);
        const auto& want = printed[static_cast<std::size_t>(model - 1)];
        const auto seq = generate(Family{FamilyKind::WalkModel, model}, static_cast<int>(want.size()));
        for (std::size_t i = 0; i < want.size(); ++i) CHECK(seq.terms[i] == want[i]);

        const auto s = walk_model_series(model, 30);
        for (int i = 0; i < 30; ++i) {
            const BigRat c = s.coeff(i);
            CHECK(is_integer(c));
            CHECK(sgn(c) >= 0);
        }
    }
    CHECK(generate(Family::parse("walk11"), 20).terms == generate(Family::parse("motzkin"), 20).terms);
}

TEST_CASE("transforms", "[sequences]") {
    const auto cat = generate(Family::parse("catalan"), 10);
    const auto fwd = transform(cat, {TransformKind::ShiftForward});
    CHECK(prefix(fwd, 4) == ints({1, 2, 5, 14}));
    CHECK(transform(fwd, {TransformKind::ShiftBackward}).terms == cat.terms);
    const auto twice = transform(transform(cat, {TransformKind::ShiftForward}), {TransformKind::ShiftForward});
    CHECK(transform(transform(twice, {TransformKind::ShiftBackward}), {TransformKind::ShiftBackward}).terms == cat.terms);
    CHECK_THROWS_AS(transform(cat, {TransformKind::ShiftBackward}), ComputationError);

    const auto fact = generate(Family::parse("factorial"), 8);
    const auto der = transform(fact, {TransformKind::Derivative});
    CHECK(std::vector<BigRat>(der.terms.begin() + 1, der.terms.end()) == std::vector<BigRat>(fact.terms.begin() + 1, fact.terms.end()));

    CHECK(prefix(transform(cat, {TransformKind::Dilation, 2}), 4) == ints({1, 2, 14, 132}));
    CHECK_THROWS_AS(transform(cat, {TransformKind::Dilation, 1}), ComputationError);

    // Differences(1) of Catalan: C_n - C_{n+1}.
    const auto d1 = transform(cat, {TransformKind::Differences, 1});
    CHECK(prefix(d1, 4) == ints({0, -1, -3, -9}));
    const auto d2 = transform(cat, {TransformKind::Differences, 2});
    CHECK(d2.terms[0] == cat.terms[0] - 2 * cat.terms[1] + cat.terms[2]);
    CHECK_THROWS_AS(transform(cat, {TransformKind::Differences, 10}), ComputationError);

    const auto prim = transform(cat, {TransformKind::Primitive});
    CHECK(prim.terms[2] == rat(5, 3));

    const auto fib = generate(Family::parse("fibonacci"), 10);
    CHECK(transform(cat, {TransformKind::Sum, 0, &fib}).terms[5] == 42 + 8);
    CHECK(transform(cat, {TransformKind::TermwiseProduct, 0, &fib}).terms[5] == 42 * 8);
    const auto short_fib = generate(Family::parse("fibonacci"), 5);
    CHECK_THROWS_AS(transform(cat, {TransformKind::Sum, 0, &short_fib}), ComputationError);
}

TEST_CASE("b-file ingestion", "[sequences]") {
    CHECK(ingest_bfile("0 1\n1 1\n2 2\n").terms == ints({1, 1, 2}));
    CHECK(ingest_bfile("# comment\n0 1\n1 3\n").terms == ints({1, 3}));
    CHECK(ingest_bfile("# c\r\n0 1\r\n1 3\r\n\r\n").terms == ints({1, 3}));
    CHECK(ingest_bfile("5 7\n6   123456789012345678901234567890").terms[1] == BigRat(BigInt("123456789012345678901234567890")));

    try {
        ingest_bfile("0 1\n1 x\n");
        FAIL("expected MalformedLine");
    } catch (const ComputationError& e) {
        CHECK(e.code() == "MalformedLine");
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    try {
        ingest_bfile("0 1\n2 1\n");
        FAIL("expected NonContiguousIndices");
    } catch (const ComputationError& e) {
        CHECK(e.code() == "NonContiguousIndices");
    }
    const auto cat = generate(Family::parse("catalan"), 12);
    CHECK(ingest_bfile(to_bfile(cat)).terms == cat.terms);
}

TEST_CASE("family parsing", "[sequences]") {
    CHECK(Family::parse("av1234").kind == FamilyKind::AvIncreasing);
    CHECK(Family::parse("av1234").parameter == 4);
    CHECK(Family::parse("walk:13").parameter == 13);
    CHECK_THROWS_AS(Family::parse("walk14"), ComputationError);
    CHECK_THROWS_AS(Family::parse("av1324"), ComputationError);
    CHECK_THROWS_AS(Pattern::parse("1224"), ComputationError);
}
