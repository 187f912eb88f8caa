#include "stieltjes/hankel.hpp"
#include "stieltjes/sequences.hpp"

#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

using namespace stieltjes;

namespace {

std::string data_path(const std::string& file) { return std::string(STIELTJES_DATA_DIR) + "/" + file; }

} // namespace

TEST_CASE("Av(1324) fixture", "[fixtures]") {
    const MomentSeq s = read_bfile(data_path("av1324.bfile"));
    REQUIRE(s.size() >= 9);
    const std::vector<BigRat> printed{1, 1, 2, 6, 23, 103, 513, 2762, 15793};
    for (std::size_t i = 0; i < printed.size(); ++i) CHECK(s[i] == printed[i]);
    // Independent recount of the stored prefix.
    CHECK(brute_force_av(Pattern::parse("1324"), 9).terms == std::vector<BigRat>(s.terms.begin(), s.terms.begin() + 10));
    CHECK(classify(s).verdict == Verdict::StieltjesConsistent);
}

TEST_CASE("three-pattern class has a negative Hankel minor", "[fixtures]") {
    const MomentSeq s = read_bfile(data_path("av4123_4231_4312.bfile"));
    CHECK(brute_force_av({Pattern::parse("4123"), Pattern::parse("4231"), Pattern::parse("4312")}, 9).terms ==
          std::vector<BigRat>(s.terms.begin(), s.terms.begin() + 10));
    const HankelReport r = classify(s);
    CHECK(r.verdict != Verdict::StieltjesConsistent);
    REQUIRE(r.first_violation);
    CHECK(r.first_violation->shift == 0);
    CHECK(r.first_violation->n == 5);
    CHECK(r.delta0[4] < 0);
}

TEST_CASE("pattern-pair fixtures", "[fixtures]") {
    const HankelReport r = classify(read_bfile(data_path("av4231_4321.bfile")));
    REQUIRE(r.first_violation);
    CHECK(r.first_violation->shift == 0);
    CHECK(r.first_violation->n == 6);
    // No violation inside the enumerated range for these two.
    CHECK(classify(read_bfile(data_path("av4123_4231.bfile"))).verdict == Verdict::StieltjesConsistent);
    CHECK(classify(read_bfile(data_path("av4123_4312.bfile"))).verdict == Verdict::StieltjesConsistent);
}

TEST_CASE("walk q fixture matches Delta_0^2", "[fixtures]") {
    std::ifstream in(data_path("walk_q.csv"));
    REQUIRE(in);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line == "model,q") continue;
        const auto comma = line.find(',');
        const int model = std::stoi(line.substr(0, comma));
        const BigRat q = parse_rat(line.substr(comma + 1));
        INFO("model " << model);
        CHECK(q == minors(generate(Family::parse("walk" + std::to_string(model)), 6), 0, 2)[1]);
        CHECK(check_walk_closed_forms(model, 6).q == q);
        ++rows;
    }
    CHECK(rows == 12);
}
