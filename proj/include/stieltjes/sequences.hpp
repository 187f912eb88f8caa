#pragma once

#include "stieltjes/bigrat.hpp"
#include "stieltjes/series.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stieltjes {

enum class SeqSource { Generated, Ingested, BruteForce };
std::string to_string(SeqSource s);

struct MomentSeq {
    std::string name;
    std::vector<BigRat> terms;
    SeqSource source = SeqSource::Generated;
    std::map<std::string, std::string> meta;

    std::size_t size() const { return terms.size(); }
    const BigRat& operator[](std::size_t i) const { return terms.at(i); }
    TruncSeries as_series() const { return TruncSeries::from_terms(terms); }
};

// A classical pattern, stored one-based: {1,3,2,4} is 1324.
struct Pattern {
    std::vector<int> perm;

    static Pattern parse(std::string_view digits);
    static Pattern increasing(int length);
    bool is_increasing() const;
    std::string to_string() const;
};

enum class FamilyKind { Catalan, Motzkin, Fibonacci, Factorial, AvIncreasing, Av1342, WalkModel };

struct Family {
    FamilyKind kind = FamilyKind::Catalan;
    int parameter = 0;  // k for AvIncreasing(k), model number for WalkModel

    // Accepts catalan, motzkin, fibonacci|fib, factorial, av1342,
    // av12...k (increasing digits), avinc<k>, walk<i> / walk:<i>.
    static Family parse(std::string_view name);
    std::string name() const;
};

MomentSeq generate(const Family& family, int n_terms);

// Closed-form generating function of walk model 1..13 as a truncated series.
TruncSeries walk_model_series(int model, int order);

// Models 1..12: f = (numerator + root_sign sqrt(radicand)) / denominator.
struct WalkGf {
    Poly numerator;
    int root_sign;
    Poly radicand;
    Poly denominator;
};
WalkGf walk_gf(int model);
// Av(1342) generating function as a truncated series.
TruncSeries av1342_series(int order);

// Counts of permutations of length 0..n_max avoiding every pattern in the
// list, by exhaustive extension of avoiders (deleting the maximum of an
// avoider leaves an avoider).
MomentSeq brute_force_av(const std::vector<Pattern>& patterns, int n_max);
MomentSeq brute_force_av(const Pattern& pattern, int n_max);

enum class TransformKind { ShiftForward, ShiftBackward, Differences, Derivative, Primitive, Sum, TermwiseProduct, Dilation };

struct Transform {
    TransformKind kind;
    int r = 0;                        // Differences(r), Dilation(r)
    const MomentSeq* other = nullptr; // Sum, TermwiseProduct
};

MomentSeq transform(const MomentSeq& seq, const Transform& t);

// OEIS b-file: '#' comments, "index value" lines, LF or CRLF.
MomentSeq ingest_bfile(std::string_view text, std::string name = "bfile");
MomentSeq read_bfile(const std::string& path);
std::string to_bfile(const MomentSeq& seq);

} // namespace stieltjes
