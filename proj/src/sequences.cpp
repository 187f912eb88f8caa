#include "stieltjes/sequences.hpp"

#include "stieltjes/bessel.hpp"
#include "stieltjes/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace stieltjes {

std::string to_string(SeqSource s) {
    switch (s) {
    case SeqSource::Generated: return "Generated";
    case SeqSource::Ingested: return "Ingested";
    case SeqSource::BruteForce: return "BruteForce";
    }
    return "?";
}

Pattern Pattern::parse(std::string_view digits) {
    Pattern p;
    for (char ch : digits) {
        if (!std::isdigit(static_cast<unsigned char>(ch)) || ch == '0') fail("ParseError", "pattern digits must be 1-9");
        p.perm.push_back(ch - '0');
    }
    std::vector<int> sorted = p.perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != static_cast<int>(i) + 1) fail("ParseError", "pattern is not a permutation of 1..m");
    if (p.perm.empty()) fail("ParseError", "empty pattern");
    return p;
}

Pattern Pattern::increasing(int length) {
    Pattern p;
    for (int i = 1; i <= length; ++i) p.perm.push_back(i);
    return p;
}

bool Pattern::is_increasing() const { return std::is_sorted(perm.begin(), perm.end()); }

std::string Pattern::to_string() const {
    std::string s;
    for (int v : perm) s += std::to_string(v);
    return s;
}

Family Family::parse(std::string_view raw) {
    std::string name(raw);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    auto tail_int = [&](std::size_t from) {
        std::string t = name.substr(from);
        if (!t.empty() && t.front() == ':') t.erase(0, 1);
        if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }))
            fail("UnknownFamily", "cannot parse family '" + std::string(raw) + "'");
        return std::stoi(t);
    };
    if (name == "catalan") return {FamilyKind::Catalan, 0};
    if (name == "motzkin") return {FamilyKind::Motzkin, 0};
    if (name == "fibonacci" || name == "fib") return {FamilyKind::Fibonacci, 0};
    if (name == "factorial") return {FamilyKind::Factorial, 0};
    if (name == "av1342") return {FamilyKind::Av1342, 0};
    if (name.rfind("walk", 0) == 0) {
        const int m = tail_int(4);
        if (m < 1 || m > 13) fail("UnknownFamily", "walk model must be 1..13");
        return {FamilyKind::WalkModel, m};
    }
    if (name.rfind("avinc", 0) == 0) return {FamilyKind::AvIncreasing, tail_int(5)};
    if (name.rfind("av", 0) == 0 && name.size() >= 4) {
        const Pattern p = Pattern::parse(name.substr(2));
        if (p.is_increasing()) return {FamilyKind::AvIncreasing, static_cast<int>(p.perm.size())};
    }
    fail("UnknownFamily", "unknown sequence family '" + std::string(raw) + "'");
}

std::string Family::name() const {
    switch (kind) {
    case FamilyKind::Catalan: return "catalan";
    case FamilyKind::Motzkin: return "motzkin";
    case FamilyKind::Fibonacci: return "fibonacci";
    case FamilyKind::Factorial: return "factorial";
    case FamilyKind::Av1342: return "av1342";
    case FamilyKind::WalkModel: return "walk" + std::to_string(parameter);
    case FamilyKind::AvIncreasing: return "av" + Pattern::increasing(parameter).to_string();
    }
    return "?";
}

WalkGf walk_gf(int model) {
    switch (model) {
    case 1: return {{-1, 2}, 1, {1, 0, -4}, {0, 2, -4}};
    case 2: return {{-1, 3}, 1, {1, -2, -3}, {0, 2, -6}};
    case 3: return {{-1, 5}, 1, {1, -2, -15}, {0, 4, -20}};
    case 4: return {{-1, 4}, 1, {1, 0, -16}, {0, 4, -16}};
    case 5: return {{-1, 2}, 1, {1, 0, -8}, {0, 2, -6}};
    case 6: return {{-1, 4}, 1, {1, 0, -8}, {0, 4, -12}};
    case 7: return {{-1, 2}, 1, {1, 0, -12}, {0, 2, -8}};
    case 8: return {{-1, 3}, 1, {1, -2, -7}, {0, 2, -8}};
    case 9: return {{-1, 5}, 1, {1, -2, -7}, {0, 4, -16}};
    case 10: return {{-1, 3}, 1, {1, -2, -11}, {0, 2, -10}};
    case 11: return {{1, -1}, -1, {1, -2, -3}, {0, 0, 2}};
    case 12: return {{1, -2}, -1, {1, -4, -12}, {0, 0, 8}};
    default: fail("UnknownFamily", "walk model must be 1..12 for the square-root form");
    }
}

TruncSeries walk_model_series(int model, int order) {
    const int work = order + 3;
    if (model == 13) {
        // (((1+2z)/(1-6z))^(1/4) - 1) / (2z)
        const auto a = series_pow_rational(TruncSeries::from_poly(Poly{1, 2}, work), rat(1, 4));
        const auto b = series_pow_rational(TruncSeries::from_poly(Poly{1, -6}, work), rat(-1, 4));
        const auto num = a * b - TruncSeries::constant(1);
        return (num.shifted(-1) * rat(1, 2)).truncated(order);
    }
    const WalkGf gf = walk_gf(model);
    const auto root = series_pow_rational(TruncSeries::from_poly(gf.radicand, work), rat(1, 2));
    const auto num = TruncSeries::from_poly(gf.numerator) + root * BigRat(gf.root_sign);
    const auto q = num / TruncSeries::from_poly(gf.denominator);
    if (q.valuation() < 0) fail("InternalError", "walk generating function has a pole at 0");
    return q.truncated(order);
}

TruncSeries av1342_series(int order) {
    const int work = order + 2;
    const auto root = series_pow_rational(TruncSeries::from_poly(Poly{1, -8}, work), rat(3, 2));
    const auto num = root + TruncSeries::from_poly(Poly{1, 20, -8});
    const auto den = TruncSeries::from_poly(pow(Poly{1, 1}, 3) * BigRat(2));
    return (num / den).truncated(order);
}

MomentSeq generate(const Family& family, int n_terms) {
    if (n_terms < 1) fail("DomainError", "n_terms must be >= 1");
    MomentSeq out;
    out.name = family.name();
    out.source = SeqSource::Generated;
    std::vector<BigRat>& t = out.terms;
    const auto n = static_cast<std::size_t>(n_terms);
    switch (family.kind) {
    case FamilyKind::Catalan:
        for (long i = 0; i < n_terms; ++i) t.emplace_back(BigRat(binomial(2 * i, i)) / (i + 1));
        out.meta["definition"] = "C_n = binom(2n,n)/(n+1)";
        break;
    case FamilyKind::Motzkin:
        t.emplace_back(1);
        if (n > 1) t.emplace_back(1);
        for (long i = 2; i < n_terms; ++i)
            t.push_back(((2 * i + 1) * t[static_cast<std::size_t>(i - 1)] + (3 * i - 3) * t[static_cast<std::size_t>(i - 2)]) / (i + 2));
        out.meta["definition"] = "(n+2) M_n = (2n+1) M_{n-1} + (3n-3) M_{n-2}";
        break;
    case FamilyKind::Fibonacci:
        t.emplace_back(1);
        if (n > 1) t.emplace_back(1);
        while (t.size() < n) t.push_back(t[t.size() - 1] + t[t.size() - 2]);
        out.meta["definition"] = "F_0 = F_1 = 1";
        break;
    case FamilyKind::Factorial:
        for (unsigned long i = 0; i < n; ++i) t.emplace_back(factorial(i));
        break;
    case FamilyKind::AvIncreasing: {
        const int k = family.parameter;
        if (k < 2) fail("DomainError", "AvIncreasing(k) needs k >= 2");
        const TruncSeries det = bessel_toeplitz_det(k - 1, n_terms);
        for (unsigned long i = 0; i < n; ++i) t.push_back(det.coeff(static_cast<int>(i)) * BigRat(factorial(i) * factorial(i)));
        out.meta["definition"] = "n!^2 [x^n] det[I_{|i-j|}] of size " + std::to_string(k - 1);
        break;
    }
    case FamilyKind::Av1342: {
        const auto s = av1342_series(n_terms);
        for (int i = 0; i < n_terms; ++i) t.push_back(s.coeff(i));
        out.meta["definition"] = "((1-8x)^(3/2) + 1 + 20x - 8x^2) / (2(1+x)^3)";
        break;
    }
    case FamilyKind::WalkModel: {
        const auto s = walk_model_series(family.parameter, n_terms);
        for (int i = 0; i < n_terms; ++i) t.push_back(s.coeff(i));
        out.meta["definition"] = "closed-form generating function of walk model " + std::to_string(family.parameter);
        break;
    }
    }
    return out;
}

namespace {

using Perm = std::vector<unsigned char>;

bool order_isomorphic(const unsigned char* vals, const std::vector<int>& std_pattern, std::size_t m) {
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if ((vals[i] < vals[j]) != (std_pattern[i] < std_pattern[j])) return false;
    return true;
}

struct PatternCheck {
    std::size_t length;
    std::size_t max_index;       // where the pattern's largest entry sits
    std::vector<int> rest;       // pattern with the max removed
    bool increasing;
};

PatternCheck prepare(const Pattern& p) {
    PatternCheck c;
    c.length = p.perm.size();
    c.max_index = static_cast<std::size_t>(std::max_element(p.perm.begin(), p.perm.end()) - p.perm.begin());
    for (std::size_t i = 0; i < p.perm.size(); ++i)
        if (i != c.max_index) c.rest.push_back(p.perm[i]);
    c.increasing = p.is_increasing();
    return c;
}

std::size_t lis_length(const unsigned char* v, std::size_t n) {
    std::vector<unsigned char> tails;
    for (std::size_t i = 0; i < n; ++i) {
        auto it = std::lower_bound(tails.begin(), tails.end(), v[i]);
        if (it == tails.end()) tails.push_back(v[i]);
        else *it = v[i];
    }
    return tails.size();
}

// Does inserting the new maximum at position pos create an occurrence of c?
// perm already contains the new maximum at pos.
bool creates_occurrence(const Perm& perm, std::size_t pos, const PatternCheck& c) {
    const std::size_t n = perm.size();
    if (c.length > n) return false;
    if (c.increasing) return lis_length(perm.data(), pos) + 1 >= c.length;
    const std::size_t before = c.max_index;
    const std::size_t after = c.length - 1 - c.max_index;
    if (before > pos || after > n - 1 - pos) return false;
    std::vector<std::size_t> idx(c.length - 1);
    unsigned char vals[16];
    // enumerate combinations: `before` indices from [0,pos), `after` from (pos,n)
    std::vector<std::size_t> left(before), right(after);
    for (std::size_t i = 0; i < before; ++i) left[i] = i;
    while (true) {
        for (std::size_t i = 0; i < after; ++i) right[i] = pos + 1 + i;
        while (true) {
            std::size_t k = 0;
            for (auto i : left) vals[k++] = perm[i];
            for (auto i : right) vals[k++] = perm[i];
            if (order_isomorphic(vals, c.rest, c.length - 1)) return true;
            // next right combination
            std::size_t r = after;
            while (r > 0 && right[r - 1] == n - after + (r - 1)) --r;
            if (r == 0) break;
            ++right[r - 1];
            for (std::size_t i = r; i < after; ++i) right[i] = right[i - 1] + 1;
        }
        std::size_t l = before;
        while (l > 0 && left[l - 1] == pos - before + (l - 1)) --l;
        if (l == 0) break;
        ++left[l - 1];
        for (std::size_t i = l; i < before; ++i) left[i] = left[i - 1] + 1;
    }
    return false;
}

} // namespace

MomentSeq brute_force_av(const std::vector<Pattern>& patterns, int n_max) {
    if (n_max < 0) fail("DomainError", "n_max must be >= 0");
    if (n_max > 13) fail("DomainError", "exhaustive enumeration is limited to n <= 13");
    std::vector<PatternCheck> checks;
    std::string label = "av";
    for (const auto& p : patterns) {
        checks.push_back(prepare(p));
        label += (label.size() > 2 ? "," : "") + p.to_string();
    }
    MomentSeq out;
    out.name = label;
    out.source = SeqSource::BruteForce;
    out.terms.emplace_back(1);
    std::vector<Perm> level{Perm{}};
    for (int n = 1; n <= n_max; ++n) {
        std::vector<Perm> next;
        unsigned long count = 0;
        const bool keep = n < n_max;
        for (const auto& base : level) {
            for (std::size_t pos = 0; pos <= base.size(); ++pos) {
                Perm p(base);
                p.insert(p.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<unsigned char>(n));
                bool bad = false;
                for (const auto& c : checks)
                    if (creates_occurrence(p, pos, c)) {
                        bad = true;
                        break;
                    }
                if (bad) continue;
                ++count;
                if (keep) next.push_back(std::move(p));
            }
        }
        out.terms.emplace_back(BigInt(count));
        level = std::move(next);
    }
    out.meta["method"] = "exhaustive extension of avoiders by a new maximum";
    return out;
}

MomentSeq brute_force_av(const Pattern& pattern, int n_max) {
    return brute_force_av(std::vector<Pattern>{pattern}, n_max);
}

MomentSeq transform(const MomentSeq& seq, const Transform& t) {
    const auto& a = seq.terms;
    const std::size_t n = a.size();
    MomentSeq out;
    out.source = seq.source;
    out.meta = seq.meta;
    std::vector<BigRat>& b = out.terms;
    auto require_other = [&]() -> const MomentSeq& {
        if (!t.other) fail("DomainError", "binary transform needs a second sequence");
        if (t.other->size() != n) fail("LengthMismatch", "sequences differ in length");
        return *t.other;
    };
    switch (t.kind) {
    case TransformKind::ShiftForward: {
        if (n < 2) fail("InsufficientTerms", "forward shift needs two terms");
        b.assign(a.begin() + 1, a.end());
        std::string stack = out.meta["shift.dropped"];
        out.meta["shift.dropped"] = stack.empty() ? a[0].get_str() : a[0].get_str() + "," + stack;
        out.name = "shift+(" + seq.name + ")";
        break;
    }
    case TransformKind::ShiftBackward: {
        std::string stack = out.meta["shift.dropped"];
        if (stack.empty()) fail("InsufficientTerms", "backward shift needs the b_0 value recorded by a forward shift");
        const auto comma = stack.find(',');
        b.push_back(parse_rat(stack.substr(0, comma)));
        b.insert(b.end(), a.begin(), a.end());
        if (comma == std::string::npos) out.meta.erase("shift.dropped");
        else out.meta["shift.dropped"] = stack.substr(comma + 1);
        out.name = "shift-(" + seq.name + ")";
        break;
    }
    case TransformKind::Differences: {
        if (t.r < 0) fail("DomainError", "difference order must be >= 0");
        const std::size_t r = static_cast<std::size_t>(t.r);
        if (n <= r) fail("InsufficientTerms", "differences of order " + std::to_string(r) + " need more than r terms");
        for (std::size_t i = 0; i + r < n; ++i) {
            BigRat acc = 0;
            for (std::size_t k = 0; k <= r; ++k) {
                BigRat term = BigRat(binomial(static_cast<long>(r), static_cast<long>(k))) * a[i + k];
                acc += (k % 2 == 0) ? term : BigRat(-term);
            }
            b.push_back(acc);
        }
        out.name = "diff" + std::to_string(t.r) + "(" + seq.name + ")";
        break;
    }
    case TransformKind::Derivative:
        b.emplace_back(0);
        for (std::size_t i = 1; i < n; ++i) b.push_back(a[i - 1] * static_cast<long>(i));
        out.name = "derivative(" + seq.name + ")";
        break;
    case TransformKind::Primitive:
        if (n < 2) fail("InsufficientTerms", "primitive needs two terms");
        for (std::size_t i = 0; i + 1 < n; ++i) b.push_back(a[i + 1] / BigRat(static_cast<long>(i + 1)));
        out.name = "primitive(" + seq.name + ")";
        break;
    case TransformKind::Sum: {
        const auto& u = require_other();
        for (std::size_t i = 0; i < n; ++i) b.push_back(a[i] + u.terms[i]);
        out.name = seq.name + "+" + u.name;
        break;
    }
    case TransformKind::TermwiseProduct: {
        const auto& u = require_other();
        for (std::size_t i = 0; i < n; ++i) b.push_back(a[i] * u.terms[i]);
        out.name = seq.name + "*" + u.name;
        break;
    }
    case TransformKind::Dilation: {
        if (t.r < 2) fail("DomainError", "dilation needs r >= 2");
        for (std::size_t i = 0; i * static_cast<std::size_t>(t.r) < n; ++i) b.push_back(a[i * static_cast<std::size_t>(t.r)]);
        out.name = "dilate" + std::to_string(t.r) + "(" + seq.name + ")";
        break;
    }
    }
    return out;
}

MomentSeq ingest_bfile(std::string_view text, std::string name) {
    MomentSeq out;
    out.name = std::move(name);
    out.source = SeqSource::Ingested;
    long expected = -1;
    long first = 0;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(start, end - start));
        ++line_no;
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos) {
            if (end == text.size()) break;
            continue;
        }
        if (line[b] == '#') continue;
        std::istringstream is(line);
        std::string idx_tok, val_tok, extra;
        is >> idx_tok >> val_tok;
        if (val_tok.empty() || (is >> extra)) fail("MalformedLine", "line " + std::to_string(line_no) + ": expected 'index value'");
        auto is_int = [](const std::string& s) {
            std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
            return i < s.size() && std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(), [](unsigned char c) { return std::isdigit(c); });
        };
        if (!is_int(idx_tok) || !is_int(val_tok)) fail("MalformedLine", "line " + std::to_string(line_no) + ": non-integer field");
        const long index = std::stol(idx_tok);
        if (expected < 0) first = index;
        else if (index != expected) fail("NonContiguousIndices", "line " + std::to_string(line_no) + ": index " + std::to_string(index) + " follows " + std::to_string(expected - 1));
        expected = index + 1;
        BigInt v(val_tok[0] == '+' ? val_tok.substr(1) : val_tok);
        out.terms.emplace_back(v);
        if (end == text.size()) break;
    }
    if (out.terms.empty()) fail("MalformedLine", "no data lines");
    out.meta["first_index"] = std::to_string(first);
    return out;
}

MomentSeq read_bfile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("IoError", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string name = path;
    const auto slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    const auto dot = name.find('.');
    if (dot != std::string::npos) name = name.substr(0, dot);
    MomentSeq s = ingest_bfile(ss.str(), name);
    s.meta["path"] = path;
    return s;
}

std::string to_bfile(const MomentSeq& seq) {
    std::ostringstream os;
    os << "# " << seq.name << "\n";
    for (std::size_t i = 0; i < seq.terms.size(); ++i) os << i << " " << seq.terms[i].get_str() << "\n";
    return os.str();
}

} // namespace stieltjes
