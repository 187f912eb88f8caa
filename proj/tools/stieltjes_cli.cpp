#include "stieltjes/cfrac.hpp"
#include "stieltjes/densities.hpp"
#include "stieltjes/dfinite.hpp"
#include "stieltjes/error.hpp"
#include "stieltjes/hankel.hpp"
#include "stieltjes/sampling.hpp"
#include "stieltjes/sequences.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace stieltjes;

namespace {

constexpr const char* kCsvSchema = "stieltjes-csv/1";

struct RunConfig {
    std::string command;
    std::string mode;       // density sub-mode, check target
    std::string input;      // family name, b-file path, density name
    std::vector<std::string> patterns;
    int n = 30;
    int order = 40;
    int grid = 200;
    int k = 3;
    std::uint64_t samples = 500000;
    double bin_width = 0.02;
    std::uint64_t seed = 1;
    std::string mu = "8";
    std::string basis = "monomial";
    std::string only;
    bool jacobi = false;
    double tolerance = 1e-12;
    std::string format = "json";
    std::string out;
    int threads = 1;  // STIELTJES_THREADS; modules run single-threaded

    json to_json() const {
        json j{{"command", command}};
        if (!mode.empty()) j["mode"] = mode;
        if (!input.empty()) j["input"] = input;
        if (!patterns.empty()) j["patterns"] = patterns;
        j["n"] = n;
        j["order"] = order;
        j["grid"] = grid;
        j["k"] = k;
        j["samples"] = samples;
        j["bin_width"] = bin_width;
        j["seed"] = seed;
        j["mu"] = mu;
        j["basis"] = basis;
        if (!only.empty()) j["only"] = only;
        j["jacobi"] = jacobi;
        j["tolerance"] = tolerance;
        j["format"] = format;
        if (!out.empty()) j["out"] = out;
        j["threads"] = threads;
        return j;
    }
};

// Written once at the end, to --out or stdout.
class Output {
public:
    explicit Output(const RunConfig& cfg) : cfg_(cfg) {}

    void write_json(json body) const {
        json doc{{"config", cfg_.to_json()}};
        for (auto& [key, value] : body.items()) doc[key] = value;
        emit(doc.dump(2) + "\n");
    }

    // RFC 4180 rows after one '#' line carrying the schema and the config.
    void write_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) const {
        std::ostringstream s;
        s << "# " << kCsvSchema << " " << cfg_.to_json().dump() << "\r\n";
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) s << (i ? "," : "") << quote(cells[i]);
            s << "\r\n";
        };
        line(header);
        for (const auto& r : rows) line(r);
        emit(s.str());
    }

private:
    static std::string quote(const std::string& cell) {
        if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
        std::string q = "\"";
        for (char c : cell) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }

    void emit(const std::string& text) const {
        if (cfg_.out.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(cfg_.out, std::ios::binary);
        if (!f) fail("IoError", "cannot write " + cfg_.out);
        f << text;
    }

    const RunConfig& cfg_;
};

std::string num(double v) {
    if (!std::isfinite(v)) return "";
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

json rat_list(const std::vector<BigRat>& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
}

MomentSeq load_sequence(const std::string& input, int n) {
    if (std::filesystem::exists(input)) {
        MomentSeq s = read_bfile(input);
        if (static_cast<int>(s.size()) > n) s.terms.resize(static_cast<std::size_t>(n));
        return s;
    }
    return generate(Family::parse(input), n);
}

int run_gen(const RunConfig& cfg, const Output& out) {
    const MomentSeq s = generate(Family::parse(cfg.input), cfg.n);
    if (cfg.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < s.size(); ++i) rows.push_back({std::to_string(i), to_string(s[i])});
        out.write_csv({"n", "a_n"}, rows);
    } else {
        json meta = json::object();
        for (const auto& [k, v] : s.meta) meta[k] = v;
        out.write_json({{"name", s.name}, {"source", to_string(s.source)}, {"terms", rat_list(s.terms)}, {"meta", meta}});
    }
    return 0;
}

int run_certify(const RunConfig& cfg, const Output& out) {
    const MomentSeq s = load_sequence(cfg.input, cfg.n);
    const HankelReport r = classify(s);
    json body{{"name", s.name},
              {"prefix_terms", r.prefix_terms},
              {"verdict", to_string(r.verdict)},
              {"stieltjes", r.verdict == Verdict::StieltjesConsistent ? "Stieltjes" : "NotStieltjes"},
              {"delta0", rat_list(r.delta0)},
              {"delta1", rat_list(r.delta1)},
              {"summary", r.summary()}};
    body["first_violation"] = r.first_violation ? json{{"shift", r.first_violation->shift}, {"n", r.first_violation->n}} : json(nullptr);
    out.write_json(body);
    return 0;
}

int run_cfrac(const RunConfig& cfg, const Output& out) {
    const MomentSeq s = load_sequence(cfg.input, cfg.n);
    if (cfg.jacobi) {
        const JFrac j = extract_jfrac(s);
        if (cfg.format == "csv") {
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < j.gammas.size(); ++i) rows.push_back({std::to_string(i), to_string(j.gammas[i]), to_string(j.betas[i])});
            out.write_csv({"j", "gamma", "beta"}, rows);
        } else {
            out.write_json({{"name", s.name}, {"gammas", rat_list(j.gammas)}, {"betas", rat_list(j.betas)}});
        }
        return 0;
    }
    const SFrac f = extract_sfrac(s);
    if (cfg.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < f.alphas.size(); ++i) rows.push_back({std::to_string(i), to_string(f.alphas[i])});
        out.write_csv({"i", "alpha"}, rows);
    } else {
        out.write_json({{"name", s.name}, {"alphas", rat_list(f.alphas)}, {"terminated", f.terminated}});
    }
    return 0;
}

int run_bounds(const RunConfig& cfg, const Output& out) {
    const MomentSeq s = load_sequence(cfg.input, cfg.n);
    const BoundsReport b = growth_bounds(s);
    const auto scaling = alpha_scaling_data(extract_sfrac(s));
    if (cfg.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : scaling) rows.push_back({std::to_string(r.n), num(r.n_pow), num(to_double(r.alpha)), r.odd ? "odd" : "even"});
        out.write_csv({"n", "n_pow_minus_2_3", "alpha", "parity"}, rows);
        return 0;
    }
    auto entries = [](const std::vector<BoundEntry>& v) {
        json a = json::array();
        for (const auto& e : v) a.push_back({{"n", e.n}, {"value", e.value}});
        return a;
    };
    json rows = json::array();
    for (const auto& r : scaling) rows.push_back({{"n", r.n}, {"n_pow_minus_2_3", r.n_pow}, {"alpha", to_double(r.alpha)}, {"odd", r.odd}});
    out.write_json({{"name", s.name},
                    {"terms", s.size()},
                    {"ratio_bound", b.ratio_bound},
                    {"ratio_index", b.ratio_index},
                    {"best_truncated_cf", b.best_truncated()},
                    {"best_monotone_tail", b.best_monotone()},
                    {"mu_nondecreasing", b.mu_nondecreasing},
                    {"assumes_interleaved_monotone", b.assumes_interleaved_monotone},
                    {"truncated_cf", entries(b.truncated_cf)},
                    {"monotone_tail", entries(b.monotone_tail)},
                    {"alpha_scaling", rows}});
    return 0;
}

std::vector<std::vector<std::string>> density_rows(const Density& d, int grid) {
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < grid; ++i) {
        // open grid: cell midpoints avoid endpoint singularities
        const double x = d.lo + (d.hi - d.lo) * (i + 0.5) / grid;
        rows.push_back({"density", num(x), num(d(x))});
    }
    for (const auto& a : d.atoms) rows.push_back({"atom", num(a.location), num(a.weight)});
    return rows;
}

int run_density(const RunConfig& cfg, const Output& out) {
    if (cfg.grid < 1) fail("DomainError", "grid must be positive");
    if (cfg.mode == "exact") {
        out.write_csv({"kind", "x", "value"}, density_rows(exact_density(cfg.input), cfg.grid));
        return 0;
    }
    if (cfg.mode == "fit") {
        FitConfig fc;
        fc.n = cfg.n;
        fc.right_end = parse_rat(cfg.mu);
        fc.basis = (cfg.basis == "jacobi") ? FitBasis::ShiftedJacobi : FitBasis::MonomialExact;
        const MomentSeq s = load_sequence(cfg.input, cfg.n + 1);
        const PolynomialFit fit = poly_moment_fit(s, fc);
        if (cfg.format == "json") {
            json coeffs = json::array();
            for (const auto& c : fit.poly.coeffs()) coeffs.push_back(to_string(c));
            out.write_json({{"name", s.name}, {"coefficients", coeffs}, {"float_coefficients", fit.float_coeffs}});
            return 0;
        }
        out.write_csv({"kind", "x", "value"}, density_rows(fit.density, cfg.grid));
        return 0;
    }
    if (cfg.mode == "invert") {
        const Density ref = exact_density(cfg.input);
        const GfEvaluator gf = catalog_gf(cfg.input);
        std::vector<std::vector<std::string>> rows;
        for (int i = 0; i < cfg.grid; ++i) {
            const double x = ref.lo + (ref.hi - ref.lo) * (i + 0.5) / cfg.grid;
            std::string value;
            try {
                value = num(numeric_inversion(gf, x));
            } catch (const ComputationError& e) {
                if (e.code() != "ExtrapolationDiverged") throw;
            }
            rows.push_back({"density", num(x), value});
        }
        out.write_csv({"kind", "x", "value"}, rows);
        return 0;
    }
    fail("UsageError", "density mode must be exact, fit or invert");
}

int run_sample(const RunConfig& cfg, const Output& out) {
    const TraceSample s = trace_sq_sample(cfg.k, cfg.samples, cfg.bin_width, cfg.seed);
    if (cfg.format == "json") {
        out.write_json({{"k", s.k}, {"samples", s.samples}, {"mean", s.mean}, {"std_error", s.std_error}, {"counts", s.histogram.counts}});
        return 0;
    }
    const auto heights = s.histogram.normalized();
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < s.histogram.counts.size(); ++i)
        rows.push_back({num(s.histogram.bin_left(i)), std::to_string(s.histogram.counts[i]), num(heights[i])});
    out.write_csv({"bin_left", "count", "normalized_height"}, rows);
    return 0;
}

int run_check(const RunConfig& cfg, const Output& out) {
    if (cfg.mode != "identities") fail("UsageError", "only 'check identities' is available");
    std::vector<std::string> ids = identity_catalog();
    if (!cfg.only.empty()) ids = {cfg.only};
    json reports = json::array();
    bool all = true;
    for (const auto& id : ids) {
        const auto t0 = std::chrono::steady_clock::now();
        const int order = (id == "a") ? std::max(cfg.order, 60) : cfg.order;
        const IdentityCheckReport r = check_identity(id, order);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all = all && r.pass;
        json j{{"id", r.id}, {"order", r.order}, {"pass", r.pass}, {"time_s", secs}, {"residual", r.residual.to_string("x", 6)}};
        if (!r.note.empty()) j["note"] = r.note;
        if (id == "p") j["max_rel_error"] = r.max_rel_error;
        reports.push_back(j);
    }
    out.write_json({{"all_pass", all}, {"identities", reports}});
    return all ? 0 : 1;
}

int run_moments(const RunConfig& cfg, const Output& out) {
    const Density d = exact_density(cfg.input);
    const MomentSeq s = generate(Family::parse(cfg.input), cfg.n + 1);
    const auto got = moments_of(d, cfg.n, cfg.tolerance);
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i <= cfg.n; ++i) {
        const double want = to_double(s[static_cast<std::size_t>(i)]);
        const double g = got[static_cast<std::size_t>(i)];
        const double rel = want == 0 ? std::abs(g) : std::abs(g - want) / std::abs(want);
        rows.push_back({std::to_string(i), num(g), to_string(s[static_cast<std::size_t>(i)]), num(rel)});
    }
    out.write_csv({"n", "computed", "expected", "rel_error"}, rows);
    return 0;
}

int run_enumerate(const RunConfig& cfg, const Output& out) {
    std::vector<Pattern> ps;
    for (const auto& p : cfg.patterns) ps.push_back(Pattern::parse(p));
    MomentSeq s = brute_force_av(ps, cfg.n);
    if (cfg.format == "json") {
        out.write_json({{"name", s.name}, {"terms", rat_list(s.terms)}});
        return 0;
    }
    std::ostringstream text;
    text << to_bfile(s) << "# exhaustive enumeration, n = 0.." << cfg.n << "\n";
    if (cfg.out.empty()) {
        std::cout << text.str();
    } else {
        std::ofstream f(cfg.out);
        if (!f) fail("IoError", "cannot write " + cfg.out);
        f << text.str();
    }
    return 0;
}

int dispatch(const RunConfig& cfg) {
    const Output out(cfg);
    if (cfg.command == "gen") return run_gen(cfg, out);
    if (cfg.command == "certify") return run_certify(cfg, out);
    if (cfg.command == "cfrac") return run_cfrac(cfg, out);
    if (cfg.command == "bounds") return run_bounds(cfg, out);
    if (cfg.command == "density") return run_density(cfg, out);
    if (cfg.command == "sample") return run_sample(cfg, out);
    if (cfg.command == "check") return run_check(cfg, out);
    if (cfg.command == "moments") return run_moments(cfg, out);
    if (cfg.command == "enumerate") return run_enumerate(cfg, out);
    fail("UsageError", "unknown command " + cfg.command);
}

void print_error(const std::string& code, const std::string& message) {
    std::cerr << json{{"error", code}, {"message", message}}.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moment sequences, Hankel certificates, continued fractions and densities"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--out,-o", cfg.out, "Output file (default: stdout)");

    auto* gen = app.add_subcommand("gen", "Generate a sequence");
    gen->add_option("family", cfg.input, "Family name")->required();
    gen->add_option("--n", cfg.n, "Number of terms")->capture_default_str();
    gen->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));

    auto* certify = app.add_subcommand("certify", "Hankel minors and verdict");
    certify->add_option("seq", cfg.input, "Family name or b-file")->required();
    certify->add_option("--n", cfg.n, "Terms to use")->capture_default_str();

    auto* cfrac = app.add_subcommand("cfrac", "S-fraction or J-fraction coefficients");
    cfrac->add_option("seq", cfg.input, "Family name or b-file")->required();
    cfrac->add_option("--n", cfg.n, "Terms to use")->capture_default_str();
    cfrac->add_flag("--jacobi", cfg.jacobi, "J-fraction instead of S-fraction");
    cfrac->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));

    auto* bounds = app.add_subcommand("bounds", "Growth-rate lower bounds and alpha scaling data");
    bounds->add_option("seq", cfg.input, "Family name or b-file")->required();
    bounds->add_option("--n", cfg.n, "Terms to use")->capture_default_str();
    bounds->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));

    auto* density = app.add_subcommand("density", "Density on a grid, with atoms");
    density->add_option("mode", cfg.mode, "exact | fit | invert")->required()->check(CLI::IsMember({"exact", "fit", "invert"}));
    density->add_option("name", cfg.input, "Density name or sequence")->required();
    density->add_option("--grid", cfg.grid, "Grid points")->capture_default_str();
    density->add_option("--mu", cfg.mu, "Right end of the fit support")->capture_default_str();
    density->add_option("--n", cfg.n, "Fit degree")->capture_default_str();
    density->add_option("--basis", cfg.basis, "monomial | jacobi")->check(CLI::IsMember({"monomial", "jacobi"}));
    density->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));

    auto* sample = app.add_subcommand("sample", "Histogram of |Tr U|^2 for Haar unitaries");
    sample->add_option("--k", cfg.k, "Matrix size")->capture_default_str();
    sample->add_option("--samples", cfg.samples, "Sample count")->capture_default_str();
    sample->add_option("--bins", cfg.bin_width, "Bin width")->capture_default_str();
    sample->add_option("--seed", cfg.seed, "Seed")->capture_default_str();
    sample->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));

    auto* check = app.add_subcommand("check", "Operator and series identity checks");
    check->add_option("target", cfg.mode, "identities")->required()->check(CLI::IsMember({"identities"}));
    check->add_option("--only", cfg.only, "Single identity id");
    check->add_option("--order", cfg.order, "Series order")->capture_default_str();

    auto* moments = app.add_subcommand("moments", "Moments of an exact density against the sequence");
    moments->add_option("density", cfg.input, "Density name")->required();
    moments->add_option("--n", cfg.n, "Highest moment")->capture_default_str();
    moments->add_option("--tol", cfg.tolerance, "Quadrature tolerance")->capture_default_str();

    auto* enumerate = app.add_subcommand("enumerate", "Exhaustive count of pattern-avoiding permutations as a b-file");
    enumerate->add_option("patterns", cfg.patterns, "Patterns, e.g. 1324")->required();
    enumerate->add_option("--n", cfg.n, "Largest length")->capture_default_str();
    enumerate->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));

    // CSV is the natural default for grid and table output
    for (auto* sub : {density, sample, moments, enumerate}) sub->callback([&cfg, sub] {
        const auto* fmt = sub->get_option_no_throw("--format");
        if (fmt == nullptr || fmt->count() == 0) cfg.format = "csv";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (const char* t = std::getenv("STIELTJES_THREADS")) cfg.threads = std::max(1, std::atoi(t));
    try {
        return dispatch(cfg);
    } catch (const ComputationError& e) {
        if (e.code() == "UsageError") {
            print_error(e.code(), e.what());
            return 2;
        }
        print_error(e.code(), e.what());
        return 1;
    } catch (const std::exception& e) {
        print_error("InternalError", e.what());
        return 1;
    }
}
