// Command-line front end: Green-function values, property checks, Bernoulli
// tables, order bounds, unit recognition and the acceptance self-test.
//
// Exit codes: 0 all passed, 1 a check failed, 2 usage or configuration error.

#include "ellgreen.hpp"
#include "ellgreen/acceptance.hpp"
#include "ellgreen/report.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace ellgreen;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

enum class Format { text, json, csv };

struct Globals {
    std::optional<int> prec;
    bool json = false;
    bool csv = false;
    std::uint64_t seed = kDefaultSeed;
    bool strict = false;

    Format format() const { return json ? Format::json : csv ? Format::csv : Format::text; }
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// --prec, else $ELLGREEN_PREC, else `fallback`.
int resolve_bits(const Globals& g, int fallback) {
    if (g.prec) return *g.prec;
    if (const char* env = std::getenv(kPrecisionEnv)) {
        try {
            std::size_t used = 0;
            int v = std::stoi(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
            return v;
        } catch (const std::exception&) {
            throw UsageError(std::string(kPrecisionEnv) + " is not an integer: " + env);
        }
    }
    return fallback;
}

PrecisionContext context(const Globals& g, int fallback = PrecisionContext::kDefaultBits) {
    return PrecisionContext(resolve_bits(g, fallback));
}

/// "a..b", "a,b,c" or "a"
std::vector<std::int64_t> parse_list(const std::string& text) {
    std::vector<std::int64_t> out;
    auto dots = text.find("..");
    try {
        if (dots != std::string::npos) {
            std::int64_t lo = std::stoll(text.substr(0, dots));
            std::int64_t hi = std::stoll(text.substr(dots + 2));
            if (hi < lo) throw UsageError("empty range: " + text);
            if (hi - lo > 100000) throw UsageError("range too long: " + text);
            for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
            return out;
        }
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw UsageError("not an integer: " + item);
        }
    } catch (const std::invalid_argument&) {
        throw UsageError("not an integer list: " + text);
    } catch (const std::out_of_range&) {
        throw UsageError("integer out of range: " + text);
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

UnimodularMatrix parse_matrix(const std::string& text) {
    auto v = parse_list(text);
    if (v.size() != 4) throw UsageError("matrix must be 'a,b,c,d'");
    UnimodularMatrix m{v[0], v[1], v[2], v[3]};
    if (!m.valid()) throw UsageError("matrix must have determinant 1");
    return m;
}

TorsionCoord parse_torsion(const std::string& text) {
    LatticeCoord z = LatticeCoord::parse(text);
    mpz_class q = lcm(mpz_class(z.a1().get_den()), mpz_class(z.a2().get_den()));
    if (!q.fits_slong_p()) throw UsageError("torsion denominator too large");
    mpz_class p1 = mpq_class(z.a1() * q).get_num(), p2 = mpq_class(z.a2() * q).get_num();
    return TorsionCoord{p1.get_si(), p2.get_si(), q.get_si()};
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

/// Emits reports in the chosen format; CSV uses the first report's columns.
class Emitter {
public:
    explicit Emitter(Format f) : format_(f) {}

    void emit(const Report& r) {
        switch (format_) {
            case Format::json: write_ndjson(std::cout, r); break;
            case Format::csv: emit_csv(r); break;
            case Format::text: emit_text(r); break;
        }
    }

private:
    static std::string flat(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

    std::vector<std::pair<std::string, std::string>> columns(const Report& r) const {
        std::vector<std::pair<std::string, std::string>> cols = r.inputs;
        for (auto it = r.outputs.begin(); it != r.outputs.end(); ++it) cols.emplace_back(it.key(), flat(it.value()));
        if (r.residual) cols.emplace_back("residual", *r.residual);
        if (r.tolerance) cols.emplace_back("tolerance", *r.tolerance);
        if (r.passed) cols.emplace_back("passed", *r.passed ? "true" : "false");
        cols.emplace_back("bits", std::to_string(r.bits));
        return cols;
    }

    void emit_csv(const Report& r) {
        auto cols = columns(r);
        if (!header_done_) {
            std::string line = "command";
            for (const auto& [k, v] : cols) line += "," + csv_escape(k);
            std::cout << line << '\n';
            header_done_ = true;
        }
        std::string line = csv_escape(r.command);
        for (const auto& [k, v] : cols) line += "," + csv_escape(v);
        std::cout << line << '\n';
    }

    void emit_text(const Report& r) {
        std::cout << r.command;
        if (r.passed) std::cout << (*r.passed ? "  PASS" : "  FAIL");
        std::cout << '\n';
        for (const auto& [k, v] : columns(r))
            if (k != "passed") std::cout << "  " << k << ": " << v << '\n';
    }

    Format format_;
    bool header_done_ = false;
};

// ---- phi ------------------------------------------------------------------

struct PhiArgs {
    std::string tau = "i";
    std::string z;
    std::string method = "sigma";
};

int cmd_phi(const Globals& g, const PhiArgs& a) {
    PrecisionContext ctx = context(g);
    Tau tau = Tau::parse(a.tau);
    LatticeCoord z = LatticeCoord::parse(a.z);
    if (z.is_zero()) throw UsageError("z must be nonzero on the torus");

    std::vector<Method> methods;
    if (a.method == "all")
        methods = {Method::sigma, Method::siegel, Method::kronecker};
    else
        methods = {parse_method(a.method)};

    Report r;
    r.command = "phi";
    r.inputs = {{"tau", tau.to_string()}, {"z", z.to_string()}, {"method", a.method}};
    r.bits = ctx.bits();
    Json values = Json::array();
    std::vector<GreenValue> got;
    Warning warnings = Warning::none;
    for (Method m : methods) {
        got.push_back(phi(z, tau, ctx, m));
        warnings |= got.back().warnings;
        values.push_back({{"method", to_string(m)},
                          {"value", got.back().value.to_string()},
                          {"est_error", got.back().est_error.to_string(6)}});
    }
    r.outputs["values"] = values;
    if (warnings != Warning::none) {
        Json w = Json::array();
        for (const auto& name : warning_names(warnings)) w.push_back(name);
        r.outputs["warnings"] = w;
    }
    int code = kExitPass;
    if (got.size() == 3) {
        int ss = agree_bits(got[0].value, got[1].value, ctx);
        int sk = agree_bits(got[0].value, got[2].value, ctx);
        int gk = agree_bits(got[1].value, got[2].value, ctx);
        r.outputs["agree_bits"] = {{"sigma_siegel", std::to_string(ss)},
                                   {"sigma_kronecker", std::to_string(sk)},
                                   {"siegel_kronecker", std::to_string(gk)}};
        bool ok = ss >= ctx.bits() - 2 * ctx.guard() && sk >= 30;
        r.passed = ok;
        if (!ok) code = kExitFail;
    }
    Emitter(g.format()).emit(r);
    return code;
}

// ---- check ----------------------------------------------------------------

struct CheckArgs {
    std::string kind;
    std::string tau = "i";
    std::string z = "1/3,1/5";
    std::string n = "2";
    std::string matrix = "0,-1,1,0";
    std::string method = "sigma";
    int grid_n = 1024;
    int grid = 5;
    std::optional<std::string> fault_log_scale;
};

int cmd_check(const Globals& g, const CheckArgs& a) {
    PrecisionContext ctx = context(g);
    Tau tau = Tau::parse(a.tau);
    Emitter out(g.format());
    bool all = true;
    auto emit = [&](const CheckReport& c) {
        all = all && c.passed;
        out.emit(to_report(c, "check " + a.kind));
    };

    if (a.kind == "dist") {
        LatticeCoord z = LatticeCoord::parse(a.z);
        if (z.is_zero()) throw UsageError("z must be nonzero on the torus");
        GreenOptions opts;
        if (a.fault_log_scale) opts.delta_log_scale = mp::Real::parse(*a.fault_log_scale, ctx.working_bits());
        for (auto n : parse_list(a.n)) {
            if (n < 1) throw UsageError("n must be positive");
            auto rep = check_distribution(z, n, tau, ctx, opts, parse_method(a.method));
            if (a.fault_log_scale) rep.inputs.emplace_back("fault_log_scale", *a.fault_log_scale);
            emit(rep);
        }
    } else if (a.kind == "sl2") {
        LatticeCoord z = LatticeCoord::parse(a.z);
        if (z.is_zero()) throw UsageError("z must be nonzero on the torus");
        emit(check_sl2_invariance(z, tau, parse_matrix(a.matrix), ctx, parse_method(a.method)));
    } else if (a.kind == "integral") {
        if (a.grid_n < 64) throw UsageError("--N must be at least 64");
        emit(integral_over_torus(tau, a.grid_n, ctx));
    } else if (a.kind == "torsion-sum") {
        for (auto n : parse_list(a.n)) {
            if (n < 2) throw UsageError("n must be at least 2");
            emit(torsion_log_sum(n, tau, ctx, parse_method(a.method)));
        }
    } else if (a.kind == "paths") {
        if (a.grid < 2 || a.grid > 64) throw UsageError("--grid must be in 2..64");
        for (int i = 0; i < a.grid; ++i)
            for (int j = 0; j < a.grid; ++j) {
                if (i == 0 && j == 0) continue;
                emit(check_paths(LatticeCoord(mpq_class(i, a.grid), mpq_class(j, a.grid)), tau, ctx));
            }
    } else {
        throw UsageError("unknown check kind: " + a.kind);
    }
    return all ? kExitPass : kExitFail;
}

// ---- bernoulli ------------------------------------------------------------

struct BernoulliArgs {
    std::string what;
    std::string range;
};

constexpr std::int64_t kBernoulliMax = 200;

int cmd_bernoulli(const Globals& g, const BernoulliArgs& a) {
    auto values = parse_list(a.range);
    for (auto v : values)
        if (v < 0 || v > kBernoulliMax) throw UsageError("range must lie in 0..200");
    Emitter out(g.format());
    bool all = true;
    if (a.what == "table") {
        auto table = bernoulli_table(*std::max_element(values.begin(), values.end()));
        for (auto t : values) {
            Report r;
            r.command = "bernoulli table";
            r.inputs = {{"t", std::to_string(t)}};
            r.outputs["B"] = table[t].get_str();
            out.emit(r);
        }
    } else if (a.what == "n2g") {
        for (auto gg : values) {
            if (gg < 1) throw UsageError("g must be at least 1");
            Report r;
            r.command = "bernoulli n2g";
            r.inputs = {{"g", std::to_string(gg)}};
            r.outputs["N_2g"] = n2g(gg).get_str();
            out.emit(r);
        }
    } else if (a.what == "eq33") {
        bool single = values.size() == 1;
        for (auto c : values) {
            if (c % 2 != 0 && !single) continue;
            auto rep = verify_eq33(c);
            all = all && rep.passed;
            out.emit(to_report(rep, "bernoulli eq33"));
        }
    } else {
        throw UsageError("unknown bernoulli table: " + a.what);
    }
    return all ? kExitPass : kExitFail;
}

// ---- lemma45 --------------------------------------------------------------

struct Lemma45Args {
    std::string mode;
    std::int64_t n = 1;
    std::int64_t c = 2;
    std::int64_t pmax = 50;
    int dmax = 6;
};

int cmd_lemma45(const Globals& g, const Lemma45Args& a) {
    if (a.n < 1) throw UsageError("--n must be positive");
    if (a.c < 1) throw UsageError("--c must be positive");
    Emitter out(g.format());
    if (a.mode == "bound") {
        BoundReport b = lemma45_refined(a.n, a.c);
        Report r;
        r.command = "lemma45 bound";
        r.inputs = {{"n", std::to_string(a.n)}, {"c", std::to_string(a.c)}};
        r.outputs["refined"] = b.refined.get_str();
        r.outputs["coarse"] = b.coarse.get_str();
        std::string per;
        for (auto [p, e] : b.per_prime) per += (per.empty() ? "" : ",") + std::to_string(p) + "^" + std::to_string(e);
        r.outputs["per_prime"] = per;
        r.outputs["f2_case"] = b.f2_case;
        out.emit(r);
        return kExitPass;
    }
    if (a.mode == "verify") {
        if (a.pmax < 2 || a.pmax > 1000) throw UsageError("--pmax must be in 2..1000");
        if (a.dmax < 1) throw UsageError("--dmax must be at least 1");
        auto v = verify_lemma45_detail(a.n, a.c, a.pmax, a.dmax);
        auto rep = verify_lemma45(a.n, a.c, a.pmax, a.dmax);
        Report r = to_report(rep, "lemma45 verify");
        Json primes = Json::array();
        for (const auto& pv : v.primes)
            primes.push_back({{"p", std::to_string(pv.p)},
                              {"brute_delta", std::to_string(pv.brute)},
                              {"formula_exponent", std::to_string(pv.formula)},
                              {"tight", pv.tight ? "true" : "false"}});
        r.outputs["primes"] = primes;
        out.emit(r);
        return rep.passed ? kExitPass : kExitFail;
    }
    throw UsageError("unknown lemma45 mode: " + a.mode);
}

// ---- unitcheck ------------------------------------------------------------

struct UnitArgs {
    std::string tau = "i";
    std::int64_t order = 6;
    std::optional<std::string> point;
    int maxdeg = 8;
    long exponent = 24;
};

int cmd_unitcheck(const Globals& g, const UnitArgs& a) {
    int bits = resolve_bits(g, 768);
    if (bits < kUnitCheckMinBits) throw PrecisionTooLow("unitcheck needs --prec >= 512");
    PrecisionContext ctx(bits);
    Tau tau = Tau::parse(a.tau);
    if (a.maxdeg < 1 || a.maxdeg > 32) throw UsageError("--maxdeg must be in 1..32");
    TorsionCoord t = a.point ? parse_torsion(*a.point) : unit_preset(a.order);
    UnitCheckOptions opts;
    opts.exponent = a.exponent;
    UnitReport u = unit_check(tau, t, a.maxdeg, ctx, opts);

    Report r;
    r.command = "unitcheck";
    r.inputs = {{"tau", tau.to_string()},
                {"point", LatticeCoord(t).to_string()},
                {"order", std::to_string(u.order)},
                {"maxdeg", std::to_string(a.maxdeg)},
                {"exponent", std::to_string(a.exponent)}};
    r.outputs["phi"] = u.phi.to_string(40);
    r.outputs["value"] = u.value.to_string(40);
    r.outputs["polynomial"] = u.polynomial ? u.polynomial->to_string() : "none";
    r.outputs["constant_abs"] = u.constant_abs ? u.constant_abs->get_str() : "none";
    r.outputs["stable"] = u.stable ? "true" : "false";
    r.outputs["verdict"] = to_string(u.verdict);
    if (u.polynomial) r.residual = u.residual.to_string(6);
    r.bits = bits;
    Emitter(g.format()).emit(r);
    return g.strict && u.verdict == UnitVerdict::unrecognized ? kExitFail : kExitPass;
}

// ---- selftest -------------------------------------------------------------

int cmd_selftest(const Globals& g) {
    AcceptanceOptions opts{context(g), g.seed};
    bool all = true;
    Format f = g.format();
    if (f == Format::text) std::cout << "selftest seed=" << g.seed << " bits=" << opts.ctx.bits() << '\n';
    Emitter out(f);
    run_acceptance(opts, [&](const CriterionResult& r) {
        all = all && r.report.passed;
        if (f == Format::text) {
            char line[160];
            std::snprintf(line, sizeof line, "[%s] %2d  %-52s %.2fs", r.report.passed ? "PASS" : "FAIL", r.id,
                          r.title.c_str(), r.seconds);
            std::cout << line << '\n';
        } else {
            out.emit(to_report(r.report, "selftest"));
        }
        std::cout.flush();
    });
    return all ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Canonical Green function of elliptic curves: evaluation and checks"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--prec", g.prec, "working precision in bits (default 256, or $ELLGREEN_PREC)");
    app.add_flag("--json", g.json, "newline-delimited JSON reports");
    app.add_flag("--csv", g.csv, "CSV with a header row");
    app.add_option("--seed", g.seed, "seed for pseudo-random test points")->capture_default_str();
    app.add_flag("--strict", g.strict, "treat an unrecognized unit as a failure");

    PhiArgs phi_args;
    auto* phi = app.add_subcommand("phi", "evaluate phi(z; tau)");
    phi->add_option("--tau", phi_args.tau, "tau as 're,im' or i, 2i, rho")->capture_default_str();
    phi->add_option("--z", phi_args.z, "torus point 'a1,a2' with z = a1 tau + a2")->required();
    phi->add_option("--method", phi_args.method, "sigma, siegel, kronecker or all")
        ->check(CLI::IsMember({"sigma", "siegel", "kronecker", "all"}))
        ->capture_default_str();

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "property checks");
    check->add_option("kind", check_args.kind, "dist, sl2, integral, torsion-sum or paths")
        ->required()
        ->check(CLI::IsMember({"dist", "sl2", "integral", "torsion-sum", "paths"}));
    check->add_option("--tau", check_args.tau)->capture_default_str();
    check->add_option("--z", check_args.z)->capture_default_str();
    check->add_option("--n", check_args.n, "degrees, e.g. 2,3,5 or 2..6")->capture_default_str();
    check->add_option("--matrix", check_args.matrix, "a,b,c,d with ad - bc = 1")->capture_default_str();
    check->add_option("--method", check_args.method)
        ->check(CLI::IsMember({"sigma", "siegel", "kronecker"}))
        ->capture_default_str();
    check->add_option("--N", check_args.grid_n, "quadrature grid size")->capture_default_str();
    check->add_option("--grid", check_args.grid, "points j/G, k/G for the paths check")->capture_default_str();
    check->add_option("--fault-log-scale", check_args.fault_log_scale, "replace Delta by exp(x) Delta (dist only)");

    BernoulliArgs bern_args;
    auto* bern = app.add_subcommand("bernoulli", "exact Bernoulli tables");
    bern->add_option("what", bern_args.what, "table, n2g or eq33")
        ->required()
        ->check(CLI::IsMember({"table", "n2g", "eq33"}));
    auto* bern_t = bern->add_option("--t", bern_args.range, "indices for table");
    auto* bern_g = bern->add_option("--g", bern_args.range, "g values for n2g");
    auto* bern_c = bern->add_option("--c", bern_args.range, "even c values for eq33");
    bern_t->excludes(bern_g)->excludes(bern_c);
    bern_g->excludes(bern_c);

    Lemma45Args l45_args;
    auto* l45 = app.add_subcommand("lemma45", "order bounds");
    l45->add_option("mode", l45_args.mode, "bound or verify")->required()->check(CLI::IsMember({"bound", "verify"}));
    l45->add_option("--n", l45_args.n)->capture_default_str();
    l45->add_option("--c", l45_args.c)->capture_default_str();
    l45->add_option("--pmax", l45_args.pmax)->capture_default_str();
    l45->add_option("--dmax", l45_args.dmax)->capture_default_str();

    UnitArgs unit_args;
    auto* unit = app.add_subcommand("unitcheck", "recognize exp(24 n phi) at a torsion point");
    unit->add_option("--tau", unit_args.tau)->capture_default_str();
    unit->add_option("--order", unit_args.order, "order of the preset point (1/n, 2/n); (1/2, 0) for 2")
        ->capture_default_str();
    unit->add_option("--point", unit_args.point, "explicit torsion point 'p1/q,p2/q'");
    unit->add_option("--maxdeg", unit_args.maxdeg)->capture_default_str();
    unit->add_option("--exponent", unit_args.exponent, "24 or 12")
        ->check(CLI::IsMember({24, 12}))
        ->capture_default_str();

    auto* self = app.add_subcommand("selftest", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (g.json && g.csv) throw UsageError("--json and --csv are exclusive");
        if (*phi) return cmd_phi(g, phi_args);
        if (*check) return cmd_check(g, check_args);
        if (*bern) {
            if (bern_args.range.empty()) throw UsageError("give --t, --g or --c");
            return cmd_bernoulli(g, bern_args);
        }
        if (*l45) return cmd_lemma45(g, l45_args);
        if (*unit) return cmd_unitcheck(g, unit_args);
        if (*self) return cmd_selftest(g);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NonConvergent& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
