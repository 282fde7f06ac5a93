/**
 * @brief The acceptance suite: thirteen end-to-end criteria, shared by the
 * `selftest` subcommand and the acceptance test binary.
 *
 * Each criterion yields a CheckReport whose inputs and outputs are
 * deterministic functions of (seed, precision). Wall-clock budgets are
 * returned alongside and never enter the report.
 */
#pragma once

#include "ellgreen/bernoulli.hpp"
#include "ellgreen/green.hpp"
#include "ellgreen/orderbound.hpp"
#include "ellgreen/reckon.hpp"
#include "ellgreen/report.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace ellgreen {

inline constexpr std::uint64_t kDefaultSeed = 20241016;
inline constexpr int kAcceptanceCount = 13;

struct AcceptanceOptions {
    PrecisionContext ctx{};
    std::uint64_t seed = kDefaultSeed;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    CheckReport report;
    double seconds = 0;
    double budget_seconds = 0;  // 0: no budget
    bool within_budget() const { return budget_seconds <= 0 || seconds <= budget_seconds; }
};

/// Order-n torsion point used by the unit-check presets: (1/2, 0) for n = 2, else (1/n, 2/n).
inline TorsionCoord unit_preset(std::int64_t n) {
    if (n < 2) throw std::invalid_argument("preset order must be at least 2");
    return n == 2 ? TorsionCoord{1, 0, 2} : TorsionCoord{1, 2, n};
}

/// Seeded nonzero torsion points with denominators 2..12.
inline std::vector<TorsionCoord> seeded_torsion_points(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<TorsionCoord> out;
    while (static_cast<int>(out.size()) < count) {
        std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 11);
        std::int64_t p1 = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
        std::int64_t p2 = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
        TorsionCoord t{p1, p2, q};
        if (!t.is_zero()) out.push_back(t);
    }
    return out;
}

/// tau = i, 2i, 0.3 + 1.2i
inline std::vector<Tau> standard_taus() { return {Tau::i(), Tau::from_parts(0, 2), Tau::parse("0.3,1.2")}; }

inline std::vector<LatticeCoord> standard_points() {
    return {LatticeCoord(mpq_class(1, 3), mpq_class(1, 5)), LatticeCoord(mpq_class(1, 2), mpq_class(1, 2)),
            LatticeCoord(mpq_class(2, 7), mpq_class(3, 11)), LatticeCoord(mpq_class(1, 4), 0)};
}

inline std::vector<UnimodularMatrix> standard_matrices() {
    return {UnimodularMatrix::identity(), UnimodularMatrix::T(), UnimodularMatrix::S(),
            UnimodularMatrix::S() * UnimodularMatrix::T(), UnimodularMatrix{2, 1, 1, 1}, UnimodularMatrix{1, 0, 3, 1}};
}

namespace acceptance_detail {

inline std::string sci(const BigReal& x) { return x.to_string(kReportDigits); }

/// Largest residual, kept as the report residual.
struct MaxTracker {
    BigReal worst{0, 64};
    void add(const BigReal& r) {
        if (r > worst) worst = BigReal(r, std::max<mp::prec_t>(r.precision(), 64));
    }
};

inline BigReal bits_tol(int e, const PrecisionContext& ctx) { return mp::ldexp(make_scalar<BigReal>(1, ctx), -e); }

inline CheckReport finish(const std::string& name, bool passed, BigReal residual, BigReal tolerance,
                          const PrecisionContext& ctx) {
    CheckReport r;
    r.name = name;
    r.passed = passed;
    r.residual = std::move(residual);
    r.tolerance = std::move(tolerance);
    r.bits = ctx.bits();
    return r;
}

inline CheckReport c1_n2g(const AcceptanceOptions& o) {
    const std::array<long, 3> expected{24, 240, 504};
    bool ok = true;
    CheckReport r = finish("n2g", true, BigReal(0, 64), BigReal(0, 64), o.ctx);
    long mismatches = 0;
    for (int g = 1; g <= 3; ++g) {
        mpz_class v = n2g(g);
        r.outputs.emplace_back("N_" + std::to_string(2 * g), v.get_str());
        if (v != expected[g - 1]) ++mismatches;
    }
    ok = mismatches == 0;
    r.residual = BigReal(mismatches, 64);
    r.passed = ok;
    return r;
}

inline CheckReport c2_eq33(const AcceptanceOptions& o) {
    auto table = bernoulli_table(60);
    long mismatches = 0;
    for (int c = 2; c <= 60; c += 2) {
        auto s = eq33_sides(c, &table);
        if (s.lhs != s.rhs) ++mismatches;
    }
    CheckReport r = finish("eq33", mismatches == 0, BigReal(mismatches, 64), BigReal(0, 64), o.ctx);
    r.inputs = {{"c", "2..60 even"}};
    r.outputs = {{"mismatches", std::to_string(mismatches)}};
    return r;
}

inline CheckReport c3_lemma45(const AcceptanceOptions& o) {
    long violations = 0, cases = 0;
    for (int n = 1; n <= 12; ++n)
        for (int c : {2, 4, 6, 8}) {
            auto v = verify_lemma45_detail(n, c, 50, 64, 100000);
            for (const auto& pv : v.primes) {
                ++cases;
                if (!pv.sound) ++violations;
            }
        }
    auto base = verify_lemma45_detail(1, 2, 50, 64, 100000);
    int d2 = -1, d3 = -1;
    for (const auto& pv : base.primes) {
        if (pv.p == 2) d2 = pv.brute;
        if (pv.p == 3) d3 = pv.brute;
    }
    bool tight = d2 == 3 && d3 == 1;
    CheckReport r = finish("lemma45_soundness", violations == 0 && tight, BigReal(violations, 64), BigReal(0, 64), o.ctx);
    r.inputs = {{"n", "1..12"}, {"c", "2,4,6,8"}, {"p_max", "50"}, {"modulus_limit", "100000"}};
    r.outputs = {{"prime_cases", std::to_string(cases)},
                 {"violations", std::to_string(violations)},
                 {"delta_p2_n1_c2", std::to_string(d2)},
                 {"delta_p3_n1_c2", std::to_string(d3)}};
    return r;
}

inline CheckReport c4_divides(const AcceptanceOptions& o) {
    long failures = 0;
    for (int n = 1; n <= 30; ++n)
        for (int c = 1; c <= 20; ++c) {
            auto b = lemma45_refined(n, c);
            if (!mpz_divisible_p(b.coarse.get_mpz_t(), b.refined.get_mpz_t())) ++failures;
        }
    CheckReport r = finish("refined_divides_coarse", failures == 0, BigReal(failures, 64), BigReal(0, 64), o.ctx);
    r.inputs = {{"n", "1..30"}, {"c", "1..20"}};
    r.outputs = {{"failures", std::to_string(failures)}};
    return r;
}

inline CheckReport c5_paths(const AcceptanceOptions& o) {
    const PrecisionContext& ctx = o.ctx;
    auto points = seeded_torsion_points(o.seed, 20);
    MaxTracker siegel, kron;
    for (const auto& tau : standard_taus()) {
        for (const auto& t : points) {
            LatticeCoord z(t);
            siegel.add(mp::abs(phi_sigma(z, tau, ctx).value - phi_siegel(z, tau, ctx).value));
        }
        for (int k = 0; k < 5; ++k) {
            LatticeCoord z(points[static_cast<std::size_t>(k)]);
            kron.add(mp::abs(phi_sigma(z, tau, ctx).value - phi_kronecker(z, tau, ctx).value));
        }
    }
    BigReal tol_s = bits_tol(ctx.bits() - 2 * ctx.guard(), ctx);
    BigReal tol_k(1e-10, 64);
    bool ok = siegel.worst <= tol_s && kron.worst <= tol_k;
    CheckReport r = finish("cross_path", ok, siegel.worst, tol_s, ctx);
    std::string pts;
    for (const auto& t : points)
        pts += (pts.empty() ? "" : ";") + std::to_string(t.p1) + "/" + std::to_string(t.q) + "," +
               std::to_string(t.p2) + "/" + std::to_string(t.q);
    r.inputs = {{"seed", std::to_string(o.seed)}, {"points", pts}, {"taus", "i;2i;0.3+1.2i"}};
    r.outputs = {{"max_sigma_siegel", sci(siegel.worst)},
                 {"tol_sigma_siegel", sci(tol_s)},
                 {"max_sigma_kronecker", sci(kron.worst)},
                 {"tol_sigma_kronecker", sci(tol_k)}};
    return r;
}

inline std::vector<LatticeCoord> distribution_bases() {
    return {LatticeCoord(mpq_class(1, 3), 0), LatticeCoord(mpq_class(1, 2), mpq_class(1, 2)),
            LatticeCoord(mpq_class(2, 7), mpq_class(3, 11))};
}

/// Distribution relation sweep; with a fault, records every residual.
inline CheckReport distribution_sweep(const AcceptanceOptions& o, const GreenOptions& g, std::vector<BigReal>* all,
                                      std::vector<std::int64_t>* degrees) {
    MaxTracker worst;
    bool every_passed = true;
    for (const auto& tau : {Tau::i(), Tau::from_parts(0, 2)})
        for (const auto& z : distribution_bases())
            for (std::int64_t n : {2, 3, 4, 5}) {
                auto rep = check_distribution(z, n, tau, o.ctx, g);
                worst.add(rep.residual);
                every_passed = every_passed && rep.passed;
                if (all) all->push_back(rep.residual);
                if (degrees) degrees->push_back(n);
            }
    return finish("distribution", every_passed, worst.worst, half_precision_tolerance(o.ctx), o.ctx);
}

inline CheckReport c6_distribution(const AcceptanceOptions& o) {
    CheckReport r = distribution_sweep(o, {}, nullptr, nullptr);
    r.inputs = {{"n", "2,3,4,5"}, {"z", "1/3,0;1/2,1/2;2/7,3/11"}, {"taus", "i;2i"}};
    r.outputs = {{"max_residual", sci(r.residual)}};
    return r;
}

inline CheckReport c7_torsion_sum(const AcceptanceOptions& o) {
    MaxTracker worst;
    bool ok = true;
    CheckReport r;
    for (const auto& tau : {Tau::i(), Tau::from_parts(0, 2)})
        for (std::int64_t n : {2, 3, 5, 6}) {
            auto rep = torsion_log_sum(n, tau, o.ctx);
            worst.add(rep.residual);
            ok = ok && rep.passed;
        }
    r = finish("torsion_sum", ok, worst.worst, half_precision_tolerance(o.ctx), o.ctx);
    r.inputs = {{"n", "2,3,5,6"}, {"taus", "i;2i"}};
    r.outputs = {{"max_residual", sci(worst.worst)}};
    return r;
}

inline CheckReport c8_invariance(const AcceptanceOptions& o) {
    const PrecisionContext& ctx = o.ctx;
    const BigReal tol = half_precision_tolerance(ctx);
    MaxTracker even, periodic, sl2;
    long exact_failures = 0;
    for (const auto& tau : standard_taus()) {
        for (const auto& z : standard_points()) {
            BigReal base = phi_sigma(z, tau, ctx).value;
            even.add(mp::abs(base - phi_sigma(-z, tau, ctx).value));
            // the same torus point handed over unreduced: a1 + 1 and a2 - 2
            BigComplex shifted = z.point<BigReal>(tau, ctx);
            BigComplex t = tau.value<BigReal>(ctx);
            shifted += t - BigComplex(make_scalar<BigReal>(2, ctx), make_scalar<BigReal>(0, ctx));
            QuasiPeriods qp = quasi_periods(tau, ctx);
            BigReal via_point = -2 * mp::log(abs(klein_form(shifted, tau, qp, ctx)) *
                                             (2 * pi_of<BigReal>(ctx) * mp::pow(abs(dedekind_eta(tau, ctx)), 2)));
            periodic.add(mp::abs(base - via_point));
            for (const auto& m : standard_matrices()) {
                auto rep = check_sl2_invariance(z, tau, m, ctx);
                sl2.add(rep.residual);
            }
        }
        // exact coordinate bookkeeping
        auto [reduced, m] = reduce_tau(tau);
        if (!(tau.apply(m) == reduced)) ++exact_failures;
        for (const auto& m1 : standard_matrices())
            for (const auto& m2 : standard_matrices()) {
                if (!(tau.apply(m2).apply(m1) == tau.apply(m1 * m2))) ++exact_failures;
                for (const auto& z : standard_points())
                    if (!(transform_coord(transform_coord(z, m2), m1) == transform_coord(z, m1 * m2))) ++exact_failures;
            }
    }
    BigReal worst = even.worst;
    if (periodic.worst > worst) worst = periodic.worst;
    if (sl2.worst > worst) worst = sl2.worst;
    CheckReport r = finish("invariance", worst <= tol && exact_failures == 0, worst, tol, ctx);
    r.inputs = {{"taus", "i;2i;0.3+1.2i"}, {"z", "1/3,1/5;1/2,1/2;2/7,3/11;1/4,0"}, {"matrices", "I;T;S;ST;[2,1;1,1];[1,0;3,1]"}};
    r.outputs = {{"max_evenness", sci(even.worst)},
                 {"max_periodicity", sci(periodic.worst)},
                 {"max_sl2", sci(sl2.worst)},
                 {"exact_failures", std::to_string(exact_failures)}};
    return r;
}

inline std::string fixed(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

inline CheckReport c9_integral(const AcceptanceOptions& o) {
    bool ok = true;
    double worst = 0;
    CheckReport r;
    std::vector<std::pair<std::string, std::string>> outs;
    const char* names[] = {"i", "2i"};
    int idx = 0;
    for (const auto& tau : {Tau::i(), Tau::from_parts(0, 2)}) {
        TorusIntegral in = torus_integrals(tau, 1024, o.ctx);
        ok = ok && std::abs(in.coarse) <= 5e-3 && std::abs(in.fine) <= std::abs(in.coarse);
        worst = std::max(worst, std::abs(in.coarse));
        outs.emplace_back(std::string("I_1024_") + names[idx], fixed(in.coarse));
        outs.emplace_back(std::string("I_2048_") + names[idx], fixed(in.fine));
        ++idx;
    }
    r = finish("harmonic_mean", ok, BigReal(worst, 64), BigReal(5e-3, 64), o.ctx);
    r.inputs = {{"N", "1024"}, {"taus", "i;2i"}};
    r.outputs = outs;
    return r;
}

inline CheckReport c10_pole(const AcceptanceOptions& o) {
    const PrecisionContext& ctx = o.ctx;
    std::vector<BigReal> values;
    CheckReport r;
    for (int e : {4, 6, 8}) {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(e));
        LatticeCoord z(0, mpq_class(1, den));
        BigReal zc = make_scalar<BigReal>(mpq_class(1, den), ctx);
        BigReal v = phi_sigma(z, Tau::from_parts(0, 2), ctx).value + 2 * mp::log(zc);
        r.outputs.emplace_back("phi_plus_2log_1e-" + std::to_string(e), sci(v));
        values.push_back(v);
    }
    BigReal spread = mp::abs(values[0] - values[1]);
    for (std::size_t a = 0; a < values.size(); ++a)
        for (std::size_t b = a + 1; b < values.size(); ++b)
            if (mp::abs(values[a] - values[b]) > spread) spread = mp::abs(values[a] - values[b]);
    auto outs = r.outputs;
    r = finish("pole_coefficient", spread < 1e-3, spread, BigReal(1e-3, 64), ctx);
    r.inputs = {{"tau", "2i"}, {"z_c", "1e-4;1e-6;1e-8"}};
    r.outputs = outs;
    return r;
}

inline CheckReport c11_units(const AcceptanceOptions& o) {
    PrecisionContext ctx(768, o.ctx.guard());
    auto six = unit_check(Tau::i(), unit_preset(6), 8, ctx);
    auto two = unit_check(Tau::i(), unit_preset(2), 8, ctx);
    BigReal limit = mp::ldexp(BigReal(1, 64), -300);
    bool six_ok = six.verdict == UnitVerdict::unit && six.stable && six.residual >= 0 && six.residual < limit;
    bool two_ok = two.polynomial && two.stable && detail::support_divides(*two.constant_abs, 2) &&
                  detail::support_divides(two.polynomial->leading(), 2);
    CheckReport r = finish("unit_recognition", six_ok && two_ok, six.residual >= 0 ? six.residual : BigReal(1, 64), limit,
                           ctx);
    r.inputs = {{"tau", "i"}, {"order6_point", "1/6,2/6"}, {"order2_point", "1/2,0"}, {"maxdeg", "8"},
                {"confirm_bits", "1024"}};
    r.outputs = {{"order6_polynomial", six.polynomial ? six.polynomial->to_string() : "none"},
                 {"order6_verdict", to_string(six.verdict)},
                 {"order6_stable", six.stable ? "true" : "false"},
                 {"order2_polynomial", two.polynomial ? two.polynomial->to_string() : "none"},
                 {"order2_verdict", to_string(two.verdict)}};
    return r;
}

inline CheckReport c12_fault(const AcceptanceOptions& o) {
    GreenOptions fault;
    fault.delta_log_scale = make_scalar<BigReal>(1, o.ctx);  // Delta -> e * Delta
    std::vector<BigReal> residuals;
    std::vector<std::int64_t> degrees;
    CheckReport sweep = distribution_sweep(o, fault, &residuals, &degrees);
    bool all_broken = true;
    MaxTracker worst;
    BigReal model_gap(0, 64);
    for (std::size_t k = 0; k < residuals.size(); ++k) {
        if (residuals[k] <= half_precision_tolerance(o.ctx)) all_broken = false;
        worst.add(residuals[k]);
        // each of the n^2 - 1 surplus terms is shifted by -log(e)/6
        BigReal predicted = make_scalar<BigReal>(degrees[k] * degrees[k] - 1, o.ctx) / 6;
        BigReal gap = mp::abs(residuals[k] - predicted);
        if (gap > model_gap) model_gap = gap;
    }
    bool ok = all_broken && worst.worst >= 1 && !sweep.passed;
    CheckReport r = finish("fault_injection", ok, worst.worst, BigReal(1, 64), o.ctx);
    r.inputs = {{"delta_factor", "e"}, {"n", "2,3,4,5"}, {"taus", "i;2i"}};
    r.outputs = {{"all_cases_fail", all_broken ? "true" : "false"},
                 {"max_residual", sci(worst.worst)},
                 {"max_gap_to_(n^2-1)/6", sci(model_gap)}};
    return r;
}

}  // namespace acceptance_detail

struct CriterionSpec {
    int id;
    const char* title;
    double budget_seconds;
    CheckReport (*run)(const AcceptanceOptions&);
};

inline const std::vector<CriterionSpec>& criteria() {
    using namespace acceptance_detail;
    static const std::vector<CriterionSpec> list{
        {1, "N_2 = 24, N_4 = 240, N_6 = 504", 1, c1_n2g},
        {2, "denominator identity for even c <= 60", 5, c2_eq33},
        {3, "order bound soundness and tightness", 60, c3_lemma45},
        {4, "refined bound divides coarse bound", 1, c4_divides},
        {5, "cross-path agreement", 30, c5_paths},
        {6, "distribution relation", 60, c6_distribution},
        {7, "torsion sum equals -2 log n", 0, c7_torsion_sum},
        {8, "evenness, periodicity, SL2(Z) invariance", 0, c8_invariance},
        {9, "vanishing torus mean", 120, c9_integral},
        {10, "pole coefficient -2", 0, c10_pole},
        {11, "unit recognition", 120, c11_units},
        {12, "fault injection breaks the distribution relation", 0, c12_fault},
    };
    return list;
}

inline CriterionResult run_criterion(const CriterionSpec& spec, const AcceptanceOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult out;
    out.id = spec.id;
    out.title = spec.title;
    out.budget_seconds = spec.budget_seconds;
    try {
        out.report = spec.run(opts);
    } catch (const std::exception& e) {
        out.report.name = "error";
        out.report.passed = false;
        out.report.outputs = {{"error", e.what()}};
        out.report.bits = opts.ctx.bits();
    }
    out.report.inputs.insert(out.report.inputs.begin(), {"criterion", std::to_string(spec.id)});
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

inline std::string serialize(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    for (const auto& r : results) write_ndjson(os, to_report(r.report, "selftest"));
    return os.str();
}

/**
 * Runs criteria 1-12, then criterion 13: a second full run with the same seed
 * and precision whose serialized reports must match the first byte for byte.
 * `progress`, if set, sees each result as it completes.
 */
inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                                   const std::function<void(const CriterionResult&)>& progress = {}) {
    std::vector<CriterionResult> results;
    for (const auto& spec : criteria()) {
        results.push_back(run_criterion(spec, opts));
        if (progress) progress(results.back());
    }

    auto t0 = std::chrono::steady_clock::now();
    std::vector<CriterionResult> again;
    for (const auto& spec : criteria()) again.push_back(run_criterion(spec, opts));
    std::string first = serialize(results);
    std::string second = serialize(again);
    CriterionResult repro;
    repro.id = 13;
    repro.title = "bit-reproducible reports";
    repro.report.name = "reproducibility";
    repro.report.passed = first == second;
    repro.report.residual = BigReal(first == second ? 0 : 1, 64);
    repro.report.tolerance = BigReal(0, 64);
    repro.report.bits = opts.ctx.bits();
    repro.report.inputs = {{"criterion", "13"}, {"seed", std::to_string(opts.seed)}};
    repro.report.outputs = {{"bytes", std::to_string(first.size())},
                            {"identical", first == second ? "true" : "false"}};
    repro.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(repro);
    if (progress) progress(results.back());
    return results;
}

}  // namespace ellgreen
