#include "ellgreen/acceptance.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    ellgreen::AcceptanceOptions opts;
    if (argc > 1) opts.seed = std::strtoull(argv[1], nullptr, 10);
    std::cout << "acceptance seed=" << opts.seed << " bits=" << opts.ctx.bits() << '\n';
    int failures = 0;
    ellgreen::run_acceptance(opts, [&](const ellgreen::CriterionResult& r) {
        bool ok = r.report.passed && r.within_budget();
        if (!ok) ++failures;
        char line[200];
        std::snprintf(line, sizeof line, "[%s] %2d  %-52s %8.2fs  residual=%s", ok ? "PASS" : "FAIL", r.id,
                      r.title.c_str(), r.seconds, r.report.residual.to_string(6).c_str());
        std::cout << line;
        if (!r.within_budget()) std::cout << "  over budget (" << r.budget_seconds << "s)";
        std::cout << '\n' << std::flush;
    });
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
