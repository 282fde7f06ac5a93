#pragma once

#include "ellgreen/numerics.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ellgreen {

/// Outcome of one property check; passed iff residual <= tolerance.
struct CheckReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, std::string>> outputs;
    BigReal residual;
    BigReal tolerance;
    bool passed = false;
    int bits = 0;
};

inline CheckReport make_report(std::string name, BigReal residual, BigReal tolerance, int bits) {
    CheckReport r;
    r.name = std::move(name);
    r.passed = residual <= tolerance;
    r.residual = std::move(residual);
    r.tolerance = std::move(tolerance);
    r.bits = bits;
    return r;
}

}  // namespace ellgreen
