#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cosym/field.hpp"
#include "cosym/report.hpp"

namespace cosym {

struct RunConfig {
    std::string suite;
    std::string manifold;
    std::string deformation = "zero";
    int points = 50;
    std::uint64_t seed = 42;
    std::map<std::string, double> tolerance_overrides;
    int oracle_m = 3;      // theorem-oracle only
    int oracle_trials = 100;
};

std::vector<std::string> suite_ids();

// Deterministic for a fixed config. Unknown ids and incompatible
// suite/manifold pairs raise UsageError or LookupError; numeric failures are
// reported in the records, never thrown.
IdentityReport run_suite(const RunConfig& cfg);

// Component printout of one tensor at one chart point.
std::string tensor_dump(const std::string& manifold, const std::string& deformation,
                        const std::string& tensor, const ChartPoint& point);

std::vector<std::string> dump_tensor_ids();

std::string catalog_listing();

} // namespace cosym
