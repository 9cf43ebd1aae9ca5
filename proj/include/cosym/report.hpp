#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cosym/tensor.hpp"

namespace cosym {

// One verified identity. residual is normalized:
// max|lhs - rhs| / max(1, max|lhs|, max|rhs|).
struct IdentityRecord {
    std::string name;
    std::string formula;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool interpreted = false; // reported but excluded from overall pass
    std::string note;
};

struct IdentityReport {
    std::string suite;
    std::string manifold;
    std::string deformation;
    std::string generator;
    std::uint64_t seed = 0;
    int points = 0;
    std::vector<IdentityRecord> records;
    double wall_ms = 0.0;

    bool overall_pass() const;
    std::string to_json_string(bool include_wall_time = true) const;
    std::string to_text() const;
};

// Tracks the worst normalized residual of one identity across sample points.
class ResidualTracker {
public:
    ResidualTracker(std::string name, std::string formula, double tolerance,
                    bool interpreted = false);

    void update(const Tensor& lhs, const Tensor& rhs);
    void update(double lhs, double rhs);
    void update_raw(double raw_residual, double scale);
    void note(std::string text);

    double worst() const { return record_.residual; }
    IdentityRecord finish() const;

private:
    IdentityRecord record_;
};

// Recomputes pass flags with per-record tolerance replacements.
// Unknown record names raise LookupError.
void apply_tolerance_overrides(IdentityReport& report,
                               const std::map<std::string, double>& overrides);

// Folds new records into an accumulating list by name, keeping the worst
// residual per identity and recomputing the pass flag.
void merge_worst(std::vector<IdentityRecord>& into, const std::vector<IdentityRecord>& add);

// Shortest round-trip decimal rendering.
std::string short_double(double v);

} // namespace cosym
