#include "cosym/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "json.hpp"

#include "cosym/sample.hpp"

namespace cosym {

bool IdentityReport::overall_pass() const {
    return std::all_of(records.begin(), records.end(),
                       [](const IdentityRecord& r) { return r.interpreted || r.pass; });
}

std::string short_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string IdentityReport::to_json_string(bool include_wall_time) const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["manifold"] = manifold;
    j["deformation"] = deformation;
    j["generator"] = generator.empty() ? std::string(kGeneratorName) : generator;
    j["seed"] = seed;
    j["points"] = points;
    j["overall_pass"] = overall_pass();
    j["records"] = nlohmann::ordered_json::array();
    for (const IdentityRecord& r : records) {
        nlohmann::ordered_json rec;
        rec["name"] = r.name;
        rec["formula"] = r.formula;
        rec["residual"] = r.residual;
        rec["tolerance"] = r.tolerance;
        rec["pass"] = r.pass;
        rec["interpreted"] = r.interpreted;
        if (!r.note.empty()) rec["note"] = r.note;
        j["records"].push_back(std::move(rec));
    }
    if (include_wall_time) j["wall_ms"] = wall_ms;
    return j.dump(2) + "\n";
}

std::string IdentityReport::to_text() const {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof(line), "suite: %s  manifold: %s  deformation: %s\n", suite.c_str(),
                  manifold.c_str(), deformation.empty() ? "-" : deformation.c_str());
    out += line;
    std::snprintf(line, sizeof(line), "generator: %s  seed: %llu  points: %d\n",
                  generator.empty() ? "splitmix64" : generator.c_str(),
                  static_cast<unsigned long long>(seed), points);
    out += line;
    for (const IdentityRecord& r : records) {
        const char* mark = r.interpreted ? "INFO" : (r.pass ? "PASS" : "FAIL");
        std::snprintf(line, sizeof(line), "  [%s] %-26s residual %11.4e  tol %8.1e  %s\n", mark,
                      r.name.c_str(), r.residual, r.tolerance,
                      r.note.empty() ? "" : r.note.c_str());
        out += line;
    }
    std::snprintf(line, sizeof(line), "overall: %s\n", overall_pass() ? "PASS" : "FAIL");
    out += line;
    return out;
}

ResidualTracker::ResidualTracker(std::string name, std::string formula, double tolerance,
                                 bool interpreted) {
    record_.name = std::move(name);
    record_.formula = std::move(formula);
    record_.tolerance = tolerance;
    record_.interpreted = interpreted;
}

void ResidualTracker::update_raw(double raw_residual, double scale) {
    record_.residual = std::max(record_.residual, raw_residual / std::max(1.0, scale));
}

void ResidualTracker::update(const Tensor& lhs, const Tensor& rhs) {
    update_raw(sub(lhs, rhs).max_abs(), std::max(lhs.max_abs(), rhs.max_abs()));
}

void ResidualTracker::update(double lhs, double rhs) {
    update_raw(std::fabs(lhs - rhs), std::max(std::fabs(lhs), std::fabs(rhs)));
}

void ResidualTracker::note(std::string text) { record_.note = std::move(text); }

IdentityRecord ResidualTracker::finish() const {
    IdentityRecord r = record_;
    r.pass = r.residual <= r.tolerance;
    return r;
}

void apply_tolerance_overrides(IdentityReport& report,
                               const std::map<std::string, double>& overrides) {
    for (const auto& [name, tol] : overrides) {
        bool found = false;
        for (IdentityRecord& r : report.records) {
            if (r.name == name) {
                r.tolerance = tol;
                r.pass = r.residual <= tol;
                found = true;
            }
        }
        if (!found) throw LookupError("no identity named '" + name + "' in this suite");
    }
}

void merge_worst(std::vector<IdentityRecord>& into, const std::vector<IdentityRecord>& add) {
    for (const IdentityRecord& r : add) {
        auto it = std::find_if(into.begin(), into.end(),
                               [&](const IdentityRecord& e) { return e.name == r.name; });
        if (it == into.end()) {
            into.push_back(r);
            continue;
        }
        if (r.residual > it->residual) {
            it->residual = r.residual;
            it->pass = it->residual <= it->tolerance;
        }
    }
}

} // namespace cosym
