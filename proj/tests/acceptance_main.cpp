// Acceptance gate: one line per criterion, exit 0 only if every line passes.
// Each criterion drives the public suite layer the same way the CLI does.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "cosym/report.hpp"
#include "cosym/suites.hpp"

using namespace cosym;

namespace {

int g_failures = 0;

void line(int criterion, bool ok, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    if (!ok) ++g_failures;
}

IdentityReport run(const std::string& suite, const std::string& manifold,
                   const std::string& deformation = "zero", int points = 50,
                   std::uint64_t seed = 42) {
    RunConfig cfg;
    cfg.suite = suite;
    cfg.manifold = manifold;
    cfg.deformation = deformation;
    cfg.points = points;
    cfg.seed = seed;
    return run_suite(cfg);
}

double worst_residual(const IdentityReport& rep) {
    double w = 0.0;
    for (const IdentityRecord& r : rep.records)
        if (!r.interpreted) w = std::max(w, r.residual);
    return w;
}

bool has_passing_record(const IdentityReport& rep, const std::string& name, double tol) {
    for (const IdentityRecord& r : rep.records)
        if (r.name == name) return r.pass && r.residual <= tol;
    return false;
}

const std::vector<std::string> kStructureCharts = {"flat-cosym-m1", "flat-cosym-m3",
                                                   "s2xs2xs2xr-111"};
const std::vector<std::string> kCosymplecticCharts = {"flat-cosym-m1", "flat-cosym-m3", "s2xr-1",
                                                      "s2xs2xs2xr-111", "s2xs2xs2xr-123"};
const std::vector<std::string> kAdmissibleDeformations = {
    "zero", "linear-horizontal", "quadratic-horizontal", "gaussian-horizontal"};

void criterion_1() {
    bool ok = true;
    double w = 0.0;
    for (const std::string& id : kStructureCharts) {
        IdentityReport rep = run("structure", id);
        ok = ok && rep.overall_pass();
        w = std::max(w, worst_residual(rep));
    }
    line(1, ok && w <= 1e-10,
         "structure identities <= 1e-10 on " + std::to_string(kStructureCharts.size()) +
             " charts at 50 points (worst " + short_double(w) + ")");
}

void criterion_2() {
    bool ok = true;
    double w = 0.0;
    for (const std::string& id : kStructureCharts) {
        IdentityReport nrep = run("normality", id);
        IdentityReport crep = run("cosym", id);
        ok = ok && nrep.overall_pass() && crep.overall_pass();
        w = std::max({w, worst_residual(nrep), worst_residual(crep)});
    }
    IdentityReport twisted = run("normality", "twisted-nonnormal-m1");
    bool counterexample = !twisted.overall_pass() && worst_residual(twisted) > 1e-3;
    line(2, ok && w <= 1e-9 && counterexample,
         "normality and parallel-structure residuals <= 1e-9 (worst " + short_double(w) +
             "); twisted counterexample fails above 1e-3");
}

void criterion_3() {
    IdentityReport flat = run("conformal-baseline", "conf-flat-7-gauss");
    bool ok = flat.overall_pass() && has_passing_record(flat, "rescaled-metricity", 1e-10) &&
              has_passing_record(flat, "weyl-flat", 1e-8);
    for (const char* id : {"s2-stereo-r1", "s2-stereo-r2"}) {
        IdentityReport sphere = run("conformal-baseline", id);
        ok = ok && sphere.overall_pass() && has_passing_record(sphere, "scalar-closed-form", 1e-9);
    }
    line(3, ok,
         "rescaled-metric derivative <= 1e-10 and Weyl <= 1e-8 on the conformally flat chart; "
         "sphere scalar curvature matches 2/r^2 to 1e-9");
}

void criterion_4() {
    bool ok = true;
    double w = 0.0;
    int combos = 0;
    for (const std::string& id : kCosymplecticCharts)
        for (const std::string& dep : kAdmissibleDeformations) {
            IdentityReport rep = run("cosym-compat", id, dep);
            ok = ok && rep.overall_pass() && has_passing_record(rep, "torsion", 1e-12);
            w = std::max(w, worst_residual(rep));
            ++combos;
        }
    line(4, ok,
         "adapted connection laws hold on " + std::to_string(combos) +
             " chart/exponent combinations (torsion <= 1e-12, rest <= 1e-9, worst " +
             short_double(w) + ")");
}

void criterion_5() {
    bool ok = true;
    double w = 0.0;
    for (const std::string& id : kCosymplecticCharts)
        for (const std::string& dep : kAdmissibleDeformations) {
            IdentityReport rep = run("cosym-identities", id, dep);
            ok = ok && rep.overall_pass();
            w = std::max(w, worst_residual(rep));
        }
    line(5, ok && w <= 1e-8,
         "change-tensor identity chain <= 1e-8 on all chart/exponent combinations (worst " +
             short_double(w) + ")");
}

void criterion_6() {
    bool ok = true;
    double w = 0.0;
    for (const char* id : {"flat-cosym-m3", "s2xs2xs2xr-111"}) {
        IdentityReport rep = run("curvature-crosscheck", id, "gaussian-horizontal");
        ok = ok && rep.overall_pass() && has_passing_record(rep, "curvature-two-routes", 1e-7);
        w = std::max(w, worst_residual(rep));

        IdentityReport zero = run("curvature-crosscheck", id, "zero");
        ok = ok && zero.overall_pass() &&
             has_passing_record(zero, "reduces-to-base-connection", 1e-12) &&
             has_passing_record(zero, "reduces-to-base-curvature", 1e-12);
    }
    line(6, ok,
         "direct curvature matches the closed form <= 1e-7 (worst " + short_double(w) +
             "); zero exponent reduces to the base connection <= 1e-12");
}

void criterion_7() {
    IdentityReport rep = run("bochner-identities", "s2xs2xs2xr-111");
    bool interpreted_present = false;
    for (const IdentityRecord& r : rep.records) interpreted_present |= r.interpreted;
    line(7, rep.overall_pass() && worst_residual(rep) <= 1e-8 && interpreted_present,
         "Bochner-type tensor identities <= 1e-8 on the curved product chart (worst " +
             short_double(worst_residual(rep)) +
             "); the ambiguous trace display is reported as informational");
}

void criterion_8() {
    bool ok = true;
    for (int m : {3, 4}) {
        RunConfig cfg;
        cfg.suite = "theorem-oracle";
        cfg.oracle_m = m;
        cfg.oracle_trials = 100;
        cfg.seed = 42;
        IdentityReport rep = run_suite(cfg);
        ok = ok && rep.overall_pass() && has_passing_record(rep, "bochner-vanishes", 1e-10);
    }
    line(8, ok,
         "vanishing-curvature oracle passes 100 trials at m = 3 and m = 4 "
         "(symmetries <= 1e-12, contractions <= 1e-10, max|B| <= 1e-10 max|K|)");
}

void criterion_9() {
    RunConfig cfg;
    cfg.suite = "cosym-identities";
    cfg.manifold = "s2xs2xs2xr-123";
    cfg.deformation = "gaussian-horizontal";
    cfg.points = 25;
    cfg.seed = 7;
    std::string a = run_suite(cfg).to_json_string(false);
    std::string b = run_suite(cfg).to_json_string(false);

    RunConfig ocfg;
    ocfg.suite = "theorem-oracle";
    ocfg.oracle_m = 3;
    ocfg.oracle_trials = 20;
    ocfg.seed = 11;
    std::string oa = run_suite(ocfg).to_json_string(false);
    std::string ob = run_suite(ocfg).to_json_string(false);

    line(9, a == b && oa == ob,
         "repeated runs with one seed serialize byte-identically (wall time excluded)");
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    std::printf("acceptance: %s\n", g_failures == 0 ? "PASS" : "FAIL");
    return g_failures == 0 ? 0 : 1;
}
