#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cosym/report.hpp"
#include "cosym/suites.hpp"

using namespace cosym;

namespace {
constexpr auto U = Variance::Upper;
constexpr auto L = Variance::Lower;
} // namespace

TEST_CASE("residual tracker normalizes against the larger side") {
    ResidualTracker t("demo", "lhs = rhs", 1e-8);
    Tensor a(2, {L});
    Tensor b(2, {L});
    a(0) = 100.0;
    b(0) = 100.0 + 1e-7;
    t.update(a, b);
    // Raw gap 1e-7 against scale 100 -> 1e-9.
    CHECK(t.worst() == doctest::Approx(1e-9).epsilon(1e-6));
    IdentityRecord r = t.finish();
    CHECK(r.pass);

    ResidualTracker small("demo2", "lhs = rhs", 1e-8);
    Tensor c(2, {L});
    Tensor d(2, {L});
    c(0) = 1e-3;
    d(0) = 1e-3 + 1e-7;
    small.update(c, d);
    // Scale below 1 never inflates the residual.
    CHECK(small.worst() == doctest::Approx(1e-7).epsilon(1e-6));
    CHECK_FALSE(small.finish().pass);

    ResidualTracker raw("demo3", "lhs = rhs", 1e-8);
    raw.update_raw(5e-7, 1000.0);
    CHECK(raw.worst() == doctest::Approx(5e-10).epsilon(1e-6));
}

TEST_CASE("short doubles survive a parse round trip") {
    for (double v : {0.0, 1.0, -2.5, 1e-300, 3.141592653589793, 6.62607015e-34, -1.0 / 3.0}) {
        std::string s = short_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("merge keeps the worst residual per identity name") {
    std::vector<IdentityRecord> into;
    IdentityRecord a{"x", "f", 1e-10, 1e-8, true, false, ""};
    IdentityRecord b{"y", "g", 2e-9, 1e-8, true, false, ""};
    merge_worst(into, {a, b});
    REQUIRE(into.size() == 2);

    IdentityRecord a2 = a;
    a2.residual = 3e-8; // worse, beyond tolerance
    merge_worst(into, {a2});
    REQUIRE(into.size() == 2);
    CHECK(into[0].residual == 3e-8);
    CHECK_FALSE(into[0].pass);

    IdentityRecord a3 = a; // better again; must not overwrite the worst
    merge_worst(into, {a3});
    CHECK(into[0].residual == 3e-8);
}

TEST_CASE("tolerance overrides recompute the verdict") {
    RunConfig cfg;
    cfg.suite = "structure";
    cfg.manifold = "flat-cosym-m1";
    cfg.points = 5;
    IdentityReport rep = run_suite(cfg);
    CHECK(rep.overall_pass());

    // Impossible tolerance flips one record.
    cfg.tolerance_overrides["phi-square"] = -1.0;
    IdentityReport strict = run_suite(cfg);
    CHECK_FALSE(strict.overall_pass());

    cfg.tolerance_overrides.clear();
    cfg.tolerance_overrides["no-such-record"] = 1.0;
    CHECK_THROWS_AS(run_suite(cfg), LookupError);
}

TEST_CASE("suite registry and incompatible pairs") {
    std::vector<std::string> ids = suite_ids();
    CHECK(ids.size() == 9);

    RunConfig cfg;
    cfg.suite = "no-such-suite";
    cfg.manifold = "flat-cosym-m1";
    CHECK_THROWS_AS(run_suite(cfg), UsageError);

    cfg.suite = "structure";
    cfg.manifold = "no-such-chart";
    CHECK_THROWS_AS(run_suite(cfg), LookupError);

    // Metric-only entries cannot run structure suites.
    cfg.suite = "structure";
    cfg.manifold = "conf-flat-7-gauss";
    CHECK_THROWS_AS(run_suite(cfg), UsageError);

    // Non-cosymplectic structures cannot host the adapted connection.
    cfg.suite = "cosym-compat";
    cfg.manifold = "twisted-nonnormal-m1";
    cfg.deformation = "gaussian-horizontal";
    CHECK_THROWS_AS(run_suite(cfg), UsageError);

    cfg.suite = "cosym-compat";
    cfg.manifold = "flat-cosym-m1";
    cfg.deformation = "no-such-deformation";
    CHECK_THROWS_AS(run_suite(cfg), LookupError);

    cfg.suite = "structure";
    cfg.manifold = "flat-cosym-m1";
    cfg.deformation = "zero";
    cfg.points = 0;
    CHECK_THROWS_AS(run_suite(cfg), UsageError);
}

TEST_CASE("reports serialize deterministically") {
    RunConfig cfg;
    cfg.suite = "cosym-identities";
    cfg.manifold = "flat-cosym-m3";
    cfg.deformation = "gaussian-horizontal";
    cfg.points = 10;
    cfg.seed = 2024;
    IdentityReport a = run_suite(cfg);
    IdentityReport b = run_suite(cfg);
    CHECK(a.to_json_string(false) == b.to_json_string(false));
    CHECK(a.to_text() == b.to_text());

    // The JSON carries the run description and every record field.
    std::string j = a.to_json_string(false);
    for (const char* key :
         {"\"suite\"", "\"manifold\"", "\"deformation\"", "\"generator\"", "\"seed\"",
          "\"points\"", "\"overall_pass\"", "\"records\"", "\"name\"", "\"formula\"",
          "\"residual\"", "\"tolerance\"", "\"pass\""}) {
        INFO(key);
        CHECK(j.find(key) != std::string::npos);
    }
    CHECK(j.find("\"wall_ms\"") == std::string::npos);
    CHECK(a.to_json_string(true).find("\"wall_ms\"") != std::string::npos);
    CHECK(j.find("splitmix64") != std::string::npos);

    // A different seed still passes but samples different points.
    cfg.seed = 2025;
    IdentityReport c = run_suite(cfg);
    CHECK(c.overall_pass());
    CHECK(c.to_json_string(false) != a.to_json_string(false));
}

TEST_CASE("text rendering carries one row per record and a verdict") {
    RunConfig cfg;
    cfg.suite = "cosym";
    cfg.manifold = "flat-cosym-m1";
    cfg.points = 4;
    IdentityReport rep = run_suite(cfg);
    std::string text = rep.to_text();
    CHECK(text.find("overall: PASS") != std::string::npos);
    size_t rows = 0;
    for (size_t pos = 0; (pos = text.find("[PASS]", pos)) != std::string::npos; ++pos) ++rows;
    CHECK(rows == rep.records.size());
}

TEST_CASE("tensor dumps print nonzero components") {
    std::string out = tensor_dump("flat-cosym-m1", "zero", "gamma-lc", ChartPoint{0.1, 0.2, 0.3});
    CHECK(out.find("all components zero") != std::string::npos);

    std::string ricci = tensor_dump("s2-stereo-r1", "zero", "ricci", ChartPoint{0.3, -0.2});
    CHECK(ricci.find("K[0,0]") != std::string::npos);

    std::string scalar = tensor_dump("s2-stereo-r2", "zero", "scalar", ChartPoint{0.0, 0.0});
    CHECK(scalar.find("K = 0.5") != std::string::npos);

    CHECK_THROWS_AS(tensor_dump("flat-cosym-m1", "zero", "no-such-tensor", ChartPoint{0, 0, 0}),
                    UsageError);
    CHECK_THROWS_AS(tensor_dump("flat-cosym-m1", "zero", "ricci", ChartPoint{0.0}), UsageError);

    // Change tensors need a structure entry.
    CHECK_THROWS_AS(
        tensor_dump("conf-flat-7-gauss", "gaussian-horizontal", "p_ji",
                    ChartPoint{0, 0, 0, 0, 0, 0, 0}),
        UsageError);
}

TEST_CASE("catalog listing names every entry") {
    std::string listing = catalog_listing();
    CHECK(listing.find("flat-cosym-m3") != std::string::npos);
    CHECK(listing.find("s2xs2xs2xr-123") != std::string::npos);
    CHECK(listing.find("twisted-nonnormal-m1") != std::string::npos);
    CHECK(listing.find("conf-flat-7-linear") != std::string::npos);
}
