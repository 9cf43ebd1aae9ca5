#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cosym/bochner.hpp"
#include "cosym/catalog.hpp"

using namespace cosym;

namespace {

bool all_pass(const std::vector<IdentityRecord>& recs) {
    return std::all_of(recs.begin(), recs.end(),
                       [](const IdentityRecord& r) { return r.pass || r.interpreted; });
}

} // namespace

TEST_CASE("flat charts carry a vanishing Bochner-type tensor") {
    CatalogEntry e = catalog_entry("flat-cosym-m3");
    ChartPoint x(e.dim, 0.2);
    BochnerInputs in = bochner_inputs(*e.structure, x);
    CHECK(in.curvature.max_abs() <= 1e-12);
    BochnerTensor b = bochner_tensor(in);
    CHECK(b.mixed.max_abs() <= 1e-11);
    CHECK(b.covariant.max_abs() <= 1e-11);
    CHECK(b.trace == doctest::Approx(0.0));
}

TEST_CASE("curvature inputs without Riemann symmetries are refused") {
    CatalogEntry e = catalog_entry("flat-cosym-m3");
    ChartPoint x(e.dim, 0.1);
    BochnerInputs in = bochner_inputs(*e.structure, x);
    in.curvature(0, 1, 2, 3) = 0.5; // breaks pair symmetry and skewness
    CHECK_THROWS_AS(bochner_tensor(in), InvalidInputError);
}

TEST_CASE("identity records pass on a curved product chart") {
    CatalogEntry e = catalog_entry("s2xs2xs2xr-111");
    SampleSpec spec{e.box, 3, 41};
    for (const ChartPoint& x : sample(spec, e.excluded)) {
        BochnerInputs in = bochner_inputs(*e.structure, x);
        std::vector<IdentityRecord> recs = bochner_identity_records(in);
        CHECK(recs.size() >= 10);
        for (const IdentityRecord& r : recs) {
            INFO(r.name << " residual " << r.residual);
            if (r.interpreted)
                CHECK(r.residual >= 0.0); // reported only, not gated
            else
                CHECK(r.pass);
        }
        // The full contraction of the last two slots against the
        // endomorphism is recorded but excluded from the verdict.
        bool saw_interpreted = false;
        for (const IdentityRecord& r : recs) saw_interpreted |= r.interpreted;
        CHECK(saw_interpreted);
    }
}

TEST_CASE("synthetic change tensors satisfy their defining invariants") {
    for (int m : {3, 4, 5}) {
        SyntheticZeroCurvatureData d = synthesize_zero_curvature(m, 1000 + m);
        CHECK(d.n == 2 * m + 1);
        CHECK(d.trace == doctest::Approx(2.0 * m));
        std::vector<IdentityRecord> recs = synthesis_invariant_records(d);
        for (const IdentityRecord& r : recs) {
            INFO("m=" << m << " " << r.name << " residual " << r.residual);
            CHECK(r.pass);
        }
        // Determinism in the seed.
        SyntheticZeroCurvatureData d2 = synthesize_zero_curvature(m, 1000 + m);
        CHECK(sub(d.p2, d2.p2).max_abs() == 0.0);
        SyntheticZeroCurvatureData d3 = synthesize_zero_curvature(m, 999);
        CHECK(sub(d.p2, d3.p2).max_abs() > 0.0);
    }
    CHECK_THROWS_AS(synthesize_zero_curvature(2, 1), DimensionError);
}

TEST_CASE("completed curvature has the Riemann symmetries") {
    SyntheticZeroCurvatureData d = synthesize_zero_curvature(3, 77);
    Tensor k = zero_curvature_completion(d);
    CHECK(k.max_abs() > 0.1); // generic data, genuinely curved
    double scale = std::max(1.0, k.max_abs());
    CHECK(curvature_symmetry_defect(k) / scale <= 1e-12);
}

TEST_CASE("oracle drives the Bochner-type tensor to zero") {
    IdentityReport rep = theorem_oracle(3, 25, 4242);
    CHECK(rep.suite == "theorem-oracle");
    CHECK(rep.points == 25);
    CHECK(rep.overall_pass());
    bool saw_vanish = false;
    for (const IdentityRecord& r : rep.records)
        if (r.name == "bochner-vanishes") {
            saw_vanish = true;
            CHECK(r.pass);
        }
    CHECK(saw_vanish);

    IdentityReport rep4 = theorem_oracle(4, 10, 7);
    CHECK(rep4.overall_pass());

    CHECK_THROWS_AS(theorem_oracle(2, 5, 1), DimensionError);
    CHECK_THROWS_AS(theorem_oracle(3, 0, 1), ParameterError);
}
