#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "cosym/catalog.hpp"
#include "cosym/conformal.hpp"

using namespace cosym;

namespace {
constexpr auto U = Variance::Upper;
constexpr auto L = Variance::Lower;
} // namespace

namespace {

std::vector<ChartPoint> entry_points(const CatalogEntry& e, int count, std::uint64_t seed) {
    SampleSpec spec{e.box, count, seed};
    return sample(spec, e.excluded);
}

bool all_pass(const std::vector<IdentityRecord>& recs) {
    return std::all_of(recs.begin(), recs.end(),
                       [](const IdentityRecord& r) { return r.pass || r.interpreted; });
}

const IdentityRecord& find_record(const std::vector<IdentityRecord>& recs,
                                  const std::string& name) {
    for (const IdentityRecord& r : recs)
        if (r.name == name) return r;
    throw LookupError("no record named " + name);
}

// Coefficients assembled term by term from evaluated tensors, with no shared
// code path with the connection rule.
Tensor adapted_gamma_by_hand(const AlmostContactMetricStructure& s, const ChartField& p,
                             const ChartPoint& x) {
    const int n = s.dim();
    Tensor lc = christoffel(s.metric, x);
    MetricPair m(s.metric.eval(x));
    Tensor ph = s.phi.eval(x);
    Tensor eta = s.eta.eval(x);
    Tensor g = m.lower();

    Tensor dp = p.partial(x); // (L) slot, dp(i) = d_i p
    Tensor p_lo(n, {L});
    for (int i = 0; i < n; ++i) p_lo(i) = dp(i);
    Tensor p_up = raise_slot(p_lo, 0, m);
    Tensor q_lo(n, {L});
    for (int i = 0; i < n; ++i) {
        double s_ = 0.0;
        for (int t = 0; t < n; ++t) s_ -= p_lo(t) * ph(t, i);
        q_lo(i) = s_;
    }
    Tensor q_up = raise_slot(q_lo, 0, m);
    Tensor eta_up = raise_slot(eta, 0, m);
    Tensor form(n, {L, L}); // phi_ji = phi_j^t g_ti
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double s_ = 0.0;
            for (int t = 0; t < n; ++t) s_ += ph(t, j) * g(t, i);
            form(j, i) = s_;
        }

    Tensor out(n, {U, L, L});
    for (int h = 0; h < n; ++h)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double v = lc(h, j, i);
                v += ((h == j ? 1.0 : 0.0) - eta(j) * eta_up(h)) * p_lo(i);
                v += ((h == i ? 1.0 : 0.0) - eta(i) * eta_up(h)) * p_lo(j);
                v -= (g(j, i) - eta(j) * eta(i)) * p_up(h);
                v += ph(h, j) * q_lo(i);
                v += ph(h, i) * q_lo(j);
                v -= form(j, i) * q_up(h);
                out(h, j, i) = v;
            }
    return out;
}

} // namespace

TEST_CASE("adapted connection coefficients match a by-hand assembly") {
    for (const char* id : {"flat-cosym-m3", "s2xs2xs2xr-111"}) {
        CatalogEntry e = catalog_entry(id);
        ChartField p = deformation_field(e.dim, "gaussian-horizontal");
        ConnectionField conn = cosymplectic_conformal_connection(*e.structure, p);
        CHECK_FALSE(conn.torsion_free);
        for (const ChartPoint& x : entry_points(e, 4, 3)) {
            Tensor a = conn.gamma.eval(x);
            Tensor b = adapted_gamma_by_hand(*e.structure, p, x);
            CHECK(sub(a, b).max_abs() <= 1e-11);
        }
    }
}

TEST_CASE("derived partner field matches the pointwise contraction") {
    CatalogEntry e = catalog_entry("flat-cosym-m3");
    ChartField p = deformation_field(e.dim, "quadratic-horizontal");
    ChartField qf = derived_q_field(*e.structure, p);
    for (const ChartPoint& x : entry_points(e, 5, 8)) {
        Tensor q = qf.eval(x);
        Tensor dp = p.partial(x);
        Tensor ph = e.structure->phi.eval(x);
        for (int i = 0; i < e.dim; ++i) {
            double expect = 0.0;
            for (int t = 0; t < e.dim; ++t) expect -= dp(t) * ph(t, i);
            CHECK(q(i) == doctest::Approx(expect).epsilon(1e-13));
        }
        // q also carries first derivatives (it came from an order-2 p).
        CHECK(qf.partial(x).rank() == 2);
    }
}

TEST_CASE("defining compatibility laws hold for horizontal exponents") {
    for (const char* dep : {"linear-horizontal", "gaussian-horizontal"}) {
        CatalogEntry e = catalog_entry("flat-cosym-m3");
        ChartField p = deformation_field(e.dim, dep);
        std::vector<ChartPoint> pts = entry_points(e, 8, 10);
        std::vector<IdentityRecord> recs = compatibility_records(*e.structure, p, pts);
        CHECK(all_pass(recs));
        CHECK(find_record(recs, "torsion").residual <= 1e-12);
        CHECK(find_record(recs, "reeb-admissibility").residual <= 1e-10);
    }
}

TEST_CASE("change-tensor identities hold on flat and curved charts") {
    for (const char* id : {"flat-cosym-m3", "s2xs2xs2xr-123"}) {
        CatalogEntry e = catalog_entry(id);
        ChartField p = deformation_field(e.dim, "gaussian-horizontal");
        std::vector<ChartPoint> pts = entry_points(e, 6, 12);
        std::vector<IdentityRecord> recs = change_identity_records(*e.structure, p, pts);
        for (const IdentityRecord& r : recs) {
            INFO(id << " / " << r.name << " residual " << r.residual);
            CHECK(r.pass);
        }
        CHECK(recs.size() >= 15);
    }
}

TEST_CASE("pointwise change data is internally consistent") {
    CatalogEntry e = catalog_entry("flat-cosym-m3");
    ChartField p = deformation_field(e.dim, "gaussian-horizontal");
    ChartPoint x = entry_points(e, 1, 19)[0];
    ConformalChangeData d = conformal_change_data(*e.structure, p, x);

    const int n = e.dim;
    MetricPair m(e.structure->metric.eval(x));
    // lambda = p_t p^t and the two norms agree.
    double lam = 0.0, qq = 0.0;
    for (int i = 0; i < n; ++i) {
        lam += d.p_lo(i) * d.p_up(i);
        qq += d.q_lo(i) * d.q_up(i);
    }
    CHECK(d.lambda == doctest::Approx(lam).epsilon(1e-13));
    CHECK(qq == doctest::Approx(lam).epsilon(1e-12));

    // p2 closes over its pieces: p2_ji = D_j p_i - p_j p_i + q_j q_i
    //                                   + (lambda/2)(g_ji - eta_j eta_i).
    Tensor eta = e.structure->eta.eval(x);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double expect = d.nabla_p(j, i) - d.p_lo(j) * d.p_lo(i) + d.q_lo(j) * d.q_lo(i) +
                            0.5 * d.lambda * (m.lower()(j, i) - eta(j) * eta(i));
            CHECK(d.p2(j, i) == doctest::Approx(expect).epsilon(1e-12));
        }
    // alpha and beta are skew.
    CHECK(symmetry_defect(d.alpha, 0, 1, Parity::Minus) <= 1e-14);
    CHECK(symmetry_defect(d.beta, 0, 1, Parity::Minus) <= 1e-14);
}

TEST_CASE("direct curvature matches the closed form") {
    for (const char* id : {"flat-cosym-m3", "s2xs2xs2xr-111"}) {
        CatalogEntry e = catalog_entry(id);
        ChartField p = deformation_field(e.dim, "gaussian-horizontal");
        std::vector<ChartPoint> pts = entry_points(e, 4, 23);
        std::vector<IdentityRecord> recs =
            curvature_crosscheck_records(*e.structure, p, pts);
        CHECK(all_pass(recs));
        CHECK(find_record(recs, "curvature-two-routes").residual <= 1e-7);
    }
}

TEST_CASE("zero exponent reduces everything to the base connection") {
    CatalogEntry e = catalog_entry("s2xs2xs2xr-111");
    ChartField p = deformation_field(e.dim, "zero");
    std::vector<ChartPoint> pts = entry_points(e, 3, 29);

    ConnectionField conn = cosymplectic_conformal_connection(*e.structure, p);
    for (const ChartPoint& x : pts) {
        Tensor base = christoffel(e.structure->metric, x);
        CHECK(sub(conn.gamma.eval(x), base).max_abs() <= 1e-13);
    }

    std::vector<IdentityRecord> recs = curvature_crosscheck_records(*e.structure, p, pts);
    CHECK(find_record(recs, "reduces-to-base-connection").residual <= 1e-12);
    CHECK(find_record(recs, "reduces-to-base-curvature").residual <= 1e-12);
    CHECK(all_pass(recs));
}

TEST_CASE("exponents with a Reeb derivative are rejected") {
    CatalogEntry e = catalog_entry("flat-cosym-m3");
    ChartField bad = deformation_field(e.dim, "reeb-linear");
    std::vector<ChartPoint> pts = entry_points(e, 4, 31);

    CHECK(admissibility_defect(*e.structure, bad, pts[0]) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(all_pass(admissibility_records(*e.structure, bad, pts)));

    ConnectionField enforcing = cosymplectic_conformal_connection(*e.structure, bad);
    CHECK_THROWS_AS(enforcing.gamma.eval(pts[0]), AdmissibilityError);

    // The record route keeps going and reports the failure instead.
    std::vector<IdentityRecord> recs = compatibility_records(*e.structure, bad, pts);
    const IdentityRecord& adm = find_record(recs, "reeb-admissibility");
    CHECK_FALSE(adm.pass);
    CHECK(adm.residual == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(all_pass(recs));

    // A horizontal exponent on the same chart is admissible everywhere.
    ChartField good = deformation_field(e.dim, "gaussian-horizontal");
    for (const ChartPoint& x : pts)
        CHECK(admissibility_defect(*e.structure, good, x) <= 1e-12);
}
