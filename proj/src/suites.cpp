#include "cosym/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "cosym/bochner.hpp"
#include "cosym/catalog.hpp"
#include "cosym/conformal.hpp"
#include "cosym/errors.hpp"
#include "cosym/geometry.hpp"
#include "cosym/sample.hpp"

namespace cosym {

namespace {

constexpr auto UP = Variance::Upper;
constexpr auto LO = Variance::Lower;

const AlmostContactMetricStructure& need_structure(const CatalogEntry& e,
                                                   const std::string& suite) {
    if (!e.structure)
        throw UsageError("suite '" + suite + "' needs structure fields, but manifold '" + e.id +
                         "' is metric-only");
    return *e.structure;
}

const AlmostContactMetricStructure& need_cosymplectic(const CatalogEntry& e,
                                                      const std::string& suite) {
    const AlmostContactMetricStructure& s = need_structure(e, suite);
    if (!e.cosymplectic)
        throw UsageError("suite '" + suite + "' presupposes a cosymplectic manifold; '" + e.id +
                         "' is not one");
    return s;
}

std::vector<ChartPoint> sample_entry(const CatalogEntry& e, int count, std::uint64_t seed) {
    return sample(SampleSpec{e.box, count, seed}, e.excluded);
}

ChartField euclidean_field(int n) {
    Tensor g(n, {LO, LO});
    for (int i = 0; i < n; ++i) g(i, i) = 1.0;
    return constant_field(n, g);
}

std::vector<IdentityRecord> baseline_records(const CatalogEntry& e,
                                             std::span<const ChartPoint> pts) {
    std::vector<IdentityRecord> out;
    const int n = e.dim;
    if (e.conformal_exponent) {
        const ConnectionField conn = conformal_connection(euclidean_field(n),
                                                          *e.conformal_exponent);
        ResidualTracker metricity("rescaled-metricity", "D_k(e^{2p} g_ji) = 0", 1e-10);
        ResidualTracker flat("weyl-flat", "C^h_kji = 0", 1e-8);
        ResidualTracker trace_free("weyl-trace-free", "C^t_tji = 0", 1e-10);
        for (const ChartPoint& x : pts) {
            metricity.update(covariant_derivative(e.metric, conn, x), Tensor(n, {LO, LO, LO}));
            const Tensor W = weyl_tensor(e.metric, x);
            flat.update(W, Tensor(n, {UP, LO, LO, LO}));
            Tensor tr(n, {LO, LO});
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    double v = 0.0;
                    for (int t = 0; t < n; ++t) v += W(t, t, j, i);
                    tr(j, i) = v;
                }
            trace_free.update_raw(tr.max_abs(), std::max(1.0, W.max_abs()));
        }
        out.push_back(metricity.finish());
        out.push_back(flat.finish());
        out.push_back(trace_free.finish());
    }
    if (e.known_scalar) {
        ResidualTracker sc("scalar-closed-form", "scalar curvature matches the closed form",
                           1e-9);
        for (const ChartPoint& x : pts)
            sc.update(curvature_bundle(e.metric, x).scalar, *e.known_scalar);
        out.push_back(sc.finish());
    }
    if (out.empty())
        throw UsageError("manifold '" + e.id +
                         "' carries neither a conformal exponent nor a closed-form scalar");
    return out;
}

std::string point_to_string(const ChartPoint& x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ", ";
        s += short_double(x[i]);
    }
    return s + ")";
}

void dump_tensor_text(std::ostringstream& os, const std::string& label, const Tensor& t) {
    const int n = t.dim();
    const int r = t.rank();
    std::vector<int> idx(static_cast<std::size_t>(r), 0);
    bool any = false;
    const std::size_t total = t.values().size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        const double v = t.values()[flat];
        if (v != 0.0) {
            any = true;
            os << label << "[";
            for (int k = 0; k < r; ++k) os << (k ? "," : "") << idx[static_cast<std::size_t>(k)];
            os << "] = " << short_double(v) << "\n";
        }
        for (int k = r - 1; k >= 0; --k) {
            if (++idx[static_cast<std::size_t>(k)] < n) break;
            idx[static_cast<std::size_t>(k)] = 0;
        }
    }
    if (!any) os << label << ": all components zero\n";
    else os << "(zero components omitted)\n";
}

} // namespace

std::vector<std::string> suite_ids() {
    return {"structure",        "normality",           "cosym",
            "conformal-baseline", "cosym-compat",      "cosym-identities",
            "curvature-crosscheck", "bochner-identities", "theorem-oracle"};
}

IdentityReport run_suite(const RunConfig& cfg) {
    const auto known = suite_ids();
    if (std::find(known.begin(), known.end(), cfg.suite) == known.end())
        throw UsageError("unknown suite '" + cfg.suite + "'");
    if (cfg.points < 1) throw UsageError("points must be >= 1");

    const auto t0 = std::chrono::steady_clock::now();
    IdentityReport rep;

    if (cfg.suite == "theorem-oracle") {
        rep = theorem_oracle(cfg.oracle_m, cfg.oracle_trials, cfg.seed);
    } else {
        const CatalogEntry e = catalog_entry(cfg.manifold);
        const std::vector<ChartPoint> pts = sample_entry(e, cfg.points, cfg.seed);
        rep.suite = cfg.suite;
        rep.manifold = e.id;
        rep.deformation = "none";
        rep.generator = kGeneratorName;
        rep.seed = cfg.seed;
        rep.points = cfg.points;

        if (cfg.suite == "structure") {
            rep.records = structure_identities(need_structure(e, cfg.suite), pts);
        } else if (cfg.suite == "normality") {
            rep.records = normality_identities(need_structure(e, cfg.suite), pts);
        } else if (cfg.suite == "cosym") {
            rep.records = cosymplectic_identities(need_structure(e, cfg.suite), pts);
        } else if (cfg.suite == "conformal-baseline") {
            rep.records = baseline_records(e, pts);
        } else if (cfg.suite == "bochner-identities") {
            const AlmostContactMetricStructure& s = need_structure(e, cfg.suite);
            for (const ChartPoint& x : pts)
                merge_worst(rep.records, bochner_identity_records(bochner_inputs(s, x)));
        } else {
            const AlmostContactMetricStructure& s = need_cosymplectic(e, cfg.suite);
            const ChartField p = deformation_field(e.dim, cfg.deformation);
            rep.deformation = cfg.deformation;
            if (cfg.suite == "cosym-compat") {
                rep.records = compatibility_records(s, p, pts);
            } else if (cfg.suite == "cosym-identities") {
                rep.records = change_identity_records(s, p, pts);
            } else {
                rep.records = curvature_crosscheck_records(s, p, pts);
            }
        }
    }

    apply_tolerance_overrides(rep, cfg.tolerance_overrides);
    const auto t1 = std::chrono::steady_clock::now();
    rep.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
}

std::vector<std::string> dump_tensor_ids() {
    return {"gamma-lc", "gamma-cc", "riemann", "ricci", "scalar", "weyl", "bochner",
            "p_ji",     "q_ji",     "alpha",   "beta"};
}

std::string tensor_dump(const std::string& manifold, const std::string& deformation,
                        const std::string& tensor, const ChartPoint& point) {
    const auto ids = dump_tensor_ids();
    if (std::find(ids.begin(), ids.end(), tensor) == ids.end())
        throw UsageError("unknown tensor '" + tensor + "'");
    const CatalogEntry e = catalog_entry(manifold);
    if (static_cast<int>(point.size()) != e.dim)
        throw UsageError("point has " + std::to_string(point.size()) + " coordinates; '" +
                         manifold + "' needs " + std::to_string(e.dim));
    if (e.excluded && e.excluded(point))
        throw UsageError("point lies outside the chart of '" + manifold + "'");

    std::ostringstream os;
    os << "manifold " << manifold << ", tensor " << tensor << ", at " << point_to_string(point)
       << "\n";

    auto change = [&]() {
        const AlmostContactMetricStructure& s = need_cosymplectic(e, "dump:" + tensor);
        return conformal_change_data(s, deformation_field(e.dim, deformation), point);
    };

    if (tensor == "gamma-lc") {
        dump_tensor_text(os, "G", christoffel(e.metric, point));
    } else if (tensor == "gamma-cc") {
        const AlmostContactMetricStructure& s = need_cosymplectic(e, "dump:gamma-cc");
        const ChartField p = deformation_field(e.dim, deformation);
        dump_tensor_text(os, "G", cosymplectic_conformal_connection(s, p).gamma.eval(point));
    } else if (tensor == "riemann") {
        dump_tensor_text(os, "R", curvature_bundle(e.metric, point).covariant);
    } else if (tensor == "ricci") {
        dump_tensor_text(os, "K", curvature_bundle(e.metric, point).ricci);
    } else if (tensor == "scalar") {
        os << "K = " << short_double(curvature_bundle(e.metric, point).scalar) << "\n";
    } else if (tensor == "weyl") {
        dump_tensor_text(os, "C", weyl_tensor(e.metric, point));
    } else if (tensor == "bochner") {
        const AlmostContactMetricStructure& s = need_structure(e, "dump:bochner");
        dump_tensor_text(os, "B", bochner_tensor(bochner_inputs(s, point)).mixed);
    } else if (tensor == "p_ji") {
        dump_tensor_text(os, "p", change().p2);
    } else if (tensor == "q_ji") {
        dump_tensor_text(os, "q", change().q2);
    } else if (tensor == "alpha") {
        dump_tensor_text(os, "alpha", change().alpha);
    } else if (tensor == "beta") {
        dump_tensor_text(os, "beta", change().beta);
    }
    return os.str();
}

std::string catalog_listing() {
    std::ostringstream os;
    for (const std::string& id : catalog_ids()) {
        const CatalogEntry e = catalog_entry(id);
        os << id << "  dim " << e.dim;
        if (e.structure)
            os << (e.cosymplectic ? ", cosymplectic" : ", structure (not cosymplectic)");
        else
            os << ", metric-only";
        if (e.conformally_flat) os << ", conformally flat";
        if (e.known_scalar) os << ", scalar " << short_double(*e.known_scalar);
        os << "  -- " << e.summary << "\n";
    }
    return os.str();
}

} // namespace cosym
