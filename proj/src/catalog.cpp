#include "cosym/catalog.hpp"

#include <cmath>
#include <utility>

#include "cosym/errors.hpp"
#include "cosym/report.hpp"

namespace cosym {

namespace {

constexpr auto U = Variance::Upper;
constexpr auto L = Variance::Lower;

Tensor euclidean_metric(int n) {
    Tensor g(n, {L, L});
    for (int i = 0; i < n; ++i) g(i, i) = 1.0;
    return g;
}

// Block rotation sending the a-th pair coordinate to its partner; the last
// coordinate is the Reeb direction. pair_of(i) gives (partner, sign).
Tensor pairing_phi(int n, const std::vector<std::pair<int, int>>& pairs) {
    Tensor phi(n, {U, L});
    for (auto [a, b] : pairs) {
        phi(b, a) = 1.0;
        phi(a, b) = -1.0;
    }
    return phi;
}

AlmostContactMetricStructure constant_structure(int n, Tensor phi, Tensor metric) {
    Tensor xi(n, {U});
    xi(n - 1) = 1.0;
    Tensor eta(n, {L});
    eta(n - 1) = 1.0;
    return make_structure(constant_field(n, std::move(phi)), constant_field(n, std::move(xi)),
                          constant_field(n, std::move(eta)), constant_field(n, std::move(metric)));
}

std::vector<Interval> uniform_box(int n, double lo, double hi) {
    return std::vector<Interval>(static_cast<std::size_t>(n), Interval{lo, hi});
}

std::function<bool(const ChartPoint&)> nothing_excluded() {
    return [](const ChartPoint&) { return false; };
}

// Stereographic charts blow up far from the origin; cut them off there.
std::function<bool(const ChartPoint&)> far_field_excluded(int coords) {
    return [coords](const ChartPoint& x) {
        for (int i = 0; i < coords; ++i)
            if (std::fabs(x[static_cast<std::size_t>(i)]) > 1e6) return true;
        return false;
    };
}

// Round-sphere conformal factor 4 r^4 / (r^2 + |u|^2)^2 for one chart pair.
Jet stereographic_factor(double r, const Jet& u, const Jet& v) {
    const double r2 = r * r;
    const Jet den = u * u + v * v + r2;
    return (4.0 * r2 * r2) / (den * den);
}

ChartField product_metric_field(const std::vector<double>& radii) {
    const int k = static_cast<int>(radii.size());
    const int n = 2 * k + 1;
    return ChartField(n, {L, L}, [radii, k, n](std::span<const Jet> x) {
        std::vector<Jet> out(static_cast<std::size_t>(n) * n, Jet::constant_like(x[0], 0.0));
        for (int f = 0; f < k; ++f) {
            const Jet c = stereographic_factor(radii[static_cast<std::size_t>(f)], x[2 * f],
                                               x[2 * f + 1]);
            out[static_cast<std::size_t>(2 * f) * n + 2 * f] = c;
            out[static_cast<std::size_t>(2 * f + 1) * n + 2 * f + 1] = c;
        }
        out[static_cast<std::size_t>(n - 1) * n + n - 1] = Jet::constant_like(x[0], 1.0);
        return out;
    });
}

ChartField sphere_metric_field(double r) {
    return ChartField(2, {L, L}, [r](std::span<const Jet> x) {
        const Jet c = stereographic_factor(r, x[0], x[1]);
        const Jet zero = Jet::constant_like(x[0], 0.0);
        return std::vector<Jet>{c, zero, zero, c};
    });
}

// Flat structure conjugated pointwise by a rotation of the (x1, x2)-plane by
// the angle x0. Valid almost contact metric data, but phi now depends on the
// chart and the structure fails normality by design.
AlmostContactMetricStructure twisted_structure() {
    const int n = 3;
    auto rot = [](std::span<const Jet> x) {
        std::vector<Jet> R(9, Jet::constant_like(x[0], 0.0));
        const Jet c = cos(x[0]);
        const Jet s = sin(x[0]);
        R[0] = Jet::constant_like(x[0], 1.0);
        R[4] = c;
        R[5] = -s;
        R[7] = s;
        R[8] = c;
        return R;
    };
    ChartField phi(n, {U, L}, [rot, n](std::span<const Jet> x) {
        const std::vector<Jet> R = rot(x);
        const Tensor phi0 = pairing_phi(n, {{0, 1}});
        std::vector<Jet> out(9, Jet::constant_like(x[0], 0.0));
        for (int h = 0; h < n; ++h)
            for (int i = 0; i < n; ++i) {
                Jet s = Jet::constant_like(x[0], 0.0);
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        const double f = phi0(a, b);
                        if (f != 0.0) s = s + R[h * 3 + a] * R[i * 3 + b] * f;
                    }
                out[static_cast<std::size_t>(h) * n + i] = s;
            }
        return out;
    });
    auto axis = [](std::span<const Jet> x) {
        return std::vector<Jet>{Jet::constant_like(x[0], 0.0), -sin(x[0]), cos(x[0])};
    };
    ChartField xi(n, {U}, axis);
    ChartField eta(n, {L}, axis);
    return make_structure(std::move(phi), std::move(xi), std::move(eta),
                          constant_field(n, euclidean_metric(n)));
}

CatalogEntry flat_entry(int m, std::string id) {
    AlmostContactMetricStructure s = flat_cosymplectic(m);
    CatalogEntry e;
    e.id = std::move(id);
    e.summary = "flat structure on R^" + std::to_string(s.dim());
    e.dim = s.dim();
    e.metric = s.metric;
    e.structure = std::move(s);
    e.box = uniform_box(e.dim, -1.0, 1.0);
    e.excluded = nothing_excluded();
    e.cosymplectic = true;
    e.known_scalar = 0.0;
    return e;
}

CatalogEntry product_entry(const std::vector<double>& radii, std::string id) {
    AlmostContactMetricStructure s = kaehler_product_cosymplectic(radii);
    CatalogEntry e;
    e.id = std::move(id);
    e.summary = std::to_string(radii.size()) + " round sphere factor(s) x line";
    e.dim = s.dim();
    e.metric = s.metric;
    e.structure = std::move(s);
    e.box = uniform_box(e.dim, -0.8, 0.8);
    e.box.back() = Interval{-1.0, 1.0};
    e.excluded = far_field_excluded(e.dim - 1);
    e.cosymplectic = true;
    double sc = 0.0;
    for (double r : radii) sc += 2.0 / (r * r);
    e.known_scalar = sc;
    return e;
}

CatalogEntry conformally_flat_entry(int n, const std::string& p_id, std::string id) {
    CatalogEntry e;
    e.id = std::move(id);
    e.summary = "e^{2p} x euclidean on R^" + std::to_string(n) + ", p = " + p_id;
    e.dim = n;
    e.metric = conformally_flat_metric(n, p_id);
    e.conformal_exponent = deformation_field(n, p_id);
    e.box = uniform_box(n, -0.8, 0.8);
    e.excluded = nothing_excluded();
    e.conformally_flat = true;
    return e;
}

CatalogEntry sphere_entry(double r, std::string id) {
    CatalogEntry e;
    e.id = std::move(id);
    e.summary = "round 2-sphere, radius " + short_double(r) + ", stereographic chart";
    e.dim = 2;
    e.metric = sphere_metric_field(r);
    e.box = uniform_box(2, -1.0, 1.0);
    e.excluded = far_field_excluded(2);
    e.known_scalar = 2.0 / (r * r);
    return e;
}

CatalogEntry twisted_entry() {
    CatalogEntry e;
    e.id = "twisted-nonnormal-m1";
    e.summary = "flat metric, rotation-twisted structure (not normal)";
    e.dim = 3;
    AlmostContactMetricStructure s = twisted_structure();
    e.metric = s.metric;
    e.structure = std::move(s);
    e.box = uniform_box(3, -1.0, 1.0);
    e.excluded = nothing_excluded();
    e.known_scalar = 0.0;
    return e;
}

} // namespace

AlmostContactMetricStructure flat_cosymplectic(int m) {
    if (m < 1) throw ParameterError("flat structure needs m >= 1");
    const int n = 2 * m + 1;
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) pairs.emplace_back(a, a + m);
    return constant_structure(n, pairing_phi(n, pairs), euclidean_metric(n));
}

AlmostContactMetricStructure kaehler_product_cosymplectic(const std::vector<double>& radii) {
    if (radii.empty()) throw ParameterError("product needs at least one sphere factor");
    for (double r : radii)
        if (!(r > 0.0)) throw ParameterError("sphere radius must be positive");
    const int k = static_cast<int>(radii.size());
    const int n = 2 * k + 1;
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(k));
    for (int f = 0; f < k; ++f) pairs.emplace_back(2 * f, 2 * f + 1);
    Tensor phi = pairing_phi(n, pairs);
    Tensor xi(n, {U});
    xi(n - 1) = 1.0;
    Tensor eta(n, {L});
    eta(n - 1) = 1.0;
    return make_structure(constant_field(n, std::move(phi)), constant_field(n, std::move(xi)),
                          constant_field(n, std::move(eta)), product_metric_field(radii));
}

ChartField conformally_flat_metric(int n, const std::string& p_id) {
    if (n < 4) throw DimensionError("conformally flat catalog metrics need dimension >= 4");
    ChartField::Rule prule = deformation_field(n, p_id).rule();
    return ChartField(n, {L, L}, [prule, n](std::span<const Jet> x) {
        const Jet w = exp(2.0 * prule(x)[0]);
        std::vector<Jet> out(static_cast<std::size_t>(n) * n, Jet::constant_like(x[0], 0.0));
        for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i) * n + i] = w;
        return out;
    });
}

std::vector<std::string> catalog_ids() {
    return {"flat-cosym-m1",    "flat-cosym-m3",      "s2xr-1",
            "s2xs2xs2xr-111",   "s2xs2xs2xr-123",     "conf-flat-7-gauss",
            "conf-flat-7-linear", "s2-stereo-r1",     "s2-stereo-r2",
            "twisted-nonnormal-m1"};
}

CatalogEntry catalog_entry(const std::string& id) {
    if (id == "flat-cosym-m1") return flat_entry(1, id);
    if (id == "flat-cosym-m3") return flat_entry(3, id);
    if (id == "s2xr-1") return product_entry({1.0}, id);
    if (id == "s2xs2xs2xr-111") return product_entry({1.0, 1.0, 1.0}, id);
    if (id == "s2xs2xs2xr-123") return product_entry({1.0, 2.0, 3.0}, id);
    if (id == "conf-flat-7-gauss") return conformally_flat_entry(7, "gaussian-horizontal", id);
    if (id == "conf-flat-7-linear") return conformally_flat_entry(7, "linear-horizontal", id);
    if (id == "s2-stereo-r1") return sphere_entry(1.0, id);
    if (id == "s2-stereo-r2") return sphere_entry(2.0, id);
    if (id == "twisted-nonnormal-m1") return twisted_entry();
    throw LookupError("unknown manifold id: " + id);
}

std::vector<std::string> deformation_ids() {
    return {"zero", "linear-horizontal", "quadratic-horizontal", "gaussian-horizontal",
            "reeb-linear"};
}

ChartField deformation_field(int dim, const std::string& id) {
    if (dim < 1) throw DimensionError("deformation fields need dimension >= 1");
    if (id == "zero")
        return ChartField(dim, {}, [](std::span<const Jet> x) {
            return std::vector<Jet>{Jet::constant_like(x[0], 0.0)};
        });
    if (id == "linear-horizontal")
        return ChartField(dim, {}, [](std::span<const Jet> x) {
            return std::vector<Jet>{x[0]};
        });
    if (id == "quadratic-horizontal")
        return ChartField(dim, {}, [dim](std::span<const Jet> x) {
            Jet s = Jet::constant_like(x[0], 0.0);
            for (int a = 0; a + 1 < dim; ++a) s = s + x[a] * x[a];
            return std::vector<Jet>{0.25 * s};
        });
    if (id == "gaussian-horizontal")
        return ChartField(dim, {}, [dim](std::span<const Jet> x) {
            Jet s = Jet::constant_like(x[0], 0.0);
            for (int a = 0; a + 1 < dim; ++a) s = s + x[a] * x[a];
            return std::vector<Jet>{exp(-s)};
        });
    if (id == "reeb-linear")
        return ChartField(dim, {}, [dim](std::span<const Jet> x) {
            return std::vector<Jet>{x[dim - 1]};
        });
    throw LookupError("unknown deformation id: " + id);
}

} // namespace cosym
