#include "cosym/contact.hpp"

#include <cmath>

namespace cosym {

namespace {
constexpr auto U = Variance::Upper;
constexpr auto L = Variance::Lower;
} // namespace

AlmostContactMetricStructure make_structure(ChartField phi, ChartField xi, ChartField eta,
                                            ChartField metric) {
    const int n = metric.dim();
    if (n % 2 == 0) throw StructureError("almost contact structure needs odd chart dimension");
    if (phi.dim() != n || xi.dim() != n || eta.dim() != n)
        throw ShapeError("structure fields disagree on chart dimension");
    if (phi.signature() != Signature{U, L})
        throw VarianceError("phi must have slots (upper, lower)");
    if (xi.signature() != Signature{U}) throw VarianceError("xi must be a vector field");
    if (eta.signature() != Signature{L}) throw VarianceError("eta must be a 1-form field");
    if (metric.signature() != Signature{L, L})
        throw VarianceError("metric must have two lower slots");
    AlmostContactMetricStructure s;
    s.m = (n - 1) / 2;
    s.phi = std::move(phi);
    s.xi = std::move(xi);
    s.eta = std::move(eta);
    s.metric = std::move(metric);
    return s;
}

ChartField fundamental_form_field(const AlmostContactMetricStructure& s) {
    const int n = s.dim();
    ChartField::Rule phir = s.phi.rule();
    ChartField::Rule gr = s.metric.rule();
    return ChartField(n, {L, L}, [phir, gr, n](std::span<const Jet> x) {
        std::vector<Jet> ph = phir(x);
        std::vector<Jet> g = gr(x);
        std::vector<Jet> out;
        out.reserve(static_cast<std::size_t>(n) * n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                Jet v = Jet::constant_like(x[0], 0.0);
                for (int t = 0; t < n; ++t)
                    v = v + ph[static_cast<std::size_t>(t) * n + j] *
                                g[static_cast<std::size_t>(t) * n + i];
                out.push_back(v);
            }
        return out;
    });
}

std::vector<IdentityRecord> structure_identities(const AlmostContactMetricStructure& s,
                                                 std::span<const ChartPoint> points) {
    const int n = s.dim();
    const double tol = 1e-10;
    ResidualTracker phi_square("phi-square", "phi_j^t phi_t^h = -delta_j^h + eta_j xi^h", tol);
    ResidualTracker phi_xi("phi-xi", "phi_i^h xi^i = 0", tol);
    ResidualTracker eta_phi("eta-phi", "eta_t phi_j^t = 0", tol);
    ResidualTracker eta_xi("eta-xi", "eta_i xi^i = 1", tol);
    ResidualTracker phi_metric("phi-metric", "g_ts phi_j^t phi_i^s = g_ji - eta_j eta_i", tol);
    ResidualTracker eta_flat("eta-flat", "eta_i = g_ih xi^h", tol);
    ResidualTracker xi_unit("xi-unit", "g_kh xi^k xi^h = 1", tol);
    ResidualTracker eta_sharp("eta-sharp", "g^{ih} eta_i = xi^h", tol);
    ResidualTracker form_skew("form-skew", "phi_ji = -phi_ij for phi_ji = phi_j^t g_ti", tol);
    ResidualTracker phi_trace("phi-trace", "phi_t^t = 0", tol);
    ResidualTracker phi_square_trace("phi-square-trace", "phi_t^s phi_s^t = -2m", tol);

    for (const ChartPoint& x : points) {
        const Tensor ph = s.phi.eval(x);
        const Tensor xiv = s.xi.eval(x);
        const Tensor et = s.eta.eval(x);
        const Tensor g = s.metric.eval(x);
        MetricPair mp(g);

        Tensor lhs(n, {U, L});
        Tensor rhs(n, {U, L});
        for (int h = 0; h < n; ++h)
            for (int j = 0; j < n; ++j) {
                double v = 0.0;
                for (int t = 0; t < n; ++t) v += ph(h, t) * ph(t, j);
                lhs(h, j) = v;
                rhs(h, j) = -(h == j ? 1.0 : 0.0) + et(j) * xiv(h);
            }
        phi_square.update(lhs, rhs);

        Tensor pxi(n, {U});
        Tensor ep(n, {L});
        for (int h = 0; h < n; ++h) {
            double a = 0.0, b = 0.0;
            for (int t = 0; t < n; ++t) {
                a += ph(h, t) * xiv(t);
                b += et(t) * ph(t, h);
            }
            pxi(h) = a;
            ep(h) = b;
        }
        phi_xi.update(pxi, Tensor(n, {U}));
        eta_phi.update(ep, Tensor(n, {L}));

        double exi = 0.0;
        for (int t = 0; t < n; ++t) exi += et(t) * xiv(t);
        eta_xi.update(exi, 1.0);

        Tensor gphi(n, {L, L});
        Tensor gminus(n, {L, L});
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double v = 0.0;
                for (int t = 0; t < n; ++t)
                    for (int sgl = 0; sgl < n; ++sgl) v += g(t, sgl) * ph(t, j) * ph(sgl, i);
                gphi(j, i) = v;
                gminus(j, i) = g(j, i) - et(j) * et(i);
            }
        phi_metric.update(gphi, gminus);

        Tensor flat(n, {L});
        for (int i = 0; i < n; ++i) {
            double v = 0.0;
            for (int h = 0; h < n; ++h) v += g(i, h) * xiv(h);
            flat(i) = v;
        }
        eta_flat.update(flat, et);

        double xnorm = 0.0;
        for (int k = 0; k < n; ++k)
            for (int h = 0; h < n; ++h) xnorm += g(k, h) * xiv(k) * xiv(h);
        xi_unit.update(xnorm, 1.0);

        Tensor sharp(n, {U});
        for (int h = 0; h < n; ++h) {
            double v = 0.0;
            for (int i = 0; i < n; ++i) v += mp.upper()(i, h) * et(i);
            sharp(h) = v;
        }
        eta_sharp.update(sharp, xiv);

        Tensor F(n, {L, L});
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double v = 0.0;
                for (int t = 0; t < n; ++t) v += ph(t, j) * g(t, i);
                F(j, i) = v;
            }
        form_skew.update_raw(symmetry_defect(F, 0, 1, Parity::Minus), F.max_abs());

        double tr = 0.0, tr2 = 0.0;
        for (int t = 0; t < n; ++t) {
            tr += ph(t, t);
            for (int sgl = 0; sgl < n; ++sgl) tr2 += ph(t, sgl) * ph(sgl, t);
        }
        phi_trace.update(tr, 0.0);
        phi_square_trace.update(tr2, -2.0 * s.m);
    }

    return {phi_square.finish(), phi_xi.finish(),    eta_phi.finish(),
            eta_xi.finish(),     phi_metric.finish(), eta_flat.finish(),
            xi_unit.finish(),    eta_sharp.finish(),  form_skew.finish(),
            phi_trace.finish(),  phi_square_trace.finish()};
}

Tensor nijenhuis(const AlmostContactMetricStructure& s, const ChartPoint& x) {
    const int n = s.dim();
    const Tensor ph = s.phi.eval(x);
    const Tensor dph = s.phi.partial(x); // [t][h][i] = d_t phi_i^h
    Tensor N(n, {U, L, L});
    for (int h = 0; h < n; ++h)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double v = 0.0;
                for (int t = 0; t < n; ++t)
                    v += ph(t, j) * dph(t, h, i) - ph(t, i) * dph(t, h, j) -
                         (dph(j, t, i) - dph(i, t, j)) * ph(h, t);
                N(h, j, i) = v;
            }
    return N;
}

double normality_defect(const AlmostContactMetricStructure& s, const ChartPoint& x) {
    const int n = s.dim();
    const Tensor N = nijenhuis(s, x);
    const Tensor de = s.eta.partial(x); // [j][i] = d_j eta_i
    const Tensor xiv = s.xi.eval(x);
    double worst = 0.0;
    for (int h = 0; h < n; ++h)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                worst = std::max(worst,
                                 std::fabs(N(h, j, i) + (de(j, i) - de(i, j)) * xiv(h)));
    return worst;
}

std::vector<IdentityRecord> normality_identities(const AlmostContactMetricStructure& s,
                                                 std::span<const ChartPoint> points) {
    ResidualTracker norm("normality", "N_ji^h + (d_j eta_i - d_i eta_j) xi^h = 0", 1e-9);
    for (const ChartPoint& x : points) {
        const double raw = normality_defect(s, x);
        norm.update_raw(raw, std::max(1.0, s.phi.partial(x).max_abs()));
    }
    return {norm.finish()};
}

std::vector<IdentityRecord> cosymplectic_identities(const AlmostContactMetricStructure& s,
                                                    std::span<const ChartPoint> points) {
    const int n = s.dim();
    const double tol = 1e-9;
    ResidualTracker dphi("phi-parallel", "nabla_k phi_i^h = 0 (Levi-Civita)", tol);
    ResidualTracker dxi("xi-parallel", "nabla_k xi^h = 0 (Levi-Civita)", tol);
    ResidualTracker deta("eta-closed", "d_j eta_i - d_i eta_j = 0", tol);
    ResidualTracker dform("form-closed", "d_k phi_ji + d_j phi_ik + d_i phi_kj = 0", tol);

    ConnectionField lc = levi_civita(s.metric);
    ChartField form = fundamental_form_field(s);
    for (const ChartPoint& x : points) {
        const Tensor np = covariant_derivative(s.phi, lc, x);
        dphi.update(np, Tensor(n, {L, U, L}));
        const Tensor nx = covariant_derivative(s.xi, lc, x);
        dxi.update(nx, Tensor(n, {L, U}));

        const Tensor de = s.eta.partial(x);
        deta.update_raw(symmetry_defect(de, 0, 1, Parity::Plus), de.max_abs());

        const Tensor dF = form.partial(x); // [k][j][i]
        double worst = 0.0;
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i)
                    worst = std::max(worst,
                                     std::fabs(dF(k, j, i) + dF(j, i, k) + dF(i, k, j)));
        dform.update_raw(worst, dF.max_abs());
    }
    return {dphi.finish(), dxi.finish(), deta.finish(), dform.finish()};
}

} // namespace cosym
