#include "cosym/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "cosym/linalg.hpp"

namespace cosym {

namespace {

constexpr auto U = Variance::Upper;
constexpr auto L = Variance::Lower;

std::size_t idx3(int n, int a, int b, int c) {
    return (static_cast<std::size_t>(a) * n + b) * n + c;
}

void check_metric_field(const ChartField& metric) {
    if (metric.signature() != Signature{L, L})
        throw VarianceError("metric field must have two lower slots");
}

void check_scalar_field(const ChartField& p, int dim) {
    if (p.rank() != 0) throw ShapeError("conformal exponent must be a scalar field");
    if (p.dim() != dim) throw ShapeError("conformal exponent chart dimension mismatch");
}

} // namespace

namespace detail {

MetricJets metric_jets(const ChartField::Rule& metric_rule, std::span<const Jet> x) {
    MetricJets w;
    w.n = static_cast<int>(x.size());
    const int n = w.n;
    w.g = metric_rule(x);
    w.ginv = gauss_jordan_inverse(w.g, n);
    std::vector<Jet> dg; // dg[t][j][i] = d_t g_ji, one order lower
    dg.reserve(static_cast<std::size_t>(n) * n * n);
    for (int t = 0; t < n; ++t)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) dg.push_back(derivative(w.g[idx3(n, 0, j, i)], t));
    w.gamma.reserve(static_cast<std::size_t>(n) * n * n);
    for (int h = 0; h < n; ++h)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                Jet s = Jet::constant_like(dg[0], 0.0);
                for (int t = 0; t < n; ++t)
                    s = s + w.ginv[idx3(n, 0, h, t)] *
                                (dg[idx3(n, j, t, i)] + dg[idx3(n, i, t, j)] -
                                 dg[idx3(n, t, j, i)]);
                w.gamma.push_back(s * 0.5);
            }
    return w;
}

} // namespace detail

ConnectionField levi_civita(const ChartField& metric) {
    check_metric_field(metric);
    const int n = metric.dim();
    ChartField::Rule mrule = metric.rule();
    ChartField gamma(
        n, {U, L, L},
        [mrule](std::span<const Jet> x) { return detail::metric_jets(mrule, x).gamma; });
    return ConnectionField{std::move(gamma), true};
}

Tensor christoffel(const ChartField& metric, const ChartPoint& x) {
    return levi_civita(metric).gamma.eval(x);
}

Tensor curvature_of_connection(const ConnectionField& conn, const ChartPoint& x) {
    const ChartField& gf = conn.gamma;
    if (gf.signature() != Signature{U, L, L})
        throw VarianceError("connection field must have slots (upper, lower, lower)");
    const int n = gf.dim();
    const Tensor G = gf.eval(x);
    const Tensor dG = gf.partial(x); // [t][h][j][i]
    Tensor R(n, {U, L, L, L});
    for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    double v = dG(k, h, j, i) - dG(j, h, k, i);
                    for (int t = 0; t < n; ++t)
                        v += G(h, k, t) * G(t, j, i) - G(h, j, t) * G(t, k, i);
                    R(h, k, j, i) = v;
                }
    return R;
}

Tensor covariant_curvature(const Tensor& mixed, const MetricPair& m) {
    if (mixed.rank() != 4 || mixed.signature() != Signature{U, L, L, L})
        throw VarianceError("mixed curvature must have slots (upper, lower, lower, lower)");
    const int n = mixed.dim();
    Tensor cov(n, {L, L, L, L});
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                for (int h = 0; h < n; ++h) {
                    double v = 0.0;
                    for (int t = 0; t < n; ++t) v += mixed(t, k, j, i) * m.lower()(t, h);
                    cov(k, j, i, h) = v;
                }
    return cov;
}

Tensor ricci_tensor(const Tensor& mixed) {
    if (mixed.rank() != 4 || mixed.signature() != Signature{U, L, L, L})
        throw VarianceError("mixed curvature must have slots (upper, lower, lower, lower)");
    return contract(mixed, 0, 1);
}

double scalar_curvature(const Tensor& ricci, const MetricPair& m) {
    if (ricci.rank() != 2) throw ShapeError("ricci tensor must have rank 2");
    const int n = ricci.dim();
    double s = 0.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) s += m.upper()(j, i) * ricci(j, i);
    return s;
}

CurvatureBundle curvature_bundle(const ChartField& metric, const ChartPoint& x) {
    CurvatureBundle b;
    b.mixed = curvature_of_connection(levi_civita(metric), x);
    MetricPair mp(metric.eval(x));
    b.covariant = covariant_curvature(b.mixed, mp);
    b.ricci = ricci_tensor(b.mixed);
    b.scalar = scalar_curvature(b.ricci, mp);
    return b;
}

Tensor covariant_derivative(const ChartField& t, const ConnectionField& conn,
                            const ChartPoint& x) {
    const int n = t.dim();
    if (conn.gamma.dim() != n) throw ShapeError("connection chart dimension mismatch");
    const Tensor T = t.eval(x);
    const Tensor dT = t.partial(x);
    const Tensor G = conn.gamma.eval(x);

    Signature out_sig;
    out_sig.push_back(L);
    out_sig.insert(out_sig.end(), t.signature().begin(), t.signature().end());
    Tensor r(n, std::move(out_sig));

    const int rank = T.rank();
    std::vector<int> out(static_cast<std::size_t>(rank) + 1, 0);
    std::vector<int> in(static_cast<std::size_t>(rank), 0);
    if (rank == 0) {
        for (int k = 0; k < n; ++k) r.values()[k] = dT.values()[k];
        return r;
    }
    do {
        const int k = out[0];
        double v = dT.at(out);
        for (int s = 0; s < rank; ++s) {
            std::copy(out.begin() + 1, out.end(), in.begin());
            const int c = out[s + 1];
            double corr = 0.0;
            if (t.signature()[s] == U) {
                for (int a = 0; a < n; ++a) {
                    in[s] = a;
                    corr += G(c, k, a) * T.at(in);
                }
            } else {
                for (int a = 0; a < n; ++a) {
                    in[s] = a;
                    corr -= G(a, k, c) * T.at(in);
                }
            }
            v += corr;
        }
        r.at(out) = v;
    } while (detail::next_index(out, n));
    return r;
}

double curvature_symmetry_defect(const Tensor& cov) {
    if (cov.rank() != 4) throw ShapeError("curvature symmetry defect needs rank 4");
    const int n = cov.dim();
    double worst = std::max(symmetry_defect(cov, 0, 1, Parity::Minus),
                            symmetry_defect(cov, 2, 3, Parity::Minus));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                for (int h = 0; h < n; ++h) {
                    worst = std::max(worst, std::fabs(cov(k, j, i, h) - cov(i, h, k, j)));
                    worst = std::max(
                        worst, std::fabs(cov(k, j, i, h) + cov(j, i, k, h) + cov(i, k, j, h)));
                }
    return worst;
}

ConnectionField conformal_connection(const ChartField& metric, const ChartField& p) {
    check_metric_field(metric);
    check_scalar_field(p, metric.dim());
    const int n = metric.dim();
    ChartField::Rule mrule = metric.rule();
    ChartField::Rule prule = p.rule();
    ChartField gamma(
        n, {U, L, L},
        [mrule, prule, n](std::span<const Jet> x) {
            detail::MetricJets w = detail::metric_jets(mrule, x);
            const Jet pj = prule(x)[0];
            std::vector<Jet> dp;
            dp.reserve(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) dp.push_back(derivative(pj, i));
            std::vector<Jet> dpu;
            dpu.reserve(static_cast<std::size_t>(n));
            for (int h = 0; h < n; ++h) {
                Jet s = Jet::constant_like(dp[0], 0.0);
                for (int t = 0; t < n; ++t) s = s + w.ginv[idx3(n, 0, h, t)] * dp[t];
                dpu.push_back(s);
            }
            std::vector<Jet> out = std::move(w.gamma);
            for (int h = 0; h < n; ++h)
                for (int j = 0; j < n; ++j)
                    for (int i = 0; i < n; ++i) {
                        Jet& v = out[idx3(n, h, j, i)];
                        if (h == j) v = v + dp[i];
                        if (h == i) v = v + dp[j];
                        v = v - w.g[idx3(n, 0, j, i)] * dpu[h];
                    }
            return out;
        });
    return ConnectionField{std::move(gamma), true};
}

Tensor conformal_change_form(const ChartField& metric, const ChartField& p, const ChartPoint& x) {
    check_metric_field(metric);
    check_scalar_field(p, metric.dim());
    const int n = metric.dim();
    const Tensor g = metric.eval(x);
    MetricPair mp(g);
    const Tensor G = levi_civita(metric).gamma.eval(x);
    const Tensor dp = p.partial(x);
    const Tensor hp = p.partial2(x);
    Tensor nabla(n, {L, L});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double v = hp(j, i);
            for (int t = 0; t < n; ++t) v -= G(t, j, i) * dp(t);
            nabla(j, i) = v;
        }
    double lambda = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) lambda += mp.upper()(a, b) * dp(a) * dp(b);
    Tensor r(n, {L, L});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            r(j, i) = nabla(j, i) - dp(j) * dp(i) + 0.5 * lambda * g(j, i);
    return r;
}

int conformal_convention_sign(const ChartField& metric, const ChartField& p, const ChartPoint& x,
                              double* residual) {
    const int n = metric.dim();
    const Tensor direct = curvature_of_connection(conformal_connection(metric, p), x);
    const Tensor base = curvature_of_connection(levi_civita(metric), x);
    const Tensor P = conformal_change_form(metric, p, x);
    MetricPair mp(metric.eval(x));
    const Tensor g = mp.lower();
    Tensor pm(n, {L, U});
    for (int k = 0; k < n; ++k)
        for (int h = 0; h < n; ++h) {
            double v = 0.0;
            for (int t = 0; t < n; ++t) v += P(k, t) * mp.upper()(t, h);
            pm(k, h) = v;
        }
    Tensor corr(n, {U, L, L, L});
    for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i)
                    corr(h, k, j, i) = (h == k ? P(j, i) : 0.0) - (h == j ? P(k, i) : 0.0) +
                                       pm(k, h) * g(j, i) - pm(j, h) * g(k, i);
    const double scale = std::max({1.0, direct.max_abs(), base.max_abs()});
    const double plus = sub(direct, add(base, corr)).max_abs() / scale;
    const double minus = sub(direct, sub(base, corr)).max_abs() / scale;
    if (residual) *residual = std::min(plus, minus);
    return plus <= minus ? 1 : -1;
}

Tensor weyl_tensor(const ChartField& metric, const ChartPoint& x) {
    const int n = metric.dim();
    if (n < 4) throw DimensionError("trace-free conformal curvature needs dimension >= 4");
    CurvatureBundle b = curvature_bundle(metric, x);
    MetricPair mp(metric.eval(x));
    const Tensor& g = mp.lower();
    Tensor C(n, {L, L});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            C(j, i) = -b.ricci(j, i) / (n - 2) +
                      b.scalar / (2.0 * (n - 1) * (n - 2)) * g(j, i);
    Tensor cm(n, {L, U});
    for (int k = 0; k < n; ++k)
        for (int h = 0; h < n; ++h) {
            double v = 0.0;
            for (int t = 0; t < n; ++t) v += C(k, t) * mp.upper()(t, h);
            cm(k, h) = v;
        }
    Tensor W(n, {U, L, L, L});
    for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i)
                    W(h, k, j, i) = b.mixed(h, k, j, i) + (h == k ? C(j, i) : 0.0) -
                                    (h == j ? C(k, i) : 0.0) + cm(k, h) * g(j, i) -
                                    cm(j, h) * g(k, i);
    return W;
}

} // namespace cosym
