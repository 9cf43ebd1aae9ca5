#include "cosym/conformal.hpp"

#include <cmath>
#include <utility>

#include "cosym/errors.hpp"
#include "cosym/linalg.hpp"

namespace cosym {

namespace {

constexpr auto U = Variance::Upper;
constexpr auto L = Variance::Lower;

constexpr double kAdmissibilityTol = 1e-10;

void check_exponent(const AlmostContactMetricStructure& s, const ChartField& p) {
    if (p.rank() != 0) throw ShapeError("exponent must be a scalar field");
    if (p.dim() != s.dim()) throw ShapeError("exponent chart dimension mismatch");
}

std::size_t idx2(int n, int a, int b) { return static_cast<std::size_t>(a) * n + b; }

// Everything the coefficient rule needs at one point, as jets.
struct ChangeJets {
    int n = 0;
    std::vector<Jet> g, ginv, gamma; // from metric_jets
    std::vector<Jet> ph, et, etau;   // phi[h][i], eta, raised eta
    std::vector<Jet> dp, q, pu, qu;  // gradient, partner, raised forms
    std::vector<Jet> form;           // phi_ji = phi_j^t g_ti
};

ChangeJets change_jets(const ChartField::Rule& mrule, const ChartField::Rule& phir,
                       const ChartField::Rule& etar, const ChartField::Rule& prule,
                       std::span<const Jet> x) {
    ChangeJets c;
    detail::MetricJets w = detail::metric_jets(mrule, x);
    c.n = w.n;
    const int n = c.n;
    c.g = std::move(w.g);
    c.ginv = std::move(w.ginv);
    c.gamma = std::move(w.gamma);
    c.ph = phir(x);
    c.et = etar(x);
    const Jet pj = prule(x)[0];
    const Jet zero = Jet::constant_like(derivative(pj, 0), 0.0);
    c.dp.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c.dp.push_back(derivative(pj, i));
    c.etau.assign(static_cast<std::size_t>(n), zero);
    c.pu.assign(static_cast<std::size_t>(n), zero);
    c.qu.assign(static_cast<std::size_t>(n), zero);
    c.q.assign(static_cast<std::size_t>(n), zero);
    for (int h = 0; h < n; ++h)
        for (int t = 0; t < n; ++t) {
            c.etau[h] = c.etau[h] + c.ginv[idx2(n, h, t)] * c.et[t];
            c.pu[h] = c.pu[h] + c.ginv[idx2(n, h, t)] * c.dp[t];
        }
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < n; ++t) c.q[i] = c.q[i] - c.dp[t] * c.ph[idx2(n, t, i)];
    for (int h = 0; h < n; ++h)
        for (int t = 0; t < n; ++t) c.qu[h] = c.qu[h] + c.ginv[idx2(n, h, t)] * c.q[t];
    c.form.assign(static_cast<std::size_t>(n) * n, zero);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            for (int t = 0; t < n; ++t)
                c.form[idx2(n, j, i)] = c.form[idx2(n, j, i)] + c.ph[idx2(n, t, j)] * c.g[idx2(n, t, i)];
    return c;
}

Tensor zeros_like(int n, Signature sig) { return Tensor(n, std::move(sig)); }

} // namespace

double admissibility_defect(const AlmostContactMetricStructure& s, const ChartField& p,
                            const ChartPoint& x) {
    check_exponent(s, p);
    const int n = s.dim();
    const Tensor xiv = s.xi.eval(x);
    const Tensor dp = p.partial(x);
    double a = 0.0;
    for (int t = 0; t < n; ++t) a += xiv(t) * dp(t);
    return std::fabs(a);
}

std::vector<IdentityRecord> admissibility_records(const AlmostContactMetricStructure& s,
                                                  const ChartField& p,
                                                  std::span<const ChartPoint> points) {
    ResidualTracker t("reeb-admissibility", "xi^t d_t p = 0", kAdmissibilityTol);
    for (const ChartPoint& x : points) t.update_raw(admissibility_defect(s, p, x), 1.0);
    return {t.finish()};
}

ChartField derived_q_field(const AlmostContactMetricStructure& s, const ChartField& p) {
    check_exponent(s, p);
    const int n = s.dim();
    ChartField::Rule phir = s.phi.rule();
    ChartField::Rule prule = p.rule();
    return ChartField(n, {L}, [phir, prule, n](std::span<const Jet> x) {
        const std::vector<Jet> ph = phir(x);
        const Jet pj = prule(x)[0];
        std::vector<Jet> out(static_cast<std::size_t>(n),
                             Jet::constant_like(derivative(pj, 0), 0.0));
        for (int i = 0; i < n; ++i)
            for (int t = 0; t < n; ++t)
                out[i] = out[i] - derivative(pj, t) * ph[idx2(n, t, i)];
        return out;
    });
}

ConnectionField cosymplectic_conformal_connection(const AlmostContactMetricStructure& s,
                                                  const ChartField& p,
                                                  bool enforce_admissibility) {
    check_exponent(s, p);
    const int n = s.dim();
    ChartField::Rule mrule = s.metric.rule();
    ChartField::Rule phir = s.phi.rule();
    ChartField::Rule etar = s.eta.rule();
    ChartField::Rule xir = s.xi.rule();
    ChartField::Rule prule = p.rule();
    ChartField gamma(
        n, {U, L, L},
        [mrule, phir, etar, xir, prule, n, enforce_admissibility](std::span<const Jet> x) {
            ChangeJets c = change_jets(mrule, phir, etar, prule, x);
            if (enforce_admissibility) {
                const std::vector<Jet> xiv = xir(x);
                double a = 0.0;
                for (int t = 0; t < n; ++t) a += value_of(xiv[t]) * value_of(c.dp[t]);
                if (std::fabs(a) > kAdmissibilityTol)
                    throw AdmissibilityError("exponent has a Reeb derivative of " +
                                             short_double(std::fabs(a)) +
                                             "; the connection requires xi(p) = 0");
            }
            std::vector<Jet> out = std::move(c.gamma);
            for (int h = 0; h < n; ++h)
                for (int j = 0; j < n; ++j)
                    for (int i = 0; i < n; ++i) {
                        Jet& v = out[(static_cast<std::size_t>(h) * n + j) * n + i];
                        v = v + ((h == j ? 1.0 : 0.0) - c.et[j] * c.etau[h]) * c.dp[i];
                        v = v + ((h == i ? 1.0 : 0.0) - c.et[i] * c.etau[h]) * c.dp[j];
                        v = v - (c.g[idx2(n, j, i)] - c.et[j] * c.et[i]) * c.pu[h];
                        v = v + c.ph[idx2(n, h, j)] * c.q[i];
                        v = v + c.ph[idx2(n, h, i)] * c.q[j];
                        v = v - c.form[idx2(n, j, i)] * c.qu[h];
                    }
            return out;
        });
    return ConnectionField{std::move(gamma), false};
}

ConformalChangeData conformal_change_data(const AlmostContactMetricStructure& s,
                                          const ChartField& p, const ChartPoint& x) {
    check_exponent(s, p);
    const int n = s.dim();
    MetricPair mp(s.metric.eval(x));
    const Tensor& g = mp.lower();
    const Tensor& gi = mp.upper();
    const Tensor ph = s.phi.eval(x);
    const Tensor et = s.eta.eval(x);
    const Tensor G = levi_civita(s.metric).gamma.eval(x);
    const Tensor dp = p.partial(x);
    const Tensor hp = p.partial2(x);
    const ChartField qf = derived_q_field(s, p);
    const Tensor q = qf.eval(x);
    const Tensor dq = qf.partial(x);

    ConformalChangeData d;
    d.p_lo = dp;
    d.q_lo = q;
    d.p_up = zeros_like(n, {U});
    d.q_up = zeros_like(n, {U});
    for (int h = 0; h < n; ++h)
        for (int t = 0; t < n; ++t) {
            d.p_up(h) += gi(h, t) * dp(t);
            d.q_up(h) += gi(h, t) * q(t);
        }
    for (int t = 0; t < n; ++t) d.lambda += dp(t) * d.p_up(t);

    d.nabla_p = zeros_like(n, {L, L});
    d.nabla_q = zeros_like(n, {L, L});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double vp = hp(j, i);
            double vq = dq(j, i);
            for (int t = 0; t < n; ++t) {
                vp -= G(t, j, i) * dp(t);
                vq -= G(t, j, i) * q(t);
            }
            d.nabla_p(j, i) = vp;
            d.nabla_q(j, i) = vq;
        }

    Tensor form(n, {L, L});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double f = 0.0;
            for (int t = 0; t < n; ++t) f += ph(t, j) * g(t, i);
            form(j, i) = f;
        }

    d.p2 = zeros_like(n, {L, L});
    d.q2 = zeros_like(n, {L, L});
    d.alpha = zeros_like(n, {L, L});
    d.beta = zeros_like(n, {L, L});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            d.p2(j, i) = d.nabla_p(j, i) - dp(j) * dp(i) + q(j) * q(i) +
                         0.5 * d.lambda * (g(j, i) - et(j) * et(i));
            d.q2(j, i) = d.nabla_q(j, i) - dp(j) * q(i) - dp(i) * q(j) +
                         0.5 * d.lambda * form(j, i);
            d.beta(j, i) = 2.0 * (dp(j) * q(i) - dp(i) * q(j));
        }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) d.alpha(j, i) = -(d.nabla_q(j, i) - d.nabla_q(i, j));
    return d;
}

std::vector<IdentityRecord> compatibility_records(const AlmostContactMetricStructure& s,
                                                  const ChartField& p,
                                                  std::span<const ChartPoint> points) {
    check_exponent(s, p);
    const int n = s.dim();
    // No enforcement here: an inadmissible exponent should fail its records,
    // not abort the run.
    const ConnectionField conn = cosymplectic_conformal_connection(s, p, false);

    ChartField::Rule mrule = s.metric.rule();
    ChartField::Rule phir = s.phi.rule();
    ChartField::Rule etar = s.eta.rule();
    ChartField::Rule prule = p.rule();

    // e^{2p} g_ji
    ChartField rescaled(n, {L, L}, [mrule, prule, n](std::span<const Jet> x) {
        std::vector<Jet> g = mrule(x);
        const Jet w = exp(2.0 * prule(x)[0]);
        for (Jet& v : g) v = v * w;
        return g;
    });
    // e^{2p} (g_ji - eta_j eta_i)
    ChartField horizontal(n, {L, L}, [mrule, etar, prule, n](std::span<const Jet> x) {
        std::vector<Jet> g = mrule(x);
        const std::vector<Jet> et = etar(x);
        const Jet w = exp(2.0 * prule(x)[0]);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                Jet& v = g[idx2(n, j, i)];
                v = (v - et[j] * et[i]) * w;
            }
        return g;
    });
    // eta^h = g^{ht} eta_t
    ChartField raised_eta(n, {U}, [mrule, etar, n](std::span<const Jet> x) {
        const std::vector<Jet> gi = detail::gauss_jordan_inverse(mrule(x), n);
        const std::vector<Jet> et = etar(x);
        std::vector<Jet> out(static_cast<std::size_t>(n), Jet::constant_like(x[0], 0.0));
        for (int h = 0; h < n; ++h)
            for (int t = 0; t < n; ++t) out[h] = out[h] + gi[idx2(n, h, t)] * et[t];
        return out;
    });

    ResidualTracker torsion("torsion", "G[ji] - G[ij] = -2 phi_ji q^h", 1e-12);
    ResidualTracker metricity("rescaled-metric-derivative",
                              "D_k(e^{2p} g_ji) = 2 e^{2p} p_k eta_j eta_i", 1e-9);
    ResidualTracker phi_par("phi-parallel", "D_j phi_i^h = 0", 1e-9);
    ResidualTracker xi_par("xi-parallel", "D_j xi^h = 0", 1e-9);
    ResidualTracker eta_par("eta-vector-parallel", "D_j eta^h = 0", 1e-9);
    ResidualTracker horiz("horizontal-rescaled-parallel",
                          "D_k(e^{2p}(g_ji - eta_j eta_i)) = 0", 1e-9);
    ResidualTracker adm("reeb-admissibility", "xi^t d_t p = 0", kAdmissibilityTol);

    const ChartField qf = derived_q_field(s, p);
    for (const ChartPoint& x : points) {
        adm.update_raw(admissibility_defect(s, p, x), 1.0);

        const Tensor G = conn.gamma.eval(x);
        const Tensor ph = s.phi.eval(x);
        const Tensor g = s.metric.eval(x);
        MetricPair mp(g);
        const Tensor dp = p.partial(x);
        const Tensor q = qf.eval(x);
        Tensor qu(n, {U});
        for (int h = 0; h < n; ++h)
            for (int t = 0; t < n; ++t) qu(h) += mp.upper()(h, t) * q(t);
        Tensor form(n, {L, L});
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double f = 0.0;
                for (int t = 0; t < n; ++t) f += ph(t, j) * g(t, i);
                form(j, i) = f;
            }
        Tensor lhs_t(n, {U, L, L});
        Tensor rhs_t(n, {U, L, L});
        for (int h = 0; h < n; ++h)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    lhs_t(h, j, i) = G(h, j, i) - G(h, i, j);
                    rhs_t(h, j, i) = -2.0 * form(j, i) * qu(h);
                }
        torsion.update(lhs_t, rhs_t);

        const Tensor dres = covariant_derivative(rescaled, conn, x);
        const double w = std::exp(2.0 * p.eval(x)());
        const Tensor et = s.eta.eval(x);
        Tensor rhs_m(n, {L, L, L});
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) rhs_m(k, j, i) = 2.0 * w * dp(k) * et(j) * et(i);
        metricity.update(dres, rhs_m);

        phi_par.update(covariant_derivative(s.phi, conn, x), Tensor(n, {L, U, L}));
        xi_par.update(covariant_derivative(s.xi, conn, x), Tensor(n, {L, U}));
        eta_par.update(covariant_derivative(raised_eta, conn, x), Tensor(n, {L, U}));
        horiz.update(covariant_derivative(horizontal, conn, x), Tensor(n, {L, L, L}));
    }

    return {torsion.finish(),  metricity.finish(), phi_par.finish(), xi_par.finish(),
            eta_par.finish(), horiz.finish(),     adm.finish()};
}

std::vector<IdentityRecord> change_identity_records(const AlmostContactMetricStructure& s,
                                                    const ChartField& p,
                                                    std::span<const ChartPoint> points) {
    check_exponent(s, p);
    const int n = s.dim();
    const int m = s.m;

    ResidualTracker q_reeb("q-reeb", "q_t xi^t = 0", 1e-8);
    ResidualTracker p_from_q("p-from-q", "p_i = q_t phi_i^t", 1e-8);
    ResidualTracker q_sharp("q-sharp", "q^h = phi_t^h p^t", 1e-8);
    ResidualTracker p_sharp("p-sharp", "p^h = -phi_t^h q^t", 1e-8);
    ResidualTracker ortho("p-q-orthogonal", "p_i q^i = 0", 1e-8);
    ResidualTracker norms("norms-match", "p_i p^i = q_i q^i", 1e-8);
    ResidualTracker q2_from_p2("q2-from-p2", "q_ji = -p_jt phi_i^t", 1e-8);
    ResidualTracker p2_from_q2("p2-from-q2", "p_ji = q_jt phi_i^t", 1e-8);
    ResidualTracker alpha_from_q2("alpha-from-q2", "alpha_ji = -(q_ji - q_ij - lambda phi_ji)",
                                  1e-8);
    ResidualTracker p2_reeb("p2-reeb", "p_ji eta^i = 0", 1e-8);
    ResidualTracker q2_reeb("q2-reeb", "q_ji eta^i = 0", 1e-8);
    ResidualTracker alpha_reeb("alpha-reeb", "alpha_ji eta^i = 0", 1e-8);
    ResidualTracker beta_reeb("beta-reeb", "beta_ji eta^i = 0", 1e-8);
    ResidualTracker alpha_skew("alpha-skew", "alpha_ji = -alpha_ij", 1e-8);
    ResidualTracker beta_skew("beta-skew", "beta_ji = -beta_ij", 1e-8);
    ResidualTracker p2_sym("p2-symmetric", "p_ji = p_ij", 1e-8);
    ResidualTracker alpha_tr("alpha-phi-trace", "phi^{ij} alpha_ij = -2 nabla_t p^t", 1e-8);
    ResidualTracker beta_tr("beta-phi-trace", "phi^{ij} beta_ij = 4 lambda", 1e-8);
    ResidualTracker p2_tr("p2-trace", "p_t^t = nabla_t p^t + m lambda", 1e-8);

    for (const ChartPoint& x : points) {
        const ConformalChangeData d = conformal_change_data(s, p, x);
        MetricPair mp(s.metric.eval(x));
        const Tensor& g = mp.lower();
        const Tensor& gi = mp.upper();
        const Tensor ph = s.phi.eval(x);
        const Tensor xiv = s.xi.eval(x);
        const Tensor et = s.eta.eval(x);
        Tensor etau(n, {U});
        for (int h = 0; h < n; ++h)
            for (int t = 0; t < n; ++t) etau(h) += gi(h, t) * et(t);
        Tensor form(n, {L, L});
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double f = 0.0;
                for (int t = 0; t < n; ++t) f += ph(t, j) * g(t, i);
                form(j, i) = f;
            }

        double qxi = 0.0;
        for (int t = 0; t < n; ++t) qxi += d.q_lo(t) * xiv(t);
        q_reeb.update(qxi, 0.0);

        Tensor r1(n, {L});
        for (int i = 0; i < n; ++i) {
            double v = 0.0;
            for (int t = 0; t < n; ++t) v += d.q_lo(t) * ph(t, i);
            r1(i) = v;
        }
        p_from_q.update(d.p_lo, r1);

        Tensor r2(n, {U});
        for (int h = 0; h < n; ++h) {
            double v = 0.0;
            for (int t = 0; t < n; ++t) v += ph(h, t) * d.p_up(t);
            r2(h) = v;
        }
        q_sharp.update(d.q_up, r2);

        Tensor r3(n, {U});
        for (int h = 0; h < n; ++h) {
            double v = 0.0;
            for (int t = 0; t < n; ++t) v -= ph(h, t) * d.q_up(t);
            r3(h) = v;
        }
        p_sharp.update(d.p_up, r3);

        double pq = 0.0, qq = 0.0;
        for (int t = 0; t < n; ++t) {
            pq += d.p_lo(t) * d.q_up(t);
            qq += d.q_lo(t) * d.q_up(t);
        }
        ortho.update(pq, 0.0);
        norms.update(d.lambda, qq);

        Tensor r4(n, {L, L});
        Tensor r5(n, {L, L});
        Tensor r6(n, {L, L});
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double a = 0.0, b = 0.0;
                for (int t = 0; t < n; ++t) {
                    a -= d.p2(j, t) * ph(t, i);
                    b += d.q2(j, t) * ph(t, i);
                }
                r4(j, i) = a;
                r5(j, i) = b;
                r6(j, i) = -(d.q2(j, i) - d.q2(i, j) - d.lambda * form(j, i));
            }
        q2_from_p2.update(d.q2, r4);
        p2_from_q2.update(d.p2, r5);
        alpha_from_q2.update(d.alpha, r6);

        Tensor c1(n, {L}), c2(n, {L}), c3(n, {L}), c4(n, {L});
        for (int j = 0; j < n; ++j) {
            double a = 0.0, b = 0.0, c = 0.0, e = 0.0;
            for (int i = 0; i < n; ++i) {
                a += d.p2(j, i) * etau(i);
                b += d.q2(j, i) * etau(i);
                c += d.alpha(j, i) * etau(i);
                e += d.beta(j, i) * etau(i);
            }
            c1(j) = a;
            c2(j) = b;
            c3(j) = c;
            c4(j) = e;
        }
        p2_reeb.update(c1, Tensor(n, {L}));
        q2_reeb.update(c2, Tensor(n, {L}));
        alpha_reeb.update(c3, Tensor(n, {L}));
        beta_reeb.update(c4, Tensor(n, {L}));

        Tensor at(n, {L, L}), bt(n, {L, L}), pt(n, {L, L});
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                at(j, i) = -d.alpha(i, j);
                bt(j, i) = -d.beta(i, j);
                pt(j, i) = d.p2(i, j);
            }
        alpha_skew.update(d.alpha, at);
        beta_skew.update(d.beta, bt);
        p2_sym.update(d.p2, pt);

        // phi^{ij} = g^{ia} phi_a^j
        Tensor phup(n, {U, U});
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = 0.0;
                for (int a = 0; a < n; ++a) v += gi(i, a) * ph(j, a);
                phup(i, j) = v;
            }
        double tr_a = 0.0, tr_b = 0.0, div_p = 0.0, tr_p2 = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                tr_a += phup(i, j) * d.alpha(i, j);
                tr_b += phup(i, j) * d.beta(i, j);
                div_p += gi(i, j) * d.nabla_p(i, j);
                tr_p2 += gi(i, j) * d.p2(i, j);
            }
        alpha_tr.update(tr_a, -2.0 * div_p);
        beta_tr.update(tr_b, 4.0 * d.lambda);
        p2_tr.update(tr_p2, div_p + m * d.lambda);
    }

    return {q_reeb.finish(),     p_from_q.finish(),   q_sharp.finish(),
            p_sharp.finish(),    ortho.finish(),      norms.finish(),
            q2_from_p2.finish(), p2_from_q2.finish(), alpha_from_q2.finish(),
            p2_reeb.finish(),    q2_reeb.finish(),    alpha_reeb.finish(),
            beta_reeb.finish(),  alpha_skew.finish(), beta_skew.finish(),
            p2_sym.finish(),     alpha_tr.finish(),   beta_tr.finish(),
            p2_tr.finish()};
}

Tensor curvature_closed_form(const AlmostContactMetricStructure& s, const ChartField& p,
                             const ChartPoint& x) {
    check_exponent(s, p);
    const int n = s.dim();
    const ConformalChangeData d = conformal_change_data(s, p, x);
    const Tensor base = curvature_of_connection(levi_civita(s.metric), x);
    MetricPair mp(s.metric.eval(x));
    const Tensor& g = mp.lower();
    const Tensor& gi = mp.upper();
    const Tensor ph = s.phi.eval(x);
    const Tensor et = s.eta.eval(x);

    Tensor etau(n, {U});
    for (int h = 0; h < n; ++h)
        for (int t = 0; t < n; ++t) etau(h) += gi(h, t) * et(t);
    Tensor form(n, {L, L});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double f = 0.0;
            for (int t = 0; t < n; ++t) f += ph(t, j) * g(t, i);
            form(j, i) = f;
        }
    Tensor p2u(n, {L, U}), q2u(n, {L, U});
    for (int k = 0; k < n; ++k)
        for (int h = 0; h < n; ++h) {
            double a = 0.0, b = 0.0;
            for (int t = 0; t < n; ++t) {
                a += d.p2(k, t) * gi(t, h);
                b += d.q2(k, t) * gi(t, h);
            }
            p2u(k, h) = a;
            q2u(k, h) = b;
        }

    Tensor R(n, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower});
    for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    const double cpk = (h == k ? 1.0 : 0.0) - et(k) * etau(h);
                    const double cpj = (h == j ? 1.0 : 0.0) - et(j) * etau(h);
                    double v = base(h, k, j, i);
                    v -= cpk * d.p2(j, i);
                    v += cpj * d.p2(k, i);
                    v -= p2u(k, h) * (g(j, i) - et(j) * et(i));
                    v += p2u(j, h) * (g(k, i) - et(k) * et(i));
                    v -= ph(h, k) * d.q2(j, i);
                    v += ph(h, j) * d.q2(k, i);
                    v -= q2u(k, h) * form(j, i);
                    v += q2u(j, h) * form(k, i);
                    v += (d.nabla_q(k, j) - d.nabla_q(j, k)) * ph(h, i);
                    v += 2.0 * form(k, j) * (d.q_lo(i) * d.p_up(h) - d.p_lo(i) * d.q_up(h));
                    R(h, k, j, i) = v;
                }
    return R;
}

std::vector<IdentityRecord> curvature_crosscheck_records(const AlmostContactMetricStructure& s,
                                                         const ChartField& p,
                                                         std::span<const ChartPoint> points) {
    check_exponent(s, p);
    const ConnectionField conn = cosymplectic_conformal_connection(s, p, false);
    const ConnectionField lc = levi_civita(s.metric);

    ResidualTracker two_routes("curvature-two-routes",
                               "coefficient-derivative curvature = closed-form curvature", 1e-7);
    ResidualTracker red_conn("reduces-to-base-connection",
                             "gradient-free exponent: G = Levi-Civita coefficients", 1e-12);
    ResidualTracker red_curv("reduces-to-base-curvature",
                             "gradient-free exponent: curvature = base curvature", 1e-12);

    bool gradient_free = true;
    for (const ChartPoint& x : points) {
        const Tensor direct = curvature_of_connection(conn, x);
        const Tensor closed = curvature_closed_form(s, p, x);
        two_routes.update(direct, closed);
        if (p.partial(x).max_abs() > 0.0) gradient_free = false;
        if (gradient_free) {
            red_conn.update(conn.gamma.eval(x), lc.gamma.eval(x));
            red_curv.update(direct, curvature_of_connection(lc, x));
        }
    }

    std::vector<IdentityRecord> out{two_routes.finish()};
    if (gradient_free) {
        out.push_back(red_conn.finish());
        out.push_back(red_curv.finish());
    }
    return out;
}

} // namespace cosym
