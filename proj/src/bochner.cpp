#include "cosym/bochner.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "cosym/errors.hpp"
#include "cosym/sample.hpp"

namespace cosym {

namespace {

constexpr auto UP = Variance::Upper;
constexpr auto LO = Variance::Lower;

Tensor raised_eta(const Tensor& eta, const Tensor& g_inv) {
    const int n = eta.dim();
    Tensor out(n, {UP});
    for (int h = 0; h < n; ++h)
        for (int t = 0; t < n; ++t) out(h) += g_inv(h, t) * eta(t);
    return out;
}

Tensor lowered_form(const Tensor& phi, const Tensor& g) {
    const int n = phi.dim();
    Tensor out(n, {LO, LO});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double f = 0.0;
            for (int t = 0; t < n; ++t) f += phi(t, j) * g(t, i);
            out(j, i) = f;
        }
    return out;
}

// second slot raised: out(k, h) = t(k, a) g^{ah}
Tensor raise_second(const Tensor& t, const Tensor& g_inv) {
    const int n = t.dim();
    Tensor out(n, {LO, UP});
    for (int k = 0; k < n; ++k)
        for (int h = 0; h < n; ++h) {
            double v = 0.0;
            for (int a = 0; a < n; ++a) v += t(k, a) * g_inv(a, h);
            out(k, h) = v;
        }
    return out;
}

void check_inputs(const BochnerInputs& in) {
    if (in.m < 1) throw InvalidInputError("inputs need m >= 1");
    const int n = 2 * in.m + 1;
    if (in.curvature.dim() != n || in.curvature.signature() != Signature{LO, LO, LO, LO})
        throw InvalidInputError("curvature must be all-lower rank 4 on the(2m+1)-chart");
    if (in.ricci.dim() != n || in.ricci.signature() != Signature{LO, LO})
        throw InvalidInputError("ricci must be a rank-2 lower tensor");
    const double scale = std::max(1.0, in.curvature.max_abs());
    if (curvature_symmetry_defect(in.curvature) / scale > 1e-9)
        throw InvalidInputError("curvature input lacks Riemann symmetries");
}

// Flat structure constants on R^{2m+1}: pairs (a, a+m), Reeb direction last.
void flat_structure_values(int m, SyntheticZeroCurvatureData& d) {
    const int n = 2 * m + 1;
    d.g = Tensor(n, {LO, LO});
    d.g_inv = Tensor(n, {UP, UP});
    for (int i = 0; i < n; ++i) {
        d.g(i, i) = 1.0;
        d.g_inv(i, i) = 1.0;
    }
    d.phi = Tensor(n, {UP, LO});
    for (int a = 0; a < m; ++a) {
        d.phi(a + m, a) = 1.0;
        d.phi(a, a + m) = -1.0;
    }
    d.xi = Tensor(n, {UP});
    d.xi(n - 1) = 1.0;
    d.eta = Tensor(n, {LO});
    d.eta(n - 1) = 1.0;
}

std::vector<ResidualTracker> make_synthesis_trackers() {
    const double tol = 1e-12;
    std::vector<ResidualTracker> ts;
    ts.reserve(8);
    ts.emplace_back("q2-skew", "q_ji = -q_ij", tol);
    ts.emplace_back("trace-constraint", "(m-2) lambda + p_t^t = 0", tol);
    ts.emplace_back("reeb-annihilation", "p, q, alpha, beta vanish against the Reeb direction",
                    tol);
    ts.emplace_back("phi-commutation", "phi_t^h p_j^t = p_t^h phi_j^t", tol);
    ts.emplace_back("alpha-two-routes", "2 M_ji + lambda phi_ji = -(q_ji - q_ij - lambda phi_ji)",
                    tol);
    ts.emplace_back("beta-two-routes", "-2 M_ji + lambda phi_ji = lambda phi_ji + 2 q_ji", tol);
    ts.emplace_back("beta-phi-first-slot",
                    "beta_jk phi_s^j = -2 p_ks - lambda (g_ks - eta_k eta_s)", tol);
    ts.emplace_back("alpha-phi-first-slot",
                    "alpha_jk phi_s^j = 2 p_ks - lambda (g_ks - eta_k eta_s)", tol);
    return ts;
}

void update_synthesis_trackers(std::vector<ResidualTracker>& ts,
                               const SyntheticZeroCurvatureData& d) {
    const int n = d.n;
    Tensor q2t(n, {LO, LO});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) q2t(j, i) = -d.q2(i, j);
    ts[0].update(d.q2, q2t);

    double p_tt = 0.0;
    for (int t = 0; t < n; ++t)
        for (int i = 0; i < n; ++i) p_tt += d.g_inv(t, i) * d.p2(t, i);
    ts[1].update((d.m - 2) * d.lambda + p_tt, 0.0);

    const Tensor etau = raised_eta(d.eta, d.g_inv);
    double worst = 0.0;
    for (const Tensor* t : {&d.p2, &d.q2, &d.alpha, &d.beta})
        for (int j = 0; j < n; ++j) {
            double row = 0.0, col = 0.0;
            for (int i = 0; i < n; ++i) {
                row += (*t)(j, i) * etau(i);
                col += (*t)(i, j) * etau(i);
            }
            worst = std::max({worst, std::fabs(row), std::fabs(col)});
        }
    double scale = std::max({d.p2.max_abs(), d.q2.max_abs(), d.alpha.max_abs(), d.beta.max_abs()});
    ts[2].update_raw(worst, scale);

    Tensor pup = raise_second(d.p2, d.g_inv); // p_j^h
    Tensor lhs(n, {UP, LO}), rhs(n, {UP, LO});
    for (int h = 0; h < n; ++h)
        for (int j = 0; j < n; ++j) {
            double a = 0.0, b = 0.0;
            for (int t = 0; t < n; ++t) {
                a += d.phi(h, t) * pup(j, t);
                b += pup(t, h) * d.phi(t, j);
            }
            lhs(h, j) = a;
            rhs(h, j) = b;
        }
    ts[3].update(lhs, rhs);

    const Tensor form = lowered_form(d.phi, d.g);
    Tensor m2(n, {LO, LO});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m2(j, i) = -d.q2(j, i);
    Tensor a1(n, {LO, LO}), a2(n, {LO, LO}), b1(n, {LO, LO}), b2(n, {LO, LO});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            a1(j, i) = 2.0 * m2(j, i) + d.lambda * form(j, i);
            a2(j, i) = -(d.q2(j, i) - d.q2(i, j) - d.lambda * form(j, i));
            b1(j, i) = -2.0 * m2(j, i) + d.lambda * form(j, i);
            b2(j, i) = d.lambda * form(j, i) + 2.0 * d.q2(j, i);
        }
    ts[4].update(a1, a2);
    ts[5].update(b1, b2);

    Tensor bl(n, {LO, LO}), br(n, {LO, LO}), al(n, {LO, LO}), ar(n, {LO, LO});
    for (int k = 0; k < n; ++k)
        for (int s = 0; s < n; ++s) {
            double vb = 0.0, va = 0.0;
            for (int j = 0; j < n; ++j) {
                vb += d.beta(j, k) * d.phi(j, s);
                va += d.alpha(j, k) * d.phi(j, s);
            }
            const double pi = d.g(k, s) - d.eta(k) * d.eta(s);
            bl(k, s) = vb;
            br(k, s) = -2.0 * d.p2(k, s) - d.lambda * pi;
            al(k, s) = va;
            ar(k, s) = 2.0 * d.p2(k, s) - d.lambda * pi;
        }
    ts[6].update(bl, br);
    ts[7].update(al, ar);
}

} // namespace

BochnerInputs bochner_inputs(const AlmostContactMetricStructure& s, const ChartPoint& x) {
    BochnerInputs in;
    in.m = s.m;
    const CurvatureBundle b = curvature_bundle(s.metric, x);
    in.curvature = b.covariant;
    in.ricci = b.ricci;
    in.scalar = b.scalar;
    in.phi = s.phi.eval(x);
    in.xi = s.xi.eval(x);
    in.eta = s.eta.eval(x);
    MetricPair mp(s.metric.eval(x));
    in.g = mp.lower();
    in.g_inv = mp.upper();
    return in;
}

BochnerTensor bochner_tensor(const BochnerInputs& in) {
    check_inputs(in);
    const int n = 2 * in.m + 1;
    const int m = in.m;

    BochnerTensor bt;
    bt.trace = -in.scalar / (4.0 * (m + 1));
    bt.trace_part = Tensor(n, {LO, LO});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            bt.trace_part(j, i) =
                -(in.ricci(j, i) + bt.trace * (in.g(j, i) - in.eta(j) * in.eta(i))) /
                (2.0 * (m + 2));

    double check = 0.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) check += in.g_inv(j, i) * bt.trace_part(j, i);
    if (std::fabs(check - bt.trace) / std::max(1.0, std::fabs(bt.trace)) > 1e-10)
        throw NumericError("trace of the trace part disagrees with -K/(4(m+1))");

    bt.twisted_part = Tensor(n, {LO, LO});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double v = 0.0;
            for (int t = 0; t < n; ++t) v -= bt.trace_part(j, t) * in.phi(t, i);
            bt.twisted_part(j, i) = v;
        }

    const Tensor etau = raised_eta(in.eta, in.g_inv);
    const Tensor form = lowered_form(in.phi, in.g);
    const Tensor l2u = raise_second(bt.trace_part, in.g_inv);
    const Tensor m2u = raise_second(bt.twisted_part, in.g_inv);

    // mixed curvature from the all-lower input
    Tensor kmix(n, {UP, LO, LO, LO});
    for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    double v = 0.0;
                    for (int t = 0; t < n; ++t) v += in.curvature(k, j, i, t) * in.g_inv(t, h);
                    kmix(h, k, j, i) = v;
                }

    const Tensor& L2 = bt.trace_part;
    const Tensor& M2 = bt.twisted_part;
    bt.mixed = Tensor(n, {UP, LO, LO, LO});
    for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    const double cpk = (h == k ? 1.0 : 0.0) - in.eta(k) * etau(h);
                    const double cpj = (h == j ? 1.0 : 0.0) - in.eta(j) * etau(h);
                    double v = kmix(h, k, j, i);
                    v += cpk * L2(j, i) - cpj * L2(k, i);
                    v += l2u(k, h) * (in.g(j, i) - in.eta(j) * in.eta(i));
                    v -= l2u(j, h) * (in.g(k, i) - in.eta(k) * in.eta(i));
                    v += in.phi(h, k) * M2(j, i) - in.phi(h, j) * M2(k, i);
                    v += m2u(k, h) * form(j, i) - m2u(j, h) * form(k, i);
                    v -= 2.0 * (M2(k, j) * in.phi(h, i) + form(k, j) * m2u(i, h));
                    bt.mixed(h, k, j, i) = v;
                }

    bt.covariant = Tensor(n, {LO, LO, LO, LO});
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                for (int h = 0; h < n; ++h) {
                    double v = 0.0;
                    for (int t = 0; t < n; ++t) v += bt.mixed(t, k, j, i) * in.g(t, h);
                    bt.covariant(k, j, i, h) = v;
                }
    return bt;
}

std::vector<IdentityRecord> bochner_identity_records(const BochnerInputs& in) {
    const BochnerTensor bt = bochner_tensor(in);
    const int n = 2 * in.m + 1;
    const double tol = 1e-8;
    const Tensor etau = raised_eta(in.eta, in.g_inv);

    ResidualTracker skew_first_mixed("bochner-skew-first-mixed", "B^h_kji = -B^h_jki", tol);
    ResidualTracker bianchi("bochner-first-bianchi", "B^h_kji + B^h_jik + B^h_ikj = 0", tol);
    ResidualTracker skew_first("bochner-skew-first", "B_kjih = -B_jkih", tol);
    ResidualTracker skew_last("bochner-skew-last", "B_kjih = -B_kjhi", tol);
    ResidualTracker pair("bochner-pair-symmetry", "B_kjih = B_ihkj", tol);
    ResidualTracker eta_trace("bochner-eta-trace", "B^t_kji eta_t = 0", tol);
    ResidualTracker phi_trace("bochner-phi-trace", "B_kjti phi_i^t = 0", tol, true);
    phi_trace.note("repeated-index display read as the full phi contraction of the last two "
                   "slots; holds for special curvature classes only");
    ResidualTracker l_sym("trace-part-symmetric", "L_ji = L_ij", tol);
    ResidualTracker l_reeb("trace-part-reeb", "L_ji eta^i = 0", tol);
    ResidualTracker m_skew("twisted-part-skew", "M_ji = -M_ij", tol);
    ResidualTracker m_reeb("twisted-part-reeb", "M_ji eta^i = 0", tol);

    Tensor sfm(n, {UP, LO, LO, LO}), bch(n, {UP, LO, LO, LO});
    for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    sfm(h, k, j, i) = -bt.mixed(h, j, k, i);
                    bch(h, k, j, i) =
                        bt.mixed(h, k, j, i) + bt.mixed(h, j, i, k) + bt.mixed(h, i, k, j);
                }
    skew_first_mixed.update(bt.mixed, sfm);
    bianchi.update(bch, Tensor(n, {UP, LO, LO, LO}));

    Tensor sf(n, {LO, LO, LO, LO}), sl(n, {LO, LO, LO, LO}), pr(n, {LO, LO, LO, LO});
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                for (int h = 0; h < n; ++h) {
                    sf(k, j, i, h) = -bt.covariant(j, k, i, h);
                    sl(k, j, i, h) = -bt.covariant(k, j, h, i);
                    pr(k, j, i, h) = bt.covariant(i, h, k, j);
                }
    skew_first.update(bt.covariant, sf);
    skew_last.update(bt.covariant, sl);
    pair.update(bt.covariant, pr);

    Tensor et(n, {LO, LO, LO});
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double v = 0.0;
                for (int t = 0; t < n; ++t) v += bt.mixed(t, k, j, i) * in.eta(t);
                et(k, j, i) = v;
            }
    eta_trace.update(et, Tensor(n, {LO, LO, LO}));

    Tensor ft(n, {LO, LO});
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            double v = 0.0;
            for (int t = 0; t < n; ++t)
                for (int i = 0; i < n; ++i) v += bt.covariant(k, j, t, i) * in.phi(t, i);
            ft(k, j) = v;
        }
    phi_trace.update_raw(ft.max_abs(), std::max(1.0, bt.covariant.max_abs()));

    Tensor lt(n, {LO, LO}), mt(n, {LO, LO});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            lt(j, i) = bt.trace_part(i, j);
            mt(j, i) = -bt.twisted_part(i, j);
        }
    l_sym.update(bt.trace_part, lt);
    m_skew.update(bt.twisted_part, mt);

    Tensor lr(n, {LO}), mr(n, {LO});
    for (int j = 0; j < n; ++j) {
        double a = 0.0, b = 0.0;
        for (int i = 0; i < n; ++i) {
            a += bt.trace_part(j, i) * etau(i);
            b += bt.twisted_part(j, i) * etau(i);
        }
        lr(j) = a;
        mr(j) = b;
    }
    l_reeb.update(lr, Tensor(n, {LO}));
    m_reeb.update(mr, Tensor(n, {LO}));

    return {skew_first_mixed.finish(),
            bianchi.finish(),
            skew_first.finish(),
            skew_last.finish(),
            pair.finish(),
            eta_trace.finish(),
            phi_trace.finish(),
            l_sym.finish(),
            l_reeb.finish(),
            m_skew.finish(),
            m_reeb.finish()};
}

SyntheticZeroCurvatureData synthesize_zero_curvature(int m, std::uint64_t seed) {
    if (m < 3) throw DimensionError("synthesis needs m >= 3 so lambda = L/(m-2) exists");
    const int n = 2 * m + 1;
    SyntheticZeroCurvatureData d;
    d.m = m;
    d.n = n;
    flat_structure_values(m, d);

    const int hdim = 2 * m;
    SplitMix64 rng(seed);
    Tensor S(n, {LO, LO});
    for (int a = 0; a < hdim; ++a)
        for (int b = a; b < hdim; ++b) {
            const double v = 2.0 * rng.next_unit() - 1.0;
            S(a, b) = v;
            S(b, a) = v;
        }
    // project onto the phi-commuting part: P = S - Phi S Phi
    Tensor P(n, {LO, LO});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double v = 0.0;
            for (int s = 0; s < n; ++s)
                for (int t = 0; t < n; ++t) v += d.phi(a, s) * S(s, t) * d.phi(t, b);
            P(a, b) = S(a, b) - v;
        }
    // shift the horizontal diagonal so p_t^t = -2m < 0
    double tr = 0.0;
    for (int a = 0; a < n; ++a) tr += P(a, a);
    const double shift = (-2.0 * m - tr) / hdim;
    for (int a = 0; a < hdim; ++a) P(a, a) += shift;
    tr = 0.0;
    for (int a = 0; a < n; ++a) tr += P(a, a);

    d.p2 = P;
    d.trace = -tr;
    d.lambda = d.trace / (m - 2);
    d.q2 = Tensor(n, {LO, LO});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double v = 0.0;
            for (int t = 0; t < n; ++t) v -= P(j, t) * d.phi(t, i);
            d.q2(j, i) = v;
        }
    const Tensor form = lowered_form(d.phi, d.g);
    d.alpha = Tensor(n, {LO, LO});
    d.beta = Tensor(n, {LO, LO});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double m2 = -d.q2(j, i);
            d.alpha(j, i) = 2.0 * m2 + d.lambda * form(j, i);
            d.beta(j, i) = -2.0 * m2 + d.lambda * form(j, i);
        }
    return d;
}

std::vector<IdentityRecord> synthesis_invariant_records(const SyntheticZeroCurvatureData& d) {
    std::vector<ResidualTracker> ts = make_synthesis_trackers();
    update_synthesis_trackers(ts, d);
    std::vector<IdentityRecord> out;
    out.reserve(ts.size());
    for (const ResidualTracker& t : ts) out.push_back(t.finish());
    return out;
}

Tensor zero_curvature_completion(const SyntheticZeroCurvatureData& d) {
    const int n = d.n;
    const Tensor form = lowered_form(d.phi, d.g);
    Tensor K(n, {LO, LO, LO, LO});
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                for (int h = 0; h < n; ++h) {
                    const double pk = d.g(k, h) - d.eta(k) * d.eta(h);
                    const double pj = d.g(j, h) - d.eta(j) * d.eta(h);
                    const double plji = d.g(j, i) - d.eta(j) * d.eta(i);
                    const double plki = d.g(k, i) - d.eta(k) * d.eta(i);
                    double v = pk * d.p2(j, i) - pj * d.p2(k, i);
                    v += d.p2(k, h) * plji - d.p2(j, h) * plki;
                    v += form(k, h) * d.q2(j, i) - form(j, h) * d.q2(k, i);
                    v += d.q2(k, h) * form(j, i) - d.q2(j, h) * form(k, i);
                    v += d.alpha(k, j) * form(i, h) - form(k, j) * d.beta(i, h);
                    K(k, j, i, h) = v;
                }
    return K;
}

IdentityReport theorem_oracle(int m, int trials, std::uint64_t seed) {
    if (trials < 1) throw ParameterError("the oracle needs at least one trial");
    if (m < 3) throw DimensionError("the oracle needs m >= 3 so lambda = L/(m-2) exists");

    IdentityReport rep;
    rep.suite = "theorem-oracle";
    rep.manifold = "synthetic-m" + std::to_string(m);
    rep.deformation = "synthetic";
    rep.generator = kGeneratorName;
    rep.seed = seed;
    rep.points = trials;

    std::vector<ResidualTracker> inv = make_synthesis_trackers();
    std::vector<ResidualTracker> steps;
    steps.emplace_back("completion-skew-first", "K_kjih = -K_jkih", 1e-12);
    steps.emplace_back("completion-skew-last", "K_kjih = -K_kjhi", 1e-12);
    steps.emplace_back("completion-pair-symmetry", "K_kjih = K_ihkj", 1e-12);
    steps.emplace_back("completion-first-bianchi", "K_kjih + K_jikh + K_ikjh = 0", 1e-12);
    steps.emplace_back("ricci-contraction", "K_ji = (2m+4) p_ji + p_t^t (g_ji - eta_j eta_i)",
                       1e-10);
    steps.emplace_back("scalar-contraction", "K = (4m+4) p_t^t", 1e-10);
    steps.emplace_back("trace-relation", "p_t^t = K / (4(m+1)) = -L", 1e-10);
    steps.emplace_back("trace-part-is-minus-p2", "L_ji = -p_ji", 1e-10);
    steps.emplace_back("twisted-part-from-p2", "M_ji = -L_jt phi_i^t = p_jt phi_i^t", 1e-10);
    steps.emplace_back("twisted-part-is-minus-q2", "p_jt phi_i^t = -q_ji", 1e-10);
    steps.emplace_back("bochner-vanishes", "max|B| <= 1e-10 max|K|", 1e-10);

    std::vector<std::uint64_t> inv_seed(inv.size(), 0);
    std::vector<std::uint64_t> step_seed(steps.size(), 0);
    std::string broken_note;

    SplitMix64 rng(seed);
    const int n = 2 * m + 1;
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t trial_seed = rng.next();
        const SyntheticZeroCurvatureData d = synthesize_zero_curvature(m, trial_seed);

        std::vector<double> before(inv.size());
        for (std::size_t i = 0; i < inv.size(); ++i) before[i] = inv[i].worst();
        update_synthesis_trackers(inv, d);
        for (std::size_t i = 0; i < inv.size(); ++i)
            if (inv[i].worst() > before[i]) inv_seed[i] = trial_seed;

        const Tensor K = zero_curvature_completion(d);
        std::vector<double> sb(steps.size());
        for (std::size_t i = 0; i < steps.size(); ++i) sb[i] = steps[i].worst();

        Tensor sf(n, {LO, LO, LO, LO}), sl(n, {LO, LO, LO, LO}), pr(n, {LO, LO, LO, LO}),
            bi(n, {LO, LO, LO, LO});
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i)
                    for (int h = 0; h < n; ++h) {
                        sf(k, j, i, h) = -K(j, k, i, h);
                        sl(k, j, i, h) = -K(k, j, h, i);
                        pr(k, j, i, h) = K(i, h, k, j);
                        bi(k, j, i, h) = K(k, j, i, h) + K(j, i, k, h) + K(i, k, j, h);
                    }
        steps[0].update(K, sf);
        steps[1].update(K, sl);
        steps[2].update(K, pr);
        steps[3].update(bi, Tensor(n, {LO, LO, LO, LO}));

        Tensor ric(n, {LO, LO});
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double v = 0.0;
                for (int k = 0; k < n; ++k)
                    for (int t = 0; t < n; ++t) v += d.g_inv(k, t) * K(k, j, i, t);
                ric(j, i) = v;
            }
        double scalar = 0.0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) scalar += d.g_inv(j, i) * ric(j, i);
        const double p_tt = -d.trace;

        Tensor ric_rhs(n, {LO, LO});
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                ric_rhs(j, i) = (2.0 * m + 4.0) * d.p2(j, i) +
                                p_tt * (d.g(j, i) - d.eta(j) * d.eta(i));
        steps[4].update(ric, ric_rhs);
        steps[5].update(scalar, (4.0 * m + 4.0) * p_tt);
        steps[6].update(p_tt, scalar / (4.0 * (m + 1)));

        BochnerInputs in;
        in.m = m;
        in.curvature = K;
        in.ricci = ric;
        in.scalar = scalar;
        in.phi = d.phi;
        in.xi = d.xi;
        in.eta = d.eta;
        in.g = d.g;
        in.g_inv = d.g_inv;
        try {
            const BochnerTensor bt = bochner_tensor(in);
            Tensor l_rhs(n, {LO, LO}), m_lhs(n, {LO, LO}), m_rhs(n, {LO, LO}), q_rhs(n, {LO, LO});
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    l_rhs(j, i) = -d.p2(j, i);
                    double v = 0.0;
                    for (int t = 0; t < n; ++t) v += d.p2(j, t) * d.phi(t, i);
                    m_rhs(j, i) = v;
                    q_rhs(j, i) = -d.q2(j, i);
                }
            m_lhs = bt.twisted_part;
            steps[7].update(bt.trace_part, l_rhs);
            steps[8].update(m_lhs, m_rhs);
            steps[9].update(m_rhs, q_rhs);
            steps[10].update_raw(bt.mixed.max_abs(), K.max_abs());
        } catch (const Error& e) {
            steps[10].update_raw(1.0, 1.0);
            broken_note = std::string("construction failed at trial seed ") +
                          std::to_string(trial_seed) + ": " + e.what();
        }
        for (std::size_t i = 0; i < steps.size(); ++i)
            if (steps[i].worst() > sb[i]) step_seed[i] = trial_seed;
    }

    for (std::size_t i = 0; i < inv.size(); ++i) {
        IdentityRecord r = inv[i].finish();
        if (!r.pass) r.note = "worst residual at trial seed " + std::to_string(inv_seed[i]);
        rep.records.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
        IdentityRecord r = steps[i].finish();
        if (!r.pass) {
            r.note = "worst residual at trial seed " + std::to_string(step_seed[i]);
            if (i == 10 && !broken_note.empty()) r.note = broken_note;
        }
        rep.records.push_back(std::move(r));
    }
    return rep;
}

} // namespace cosym
