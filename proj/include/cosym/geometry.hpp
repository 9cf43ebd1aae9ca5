#pragma once

#include "cosym/field.hpp"
#include "cosym/tensor.hpp"

namespace cosym {

namespace detail {
// Jet-level workspace shared by the connection builders: metric, inverse and
// Christoffel components at one point, each row-major, gamma as [h][j][i].
struct MetricJets {
    int n = 0;
    std::vector<Jet> g;
    std::vector<Jet> ginv;
    std::vector<Jet> gamma;
};
MetricJets metric_jets(const ChartField::Rule& metric_rule, std::span<const Jet> x);
} // namespace detail

// Connection coefficients as a field with slots (upper, lower, lower):
// gamma[h][j][i], first lower slot = differentiation direction.
struct ConnectionField {
    ChartField gamma;
    bool torsion_free = true;
};

ConnectionField levi_civita(const ChartField& metric);
Tensor christoffel(const ChartField& metric, const ChartPoint& x);

// R[h][k][j][i] = d_k G[h][j][i] - d_j G[h][k][i]
//              + G[h][k][t] G[t][j][i] - G[h][j][t] G[t][k][i]
Tensor curvature_of_connection(const ConnectionField& conn, const ChartPoint& x);

// All-lower form R[k][j][i][h] = R[t][k][j][i] g_th.
Tensor covariant_curvature(const Tensor& mixed, const MetricPair& m);

// ricci[j][i] = R[t][t][j][i]  (upper slot against the derivative slot)
Tensor ricci_tensor(const Tensor& mixed);
double scalar_curvature(const Tensor& ricci, const MetricPair& m);

struct CurvatureBundle {
    Tensor mixed;     // [h][k][j][i]
    Tensor covariant; // [k][j][i][h]
    Tensor ricci;     // [j][i]
    double scalar = 0.0;
};
CurvatureBundle curvature_bundle(const ChartField& metric, const ChartPoint& x);

// Prepends the derivative slot: result[k][...] = D_k T[...].
Tensor covariant_derivative(const ChartField& t, const ConnectionField& conn, const ChartPoint& x);

// Worst raw residual among: skewness in (0,1), skewness in (2,3),
// pair symmetry (0,1)<->(2,3), and the cyclic sum over (0,1,2),
// for an all-lower curvature tensor.
double curvature_symmetry_defect(const Tensor& covariant);

// Connection of the rescaled metric e^{2p} g:
// gamma + delta_j^h p_i + delta_i^h p_j - g_ji p^h.
ConnectionField conformal_connection(const ChartField& metric, const ChartField& p);

// Second-order change tensor of the plain conformal rescale:
// p_ji = D_j p_i - p_j p_i + (1/2) (p_t p^t) g_ji, all Levi-Civita.
Tensor conformal_change_form(const ChartField& metric, const ChartField& p, const ChartPoint& x);

// The curvature of conformal_connection matches the closed-form correction
// of the base curvature by conformal_change_form with one overall sign on
// the correction block; returns that sign (+1 or -1) together with the
// relative residual of the better match. A self-check test pins the value.
int conformal_convention_sign(const ChartField& metric, const ChartField& p, const ChartPoint& x,
                              double* residual = nullptr);

// Trace-free conformal curvature, mixed slots [h][k][j][i]; needs dim >= 4.
Tensor weyl_tensor(const ChartField& metric, const ChartPoint& x);

} // namespace cosym
