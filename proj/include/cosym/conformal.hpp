#pragma once

#include <span>

#include "cosym/contact.hpp"
#include "cosym/geometry.hpp"
#include "cosym/report.hpp"

namespace cosym {

// Pointwise change data of an admissible exponent p on a cosymplectic chart.
// q is always derived, q_i = -p_t phi_i^t; never an independent input.
struct ConformalChangeData {
    Tensor p_lo, p_up, q_lo, q_up; // gradient and its partner, both variances
    double lambda = 0.0;           // p_t p^t
    Tensor nabla_p, nabla_q;       // Levi-Civita derivatives, [j][i]
    Tensor p2, q2;                 // second-order change tensors, [j][i]
    Tensor alpha, beta;            // curvature correction 2-forms, [j][i]
};

// |xi^t d_t p| at x; the connection below exists exactly when this vanishes.
double admissibility_defect(const AlmostContactMetricStructure& s, const ChartField& p,
                            const ChartPoint& x);

std::vector<IdentityRecord> admissibility_records(const AlmostContactMetricStructure& s,
                                                  const ChartField& p,
                                                  std::span<const ChartPoint> points);

// q_i = -p_t phi_i^t as a first-order field.
ChartField derived_q_field(const AlmostContactMetricStructure& s, const ChartField& p);

// Connection with coefficients
//   {h ji} + (d_j^h - eta_j eta^h) p_i + (d_i^h - eta_i eta^h) p_j
//          - (g_ji - eta_j eta_i) p^h + phi_j^h q_i + phi_i^h q_j - phi_ji q^h.
// With enforcement on, evaluation throws AdmissibilityError wherever
// |xi(p)| > 1e-10.
ConnectionField cosymplectic_conformal_connection(const AlmostContactMetricStructure& s,
                                                  const ChartField& p,
                                                  bool enforce_admissibility = true);

ConformalChangeData conformal_change_data(const AlmostContactMetricStructure& s,
                                          const ChartField& p, const ChartPoint& x);

// Defining laws of the connection: prescribed torsion, the rescaled-metric
// derivative rule, parallel phi and (raised) eta, and the parallel rescaled
// horizontal metric.
std::vector<IdentityRecord> compatibility_records(const AlmostContactMetricStructure& s,
                                                  const ChartField& p,
                                                  std::span<const ChartPoint> points);

// Algebraic consequences tying p, q, their second-order tensors, alpha and
// beta together.
std::vector<IdentityRecord> change_identity_records(const AlmostContactMetricStructure& s,
                                                    const ChartField& p,
                                                    std::span<const ChartPoint> points);

// Closed-form curvature of the connection, mixed slots [h][k][j][i].
Tensor curvature_closed_form(const AlmostContactMetricStructure& s, const ChartField& p,
                             const ChartPoint& x);

// Direct curvature vs the closed form; when p has no gradient at any sample
// the reduction to the Levi-Civita connection is checked exactly as well.
std::vector<IdentityRecord> curvature_crosscheck_records(const AlmostContactMetricStructure& s,
                                                         const ChartField& p,
                                                         std::span<const ChartPoint> points);

} // namespace cosym
