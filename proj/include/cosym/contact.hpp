#pragma once

#include <span>

#include "cosym/field.hpp"
#include "cosym/geometry.hpp"
#include "cosym/report.hpp"

namespace cosym {

// (phi, xi, eta, g) on a (2m+1)-dimensional chart. The constructor checks
// shapes only; the defining identities are measured, not assumed.
struct AlmostContactMetricStructure {
    int m = 0;
    ChartField phi;    // slots (upper, lower): phi(h, i) = value of the endomorphism
    ChartField xi;     // (upper)
    ChartField eta;    // (lower)
    ChartField metric; // (lower, lower)

    int dim() const { return 2 * m + 1; }
};

AlmostContactMetricStructure make_structure(ChartField phi, ChartField xi, ChartField eta,
                                            ChartField metric);

// Lowered form field F(j, i) = phi_j^t g_ti (skew once the structure is valid).
ChartField fundamental_form_field(const AlmostContactMetricStructure& s);

std::vector<IdentityRecord> structure_identities(const AlmostContactMetricStructure& s,
                                                 std::span<const ChartPoint> points);

// N(h, j, i) = phi_j^t d_t phi_i^h - phi_i^t d_t phi_j^h
//            - (d_j phi_i^t - d_i phi_j^t) phi_t^h
Tensor nijenhuis(const AlmostContactMetricStructure& s, const ChartPoint& x);

// max |N_ji^h + (d_j eta_i - d_i eta_j) xi^h|
double normality_defect(const AlmostContactMetricStructure& s, const ChartPoint& x);

std::vector<IdentityRecord> normality_identities(const AlmostContactMetricStructure& s,
                                                 std::span<const ChartPoint> points);

std::vector<IdentityRecord> cosymplectic_identities(const AlmostContactMetricStructure& s,
                                                    std::span<const ChartPoint> points);

} // namespace cosym
