#pragma once

#include <cstdint>
#include <span>

#include "cosym/contact.hpp"
#include "cosym/geometry.hpp"
#include "cosym/report.hpp"

namespace cosym {

// Pointwise ingredients for the Bochner-type tensor: an all-lower curvature
// [k][j][i][h] with Riemann symmetries, its contractions, and the structure
// tensors at the same point.
struct BochnerInputs {
    int m = 0;
    Tensor curvature;
    Tensor ricci;
    double scalar = 0.0;
    Tensor phi, xi, eta, g, g_inv;
};

BochnerInputs bochner_inputs(const AlmostContactMetricStructure& s, const ChartPoint& x);

struct BochnerTensor {
    Tensor trace_part;   // L_ji = -(K_ji + L (g_ji - eta_j eta_i)) / (2(m+2))
    Tensor twisted_part; // M_ji = -L_jt phi_i^t
    double trace = 0.0;  // L = g^{ji} L_ji = -K / (4(m+1))
    Tensor mixed;        // B[h][k][j][i]
    Tensor covariant;    // B[k][j][i][h]
};

// Throws InvalidInputError when the curvature input lacks Riemann symmetries;
// NumericError when the two expressions for the trace disagree.
BochnerTensor bochner_tensor(const BochnerInputs& in);

std::vector<IdentityRecord> bochner_identity_records(const BochnerInputs& in);

// Pointwise flat-chart data with the algebraic shape forced on the change
// tensors by a vanishing conformal-connection curvature, built from a seeded
// random symmetric horizontal block.
struct SyntheticZeroCurvatureData {
    int m = 0;
    int n = 0;
    Tensor g, g_inv, phi, xi, eta;
    Tensor p2, q2, alpha, beta; // [j][i]
    double lambda = 0.0;
    double trace = 0.0; // L = -p_t^t
};

SyntheticZeroCurvatureData synthesize_zero_curvature(int m, std::uint64_t seed);

std::vector<IdentityRecord> synthesis_invariant_records(const SyntheticZeroCurvatureData& d);

// The Riemann-type curvature an ambient chart must carry for the adapted
// curvature to vanish with the given change tensors; all-lower [k][j][i][h].
Tensor zero_curvature_completion(const SyntheticZeroCurvatureData& d);

// Randomized pointwise verification of the main vanishing statement:
// every trial builds synthetic zero-curvature data, completes the curvature,
// and drives the Bochner tensor to zero. Failures are reported with the
// offending trial seed, never thrown.
IdentityReport theorem_oracle(int m, int trials, std::uint64_t seed);

} // namespace cosym
