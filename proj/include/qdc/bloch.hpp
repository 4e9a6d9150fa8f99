#pragma once

// Qubit states as points of the radius-1/2 Bloch ball and channels as
// affine maps of it.
//
// Convention: rho = I/2 + x sx + y sy + z sz, so r_i = Tr(rho s_i)/2 and
// pure states sit at |r| = 1/2. Two qubit states commute exactly when their
// Bloch vectors are collinear; the identity
//   ||[rho1, rho2]||_F = 2 sqrt(2) ||r1 x r2||
// is exact, so the cross-product test and the commutator test are the same
// check at matched tolerances and both are computed side by side.
//
// For a channel in the qubit normal form (unitary U, lambda, alpha = a+ib,
// beta = c+id, gamma = e+if) the Bloch action is r -> R_U L r with R_U the
// rotation of U and
//       [ l c + (1-l) e     l d + (1-l) f    0      ]
//   L = [ -l d + (1-l) f    l c - (1-l) e    0      ]
//       [ 2 sqrt(l(1-l)) a  2 sqrt(l(1-l)) b 2l - 1 ],
// verified against direct channel application; a commonly printed variant
// of these formulas flips the signs of b, d, f and does not reproduce the
// channel.

#include <array>

#include "qdc/channel.hpp"
#include "qdc/matrix.hpp"

namespace qdc {

using BlochVector = std::array<double, 3>;

struct BlochAffineMap {
    std::array<std::array<double, 3>, 3> linear{};
    BlochVector offset{};
};

BlochVector apply_affine(const BlochAffineMap& map, const BlochVector& r);

// Throws NotDensityMatrix unless the input is a valid qubit state.
BlochVector to_bloch(const Matrix& rho, double tol = kDefaultTol);

// Throws BallViolation when |r| > 1/2 + 1e-12.
Matrix from_bloch(const BlochVector& r);

struct CollinearityCheck {
    bool collinear = false;
    double cross_norm = 0.0;       // ||r1 x r2||
    double commutator_norm = 0.0;  // ||[rho1, rho2]||_F
};

// Verdict from the cross product at `tol`; also verifies the exact identity
// between the two norms and throws Error if they drift apart beyond 1e-10.
CollinearityCheck commute_iff_collinear(const Matrix& rho1, const Matrix& rho2,
                                        double tol = kDefaultTol);

// SO(3) rotation of conjugation by a 2 x 2 unitary: R_ij = Tr(s_i U s_j U^dag)/2.
std::array<std::array<double, 3>, 3> rotation_from_unitary(const Matrix& u);

// Affine Bloch action of an arbitrary qubit channel, from direct application.
BlochAffineMap channel_bloch_map(const QuantumChannel& ch);

// The analytic L above (without the rotation); channel_bloch_map of a
// normal-form channel equals rotation_from_unitary(U) composed with this.
std::array<std::array<double, 3>, 3> qubit_cpu_linear_map(const QubitCpuParams& p);

// Checks |M r + c| <= 1/2 + 1e-10 on a deterministic spread of sphere
// points; returns the worst overshoot (<= 0 means the ball maps inside).
double ball_violation(const BlochAffineMap& map, int samples = 10000);

}  // namespace qdc
