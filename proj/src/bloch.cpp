#include "qdc/bloch.hpp"

#include <cmath>

#include "qdc/eig.hpp"

namespace qdc {

namespace {

Matrix pauli(int i) {
    Matrix m(2);
    switch (i) {
        case 0:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case 1:
            m(0, 1) = cd(0.0, -1.0);
            m(1, 0) = cd(0.0, 1.0);
            break;
        default:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
    }
    return m;
}

}  // namespace

BlochVector apply_affine(const BlochAffineMap& map, const BlochVector& r) {
    BlochVector out{};
    for (int i = 0; i < 3; ++i) {
        out[i] = map.offset[i];
        for (int j = 0; j < 3; ++j) out[i] += map.linear[i][j] * r[j];
    }
    return out;
}

BlochVector to_bloch(const Matrix& rho, double tol) {
    if (rho.dim() != 2) throw DimensionMismatch("to_bloch: qubit states only");
    if (!is_hermitian(rho, tol)) throw NotDensityMatrix("to_bloch: not hermitian");
    if (std::abs(rho.trace() - cd(1.0, 0.0)) > 1e-10)
        throw NotDensityMatrix("to_bloch: trace is not 1");
    if (min_eigenvalue(rho, std::max(tol, 1e-8)) < -tol)
        throw NotDensityMatrix("to_bloch: not positive semidefinite");
    BlochVector r{};
    for (int i = 0; i < 3; ++i) r[i] = 0.5 * (pauli(i) * rho).trace().real();
    return r;
}

Matrix from_bloch(const BlochVector& r) {
    const double len2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
    if (len2 > 0.25 + 1e-12)
        throw BallViolation("from_bloch: |r| = " + std::to_string(std::sqrt(len2)) +
                            " lies outside the radius-1/2 ball");
    Matrix rho = 0.5 * Matrix::identity(2);
    for (int i = 0; i < 3; ++i) rho += r[i] * pauli(i);
    return rho;
}

CollinearityCheck commute_iff_collinear(const Matrix& rho1, const Matrix& rho2, double tol) {
    const BlochVector a = to_bloch(rho1, tol);
    const BlochVector b = to_bloch(rho2, tol);
    const BlochVector cross{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                            a[0] * b[1] - a[1] * b[0]};
    CollinearityCheck out;
    out.cross_norm = std::sqrt(cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]);
    out.commutator_norm = commutator(rho1, rho2).frobenius_norm();
    if (std::abs(out.commutator_norm - 2.0 * std::sqrt(2.0) * out.cross_norm) > 1e-10)
        throw Error("commute_iff_collinear: commutator and cross-product norms "
                    "disagree beyond roundoff");
    out.collinear = out.cross_norm <= tol;
    return out;
}

std::array<std::array<double, 3>, 3> rotation_from_unitary(const Matrix& u) {
    if (u.dim() != 2) throw DimensionMismatch("rotation_from_unitary: 2 x 2 unitaries only");
    require_unitary(u);
    std::array<std::array<double, 3>, 3> rot{};
    const Matrix udag = u.adjoint();
    for (int j = 0; j < 3; ++j) {
        const Matrix img = u * pauli(j) * udag;
        for (int i = 0; i < 3; ++i) rot[i][j] = 0.5 * (pauli(i) * img).trace().real();
    }
    return rot;
}

BlochAffineMap channel_bloch_map(const QuantumChannel& ch) {
    if (ch.dim != 2) throw DimensionMismatch("channel_bloch_map: qubit channels only");
    BlochAffineMap map;
    const Matrix img_id = apply(ch, Matrix::identity(2));
    for (int i = 0; i < 3; ++i) map.offset[i] = 0.25 * (pauli(i) * img_id).trace().real();
    for (int j = 0; j < 3; ++j) {
        const Matrix img = apply(ch, pauli(j));
        for (int i = 0; i < 3; ++i) map.linear[i][j] = 0.5 * (pauli(i) * img).trace().real();
    }
    return map;
}

std::array<std::array<double, 3>, 3> qubit_cpu_linear_map(const QubitCpuParams& p) {
    const double l = p.lambda;
    const double a = p.alpha.real(), b = p.alpha.imag();
    const double c = p.beta.real(), d = p.beta.imag();
    const double e = p.gamma.real(), f = p.gamma.imag();
    const double root = 2.0 * std::sqrt(std::max(0.0, l * (1.0 - l)));
    return {{{l * c + (1.0 - l) * e, l * d + (1.0 - l) * f, 0.0},
             {-l * d + (1.0 - l) * f, l * c - (1.0 - l) * e, 0.0},
             {root * a, root * b, 2.0 * l - 1.0}}};
}

double ball_violation(const BlochAffineMap& map, int samples) {
    // Golden-angle spiral over the radius-1/2 sphere; positivity means every
    // image must stay inside the ball, and extreme points suffice.
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    double worst = -1.0;
    for (int k = 0; k < samples; ++k) {
        const double z = 0.5 * (1.0 - 2.0 * (k + 0.5) / samples);
        const double rad = std::sqrt(std::max(0.0, 0.25 - z * z));
        const double ang = golden * k;
        const BlochVector r{rad * std::cos(ang), rad * std::sin(ang), z};
        const BlochVector img = apply_affine(map, r);
        const double len = std::sqrt(img[0] * img[0] + img[1] * img[1] + img[2] * img[2]);
        worst = std::max(worst, len - 0.5);
    }
    return worst;
}

}  // namespace qdc
