#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdc/bloch.hpp"
#include "qdc/sampling.hpp"
#include "util.hpp"

using namespace qdc;
using namespace qdc::testutil;

namespace {

QuantumChannel amplitude_damping(double g) {
    QuantumChannel ch;
    ch.dim = 2;
    ch.kraus.push_back(Matrix(2, {1.0, 0.0, 0.0, std::sqrt(1.0 - g)}));
    ch.kraus.push_back(Matrix(2, {0.0, std::sqrt(g), 0.0, 0.0}));
    return ch;
}

double vec_diff(const BlochVector& a, const BlochVector& b) {
    double d = 0.0;
    for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("bloch coordinates of reference states") {
    CHECK(vec_diff(to_bloch(matrix_unit(2, 0, 0)), {0.0, 0.0, 0.5}) < 1e-15);
    CHECK(vec_diff(to_bloch(Matrix(2, {0.5, 0.5, 0.5, 0.5})), {0.5, 0.0, 0.0}) < 1e-15);
    CHECK(vec_diff(to_bloch(0.5 * Matrix::identity(2)), {0.0, 0.0, 0.0}) < 1e-15);

    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        const Matrix rho = sample_density(2, rng);
        const BlochVector r = to_bloch(rho);
        CHECK(r[0] * r[0] + r[1] * r[1] + r[2] * r[2] <= 0.25 + 1e-12);
        CHECK(max_diff(from_bloch(r), rho) < 1e-12);
    }

    CHECK_THROWS_AS(from_bloch({0.6, 0.0, 0.0}), BallViolation);
    CHECK_THROWS_AS(to_bloch(Matrix(2, {1.5, 0.0, 0.0, -0.5})), NotDensityMatrix);
    CHECK_THROWS_AS(to_bloch(Matrix::identity(3)), DimensionMismatch);
}

TEST_CASE("unitary conjugation acts as a proper rotation") {
    Rng rng(17);
    for (int k = 0; k < 25; ++k) {
        const Matrix u = sample_haar_unitary(2, rng);
        const auto rot = rotation_from_unitary(u);

        double ortho = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double dot = 0.0;
                for (int l = 0; l < 3; ++l) dot += rot[l][i] * rot[l][j];
                ortho = std::max(ortho, std::abs(dot - (i == j ? 1.0 : 0.0)));
            }
        CHECK(ortho < 1e-12);

        const double det =
            rot[0][0] * (rot[1][1] * rot[2][2] - rot[1][2] * rot[2][1]) -
            rot[0][1] * (rot[1][0] * rot[2][2] - rot[1][2] * rot[2][0]) +
            rot[0][2] * (rot[1][0] * rot[2][1] - rot[1][1] * rot[2][0]);
        CHECK(det == doctest::Approx(1.0));

        const Matrix rho = sample_density(2, rng);
        const BlochVector r = to_bloch(rho);
        BlochVector rotated{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) rotated[i] += rot[i][j] * r[j];
        CHECK(vec_diff(rotated, to_bloch(u * rho * u.adjoint())) < 1e-12);
    }

    // Conjugation by diag(1, e^{i t}) turns x into cos(t) x + sin(t) y.
    const double t = 0.83;
    Matrix u(2);
    u(0, 0) = 1.0;
    u(1, 1) = std::exp(cd(0.0, t));
    const auto rot = rotation_from_unitary(u);
    CHECK(rot[0][0] == doctest::Approx(std::cos(t)));
    CHECK(rot[1][0] == doctest::Approx(std::sin(t)));
    CHECK(rot[2][2] == doctest::Approx(1.0));
}

TEST_CASE("collinearity test equals the commutator test") {
    const Matrix z0 = matrix_unit(2, 0, 0);
    const Matrix z_mixed = Matrix(2, {0.8, 0.0, 0.0, 0.2});
    const auto aligned = commute_iff_collinear(z0, z_mixed);
    CHECK(aligned.collinear);
    CHECK(aligned.commutator_norm < 1e-14);

    const Matrix plus(2, {0.5, 0.5, 0.5, 0.5});
    const auto skew = commute_iff_collinear(z0, plus);
    CHECK_FALSE(skew.collinear);
    CHECK(skew.commutator_norm > 0.1);

    Rng rng(29);
    for (int k = 0; k < 200; ++k) {
        const Matrix r1 = sample_density(2, rng);
        const Matrix r2 = sample_density(2, rng);
        // The identity ||[r1, r2]||_F = 2 sqrt(2) ||b1 x b2|| is enforced
        // inside the call; it throws if the two sides drift apart.
        const auto chk = commute_iff_collinear(r1, r2);
        CHECK(std::abs(chk.commutator_norm - 2.0 * std::sqrt(2.0) * chk.cross_norm) < 1e-10);
    }

    for (int k = 0; k < 50; ++k) {
        const Matrix rho = sample_density(2, rng);
        const BlochVector r = to_bloch(rho);
        const double c = rng.uniform(-1.0, 1.0);
        const auto chk =
            commute_iff_collinear(rho, from_bloch({c * r[0], c * r[1], c * r[2]}));
        CHECK(chk.collinear);
    }
}

TEST_CASE("affine map of amplitude damping") {
    const double g = 0.37;
    const BlochAffineMap map = channel_bloch_map(amplitude_damping(g));
    const double root = std::sqrt(1.0 - g);
    CHECK(map.linear[0][0] == doctest::Approx(root));
    CHECK(map.linear[1][1] == doctest::Approx(root));
    CHECK(map.linear[2][2] == doctest::Approx(1.0 - g));
    CHECK(std::abs(map.linear[0][1]) < 1e-12);
    CHECK(std::abs(map.linear[2][0]) < 1e-12);
    CHECK(map.offset[0] == doctest::Approx(0.0));
    CHECK(map.offset[1] == doctest::Approx(0.0));
    CHECK(map.offset[2] == doctest::Approx(g / 2.0));
}

TEST_CASE("affine map reproduces channel action on random states") {
    Rng rng(41);
    for (uint64_t seed : {10ull, 11ull, 12ull}) {
        const QuantumChannel ch = sample_qubit_cpu_channel(seed);
        const BlochAffineMap map = channel_bloch_map(ch);
        for (int k = 0; k < 10; ++k) {
            const Matrix rho = sample_density(2, rng);
            CHECK(vec_diff(apply_affine(map, to_bloch(rho)), to_bloch(apply(ch, rho))) < 1e-12);
        }
    }
}

TEST_CASE("normal form linear part matches the channel exactly") {
    for (uint64_t seed : {21ull, 22ull, 23ull, 24ull}) {
        QubitCpuParams p;
        const QuantumChannel ch = sample_qubit_cpu_channel(seed, &p);
        const auto rot = rotation_from_unitary(p.unitary);
        const auto lin = qubit_cpu_linear_map(p);
        const BlochAffineMap map = channel_bloch_map(ch);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(map.offset[i]) < 1e-12);
            for (int j = 0; j < 3; ++j) {
                double composed = 0.0;
                for (int l = 0; l < 3; ++l) composed += rot[i][l] * lin[l][j];
                CHECK(std::abs(map.linear[i][j] - composed) < 1e-11);
            }
        }
    }
}

TEST_CASE("ball containment check") {
    CHECK(ball_violation(channel_bloch_map(amplitude_damping(0.5))) <= 1e-10);
    CHECK(ball_violation(channel_bloch_map(sample_qubit_cpu_channel(31))) <= 1e-10);

    BlochAffineMap expanding;
    for (int i = 0; i < 3; ++i) expanding.linear[i][i] = 1.2;
    CHECK(ball_violation(expanding) == doctest::Approx(0.1).epsilon(1e-3));

    BlochAffineMap shifted;
    shifted.linear[2][2] = 0.5;
    shifted.offset = {0.0, 0.0, 0.4};
    CHECK(ball_violation(shifted) > 0.1);
}
