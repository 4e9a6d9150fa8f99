#pragma once

// Shared helpers for the test executables.

#include <string>

#include "qdc/matrix.hpp"
#include "qdc/rng.hpp"

namespace qdc::testutil {

inline Matrix sigma_x() { return Matrix(2, {0.0, 1.0, 1.0, 0.0}); }
inline Matrix sigma_y() { return Matrix(2, {0.0, cd(0.0, -1.0), cd(0.0, 1.0), 0.0}); }
inline Matrix sigma_z() { return Matrix(2, {1.0, 0.0, 0.0, -1.0}); }

inline double max_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

inline Matrix random_matrix(int n, Rng& rng) {
    Matrix m(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = cd(rng.gaussian(), rng.gaussian());
    return m;
}

inline Matrix random_hermitian(int n, Rng& rng) {
    const Matrix m = random_matrix(n, rng);
    Matrix h = m + m.adjoint();
    h *= 0.5;
    return h;
}

inline std::string fixtures_dir() { return QDC_FIXTURES_DIR; }

}  // namespace qdc::testutil
