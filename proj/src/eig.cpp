#include "qdc/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qdc {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition eig_hermitian(const Matrix& a, double tol) {
    const int n = a.dim();
    if (n == 0) throw DimensionMismatch("eig_hermitian: empty matrix");
    if (!a.all_finite()) throw NonHermitianInput("eig_hermitian: non-finite entries");
    if (!is_hermitian(a, tol)) throw NonHermitianInput("eig_hermitian: input is not hermitian");

    // Work on the hermitized copy so the iteration sees an exactly
    // self-adjoint matrix even when the input carries roundoff skew.
    Matrix h(n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = a(i, i).real();
        for (int j = i + 1; j < n; ++j) {
            const cd v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }

    Matrix v = Matrix::identity(n);
    const double fro = std::max(h.frobenius_norm(), 1e-300);
    const double stop = 1e-15 * fro;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(h) <= stop) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cd hpq = h(p, q);
                const double apq = std::abs(hpq);
                if (apq <= 1e-300) continue;
                // Phase factor making the pivot real, then a real Jacobi
                // rotation; combined plane unitary U = [[c, -s],[s*u, c*u]].
                const cd u = std::conj(hpq) / apq;
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? -1.0 : 1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cd su = s * u;
                const cd cu = c * u;

                for (int k = 0; k < n; ++k) {  // H <- H U (columns p, q)
                    const cd hp = h(k, p), hq = h(k, q);
                    h(k, p) = c * hp + su * hq;
                    h(k, q) = -s * hp + cu * hq;
                }
                for (int k = 0; k < n; ++k) {  // H <- U^dag H (rows p, q)
                    const cd hp = h(p, k), hq = h(q, k);
                    h(p, k) = c * hp + std::conj(su) * hq;
                    h(q, k) = -s * hp + std::conj(cu) * hq;
                }
                for (int k = 0; k < n; ++k) {  // accumulate V <- V U
                    const cd vp = v(k, p), vq = v(k, q);
                    v(k, p) = c * vp + su * vq;
                    v(k, q) = -s * vp + cu * vq;
                }
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                h(p, p) = h(p, p).real();
                h(q, q) = h(q, q).real();
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return h(x, x).real() < h(y, y).real(); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = h(order[k], order[k]).real();
        for (int r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
    }
    return out;
}

double operator_norm(const Matrix& a) {
    const Matrix g = a.adjoint() * a;
    // Gram matrix is hermitian by construction; loose tol guards roundoff.
    const auto eig = eig_hermitian(g, 1e-6);
    const double top = eig.eigenvalues.back();
    return std::sqrt(std::max(0.0, top));
}

bool is_normal(const Matrix& a, double tol) {
    const Matrix defect = a * a.adjoint() - a.adjoint() * a;
    const double scale = norm_scale(a);
    return defect.frobenius_norm() <= tol * scale * scale;
}

bool is_psd(const Matrix& a, double tol) {
    if (!is_hermitian(a, tol)) return false;
    return min_eigenvalue(a, tol) >= -tol * norm_scale(a);
}

double min_eigenvalue(const Matrix& hermitian, double tol) {
    return eig_hermitian(hermitian, tol).eigenvalues.front();
}

Matrix simultaneous_eigenbasis(const std::vector<Matrix>& hermitians, double tol) {
    if (hermitians.empty()) throw DimensionMismatch("simultaneous_eigenbasis: empty family");
    const int n = hermitians.front().dim();
    Matrix v = Matrix::identity(n);
    std::vector<std::vector<int>> clusters{std::vector<int>(n)};
    std::iota(clusters[0].begin(), clusters[0].end(), 0);

    for (const Matrix& h : hermitians) {
        if (h.dim() != n)
            throw DimensionMismatch("simultaneous_eigenbasis: dimension mismatch in family");
        const double gap_tol = std::max(tol, 1e-8) * norm_scale(h);
        std::vector<std::vector<int>> next;
        for (const std::vector<int>& s : clusters) {
            const int k = static_cast<int>(s.size());
            if (k == 1) {
                next.push_back(s);
                continue;
            }
            // Restrict h to the current cluster's column span of v.
            Matrix hr(k);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) {
                    cd sum = 0.0;
                    for (int r = 0; r < n; ++r)
                        for (int c = 0; c < n; ++c)
                            sum += std::conj(v(r, s[a])) * h(r, c) * v(c, s[b]);
                    hr(a, b) = sum;
                }
            // Restriction of a hermitian to an orthonormal span stays
            // hermitian up to roundoff; be generous with the check.
            const auto eig = eig_hermitian(hr, 1e-6);
            Matrix vs(n);  // only the k involved columns are used
            for (int r = 0; r < n; ++r)
                for (int b = 0; b < k; ++b) {
                    cd sum = 0.0;
                    for (int a = 0; a < k; ++a) sum += v(r, s[a]) * eig.eigenvectors(a, b);
                    vs(r, b) = sum;
                }
            for (int r = 0; r < n; ++r)
                for (int b = 0; b < k; ++b) v(r, s[b]) = vs(r, b);

            std::vector<int> current{s[0]};
            for (int b = 1; b < k; ++b) {
                if (eig.eigenvalues[b] - eig.eigenvalues[b - 1] > gap_tol) {
                    next.push_back(current);
                    current.clear();
                }
                current.push_back(s[b]);
            }
            next.push_back(current);
        }
        clusters.swap(next);
    }
    return v;
}

}  // namespace qdc
