#include "qdc/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace qdc {

namespace {

void require_same_dim(const Matrix& a, const Matrix& b, const char* op) {
    if (a.dim() != b.dim())
        throw DimensionMismatch(std::string(op) + ": dimensions " + std::to_string(a.dim()) +
                                " and " + std::to_string(b.dim()) + " differ");
}

}  // namespace

Matrix Matrix::adjoint() const {
    Matrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(i, j) = (*this)(j, i);
    return r;
}

Matrix Matrix::conj() const {
    Matrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(i, j));
    return r;
}

cd Matrix::trace() const {
    cd t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (const cd& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const cd& v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool Matrix::all_finite() const {
    for (const cd& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    require_same_dim(*this, o, "add");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    require_same_dim(*this, o, "subtract");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

Matrix& Matrix::operator*=(cd s) {
    for (cd& v : a_) v *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b, "multiply");
    const int n = a.dim();
    Matrix r(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cd aik = a(i, k);
            if (aik == cd(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

Matrix matrix_unit(int n, int i, int j) {
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw DimensionMismatch("matrix_unit: index out of range");
    Matrix m(n);
    m(i, j) = 1.0;
    return m;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

cd hs_inner(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b, "hs_inner");
    cd s = 0.0;
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += std::conj(a(i, j)) * b(i, j);
    return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const int m = a.dim(), n = b.dim();
    Matrix r(m * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const cd aij = a(i, j);
            if (aij == cd(0.0, 0.0)) continue;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) r(i * n + k, j * n + l) = aij * b(k, l);
        }
    return r;
}

Matrix partial_trace(const Matrix& m_full, int m, int n, bool keep_first) {
    if (m_full.dim() != m * n)
        throw DimensionMismatch("partial_trace: matrix dimension is not m*n");
    if (keep_first) {
        Matrix r(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                cd s = 0.0;
                for (int b = 0; b < n; ++b) s += m_full(i * n + b, j * n + b);
                r(i, j) = s;
            }
        return r;
    }
    Matrix r(n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            cd s = 0.0;
            for (int a = 0; a < m; ++a) s += m_full(a * n + k, a * n + l);
            r(k, l) = s;
        }
    return r;
}

bool is_hermitian(const Matrix& a, double tol) {
    const int n = a.dim();
    const double scale = norm_scale(a);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol * scale) return false;
    return true;
}

double norm_scale(const Matrix& a) { return std::max(1.0, a.frobenius_norm()); }

}  // namespace qdc
