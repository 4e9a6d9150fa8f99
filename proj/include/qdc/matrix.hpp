#pragma once

// Dense complex square matrices, sized for open-system work on a handful of
// qudits (n <= 16 or so). Row-major storage, value semantics, no views.

#include <complex>
#include <initializer_list>
#include <vector>

#include "qdc/errors.hpp"

namespace qdc {

using cd = std::complex<double>;

class Matrix {
  public:
    Matrix() : n_(0) {}
    explicit Matrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, cd(0.0, 0.0)) {
        if (n < 0) throw DimensionMismatch("matrix dimension must be nonnegative");
    }
    Matrix(int n, std::initializer_list<cd> entries) : Matrix(n) {
        if (static_cast<int>(entries.size()) != n * n)
            throw DimensionMismatch("initializer length does not match dimension");
        size_t k = 0;
        for (const cd& v : entries) a_[k++] = v;
    }

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static Matrix zero(int n) { return Matrix(n); }

    int dim() const { return n_; }
    cd& operator()(int r, int c) { return a_[static_cast<size_t>(r) * n_ + c]; }
    const cd& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * n_ + c]; }
    const std::vector<cd>& data() const { return a_; }

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conj() const;
    cd trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(cd s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, cd s) { return a *= s; }
    friend Matrix operator*(cd s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

  private:
    int n_;
    std::vector<cd> a_;
};

// E_{ij}: the n x n matrix unit with a single 1 at row i, column j (0-based).
Matrix matrix_unit(int n, int i, int j);

Matrix commutator(const Matrix& a, const Matrix& b);

// Hilbert-Schmidt inner product Tr(A^dag B), linear in the second slot.
cd hs_inner(const Matrix& a, const Matrix& b);

Matrix kron(const Matrix& a, const Matrix& b);

// Partial trace of an (m*n)-dimensional matrix over one tensor factor.
// Index convention: row = a*n + b where a runs over the first (m-dim) factor.
// keep_first = true traces out the second factor and returns an m x m matrix.
Matrix partial_trace(const Matrix& m_full, int m, int n, bool keep_first);

bool is_hermitian(const Matrix& a, double tol);

// Relative deviation scale used by the predicates: max(1, norm of input).
double norm_scale(const Matrix& a);

}  // namespace qdc
