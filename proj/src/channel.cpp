#include "qdc/channel.hpp"

#include <cmath>
#include <string>

namespace qdc {

namespace {

constexpr double kRankCutoff = 1e-12;  // absolute Choi eigenvalue cutoff

void require_square_kraus(const QuantumChannel& ch) {
    if (ch.dim <= 0) throw DimensionMismatch("channel dimension must be positive");
    if (ch.kraus.empty()) throw DimensionMismatch("channel needs at least one Kraus operator");
    for (const Matrix& k : ch.kraus)
        if (k.dim() != ch.dim)
            throw DimensionMismatch("Kraus operator dimension does not match channel");
}

}  // namespace

Matrix apply(const QuantumChannel& ch, const Matrix& a) {
    require_square_kraus(ch);
    if (a.dim() != ch.dim) throw DimensionMismatch("apply: operand dimension mismatch");
    Matrix out(ch.dim);
    for (const Matrix& x : ch.kraus) out += x * a * x.adjoint();
    return out;
}

QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner) {
    require_square_kraus(outer);
    require_square_kraus(inner);
    if (outer.dim != inner.dim) throw DimensionMismatch("compose: dimension mismatch");
    QuantumChannel out;
    out.dim = outer.dim;
    for (const Matrix& x : outer.kraus)
        for (const Matrix& y : inner.kraus) out.kraus.push_back(x * y);
    return out;
}

ChoiMatrix choi_from_kraus(const QuantumChannel& ch) {
    require_square_kraus(ch);
    const int n = ch.dim;
    ChoiMatrix choi;
    choi.dim = n;
    choi.m = Matrix(n * n);
    // J = sum_k |v_k><v_k| with v_k[(i, r)] = X_k(r, i).
    for (const Matrix& x : ch.kraus) {
        std::vector<cd> v(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < n; ++r) v[static_cast<size_t>(i) * n + r] = x(r, i);
        for (size_t p = 0; p < v.size(); ++p)
            for (size_t q = 0; q < v.size(); ++q)
                choi.m(static_cast<int>(p), static_cast<int>(q)) += v[p] * std::conj(v[q]);
    }
    return choi;
}

ChoiMatrix choi_from_action(int n, const std::function<Matrix(const Matrix&)>& action) {
    if (n <= 0) throw DimensionMismatch("choi_from_action: dimension must be positive");
    ChoiMatrix choi;
    choi.dim = n;
    choi.m = Matrix(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Matrix block = action(matrix_unit(n, i, j));
            if (block.dim() != n)
                throw DimensionMismatch("choi_from_action: action changed dimension");
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) choi.m(i * n + r, j * n + c) = block(r, c);
        }
    return choi;
}

QuantumChannel kraus_from_choi(const ChoiMatrix& choi, double tol) {
    const int n = choi.dim;
    if (n <= 0 || choi.m.dim() != n * n)
        throw DimensionMismatch("kraus_from_choi: matrix is not n^2 x n^2");
    if (!is_hermitian(choi.m, tol))
        throw NotCPTP("kraus_from_choi: Choi matrix is not hermitian");

    const Matrix tr_out = partial_trace(choi.m, n, n, true);
    double tp_defect = (tr_out - Matrix::identity(n)).frobenius_norm();
    if (tp_defect > tol * std::sqrt(static_cast<double>(n)))
        throw NotCPTP("kraus_from_choi: not trace preserving, defect " +
                      std::to_string(tp_defect));

    const auto eig = eig_hermitian(choi.m, tol);
    const double top = std::max(1.0, eig.eigenvalues.back());
    if (eig.eigenvalues.front() < -tol * top)
        throw NotCPTP("kraus_from_choi: Choi matrix has eigenvalue " +
                      std::to_string(eig.eigenvalues.front()));

    QuantumChannel ch;
    ch.dim = n;
    for (int k = 0; k < n * n; ++k) {
        const double w = eig.eigenvalues[k];
        if (w <= kRankCutoff) continue;
        const double s = std::sqrt(w);
        Matrix x(n);
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < n; ++r) x(r, i) = s * eig.eigenvectors(i * n + r, k);
        ch.kraus.push_back(x);
    }
    if (ch.kraus.empty()) throw NotCPTP("kraus_from_choi: Choi matrix is numerically zero");
    return ch;
}

CptpReport is_cptp(const QuantumChannel& ch, double tol) {
    require_square_kraus(ch);
    const int n = ch.dim;
    Matrix tp_sum(n), unital_sum(n);
    for (const Matrix& x : ch.kraus) {
        tp_sum += x.adjoint() * x;
        unital_sum += x * x.adjoint();
    }
    const double root_n = std::sqrt(static_cast<double>(n));
    CptpReport rep;
    rep.tp = (tp_sum - Matrix::identity(n)).frobenius_norm() <= tol * root_n;
    rep.unital = (unital_sum - Matrix::identity(n)).frobenius_norm() <= tol * root_n;
    const auto eig = eig_hermitian(choi_from_kraus(ch).m, std::max(tol, 1e-8));
    rep.min_choi_eig = eig.eigenvalues.front();
    rep.cp = rep.min_choi_eig >= -tol * std::max(1.0, eig.eigenvalues.back());
    return rep;
}

std::pair<double, double> isotropic_weight_range(int n, IsotropicBranch branch) {
    if (n < 2) throw DimensionMismatch("isotropic_weight_range: dimension must be >= 2");
    const double nd = static_cast<double>(n);
    if (branch == IsotropicBranch::Unitary) return {-1.0 / (nd * nd - 1.0), 1.0};
    return {-1.0 / (nd - 1.0), 1.0 / (nd + 1.0)};
}

QuantumChannel make_isotropic(const Matrix& unitary, double weight, IsotropicBranch branch,
                              double tol) {
    const int n = unitary.dim();
    require_unitary(unitary);
    const auto [lo, hi] = isotropic_weight_range(n, branch);
    if (weight < lo - 1e-12 || weight > hi + 1e-12)
        throw TRangeViolation("isotropic weight " + std::to_string(weight) +
                              " outside the valid range [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "] for this branch at n=" +
                              std::to_string(n));
    const Matrix udag = unitary.adjoint();
    const auto action = [&](const Matrix& e) {
        const Matrix g = (branch == IsotropicBranch::Unitary) ? e : e.transpose();
        Matrix out = weight * (unitary * g * udag);
        const cd tr = e.trace();
        if (tr != cd(0.0, 0.0)) out += ((1.0 - weight) * tr / static_cast<double>(n)) *
                                       Matrix::identity(n);
        return out;
    };
    return kraus_from_choi(choi_from_action(n, action), tol);
}

QuantumChannel make_decohering(const std::vector<Matrix>& povm, const Matrix& basis,
                               double tol) {
    const int n = basis.dim();
    if (static_cast<int>(povm.size()) != n)
        throw InvalidPOVM("make_decohering: need exactly n effects for an n-dim basis");
    require_unitary(basis);

    Matrix sum(n);
    for (const Matrix& w : povm) {
        if (w.dim() != n) throw InvalidPOVM("make_decohering: effect dimension mismatch");
        if (!is_hermitian(w, tol)) throw InvalidPOVM("make_decohering: effect not hermitian");
        if (!is_psd(w, tol)) throw InvalidPOVM("make_decohering: effect not PSD");
        sum += w;
    }
    if ((sum - Matrix::identity(n)).frobenius_norm() > tol * std::sqrt(static_cast<double>(n)))
        throw InvalidPOVM("make_decohering: effects do not sum to the identity");

    // W_i = sum_j w_ij |f_ij><f_ij| gives Kraus pieces sqrt(w_ij) |e_i><f_ij|.
    QuantumChannel ch;
    ch.dim = n;
    for (int i = 0; i < n; ++i) {
        const auto eig = eig_hermitian(povm[i], tol);
        for (int j = 0; j < n; ++j) {
            const double w = eig.eigenvalues[j];
            if (w <= kRankCutoff) continue;
            const double s = std::sqrt(w);
            Matrix k(n);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    k(r, c) = s * basis(r, i) * std::conj(eig.eigenvectors(c, j));
            ch.kraus.push_back(k);
        }
    }
    if (ch.kraus.empty()) throw InvalidPOVM("make_decohering: POVM is numerically zero");
    return ch;
}

QuantumChannel make_decohering(const std::vector<Matrix>& povm, double tol) {
    if (povm.empty()) throw InvalidPOVM("make_decohering: empty POVM");
    return make_decohering(povm, Matrix::identity(povm.front().dim()), tol);
}

Matrix qubit_cpu_apply(const QubitCpuParams& p, const Matrix& a) {
    if (a.dim() != 2) throw DimensionMismatch("qubit_cpu_apply: operand must be 2 x 2");
    const double l = p.lambda;
    const double root = std::sqrt(std::max(0.0, l * (1.0 - l)));
    Matrix x(2);
    x(0, 0) = root * p.alpha;
    x(0, 1) = l * p.beta;
    x(1, 0) = (1.0 - l) * p.gamma;
    x(1, 1) = -root * p.alpha;
    Matrix mid(2);
    mid(0, 0) = l * a(0, 0) + (1.0 - l) * a(1, 1);
    mid(1, 1) = (1.0 - l) * a(0, 0) + l * a(1, 1);
    mid += a(0, 1) * x + a(1, 0) * x.adjoint();
    return p.unitary * mid * p.unitary.adjoint();
}

QuantumChannel make_qubit_cpu(const QubitCpuParams& p, double tol) {
    if (p.unitary.dim() != 2) throw DimensionMismatch("make_qubit_cpu: unitary must be 2 x 2");
    require_unitary(p.unitary);
    if (!(p.lambda >= -1e-12 && p.lambda <= 1.0 + 1e-12))
        throw Error("make_qubit_cpu: lambda must lie in [0, 1]");

    const double l = std::min(1.0, std::max(0.0, p.lambda));
    const double ab_sum = std::abs(p.beta) + std::abs(p.gamma);
    if (ab_sum <= 1e-12)
        throw DegenerateForm("make_qubit_cpu: beta and gamma both vanish; "
                             "this form is completely decohering, use make_decohering");
    if (l >= 1.0 - 1e-12 && std::abs(p.beta) <= 1e-12)
        throw DegenerateForm("make_qubit_cpu: lambda = 1 needs beta != 0");
    if (l <= 1e-12 && std::abs(p.gamma) <= 1e-12)
        throw DegenerateForm("make_qubit_cpu: lambda = 0 needs gamma != 0");

    Matrix s(2);
    s(0, 0) = p.alpha;
    s(0, 1) = p.beta;
    s(1, 0) = p.gamma;
    s(1, 1) = -p.alpha;
    const double sn = operator_norm(s);
    if (sn > 1.0 + 1e-10)
        throw NotContractive("make_qubit_cpu: parameter matrix has norm " +
                             std::to_string(sn) + " > 1, the map is not completely positive");

    QubitCpuParams q = p;
    q.lambda = l;
    return kraus_from_choi(choi_from_action(2, [&](const Matrix& e) {
                               return qubit_cpu_apply(q, e);
                           }),
                           tol);
}

void require_unitary(const Matrix& u, double tol) {
    const int n = u.dim();
    if (n <= 0) throw DimensionMismatch("require_unitary: empty matrix");
    const Matrix defect = u.adjoint() * u - Matrix::identity(n);
    if (defect.frobenius_norm() > tol * std::sqrt(static_cast<double>(n)))
        throw NotUnitary("matrix is not unitary, defect " +
                         std::to_string(defect.frobenius_norm()));
}

}  // namespace qdc
